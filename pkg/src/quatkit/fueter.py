"""Left and right Cauchy-Fueter operators.

``D_l f = df/dq0 + i df/dq1 + j df/dq2 + k df/dq3`` (units on the left),
``D_r f = df/dq0 + df/dq1 i + df/dq2 j + df/dq3 k`` (units on the right).

On canonical polynomials the operators are exact: monomials are real, so a
unit acting on the left of a term simply left-multiplies its coefficient.
For arbitrary callables the derivatives are central differences.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import InvalidArgumentError, ModeMismatchError, NumericDomainError
from .expr import Expr, as_function
from .poly import CanonicalPoly, expand
from .quaternion import Quaternion, mul_components
from .report import Method, RegularityMode, RegularityReport, Residual, Verdict
from .scalar import Mode

QFunction = Callable[[Quaternion], Quaternion]

DEFAULT_H = 1e-5
DEFAULT_TOL = 1e-6
DEFAULT_SAMPLES = 25
DEFAULT_SEED = 42


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _units(mode: Mode) -> list[Quaternion]:
    return [Quaternion.unit(t, mode) for t in range(4)]


def fueter_symbolic(p: CanonicalPoly, side: Side) -> CanonicalPoly:
    out = CanonicalPoly.zero(p.mode)
    for t, e in enumerate(_units(p.mode)):
        d = p.derivative(t)
        out = out + (d.left_mul(e) if side is Side.LEFT else d.right_mul(e))
    return out


def fueter_left_symbolic(p: CanonicalPoly) -> CanonicalPoly:
    return fueter_symbolic(p, Side.LEFT)


def fueter_right_symbolic(p: CanonicalPoly) -> CanonicalPoly:
    return fueter_symbolic(p, Side.RIGHT)


def _finite(q: Quaternion, where: str) -> Quaternion:
    if not all(math.isfinite(c) for c in q.components):
        raise NumericDomainError(f"non-finite value {q} at {where}")
    return q


def fueter_numeric(f: QFunction, side: Side, q: Quaternion, h: float = DEFAULT_H) -> Quaternion:
    """Central-difference Cauchy-Fueter operator of ``f`` at ``q`` (float mode)."""
    if q.mode is not Mode.FLOAT:
        raise ModeMismatchError("numeric Fueter operator works in float mode")
    if not h > 0:
        raise InvalidArgumentError("step h must be positive")
    acc = Quaternion.zero(Mode.FLOAT)
    for e in _units(Mode.FLOAT):
        step = e.scale(h)
        fp = _finite(f(q + step), f"{q} + {h}*{e}")
        fm = _finite(f(q - step), f"{q} - {h}*{e}")
        d = (fp - fm) / (2.0 * h)
        acc = acc + (e * d if side is Side.LEFT else d * e)
    return acc


def sample_ball(n: int, seed: int, radius: float = 1.0) -> list[Quaternion]:
    """``n`` float quaternions uniform in the ball ``|q| <= radius``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        v = [rng.gauss(0.0, 1.0) for _ in range(4)]
        r = math.sqrt(sum(c * c for c in v))
        if r < 1e-12:
            continue
        scale = radius * rng.random() ** 0.25 / r
        out.append(Quaternion(*(c * scale for c in v), mode=Mode.FLOAT))
    return out


@dataclass(frozen=True)
class RegularityConfig:
    h: float = DEFAULT_H
    tol: float = DEFAULT_TOL
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    radius: float = 1.0
    points: tuple[Quaternion, ...] | None = None

    def sample_points(self) -> list[Quaternion]:
        if self.points is not None:
            return [p.to_float() for p in self.points]
        if self.samples < 1:
            raise InvalidArgumentError("need at least one sample point")
        return sample_ball(self.samples, self.seed, self.radius)


def is_regular(
    e: Expr,
    side: Side,
    method: Method = Method.SYMBOLIC,
    config: RegularityConfig | None = None,
) -> RegularityReport:
    mode = RegularityMode.FUETER_LEFT if side is Side.LEFT else RegularityMode.FUETER_RIGHT
    if method is Method.SYMBOLIC:
        result = fueter_symbolic(expand(e), side)
        verdict = Verdict.REGULAR if result.is_zero() else Verdict.NOT_REGULAR
        return RegularityReport(mode, method, verdict, symbolic_result=result)
    config = config or RegularityConfig()
    f = as_function(e, Mode.FLOAT)
    residuals = []
    for q in config.sample_points():
        r = fueter_numeric(f, side, q, config.h)
        residuals.append(Residual(q, r, r.norm()))
    worst = max(r.norm for r in residuals)
    verdict = Verdict.REGULAR if worst <= config.tol else Verdict.NOT_REGULAR
    notes = ("numeric verdict is sample-based evidence, not a proof",)
    return RegularityReport(mode, method, verdict, tuple(residuals), tolerance=config.tol, notes=notes)


class Division(enum.Enum):
    LEFT = "left"  # (eps*dir)^-1 * [f(q + eps*dir) - f(q)]
    RIGHT = "right"  # [f(q + eps*dir) - f(q)] * (eps*dir)^-1


def difference_quotient(
    f: QFunction,
    q: Quaternion,
    direction: Quaternion,
    eps: float = 1e-6,
    division: Division = Division.LEFT,
) -> Quaternion:
    """Quaternionic difference quotient of ``f`` at ``q`` along ``direction``.

    With the increment divided out on the left, every ``a + q*b`` yields
    ``b`` along every direction; functions like ``q^2`` do not.
    """
    if q.mode is not Mode.FLOAT or direction.mode is not Mode.FLOAT:
        raise ModeMismatchError("difference quotients work in float mode")
    if direction.is_zero():
        raise InvalidArgumentError("direction must be non-zero")
    if not eps > 0:
        raise InvalidArgumentError("eps must be positive")
    step = direction.scale(eps)
    diff = _finite(f(q + step), "q + step") - _finite(f(q), "q")
    inv = step.inverse()
    return inv * diff if division is Division.LEFT else diff * inv


# ---------------------------------------------------------------------------
# Real 4x4 first-order system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialOp:
    """``sign * d/dq_index`` as one entry of the real operator matrix."""

    sign: int
    index: int

    def __str__(self) -> str:
        return f"{'-' if self.sign < 0 else '+'}d{self.index}"


OperatorMatrix = tuple[tuple[PartialOp, ...], ...]


def pde_system_matrix(side: Side) -> OperatorMatrix:
    """Operator matrix ``A`` with ``(A @ (f0, f1, f2, f3))_r`` = component r of ``D f``.

    Built by multiplying basis units, so entry ``(r, c)`` collects the term
    ``e_t * e_c`` (left) or ``e_c * e_t`` (right) landing on component ``r``.
    """
    units = _units(Mode.EXACT)
    grid: list[list[PartialOp | None]] = [[None] * 4 for _ in range(4)]
    for t, et in enumerate(units):
        for c, ec in enumerate(units):
            prod = mul_components(et, ec) if side is Side.LEFT else mul_components(ec, et)
            for r, v in enumerate(prod.components):
                if v != 0:
                    if grid[r][c] is not None:
                        raise AssertionError("operator entries overlap")
                    grid[r][c] = PartialOp(int(v), t)
    return tuple(tuple(row) for row in grid)  # type: ignore[arg-type]


def apply_pde_system(matrix: OperatorMatrix, p: CanonicalPoly) -> CanonicalPoly:
    """Apply the real operator matrix to the component vector of ``p``."""
    comps = p.real_components()
    parts: list[dict] = [{}, {}, {}, {}]
    for r, row in enumerate(matrix):
        for c, op in enumerate(row):
            for idx, v in comps[c].items():
                e = idx[op.index]
                if e == 0:
                    continue
                new = list(idx)
                new[op.index] -= 1
                key = tuple(new)
                parts[r][key] = parts[r].get(key, 0) + op.sign * e * v
    return CanonicalPoly.from_real_components(parts, p.mode)


def render_operator_matrix(matrix: OperatorMatrix) -> str:
    return "\n".join(" ".join(f"{str(op):>4}" for op in row) for row in matrix)


def fueter_variables(mode: Mode = Mode.EXACT) -> list[CanonicalPoly]:
    """``q_t - e_t q0`` for t = 1, 2, 3."""
    q0 = CanonicalPoly.component(0, mode)
    return [CanonicalPoly.component(t, mode) - q0.left_mul(Quaternion.unit(t, mode)) for t in (1, 2, 3)]


def direction_spread(f: QFunction, q: Quaternion, directions: Sequence[Quaternion], eps: float = 1e-6,
                     division: Division = Division.LEFT) -> float:
    """Largest pairwise distance between difference quotients over ``directions``."""
    quots = [difference_quotient(f, q, d, eps, division) for d in directions]
    worst = 0.0
    for a in range(len(quots)):
        for b in range(a + 1, len(quots)):
            worst = max(worst, (quots[a] - quots[b]).norm())
    return worst
