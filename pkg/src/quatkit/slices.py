"""Slice regularity: holomorphy of a function on every complex line ``R + R I``.

For a unit imaginary ``I`` (``I^2 = -1``) put ``F(x, y) = f(x + y I)``. The
Cauchy-Riemann residual used here is ``dF/dx + dF/dy * I`` with ``I`` acting
on the right. That is the side under which ``a q^n`` (coefficients on the
left) is annihilated for every quaternion ``a``:
``d/dx a z^n = a n z^(n-1)`` and ``d/dy a z^n * I = a n z^(n-1) I I``.
The left-acting variant is available through ``side=Side.LEFT``; it only
annihilates ``a q^n`` when ``a`` commutes with ``I``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import InvalidArgumentError, ModeMismatchError, NumericDomainError
from .expr import Expr, as_function
from .fueter import DEFAULT_H, DEFAULT_SEED, DEFAULT_TOL, Side
from .quaternion import Quaternion
from .report import Method, RegularityMode, RegularityReport, Residual, Verdict
from .scalar import Mode, Scalar, infer_mode

QFunction = Callable[[Quaternion], Quaternion]


@dataclass(frozen=True)
class UnitImaginary:
    x1: Scalar
    x2: Scalar
    x3: Scalar

    def __post_init__(self):
        mode = infer_mode((self.x1, self.x2, self.x3))
        conv = Fraction if mode is Mode.EXACT else float
        for name in ("x1", "x2", "x3"):
            object.__setattr__(self, name, conv(getattr(self, name)))
        n2 = self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
        if mode is Mode.EXACT and n2 != 1:
            raise InvalidArgumentError(f"x1^2+x2^2+x3^2 = {n2}, not 1")
        if mode is Mode.FLOAT and abs(n2 - 1.0) > 1e-12:
            raise InvalidArgumentError(f"x1^2+x2^2+x3^2 = {n2!r}, not 1 within 1e-12")

    @property
    def mode(self) -> Mode:
        return Mode.EXACT if isinstance(self.x1, Fraction) else Mode.FLOAT

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0, self.x1, self.x2, self.x3, mode=self.mode)

    def to_float(self) -> "UnitImaginary":
        return UnitImaginary(float(self.x1), float(self.x2), float(self.x3))

    def as_tuple(self) -> tuple[float, float, float]:
        return (float(self.x1), float(self.x2), float(self.x3))

    @classmethod
    def from_vector(cls, v: Sequence[float]) -> "UnitImaginary":
        r = math.sqrt(sum(c * c for c in v))
        if r == 0:
            raise InvalidArgumentError("zero vector has no direction")
        return cls(*(float(c) / r for c in v))


AXES = {
    "i": UnitImaginary(1, 0, 0),
    "j": UnitImaginary(0, 1, 0),
    "k": UnitImaginary(0, 0, 1),
}


@dataclass(frozen=True)
class SlicePoint:
    x: Scalar
    y: Scalar


def embed(I: UnitImaginary, p: SlicePoint) -> Quaternion:
    """``x + y I``."""
    mode = infer_mode((p.x, p.y, I.x1))
    return Quaternion(p.x, p.y * I.x1, p.y * I.x2, p.y * I.x3, mode=mode)


def sample_unit_imaginaries(n: int, seed: int) -> list[UnitImaginary]:
    """Uniform on the 2-sphere via normalised Gaussian 3-vectors."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        v = [rng.gauss(0.0, 1.0) for _ in range(3)]
        if math.sqrt(sum(c * c for c in v)) < 1e-6:
            continue
        out.append(UnitImaginary.from_vector(v))
    return out


def sample_slice_points(n: int, seed: int, radius: float = 1.0, min_y: float = 1e-3) -> list[SlicePoint]:
    """Uniform in the upper half-disk of ``radius``, keeping ``y > min_y``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        r = radius * math.sqrt(rng.random())
        theta = math.pi * rng.random()
        x, y = r * math.cos(theta), r * math.sin(theta)
        if y <= min_y:
            continue
        out.append(SlicePoint(x, y))
    return out


def slice_cr_residual(
    f: QFunction,
    I: UnitImaginary,
    p: SlicePoint,
    h: float = DEFAULT_H,
    side: Side = Side.RIGHT,
) -> Quaternion:
    """``dF/dx + dF/dy * I`` for ``F(x, y) = f(x + y I)``, by central differences."""
    if not h > 0:
        raise InvalidArgumentError("step h must be positive")
    I = I.to_float()
    x, y = float(p.x), float(p.y)

    def F(a: float, b: float) -> Quaternion:
        v = f(embed(I, SlicePoint(a, b)))
        if v.mode is not Mode.FLOAT:
            raise ModeMismatchError("slice residual needs a float-valued function")
        if not all(math.isfinite(c) for c in v.components):
            raise NumericDomainError(f"non-finite value at x={a!r}, y={b!r}")
        return v

    dx = (F(x + h, y) - F(x - h, y)) / (2.0 * h)
    dy = (F(x, y + h) - F(x, y - h)) / (2.0 * h)
    unit = I.as_quaternion()
    return dx + (dy * unit if side is Side.RIGHT else unit * dy)


@dataclass(frozen=True)
class SliceConfig:
    num_slices: int = 8
    num_points: int = 10
    h: float = DEFAULT_H
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED
    radius: float = 1.0
    side: Side = Side.RIGHT

    def __post_init__(self):
        if self.num_slices < 1 or self.num_points < 1:
            raise InvalidArgumentError("num_slices and num_points must be positive")
        if not (self.h > 0 and self.tol > 0 and self.radius > 0):
            raise InvalidArgumentError("h, tol and radius must be positive")


def is_slice_regular(e: Union[Expr, QFunction], config: SliceConfig | None = None) -> RegularityReport:
    """Sample ``num_slices`` unit imaginaries and ``num_points`` points per slice."""
    config = config or SliceConfig()
    f = as_function(e, Mode.FLOAT) if isinstance(e, Expr) else e
    slices = sample_unit_imaginaries(config.num_slices, config.seed)
    points = sample_slice_points(config.num_points, config.seed + 1, config.radius)
    residuals = []
    for I in slices:
        for p in points:
            r = slice_cr_residual(f, I, p, config.h, config.side)
            residuals.append(Residual(embed(I, p), r, r.norm(), I.as_tuple()))
    worst = max(r.norm for r in residuals)
    verdict = Verdict.REGULAR if worst <= config.tol else Verdict.NOT_REGULAR
    notes = (
        "numeric verdict is sample-based evidence, not a proof",
        "real differentiability of f is assumed, not certified",
        f"residual operator d/dx + (d/dy)*I with I acting on the {config.side.value}",
    )
    return RegularityReport(
        RegularityMode.SLICE_REGULAR, Method.NUMERIC, verdict, tuple(residuals), tolerance=config.tol, notes=notes
    )


# ---------------------------------------------------------------------------
# Power series
# ---------------------------------------------------------------------------

TAIL_TERMS = 64
RATIO_WINDOW = 16

Coefficients = Union[Sequence[Quaternion], Callable[[int], Quaternion]]


@dataclass(frozen=True)
class SeriesResult:
    value: Quaternion
    truncation_bound: float
    divergent: bool
    radius_estimate: float
    within_tolerance: bool


def _coefficient_norms(coeffs: Coefficients, upto: int) -> list[float]:
    if callable(coeffs):
        return [coeffs(n).to_float().norm() for n in range(upto + 1)]
    return [c.to_float().norm() for c in coeffs[: upto + 1]]


def radius_estimate(norms: Sequence[float]) -> float:
    """Crude radius of convergence from the last few coefficient ratios."""
    ratios = [b / a for a, b in zip(norms[:-1], norms[1:]) if a > 0 and b > 0]
    window = ratios[-RATIO_WINDOW:]
    if not window:
        return math.inf
    worst = max(window)
    return math.inf if worst == 0 else 1.0 / worst


def series_eval(coeffs: Coefficients, q: Quaternion, N: int, tail_tol: float = 1e-12) -> SeriesResult:
    """Horner evaluation of ``sum_{n<=N} a_n q^n`` plus a tail estimate.

    ``coeffs`` is a sequence or a callable ``n -> a_n``. The tail bound sums
    ``|a_n| |q|^n`` for ``n = N+1 .. N+64`` over the available coefficients
    and, for callables, adds a geometric remainder beyond that window.
    Divergence (``|q|`` at or beyond the radius estimate) is reported in the
    result, with an infinite bound.
    """
    if N < 0:
        raise InvalidArgumentError("N must be non-negative")
    if callable(coeffs):
        head = [coeffs(n) for n in range(N + 1)]
    else:
        if len(coeffs) < N + 1:
            raise InvalidArgumentError(f"need {N + 1} coefficients, got {len(coeffs)}")
        head = list(coeffs[: N + 1])
    acc = Quaternion.zero(q.mode)
    for a in reversed(head):
        if a.mode is not q.mode:
            raise ModeMismatchError("coefficient mode differs from the point")
        acc = acc * q + a

    norms = _coefficient_norms(coeffs, N + TAIL_TERMS)
    radius = radius_estimate(norms)
    r = q.to_float().norm()
    if r >= radius:
        return SeriesResult(acc, math.inf, True, radius, False)
    bound = 0.0
    for n in range(N + 1, len(norms)):
        bound += norms[n] * r**n
    if callable(coeffs) and math.isfinite(radius):
        rho = r / radius
        bound += norms[-1] * r ** (len(norms) - 1) * rho / (1.0 - rho)
    return SeriesResult(acc, bound, False, radius, bound <= tail_tol)
