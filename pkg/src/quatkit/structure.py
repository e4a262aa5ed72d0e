"""Finite-dimensional real algebras given by structure constants.

Used to replay, by exact computation, why a three-dimensional "triplet"
field with ``i^2 = j^2 = -1`` cannot exist, why ``ji = k`` produces zero
divisors, and why ``ji = -k`` gives a division algebra (the quaternions).

Derivations are data: every :class:`Step` names two expressions in the
expression language that must evaluate to the same element under the
report's table, so :func:`replay` can re-check a report mechanically.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .errors import InvalidArgumentError, InvalidTableError
from .expr import Component, Conj, Const, Expr, Neg, Pow, Prod, Series, Sum, Sym, VarQ, parse
from .linalg import determinant, nullspace_vector
from .quaternion import render_linear
from .scalar import render_scalar

Vector = tuple  # of Fraction or sympy expressions


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureTable:
    """``constants[a][b][c]`` is the coefficient of basis ``c`` in ``e_a * e_b``.

    Basis element 0 must be the identity. Entries are exact rationals;
    ``symbolic=True`` additionally admits sympy expressions, used for
    hypothetical tables with unknown products.
    """

    dim: int
    basis: tuple[str, ...]
    constants: tuple[tuple[Vector, ...], ...]
    symbolic: bool = False
    name: str = ""

    def __post_init__(self):
        if self.dim < 1 or len(self.basis) != self.dim:
            raise InvalidTableError("basis length must equal dim >= 1")
        if len(self.constants) != self.dim or any(len(row) != self.dim for row in self.constants):
            raise InvalidTableError("table must be dim x dim")
        rows = []
        for row in self.constants:
            new_row = []
            for vec in row:
                if len(vec) != self.dim:
                    raise InvalidTableError("each product must be a dim-vector")
                new_row.append(tuple(self._coerce(v) for v in vec))
            rows.append(tuple(new_row))
        object.__setattr__(self, "constants", tuple(rows))
        for b in range(self.dim):
            e_b = basis_vector(self.dim, b)
            if not (_vec_eq(self.constants[0][b], e_b) and _vec_eq(self.constants[b][0], e_b)):
                raise InvalidTableError(
                    f"basis element {self.basis[0]!r} is not a two-sided identity on {self.basis[b]!r}"
                )

    def _coerce(self, v):
        if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v)
        if self.symbolic and isinstance(v, sympy.Basic):
            return v
        raise InvalidTableError(f"structure constant {v!r} is not an exact rational")

    def product(self, a: int, b: int) -> Vector:
        return self.constants[a][b]

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise InvalidArgumentError(f"no basis element named {name!r}") from None

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for a, xa in enumerate(x):
            if _is_zero(xa):
                continue
            for b, yb in enumerate(y):
                if _is_zero(yb):
                    continue
                coef = xa * yb
                for c, v in enumerate(self.constants[a][b]):
                    if not _is_zero(v):
                        out[c] = out[c] + coef * v
        return tuple(_simplify(v) for v in out)

    def left_mul_matrix(self, x: Sequence) -> list[list]:
        """``L[r][c]`` = component ``r`` of ``x * e_c``."""
        cols = [self.mul(x, basis_vector(self.dim, c)) for c in range(self.dim)]
        return [[cols[c][r] for c in range(self.dim)] for r in range(self.dim)]

    def is_commutative(self) -> bool:
        return all(
            _vec_eq(self.constants[a][b], self.constants[b][a])
            for a in range(self.dim)
            for b in range(self.dim)
        )

    def render(self, x: Sequence) -> str:
        if all(isinstance(v, Fraction) for v in x):
            return render_linear(x, self.basis)
        return render_symbolic(x, self.basis)

    def to_json(self) -> dict:
        if self.symbolic:
            raise InvalidTableError("symbolic tables have no JSON form")
        return {
            "dim": self.dim,
            "basis": list(self.basis),
            "table": [[[render_scalar(v) for v in vec] for vec in row] for row in self.constants],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StructureTable":
        try:
            dim = int(obj["dim"])
            basis = tuple(str(b) for b in obj["basis"])
            table = tuple(
                tuple(tuple(Fraction(str(v)) for v in vec) for vec in row) for row in obj["table"]
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidTableError(f"malformed table JSON: {exc}") from None
        return cls(dim, basis, table, name=str(obj.get("name", "")))


def basis_vector(dim: int, b: int) -> Vector:
    return tuple(Fraction(1 if c == b else 0) for c in range(dim))


def _is_zero(v) -> bool:
    if isinstance(v, sympy.Basic):
        return sympy.expand(v) == 0
    return v == 0


def _simplify(v):
    if isinstance(v, sympy.Basic):
        v = sympy.expand(v)
        if v.is_Rational:
            return Fraction(int(v.p), int(v.q))
    return v


def _vec_eq(x: Sequence, y: Sequence) -> bool:
    return len(x) == len(y) and all(_is_zero(a - b) for a, b in zip(x, y))


def table_from_relations(ji_sign: int, name: str = "") -> StructureTable:
    """Four-dimensional table on ``1, i, j, k = ij`` with ``i^2 = j^2 = -1`` and ``ji = ji_sign * ij``.

    Products of basis words are reduced assuming associativity: ``j``s are
    moved to the right of ``i``s (each swap contributes ``ji_sign``) and
    squares are replaced by ``-1``.
    """
    if ji_sign not in (1, -1):
        raise InvalidArgumentError("ji_sign must be +1 or -1")
    words = ["", "i", "j", "ij"]

    def reduce(word: str) -> tuple[int, str]:
        sign = 1
        letters = list(word)
        changed = True
        while changed:
            changed = False
            for p in range(len(letters) - 1):
                if letters[p] == "j" and letters[p + 1] == "i":
                    letters[p], letters[p + 1] = "i", "j"
                    sign *= ji_sign
                    changed = True
                    break
                if letters[p] == letters[p + 1]:
                    del letters[p : p + 2]
                    sign = -sign
                    changed = True
                    break
        return sign, "".join(letters)

    table = []
    for a in words:
        row = []
        for b in words:
            sign, w = reduce(a + b)
            vec = [Fraction(0)] * 4
            vec[words.index(w)] = Fraction(sign)
            row.append(tuple(vec))
        table.append(tuple(row))
    return StructureTable(4, ("1", "i", "j", "k"), tuple(table), name=name)


def quaternion_table() -> StructureTable:
    """``ji = -k``: Hamilton's quaternions."""
    return table_from_relations(-1, "quaternions")


def ji_plus_k_table() -> StructureTable:
    """``ji = +k = ij``."""
    return table_from_relations(+1, "ji=+k")


def bicomplex_table() -> StructureTable:
    """Commutative ring with ``i^2 = j^2 = -1``, ``ij = ji = k`` and hence ``k^2 = +1``."""
    t = table_from_relations(+1, "bicomplex")
    if not t.is_commutative():
        raise AssertionError("bicomplex table must be commutative")
    return t


# ---------------------------------------------------------------------------
# Evaluating expressions inside a table
# ---------------------------------------------------------------------------

_SYMBOL_NAMES = ("alpha", "beta", "gamma", "u0", "u1", "u2")
SYMBOLS = {name: sympy.Symbol(name, real=True) for name in _SYMBOL_NAMES}


def evaluate_in_table(e: Expr, table: StructureTable) -> Vector:
    """Evaluate a constant expression with products taken in ``table``.

    Quaternion constants are read through the basis names ``1, i, j, k``;
    products of more than two factors are grouped from the left, so
    derivations spell out their bracketing explicitly.
    """
    dim = table.dim
    if isinstance(e, Const):
        out = [Fraction(0)] * dim
        for name, v in zip(("1", "i", "j", "k"), e.value.components):
            if v != 0:
                if name not in table.basis:
                    raise InvalidArgumentError(f"{name!r} is not in the basis {table.basis}")
                out[table.index(name)] = v
        return tuple(out)
    if isinstance(e, Sym):
        return (SYMBOLS[e.name],) + (Fraction(0),) * (dim - 1)
    if isinstance(e, Neg):
        return tuple(-v for v in evaluate_in_table(e.child, table))
    if isinstance(e, Sum):
        a = evaluate_in_table(e.left, table)
        b = evaluate_in_table(e.right, table)
        return tuple(_simplify(x + y) for x, y in zip(a, b))
    if isinstance(e, Prod):
        acc = evaluate_in_table(e.factors[0], table)
        for f in e.factors[1:]:
            acc = table.mul(acc, evaluate_in_table(f, table))
        return acc
    if isinstance(e, Pow):
        base = evaluate_in_table(e.child, table)
        acc = basis_vector(dim, 0)
        for _ in range(e.n):
            acc = table.mul(acc, base)
        return acc
    if isinstance(e, (VarQ, Component, Conj, Series)):
        raise InvalidArgumentError("only constant expressions can be evaluated in a table")
    raise TypeError(f"not an expression node: {e!r}")


def eval_text(text: str, table: StructureTable) -> Vector:
    return evaluate_in_table(parse(text, symbols=SYMBOLS), table)


def render_symbolic(x: Sequence, basis: Sequence[str]) -> str:
    """Render a vector whose coefficients are polynomials in the symbols."""
    parts = []
    for idx, (c, name) in enumerate(zip(x, basis)):
        if _is_zero(c):
            continue
        coef = render_sympy(c)
        simple = not any(ch in coef[1:] for ch in "+-")
        if idx == 0:
            body = coef if simple else f"({coef})"
        elif coef == "1":
            body = name
        elif coef == "-1":
            body = "-" + name
        else:
            body = f"{coef}*{name}" if simple else f"({coef})*{name}"
        if parts and not body.startswith("-"):
            parts.append("+")
        parts.append(body)
    return "".join(parts) if parts else "0"


def render_sympy(v) -> str:
    """Polynomial text in the expression grammar (``^`` powers, explicit ``*``)."""
    if isinstance(v, Fraction):
        return render_scalar(v)
    v = sympy.expand(v)
    syms = sorted(v.free_symbols, key=lambda s: _SYMBOL_NAMES.index(s.name))
    if not syms:
        r = sympy.Rational(v)
        return render_scalar(Fraction(int(r.p), int(r.q)))
    poly = sympy.Poly(v, *syms)
    out = []
    for exps, coef in poly.terms():
        coef = Fraction(int(coef.p), int(coef.q))
        mono = "*".join(
            s.name if e == 1 else f"{s.name}^{e}" for s, e in zip(syms, exps) if e
        )
        neg = coef < 0
        mag = abs(coef)
        body = mono if mag == 1 and mono else (f"{render_scalar(mag)}*{mono}" if mono else render_scalar(mag))
        if out:
            out.append(("-" if neg else "+") + body)
        else:
            out.append(("-" if neg else "") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class ReportVerdict(enum.Enum):
    LINEAR_DEPENDENCE = "LinearDependence"
    ZERO_DIVISOR = "ZeroDivisor"
    NO_REAL_SOLUTION = "NoRealSolution"
    CONSISTENT = "Consistent"


@dataclass(frozen=True)
class Step:
    expression: str
    rewritten: str
    justification: str

    def to_json(self) -> dict:
        return {"expression": self.expression, "rewritten": self.rewritten, "justification": self.justification}


@dataclass(frozen=True)
class ContradictionReport:
    case_label: str
    derivation: tuple[Step, ...]
    verdict: ReportVerdict
    conclusion: str
    table: StructureTable = field(repr=False, compare=False)
    equations: tuple[str, ...] = ()
    witness: tuple[str, str] | None = None

    def to_json(self) -> dict:
        out = {
            "case": self.case_label,
            "verdict": self.verdict.value,
            "conclusion": self.conclusion,
            "derivation": [s.to_json() for s in self.derivation],
        }
        if self.equations:
            out["equations"] = list(self.equations)
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out

    def to_text(self) -> str:
        lines = [f"case {self.case_label}: {self.verdict.value}"]
        for n, s in enumerate(self.derivation, 1):
            lines.append(f"  {n}. {s.expression} = {s.rewritten}    [{s.justification}]")
        for eq in self.equations:
            lines.append(f"  equation: {eq}")
        if self.witness is not None:
            a, b = self.witness
            lines.append(f"  witness: ({a})({b})=0")
        lines.append(f"  => {self.conclusion}")
        return "\n".join(lines)


def check_step(step: Step, table: StructureTable) -> bool:
    return _vec_eq(eval_text(step.expression, table), eval_text(step.rewritten, table))


def replay(report: ContradictionReport) -> bool:
    """Re-evaluate every derivation step under the report's table."""
    return all(check_step(s, report.table) for s in report.derivation)


def _step(table: StructureTable, expression: str, justification: str) -> Step:
    """Evaluate ``expression`` in ``table`` and record the rendered result."""
    return Step(expression, table.render(eval_text(expression, table)), justification)


def _triplet_table(ij: Vector) -> StructureTable:
    """``{1, i, j}`` with ``i^2 = j^2 = -1``, ``ij`` given and ``ji`` left unknown."""
    one, i, j = (basis_vector(3, b) for b in range(3))
    minus_one = tuple(-v for v in one)
    ji = (SYMBOLS["u0"], SYMBOLS["u1"], SYMBOLS["u2"])
    table = (
        (one, i, j),
        (i, minus_one, tuple(ij)),
        (j, ji, minus_one),
    )
    return StructureTable(3, ("1", "i", "j"), table, symbolic=True, name="triplet")


TRIPLET_CASES = ("+1", "-1", "+i", "-i", "+j", "-j", "0")


def _solve_relation(rel: Vector, basis: Sequence[str]) -> str:
    nz = [b for b, v in enumerate(rel) if not _is_zero(v)]
    last = nz[-1]
    pivot = rel[last]
    rhs = tuple(Fraction(0) if b == last else -rel[b] / pivot for b in range(len(rel)))
    return f"{basis[last]} = {render_linear(rhs, basis)}"


def triplet_case(case: str) -> ContradictionReport:
    """One case ``ij = case`` of the three-dimensional analysis."""
    if case not in TRIPLET_CASES:
        raise InvalidArgumentError(f"case must be one of {TRIPLET_CASES}")
    value = {"+1": (1, 0, 0), "-1": (-1, 0, 0), "+i": (0, 1, 0), "-i": (0, -1, 0),
             "+j": (0, 0, 1), "-j": (0, 0, -1), "0": (0, 0, 0)}[case]
    table = _triplet_table(tuple(Fraction(v) for v in value))
    steps = [
        _step(table, "i*j", "case assumption"),
        _step(table, "i*i", "i^2 = -1"),
        _step(table, "j*j", "j^2 = -1"),
    ]
    if case in ("+1", "-1", "+i", "-i"):
        a, b = "i*(i*j)", "(i*i)*j"
        steps.append(_step(table, a, "left-multiply the case value by i"))
        steps.append(_step(table, b, "i^2 = -1"))
    else:
        a, b = "(i*j)*j", "i*(j*j)"
        steps.append(_step(table, a, "right-multiply the case value by j"))
        steps.append(_step(table, b, "j^2 = -1"))
    rel_expr = f"{a} - {b}"
    rel = eval_text(rel_expr, table)
    steps.append(Step(rel_expr, table.render(rel), "associativity forces this to be 0"))
    nonzero = [b for b, v in enumerate(rel) if not _is_zero(v)]
    if not nonzero:
        raise AssertionError(f"case ij={case} produced no relation")
    solved = _solve_relation(rel, table.basis)
    if len(nonzero) == 1:
        verdict = ReportVerdict.ZERO_DIVISOR
        conclusion = f"{solved}: a nonzero generator would vanish (i and j are zero divisors)"
    else:
        verdict = ReportVerdict.LINEAR_DEPENDENCE
        conclusion = f"{solved}: 1, i, j are linearly dependent, so the algebra is not 3-dimensional"
    return ContradictionReport(f"ij={case}", tuple(steps), verdict, conclusion, table)


def triplet_case_analysis() -> list[ContradictionReport]:
    """``ij`` ranging over the generators, their negatives, and zero."""
    return [triplet_case(c) for c in TRIPLET_CASES]


def triplet_general_obstruction() -> ContradictionReport:
    """``ij = alpha + beta i + gamma j`` with real unknowns; associativity forces ``gamma^2 = -1``."""
    alpha, beta, gamma = SYMBOLS["alpha"], SYMBOLS["beta"], SYMBOLS["gamma"]
    table = _triplet_table((alpha, beta, gamma))
    lhs, rhs = "i*(i*j)", "(i*i)*j"
    steps = [
        _step(table, "i*j", "closure: ij lies in span{1, i, j}"),
        _step(table, lhs, "expand using i^2 = -1 and ij"),
        _step(table, rhs, "i^2 = -1"),
    ]
    rel_expr = f"{lhs} - {rhs}"
    rel = eval_text(rel_expr, table)
    steps.append(Step(rel_expr, table.render(rel), "associativity forces this to be 0"))
    eqs = [sympy.expand(v) for v in rel if not _is_zero(v)]
    equations = []
    for name, v in zip(table.basis, rel):
        if _is_zero(v):
            continue
        equations.append(f"[{name}] {render_sympy(v)} = 0")
    forced = [v for v in eqs if v.free_symbols == {gamma}]
    for v in forced:
        # c*gamma^2 + d = 0  ->  gamma^2 = -d/c
        poly = sympy.Poly(v, gamma)
        if poly.degree() == 2 and poly.coeff_monomial(gamma) == 0:
            c, d = poly.coeff_monomial(gamma**2), poly.coeff_monomial(1)
            equations.append(f"gamma^2 = {render_sympy(-d / c)}")
    real_solutions = sympy.solve(eqs, [alpha, beta, gamma], dict=True)
    if real_solutions:
        verdict = ReportVerdict.CONSISTENT
        conclusion = f"real solutions exist: {real_solutions}"
    else:
        verdict = ReportVerdict.NO_REAL_SOLUTION
        conclusion = "no real alpha, beta, gamma satisfy the system: no 3-dimensional field contains i, j"
    return ContradictionReport("ij=alpha+beta*i+gamma*j", tuple(steps), verdict, conclusion, table, tuple(equations))


def ji_equals_k_zero_divisors() -> ContradictionReport:
    table = ji_plus_k_table()
    steps = (
        _step(table, "i*j", "definition of k"),
        _step(table, "j*i", "case assumption ji = k"),
        _step(table, "(i*j)*(i*j)", "k^2 = (ij)^2"),
        _step(table, "(i*i)*(j*j)", "(ij)^2 = i^2 j^2 when ij = ji"),
        _step(table, "k*k", "hence k^2 = +1"),
        _step(table, "(1+k)*(1-k)", "1 - k^2 = 1 - 1"),
    )
    det = determinant(table.left_mul_matrix(eval_text("1+k", table)))
    conclusion = f"(1+k)(1-k) = 0 with both factors nonzero; det L(1+k) = {render_scalar(det)}"
    return ContradictionReport("ji=+k", steps, ReportVerdict.ZERO_DIVISOR, conclusion, table, witness=("1+k", "1-k"))


def ji_equals_minus_k() -> ContradictionReport:
    """The surviving case: consistent with i^2 = j^2 = k^2 = ijk = -1."""
    table = quaternion_table()
    steps = (
        _step(table, "i*j", "definition of k"),
        _step(table, "j*i", "case assumption ji = -k"),
        _step(table, "k*k", "k^2"),
        _step(table, "(i*j)*k", "ijk"),
        _step(table, "(1+k)*(1-k)", "1 - k^2 = 2, no zero divisor here"),
    )
    return ContradictionReport(
        "ji=-k", steps, ReportVerdict.CONSISTENT, "i^2 = j^2 = k^2 = ijk = -1: the quaternions", table
    )


# ---------------------------------------------------------------------------
# Division check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivisionCheckResult:
    certified: bool
    witness: tuple[Vector, Vector] | None
    trials: int
    scanned: int
    table_name: str = ""
    basis: tuple[str, ...] = ()

    def witness_text(self) -> tuple[str, str] | None:
        if self.witness is None:
            return None
        return tuple(render_linear(w, self.basis) for w in self.witness)  # type: ignore[return-value]

    def to_json(self) -> dict:
        w = self.witness_text()
        return {
            "table": self.table_name,
            "result": "Certified" if self.certified else "ZeroDivisorWitness",
            "trials": self.trials,
            "scanned": self.scanned,
            "witness": list(w) if w else None,
        }

    def to_text(self) -> str:
        if self.certified:
            return (
                f"{self.table_name or 'table'}: Certified ({self.trials} random elements, "
                f"{self.scanned} small elements, all invertible)"
            )
        a, b = self.witness_text()
        return f"{self.table_name or 'table'}: ZeroDivisorWitness ({a})({b})=0"


def small_elements(dim: int):
    """Nonzero vectors with entries in {-1, 0, 1}, fewest nonzeros first."""
    for k in range(1, dim + 1):
        for pos in itertools.combinations(range(dim), k):
            for signs in itertools.product((1, -1), repeat=k):
                v = [Fraction(0)] * dim
                for p, s in zip(pos, signs):
                    v[p] = Fraction(s)
                yield tuple(v)


def random_element(rng: random.Random, dim: int, bound: int = 100) -> Vector:
    while True:
        v = tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(dim))
        if any(v):
            return v


def division_check(table: StructureTable, trials: int = 100, seed: int = 42) -> DivisionCheckResult:
    """Look for zero divisors; certify invertibility on samples otherwise.

    Every element with coefficients in {-1, 0, 1} is tested exactly, then
    ``trials`` seeded random rational elements. An element ``a`` is
    invertible here when its left-multiplication matrix has nonzero
    determinant.
    """
    if trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    if table.symbolic:
        raise InvalidTableError("division check needs an exact table")
    dim = table.dim
    small = list(small_elements(dim))
    for a in small:
        if determinant(table.left_mul_matrix(a)) == 0:
            b = next((b for b in small if not any(table.mul(a, b))), None)
            if b is None:
                b = tuple(nullspace_vector(table.left_mul_matrix(a)))
            return DivisionCheckResult(False, (a, b), 0, len(small), table.name, table.basis)
    rng = random.Random(seed)
    for n in range(trials):
        a = random_element(rng, dim)
        m = table.left_mul_matrix(a)
        if determinant(m) == 0:
            b = tuple(nullspace_vector(m))
            return DivisionCheckResult(False, (a, b), n + 1, len(small), table.name, table.basis)
    return DivisionCheckResult(True, None, trials, len(small), table.name, table.basis)
