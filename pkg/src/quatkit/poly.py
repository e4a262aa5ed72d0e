"""Canonical polynomial form of quaternionic expressions.

A polynomial is stored as ``{(e0, e1, e2, e3): c}`` meaning
``sum q0^e0 q1^e1 q2^e2 q3^e3 * c``. The component variables ``q_t`` are real,
so they commute with every quaternion and each term's constants can be
collapsed into one coefficient kept on the right of the monomial. With zero
coefficients dropped, two expressions agree on all of H exactly when their
canonical forms are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .errors import EvalError, ExponentOverflowError, ModeMismatchError
from .expr import (
    MAX_EXPONENT,
    Component,
    Conj,
    Const,
    Expr,
    Neg,
    Pow,
    Prod,
    Series,
    Sum,
    Sym,
    VarQ,
)
from .quaternion import Quaternion
from .scalar import Mode, Scalar, coerce

MultiIndex = tuple[int, int, int, int]

ZERO_INDEX: MultiIndex = (0, 0, 0, 0)


class CanonicalPoly:
    """Immutable map from multi-index to non-zero quaternion coefficient."""

    __slots__ = ("_terms", "mode")

    def __init__(self, terms: Mapping[MultiIndex, Quaternion] | None = None, mode: Mode = Mode.EXACT):
        clean: dict[MultiIndex, Quaternion] = {}
        for idx, c in (terms or {}).items():
            if c.mode is not mode:
                raise ModeMismatchError("coefficient mode differs from polynomial mode")
            if len(idx) != 4 or any(e < 0 for e in idx):
                raise ValueError(f"bad multi-index {idx}")
            if any(e > MAX_EXPONENT for e in idx):
                raise ExponentOverflowError(
                    f"exponent {max(idx)} exceeds the cap of {MAX_EXPONENT}"
                )
            if not c.is_zero():
                clean[tuple(idx)] = c
        self._terms = clean
        self.mode = mode

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, mode: Mode = Mode.EXACT) -> "CanonicalPoly":
        return cls({}, mode)

    @classmethod
    def constant(cls, c: Quaternion) -> "CanonicalPoly":
        return cls({ZERO_INDEX: c}, c.mode)

    @classmethod
    def component(cls, t: int, mode: Mode = Mode.EXACT) -> "CanonicalPoly":
        idx = [0, 0, 0, 0]
        idx[t] = 1
        return cls({tuple(idx): Quaternion.one(mode)}, mode)

    @classmethod
    def variable(cls, mode: Mode = Mode.EXACT) -> "CanonicalPoly":
        """``q = q0 + q1 i + q2 j + q3 k``."""
        terms = {}
        for t in range(4):
            idx = [0, 0, 0, 0]
            idx[t] = 1
            terms[tuple(idx)] = Quaternion.unit(t, mode)
        return cls(terms, mode)

    # -- mapping view ---------------------------------------------------
    @property
    def terms(self) -> dict[MultiIndex, Quaternion]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, idx: MultiIndex) -> Quaternion:
        return self._terms.get(tuple(idx), Quaternion.zero(self.mode))

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(i) for i in self._terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalPoly):
            return NotImplemented
        return self.mode is other.mode and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.mode, frozenset(self._terms.items())))

    # -- algebra --------------------------------------------------------
    def _same(self, other: "CanonicalPoly"):
        if self.mode is not other.mode:
            raise ModeMismatchError("cannot combine exact and float polynomials")

    def __add__(self, other: "CanonicalPoly") -> "CanonicalPoly":
        self._same(other)
        out = dict(self._terms)
        for idx, c in other._terms.items():
            out[idx] = out[idx] + c if idx in out else c
        return CanonicalPoly(out, self.mode)

    def __neg__(self) -> "CanonicalPoly":
        return CanonicalPoly({i: -c for i, c in self._terms.items()}, self.mode)

    def __sub__(self, other: "CanonicalPoly") -> "CanonicalPoly":
        return self + (-other)

    def __mul__(self, other: "CanonicalPoly") -> "CanonicalPoly":
        """Non-commutative product: coefficients multiply in operand order."""
        self._same(other)
        out: dict[MultiIndex, Quaternion] = {}
        for ia, ca in self._terms.items():
            for ib, cb in other._terms.items():
                idx = (ia[0] + ib[0], ia[1] + ib[1], ia[2] + ib[2], ia[3] + ib[3])
                c = ca * cb
                out[idx] = out[idx] + c if idx in out else c
        return CanonicalPoly(out, self.mode)

    def __pow__(self, n: int) -> "CanonicalPoly":
        if n < 0:
            raise ValueError("negative power")
        result = CanonicalPoly.constant(Quaternion.one(self.mode))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> "CanonicalPoly":
        return CanonicalPoly({i: c.conjugate() for i, c in self._terms.items()}, self.mode)

    def left_mul(self, a: Quaternion) -> "CanonicalPoly":
        return CanonicalPoly({i: a * c for i, c in self._terms.items()}, self.mode)

    def right_mul(self, a: Quaternion) -> "CanonicalPoly":
        return CanonicalPoly({i: c * a for i, c in self._terms.items()}, self.mode)

    def scale(self, s) -> "CanonicalPoly":
        return CanonicalPoly({i: c.scale(s) for i, c in self._terms.items()}, self.mode)

    def derivative(self, t: int) -> "CanonicalPoly":
        """Partial derivative with respect to the real component ``q_t``."""
        out: dict[MultiIndex, Quaternion] = {}
        for idx, c in self._terms.items():
            e = idx[t]
            if e == 0:
                continue
            new = list(idx)
            new[t] = e - 1
            out[tuple(new)] = c.scale(e)
        return CanonicalPoly(out, self.mode)

    def real_components(self) -> tuple[dict[MultiIndex, Scalar], ...]:
        """Split into four real polynomials ``(f0, f1, f2, f3)``."""
        parts: tuple[dict[MultiIndex, Scalar], ...] = ({}, {}, {}, {})
        for idx, c in self._terms.items():
            for t, v in enumerate(c.components):
                if v != 0:
                    parts[t][idx] = v
        return parts

    @classmethod
    def from_real_components(cls, parts, mode: Mode = Mode.EXACT) -> "CanonicalPoly":
        out: dict[MultiIndex, Quaternion] = {}
        for t, part in enumerate(parts):
            for idx, v in part.items():
                comps = [0, 0, 0, 0]
                comps[t] = coerce(v, mode)
                c = Quaternion(*comps, mode=mode)
                out[idx] = out[idx] + c if idx in out else c
        return cls(out, mode)

    def to_mode(self, mode: Mode) -> "CanonicalPoly":
        return CanonicalPoly({i: c.to_mode(mode) for i, c in self._terms.items()}, mode)

    # -- rendering ------------------------------------------------------
    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"CanonicalPoly({render_poly(self)!r})"


def _monomial(idx: MultiIndex) -> str:
    parts = []
    for t, e in enumerate(idx):
        if e == 1:
            parts.append(f"q{t}")
        elif e > 1:
            parts.append(f"q{t}^{e}")
    return "*".join(parts)


def _sort_key(idx: MultiIndex):
    return (-sum(idx), tuple(-e for e in idx))


def render_poly(p: CanonicalPoly) -> str:
    """Text form, highest degree first; exact renderings re-parse to ``p``."""
    if p.is_zero():
        return "0"
    out = []
    for idx in sorted(p, key=_sort_key):
        c = p[idx]
        mono = _monomial(idx)
        nz = [v for v in c.components if v != 0]
        if not mono:
            body = str(c)
        elif len(nz) == 1:
            cs = str(c)
            if cs == "1" or cs == "1.0":
                body = mono
            elif cs == "-1" or cs == "-1.0":
                body = "-" + mono
            else:
                body = f"{cs}*{mono}"
        else:
            body = f"({c})*{mono}"
        if not out:
            out.append(body)
        elif body.startswith("-"):
            out.append(" - " + body[1:])
        else:
            out.append(" + " + body)
    return "".join(out)


def expand(e: Expr, mode: Mode | None = None) -> CanonicalPoly:
    """Distribute ``e`` into canonical form.

    ``q`` becomes ``q0 + q1 i + q2 j + q3 k``; constants fold into one
    coefficient per monomial, preserving the order of multiplication.
    """
    if mode is None:
        mode = _infer_mode(e)
    return _expand(e, mode)


def _infer_mode(e: Expr) -> Mode:
    """Mode of the first constant found; exact when there are none."""
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Const):
            return node.value.mode
        if isinstance(node, Series):
            return node.coeffs[0].mode
        stack.extend(reversed(_children(node)))
    return Mode.EXACT


def _children(e: Expr):
    if isinstance(e, (Conj, Neg, Pow)):
        return (e.child,)
    if isinstance(e, Sum):
        return (e.left, e.right)
    if isinstance(e, Prod):
        return e.factors
    return ()


def _expand(e: Expr, mode: Mode) -> CanonicalPoly:
    if isinstance(e, Const):
        if e.value.mode is not mode:
            raise ModeMismatchError("constant mode differs from expansion mode")
        return CanonicalPoly.constant(e.value)
    if isinstance(e, VarQ):
        return CanonicalPoly.variable(mode)
    if isinstance(e, Component):
        return CanonicalPoly.component(e.index, mode)
    if isinstance(e, Conj):
        return _expand(e.child, mode).conjugate()
    if isinstance(e, Neg):
        return -_expand(e.child, mode)
    if isinstance(e, Sum):
        return _expand(e.left, mode) + _expand(e.right, mode)
    if isinstance(e, Prod):
        acc = _expand(e.factors[0], mode)
        for f in e.factors[1:]:
            acc = acc * _expand(f, mode)
        return acc
    if isinstance(e, Pow):
        return _expand(e.child, mode) ** e.n
    if isinstance(e, Series):
        qpoly = CanonicalPoly.variable(mode)
        acc = CanonicalPoly.zero(mode)
        for a in reversed(e.coeffs[: e.N + 1]):
            if a.mode is not mode:
                raise ModeMismatchError("series coefficient mode differs from expansion mode")
            acc = acc * qpoly + CanonicalPoly.constant(a)
        return acc
    if isinstance(e, Sym):
        raise EvalError(f"free symbol {e.name!r} cannot be expanded", e.span[0])
    raise TypeError(f"not an expression node: {e!r}")


def eval_poly(p: CanonicalPoly, q: Quaternion) -> Quaternion:
    """``sum (q0^e0 q1^e1 q2^e2 q3^e3) * c`` over the terms of ``p``."""
    if p.mode is not q.mode:
        raise ModeMismatchError(f"{p.mode.value} polynomial evaluated at a {q.mode.value} point")
    acc = Quaternion.zero(q.mode)
    comps = q.components
    for idx, c in p.items():
        m = Fraction(1) if q.mode is Mode.EXACT else 1.0
        for v, e in zip(comps, idx):
            if e:
                m = m * v**e
        acc = acc + c.scale(m)
    return acc


def poly_to_json(p: CanonicalPoly) -> dict:
    return {
        "rendered": render_poly(p),
        "terms": [
            {"exponents": list(idx), "coefficient": p[idx].to_json()}
            for idx in sorted(p, key=_sort_key)
        ],
    }


__all__ = [
    "CanonicalPoly",
    "MultiIndex",
    "eval_poly",
    "expand",
    "poly_to_json",
    "render_poly",
]
