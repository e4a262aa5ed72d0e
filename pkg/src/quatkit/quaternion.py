"""Quaternion arithmetic over exact rationals or floats.

The Hamilton product is available in three independently written forms:

* :func:`mul_components` -- the regrouped four-component formula,
* :func:`mul_matrix` -- the left-multiplication matrix of ``p`` applied to ``q``,
* :func:`mul_vector_form` -- scalar/vector split with dot and cross products.

They deliberately share no code so each one can serve as an oracle for the
others. ``Quaternion.__mul__`` uses :func:`mul_components`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    ModeMismatchError,
    QuaternionZeroDivisionError,
    UnsupportedOperationError,
)
from .scalar import Mode, Scalar, coerce, infer_mode, render_scalar, to_mode

Matrix4 = tuple[tuple[Scalar, Scalar, Scalar, Scalar], ...]

UNIT_NAMES = ("1", "i", "j", "k")


@dataclass(frozen=True)
class Quaternion:
    """``w + x i + y j + z k`` with all four components in one scalar mode."""

    w: Scalar
    x: Scalar
    y: Scalar
    z: Scalar
    mode: Mode = None  # type: ignore[assignment]

    def __post_init__(self):
        mode = self.mode
        if mode is None:
            mode = infer_mode((self.w, self.x, self.y, self.z))
        elif not isinstance(mode, Mode):
            mode = Mode(mode)
        object.__setattr__(self, "mode", mode)
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, coerce(getattr(self, name), mode))

    # -- construction ---------------------------------------------------
    @classmethod
    def from_components(cls, comps: Sequence, mode: Mode | None = None) -> "Quaternion":
        w, x, y, z = comps
        return cls(w, x, y, z, mode)

    @classmethod
    def real(cls, value, mode: Mode | None = None) -> "Quaternion":
        return cls(value, 0, 0, 0, mode)

    @classmethod
    def zero(cls, mode: Mode = Mode.EXACT) -> "Quaternion":
        return cls(0, 0, 0, 0, mode)

    @classmethod
    def one(cls, mode: Mode = Mode.EXACT) -> "Quaternion":
        return cls(1, 0, 0, 0, mode)

    @classmethod
    def unit(cls, index: int, mode: Mode = Mode.EXACT) -> "Quaternion":
        """Basis element 1, i, j or k for index 0..3."""
        comps = [0, 0, 0, 0]
        comps[index] = 1
        return cls(*comps, mode=mode)

    # -- views ----------------------------------------------------------
    @property
    def components(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.w, self.x, self.y, self.z)

    @property
    def scalar_part(self) -> Scalar:
        return self.w

    @property
    def vector_part(self) -> tuple[Scalar, Scalar, Scalar]:
        return (self.x, self.y, self.z)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.components)

    def is_real(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def to_mode(self, mode: Mode) -> "Quaternion":
        """Explicit conversion; exact -> float may round."""
        if mode is self.mode:
            return self
        return Quaternion(*(to_mode(c, mode) for c in self.components), mode=mode)

    def to_float(self) -> "Quaternion":
        return self.to_mode(Mode.FLOAT)

    def to_exact(self) -> "Quaternion":
        return self.to_mode(Mode.EXACT)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return add(self, -other)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z, self.mode)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul_components(self, other)
        if isinstance(other, (int, float, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, Fraction)) and not isinstance(other, bool):
            s = coerce(other, self.mode)
            if s == 0:
                raise QuaternionZeroDivisionError("division by zero scalar")
            return Quaternion(*(c / s for c in self.components), mode=self.mode)
        return NotImplemented

    def scale(self, s) -> "Quaternion":
        s = coerce(s, self.mode)
        return Quaternion(s * self.w, s * self.x, s * self.y, s * self.z, self.mode)

    def __pow__(self, n: int) -> "Quaternion":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Quaternion.one(self.mode)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Quaternion":
        return conjugate(self)

    def norm_squared(self) -> Scalar:
        return norm_squared(self)

    def norm(self) -> float:
        return norm(self)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def __str__(self) -> str:
        return render_linear(self.components, UNIT_NAMES)

    def __repr__(self) -> str:
        return f"Quaternion({str(self)!r}, {self.mode.value})"

    def to_json(self) -> dict:
        return {k: _json_scalar(v) for k, v in zip("wxyz", self.components)}

    @classmethod
    def from_json(cls, obj: dict, mode: Mode | None = None) -> "Quaternion":
        vals = []
        for k in "wxyz":
            v = obj[k]
            if isinstance(v, str):
                v = Fraction(v)
            vals.append(v)
        return cls(*vals, mode=mode)


def _json_scalar(v: Scalar):
    if isinstance(v, Fraction):
        return render_scalar(v)
    return float(v)


def render_linear(coeffs: Sequence[Scalar], names: Sequence[str]) -> str:
    """Render ``sum c_b * name_b`` compactly, e.g. ``1+k``, ``-1/2*i+3*j``.

    Basis element 0 is the identity and is rendered as a bare number.
    Exact renderings re-parse to the same value.
    """
    parts: list[str] = []
    for idx, (c, name) in enumerate(zip(coeffs, names)):
        if c == 0:
            continue
        neg = c < 0
        mag = render_scalar(-c if neg else c)
        if idx == 0:
            body = mag
        elif mag in ("1", "1.0"):
            body = name
        else:
            body = f"{mag}*{name}"
        if parts:
            parts.append(("-" if neg else "+") + body)
        else:
            parts.append(("-" if neg else "") + body)
    return "".join(parts) if parts else "0"


def _check(p: Quaternion, q: Quaternion) -> Mode:
    if p.mode is not q.mode:
        raise ModeMismatchError(f"cannot combine {p.mode.value} and {q.mode.value} quaternions")
    return p.mode


def add(p: Quaternion, q: Quaternion) -> Quaternion:
    mode = _check(p, q)
    return Quaternion(p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z, mode)


def mul_components(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product from the regrouped component formula."""
    mode = _check(p, q)
    p0, p1, p2, p3 = p.components
    q0, q1, q2, q3 = q.components
    r0 = p0 * q0 - (p1 * q1 + p2 * q2 + p3 * q3)
    r1 = p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2
    r2 = p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1
    r3 = p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0
    return Quaternion(r0, r1, r2, r3, mode)


def left_mul_matrix(p: Quaternion) -> Matrix4:
    """Matrix ``M(p)`` with ``M(p) @ [q0, q1, q2, q3] == components of p*q``."""
    p0, p1, p2, p3 = p.components
    return (
        (p0, -p1, -p2, -p3),
        (p1, p0, -p3, p2),
        (p2, p3, p0, -p1),
        (p3, -p2, p1, p0),
    )


def right_mul_matrix(p: Quaternion) -> Matrix4:
    """Matrix ``R(p)`` with ``R(p) @ [q0, q1, q2, q3] == components of q*p``."""
    p0, p1, p2, p3 = p.components
    return (
        (p0, -p1, -p2, -p3),
        (p1, p0, p3, -p2),
        (p2, -p3, p0, p1),
        (p3, p2, -p1, p0),
    )


def mul_matrix(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product as ``M(p) @ q``."""
    mode = _check(p, q)
    m = left_mul_matrix(p)
    vec = q.components
    out = []
    for row in m:
        acc = row[0] * vec[0]
        for a, b in zip(row[1:], vec[1:]):
            acc = acc + a * b
        out.append(acc)
    return Quaternion(*out, mode=mode)


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def mul_vector_form(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product as ``p0 q0 - p.q + p0 q + q0 p + p x q``."""
    mode = _check(p, q)
    p0, pv = p.w, p.vector_part
    q0, qv = q.w, q.vector_part
    cr = _cross(pv, qv)
    vec = [p0 * qv[t] + q0 * pv[t] + cr[t] for t in range(3)]
    return Quaternion(p0 * q0 - _dot(pv, qv), *vec, mode=mode)


def conjugate(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z, q.mode)


def norm_squared(q: Quaternion) -> Scalar:
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z


def norm(q: Quaternion) -> float:
    if q.mode is Mode.EXACT:
        raise UnsupportedOperationError(
            "norm needs a square root; use norm_squared or convert to float mode"
        )
    return math.sqrt(norm_squared(q))


def inverse(q: Quaternion) -> Quaternion:
    n2 = norm_squared(q)
    if n2 == 0:
        raise QuaternionZeroDivisionError("zero quaternion has no inverse")
    return conjugate(q) / n2


def unit_table(mode: Mode = Mode.EXACT) -> tuple[tuple[Quaternion, ...], ...]:
    """Products ``e_a * e_b`` over the basis ``(1, i, j, k)``."""
    units = [Quaternion.unit(t, mode) for t in range(4)]
    return tuple(tuple(mul_components(a, b) for b in units) for a in units)


def signed_unit_name(q: Quaternion) -> str:
    """Name of a signed basis element such as ``-i``; ValueError otherwise."""
    nz = [(t, c) for t, c in enumerate(q.components) if c != 0]
    if len(nz) != 1 or abs(nz[0][1]) != 1:
        raise ValueError(f"{q} is not a signed unit")
    t, c = nz[0]
    return ("-" if c < 0 else "") + UNIT_NAMES[t]
