"""Regularity verdicts shared by the Fueter and slice checkers."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .poly import CanonicalPoly, poly_to_json
from .quaternion import Quaternion


class RegularityMode(enum.Enum):
    FUETER_LEFT = "FueterLeft"
    FUETER_RIGHT = "FueterRight"
    SLICE_REGULAR = "SliceRegular"


class Method(enum.Enum):
    SYMBOLIC = "Symbolic"
    NUMERIC = "Numeric"


class Verdict(enum.Enum):
    REGULAR = "Regular"
    NOT_REGULAR = "NotRegular"


@dataclass(frozen=True)
class Residual:
    point: Quaternion
    value: Quaternion
    norm: float
    slice: tuple[float, float, float] | None = None

    def to_json(self) -> dict:
        out = {"point": self.point.to_json(), "residual": self.value.to_json(), "norm": self.norm}
        if self.slice is not None:
            out["slice"] = dict(zip(("x1", "x2", "x3"), self.slice))
        return out


@dataclass(frozen=True)
class RegularityReport:
    mode: RegularityMode
    method: Method
    verdict: Verdict
    residuals: tuple[Residual, ...] = ()
    symbolic_result: CanonicalPoly | None = None
    tolerance: float | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.method is Method.SYMBOLIC:
            if self.symbolic_result is None:
                raise ValueError("symbolic report needs a symbolic result")
            expected = Verdict.REGULAR if self.symbolic_result.is_zero() else Verdict.NOT_REGULAR
        else:
            if self.tolerance is None:
                raise ValueError("numeric report needs a tolerance")
            expected = Verdict.REGULAR if self.max_residual <= self.tolerance else Verdict.NOT_REGULAR
        if self.verdict is not expected:
            raise ValueError(f"verdict {self.verdict.value} contradicts the evidence")

    @property
    def regular(self) -> bool:
        return self.verdict is Verdict.REGULAR

    @property
    def max_residual(self) -> float:
        return max((r.norm for r in self.residuals), default=0.0)

    @property
    def min_residual(self) -> float:
        return min((r.norm for r in self.residuals), default=0.0)

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "method": self.method.value,
            "verdict": self.verdict.value,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual if self.residuals else None,
            "residuals": [r.to_json() for r in self.residuals],
            "symbolic_result": (
                poly_to_json(self.symbolic_result) if self.symbolic_result is not None else None
            ),
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [f"mode: {self.mode.value}", f"method: {self.method.value}", f"verdict: {self.verdict.value}"]
        if self.symbolic_result is not None:
            lines.append(f"symbolic result: {self.symbolic_result}")
        if self.residuals:
            lines.append(f"samples: {len(self.residuals)}")
            lines.append(f"max residual norm: {self.max_residual:.3e}")
            lines.append(f"min residual norm: {self.min_residual:.3e}")
            lines.append(f"tolerance: {self.tolerance:g}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)
