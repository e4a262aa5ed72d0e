"""JSON Schemas (draft 2020-12) for everything the CLI emits."""

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
SCALAR = {"oneOf": [RATIONAL, {"type": "number"}]}

QUATERNION = {
    "type": "object",
    "properties": {k: SCALAR for k in "wxyz"},
    "required": list("wxyz"),
    "additionalProperties": False,
}

POLY = {
    "type": "object",
    "properties": {
        "rendered": {"type": "string"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "exponents": {
                        "type": "array",
                        "items": {"type": "integer", "minimum": 0},
                        "minItems": 4,
                        "maxItems": 4,
                    },
                    "coefficient": QUATERNION,
                },
                "required": ["exponents", "coefficient"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["rendered", "terms"],
    "additionalProperties": False,
}

SLICE = {
    "type": "object",
    "properties": {k: {"type": "number"} for k in ("x1", "x2", "x3")},
    "required": ["x1", "x2", "x3"],
    "additionalProperties": False,
}

REGULARITY_REPORT = {
    "type": "object",
    "properties": {
        "mode": {"enum": ["FueterLeft", "FueterRight", "SliceRegular"]},
        "method": {"enum": ["Symbolic", "Numeric"]},
        "verdict": {"enum": ["Regular", "NotRegular"]},
        "tolerance": {"type": ["number", "null"]},
        "max_residual": {"type": ["number", "null"]},
        "residuals": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "point": QUATERNION,
                    "residual": QUATERNION,
                    "norm": {"type": "number", "minimum": 0},
                    "slice": SLICE,
                },
                "required": ["point", "norm"],
                "additionalProperties": False,
            },
        },
        "symbolic_result": {"oneOf": [POLY, {"type": "null"}]},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["mode", "method", "verdict", "residuals", "symbolic_result"],
    "additionalProperties": False,
}

STEP = {
    "type": "object",
    "properties": {
        "expression": {"type": "string"},
        "rewritten": {"type": "string"},
        "justification": {"type": "string"},
    },
    "required": ["expression", "rewritten", "justification"],
    "additionalProperties": False,
}

CONTRADICTION_REPORT = {
    "type": "object",
    "properties": {
        "case": {"type": "string"},
        "verdict": {"enum": ["LinearDependence", "ZeroDivisor", "NoRealSolution", "Consistent"]},
        "conclusion": {"type": "string"},
        "derivation": {"type": "array", "items": STEP, "minItems": 1},
        "equations": {"type": "array", "items": {"type": "string"}},
        "witness": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
    },
    "required": ["case", "verdict", "conclusion", "derivation"],
    "additionalProperties": False,
}

STRUCTURE_TABLE = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "string"}},
        "table": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        },
        "name": {"type": "string"},
    },
    "required": ["dim", "basis", "table"],
}

DIVISION_CHECK = {
    "type": "object",
    "properties": {
        "table": {"type": "string"},
        "result": {"enum": ["Certified", "ZeroDivisorWitness"]},
        "trials": {"type": "integer", "minimum": 0},
        "scanned": {"type": "integer", "minimum": 0},
        "witness": {
            "oneOf": [
                {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
                {"type": "null"},
            ]
        },
    },
    "required": ["table", "result", "trials", "scanned", "witness"],
    "additionalProperties": False,
}

EVAL_OUTPUT = {
    "type": "object",
    "properties": {
        "expr": {"type": "string"},
        "mode": {"enum": ["exact", "float"]},
        "point": QUATERNION,
        "value": QUATERNION,
        "rendered": {"type": "string"},
    },
    "required": ["expr", "mode", "point", "value", "rendered"],
    "additionalProperties": False,
}

TABLE_OUTPUT = {
    "type": "object",
    "properties": {
        "basis": {"type": "array", "items": {"type": "string"}, "minItems": 4, "maxItems": 4},
        "table": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 4, "maxItems": 4},
            "minItems": 4,
            "maxItems": 4,
        },
    },
    "required": ["basis", "table"],
    "additionalProperties": False,
}

STRUCTURE_OUTPUT = {
    "type": "object",
    "properties": {
        "selector": {"type": "string"},
        "reports": {"type": "array", "items": CONTRADICTION_REPORT},
        "division_checks": {"type": "array", "items": DIVISION_CHECK},
        "tables": {"type": "array", "items": STRUCTURE_TABLE},
    },
    "required": ["selector", "reports", "division_checks"],
    "additionalProperties": False,
}

SERIES_OUTPUT = {
    "type": "object",
    "properties": {
        "point": QUATERNION,
        "terms": {"type": "integer", "minimum": 0},
        "value": QUATERNION,
        "rendered": {"type": "string"},
        "truncation_bound": {"type": ["number", "null"]},
        "divergent": {"type": "boolean"},
        "radius_estimate": {"type": ["number", "null"]},
        "within_tolerance": {"type": "boolean"},
    },
    "required": ["point", "terms", "value", "truncation_bound", "divergent", "radius_estimate"],
    "additionalProperties": False,
}

SCHEMAS = {
    "quaternion": QUATERNION,
    "poly": POLY,
    "regularity_report": REGULARITY_REPORT,
    "contradiction_report": CONTRADICTION_REPORT,
    "structure_table": STRUCTURE_TABLE,
    "division_check": DIVISION_CHECK,
    "eval": EVAL_OUTPUT,
    "table": TABLE_OUTPUT,
    "structure": STRUCTURE_OUTPUT,
    "series": SERIES_OUTPUT,
}
