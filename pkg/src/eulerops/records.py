"""JSON term-record schemas for the CLI's --format json output.

A function is a list of records {x, xi, coeff}; an operator a list of
{alpha, beta, coeff} where coeff is the canonical text rendering of the
coefficient polynomial; a symbol extends the function record with momentum
exponents {x, xi, p, th, coeff}.  Records appear in canonical term order.
"""

_EXPONENTS = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_COEFF = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}

FUNCTION_SCHEMA = {
    "type": "object",
    "required": ["kind", "m", "n", "terms", "text"],
    "properties": {
        "kind": {"const": "function"},
        "m": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "text": {"type": "string"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["x", "xi", "coeff"],
                "additionalProperties": False,
                "properties": {"x": _EXPONENTS, "xi": _EXPONENTS, "coeff": _COEFF},
            },
        },
    },
}

OPERATOR_SCHEMA = {
    "type": "object",
    "required": ["kind", "m", "n", "terms", "text"],
    "properties": {
        "kind": {"const": "operator"},
        "m": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "text": {"type": "string"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["alpha", "beta", "coeff"],
                "additionalProperties": False,
                "properties": {
                    "alpha": _EXPONENTS,
                    "beta": _EXPONENTS,
                    "coeff": {"type": "string"},
                },
            },
        },
    },
}

SYMBOL_SCHEMA = {
    "type": "object",
    "required": ["kind", "m", "n", "terms", "text"],
    "properties": {
        "kind": {"const": "symbol"},
        "m": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "text": {"type": "string"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["x", "xi", "p", "th", "coeff"],
                "additionalProperties": False,
                "properties": {
                    "x": _EXPONENTS,
                    "xi": _EXPONENTS,
                    "p": _EXPONENTS,
                    "th": _EXPONENTS,
                    "coeff": _COEFF,
                },
            },
        },
    },
}


def function_object(u) -> dict:
    return {
        "kind": "function",
        "m": u.model.m,
        "n": u.model.n,
        "terms": u.to_records(),
        "text": str(u),
    }


def operator_object(op) -> dict:
    return {
        "kind": "operator",
        "m": op.model.m,
        "n": op.model.n,
        "terms": op.to_records(),
        "text": str(op),
    }


def symbol_object(s) -> dict:
    return {
        "kind": "symbol",
        "m": s.model.m,
        "n": s.model.n,
        "terms": s.to_records(),
        "text": str(s),
    }
