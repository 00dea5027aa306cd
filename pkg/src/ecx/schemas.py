"""JSON Schemas (draft 2020-12) for every document ecx reads or writes."""

_INT = {"type": "integer"}
_INT_LIST = {"type": "array", "items": _INT}

FIELD = {
    "oneOf": [
        {"type": "object", "properties": {"p": _INT}, "required": ["p"], "additionalProperties": False},
        {
            "type": "object",
            "properties": {"p": _INT, "n": {"type": "integer", "minimum": 1}, "modulus": _INT_LIST},
            "required": ["p", "n", "modulus"],
            "additionalProperties": False,
        },
    ]
}

ELEMENT = {"oneOf": [_INT, _INT_LIST]}

CURVE = {
    "type": "object",
    "properties": {"field": FIELD, "a": ELEMENT, "b": ELEMENT},
    "required": ["field", "a", "b"],
    "additionalProperties": False,
}

POINT = {
    "oneOf": [
        {"const": "infinity"},
        {
            "type": "object",
            "properties": {"x": ELEMENT, "y": ELEMENT},
            "required": ["x", "y"],
            "additionalProperties": False,
        },
    ]
}

RATIONAL = {
    "type": "object",
    "properties": {"num": _INT, "den": {"type": "integer", "minimum": 1}, "float": {"type": "number"}},
    "required": ["num", "den", "float"],
}

BITSTRING = {
    "type": "object",
    "properties": {"value": _INT, "bits": {"type": "string", "pattern": "^[01]*$"}, "k": _INT},
    "required": ["value", "bits", "k"],
}

OUTPUT = {"oneOf": [BITSTRING, _INT_LIST]}

BOUND = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "value": {"type": "number"},
        "up_to_constant": {"type": "boolean"},
        "variants": {"type": "object", "additionalProperties": {"type": "number"}},
    },
    "required": ["name", "value", "up_to_constant"],
}

AUDIT_REPORT = {
    "type": "object",
    "properties": {
        "configuration": {
            "type": "object",
            "properties": {
                "curve": CURVE,
                "extractor": {"enum": ["ext1", "ext2", "L_k", "D_k"]},
                "k": _INT,
                "e": _INT,
                "generator1": POINT,
                "generator2": {"oneOf": [POINT, {"type": "null"}]},
                "r": _INT,
                "t": {"oneOf": [_INT, {"type": "null"}]},
                "same_subgroup": {"type": "boolean"},
            },
            "required": ["curve", "extractor", "k", "e", "generator1", "r"],
        },
        "total": _INT,
        "excluded": _INT,
        "excluded_mass": RATIONAL,
        "space_size": _INT,
        "counts": {"type": "array", "items": {"type": "array", "prefixItems": [ELEMENT, _INT]}},
        "delta": RATIONAL,
        "col": RATIONAL,
        "min_entropy": {"type": "number"},
        "collision_lemma": {
            "type": "object",
            "properties": {"col": RATIONAL, "rhs": RATIONAL, "delta": RATIONAL},
            "required": ["col", "rhs", "delta"],
        },
        "bounds": {"type": "object", "additionalProperties": BOUND},
        "kmax": {"type": "object", "additionalProperties": _INT},
        "feasible": {"type": "boolean"},
        "lemma_checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "ok": {"type": "boolean"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["configuration", "total", "excluded", "excluded_mass", "space_size", "delta",
                 "col", "min_entropy", "bounds", "kmax", "feasible", "lemma_checks", "ok"],
}

DH_TRANSCRIPT = {
    "type": "object",
    "properties": {
        "curve": CURVE,
        "mode": {"enum": ["single", "two_source"]},
        "extractor": {"enum": ["ext1", "ext2", "L_k", "D_k"]},
        "k": _INT,
        "exchanges": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"generator": POINT, "order": _INT, "alice_public": POINT, "bob_public": POINT},
                "required": ["generator", "order", "alice_public", "bob_public"],
                "additionalProperties": False,
            },
        },
        "alice_key": OUTPUT,
        "bob_key": OUTPUT,
        "keys_match": {"type": "boolean"},
        "seed": _INT,
    },
    "required": ["curve", "mode", "extractor", "k", "exchanges", "alice_key", "bob_key", "keys_match"],
}

PRNG_OUTPUT = {
    "type": "object",
    "properties": {
        "label": {"type": "string"},
        "extractor": {"enum": ["ext1", "ext2"]},
        "k": _INT,
        "count": _INT,
        "outputs": {"type": "array", "items": OUTPUT},
        "bits": {"type": "string", "pattern": "^[01]*$"},
        "skipped": _INT,
        "final_state": {
            "type": "object",
            "properties": {"s": _INT, "t": _INT, "step": _INT},
            "required": ["s", "t", "step"],
        },
    },
    "required": ["label", "extractor", "k", "count", "outputs", "bits", "skipped", "final_state"],
}

BOUNDS_OUTPUT = {
    "type": "object",
    "properties": {
        "mode": {"enum": ["ext1", "ext2", "L_k", "D_k"]},
        "e": _INT,
        "formula": {"type": "string"},
        "kmax": _INT,
        "verdict": {"enum": ["feasible", "infeasible"]},
        "k": _INT,
        "k_ok": {"type": "boolean"},
        "bounds": {"type": "array", "items": BOUND},
    },
    "required": ["mode", "e", "formula", "kmax", "verdict", "bounds"],
}

CURVE_INFO = {
    "type": "object",
    "properties": {
        "curve": CURVE,
        "field": {"type": "string"},
        "field_order": _INT,
        "nonsingular": {"type": "boolean"},
        "points": _INT,
        "hasse_interval": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "hasse_ok": {"type": "boolean"},
        "subgroup_orders": _INT_LIST,
    },
    "required": ["curve", "points", "hasse_interval", "hasse_ok", "subgroup_orders"],
}
