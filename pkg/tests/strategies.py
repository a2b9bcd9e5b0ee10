"""Random small draft-04 schemas and documents.

Every constant is drawn from the default enumeration universe (alphabet
``ab``, strings up to length 2, numbers -1, 0, 1/2, 1, 2, keys ``a``/``b``)
so a brute-force check over that universe is meaningful.
"""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from jsonsub.json_model import json_equal
from jsonsub.validator import UniverseBudget, enumerate_universe

NUMBERS = [-1, 0, Fraction(1, 2), 1, 2]
STEPS = [Fraction(1, 2), 1, 2]
PATTERNS = ["^a", "b$", "^[ab]$", "a*", "^(ab)?$", "^a?b?$", "a|b", "^$", "."]
KEYS = ["a", "b"]
TYPES = ["null", "boolean", "integer", "number", "string", "array", "object"]

_UNIVERSE = enumerate_universe(UniverseBudget())
_SCALARS = [v for v in _UNIVERSE if not isinstance(v, (list, dict))]


def _enum(rng: random.Random) -> list:
    out = []
    for _ in range(rng.randint(1, 3)):
        v = _value(rng)
        if not any(json_equal(v, x) for x in out):
            out.append(v)
    return out


def _value(rng: random.Random):
    if rng.random() < 0.8:
        return rng.choice(_SCALARS)
    return rng.choice(_UNIVERSE)


def _leaf(rng: random.Random, depth: int) -> dict:
    t = rng.choice(TYPES)
    s: dict = {"type": t}
    if t in ("integer", "number"):
        if rng.random() < 0.5:
            s["minimum"] = rng.choice(NUMBERS)
            if rng.random() < 0.3:
                s["exclusiveMinimum"] = True
        if rng.random() < 0.5:
            s["maximum"] = rng.choice(NUMBERS)
            if rng.random() < 0.3:
                s["exclusiveMaximum"] = True
        if rng.random() < 0.4:
            s["multipleOf"] = rng.choice(STEPS)
    elif t == "string":
        if rng.random() < 0.4:
            s["minLength"] = rng.randint(0, 2)
        if rng.random() < 0.4:
            s["maxLength"] = rng.randint(0, 2)
        if rng.random() < 0.5:
            s["pattern"] = rng.choice(PATTERNS)
    elif t == "array":
        if rng.random() < 0.4:
            s["minItems"] = rng.randint(0, 2)
        if rng.random() < 0.4:
            s["maxItems"] = rng.randint(0, 2)
        if rng.random() < 0.3:
            s["uniqueItems"] = True
        r = rng.random()
        if r < 0.35:
            s["items"] = random_schema(rng, depth + 1)
        elif r < 0.6:
            s["items"] = [random_schema(rng, depth + 1) for _ in range(rng.randint(1, 2))]
            if rng.random() < 0.5:
                s["additionalItems"] = rng.choice([False, True, random_schema(rng, depth + 1)])
    elif t == "object":
        if rng.random() < 0.4:
            s["properties"] = {k: random_schema(rng, depth + 1)
                               for k in rng.sample(KEYS, rng.randint(1, 2))}
        if rng.random() < 0.2:
            s["patternProperties"] = {rng.choice(["^a$", "b", "^[ab]$"]): random_schema(rng, depth + 1)}
        if rng.random() < 0.3:
            s["additionalProperties"] = rng.choice([False, random_schema(rng, depth + 1)])
        if rng.random() < 0.3:
            s["required"] = rng.sample(KEYS, rng.randint(1, 2))
        if rng.random() < 0.2:
            s["minProperties"] = rng.randint(0, 2)
        if rng.random() < 0.2:
            s["maxProperties"] = rng.randint(0, 2)
        if rng.random() < 0.1:
            k = rng.choice(KEYS)
            s["dependencies"] = {k: rng.choice([[x for x in KEYS if x != k],
                                                random_schema(rng, depth + 1)])}
    if rng.random() < 0.15:
        s["enum"] = _enum(rng)
    if rng.random() < 0.1:
        s["type"] = rng.sample(TYPES, rng.randint(1, 3))
    return s


def random_schema(rng: random.Random, depth: int = 0) -> dict:
    """A small random schema; nesting stops at depth 2."""
    r = rng.random()
    if depth >= 2 or r < 0.55:
        if rng.random() < 0.05:
            return {}
        if rng.random() < 0.1:
            return {"enum": _enum(rng)}
        return _leaf(rng, depth)
    kind = rng.choice(["anyOf", "allOf", "oneOf", "not", "mixed"])
    if kind == "not":
        return {"not": random_schema(rng, depth + 1)}
    if kind == "mixed":
        s = _leaf(rng, depth)
        key = rng.choice(["anyOf", "allOf", "not"])
        if key == "not":
            s["not"] = random_schema(rng, depth + 1)
        else:
            s[key] = [random_schema(rng, depth + 1) for _ in range(rng.randint(1, 2))]
        return s
    return {kind: [random_schema(rng, depth + 1) for _ in range(rng.randint(1, 3))]}


def random_document(rng: random.Random):
    return rng.choice(_UNIVERSE)


schemas = st.randoms(use_true_random=False).map(random_schema)
documents = st.sampled_from(_UNIVERSE)


def random_pattern(rng: random.Random, alphabet: str = "abc", depth: int = 0) -> str:
    """A pattern over ``alphabet`` with nesting depth at most 4."""
    if depth >= 4 or rng.random() < 0.3:
        return rng.choice([*alphabet, ".", f"[{alphabet[:2]}]", f"[^{alphabet[0]}]"])
    kind = rng.choice(["cat", "alt", "star", "plus", "opt", "count", "anchor"])
    sub = random_pattern(rng, alphabet, depth + 1)
    if kind == "cat":
        return sub + random_pattern(rng, alphabet, depth + 1)
    if kind == "alt":
        return f"(?:{sub}|{random_pattern(rng, alphabet, depth + 1)})"
    if kind == "count":
        lo = rng.randint(0, 2)
        return f"(?:{sub}){{{lo},{lo + rng.randint(0, 2)}}}"
    if kind == "anchor":
        return rng.choice(["^" + sub, sub + "$", "^" + sub + "$"]) if depth == 0 else sub
    return f"(?:{sub})" + {"star": "*", "plus": "+", "opt": "?"}[kind]


patterns = st.randoms(use_true_random=False).map(random_pattern)


SUBRANGE_STEPS = [Fraction(1, 3), Fraction(1, 2), 1, 2, 3, Fraction(1, 10)]


def random_number_schema(rng: random.Random) -> dict:
    """A number schema with bounds in [-12, 12] and a step from SUBRANGE_STEPS."""
    s: dict = {"type": "number"}
    if rng.random() < 0.6:
        s["minimum"] = Fraction(rng.randint(-24, 24), 2)
        s["exclusiveMinimum"] = rng.random() < 0.3
    if rng.random() < 0.6:
        s["maximum"] = Fraction(rng.randint(-24, 24), 2)
        s["exclusiveMaximum"] = rng.random() < 0.3
    if rng.random() < 0.8:
        s["multipleOf"] = rng.choice(SUBRANGE_STEPS)
    return s


def random_constraint_set(rng: random.Random) -> tuple[list[dict], list[dict]]:
    """Positive and negated number schemas, at least one positive."""
    pos = [random_number_schema(rng) for _ in range(rng.randint(1, 2))]
    neg = [random_number_schema(rng) for _ in range(rng.randint(0, 2))]
    return pos, neg


# Multiples of 1/60 cover every step's grid and the midpoints between them.
DENSE_GRID = [Fraction(k, 60) for k in range(-1800, 1801)]


def _large_node(rng: random.Random, depth: int) -> dict:
    r = rng.random()
    if depth > 2 or r < 0.5:
        k = rng.choice("snieba")
        if k == "s":
            return {"type": "string", "maxLength": rng.randint(5, 200),
                    "pattern": rng.choice(["^[a-z]+$", "^[A-Z0-9_-]*$", "^\\d{4}-\\d{2}-\\d{2}$", "^https?://"])}
        if k == "n":
            return {"type": "number", "minimum": 0, "maximum": rng.randint(1, 10 ** 6)}
        if k == "i":
            return {"type": "integer", "minimum": rng.randint(-5, 5)}
        if k == "e":
            return {"type": "string", "enum": [f"v{j}" for j in range(rng.randint(2, 12))]}
        if k == "b":
            return {"type": "boolean"}
        return {"type": "array", "items": {"type": "string"}, "uniqueItems": rng.random() < 0.3}
    if r < 0.8:
        props = {f"p{depth}_{j}": _large_node(rng, depth + 1) for j in range(rng.randint(3, 12))}
        return {"type": "object", "properties": props, "required": rng.sample(sorted(props), 2),
                "additionalProperties": rng.random() < 0.5}
    return {"type": "array", "items": _large_node(rng, depth + 1), "minItems": 0,
            "maxItems": rng.randint(1, 50)}


def large_schema(seed: int, size: int = 100_000) -> dict:
    """An API-style object schema whose JSON text is just over ``size`` bytes."""
    import json

    rng = random.Random(seed)
    props: dict = {}
    while len(json.dumps(props)) < size:
        props[f"f{len(props)}"] = _large_node(rng, 0)
    return {"type": "object", "properties": props, "required": list(props)[:10],
            "additionalProperties": False}
