"""Rewrite ref-free draft-04 schemas into canonical form.

Canonical schemas are one of

* ``{}`` (Top) or ``{"not": {}}`` (Bottom);
* ``{"anyOf": [...]}``, ``{"allOf": [...]}``, ``{"not": S}`` over canonical children;
* a typed leaf with exactly one ``type`` other than ``integer``:

  - ``null``: no keywords;
  - ``boolean``: ``enum`` (defaults to ``[true, false]``);
  - ``string``: ``pattern`` (a RegexLang of full matches);
  - ``number``: ``exclusiveMinimum``/``exclusiveMaximum`` flags, optional
    ``minimum``/``maximum``/``multipleOf``;
  - ``array``: ``items`` (list), ``additionalItems``, ``minItems``, optional
    ``maxItems``, ``uniqueItems``;
  - ``object``: ``minProperties``, optional ``maxProperties``/``required``,
    and ``patternProperties`` mapping pairwise disjoint RegexLangs that
    together cover every string.

Non-boolean leaves may also carry a homogeneous ``enum``.
"""

from __future__ import annotations

from fractions import Fraction

from . import regex
from .budget import ONEOF_BRANCH_LIMIT, CapacityLimit, tick
from .json_model import J_TYPES, is_integral, is_number, typeof
from .ranges import lcm
from .regex import UNIVERSAL, RegexLang
from .schema_model import BOTTOM, LOGIC, TOP, VALIDATION_KEYWORDS, is_bottom

__all__ = [
    "canonicalize", "is_canonical", "to_json", "string_pattern", "partition",
    "type_leaf", "ALL_TYPES", "allof_additional_properties",
]

# Integer is folded into number by the integer rule, so one branch suffices
# for Top expansion; ``canonicalize`` still expands missing types over all seven.
ALL_TYPES = ("null", "boolean", "number", "string", "array", "object")


def canonicalize(s: dict) -> dict:
    """Canonical form of a meta-valid, ref-free schema."""
    return _canon(s)


def _canon(s: dict) -> dict:
    tick()
    if is_bottom(s):
        return BOTTOM
    s = {k: v for k, v in s.items() if k in VALIDATION_KEYWORDS}
    if not s:
        return TOP
    logic = [c for c in LOGIC if c in s]
    if logic and len(s) > 1:
        # multiple connectives
        c = logic[0]
        rest = {k: v for k, v in s.items() if k != c}
        return {"allOf": [_canon({c: s[c]}), _canon(rest)]}
    if logic:
        c = logic[0]
        if c == "not":
            return {"not": _canon(s["not"])}
        children = [_canon(x) for x in s[c]]
        if c == "oneOf":
            return one_of(children)
        return {c: children}

    t = s.get("type")
    if isinstance(t, list):
        if len(t) == 1:
            s = {**s, "type": t[0]}
        else:
            # multiple types
            return {"anyOf": [_canon({**s, "type": x}) for x in t]}
    if "type" not in s:
        if "enum" in s:
            return _heterogeneous_enum(s)
        # missing type
        return {"anyOf": [_canon({**s, "type": x}) for x in J_TYPES]}
    return type_leaf(s)


def one_of(children: list[dict]) -> dict:
    """Exclusive-or as a disjunction of conjunctions with negated siblings."""
    if len(children) > ONEOF_BRANCH_LIMIT:
        raise CapacityLimit(f"oneOf with {len(children)} branches exceeds limit {ONEOF_BRANCH_LIMIT}")
    if len(children) == 1:
        return {"anyOf": children}
    branches = []
    for i, ci in enumerate(children):
        negs = [{"not": cj} for j, cj in enumerate(children) if j != i]
        branches.append({"allOf": [ci, *negs]})
    return {"anyOf": branches}


def _heterogeneous_enum(s: dict) -> dict:
    groups: dict[str, list] = {}
    for v in s["enum"]:
        groups.setdefault(typeof(v, integers=True), []).append(v)
    if len(groups) == 1:
        (t, vals), = groups.items()
        return type_leaf({**s, "type": t, "enum": vals})
    return {"anyOf": [type_leaf({**s, "type": t, "enum": vals}) for t, vals in groups.items()]}


def _enum_fits(v, t: str) -> bool:
    if t == "integer":
        return is_integral(v)
    if t == "number":
        return is_number(v)
    return typeof(v) == t


def string_pattern(s: dict) -> RegexLang:
    """Language of a string schema: pattern intersected with the length window."""
    p = s.get("pattern")
    lang = p if isinstance(p, RegexLang) else regex.compile(p) if p is not None else UNIVERSAL
    lo, hi = int(s.get("minLength", 0)), s.get("maxLength")
    if lo or hi is not None:
        lang = lang & regex.length_range(lo, None if hi is None else int(hi))
    return lang


def type_leaf(s: dict) -> dict:
    """Canonicalize a schema carrying a single ``type`` and no logic connective."""
    t = s["type"]
    leaf: dict
    enum = None
    if "enum" in s:
        enum = [v for v in s["enum"] if _enum_fits(v, t)]
        if not enum:
            return BOTTOM
    if t == "null":
        leaf = {"type": "null"}
    elif t == "boolean":
        leaf = {"type": "boolean", "enum": enum if enum is not None else [True, False]}
        return leaf
    elif t == "string":
        leaf = {"type": "string", "pattern": string_pattern(s)}
    elif t in ("number", "integer"):
        leaf = _number_leaf(s, t == "integer")
    elif t == "array":
        leaf = _array_leaf(s)
    elif t == "object":
        if s.get("dependencies"):
            return _dependencies(s)
        leaf = _object_leaf(s)
    else:
        raise ValueError(f"unknown type {t!r}")
    if enum is not None:
        leaf["enum"] = enum
    return leaf


def _number_leaf(s: dict, integer: bool) -> dict:
    leaf: dict = {"type": "number"}
    if "minimum" in s:
        leaf["minimum"] = s["minimum"]
    if "maximum" in s:
        leaf["maximum"] = s["maximum"]
    leaf["exclusiveMinimum"] = bool(s.get("exclusiveMinimum", False)) and "minimum" in s
    leaf["exclusiveMaximum"] = bool(s.get("exclusiveMaximum", False)) and "maximum" in s
    m = s.get("multipleOf")
    m = Fraction(m) if m is not None else None
    if integer:
        m = lcm(Fraction(1), m)
    if m is not None:
        leaf["multipleOf"] = m if m.denominator != 1 else int(m)
    return leaf


def _sub(x) -> dict:
    if x is True:
        return TOP
    if x is False:
        return BOTTOM
    return _canon(x)


def _array_leaf(s: dict) -> dict:
    items = s.get("items", {})
    if isinstance(items, dict):
        # array with one schema for all items
        items_c, add = [], _sub(items)
    else:
        items_c, add = [_canon(x) for x in items], _sub(s.get("additionalItems", True))
    leaf = {"type": "array", "items": items_c, "additionalItems": add,
            "minItems": int(s.get("minItems", 0))}
    if "maxItems" in s:
        leaf["maxItems"] = int(s["maxItems"])
    leaf["uniqueItems"] = bool(s.get("uniqueItems", False))
    return leaf


def _dependencies(s: dict) -> dict:
    rest = {k: v for k, v in s.items() if k != "dependencies"}
    parts = [rest]
    for k, dep in s["dependencies"].items():
        if isinstance(dep, list):
            # string list dependencies become schema dependencies
            dep = {"type": "object", "required": list(dep)}
        absent = {"type": "object", "properties": {k: {"not": {}}}}
        parts.append({"anyOf": [dep, absent]})
    return _canon({"allOf": parts})


def _pattern_key(p) -> RegexLang:
    return p if isinstance(p, RegexLang) else regex.compile(p)


def _object_leaf(s: dict) -> dict:
    props = s.get("properties", {})
    pats = [(_pattern_key(p), _sub(x)) for p, x in s.get("patternProperties", {}).items()]
    add = _sub(s.get("additionalProperties", True))
    entries: list[tuple[RegexLang, dict]] = []
    names = list(props)
    for k in names:
        # Draft-04 applies matching patternProperties to named keys as well.
        extra = [x for p, x in pats if p.matches(k)]
        sk = _canon(props[k])
        entries.append((regex.literal(k), {"allOf": [sk, *extra]} if extra else sk))
    keys = None
    for k in names:
        lit = regex.literal(k)
        keys = lit if keys is None else keys | lit
    covered = keys
    for p, x in pats:
        rest = p - keys if keys is not None else p
        if not rest.is_empty():
            entries.append((rest, x))
        covered = p if covered is None else covered | p
    fallback = ~covered if covered is not None else UNIVERSAL
    if not fallback.is_empty():
        entries.append((fallback, add))
    leaf = {"type": "object", "minProperties": int(s.get("minProperties", 0))}
    if "maxProperties" in s:
        leaf["maxProperties"] = int(s["maxProperties"])
    if s.get("required"):
        leaf["required"] = sorted(set(s["required"]))
    leaf["patternProperties"] = partition(entries)
    return leaf


def partition(entries: list[tuple[RegexLang, dict]]) -> dict:
    """Split overlapping patterns into pairwise disjoint pieces.

    A key matching several input patterns gets the conjunction of their schemas.
    """
    out: list[tuple[RegexLang, dict]] = []
    for p, s in entries:
        tick()
        nxt = []
        for q, t in out:
            if p.is_empty() or not p.overlaps(q):
                nxt.append((q, t))
                continue
            both = p & q
            nxt.append((both, _conj(t, s)))
            only_q = q - p
            if not only_q.is_empty():
                nxt.append((only_q, t))
            p = p - q
        if not p.is_empty():
            nxt.append((p, s))
        out = nxt
    result: dict = {}
    for p, s in out:
        result[p] = _conj(result[p], s) if p in result else s
    return result


def _conj(a: dict, b: dict) -> dict:
    if a == TOP:
        return b
    if b == TOP:
        return a
    return {"allOf": [a, b]}


# ---------------------------------------------------------------- checks

def is_canonical(s) -> bool:
    """Structural check of the canonical grammar."""
    return not _canonical_problems(s, "")


def _canonical_problems(s, path) -> list[str]:
    if not isinstance(s, dict):
        return [f"{path}: not an object"]
    if s == TOP or is_bottom(s):
        return []
    if len(s) == 1 and next(iter(s)) in ("anyOf", "allOf"):
        (k, v), = s.items()
        if not isinstance(v, list) or not v:
            return [f"{path}/{k}: must be a non-empty list"]
        return [p for i, x in enumerate(v) for p in _canonical_problems(x, f"{path}/{k}/{i}")]
    if len(s) == 1 and "not" in s:
        return _canonical_problems(s["not"], f"{path}/not")
    t = s.get("type")
    if t not in ALL_TYPES:
        return [f"{path}: bad or missing type {t!r}"]
    allowed = {"type", "enum"} | {
        "null": set(), "boolean": set(), "string": {"pattern"},
        "number": {"minimum", "maximum", "exclusiveMinimum", "exclusiveMaximum", "multipleOf"},
        "array": {"items", "additionalItems", "minItems", "maxItems", "uniqueItems"},
        "object": {"minProperties", "maxProperties", "required", "patternProperties"},
    }[t]
    problems = [f"{path}/{k}: keyword not allowed for {t}" for k in s if k not in allowed]
    if "enum" in s and any(typeof(v) != t for v in s["enum"]):
        problems.append(f"{path}/enum: heterogeneous")
    if t == "boolean" and "enum" not in s:
        problems.append(f"{path}: boolean without enum")
    if t == "string" and not isinstance(s.get("pattern"), RegexLang):
        problems.append(f"{path}/pattern: must be a compiled language")
    if t == "number" and ("exclusiveMinimum" not in s or "exclusiveMaximum" not in s):
        problems.append(f"{path}: exclusivity flags missing")
    if t == "array":
        if not isinstance(s.get("items"), list) or not isinstance(s.get("additionalItems"), dict):
            problems.append(f"{path}: items must be a list and additionalItems a schema")
        else:
            for i, x in enumerate(s["items"]):
                problems += _canonical_problems(x, f"{path}/items/{i}")
            problems += _canonical_problems(s["additionalItems"], f"{path}/additionalItems")
        for k in ("minItems", "uniqueItems"):
            if k not in s:
                problems.append(f"{path}: {k} missing")
    if t == "object":
        pp = s.get("patternProperties")
        if not isinstance(pp, dict) or "minProperties" not in s:
            problems.append(f"{path}: patternProperties/minProperties missing")
        else:
            langs = list(pp)
            if not all(isinstance(p, RegexLang) for p in langs):
                problems.append(f"{path}/patternProperties: keys must be compiled languages")
            else:
                for i in range(len(langs)):
                    for j in range(i + 1, len(langs)):
                        if langs[i].overlaps(langs[j]):
                            problems.append(f"{path}/patternProperties: overlapping patterns")
                covered = None
                for p in langs:
                    covered = p if covered is None else covered | p
                if covered is None or not covered.is_universal():
                    problems.append(f"{path}/patternProperties: patterns do not cover all keys")
            for p, x in pp.items():
                problems += _canonical_problems(x, f"{path}/patternProperties/{p}")
    return problems


# ------------------------------------------------------------ serialization

def to_json(s):
    """Plain JSON view of a canonical or simplified schema (patterns as strings)."""
    if isinstance(s, RegexLang):
        return s.to_regex()
    if isinstance(s, dict):
        out = {}
        for k, v in s.items():
            key = k.to_regex() if isinstance(k, RegexLang) else k
            if k == "patternProperties":
                out[key] = {p.to_regex() if isinstance(p, RegexLang) else p: to_json(x)
                            for p, x in v.items()}
            else:
                out[key] = to_json(v)
        if out.get("type") == "number":
            if not out.get("exclusiveMinimum") or "minimum" not in out:
                out.pop("exclusiveMinimum", None)
            if not out.get("exclusiveMaximum") or "maximum" not in out:
                out.pop("exclusiveMaximum", None)
        return out
    if isinstance(s, list):
        return [to_json(x) for x in s]
    return s



# ------------------------------------------------------------ divergence class

def allof_additional_properties(s) -> bool:
    """Does an ``allOf`` conjunct (or a sibling of a connective) use ``additionalProperties``?

    draft-04 evaluates ``additionalProperties`` against the ``properties`` of
    its own schema object only, so such schemas are where merging conjuncts
    goes wrong.  Test harnesses report them as a class of their own.
    """
    return _aap(s, False)


def _aap(s, in_conj: bool) -> bool:
    if not isinstance(s, dict):
        return False
    if in_conj and "additionalProperties" in s:
        return True
    conj = "allOf" in s or (any(k in s for k in LOGIC) and len(s) > 1)
    if conj and "additionalProperties" in s:
        return True
    for k, v in s.items():
        if k in ("enum", "required", "type"):
            continue
        if k == "allOf":
            if any(_aap(x, True) for x in v):
                return True
        elif isinstance(v, dict):
            subs = v.values() if k in ("properties", "patternProperties", "dependencies") else [v]
            if any(_aap(x, conj and k in LOGIC) for x in subs):
                return True
        elif isinstance(v, list):
            if any(_aap(x, conj and k in LOGIC) for x in v):
                return True
    return False
