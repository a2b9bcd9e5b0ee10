"""Eliminate enum, not, allOf and overlapping number unions from canonical schemas.

The simplified normal form (SNF) is Top, Bottom, a single *branch* or
``{"anyOf": [branch, ...]}``.  A branch is a typed leaf without ``enum``
(booleans excepted) or, for number, array and object, a conjunction
``{"allOf": [leaf, {"not": leaf'}, ...]}`` whose negated leaves share the
leaf's type.  Plain number branches of one anyOf are pairwise disjoint.

Internally a schema is normalized into a :class:`Union`, which keeps the
branches grouped by type; intersections and complements then work type by
type instead of distributing over arbitrary anyOf trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import regex
from .budget import CapacityLimit, tick
from .canonicalizer import ALL_TYPES, canonicalize, is_canonical
from .json_model import is_number, json_equal, unique
from .ranges import (
    INF, NumericRange, intervals_overlap, range2schema, range_intersect, range_subtract,
    schema2range,
)
from .regex import EMPTY_LANG, UNIVERSAL, RegexLang
from .schema_model import BOTTOM, TOP, is_bottom

__all__ = [
    "simplify", "is_simplified", "Union", "normalize", "to_schema", "skey",
    "intersect", "union", "complement", "DEFAULT_LEAF", "expand_top", "branches_by_type",
    "split_branch", "leaf_empty",
]

DEFAULT_LEAF = {
    "null": {"type": "null"},
    "boolean": {"type": "boolean", "enum": [True, False]},
    "number": {"type": "number", "exclusiveMinimum": False, "exclusiveMaximum": False},
    "string": {"type": "string", "pattern": UNIVERSAL},
    "array": {"type": "array", "items": [], "additionalItems": TOP, "minItems": 0, "uniqueItems": False},
    "object": {"type": "object", "minProperties": 0, "patternProperties": {UNIVERSAL: TOP}},
}

_UNION_STEP_LIMIT = 100_000


def skey(s):
    """Hashable structural key; equal keys mean structurally equal schemas."""
    if isinstance(s, dict):
        return ("d", frozenset((skey(k) if isinstance(k, RegexLang) else k, skey(v))
                               for k, v in s.items()))
    if isinstance(s, list):
        return ("l", tuple(skey(x) for x in s))
    if isinstance(s, RegexLang):
        return ("re", s.key)
    if isinstance(s, bool):
        return ("b", s)
    if is_number(s):
        return ("n", Fraction(s))
    return ("v", s)


# A branch of a structured type: positive leaf plus negated leaves.
Branch = tuple  # (leaf: dict, negs: tuple[dict, ...])


@dataclass
class Union:
    null: bool = False
    boolean: frozenset = frozenset()
    string: RegexLang = EMPTY_LANG
    number: list = field(default_factory=list)   # [(NumericRange, tuple[NumericRange, ...])]
    array: list = field(default_factory=list)    # [Branch]
    object: list = field(default_factory=list)   # [Branch]

    @staticmethod
    def top() -> "Union":
        return Union(True, frozenset({True, False}), UNIVERSAL, [(NumericRange(), ())],
                     [(DEFAULT_LEAF["array"], ())], [(DEFAULT_LEAF["object"], ())])

    def is_empty(self) -> bool:
        return (not self.null and not self.boolean and self.string.is_empty()
                and not self.number and not self.array and not self.object)


# ------------------------------------------------------------ normalization

def simplify(s: dict) -> dict:
    """Simplified normal form of a canonical schema."""
    return to_schema(normalize(s))


def normalize(s: dict) -> Union:
    tick()
    if s == TOP:
        return Union.top()
    if is_bottom(s):
        return Union()
    if "anyOf" in s and len(s) == 1:
        out = Union()
        for x in s["anyOf"]:
            out = union(out, normalize(x))
        return out
    if "allOf" in s and len(s) == 1:
        parts = s["allOf"]
        # Not-not and positive parts first keeps intermediate results small.
        ordered = sorted(parts, key=lambda x: 1 if ("not" in x and len(x) == 1) else 0)
        out = None
        for x in ordered:
            if "not" in x and len(x) == 1 and out is not None and not _is_composite(x["not"]):
                out = _subtract_leaf(out, x["not"])
            else:
                u = normalize(x)
                out = u if out is None else intersect(out, u)
            if out.is_empty():
                return out
        return out if out is not None else Union.top()
    if "not" in s and len(s) == 1:
        inner = s["not"]
        if "not" in inner and len(inner) == 1:
            return normalize(inner["not"])
        return complement(normalize(inner))
    return _leaf(s)


def _is_composite(s) -> bool:
    return s == TOP or is_bottom(s) or any(k in s for k in ("anyOf", "allOf", "not"))


def _subtract_leaf(u: Union, leaf: dict) -> Union:
    """``u ∧ ¬leaf`` for a single typed leaf without building the full complement."""
    return intersect(u, complement(_leaf(leaf)))


def _leaf(s: dict) -> Union:
    t = s["type"]
    if t == "null":
        return Union(null=True)
    if t == "boolean":
        return Union(boolean=frozenset(s.get("enum", [True, False])))
    if t == "string":
        lang = s["pattern"]
        if "enum" in s:
            lits = EMPTY_LANG
            for v in s["enum"]:
                lits = lits | regex.literal(v)
            lang = lang & lits
        return Union(string=lang)
    if t == "number":
        r = schema2range(s)
        if "enum" in s:
            pts = [v for v in unique(s["enum"]) if r.contains(v)]
            return Union(number=[(NumericRange(Fraction(v), Fraction(v)), ()) for v in pts])
        return Union(number=[] if r.is_empty() else [(r, ())])
    if t == "array":
        leaf = _array_leaf(s)
        out = Union(array=[] if leaf is None else [(leaf, ())])
        if "enum" in s and leaf is not None:
            out = intersect(out, _enum_union(s["enum"], _array_enum_schema))
        return out
    if t == "object":
        leaf = _object_leaf(s)
        out = Union(object=[] if leaf is None else [(leaf, ())])
        if "enum" in s and leaf is not None:
            out = intersect(out, _enum_union(s["enum"], _object_enum_schema))
        return out
    raise ValueError(f"not a canonical leaf: {s!r}")


def _enum_union(values, make) -> Union:
    out = Union()
    for v in unique(values):
        out = union(out, normalize(canonicalize(make(v))))
    return out


def _array_enum_schema(v: list) -> dict:
    return {"type": "array", "items": [{"enum": [x]} for x in v] or {},
            "minItems": len(v), "maxItems": len(v)}


def _object_enum_schema(v: dict) -> dict:
    s = {"type": "object", "properties": {k: {"enum": [x]} for k, x in v.items()},
         "additionalProperties": False}
    if v:
        s["required"] = sorted(v)
    return s


def _array_leaf(s: dict) -> dict | None:
    items = [simplify(x) for x in s["items"]]
    add = simplify(s["additionalItems"])
    leaf = {"type": "array", "items": items, "additionalItems": add,
            "minItems": s.get("minItems", 0)}
    if "maxItems" in s:
        leaf["maxItems"] = s["maxItems"]
    leaf["uniqueItems"] = bool(s.get("uniqueItems", False))
    return None if leaf_empty(leaf) else _trim_items(leaf)


def _trim_items(leaf: dict) -> dict:
    """Drop trailing items equal to additionalItems and items past maxItems."""
    items = list(leaf["items"])
    if "maxItems" in leaf and len(items) > leaf["maxItems"]:
        items = items[:leaf["maxItems"]]
    add = skey(leaf["additionalItems"])
    while items and skey(items[-1]) == add:
        items.pop()
    if len(items) != len(leaf["items"]):
        leaf = {**leaf, "items": items}
    return leaf


def _object_leaf(s: dict) -> dict | None:
    pats = {p: simplify(x) for p, x in s["patternProperties"].items()}
    leaf = {"type": "object", "minProperties": s.get("minProperties", 0)}
    if "maxProperties" in s:
        leaf["maxProperties"] = s["maxProperties"]
    if s.get("required"):
        leaf["required"] = sorted(set(s["required"]))
    leaf["patternProperties"] = _merge_patterns(pats)
    return None if leaf_empty(leaf) else leaf


def _merge_patterns(pats: dict) -> dict:
    """Join patterns that carry structurally equal schemas."""
    groups: dict = {}
    for p, x in pats.items():
        k = skey(x)
        if k in groups:
            groups[k] = (groups[k][0] | p, x)
        else:
            groups[k] = (p, x)
    return {p: x for p, x in groups.values()}


def leaf_empty(leaf: dict) -> bool:
    """Cheap syntactic emptiness test for array/object leaves."""
    if leaf["type"] == "array":
        lo, hi = leaf["minItems"], leaf.get("maxItems")
        if hi is not None and lo > hi:
            return True
        items = leaf["items"]
        for i in range(lo):
            x = items[i] if i < len(items) else leaf["additionalItems"]
            if is_bottom(x):
                return True
        return False
    if leaf["type"] == "object":
        lo, hi = leaf["minProperties"], leaf.get("maxProperties")
        req = leaf.get("required", [])
        if hi is not None and (lo > hi or len(req) > hi):
            return True
        for k in req:
            x = key_schema(leaf, k)
            if is_bottom(x):
                return True
        return False
    return False


def key_schema(leaf: dict, key: str) -> dict:
    for p, x in leaf["patternProperties"].items():
        if p.matches(key):
            return x
    return TOP


# ----------------------------------------------------------- set algebra

def union(a: Union, b: Union) -> Union:
    return Union(
        a.null or b.null,
        a.boolean | b.boolean,
        a.string | b.string,
        _dedupe_num(a.number + b.number),
        _dedupe(a.array + b.array),
        _dedupe(a.object + b.object),
    )


def _dedupe(branches: list) -> list:
    seen, out = set(), []
    for leaf, negs in branches:
        k = (skey(leaf), frozenset(skey(n) for n in negs))
        if k not in seen:
            seen.add(k)
            out.append((leaf, negs))
    return out


def _dedupe_num(branches: list) -> list:
    seen, out = set(), []
    for r, negs in branches:
        k = (r, frozenset(negs))
        if k not in seen:
            seen.add(k)
            out.append((r, negs))
    return out


def intersect(a: Union, b: Union) -> Union:
    return Union(
        a.null and b.null,
        a.boolean & b.boolean,
        a.string & b.string if not (a.string.is_empty() or b.string.is_empty()) else EMPTY_LANG,
        _num_product(a.number, b.number),
        _struct_product(a.array, b.array, _intersect_array),
        _struct_product(a.object, b.object, _intersect_object),
    )


def _num_product(xs, ys) -> list:
    out = []
    for r1, n1 in xs:
        for r2, n2 in ys:
            tick()
            out.extend(_num_branch(range_intersect(r1, r2), n1 + n2))
    return _dedupe_num(out)


def _num_branch(r: NumericRange, negs) -> list:
    """Normalize ``r ∧ ¬negs``: drop irrelevant negations, cut out step-free ones."""
    if r.is_empty():
        return []
    pieces = [r]
    kept = []
    for n in negs:
        if not any(intervals_overlap(p, n) for p in pieces):
            continue
        if n.multiple_of is None:
            pieces = [q for p in pieces for q in range_subtract(p, n) if not q.is_empty()]
            if not pieces:
                return []
            continue
        # Every admitted value is a multiple of n's step and inside n's interval.
        if r.multiple_of is not None and (r.multiple_of / n.multiple_of).denominator == 1 \
                and all(range_subtract(p, n) == [] for p in pieces):
            return []
        if n not in kept:
            kept.append(n)
    out = []
    for p in pieces:
        rel = tuple(n for n in kept if intervals_overlap(p, n))
        out.append((p, rel))
    return out


def _struct_product(xs, ys, meet) -> list:
    out = []
    for l1, n1 in xs:
        for l2, n2 in ys:
            tick()
            leaf = meet(l1, l2)
            if leaf is not None:
                out.append((leaf, _dedupe_negs(n1 + n2)))
    return _dedupe(out)


def _dedupe_negs(negs) -> tuple:
    seen, out = set(), []
    for n in negs:
        k = skey(n)
        if k not in seen:
            seen.add(k)
            out.append(n)
    return tuple(out)


def _intersect_schema(a: dict, b: dict) -> dict:
    if a == TOP:
        return b
    if b == TOP:
        return a
    if is_bottom(a) or is_bottom(b):
        return BOTTOM
    if skey(a) == skey(b):
        return a
    return to_schema(intersect(normalize(a), normalize(b)))


def _intersect_array(a: dict, b: dict) -> dict | None:
    n = max(len(a["items"]), len(b["items"]))
    items = []
    for i in range(n):
        x = a["items"][i] if i < len(a["items"]) else a["additionalItems"]
        y = b["items"][i] if i < len(b["items"]) else b["additionalItems"]
        items.append(_intersect_schema(x, y))
    leaf = {"type": "array", "items": items,
            "additionalItems": _intersect_schema(a["additionalItems"], b["additionalItems"]),
            "minItems": max(a["minItems"], b["minItems"])}
    hi = _min_opt(a.get("maxItems"), b.get("maxItems"))
    if hi is not None:
        leaf["maxItems"] = hi
    # Both constraints apply, so uniqueness is required if either side requires it.
    leaf["uniqueItems"] = a["uniqueItems"] or b["uniqueItems"]
    return None if leaf_empty(leaf) else _trim_items(leaf)


def _intersect_object(a: dict, b: dict) -> dict | None:
    pats = {}
    for p, x in a["patternProperties"].items():
        for q, y in b["patternProperties"].items():
            if not p.overlaps(q):
                continue
            pats[p & q] = _intersect_schema(x, y)
    leaf = {"type": "object", "minProperties": max(a["minProperties"], b["minProperties"])}
    hi = _min_opt(a.get("maxProperties"), b.get("maxProperties"))
    if hi is not None:
        leaf["maxProperties"] = hi
    req = sorted(set(a.get("required", [])) | set(b.get("required", [])))
    if req:
        leaf["required"] = req
    leaf["patternProperties"] = _merge_patterns(pats)
    return None if leaf_empty(leaf) else leaf


def _min_opt(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return min(x, y)


def complement(u: Union) -> Union:
    out = Union(
        not u.null,
        frozenset({True, False}) - u.boolean,
        ~u.string,
        _num_complement(u.number),
        _struct_complement(u.array, "array", _intersect_array),
        _struct_complement(u.object, "object", _intersect_object),
    )
    return out


def _num_complement(branches) -> list:
    acc = [(NumericRange(), ())]
    for r, negs in branches:
        comp = []
        outside = [NumericRange(r.lo, r.hi, r.lo_open, r.hi_open)]
        for piece in range_subtract(NumericRange(), outside[0]):
            comp.append((piece, ()))
        inner = NumericRange(r.lo, r.hi, r.lo_open, r.hi_open)
        if r.multiple_of is not None:
            comp.append((inner, (NumericRange(multiple_of=r.multiple_of),)))
        for n in negs:
            comp.append((n, ()))
        acc = _num_product(acc, comp)
        if not acc:
            break
    return acc


def _struct_complement(branches, t: str, meet) -> list:
    acc = [(DEFAULT_LEAF[t], ())]
    for leaf, negs in branches:
        comp = [(DEFAULT_LEAF[t], (leaf,))] + [(n, ()) for n in negs]
        acc = _struct_product(acc, comp, meet)
        if not acc:
            break
    return acc


# ------------------------------------------------------------ output

def _union_numbers(branches: list) -> list:
    """Make plain number branches pairwise disjoint."""
    plain = [r for r, negs in branches if not negs]
    rest = [(r, negs) for r, negs in branches if negs]
    steps = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(plain)):
            for j in range(i + 1, len(plain)):
                r1, r2 = plain[i], plain[j]
                if not intervals_overlap(r1, r2):
                    continue
                steps += 1
                if steps > _UNION_STEP_LIMIT:
                    raise CapacityLimit("number union did not converge")
                new, extra = _split_overlap(r1, r2)
                plain = [p for k, p in enumerate(plain) if k not in (i, j)] + new
                rest.extend(extra)
                changed = True
                break
            if changed:
                break
    out = []
    seen = set()
    for r in plain:
        if not r.is_empty() and r not in seen:
            seen.add(r)
            out.append((r, ()))
    return out + _dedupe_num(rest)


def _split_overlap(r1: NumericRange, r2: NumericRange):
    """Disjoint pieces for ``r1 ∪ r2`` where the intervals overlap."""
    new = range_subtract(r1, r2) + range_subtract(r2, r1)
    both = range_intersect(NumericRange(r1.lo, r1.hi, r1.lo_open, r1.hi_open),
                           NumericRange(r2.lo, r2.hi, r2.lo_open, r2.hi_open))
    m1, m2 = r1.multiple_of, r2.multiple_of
    extra = []
    if m1 is None or m2 is None:
        new.append(both)
    elif (m2 / m1).denominator == 1:
        new.append(_with_step(both, m1))
    elif (m1 / m2).denominator == 1:
        new.append(_with_step(both, m2))
    else:
        # gcd(m1, m2) would admit values in neither set (e.g. 1 for steps 2 and 3).
        new.append(_with_step(both, m1))
        extra.append((_with_step(both, m2), (NumericRange(multiple_of=m1),)))
    return [p for p in new if not p.is_empty()], extra


def _with_step(r: NumericRange, m) -> NumericRange:
    return NumericRange(r.lo, r.hi, r.lo_open, r.hi_open, m)


def _num_leaf(r: NumericRange) -> dict:
    leaf = range2schema(r)
    if "multipleOf" in leaf and leaf["multipleOf"].denominator == 1:
        leaf["multipleOf"] = int(leaf["multipleOf"])
    for k in ("minimum", "maximum"):
        if k in leaf and isinstance(leaf[k], Fraction) and leaf[k].denominator == 1:
            leaf[k] = int(leaf[k])
    return leaf


def _is_top(u: Union) -> bool:
    return (u.null and u.boolean == {True, False} and u.string.is_universal()
            and len(u.number) == 1 and u.number[0] == (NumericRange(), ())
            and u.array == [(DEFAULT_LEAF["array"], ())]
            and len(u.object) == 1 and not u.object[0][1]
            and skey(u.object[0][0]) == skey(DEFAULT_LEAF["object"]))


def to_schema(u: Union) -> dict:
    if _is_top(u):
        return TOP
    out = []
    if u.null:
        out.append({"type": "null"})
    if u.boolean:
        out.append({"type": "boolean", "enum": [v for v in (True, False) if v in u.boolean]})
    for r, negs in _union_numbers(u.number):
        leaf = _num_leaf(r)
        out.append({"allOf": [leaf, *({"not": _num_leaf(n)} for n in negs)]} if negs else leaf)
    if not u.string.is_empty():
        out.append({"type": "string", "pattern": u.string})
    for leaf, negs in u.array + u.object:
        out.append({"allOf": [leaf, *({"not": n} for n in negs)]} if negs else leaf)
    if not out:
        return BOTTOM
    if len(out) == 1:
        return out[0]
    return {"anyOf": out}


# ------------------------------------------------------------ helpers for the checker

def expand_top(s: dict) -> dict:
    return {"anyOf": [dict(DEFAULT_LEAF[t]) for t in ALL_TYPES]} if s == TOP else s


def split_branch(b: dict) -> tuple[dict, list[dict]]:
    """``(leaf, negated_leaves)`` for an SNF branch."""
    if "allOf" in b and len(b) == 1:
        leaf, *negs = b["allOf"]
        return leaf, [n["not"] for n in negs]
    return b, []


def branches_by_type(s: dict) -> dict[str, list[dict]]:
    """Group the branches of an SNF schema by type."""
    if is_bottom(s):
        return {}
    s = expand_top(s)
    branches = s["anyOf"] if "anyOf" in s and len(s) == 1 else [s]
    out: dict[str, list[dict]] = {}
    for b in branches:
        leaf, _ = split_branch(b)
        out.setdefault(leaf["type"], []).append(b)
    return out


# ------------------------------------------------------------ checks

def is_simplified(s) -> bool:
    return is_canonical(s) and not _snf_problems(s, "")


def _snf_problems(s, path) -> list[str]:
    if not isinstance(s, dict):
        return [f"{path}: not an object"]
    if s == TOP or is_bottom(s):
        return []
    if "anyOf" in s and len(s) == 1:
        bs = s["anyOf"]
        if len(bs) < 2:
            return [f"{path}/anyOf: fewer than two branches"]
        probs = []
        for i, b in enumerate(bs):
            if b == TOP or is_bottom(b) or ("anyOf" in b and len(b) == 1):
                probs.append(f"{path}/anyOf/{i}: not a branch")
            else:
                probs += _branch_problems(b, f"{path}/anyOf/{i}")
        nums = [schema2range(b) for b in bs if b.get("type") == "number"]
        for i in range(len(nums)):
            for j in range(i + 1, len(nums)):
                if intervals_overlap(nums[i], nums[j]):
                    probs.append(f"{path}/anyOf: overlapping number branches")
        return probs
    return _branch_problems(s, path)


def _branch_problems(b, path) -> list[str]:
    if "allOf" in b and len(b) == 1:
        leaf, *negs = b["allOf"]
        t = leaf.get("type")
        if t not in ("number", "array", "object"):
            return [f"{path}/allOf: conjunction over {t}"]
        probs = _leaf_problems(leaf, f"{path}/allOf/0")
        for i, n in enumerate(negs, 1):
            if set(n) != {"not"} or n["not"].get("type") != t:
                probs.append(f"{path}/allOf/{i}: must negate a {t} leaf")
            else:
                probs += _leaf_problems(n["not"], f"{path}/allOf/{i}/not")
        return probs
    return _leaf_problems(b, path)


def _leaf_problems(leaf, path) -> list[str]:
    t = leaf.get("type")
    if t not in ALL_TYPES:
        return [f"{path}: not a typed leaf"]
    if "enum" in leaf and t != "boolean":
        return [f"{path}: enum on {t}"]
    probs = []
    if t == "array":
        for i, x in enumerate(leaf["items"]):
            probs += _snf_problems(x, f"{path}/items/{i}")
        probs += _snf_problems(leaf["additionalItems"], f"{path}/additionalItems")
    if t == "object":
        for p, x in leaf["patternProperties"].items():
            probs += _snf_problems(x, f"{path}/patternProperties/{p}")
    return probs


_ = (INF, json_equal)
