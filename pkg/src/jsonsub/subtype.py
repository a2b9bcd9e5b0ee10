"""Subschema checking over simplified canonical schemas.

Schemas are split by type and compared type by type.  null, boolean,
string and number are decided exactly.  Arrays and objects are compared
leaf against leaf with the structural rules (size bounds, per-position or
per-pattern recursion, uniqueItems, required); negated leaves are turned into
finite unions of plain leaves whenever that is possible.

A negative answer is only given after a concrete document has been found
that lies in the left schema and outside the right one.  The document itself
is kept internal; callers see the rule and path that failed.  When neither a
proof nor such a document is found the verdict is Undecidable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import regex
from .budget import CapacityLimit, tick, time_budget as _time_budget
from .canonicalizer import ALL_TYPES, canonicalize
from .json_model import freeze, is_number, json_equal, normalize as normalize_json
from .ranges import (
    INF, Conj, NumberConstraintSet, NumericRange, candidate_points, number_subset, schema2range,
    subtype_number as _subtype_number_sets,
)
from .regex import RegexLang
from .regex.parser import UnsupportedPattern
from .schema_model import (
    BOTTOM, TOP, DocumentStore, InvalidSchema, RecursiveRef, is_bottom, resolve_refs, validate_meta,
)
from .simplifier import (
    DEFAULT_LEAF, _intersect_array, _intersect_object, branches_by_type, complement, intersect,
    key_schema, normalize, simplify, skey, split_branch, to_schema,
)

__all__ = [
    "Verdict", "Holds", "DoesNotHold", "Undecidable", "HOLDS", "TAGS",
    "is_subschema", "is_equivalent", "check", "prepare", "inhabited", "member",
    "subtype_null", "subtype_boolean", "subtype_string", "subtype_number", "subtype_array",
    "subtype_object", "subtype_anyof", "allDisjointItems", "nonOverlapping",
    "NumberConstraintSet", "Undetermined",
]

TAGS = ("RecursiveRef", "NegatedObject", "NegatedArray", "NonRegularPattern", "CapacityLimit",
        "OverlappingUnion", "Incomplete")

_EXAMPLES = 6         # documents sampled per schema when building witnesses
_EXPAND_LIMIT = 32    # largest finite key set / index range a negation is unfolded over
_PIECE_LIMIT = 256    # largest union a left branch is split into


# ------------------------------------------------------------------ verdicts

class Verdict:
    kind = ""

    def __bool__(self) -> bool:
        return self.kind == "Holds"

    def to_json(self) -> dict:
        return {"verdict": self.kind}


@dataclass(frozen=True)
class Holds(Verdict):
    kind = "Holds"

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class DoesNotHold(Verdict):
    rule: str
    path: str = ""
    witness: object = field(default=None, compare=False, repr=False)

    kind = "DoesNotHold"

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"verdict": self.kind, "rule": self.rule, "path": self.path or "/"}


@dataclass(frozen=True)
class Undecidable(Verdict):
    tag: str
    detail: str = ""

    kind = "Undecidable"

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"verdict": self.kind, "tag": self.tag, "detail": self.detail}


HOLDS = Holds()


class Undetermined(Exception):
    """Emptiness of a schema with surviving negated arrays/objects could not be settled."""


def _first(verdicts) -> Verdict:
    """DoesNotHold beats Undecidable beats Holds; evaluation stops at the first DoesNotHold."""
    pending = None
    for v in verdicts:
        if isinstance(v, DoesNotHold):
            return v
        if isinstance(v, Undecidable) and pending is None:
            pending = v
    return pending or HOLDS


# ------------------------------------------------------------------ membership

def member(d, s: dict) -> bool:
    """Is ``d`` valid against the simplified (or canonical) schema ``s``?"""
    tick()
    if s == TOP:
        return True
    if is_bottom(s):
        return False
    if "anyOf" in s and len(s) == 1:
        return any(member(d, x) for x in s["anyOf"])
    if "allOf" in s and len(s) == 1:
        return all(member(d, x) for x in s["allOf"])
    if "not" in s and len(s) == 1:
        return not member(d, s["not"])
    t = s["type"]
    if "enum" in s and not any(json_equal(d, v) for v in s["enum"]):
        return False
    if t == "null":
        return d is None
    if t == "boolean":
        return isinstance(d, bool)
    if t == "number":
        return is_number(d) and schema2range(s).contains(d)
    if t == "string":
        return isinstance(d, str) and s["pattern"].matches(d)
    if t == "array":
        return isinstance(d, list) and _array_member(d, s)
    if t == "object":
        return isinstance(d, dict) and _object_member(d, s)
    return False


def _position(leaf: dict, i: int) -> dict:
    items = leaf["items"]
    return items[i] if i < len(items) else leaf["additionalItems"]


def _array_member(d: list, s: dict) -> bool:
    if len(d) < s.get("minItems", 0) or ("maxItems" in s and len(d) > s["maxItems"]):
        return False
    if s.get("uniqueItems") and any(json_equal(a, b) for a, b in itertools.combinations(d, 2)):
        return False
    return all(member(x, _position(s, i)) for i, x in enumerate(d))


def _object_member(d: dict, s: dict) -> bool:
    if len(d) < s.get("minProperties", 0) or ("maxProperties" in s and len(d) > s["maxProperties"]):
        return False
    if any(k not in d for k in s.get("required", [])):
        return False
    return all(member(v, key_schema(s, k)) for k, v in d.items())


# ------------------------------------------------------------------ the checker

def _neg(s: dict) -> dict:
    return to_schema(complement(normalize(s)))


def _meet(a: dict, b: dict) -> dict:
    if a == TOP:
        return b
    if b == TOP:
        return a
    return to_schema(intersect(normalize(a), normalize(b)))


def _meet_leaf(t: str, a: dict, b: dict) -> dict | None:
    return _intersect_array(a, b) if t == "array" else _intersect_object(a, b)


def _min_size(leaf: dict) -> int:
    return max(leaf.get("minProperties", 0), len(leaf.get("required", [])))


def _maybe(x) -> bool:
    return x is not False


class Checker:
    """One query's worth of memo tables; not shared between threads."""

    def __init__(self):
        self._sub: dict = {}
        self._inh: dict = {}
        self._ex: dict = {}

    # -------------------------------------------------------------- sub

    def sub(self, left: dict, right: dict, path: str = "") -> Verdict:
        tick()
        if is_bottom(left) or right == TOP:
            return HOLDS
        key = (skey(left), skey(right))
        if key[0] == key[1]:
            return HOLDS
        if key in self._sub:
            v = self._sub[key]
            return v if not isinstance(v, DoesNotHold) or not path else \
                DoesNotHold(v.rule, path + v.path, v.witness)
        v = self._sub_uncached(left, right)
        self._sub[key] = v
        if isinstance(v, DoesNotHold) and path:
            return DoesNotHold(v.rule, path + v.path, v.witness)
        return v

    def _sub_uncached(self, left, right) -> Verdict:
        gl, gr = branches_by_type(left), branches_by_type(right)
        out = []
        for t in ALL_TYPES:
            if t not in gl:
                continue
            v = self.sub_type(t, gl[t], gr.get(t, []))
            if isinstance(v, DoesNotHold):
                return v
            out.append(v)
        return _first(out)

    def sub_type(self, t: str, lbs: list, rbs: list) -> Verdict:
        if t == "null":
            return HOLDS if rbs else DoesNotHold("type", "", None)
        if t == "boolean":
            have = {v for b in rbs for v in b["enum"]}
            extra = [v for b in lbs for v in b["enum"] if v not in have]
            return DoesNotHold("boolean", "/enum", extra[0]) if extra else HOLDS
        if t == "string":
            lang = regex.EMPTY_LANG
            for b in rbs:
                lang = lang | b["pattern"]
            for b in lbs:
                diff = b["pattern"] - lang
                if not diff.is_empty():
                    return DoesNotHold("string" if rbs else "type", "/pattern" if rbs else "",
                                       diff.shortest())
            return HOLDS
        if t == "number":
            return self._sub_number(lbs, rbs)
        return _first(self._sub_struct(t, b, rbs) for b in lbs)

    # -------------------------------------------------------------- numbers

    @staticmethod
    def _conj(b: dict) -> Conj:
        leaf, negs = split_branch(b)
        return Conj(schema2range(leaf), tuple(schema2range(n) for n in negs))

    def _sub_number(self, lbs, rbs) -> Verdict:
        left = [self._conj(b) for b in lbs]
        right = [self._conj(b) for b in rbs]
        try:
            holds, witness = number_subset(left, right)
        except CapacityLimit as exc:
            if len(left) == 1 and len(right) == 1:
                lhs = NumberConstraintSet([left[0].pos], list(left[0].negs))
                rhs = NumberConstraintSet([right[0].pos], list(right[0].negs))
                try:
                    if _subtype_number_sets(lhs, rhs):
                        return HOLDS
                except CapacityLimit:
                    pass
            return Undecidable("CapacityLimit", str(exc))
        if holds:
            return HOLDS
        return DoesNotHold("number" if rbs else "type", "", witness)

    # -------------------------------------------------------------- arrays and objects

    def _sub_struct(self, t: str, b: dict, rbs: list) -> Verdict:
        leaf, negs = split_branch(b)
        rights = [split_branch(r) for r in rbs]
        pieces = self.expand(t, leaf, negs)
        out = []
        for piece in pieces:
            v = self._piece_sub(t, piece, rights)
            if isinstance(v, Undecidable):
                # The split may be too coarse; look for a witness in the whole branch.
                w = self._search(t, (leaf, negs), rights)
                if w is not None:
                    return w
            if isinstance(v, DoesNotHold):
                return v
            out.append(v)
        return _first(out)

    def _piece_sub(self, t, piece, rights) -> Verdict:
        leaf, negs = piece
        inh = self.inhabited_branch(t, leaf, negs)
        if inh is False:
            return HOLDS
        if not rights:
            w = self._search(t, piece, rights)
            return w or self._undecided(t, piece, rights)
        failures = []
        for q in rights:
            v = self._branch_sub(t, piece, q)
            if isinstance(v, Holds):
                return HOLDS
            failures.append(v)
        if len(rights) > 1:
            v = self._split_right(t, piece, rights)
            if isinstance(v, Holds):
                return v
            failures.append(v)
        for v in failures:
            if isinstance(v, DoesNotHold) and self._is_counterexample(v.witness, piece, rights):
                return v
        w = self._search(t, piece, rights)
        return w or self._undecided(t, piece, rights)

    def _split_right(self, t, piece, rights) -> Verdict:
        """``P ⊆ R1 ∪ rest`` iff ``P ∧ ¬R1 ⊆ rest`` when ``¬R1`` unfolds into plain leaves."""
        (q, m), rest = rights[0], rights[1:]
        leaf, negs = piece
        comp = self.exact_complement(t, q, leaf)
        if comp is None:
            return Undecidable("OverlappingUnion", "union branches overlap")
        parts = []
        for x in comp + list(m):
            y = _meet_leaf(t, leaf, x)
            if y is not None:
                parts.extend(self.expand(t, y, negs))
        if len(parts) > _PIECE_LIMIT:
            return Undecidable("OverlappingUnion", "too many cases")
        return _first(self._piece_sub(t, p, rest) for p in parts)

    def _branch_sub(self, t, piece, right) -> Verdict:
        """``P ∧ ¬N ⊆ Q ∧ ¬M`` iff ``P ∧ ¬N ⊆ Q`` and every ``P ∧ ¬N ∧ m`` is empty."""
        leaf, negs = piece
        q, ms = right
        v = self.leaf_sub(t, leaf, q)
        if isinstance(v, DoesNotHold):
            if v.witness is not None and not any(member(v.witness, n) for n in negs):
                return v
            v = Undecidable("Negated" + t.capitalize(), "left negation hides the witness") if negs else v
        if not isinstance(v, Holds):
            return v
        for m in ms:
            both = _meet_leaf(t, leaf, m)
            if both is None:
                continue
            inh = self.inhabited_branch(t, both, negs)
            if inh is False:
                continue
            for d in self.examples_branch(t, both, negs, 1):
                return DoesNotHold("not", "/not", d)
            return Undecidable("Negated" + t.capitalize(), "overlap with a negated leaf")
        return HOLDS

    def _is_counterexample(self, d, piece, rights) -> bool:
        if d is None:
            return False
        leaf, negs = piece
        if not member(d, leaf) or any(member(d, n) for n in negs):
            return False
        return not any(member(d, q) and not any(member(d, m) for m in ms) for q, ms in rights)

    def _search(self, t, piece, rights) -> DoesNotHold | None:
        leaf, negs = piece
        for d in self.examples_branch(t, leaf, negs, 4 * _EXAMPLES):
            if self._is_counterexample(d, piece, rights):
                return DoesNotHold("anyOf" if len(rights) > 1 else ("type" if not rights else t),
                                   "", d)
        return None

    @staticmethod
    def _undecided(t, piece, rights) -> Undecidable:
        if piece[1] or any(ms for _, ms in rights):
            return Undecidable("Negated" + t.capitalize(), f"negated {t} schema")
        if len(rights) > 1:
            return Undecidable("OverlappingUnion", f"{t} branches of the right union may overlap")
        return Undecidable("Incomplete", f"no proof and no counterexample for {t}")

    # -------------------------------------------------------------- negation unfolding

    def expand(self, t, leaf, negs) -> list:
        """Rewrite ``leaf ∧ ¬negs`` as a list of ``(leaf, residual_negs)`` pieces."""
        pieces = [(leaf, [])]
        for n in negs:
            comp = self.exact_complement(t, n, leaf)
            if comp is None or len(pieces) * len(comp) > _PIECE_LIMIT:
                pieces = [(p, r + [n]) for p, r in pieces]
                continue
            nxt = []
            for p, r in pieces:
                for x in comp:
                    y = _meet_leaf(t, p, x)
                    if y is not None and self.leaf_inhabited(t, y) is not False:
                        nxt.append((y, r))
            pieces = nxt
        return pieces

    def exact_complement(self, t, n, ctx) -> list | None:
        """Plain leaves whose union is ``¬n`` within arrays/objects of ``ctx``; None if unavailable."""
        return self._array_complement(n, ctx) if t == "array" else self._object_complement(n, ctx)

    def _array_complement(self, n, ctx) -> list | None:
        base = DEFAULT_LEAF["array"]
        out = []
        if n["minItems"] > 0:
            out.append({**base, "maxItems": n["minItems"] - 1})
        if "maxItems" in n:
            out.append({**base, "minItems": n["maxItems"] + 1})
        emax = self.array_emax(ctx)
        hi = emax if "maxItems" not in n else (
            n["maxItems"] if emax is None else min(emax, n["maxItems"]))
        width = len(n["items"])
        for i in range(width):
            if hi is not None and i >= hi:
                break
            ns = _neg(n["items"][i])
            if not is_bottom(ns):
                out.append({**base, "minItems": i + 1, "items": [TOP] * i + [ns]})
        ns = _neg(n["additionalItems"])
        if not is_bottom(ns) and (hi is None or hi > width):
            if hi is None or hi - width > _EXPAND_LIMIT:
                return None
            for i in range(width, hi):
                out.append({**base, "minItems": i + 1, "items": [TOP] * i + [ns]})
        if n["uniqueItems"] and (emax is None or emax > 1):
            return None
        return out

    def _object_complement(self, n, ctx) -> list | None:
        base = DEFAULT_LEAF["object"]
        out = []
        if n["minProperties"] > 0:
            out.append({**base, "maxProperties": n["minProperties"] - 1})
        if "maxProperties" in n:
            out.append({**base, "minProperties": n["maxProperties"] + 1})
        for k in n.get("required", []):
            lit = regex.literal(k)
            out.append({"type": "object", "minProperties": 0,
                        "patternProperties": {lit: BOTTOM, ~lit: TOP}})
        allowed = self.allowed_keys(ctx)
        for p, s in n["patternProperties"].items():
            ns = _neg(s)
            if is_bottom(ns):
                continue
            keys = p & allowed
            if keys.is_empty():
                continue
            c = keys.count()
            if c is None or c > _EXPAND_LIMIT:
                return None
            for k in keys.strings(c, complete=True):
                lit = regex.literal(k)
                out.append({"type": "object", "minProperties": 1, "required": [k],
                            "patternProperties": {lit: ns, ~lit: TOP}})
        return out

    # -------------------------------------------------------------- emptiness

    def inhabited(self, s: dict):
        """True, False, or None when surviving negations prevent an answer."""
        if s == TOP:
            return True
        if is_bottom(s):
            return False
        k = skey(s)
        if k in self._inh:
            return self._inh[k]
        self._inh[k] = None
        if "anyOf" in s and len(s) == 1:
            res = [self._inh_branch(b) for b in s["anyOf"]]
            r = True if any(x is True for x in res) else (False if all(x is False for x in res) else None)
        else:
            r = self._inh_branch(s)
        self._inh[k] = r
        return r

    def _inh_branch(self, b: dict):
        leaf, negs = split_branch(b)
        t = leaf["type"]
        if t == "number":
            try:
                holds, _ = number_subset([self._conj(b)], [])
            except CapacityLimit:
                return None
            return not holds
        if t in ("array", "object"):
            return self.inhabited_branch(t, leaf, negs)
        if t == "boolean":
            return bool(leaf.get("enum", [True]))
        if t == "string":
            return not leaf["pattern"].is_empty()
        return True

    def inhabited_branch(self, t, leaf, negs):
        base = self.leaf_inhabited(t, leaf)
        if base is False or not negs:
            return base
        pieces = self.expand(t, leaf, negs)
        if not pieces:
            return False
        if all(not r for _, r in pieces):
            res = [self.leaf_inhabited(t, p) for p, _ in pieces]
            if any(x is True for x in res):
                return True
            if all(x is False for x in res):
                return False
        for _ in self.examples_branch(t, leaf, negs, 1):
            return True
        return None

    def leaf_inhabited(self, t, leaf):
        if t == "array":
            lo, hi = leaf["minItems"], leaf.get("maxItems")
            if hi is not None and lo > hi:
                return False
            res = [self.inhabited(_position(leaf, i)) for i in range(min(lo, len(leaf["items"]) + 1))]
            if any(x is False for x in res):
                return False
            if leaf["uniqueItems"] and lo > 1:
                ok = self.unique_feasible(leaf, lo)
                if ok is not True:
                    return ok
            return None if any(x is None for x in res) else True
        lo, hi = _min_size(leaf), leaf.get("maxProperties")
        if hi is not None and lo > hi:
            return False
        unknown = False
        for k in leaf.get("required", []):
            x = self.inhabited(key_schema(leaf, k))
            if x is False:
                return False
            unknown |= x is None
        c = self.allowed_keys(leaf).count()
        if c is not None and c < lo:
            return False
        for p, s in leaf["patternProperties"].items():
            unknown |= self.inhabited(s) is None
        return None if unknown else True

    def allowed_keys(self, leaf: dict) -> RegexLang:
        """Keys that can occur with some valid value (over-approximated when unsure)."""
        lang = regex.EMPTY_LANG
        for p, s in leaf["patternProperties"].items():
            if _maybe(self.inhabited(s)):
                lang = lang | p
        return lang

    def array_emax(self, leaf: dict) -> int | None:
        """An upper bound on the length of arrays in ``leaf``; None if unbounded."""
        bound = leaf.get("maxItems")
        items = leaf["items"]
        for i, x in enumerate(items):
            if bound is not None and i >= bound:
                break
            if self.inhabited(x) is False:
                bound = i
                break
        else:
            if self.inhabited(leaf["additionalItems"]) is False:
                bound = len(items) if bound is None else min(bound, len(items))
        if leaf["uniqueItems"] and (bound is None or bound > 1):
            add, complete = self.examples(leaf["additionalItems"], _EXPAND_LIMIT + 1)
            if complete:
                cap = len(items) + len(add)
                bound = cap if bound is None else min(bound, cap)
            if bound is not None:
                while bound > leaf["minItems"] and self.unique_feasible(leaf, bound) is False:
                    bound -= 1
        return bound

    def unique_feasible(self, leaf: dict, n: int):
        """Can positions ``0..n-1`` take pairwise distinct values?  None when unknown."""
        needy = []
        for i in range(n):
            vals, complete = self.examples(_position(leaf, i), n)
            if len(vals) >= n:
                continue
            if not complete:
                return None
            needy.append([freeze(v) for v in vals])
        return _matching(needy)

    # -------------------------------------------------------------- leaf rules

    def leaf_sub(self, t, p, q) -> Verdict:
        if self.leaf_inhabited(t, p) is False:
            return HOLDS
        return self.array_sub(p, q) if t == "array" else self.object_sub(p, q)

    def array_sub(self, p, q) -> Verdict:
        emax = self.array_emax(p)
        lo = p["minItems"]
        if lo < q["minItems"]:
            return self._array_witness(p, q, lo, {}, "array-size", "/minItems")
        if "maxItems" in q and (emax is None or emax > q["maxItems"]):
            n = max(lo, q["maxItems"] + 1)
            return self._array_witness(p, q, n, {}, "array-size", "/maxItems")
        width = max(len(p["items"]), len(q["items"]))
        out = []
        for i in range(width + 1):
            if emax is not None and i >= emax:
                break
            here = i < width
            v = self.sub(_position(p, i), _position(q, i),
                         f"/items/{i}" if here else "/additionalItems")
            if isinstance(v, DoesNotHold):
                w = self._array_witness(p, q, max(lo, i + 1), {i: v.witness}, v.rule, v.path)
                if isinstance(w, DoesNotHold):
                    return w
                v = w
            out.append(v)
        if q["uniqueItems"] and not p["uniqueItems"] and (emax is None or emax > 1):
            v = self._duplicate_witness(p, q, emax)
            if v is not None:
                out.append(v)
        return _first(out)

    def all_disjoint_items(self, leaf: dict, emax=None) -> bool:
        emax = self.array_emax(leaf) if emax is None else emax
        return self._overlapping_pair(leaf, emax) is None

    def _overlapping_pair(self, leaf, emax):
        width = len(leaf["items"])
        top = width + 2 if emax is None else min(emax, width + 2)
        for i, j in itertools.combinations(range(top), 2):
            both = _meet(_position(leaf, i), _position(leaf, j))
            if _maybe(self.inhabited(both)):
                return i, j, both
        return None

    def _duplicate_witness(self, p, q, emax) -> Verdict | None:
        pair = self._overlapping_pair(p, emax)
        if pair is None:
            return None
        i, j, both = pair
        for v in self.examples(both, _EXAMPLES)[0]:
            w = self._array_witness(p, q, max(p["minItems"], j + 1), {i: v, j: v},
                                    "array-uniqueItems", "/uniqueItems", allow_dup=True)
            if isinstance(w, DoesNotHold):
                return w
        return Undecidable("Incomplete", "no duplicate-carrying array found")

    def _array_witness(self, p, q, n, fixed, rule, path, allow_dup=False) -> Verdict:
        d = self.build_array(p, n, fixed, allow_dup)
        if d is not None and member(d, p) and not member(d, q):
            return DoesNotHold(rule, path, d)
        return Undecidable("Incomplete", f"could not build an array witness for {rule}")

    def build_array(self, leaf, n, fixed=None, allow_dup=False):
        fixed = fixed or {}
        if leaf.get("maxItems") is not None and n > leaf["maxItems"]:
            return None
        out, used = [None] * n, [freeze(v) for v in fixed.values()]
        for i in range(n):
            if i in fixed:
                out[i] = fixed[i]
                continue
            vals, _ = self.examples(_position(leaf, i), n + len(fixed) + 1)
            for v in vals:
                if not leaf["uniqueItems"] or freeze(v) not in used:
                    out[i] = v
                    used.append(freeze(v))
                    break
            else:
                return None
        if leaf["uniqueItems"] and not allow_dup and len(set(map(freeze, out))) < n:
            return None
        return out

    def object_sub(self, p, q) -> Verdict:
        lo = _min_size(p)
        allowed = self.allowed_keys(p)
        c = allowed.count()
        emax = p.get("maxProperties")
        if c is not None:
            emax = c if emax is None else min(emax, c)
        preq = set(p.get("required", []))
        for k in q.get("required", []):
            if k in preq:
                continue
            d = self.build_object(p, lo, {}, avoid={k})
            if d is not None and member(d, p) and not member(d, q):
                return DoesNotHold("object-required", "/required", d)
            if not self._key_forced(p, k, lo):
                return Undecidable("Incomplete", f"could not build an object without {k!r}")
        if lo < q.get("minProperties", 0):
            return self._object_witness(p, q, lo, {}, "object-size", "/minProperties")
        if "maxProperties" in q and (emax is None or emax > q["maxProperties"]):
            n = max(lo, q["maxProperties"] + 1)
            return self._object_witness(p, q, n, {}, "object-size", "/maxProperties")
        if emax == 0:
            return HOLDS
        out = []
        for pp, ps in p["patternProperties"].items():
            if self.inhabited(ps) is False:
                continue
            for qp, qs in q["patternProperties"].items():
                both = pp & qp
                if both.is_empty():
                    continue
                v = self.sub(ps, qs, f"/patternProperties/{qp.to_regex()}")
                if isinstance(v, DoesNotHold):
                    w = Undecidable("Incomplete", "could not place the failing property")
                    for k in both.strings(_EXAMPLES):
                        w = self._object_witness(p, q, max(lo, 1), {k: v.witness}, v.rule, v.path)
                        if isinstance(w, DoesNotHold):
                            break
                    v = w
                if isinstance(v, DoesNotHold):
                    return v
                out.append(v)
        return _first(out)

    def _key_forced(self, leaf, k, lo) -> bool:
        """Does every object of ``leaf`` carry key ``k``?"""
        others = self.allowed_keys(leaf) - regex.literal(k)
        c = others.count()
        return c is not None and c < lo

    def _object_witness(self, p, q, n, fixed, rule, path) -> Verdict:
        d = self.build_object(p, n, fixed)
        if d is not None and member(d, p) and not member(d, q):
            return DoesNotHold(rule, path, d)
        return Undecidable("Incomplete", f"could not build an object witness for {rule}")

    def build_object(self, leaf, n, fixed=None, avoid=()):
        fixed = dict(fixed or {})
        if leaf.get("maxProperties") is not None and n > leaf["maxProperties"]:
            return None
        out = {}
        for k in leaf.get("required", []):
            if k in avoid:
                return None
            if k in fixed:
                continue
            vals, _ = self.examples(key_schema(leaf, k), 1)
            if not vals:
                return None
            out[k] = vals[0]
        out.update(fixed)
        if len(out) > n:
            return None
        for pat, s in leaf["patternProperties"].items():
            if len(out) >= n:
                break
            vals, _ = self.examples(s, 1)
            if not vals:
                continue
            need = n - len(out)
            for k in pat.strings(need + len(out) + len(avoid) + 1):
                if k in out or k in avoid:
                    continue
                out[k] = vals[0]
                if len(out) >= n:
                    break
        return out if len(out) == n else None

    # -------------------------------------------------------------- examples

    def examples(self, s: dict, k: int) -> tuple[list, bool]:
        """Up to ``k`` distinct members of ``s``; the flag says the list is all of ``s``."""
        key = (skey(s), k)
        if key in self._ex:
            return self._ex[key]
        self._ex[key] = ([], False)
        res = self._examples(s, k)
        self._ex[key] = res
        return res

    def _examples(self, s, k):
        if is_bottom(s):
            return [], True
        if s == TOP:
            return [None, True, False, 0, "", [], {}][:k], False
        branches = s["anyOf"] if "anyOf" in s and len(s) == 1 else [s]
        out, complete = [], True
        for b in branches:
            vals, done = self._branch_examples(b, k)
            out.extend(vals)
            complete &= done
        seen, uniq = set(), []
        for v in out:
            f = freeze(v)
            if f not in seen:
                seen.add(f)
                uniq.append(v)
        if len(uniq) > k:
            return uniq[:k], False
        return uniq, complete

    def _branch_examples(self, b, k):
        leaf, negs = split_branch(b)
        t = leaf["type"]
        if t == "null":
            return [None], True
        if t == "boolean":
            return list(leaf.get("enum", [True, False])), True
        if t == "string":
            lang = leaf["pattern"]
            c = lang.count()
            if c is not None and c <= k:
                return lang.strings(c, complete=True), True
            return lang.strings(k), False
        if t == "number":
            return _number_examples(self._conj(b), k)
        vals = list(self.examples_branch(t, leaf, negs, k))
        if t == "array" and leaf.get("maxItems") == 0 and not negs:
            return vals, True
        return vals, False

    def examples_branch(self, t, leaf, negs, k):
        """Yield up to ``k`` members of ``leaf ∧ ¬negs``, trying a bounded set of shapes."""
        found = 0
        seen = set()
        gen = self._array_shapes(leaf) if t == "array" else self._object_shapes(leaf)
        for d in itertools.islice(gen, 50 * k + 50):
            tick()
            f = freeze(d)
            if f in seen:
                continue
            seen.add(f)
            if member(d, leaf) and not any(member(d, n) for n in negs):
                yield d
                found += 1
                if found >= k:
                    return

    def _array_shapes(self, leaf):
        lo = leaf["minItems"]
        hi = self.array_emax(leaf)
        top = lo + 3 if hi is None else min(hi, lo + 3)
        for n in range(lo, top + 1):
            cols = [self.examples(_position(leaf, i), max(3, n + 1))[0] for i in range(n)]
            if any(not c for c in cols):
                return
            yield from (list(p) for p in itertools.islice(itertools.product(*cols), 40))

    def _object_shapes(self, leaf):
        req = list(leaf.get("required", []))
        lo = _min_size(leaf)
        hi = leaf.get("maxProperties")
        opt = []
        for pat, s in leaf["patternProperties"].items():
            vals, _ = self.examples(s, 2)
            if not vals:
                continue
            for key in pat.strings(3 + len(req)):
                if key not in req:
                    opt.append((key, vals))
        req_vals = [self.examples(key_schema(leaf, key), 3)[0] for key in req]
        if any(not v for v in req_vals):
            return
        top = lo + 2 if hi is None else min(hi, lo + 2)
        for n in range(lo, top + 1):
            extra = n - len(req)
            if extra < 0 or extra > len(opt):
                continue
            for chosen in itertools.islice(itertools.combinations(opt, extra), 20):
                keys = [c[0] for c in chosen]
                if len(set(keys)) < len(keys):
                    continue
                cols = req_vals + [c[1] for c in chosen]
                for vals in itertools.islice(itertools.product(*cols), 10):
                    yield dict(zip(req + keys, vals))


def _number_examples(conj: Conj, k: int):
    r = conj.pos.normalized()
    if r.is_empty():
        return [], True
    m = r.multiple_of
    if r.bounded() and (m is not None or r.lo == r.hi):
        count = 1 if m is None else int((r.hi - r.lo) / m) + 1
        if count <= 4 * k + 16:
            pts = [r.lo] if m is None else [r.lo + i * m for i in range(count)]
            vals = [x for x in pts if conj.contains(x)]
            return [_tidy(x) for x in vals[:k]], len(vals) <= k
    vals = []
    for x in candidate_points([conj.pos, *conj.negs]):
        if conj.contains(x) and x not in vals:
            vals.append(x)
            if len(vals) >= k:
                break
    if vals and len(vals) < k:
        x0 = vals[0]
        for j in range(1, 400):
            if m is not None:
                y = x0 + j * m
            elif r.hi != INF:
                y = x0 + (r.hi - x0) / (2 ** j)
            else:
                y = x0 + j
            if conj.contains(y) and y not in vals:
                vals.append(y)
                if len(vals) >= k:
                    break
    return [_tidy(x) for x in vals], False


def _tidy(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _matching(domains: list[list]) -> bool:
    """Is there a system of distinct representatives for ``domains``?"""
    owner: dict = {}

    def place(i, seen):
        for v in domains[i]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or place(owner[v], seen):
                owner[v] = i
                return True
        return False

    return all(place(i, set()) for i in range(len(domains)))


# ------------------------------------------------------------------ public API

def prepare(schema, store: DocumentStore | None = None, base: str = "") -> dict:
    """Meta-validate, resolve refs, canonicalize and simplify a raw schema."""
    s = normalize_json(schema)
    report = validate_meta(s)
    if not report:
        raise InvalidSchema(report.violations)
    s = resolve_refs(s, store, base)
    return simplify(canonicalize(s))


def _guarded(fn):
    try:
        return fn()
    except RecursiveRef as exc:
        return Undecidable("RecursiveRef", str(exc))
    except UnsupportedPattern as exc:
        return Undecidable("NonRegularPattern", str(exc))
    except CapacityLimit as exc:
        return Undecidable("CapacityLimit", str(exc))
    except RecursionError:
        return Undecidable("CapacityLimit", "nesting too deep")


def is_subschema(s, t, *, store: DocumentStore | None = None, time_budget: float | None = None,
                 lhs_base: str = "", rhs_base: str = "") -> Verdict:
    """Decide ``s <: t`` for raw draft-04 schemas.

    Raises InvalidSchema for meta-invalid input and RefError for missing
    ``$ref`` targets; unsupported features come back as Undecidable.
    """
    return check(s, t, "sub", store=store, time_budget=time_budget,
                 lhs_base=lhs_base, rhs_base=rhs_base)


def is_equivalent(s, t, *, store: DocumentStore | None = None, time_budget: float | None = None,
                  lhs_base: str = "", rhs_base: str = "") -> Verdict:
    return check(s, t, "equiv", store=store, time_budget=time_budget,
                 lhs_base=lhs_base, rhs_base=rhs_base)


def check(lhs, rhs, direction: str = "sub", *, store: DocumentStore | None = None,
          time_budget: float | None = None, lhs_base: str = "", rhs_base: str = "") -> Verdict:
    if direction not in ("sub", "super", "equiv"):
        raise ValueError(f"unknown direction {direction!r}")
    for s in (lhs, rhs):
        report = validate_meta(normalize_json(s))
        if not report:
            raise InvalidSchema(report.violations)

    def run():
        with _time_budget(time_budget):
            a = prepare(lhs, store, lhs_base)
            b = prepare(rhs, store, rhs_base)
            c = Checker()
            if direction == "sub":
                return c.sub(a, b)
            if direction == "super":
                return c.sub(b, a)
            fwd = c.sub(a, b)
            if isinstance(fwd, DoesNotHold):
                return fwd
            back = c.sub(b, a)
            if isinstance(back, DoesNotHold):
                return back
            return _first([fwd, back])

    return _guarded(run)


def _snf(s) -> dict:
    """Accept raw, canonical or simplified schemas."""
    from .canonicalizer import is_canonical
    from .simplifier import is_simplified
    if is_simplified(s):
        return s
    if is_canonical(s):
        return simplify(s)
    return prepare(s)


def inhabited(s) -> bool:
    """Does any document validate against ``s``?

    Raises Undetermined when surviving negated array or object schemas leave
    the question open.
    """
    r = Checker().inhabited(_snf(s))
    if r is None:
        raise Undetermined("emptiness depends on a negated array or object schema")
    return r


def subtype_null(s, t) -> bool:
    return s.get("type") == "null" and t.get("type") == "null"


def subtype_boolean(s, t) -> bool:
    return set(s.get("enum", [True, False])) <= set(t.get("enum", [True, False]))


def subtype_string(s, t) -> bool:
    return t["pattern"].includes(s["pattern"])


def subtype_number(lhs: NumberConstraintSet, rhs: NumberConstraintSet) -> bool:
    return _subtype_number_sets(lhs, rhs)


def subtype_array(s, t) -> bool:
    return bool(Checker().leaf_sub("array", _snf(s), _snf(t)))


def subtype_object(s, t) -> bool:
    return bool(Checker().leaf_sub("object", _snf(s), _snf(t)))


def subtype_anyof(s, t) -> bool:
    return bool(Checker().sub(_snf(s), _snf(t)))


def allDisjointItems(s) -> bool:  # noqa: N802 - name follows the rule it implements
    return Checker().all_disjoint_items(_snf(s))


def nonOverlapping(branches: list) -> bool:  # noqa: N802
    """Are the given schemas pairwise disjoint?"""
    c = Checker()
    snf = [_snf(b) for b in branches]
    return all(c.inhabited(_meet(a, b)) is False for a, b in itertools.combinations(snf, 2))
