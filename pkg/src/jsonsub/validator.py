"""A small, direct draft-04 validator used as the reference oracle.

It works on raw schemas and shares no logic with canonicalization or the
subtype rules.  Patterns are run with Python's ``re`` after a light
translation from ECMA syntax; ``$ref`` is resolved lazily, so recursive
schemas validate fine here.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from urllib.parse import urljoin

from .json_model import JsonValue, is_integral, is_number, json_equal, normalize
from .regex.parser import PatternSyntaxError, UnsupportedPattern
from .schema_model import DocumentStore, inline_base

__all__ = ["validate", "Validator", "python_regex", "UnsupportedPattern",
           "UniverseBudget", "enumerate_universe"]


@lru_cache(maxsize=4096)
def python_regex(pattern: str) -> re.Pattern:
    """Translate an ECMA-262 pattern to an equivalent Python regex.

    ``.`` matches any character (including line terminators); ``$`` only
    matches at the very end; ``\\d``, ``\\w``, ``\\s`` are ASCII classes.
    """
    out = []
    i, n = 0, len(pattern)
    in_class = False
    while i < n:
        c = pattern[i]
        if c == "\\" and i + 1 < n:
            nxt = pattern[i + 1]
            if nxt == "c" and i + 2 < n and pattern[i + 2].isascii() and pattern[i + 2].isalpha():
                out.append("\\x%02x" % (ord(pattern[i + 2]) % 32))
                i += 3
                continue
            if nxt == "d" and not in_class:
                out.append("[0-9]")
            elif nxt == "D" and not in_class:
                out.append("[^0-9]")
            elif nxt == "d":
                out.append("0-9")
            else:
                out.append(pattern[i:i + 2])
            i += 2
            continue
        if in_class:
            if c == "]":
                in_class = False
            elif c == "[":
                out.append("\\[")
                i += 1
                continue
            out.append(c)
            i += 1
            continue
        if c == "[":
            if pattern.startswith("[]", i):
                out.append("(?!)")
                i += 2
                continue
            if pattern.startswith("[^]", i):
                out.append("[\\s\\S]")
                i += 3
                continue
            in_class = True
            out.append(c)
            i += 1
            if i < n and pattern[i] == "^":
                out.append("^")
                i += 1
            continue
        if c == "$":
            out.append("\\Z")
        else:
            out.append(c)
        i += 1
    try:
        return re.compile("".join(out), re.ASCII | re.DOTALL)
    except re.error as exc:
        raise UnsupportedPattern(f"cannot translate pattern {pattern!r}: {exc}") from exc


def _type_ok(d, t: str) -> bool:
    if t == "null":
        return d is None
    if t == "boolean":
        return isinstance(d, bool)
    if t == "number":
        return is_number(d)
    if t == "integer":
        return is_integral(d)
    if t == "string":
        return isinstance(d, str)
    if t == "array":
        return isinstance(d, list)
    if t == "object":
        return isinstance(d, dict)
    return False


class Validator:
    def __init__(self, root: dict, store: DocumentStore | None = None, base: str | None = None):
        self.root = root
        self.store = store or DocumentStore()
        self.base = base or inline_base()
        self.store.add(self.base, root)

    def is_valid(self, d: JsonValue) -> bool:
        return self._valid(d, self.root, self.base)

    def _valid(self, d, s, base) -> bool:
        if not isinstance(s, dict):
            raise TypeError("schema must be an object")
        if isinstance(s.get("id"), str):
            base = urljoin(base, s["id"])
        if "$ref" in s:
            target, _, scope = self.store.resolve(s["$ref"], base)
            return self._valid(d, target, scope)

        if "type" in s:
            types = s["type"] if isinstance(s["type"], list) else [s["type"]]
            if not any(_type_ok(d, t) for t in types):
                return False
        if "enum" in s and not any(json_equal(d, v) for v in s["enum"]):
            return False
        if "allOf" in s and not all(self._valid(d, x, base) for x in s["allOf"]):
            return False
        if "anyOf" in s and not any(self._valid(d, x, base) for x in s["anyOf"]):
            return False
        if "oneOf" in s and sum(1 for x in s["oneOf"] if self._valid(d, x, base)) != 1:
            return False
        if "not" in s and self._valid(d, s["not"], base):
            return False

        if is_number(d):
            return self._number(d, s)
        if isinstance(d, str):
            return self._string(d, s)
        if isinstance(d, list):
            return self._array(d, s, base)
        if isinstance(d, dict):
            return self._object(d, s, base)
        return True

    def _number(self, d, s) -> bool:
        if "multipleOf" in s and (Fraction(d) / Fraction(s["multipleOf"])).denominator != 1:
            return False
        if "minimum" in s:
            if d < s["minimum"] or (s.get("exclusiveMinimum") is True and d == s["minimum"]):
                return False
        if "maximum" in s:
            if d > s["maximum"] or (s.get("exclusiveMaximum") is True and d == s["maximum"]):
                return False
        return True

    def _string(self, d, s) -> bool:
        if "minLength" in s and len(d) < s["minLength"]:
            return False
        if "maxLength" in s and len(d) > s["maxLength"]:
            return False
        if "pattern" in s and not python_regex(s["pattern"]).search(d):
            return False
        return True

    def _array(self, d, s, base) -> bool:
        if "minItems" in s and len(d) < s["minItems"]:
            return False
        if "maxItems" in s and len(d) > s["maxItems"]:
            return False
        if s.get("uniqueItems") is True:
            for a, b in itertools.combinations(d, 2):
                if json_equal(a, b):
                    return False
        items = s.get("items")
        if isinstance(items, dict):
            if not all(self._valid(x, items, base) for x in d):
                return False
        elif isinstance(items, list):
            for x, sub in zip(d, items):
                if not self._valid(x, sub, base):
                    return False
            extra = d[len(items):]
            add = s.get("additionalItems", True)
            if add is False and extra:
                return False
            if isinstance(add, dict) and not all(self._valid(x, add, base) for x in extra):
                return False
        return True

    def _object(self, d, s, base) -> bool:
        if "minProperties" in s and len(d) < s["minProperties"]:
            return False
        if "maxProperties" in s and len(d) > s["maxProperties"]:
            return False
        if "required" in s and any(k not in d for k in s["required"]):
            return False
        props = s.get("properties", {})
        pats = [(python_regex(p), sub) for p, sub in s.get("patternProperties", {}).items()]
        add = s.get("additionalProperties", True)
        for k, v in d.items():
            matched = False
            if k in props:
                matched = True
                if not self._valid(v, props[k], base):
                    return False
            for rx, sub in pats:
                if rx.search(k):
                    matched = True
                    if not self._valid(v, sub, base):
                        return False
            if not matched:
                if add is False:
                    return False
                if isinstance(add, dict) and not self._valid(v, add, base):
                    return False
        for k, dep in s.get("dependencies", {}).items():
            if k not in d:
                continue
            if isinstance(dep, list):
                if any(x not in d for x in dep):
                    return False
            elif not self._valid(d, dep, base):
                return False
        return True


def validate(d: JsonValue, s: dict, store: DocumentStore | None = None, base: str | None = None) -> bool:
    """Definition-3 validity of document ``d`` against schema ``s``."""
    return Validator(normalize(s), store, base).is_valid(normalize(d))


# ---------------------------------------------------------------- universe

@dataclass(frozen=True)
class UniverseBudget:
    alphabet: str = "ab"
    max_string: int = 2
    numbers: tuple = (-1, 0, Fraction(1, 2), 1, 2)
    max_array: int = 2
    keys: tuple = ("a", "b")


def _strings(alphabet: str, max_len: int) -> list[str]:
    out = []
    for n in range(max_len + 1):
        out.extend("".join(p) for p in itertools.product(alphabet, repeat=n))
    return out


def enumerate_universe(budget: UniverseBudget = UniverseBudget()) -> list[JsonValue]:
    """Deterministic finite document universe.

    Scalars are null, both booleans, the budget's numbers and all strings up
    to ``max_string`` over ``alphabet``.  Arrays up to ``max_array`` long and
    objects over subsets of ``keys`` take their elements from the scalars plus
    ``[]`` and ``{}``.
    """
    scalars: list[JsonValue] = [None, True, False]
    scalars += [normalize(x) if not isinstance(x, (int, Fraction)) else x for x in budget.numbers]
    scalars += _strings(budget.alphabet, budget.max_string)
    elements = scalars + [[], {}]
    arrays = []
    for n in range(budget.max_array + 1):
        arrays.extend([list(p) for p in itertools.product(elements, repeat=n)])
    objects = []
    for r in range(len(budget.keys) + 1):
        for ks in itertools.combinations(budget.keys, r):
            for vals in itertools.product(elements, repeat=r):
                objects.append(dict(zip(ks, vals)))
    # [] and {} are already produced by the n=0 / r=0 cases.
    return scalars + arrays + objects
