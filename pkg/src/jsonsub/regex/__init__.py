"""Regular-language algebra for JSON Schema patterns.

``RegexLang`` values are immutable languages over Unicode code points.
Equality is language equality; hashing uses the minimal automaton.
"""

from __future__ import annotations

import operator
from functools import lru_cache

from . import automaton as _fa
from .charset import ANY, CharSet
from .parser import PatternSyntaxError, RegexError, UnsupportedPattern, parse

__all__ = [
    "RegexLang", "compile", "intersect", "union", "complement", "subtract",
    "is_empty", "includes", "literal", "length_range", "UNIVERSAL", "EMPTY_LANG",
    "RegexError", "PatternSyntaxError", "UnsupportedPattern", "escape",
]

PARTIAL = "partial"
FULL = "full"


class RegexLang:
    __slots__ = ("_dfa", "_source", "_literal", "_key", "_count")

    def __init__(self, dfa: _fa.DFA, source: str | None = None, literal: str | None = None):
        self._dfa = dfa
        self._source = source
        self._literal = literal
        self._key = None
        self._count = False

    # -- identity
    @property
    def dfa(self) -> _fa.DFA:
        return self._dfa

    @property
    def key(self) -> tuple:
        if self._key is None:
            d = self._dfa
            self._key = (tuple(a.ranges for a in d.atoms), d.delta, tuple(sorted(d.accept)))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, RegexLang) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"RegexLang({self.to_regex()!r})"

    # -- algebra
    def __and__(self, other: "RegexLang") -> "RegexLang":
        if self._literal is not None:
            return self if other.matches(self._literal) else EMPTY_LANG
        if other._literal is not None:
            return other if self.matches(other._literal) else EMPTY_LANG
        if self.is_universal():
            return other
        if other.is_universal():
            return self
        return RegexLang(_fa.product(self._dfa, other._dfa, operator.and_))

    def __or__(self, other: "RegexLang") -> "RegexLang":
        if self.is_empty() or other.is_universal():
            return other
        if other.is_empty() or self.is_universal():
            return self
        return RegexLang(_fa.product(self._dfa, other._dfa, operator.or_))

    def __invert__(self) -> "RegexLang":
        return RegexLang(_fa.complement(self._dfa))

    def __sub__(self, other: "RegexLang") -> "RegexLang":
        if self._literal is not None:
            return EMPTY_LANG if other.matches(self._literal) else self
        if other.is_empty():
            return self
        return RegexLang(_fa.product(self._dfa, other._dfa, lambda x, y: x and not y))

    def __le__(self, other: "RegexLang") -> bool:
        return other.includes(self)

    # -- queries
    def is_empty(self) -> bool:
        return not self._dfa.accept or 0 not in _fa.live_states(self._dfa)

    def is_universal(self) -> bool:
        d = self._dfa
        return d.size == 1 and 0 in d.accept

    def includes(self, other: "RegexLang") -> bool:
        """True iff ``other``'s language is a subset of this one."""
        if other._literal is not None:
            return self.matches(other._literal)
        if self.is_universal() or other.is_empty():
            return True
        return (other - self).is_empty()

    def overlaps(self, other: "RegexLang") -> bool:
        if self._literal is not None:
            return other.matches(self._literal)
        if other._literal is not None:
            return self.matches(other._literal)
        return not (self & other).is_empty()

    def matches(self, text: str) -> bool:
        """Full-match membership of ``text``."""
        return _fa.accepts(self._dfa, text)

    @property
    def literal(self) -> str | None:
        """The sole member when this language is known to be a singleton."""
        return self._literal

    def shortest(self) -> str | None:
        if self._literal is not None:
            return self._literal
        return _fa.shortest(self._dfa)

    def count(self) -> int | None:
        """Number of members, or None if infinite."""
        if self._count is False:
            self._count = 1 if self._literal is not None else _fa.count(self._dfa)
        return self._count

    def is_finite(self) -> bool:
        return self.count() is not None

    def strings(self, limit: int, complete: bool = False) -> list[str]:
        """Up to ``limit`` members in shortlex order.

        With ``complete=True`` every character of every atom is considered, so a
        language with fewer than ``limit`` members is returned in full.
        """
        if self._literal is not None:
            return [self._literal][:limit]
        return list(_fa.enumerate_strings(self._dfa, limit, None if complete else max(limit, 3)))

    # -- printing
    def to_regex(self) -> str:
        """An ECMA pattern (partial-match semantics) denoting exactly this language."""
        if self._source is not None:
            return self._source
        if self._literal is not None:
            return "^" + escape(self._literal) + "$"
        if self.is_universal():
            return ".*"
        body = _fa.to_regex(self._dfa)
        if body == "[^\\s\\S]":
            return body
        return f"^(?:{body})$" if body else "^$"

    def to_json(self) -> str:
        return self.to_regex()

    __str__ = to_regex


def escape(text: str) -> str:
    """Escape regex metacharacters so that ``text`` matches only itself."""
    out = []
    for ch in text:
        out.append(_fa._char(ord(ch), False))
    return "".join(out)


@lru_cache(maxsize=4096)
def compile(pattern: str, anchoring: str = PARTIAL) -> RegexLang:  # noqa: A001
    """Language of strings matched by ``pattern``.

    ``anchoring="partial"`` gives JSON Schema's search semantics (the match may
    occur anywhere); ``"full"`` requires the whole string to match.
    """
    if anchoring not in (PARTIAL, FULL):
        raise ValueError(f"anchoring must be 'partial' or 'full', not {anchoring!r}")
    ast = parse(pattern)
    dfa = _fa.from_ast(ast, anchoring == PARTIAL)
    return RegexLang(dfa, pattern if anchoring == PARTIAL else None)


@lru_cache(maxsize=65536)
def literal(text: str) -> RegexLang:
    """The singleton language ``{text}``."""
    return RegexLang(_fa.literal_dfa(text), literal=text)


@lru_cache(maxsize=1024)
def length_range(lo: int, hi: int | None) -> RegexLang:
    """Strings of length ``lo`` to ``hi`` inclusive (``hi=None``: unbounded)."""
    if hi is not None and lo > hi:
        return EMPTY_LANG
    lang = RegexLang(_fa.length_dfa(lo, hi))
    if hi is None:
        lang._source = "^.{%d,}" % lo if lo else ".*"
    elif lo == hi:
        lang._source = "^.{%d}$" % lo
    else:
        lang._source = "^.{%d,%d}$" % (lo, hi)
    return lang


def intersect(a: RegexLang, b: RegexLang) -> RegexLang:
    return a & b


def union(a: RegexLang, b: RegexLang) -> RegexLang:
    return a | b


def complement(a: RegexLang) -> RegexLang:
    return ~a


def subtract(a: RegexLang, b: RegexLang) -> RegexLang:
    return a - b


def is_empty(a: RegexLang) -> bool:
    return a.is_empty()


def includes(sup: RegexLang, sub: RegexLang) -> bool:
    return sup.includes(sub)


UNIVERSAL = RegexLang(_fa.DFA((ANY,), ((0,),), frozenset({0})), ".*")
EMPTY_LANG = RegexLang(_fa.DFA((ANY,), ((0,),), frozenset()), "[^\\s\\S]")
