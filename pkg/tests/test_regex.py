import itertools
import re

import pytest
from hypothesis import given, settings

from jsonsub import regex
from jsonsub.regex import (
    EMPTY_LANG, UNIVERSAL, UnsupportedPattern, complement, includes, intersect, is_empty,
    length_range, literal, subtract, union,
)
from strategies import patterns

AB = ["".join(p) for n in range(4) for p in itertools.product("ab", repeat=n)]
ABC5 = ["".join(p) for n in range(6) for p in itertools.product("abc", repeat=n)]


def members(lang, universe):
    return {w for w in universe if lang.matches(w)}


def re_members(pattern, universe, full=False):
    rx = re.compile(pattern)
    return {w for w in universe if (rx.fullmatch(w) if full else rx.search(w))}


def L(p):
    return regex.compile(p)


def same(a, b):
    return includes(a, b) and includes(b, a)


def test_empty_string_pattern():
    lang = L("^$")
    assert lang.matches("") and not lang.matches("a")
    assert lang.count() == 1


def test_full_anchoring():
    lang = regex.compile(".+", "full")
    assert not lang.matches("") and lang.matches("x") and lang.matches("xyz")


def test_partial_anchoring_contains():
    # [DERIVED] Python's re.search over {a,b}^<=3.
    assert members(L("a"), AB) == re_members("a", AB)
    assert members(L("a"), AB) == {w for w in AB if "a" in w}


def test_intersect_examples():
    assert same(intersect(L("^(a|b)$"), L("^a$")), L("^a$"))
    assert is_empty(intersect(L("^a$"), L("^b$")))
    # [DERIVED] enumeration over {a,b}^2.
    got = intersect(regex.compile("[ab]{2}", "full"), regex.compile("a.", "full"))
    assert got.strings(10, complete=True) == ["aa", "ab"]


def test_complement_of_empty_string():
    assert same(complement(L("^$")), regex.compile(".+", "full"))


def test_union_and_subtract_examples():
    assert same(union(L("^a$"), L("^b$")), L("^(a|b)$"))
    # [DERIVED] length-1 enumeration: [ab] minus a is b.
    assert same(subtract(L("^[ab]$"), L("^a$")), L("^b$"))


def test_includes_examples():
    assert includes(L("^[a-z]*$"), L("^abc$"))
    assert not includes(L("^a$"), L("^(a|b)$"))
    # [DERIVED] enumeration up to length 6 over {a,b}.
    assert includes(L("^.{2,}$"), L("^.{3,5}$"))
    universe = ["".join(p) for n in range(7) for p in itertools.product("ab", repeat=n)]
    assert re_members("^.{3,5}$", universe) <= re_members("^.{2,}$", universe)


def test_universal_and_empty():
    assert UNIVERSAL.is_universal() and is_empty(EMPTY_LANG)
    assert same(L(""), UNIVERSAL)
    assert same(complement(UNIVERSAL), EMPTY_LANG)


def test_literal_escapes_metacharacters():
    lit = literal("a.b*")
    assert lit.matches("a.b*") and not lit.matches("axb")
    assert same(lit, L(lit.to_regex()))


def test_length_range():
    assert members(length_range(1, 2), AB) == {w for w in AB if 1 <= len(w) <= 2}
    assert members(length_range(2, None), AB) == {w for w in AB if len(w) >= 2}
    assert is_empty(length_range(3, 1))


def test_to_regex_round_trip():
    lang = intersect(L("a"), complement(L("^b")))
    assert same(L(lang.to_regex()), lang)
    assert members(lang, AB) == re_members(lang.to_regex(), AB)


def test_unicode_classes_follow_ecma():
    assert not L("^\\d$").matches("߀")
    assert L("^\\D$").matches("߀")
    assert not L("^\\w$").matches("é")
    assert L("^\\S$").matches("\xa0")


def test_dot_matches_newline_and_dollar_does_not_skip_it():
    assert not L("^abc$").matches("abc\n")
    assert L("^.$").matches("\n")


@pytest.mark.parametrize("p", ["(a)\\1", "(?=a)", "(?<n>a)", "\\bx", "a{1,5000}"])
def test_non_regular_features_rejected(p):
    with pytest.raises(UnsupportedPattern):
        L(p)


def test_counting():
    assert L("^[ab]{2}$").count() == 4
    assert L("^a*$").count() is None
    assert regex.compile("[ab]{2}", "full").strings(10, complete=True) == ["aa", "ab", "ba", "bb"]


@settings(max_examples=150, deadline=None)
@given(patterns)
def test_membership_agrees_with_re(p):
    assert members(L(p), ABC5) == re_members(p, ABC5)
    assert members(regex.compile(p, "full"), ABC5) == re_members(p, ABC5, full=True)


@settings(max_examples=100, deadline=None)
@given(patterns, patterns)
def test_de_morgan(p, q):
    a, b = L(p), L(q)
    assert same(complement(union(a, b)), intersect(complement(a), complement(b)))
    assert same(complement(intersect(a, b)), union(complement(a), complement(b)))


@settings(max_examples=100, deadline=None)
@given(patterns, patterns)
def test_subtraction_is_intersection_with_complement(p, q):
    a, b = L(p), L(q)
    assert same(subtract(a, b), intersect(a, complement(b)))


@settings(max_examples=100, deadline=None)
@given(patterns, patterns, patterns)
def test_inclusion_is_a_partial_order(p, q, r):
    a, b, c = L(p), L(q), L(r)
    assert includes(a, a)
    if includes(a, b) and includes(b, a):
        assert a == b
    if includes(a, b) and includes(b, c):
        assert includes(a, c)
    assert includes(union(a, b), a)
    assert includes(a, intersect(a, c))
