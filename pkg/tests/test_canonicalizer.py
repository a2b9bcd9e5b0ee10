import random

import pytest
from hypothesis import given, settings

from jsonsub.budget import CapacityLimit
from jsonsub.canonicalizer import allof_additional_properties, canonicalize, is_canonical, to_json
from jsonsub.json_model import normalize
from jsonsub.regex import RegexLang
from jsonsub.schema_model import BOTTOM, TOP
from jsonsub.simplifier import skey
from jsonsub.validator import enumerate_universe, validate
from worked_schemas import NON_EMPTY_STRING_OR_NULL as NULLABLE_TEXT
from strategies import documents, random_schema, schemas

UNIVERSE = enumerate_universe()


def agrees(s, docs=UNIVERSE):
    c = to_json(canonicalize(normalize(s)))
    return [d for d in docs if validate(d, s) != validate(d, c)]


def walk(s):
    if isinstance(s, dict):
        yield s
        for k, v in s.items():
            if k == "enum":
                continue
            if k == "patternProperties":
                for x in v.values():
                    yield from walk(x)
            else:
                yield from walk(v)
    elif isinstance(s, list):
        for x in s:
            yield from walk(x)


def test_integer_rule():
    c = canonicalize({"type": "integer"})
    assert c == {"type": "number", "multipleOf": 1, "exclusiveMinimum": False, "exclusiveMaximum": False}
    assert to_json(c) == {"type": "number", "multipleOf": 1}


def test_integer_step_lcm():
    assert canonicalize({"type": "integer", "multipleOf": 0.5})["multipleOf"] == 1
    assert canonicalize({"type": "integer", "multipleOf": 1.5})["multipleOf"] == 3


def test_missing_type_expands_all_types():
    c = to_json(canonicalize({"pattern": ".+"}))
    branches = c["anyOf"]
    assert sorted(b["type"] for b in branches) == sorted(
        ["null", "boolean", "number", "number", "string", "array", "object"])
    assert [b["pattern"] for b in branches if b["type"] == "string"] == [".+"]
    assert all("pattern" not in b for b in branches if b["type"] != "string")


def test_nullable_text_shape():
    c = canonicalize(NULLABLE_TEXT["a"])
    assert set(c) == {"allOf"}
    kinds = sorted(next(iter(x)) for x in c["allOf"])
    assert kinds == ["anyOf", "not"]
    anyof = next(x for x in c["allOf"] if "anyOf" in x)["anyOf"]
    assert sorted(b["type"] for b in anyof) == ["null", "string"]


def test_top_and_bottom_fixed():
    assert canonicalize({}) == TOP
    assert canonicalize({"not": {}}) == BOTTOM
    assert canonicalize({"description": "x"}) == TOP


def test_string_length_rules():
    c = canonicalize({"type": "string", "minLength": 1, "maxLength": 3})
    assert set(c) == {"type", "pattern"}
    assert isinstance(c["pattern"], RegexLang)
    assert [c["pattern"].matches(w) for w in ("", "a", "abc", "abcd")] == [False, True, True, False]
    c = canonicalize({"type": "string", "minLength": 2, "pattern": "b"})
    assert [c["pattern"].matches(w) for w in ("b", "ab", "aa")] == [False, True, False]


def test_array_rules():
    c = canonicalize({"type": "array", "items": {"type": "null"}})
    assert c["items"] == [] and c["additionalItems"] == {"type": "null"}
    c = canonicalize({"type": "array", "items": [{}], "additionalItems": False})
    assert c["additionalItems"] == BOTTOM
    assert c["minItems"] == 0 and c["uniqueItems"] is False


def test_object_properties_become_disjoint_patterns():
    s = {"type": "object", "properties": {"ab": {"type": "null"}},
         "patternProperties": {"^a": {"type": "string"}, "b$": {"type": "boolean"}},
         "additionalProperties": False}
    c = canonicalize(s)
    assert set(c) <= {"type", "minProperties", "maxProperties", "required", "patternProperties"}
    pats = list(c["patternProperties"])
    for i, p in enumerate(pats):
        for q in pats[i + 1:]:
            assert not p.overlaps(q)
    assert not agrees(s)


def test_dependencies_eliminated():
    s = {"type": "object", "dependencies": {"a": ["b"], "b": {"required": ["a"]}}}
    c = canonicalize(s)
    assert all("dependencies" not in n for n in walk(c))
    assert not agrees(s)


def test_one_of_becomes_anyof_of_conjunctions():
    c = canonicalize({"oneOf": [{"type": "null"}, {"type": "boolean"}]})
    assert set(c) == {"anyOf"} and all(set(b) == {"allOf"} for b in c["anyOf"])
    assert all("oneOf" not in n for n in walk(c))


def test_one_of_branch_limit():
    with pytest.raises(CapacityLimit):
        canonicalize({"oneOf": [{"minimum": i} for i in range(17)]})


def test_heterogeneous_enum_split():
    c = canonicalize({"enum": [1, "a", None]})
    assert sorted(b["type"] for b in c["anyOf"]) == ["null", "number", "string"]


def test_multiple_connectives_split():
    c = canonicalize({"type": "string", "not": {"enum": ["a"]}})
    assert set(c) == {"allOf"} and len(c["allOf"]) == 2


def test_irrelevant_keywords_dropped():
    c = canonicalize({"type": "null", "minLength": 3, "title": "t"})
    assert c == {"type": "null"}


def test_divergence_class_detection():
    assert allof_additional_properties(
        {"allOf": [{"properties": {"a": {}}, "additionalProperties": False}, {"properties": {"b": {}}}]})
    assert allof_additional_properties({"additionalProperties": False, "anyOf": [{}]})
    assert not allof_additional_properties({"properties": {"a": {}}, "additionalProperties": False})


@pytest.mark.parametrize("name", sorted(NULLABLE_TEXT))
def test_nullable_text_semantics_preserved(name):
    assert not agrees(NULLABLE_TEXT[name])


@settings(max_examples=150, deadline=None)
@given(schemas)
def test_grammar_and_idempotence(s):
    c = canonicalize(normalize(s))
    assert is_canonical(c)
    assert skey(canonicalize(c)) == skey(c)
    for n in walk(to_json(c)):
        assert n.get("type") != "integer"
        assert "oneOf" not in n and "properties" not in n and "dependencies" not in n
        if n.get("type") == "string":
            assert "minLength" not in n and "maxLength" not in n
        if n.get("type") == "array":
            assert isinstance(n["items"], list) and isinstance(n["additionalItems"], dict)


@settings(max_examples=150, deadline=None)
@given(schemas, documents)
def test_semantics_preserved(s, d):
    c = to_json(canonicalize(normalize(s)))
    assert validate(d, s) == validate(d, c)


def test_semantics_preserved_exhaustive_sample():
    rng = random.Random(5)
    for _ in range(40):
        s = random_schema(rng)
        assert not agrees(s, UNIVERSE[::7])
