import random

import pytest
from hypothesis import given, settings

from jsonsub import check, is_equivalent, is_subschema
from jsonsub.canonicalizer import canonicalize
from jsonsub.ranges import NumberConstraintSet, schema2range
from jsonsub.schema_model import BOTTOM, TOP, InvalidSchema, RefTargetMissing
from jsonsub.subtype import (
    TAGS, DoesNotHold, Holds, Undecidable, Undetermined, allDisjointItems, inhabited,
    nonOverlapping, subtype_anyof, subtype_array, subtype_boolean, subtype_null, subtype_number,
    subtype_object, subtype_string,
)
from oracle import agrees
from worked_schemas import (
    DISTINCT_PAIR, NMF_INPUT, NODE_ADDRESS, NODE_ADDRESS_STRICT, UNIQUE_ARRAY, WP_CATEGORY_061,
    WP_CATEGORY_062, california_housing,
)
from strategies import random_schema, schemas


def holds(s, t):
    return isinstance(is_subschema(s, t), Holds)


def fails(s, t):
    return isinstance(is_subschema(s, t), DoesNotHold)


def test_integer_number():
    assert holds({"type": "integer"}, {"type": "number"})
    assert fails({"type": "number"}, {"type": "integer"})


def test_wp_enum_evolution():
    assert holds(WP_CATEGORY_061, WP_CATEGORY_062)
    v = is_subschema(WP_CATEGORY_062, WP_CATEGORY_061)
    assert isinstance(v, DoesNotHold) and v.witness in ("stock", "handout")


def test_uninhabited_left():
    assert holds({"type": "number", "minimum": 5, "maximum": 0}, {"type": "string"})


def test_enum_order():
    assert holds({"enum": [1, 2]}, {"enum": [2, 1]})
    assert holds({"enum": [2, 1]}, {"enum": [1, 2]})


def test_equivalence_examples():
    assert isinstance(is_equivalent({"type": ["string", "null"]}, {"type": ["null", "string"]}), Holds)
    assert isinstance(is_equivalent({"type": "string"}, {"type": "number"}), DoesNotHold)


def test_node_address():
    assert holds(NODE_ADDRESS_STRICT, NODE_ADDRESS)
    assert fails(NODE_ADDRESS, NODE_ADDRESS_STRICT)


def test_california_housing():
    assert fails(california_housing(), NMF_INPUT)
    assert holds(california_housing(0.0), NMF_INPUT)
    assert subtype_array(california_housing(0.0), NMF_INPUT)


def test_distinct_pair_needs_a_length_bound():
    # draft-04 defaults additionalItems to {}, so [0, 1, 1] is a valid
    # DISTINCT_PAIR document that repeats an item.
    v = is_subschema(DISTINCT_PAIR, UNIQUE_ARRAY)
    assert isinstance(v, DoesNotHold) and v.rule == "array-uniqueItems"
    assert holds({**DISTINCT_PAIR, "additionalItems": False}, UNIQUE_ARRAY)
    assert holds({**DISTINCT_PAIR, "maxItems": 2}, UNIQUE_ARRAY)


def test_all_disjoint_items():
    assert allDisjointItems({**DISTINCT_PAIR, "minItems": 2, "maxItems": 2})
    assert not allDisjointItems({"type": "array", "items": [{"type": "number"}, {"type": "number"}],
                                 "maxItems": 2})
    # [DERIVED] ^a$ and ^b$ have an empty regex intersection.
    assert allDisjointItems({"type": "array", "maxItems": 2, "items": [
        {"type": "string", "pattern": "^a$"}, {"type": "string", "pattern": "^b$"}]})


def test_array_examples():
    assert not subtype_array({"type": "array"}, {"type": "array", "minItems": 1})
    assert subtype_array({"type": "array", "minItems": 1}, {"type": "array"})


def test_object_examples():
    assert subtype_object({"type": "object", "required": ["a", "b"]}, {"type": "object", "required": ["a"]})
    assert not subtype_object({"type": "object"}, {"type": "object", "required": ["a"]})


def test_primitive_rules():
    string = canonicalize({"type": "string", "pattern": "^[A-Za-z0-9.]+$"})
    assert subtype_string(string, canonicalize({"type": "string"}))
    assert not subtype_string(canonicalize({"type": "string"}), string)
    t, tf = {"type": "boolean", "enum": [True]}, {"type": "boolean", "enum": [True, False]}
    assert subtype_boolean(t, tf) and not subtype_boolean(tf, t)
    assert subtype_null({"type": "null"}, {"type": "null"})


def test_subtype_number_api():
    def cs(*pos):
        return NumberConstraintSet([schema2range(s) for s in pos])
    assert subtype_number(cs({"multipleOf": 4}), cs({"multipleOf": 2}))
    assert not subtype_number(cs({"multipleOf": 2}), cs({"multipleOf": 4}))


def test_anyof_examples():
    e = {"anyOf": [{"type": "null"}, {"type": "string", "pattern": ".+"}]}
    assert subtype_anyof(e, e)
    assert subtype_anyof({"anyOf": [{"type": "null"}]}, {"anyOf": [{"type": "null"}, {"type": "boolean"}]})
    # [DERIVED] sample points 0, 2.5, 5, 7.5, 10 all lie in one of the halves.
    assert subtype_anyof({"anyOf": [{"type": "number", "minimum": 0, "maximum": 10}]},
                         {"anyOf": [{"type": "number", "minimum": 0, "maximum": 5},
                                    {"type": "number", "minimum": 5, "maximum": 10}]})


def test_non_overlapping():
    assert nonOverlapping([{"type": "null"}, {"type": "string"}])
    assert not nonOverlapping([{"type": "number", "maximum": 1}, {"type": "number", "minimum": 1}])


def test_inhabited():
    assert inhabited(TOP) and not inhabited(BOTTOM)
    assert not inhabited({"type": "string", "enum": [1]})
    # [DERIVED] exhaustive over objects with at most one small key: required
    # a needs one property, maxProperties 0 forbids it.
    assert not inhabited({"type": "object", "required": ["a"], "maxProperties": 0})
    assert inhabited({"type": "object", "required": ["a"], "maxProperties": 1})


def test_inhabited_can_be_undetermined():
    s = {"allOf": [{"type": "array", "uniqueItems": True, "minItems": 3,
                    "items": {"enum": [1, 2, 3]}},
                   {"not": {"type": "array", "items": [{"enum": [1]}, {"enum": [2]}]}}]}
    try:
        assert inhabited(s)
    except Undetermined:
        pass


def test_directions():
    i, n = {"type": "integer"}, {"type": "number"}
    assert isinstance(check(i, n, "sub"), Holds)
    assert isinstance(check(n, i, "super"), Holds)
    assert isinstance(check(i, n, "equiv"), DoesNotHold)
    with pytest.raises(ValueError):
        check(i, n, "sideways")


def test_undecidable_tags():
    v = is_subschema({"$ref": "#"}, {})
    assert isinstance(v, Undecidable) and v.tag == "RecursiveRef"
    v = is_subschema({"type": "string", "pattern": "(a)\\1"}, {"type": "string", "pattern": "a"})
    assert isinstance(v, Undecidable) and v.tag == "NonRegularPattern"
    assert v.tag in TAGS


def test_time_budget_gives_capacity_limit():
    long = {"type": "string", "pattern": "^[a-z]{300}$"}
    v = is_subschema(long, {"type": "string", "maxLength": 400}, time_budget=1e-6)
    assert isinstance(v, Undecidable) and v.tag == "CapacityLimit"


def test_input_errors():
    with pytest.raises(InvalidSchema):
        is_subschema({"minLength": -1}, {})
    with pytest.raises(RefTargetMissing):
        is_subschema({"$ref": "#/definitions/x"}, {})


def test_verdict_json():
    assert is_subschema({}, {}).to_json() == {"verdict": "Holds"}
    j = is_subschema({"type": "null"}, {"type": "string"}).to_json()
    assert j["verdict"] == "DoesNotHold" and j["path"].startswith("/")


def test_witness_not_in_json():
    v = is_subschema(WP_CATEGORY_062, WP_CATEGORY_061)
    assert "witness" not in v.to_json()


@settings(max_examples=100, deadline=None)
@given(schemas)
def test_reflexive(s):
    assert isinstance(is_subschema(s, s), Holds)


@settings(max_examples=100, deadline=None)
@given(schemas)
def test_bottom_and_top(s):
    assert isinstance(is_subschema(BOTTOM, s), Holds)
    assert isinstance(is_subschema(s, TOP), Holds)


@settings(max_examples=60, deadline=None)
@given(schemas, schemas)
def test_matches_brute_force(s, t):
    assert agrees(is_subschema(s, t), s, t)


def test_transitivity_spot_check():
    rng = random.Random(3)
    seen = 0
    for _ in range(400):
        s = random_schema(rng)
        t = {"anyOf": [s, random_schema(rng)]}
        u = {"anyOf": [t, random_schema(rng)]} if rng.random() < 0.5 else random_schema(rng)
        if holds(s, t) and holds(t, u):
            seen += 1
            assert holds(s, u)
    assert seen >= 100
