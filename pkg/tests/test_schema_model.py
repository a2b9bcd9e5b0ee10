import pytest

from jsonsub.schema_model import (
    DEFAULTS, KEYWORDS, DocumentStore, InvalidSchema, RecursiveRef, RefTargetMissing,
    default, dom, has_refs, kw, load_schema, resolve_refs, validate_meta,
)

# The example schema printed with each keyword group of the draft-04 keyword table.
TABLE_EXAMPLES = [
    {"type": "string", "minLength": 1, "pattern": "[a-z]*"},
    {"type": "number", "minimum": 0.0, "multipleOf": 0.1},
    {"type": "array", "items": {"type": "string"}, "minItems": 1, "uniqueItems": True},
    {"type": "object", "properties": {"a": {"type": "string"}, "b": {"enum": [0, 1]}}},
    {"anyOf": [{"type": "string"}, {"$ref": "#/some/type"}]},
]


@pytest.mark.parametrize("s", TABLE_EXAMPLES)
def test_table_examples_are_meta_valid(s):
    assert validate_meta(s)


def test_well_formed_string_schema():
    assert len(validate_meta({"type": "string", "minLength": 1})) == 0


def test_negative_min_length():
    report = validate_meta({"type": "string", "minLength": -1})
    assert [v.path for v in report] == ["/minLength"]


def test_unknown_type_name():
    report = validate_meta({"type": "strng"})
    assert [v.path for v in report] == ["/type"]


@pytest.mark.parametrize("s, path", [
    ({"multipleOf": 0}, "/multipleOf"),
    ({"required": []}, "/required"),
    ({"required": ["a", "a"]}, "/required"),
    ({"enum": []}, "/enum"),
    ({"allOf": []}, "/allOf"),
    ({"type": ["string", "string"]}, "/type"),
    ({"properties": {"x": {"maxItems": 1.5}}}, "/properties/x/maxItems"),
    ({"exclusiveMinimum": 1}, "/exclusiveMinimum"),
    ({"dependencies": {"a": []}}, "/dependencies/a"),
])
def test_violations(s, path):
    assert path in [v.path for v in validate_meta(s)]


def test_unknown_keywords_ignored():
    assert validate_meta({"description": 5, "x-vendor": [], "type": "null"})


def test_keyword_table():
    assert kw("string") == ("minLength", "maxLength", "pattern")
    assert kw("integer") == kw("number")
    assert kw("null") == () and kw("boolean") == ()
    assert set(KEYWORDS) == {"null", "boolean", "string", "number", "integer", "array", "object"}
    assert default("minimum") == float("-inf")
    assert default("maximum") == float("inf")
    assert default("minLength") == 0
    assert default("maxLength") is None
    assert DEFAULTS["additionalProperties"] == {}


def test_dom():
    assert dom({"type": "string", "pattern": "a"}) == {"type", "pattern"}
    assert dom({}) == set()
    assert dom({"allOf": [{}], "enum": [1]}) == {"allOf", "enum"}


def test_resolve_one_step():
    s = {"definitions": {"a": {"type": "null"}},
         "properties": {"x": {"$ref": "#/definitions/a"}}, "type": "object"}
    assert resolve_refs(s) == {"properties": {"x": {"type": "null"}}, "type": "object"}


def test_resolve_root_is_recursive():
    with pytest.raises(RecursiveRef):
        resolve_refs({"$ref": "#"})


def test_resolve_indirect_cycle():
    s = {"definitions": {"a": {"items": {"$ref": "#/definitions/a"}}},
         "properties": {"x": {"$ref": "#/definitions/a"}}}
    with pytest.raises(RecursiveRef):
        resolve_refs(s)


def test_resolve_chain():
    # [DERIVED] chased by hand: a -> b -> {"type": "number"}.
    s = {"definitions": {"a": {"$ref": "#/definitions/b"}, "b": {"type": "number"}},
         "properties": {"x": {"$ref": "#/definitions/a"}}}
    assert resolve_refs(s) == {"properties": {"x": {"type": "number"}}}


def test_resolve_shared_target_twice_is_not_recursion():
    s = {"definitions": {"n": {"type": "null"}},
         "items": [{"$ref": "#/definitions/n"}, {"$ref": "#/definitions/n"}]}
    assert resolve_refs(s) == {"items": [{"type": "null"}, {"type": "null"}]}


def test_ref_siblings_ignored():
    s = {"definitions": {"n": {"type": "null"}},
         "not": {"$ref": "#/definitions/n", "type": "string"}}
    assert resolve_refs(s) == {"not": {"type": "null"}}


def test_missing_target():
    with pytest.raises(RefTargetMissing):
        resolve_refs({"not": {"$ref": "#/definitions/nope"}})


def test_remote_refs_need_a_preloaded_document():
    s = {"items": {"$ref": "http://example.com/s.json#/definitions/x"}}
    with pytest.raises(RefTargetMissing):
        resolve_refs(s)
    store = DocumentStore({"http://example.com/s.json": {"definitions": {"x": {"type": "null"}}}})
    assert resolve_refs(s, store) == {"items": {"type": "null"}}


def test_id_changes_resolution_scope():
    store = DocumentStore({"http://x.test/folder/item.json": {"type": "integer"}})
    s = {"id": "http://x.test/", "items": {"id": "folder/", "items": {"$ref": "item.json"}}}
    assert resolve_refs(s, store)["items"]["items"] == {"type": "integer"}


def test_meta_schema_reference():
    out = resolve_refs({"not": {"$ref": "http://json-schema.org/draft-04/schema#/definitions/positiveInteger"}})
    assert out["not"]["type"] == "integer"


def test_resolve_is_identity_on_ref_free_schemas():
    s = {"type": "object", "properties": {"a": {"items": [{"type": "null"}]}}}
    assert not has_refs(s)
    assert resolve_refs(s) == s
    assert resolve_refs(resolve_refs(s)) == s


def test_no_refs_survive():
    s = {"definitions": {"a": {"type": "null"}, "b": {"anyOf": [{"$ref": "#/definitions/a"}]}},
         "patternProperties": {"x": {"$ref": "#/definitions/b"}},
         "dependencies": {"k": {"$ref": "#/definitions/a"}, "j": ["k"]}}
    assert not has_refs(resolve_refs(s))


def test_enum_values_are_data():
    s = {"enum": [{"$ref": "#"}]}
    assert resolve_refs(s) == s


def test_load_schema_rejects_meta_invalid():
    with pytest.raises(InvalidSchema):
        load_schema({"minLength": "3"})


def test_load_schema_from_text_and_file(tmp_path):
    p = tmp_path / "s.json"
    p.write_text('{"definitions":{"a":{"type":"null"}},"items":{"$ref":"#/definitions/a"}}')
    assert load_schema(p) == {"items": {"type": "null"}}
    assert load_schema(p.read_text()) == {"items": {"type": "null"}}


def test_file_refs_between_files(tmp_path):
    (tmp_path / "b.json").write_text('{"definitions":{"x":{"type":"boolean"}}}')
    (tmp_path / "a.json").write_text('{"items":{"$ref":"b.json#/definitions/x"}}')
    assert load_schema(tmp_path / "a.json") == {"items": {"type": "boolean"}}
