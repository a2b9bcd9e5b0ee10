"""Raw draft-04 schemas: keyword tables, meta-validation and ``$ref`` resolution."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterator
from urllib.parse import urldefrag, urljoin, urlsplit
from urllib.request import url2pathname

from .json_model import (
    J_TYPES, InvalidJSON, JsonValue, PointerNotFound, PointerSyntax, escape_token,
    freeze, is_integral, is_number, load_file, loads, normalize, resolve_pointer, split_pointer,
)

Schema = dict

TOP: Schema = {}
BOTTOM: Schema = {"not": {}}

KEYWORDS: dict[str, tuple[str, ...]] = {
    "null": (),
    "boolean": (),
    "string": ("minLength", "maxLength", "pattern"),
    "number": ("minimum", "maximum", "exclusiveMinimum", "exclusiveMaximum", "multipleOf"),
    "integer": ("minimum", "maximum", "exclusiveMinimum", "exclusiveMaximum", "multipleOf"),
    "array": ("items", "additionalItems", "minItems", "maxItems", "uniqueItems"),
    "object": ("properties", "additionalProperties", "patternProperties", "minProperties",
               "maxProperties", "required", "dependencies"),
}

# Pattern has no default: an absent pattern is the universal language.
DEFAULTS: dict[str, Any] = {
    "minLength": 0,
    "minimum": float("-inf"),
    "maximum": float("inf"),
    "exclusiveMinimum": False,
    "exclusiveMaximum": False,
    "items": {},
    "additionalItems": {},
    "minItems": 0,
    "uniqueItems": False,
    "properties": {},
    "patternProperties": {},
    "additionalProperties": {},
    "minProperties": 0,
}

CONNECTIVES = ("enum", "anyOf", "allOf", "oneOf", "not")
LOGIC = ("anyOf", "allOf", "oneOf", "not")
VALIDATION_KEYWORDS = frozenset(
    {"type", *CONNECTIVES} | {k for ks in KEYWORDS.values() for k in ks})


def kw(t: str) -> tuple[str, ...]:
    return KEYWORDS[t]


def default(k: str):
    return DEFAULTS.get(k)


def dom(s: Schema) -> set[str]:
    return set(s)


def is_top(s) -> bool:
    return isinstance(s, dict) and not s


def is_bottom(s) -> bool:
    return isinstance(s, dict) and len(s) == 1 and "not" in s and s["not"] == {}


class SchemaError(ValueError):
    """Base class for schema loading failures."""


class InvalidSchema(SchemaError):
    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        shown = "; ".join(str(v) for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"schema is not valid draft-04: {shown}{more}")


class RefError(SchemaError):
    pass


class RecursiveRef(RefError):
    pass


class RefTargetMissing(RefError):
    pass


# ------------------------------------------------------------ meta-validation

@dataclass(frozen=True)
class Violation:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path or '/'}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)


def validate_meta(s: JsonValue) -> ValidationReport:
    """Check ``s`` against the draft-04 meta-schema rows for the validation keywords.

    Unknown keywords are ignored.  ``$ref`` siblings are still checked.
    """
    out: list[Violation] = []
    _meta(normalize(s), "", out)
    return ValidationReport(out)


def _nonneg_int(v) -> bool:
    return is_integral(v) and v >= 0


def _schema_array(v, path, out, nonempty=True):
    if not isinstance(v, list) or (nonempty and not v):
        out.append(Violation(path, "must be a non-empty array of schemas"))
        return
    for i, x in enumerate(v):
        _meta(x, f"{path}/{i}", out)


def _schema_map(v, path, out):
    if not isinstance(v, dict):
        out.append(Violation(path, "must be an object of schemas"))
        return
    for k, x in v.items():
        _meta(x, f"{path}/{escape_token(k)}", out)


def _string_set(v) -> bool:
    return (isinstance(v, list) and len(v) >= 1 and all(isinstance(x, str) for x in v)
            and len(set(v)) == len(v))


def _meta(s, path, out):
    if not isinstance(s, dict):
        out.append(Violation(path, "schema must be an object"))
        return
    bad = lambda k, msg: out.append(Violation(f"{path}/{k}", msg))  # noqa: E731
    if "$ref" in s and not isinstance(s["$ref"], str):
        bad("$ref", "must be a string")
    if "id" in s and not isinstance(s["id"], str):
        bad("id", "must be a string")
    if "type" in s:
        t = s["type"]
        if isinstance(t, str):
            if t not in J_TYPES:
                bad("type", f"unknown type {t!r}")
        elif isinstance(t, list):
            if not t or any(x not in J_TYPES for x in t if isinstance(x, str)) \
                    or not all(isinstance(x, str) for x in t) or len(set(t)) != len(t):
                bad("type", "must be a non-empty array of distinct type names")
        else:
            bad("type", "must be a type name or an array of them")
    if "enum" in s:
        e = s["enum"]
        if not isinstance(e, list) or not e:
            bad("enum", "must be a non-empty array")
        elif len({freeze(x) for x in e}) != len(e):
            bad("enum", "items must be unique")
    for k in ("anyOf", "allOf", "oneOf"):
        if k in s:
            _schema_array(s[k], f"{path}/{k}", out)
    if "not" in s:
        _meta(s["not"], f"{path}/not", out)
    for k in ("minLength", "maxLength", "minItems", "maxItems", "minProperties", "maxProperties"):
        if k in s and not _nonneg_int(s[k]):
            bad(k, "must be a non-negative integer")
    if "pattern" in s and not isinstance(s["pattern"], str):
        bad("pattern", "must be a string")
    for k in ("minimum", "maximum"):
        if k in s and not is_number(s[k]):
            bad(k, "must be a number")
    for k in ("exclusiveMinimum", "exclusiveMaximum", "uniqueItems"):
        if k in s and not isinstance(s[k], bool):
            bad(k, "must be a boolean")
    if s.get("exclusiveMinimum") is True and "minimum" not in s:
        bad("exclusiveMinimum", "requires minimum")
    if s.get("exclusiveMaximum") is True and "maximum" not in s:
        bad("exclusiveMaximum", "requires maximum")
    if "multipleOf" in s and not (is_number(s["multipleOf"]) and s["multipleOf"] > 0):
        bad("multipleOf", "must be a number greater than 0")
    if "items" in s:
        v = s["items"]
        if isinstance(v, list):
            _schema_array(v, f"{path}/items", out, nonempty=True)
        else:
            _meta(v, f"{path}/items", out)
    for k in ("additionalItems", "additionalProperties"):
        if k in s and not isinstance(s[k], bool):
            _meta(s[k], f"{path}/{k}", out)
    for k in ("properties", "patternProperties", "definitions"):
        if k in s:
            _schema_map(s[k], f"{path}/{k}", out)
    if "required" in s and not _string_set(s["required"]):
        bad("required", "must be a non-empty array of distinct strings")
    if "dependencies" in s:
        deps = s["dependencies"]
        if not isinstance(deps, dict):
            bad("dependencies", "must be an object")
        else:
            for k, v in deps.items():
                sub = f"{path}/dependencies/{escape_token(k)}"
                if isinstance(v, list):
                    if not _string_set(v):
                        out.append(Violation(sub, "must be a non-empty array of distinct strings"))
                else:
                    _meta(v, sub, out)


# ------------------------------------------------------------ document store

META_SCHEMA_URI = "http://json-schema.org/draft-04/schema"


@lru_cache(maxsize=1)
def _load_meta_schema() -> dict:
    # Shared between stores; nothing below mutates stored documents.
    text = resources.files("jsonsub").joinpath("data/draft-04-schema.json").read_text("utf-8")
    return loads(text)


class DocumentStore:
    """Documents addressable by URI; ``id`` keywords inside them are indexed too.

    Only pre-registered documents and local ``file:`` URIs are served.
    """

    def __init__(self, documents: dict[str, JsonValue] | None = None, allow_files: bool = True):
        self._docs: dict[str, JsonValue] = {}
        self._ids: dict[str, tuple[JsonValue, str]] = {}
        self.allow_files = allow_files
        self.add(META_SCHEMA_URI, _load_meta_schema())
        for uri, doc in (documents or {}).items():
            self.add(uri, doc)

    def add(self, uri: str, doc: JsonValue) -> None:
        uri = urldefrag(uri)[0]
        self._docs[uri] = doc
        self._index(doc, uri)

    def _index(self, node, base):
        if isinstance(node, dict):
            if isinstance(node.get("id"), str):
                outer = base
                base = urljoin(base, node["id"])
                base = base[:-1] if base.endswith("#") else base
                self._ids.setdefault(base, (node, outer))
                doc_uri = urldefrag(base)[0]
                if doc_uri not in self._docs and not urldefrag(base)[1]:
                    self._docs[doc_uri] = node
            for k, v in node.items():
                if k in ("enum",):
                    continue
                self._index(v, base)
        elif isinstance(node, list):
            for v in node:
                self._index(v, base)

    def document(self, uri: str) -> JsonValue:
        uri = urldefrag(uri)[0]
        if uri in self._docs:
            return self._docs[uri]
        parts = urlsplit(uri)
        if parts.scheme == "file" and self.allow_files:
            path = url2pathname(parts.path)
            try:
                doc = load_file(path)
            except OSError as exc:
                raise RefTargetMissing(f"cannot read {uri}: {exc}") from exc
            except InvalidJSON as exc:
                raise RefTargetMissing(f"{uri} is not valid JSON: {exc}") from exc
            self.add(uri, doc)
            return doc
        raise RefTargetMissing(f"no document for {uri!r} (remote references are not fetched)")

    def resolve(self, ref: str, base: str) -> tuple[JsonValue, str, str]:
        """Return ``(target, uri, scope)``.

        ``uri`` names the target (with fragment) and ``scope`` is the base URI
        in effect around it; the target's own ``id`` is not yet applied.
        """
        full = urljoin(base, ref) if base else ref
        full = full[:-1] if full.endswith("#") else full
        if full in self._ids:
            node, scope = self._ids[full]
            return node, full, scope
        doc_uri, frag = urldefrag(full)
        doc = self.document(doc_uri)
        if frag and not frag.startswith("/"):
            raise RefTargetMissing(f"no subschema with id {full!r}")
        try:
            tokens = split_pointer("#" + frag)
        except PointerSyntax as exc:
            raise RefTargetMissing(f"{full}: {exc}") from exc
        node, scope = doc, doc_uri
        for i, token in enumerate(tokens):
            if isinstance(node, dict) and isinstance(node.get("id"), str):
                scope = urljoin(scope, node["id"])
            try:
                node = resolve_pointer(node, "#/" + escape_token(token))
            except (PointerNotFound, PointerSyntax) as exc:
                raise RefTargetMissing(f"{full}: {exc}") from exc
        return node, full, scope


def file_uri(path) -> str:
    return Path(os.path.abspath(path)).as_uri()


def inline_base() -> str:
    """Base URI for schemas given inline: relative file refs resolve against the working directory."""
    return file_uri("__inline__.json")


# Positions (keyword -> shape) at which subschemas occur.
_SUB_SINGLE = ("not", "additionalItems", "additionalProperties")
_SUB_LIST = ("allOf", "anyOf", "oneOf")
_SUB_MAP = ("properties", "patternProperties")


def resolve_refs(s: Schema, store: DocumentStore | None = None, base: str = "") -> Schema:
    """Replace every ``$ref`` by its target, recursively.

    Siblings of ``$ref`` are ignored, as in draft-04.  ``definitions`` are
    dropped from the result since nothing can refer to them any more.
    """
    store = store or DocumentStore()
    if base and urldefrag(base)[0] not in store._docs:
        store.add(base, s)
    elif not base:
        base = inline_base()
        store.add(base, s)
    memo: dict[str, Schema] = {}
    return _resolve(s, base, store, set(), memo)


def _resolve(s, base, store, active, memo):
    if not isinstance(s, dict):
        return s
    if isinstance(s.get("id"), str):
        base = urljoin(base, s["id"])
    if "$ref" in s:
        ref = s["$ref"]
        if not isinstance(ref, str):
            raise RefTargetMissing("$ref must be a string")
        target, uri, scope = store.resolve(ref, base)
        if uri in memo:
            return memo[uri]
        if uri in active:
            raise RecursiveRef(f"recursive reference to {uri}")
        active.add(uri)
        try:
            resolved = _resolve(target, scope, store, active, memo)
        finally:
            active.discard(uri)
        memo[uri] = resolved
        return resolved
    out = {}
    for k, v in s.items():
        if k == "definitions":
            continue
        if k in _SUB_SINGLE and isinstance(v, dict):
            out[k] = _resolve(v, base, store, active, memo)
        elif k in _SUB_LIST and isinstance(v, list):
            out[k] = [_resolve(x, base, store, active, memo) for x in v]
        elif k in _SUB_MAP and isinstance(v, dict):
            out[k] = {pk: _resolve(x, base, store, active, memo) for pk, x in v.items()}
        elif k == "items":
            if isinstance(v, list):
                out[k] = [_resolve(x, base, store, active, memo) for x in v]
            else:
                out[k] = _resolve(v, base, store, active, memo)
        elif k == "dependencies" and isinstance(v, dict):
            out[k] = {dk: (_resolve(x, base, store, active, memo) if isinstance(x, dict) else x)
                      for dk, x in v.items()}
        else:
            out[k] = v
    return out


def has_refs(s) -> bool:
    if isinstance(s, dict):
        if "$ref" in s:
            return True
        return any(has_refs(v) for k, v in s.items() if k not in ("enum", "definitions"))
    if isinstance(s, list):
        return any(has_refs(v) for v in s)
    return False


def load_schema(source, store: DocumentStore | None = None, base: str | None = None) -> Schema:
    """Parse, meta-validate and ref-resolve a schema given as a path, JSON text or value."""
    if isinstance(source, (str, bytes)) and not isinstance(source, Path) and _looks_like_json(source):
        doc = loads(source)
        base = base or ""
    elif isinstance(source, (str, Path)):
        doc = load_file(source)
        base = base or file_uri(source)
    else:
        doc = normalize(source)
        base = base or ""
    report = validate_meta(doc)
    if not report:
        raise InvalidSchema(report.violations)
    return resolve_refs(doc, store, base)


def _looks_like_json(text) -> bool:
    if isinstance(text, bytes):
        text = text.decode("utf-8", "replace")
    return text.lstrip()[:1] in ("{", "[", '"') or text.strip() in ("true", "false", "null")


__all__ = [
    "Schema", "TOP", "BOTTOM", "KEYWORDS", "DEFAULTS", "CONNECTIVES", "LOGIC",
    "VALIDATION_KEYWORDS", "kw", "default", "dom", "is_top", "is_bottom",
    "SchemaError", "InvalidSchema", "RefError", "RecursiveRef", "RefTargetMissing",
    "Violation", "ValidationReport", "validate_meta", "DocumentStore", "resolve_refs",
    "has_refs", "load_schema", "file_uri", "inline_base",
]
