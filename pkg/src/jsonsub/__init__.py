"""Subschema checking for JSON Schema draft-04.

>>> from jsonsub import is_subschema
>>> bool(is_subschema({"type": "integer"}, {"type": "number"}))
True
"""

from .budget import CapacityLimit, time_budget
from .canonicalizer import canonicalize, is_canonical, to_json
from .json_model import dumps, json_equal, loads
from .schema_model import (
    BOTTOM, TOP, DocumentStore, InvalidSchema, RecursiveRef, RefError, load_schema, resolve_refs,
    validate_meta,
)
from .simplifier import is_simplified, simplify
from .subtype import (
    DoesNotHold, Holds, Undecidable, Verdict, check, inhabited, is_equivalent, is_subschema, member,
    prepare,
)
from .validator import validate

__all__ = [
    "is_subschema", "is_equivalent", "check", "inhabited", "member", "prepare",
    "Verdict", "Holds", "DoesNotHold", "Undecidable",
    "canonicalize", "is_canonical", "simplify", "is_simplified", "to_json",
    "validate", "validate_meta", "load_schema", "resolve_refs", "DocumentStore",
    "InvalidSchema", "RefError", "RecursiveRef", "CapacityLimit", "time_budget",
    "TOP", "BOTTOM", "loads", "dumps", "json_equal",
]
__version__ = "0.1.0"
