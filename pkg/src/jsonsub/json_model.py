"""JSON values with exact numbers, type tags, structural equality and pointers.

Numbers are ``int`` or ``fractions.Fraction``; floats never enter the model
(``normalize`` converts them through their decimal repr).  Booleans are
Python ``bool`` and must always be tested before numbers because ``bool`` is
a subclass of ``int``.
"""

from __future__ import annotations

import json
import math
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Any, Union
from urllib.parse import unquote

JsonValue = Union[None, bool, int, Fraction, str, list, dict]


class JsonType(str, Enum):
    NULL = "null"
    BOOLEAN = "boolean"
    NUMBER = "number"
    INTEGER = "integer"
    STRING = "string"
    ARRAY = "array"
    OBJECT = "object"

    def __str__(self) -> str:
        return self.value


J_TYPES = tuple(t.value for t in JsonType)


class JsonModelError(ValueError):
    """Base class for errors raised by this module."""


class InvalidJSON(JsonModelError):
    pass


class PointerSyntax(JsonModelError):
    pass


class PointerNotFound(JsonModelError, LookupError):
    pass


def is_number(v: Any) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def is_integral(v: Any) -> bool:
    if isinstance(v, bool):
        return False
    if isinstance(v, int):
        return True
    return isinstance(v, Fraction) and v.denominator == 1


def typeof(v: JsonValue, integers: bool = False) -> str:
    """Return the type tag of ``v``.

    With ``integers=True`` integral numbers (``1`` and ``1.0`` alike) report
    ``"integer"``; otherwise every number reports ``"number"``.
    """
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "boolean"
    if isinstance(v, (int, Fraction)):
        return "integer" if integers and is_integral(v) else "number"
    if isinstance(v, str):
        return "string"
    if isinstance(v, list):
        return "array"
    if isinstance(v, dict):
        return "object"
    raise TypeError(f"not a JSON value: {type(v).__name__}")


def json_equal(a: JsonValue, b: JsonValue) -> bool:
    if isinstance(a, bool) or isinstance(b, bool):
        return isinstance(a, bool) and isinstance(b, bool) and a == b
    if is_number(a) or is_number(b):
        return is_number(a) and is_number(b) and a == b
    if isinstance(a, list):
        return (isinstance(b, list) and len(a) == len(b)
                and all(json_equal(x, y) for x, y in zip(a, b)))
    if isinstance(a, dict):
        return (isinstance(b, dict) and a.keys() == b.keys()
                and all(json_equal(a[k], b[k]) for k in a))
    return type(a) is type(b) and a == b


def freeze(v: JsonValue) -> tuple:
    """A hashable key such that ``freeze(a) == freeze(b)`` iff ``json_equal(a, b)``."""
    if v is None:
        return ("null",)
    if isinstance(v, bool):
        return ("boolean", v)
    if is_number(v):
        return ("number", Fraction(v))
    if isinstance(v, str):
        return ("string", v)
    if isinstance(v, list):
        return ("array", tuple(freeze(x) for x in v))
    if isinstance(v, dict):
        return ("object", frozenset((k, freeze(x)) for k, x in v.items()))
    raise TypeError(f"not a JSON value: {type(v).__name__}")


def unique(values: list) -> list:
    """Drop json_equal duplicates, keeping first occurrences."""
    seen, out = set(), []
    for v in values:
        key = freeze(v)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


# ---------------------------------------------------------------- parsing

def _reject_constant(name: str):
    raise InvalidJSON(f"{name} is not valid JSON")


def _unique_keys(pairs: list) -> dict:
    out = dict(pairs)
    if len(out) != len(pairs):
        seen = set()
        dup = next(k for k, _ in pairs if k in seen or seen.add(k))
        raise InvalidJSON(f"duplicate object key {dup!r}")
    return out


def loads(text: str | bytes) -> JsonValue:
    """Parse JSON text keeping every number exact; duplicate keys are an error."""
    try:
        return json.loads(text, parse_float=Fraction, parse_int=int,
                          parse_constant=_reject_constant, object_pairs_hook=_unique_keys)
    except json.JSONDecodeError as exc:
        raise InvalidJSON(str(exc)) from exc
    except UnicodeDecodeError as exc:
        raise InvalidJSON(str(exc)) from exc


def load_file(path) -> JsonValue:
    with open(path, "rb") as fh:
        return loads(fh.read())


def normalize(v: Any) -> JsonValue:
    """Convert a Python structure (possibly holding floats or tuples) into the model."""
    if v is None or isinstance(v, (bool, str, Fraction)):
        return v
    if isinstance(v, int):
        return int(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise InvalidJSON(f"{v!r} is not a JSON number")
        return Fraction(repr(v))
    if isinstance(v, Decimal):
        return Fraction(v)
    if isinstance(v, (list, tuple)):
        return [normalize(x) for x in v]
    if isinstance(v, dict):
        out = {}
        for k, x in v.items():
            if not isinstance(k, str):
                raise InvalidJSON(f"object key {k!r} is not a string")
            out[k] = normalize(x)
        return out
    raise InvalidJSON(f"not a JSON value: {type(v).__name__}")


# ---------------------------------------------------------- serialization

def number_text(q) -> str:
    """Exact decimal text for terminating rationals; nearest double otherwise."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    den, twos, fives = q.denominator, 0, 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return repr(float(q))
    scale = max(twos, fives)
    digits = str(abs(q.numerator) * 10 ** scale // q.denominator).rjust(scale + 1, "0")
    sign = "-" if q < 0 else ""
    return f"{sign}{digits[:-scale]}.{digits[-scale:]}"


def dumps(v: Any, indent: int | None = None, sort_keys: bool = False) -> str:
    """Serialize a model value.  Objects with a ``to_json`` method are converted first."""
    parts: list[str] = []
    _dump(v, parts, indent, sort_keys, 0)
    return "".join(parts)


def _dump(v, out, indent, sort_keys, level):
    if hasattr(v, "to_json"):
        v = v.to_json()
    if v is None:
        out.append("null")
    elif v is True:
        out.append("true")
    elif v is False:
        out.append("false")
    elif isinstance(v, (int, Fraction)):
        out.append(number_text(v))
    elif isinstance(v, float):
        out.append(number_text(Fraction(repr(v))))
    elif isinstance(v, str):
        out.append(json.dumps(v, ensure_ascii=False))
    elif isinstance(v, (list, tuple)):
        if not v:
            out.append("[]")
            return
        sep, pad, end = _layout(indent, level)
        out.append("[" + pad)
        for i, x in enumerate(v):
            if i:
                out.append(sep)
            _dump(x, out, indent, sort_keys, level + 1)
        out.append(end + "]")
    elif isinstance(v, dict):
        if not v:
            out.append("{}")
            return
        sep, pad, end = _layout(indent, level)
        items = [(str(k.to_json()) if hasattr(k, "to_json") else k, x) for k, x in v.items()]
        if sort_keys:
            items.sort(key=lambda kv: kv[0])
        out.append("{" + pad)
        for i, (k, x) in enumerate(items):
            if i:
                out.append(sep)
            out.append(json.dumps(k, ensure_ascii=False) + ": ")
            _dump(x, out, indent, sort_keys, level + 1)
        out.append(end + "}")
    else:
        raise TypeError(f"cannot serialize {type(v).__name__}")


def _layout(indent, level):
    if indent is None:
        return ", ", "", ""
    inner = "\n" + " " * (indent * (level + 1))
    return "," + inner, inner, "\n" + " " * (indent * level)


# ---------------------------------------------------------------- pointers

def split_pointer(pointer: str) -> list[str]:
    """Decode a ``#``-fragment (or bare) JSON Pointer into reference tokens."""
    if not isinstance(pointer, str):
        raise PointerSyntax(f"pointer must be text, got {type(pointer).__name__}")
    text = pointer[1:] if pointer.startswith("#") else pointer
    text = unquote(text)
    if text == "":
        return []
    if not text.startswith("/"):
        raise PointerSyntax(f"pointer {pointer!r} must start with '#/' or '/'")
    tokens = []
    for raw in text[1:].split("/"):
        i = raw.find("~")
        while i != -1:
            if i + 1 >= len(raw) or raw[i + 1] not in "01":
                raise PointerSyntax(f"bad escape in pointer {pointer!r}")
            i = raw.find("~", i + 2)
        tokens.append(raw.replace("~1", "/").replace("~0", "~"))
    return tokens


def escape_token(token: str) -> str:
    return token.replace("~", "~0").replace("/", "~1")


def resolve_pointer(root: JsonValue, pointer: str) -> JsonValue:
    node = root
    for token in split_pointer(pointer):
        if isinstance(node, dict):
            if token not in node:
                raise PointerNotFound(f"{pointer!r}: no member {token!r}")
            node = node[token]
        elif isinstance(node, list):
            if not token.isdigit() or (len(token) > 1 and token[0] == "0"):
                raise PointerNotFound(f"{pointer!r}: {token!r} is not an array index")
            index = int(token)
            if index >= len(node):
                raise PointerNotFound(f"{pointer!r}: index {index} out of range")
            node = node[index]
        else:
            raise PointerNotFound(f"{pointer!r}: cannot descend into a {typeof(node)}")
    return node
