"""Parser for the regular subset of ECMA-262 patterns.

The AST is built from tuples:

``("set", CharSet)``, ``("cat", [nodes])``, ``("alt", [nodes])``,
``("rep", node, lo, hi_or_None)``, ``("bol",)``, ``("eol",)``.
The empty concatenation ``("cat", [])`` is epsilon.
"""

from __future__ import annotations

from ..budget import REPEAT_BOUND
from .charset import ANY, DIGIT, EMPTY, SPACE, WORD, CharSet


class RegexError(ValueError):
    """Base class for pattern errors."""


class PatternSyntaxError(RegexError):
    pass


class UnsupportedPattern(RegexError):
    """The pattern uses a non-regular or unsupported feature."""


EPS = ("cat", [])

_CLASS_ESCAPES = {
    "d": DIGIT, "D": ~DIGIT,
    "w": WORD, "W": ~WORD,
    "s": SPACE, "S": ~SPACE,
}
_CHAR_ESCAPES = {
    "t": "\t", "n": "\n", "v": "\x0b", "f": "\x0c", "r": "\r", "0": "\0",
    "a": "\x07",
}


def parse(pattern: str):
    p = _Parser(pattern)
    node = p.alternation()
    if p.i < len(pattern):
        raise PatternSyntaxError(f"unbalanced ')' at offset {p.i} in {pattern!r}")
    return node


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def peek(self) -> str | None:
        return self.s[self.i] if self.i < len(self.s) else None

    def error(self, msg: str):
        raise PatternSyntaxError(f"{msg} at offset {self.i} in {self.s!r}")

    def alternation(self):
        branches = [self.concatenation()]
        while self.peek() == "|":
            self.i += 1
            branches.append(self.concatenation())
        return branches[0] if len(branches) == 1 else ("alt", branches)

    def concatenation(self):
        items = []
        while self.peek() is not None and self.peek() not in "|)":
            items.append(self.quantified())
        return items[0] if len(items) == 1 else ("cat", items)

    def quantified(self):
        start = self.i
        atom = self.atom()
        while True:
            q = self.quantifier()
            if q is None:
                return atom
            if atom[0] in ("bol", "eol"):
                self.i = start
                self.error("nothing to repeat")
            lo, hi = q
            if lo > REPEAT_BOUND or (hi is not None and hi > REPEAT_BOUND):
                raise UnsupportedPattern(f"repetition bound above {REPEAT_BOUND} in {self.s!r}")
            if hi is not None and hi < lo:
                self.error("numbers out of order in {} quantifier")
            if self.peek() == "?":
                self.i += 1  # lazy quantifiers match the same language
            atom = ("rep", atom, lo, hi)
            # ECMA rejects stacked quantifiers like a** or a+*.
            if self.peek() is not None and self.peek() in "*+?" :
                self.error("nothing to repeat")
            if self.peek() == "{" and self._braces() is not None:
                self.error("nothing to repeat")

    def quantifier(self):
        c = self.peek()
        if c == "*":
            self.i += 1
            return 0, None
        if c == "+":
            self.i += 1
            return 1, None
        if c == "?":
            self.i += 1
            return 0, 1
        if c == "{":
            q = self._braces()
            if q is not None:
                self.i = q[2]
                return q[0], q[1]
        return None

    def _braces(self):
        """Parse ``{m}``, ``{m,}`` or ``{m,n}`` at the cursor without consuming it."""
        s, j = self.s, self.i + 1
        k = j
        while k < len(s) and s[k].isdigit():
            k += 1
        if k == j:
            return None
        lo = int(s[j:k])
        if k < len(s) and s[k] == "}":
            return lo, lo, k + 1
        if k >= len(s) or s[k] != ",":
            return None
        k += 1
        m = k
        while k < len(s) and s[k].isdigit():
            k += 1
        if k >= len(s) or s[k] != "}":
            return None
        hi = int(s[m:k]) if k > m else None
        return lo, hi, k + 1

    def atom(self):
        c = self.peek()
        if c is None:
            self.error("unexpected end of pattern")
        if c == "(":
            return self.group()
        if c == "[":
            return ("set", self.char_class())
        if c == ".":
            self.i += 1
            return ("set", ANY)
        if c == "^":
            self.i += 1
            return ("bol",)
        if c == "$":
            self.i += 1
            return ("eol",)
        if c == "\\":
            return self.escape()
        if c in "*+?":
            self.error("nothing to repeat")
        if c == "{" and self._braces() is not None:
            self.error("nothing to repeat")
        self.i += 1
        return ("set", CharSet.of(c))

    def group(self):
        self.i += 1
        if self.s.startswith("?", self.i):
            if self.s.startswith("?:", self.i):
                self.i += 2
            elif self.s.startswith(("?=", "?!", "?<=", "?<!"), self.i):
                raise UnsupportedPattern(f"look-around in {self.s!r}")
            elif self.s.startswith("?<", self.i):
                raise UnsupportedPattern(f"named group in {self.s!r}")
            else:
                self.error("invalid group")
        node = self.alternation()
        if self.peek() != ")":
            self.error("missing ')'")
        self.i += 1
        return node

    def escape(self):
        """Escape outside a class; returns an AST node."""
        self.i += 1
        c = self.peek()
        if c is None:
            self.error("trailing backslash")
        if c in "bB":
            raise UnsupportedPattern(f"word boundary in {self.s!r}")
        if c in "123456789":
            raise UnsupportedPattern(f"backreference in {self.s!r}")
        if c == "k":
            raise UnsupportedPattern(f"named backreference in {self.s!r}")
        if c in _CLASS_ESCAPES:
            self.i += 1
            return ("set", _CLASS_ESCAPES[c])
        return ("set", CharSet.of(self.char_escape()))

    def char_escape(self) -> int:
        """Decode a single-character escape whose letter is at the cursor."""
        c = self.s[self.i]
        self.i += 1
        if c in _CHAR_ESCAPES:
            if c == "0" and self.peek() is not None and self.peek().isdigit():
                raise UnsupportedPattern(f"octal escape in {self.s!r}")
            return ord(_CHAR_ESCAPES[c])
        if c == "c":
            nxt = self.peek()
            if nxt is not None and nxt.isascii() and nxt.isalpha():
                self.i += 1
                return ord(nxt) % 32
            self.i -= 1
            return ord("\\")  # ECMA annex B: a lone \c is a literal backslash
        if c == "x":
            return self._hex(2)
        if c == "u":
            return self._hex(4)
        if c.isascii() and c.isalnum():
            raise UnsupportedPattern(f"unknown escape \\{c} in {self.s!r}")
        return ord(c)

    def _hex(self, n: int) -> int:
        digits = self.s[self.i:self.i + n]
        if len(digits) != n or any(ch not in "0123456789abcdefABCDEF" for ch in digits):
            self.error("malformed hex escape")
        self.i += n
        return int(digits, 16)

    def char_class(self) -> CharSet:
        self.i += 1
        negate = self.peek() == "^"
        if negate:
            self.i += 1
        acc = EMPTY
        while True:
            c = self.peek()
            if c is None:
                self.error("unterminated character class")
            if c == "]":
                self.i += 1
                break
            lo = self.class_atom()
            if self.peek() == "-" and self.i + 1 < len(self.s) and self.s[self.i + 1] != "]":
                self.i += 1
                hi = self.class_atom()
                if isinstance(lo, CharSet) or isinstance(hi, CharSet):
                    # ECMA annex B: a class escape next to '-' makes the '-' literal
                    for part in (lo, hi):
                        acc |= part if isinstance(part, CharSet) else CharSet.of(part)
                    acc |= CharSet.of("-")
                    continue
                if hi < lo:
                    self.error("range out of order in character class")
                acc |= CharSet.of((lo, hi))
            else:
                acc |= lo if isinstance(lo, CharSet) else CharSet.of(lo)
        return ~acc if negate else acc

    def class_atom(self):
        """A class member: a code point or, for \\d-style escapes, a CharSet."""
        c = self.s[self.i]
        if c != "\\":
            self.i += 1
            return ord(c)
        self.i += 1
        c = self.peek()
        if c is None:
            self.error("trailing backslash")
        if c in _CLASS_ESCAPES:
            self.i += 1
            return _CLASS_ESCAPES[c]
        if c == "b":
            self.i += 1
            return 8
        if c in "123456789":
            raise UnsupportedPattern(f"backreference in {self.s!r}")
        if c == "-":
            self.i += 1
            return ord("-")
        return self.char_escape()
