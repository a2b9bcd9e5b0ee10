"""Sets of Unicode code points as sorted, disjoint, non-adjacent ranges."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

MAX_CP = 0x10FFFF


@dataclass(frozen=True)
class CharSet:
    ranges: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def of(*items) -> "CharSet":
        """Build from characters, code points or ``(lo, hi)`` pairs."""
        rs = []
        for it in items:
            if isinstance(it, str):
                rs.extend((ord(c), ord(c)) for c in it)
            elif isinstance(it, int):
                rs.append((it, it))
            else:
                lo, hi = it
                rs.append((ord(lo) if isinstance(lo, str) else lo,
                           ord(hi) if isinstance(hi, str) else hi))
        return CharSet(_normalize(rs))

    def __bool__(self) -> bool:
        return bool(self.ranges)

    def __contains__(self, cp) -> bool:
        if isinstance(cp, str):
            cp = ord(cp)
        i = bisect_right(self.ranges, (cp, MAX_CP + 1)) - 1
        return i >= 0 and self.ranges[i][0] <= cp <= self.ranges[i][1]

    def __or__(self, other: "CharSet") -> "CharSet":
        return CharSet(_normalize(self.ranges + other.ranges))

    def __and__(self, other: "CharSet") -> "CharSet":
        out, i, j = [], 0, 0
        a, b = self.ranges, other.ranges
        while i < len(a) and j < len(b):
            lo, hi = max(a[i][0], b[j][0]), min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return CharSet(tuple(out))

    def __invert__(self) -> "CharSet":
        out, nxt = [], 0
        for lo, hi in self.ranges:
            if lo > nxt:
                out.append((nxt, lo - 1))
            nxt = hi + 1
        if nxt <= MAX_CP:
            out.append((nxt, MAX_CP))
        return CharSet(tuple(out))

    def __sub__(self, other: "CharSet") -> "CharSet":
        return self & ~other

    def size(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.ranges)

    def first(self) -> int:
        return self.ranges[0][0]

    def chars(self, limit: int | None = None):
        """Yield distinct members, at most ``limit`` of them.

        Lowercase letters come first, then other printable ASCII, then the rest
        in code point order.
        """
        n = 0
        seen_bands = []
        for band in (CharSet(((0x61, 0x7A),)), CharSet(((0x20, 0x7E),)), ANY):
            part = self & band
            for prev in seen_bands:
                part = part - prev
            seen_bands.append(band)
            for lo, hi in part.ranges:
                for cp in range(lo, hi + 1):
                    if limit is not None and n >= limit:
                        return
                    yield chr(cp)
                    n += 1

    def sample(self) -> str:
        """A representative member, preferring printable ASCII."""
        for lo, hi in self.ranges:
            if hi >= 0x61 and lo <= 0x7A:
                return chr(max(lo, 0x61))
        for lo, hi in self.ranges:
            if hi >= 0x20 and lo <= 0x7E:
                return chr(max(lo, 0x20))
        return chr(self.first())


def _normalize(rs) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for lo, hi in sorted(rs):
        if lo > hi:
            continue
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


EMPTY = CharSet()
ANY = CharSet(((0, MAX_CP),))
DIGIT = CharSet.of(("0", "9"))
WORD = CharSet.of(("0", "9"), ("A", "Z"), ("a", "z"), "_")
# ASCII whitespace only; the bundled conformance suite expects U+00A0 to fall outside \s.
SPACE = CharSet.of("\t\n\x0b\x0c\r ")


def refine(sets) -> list[CharSet]:
    """Coarsest partition of the covered code points such that each input set is a union of blocks.

    Code points outside every input set form one extra block (if non-empty).
    """
    sets = [s for s in sets if s]
    bounds = {0, MAX_CP + 1}
    for s in sets:
        for lo, hi in s.ranges:
            bounds.add(lo)
            bounds.add(hi + 1)
    cuts = sorted(bounds)
    groups: dict[tuple, list] = {}
    for lo, nxt in zip(cuts, cuts[1:]):
        sig = tuple(i for i, s in enumerate(sets) if lo in s)
        groups.setdefault(sig, []).append((lo, nxt - 1))
    blocks = [CharSet(_normalize(rs)) for rs in groups.values()]
    blocks.sort(key=lambda c: c.first())
    return blocks


class AtomIndex:
    """Map code points to the index of the block that contains them."""

    def __init__(self, atoms: list[CharSet]):
        entries = sorted((lo, hi, i) for i, a in enumerate(atoms) for lo, hi in a.ranges)
        self._los = [e[0] for e in entries]
        self._entries = entries

    def find(self, cp: int) -> int | None:
        i = bisect_right(self._los, cp) - 1
        if i >= 0:
            lo, hi, idx = self._entries[i]
            if lo <= cp <= hi:
                return idx
        return None
