"""Complete deterministic automata over a partition of the code point space.

A DFA is ``(atoms, delta, accept, start=0)`` where ``atoms`` is a list of
pairwise disjoint CharSets covering every code point, ``delta[q][a]`` is the
successor of state ``q`` on atom ``a`` and ``accept`` is a frozenset.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..budget import tick
from .charset import ANY, AtomIndex, CharSet, refine

_EPS, _BOL, _EOL = "eps", "bol", "eol"


@dataclass(frozen=True)
class DFA:
    atoms: tuple[CharSet, ...]
    delta: tuple[tuple[int, ...], ...]
    accept: frozenset

    @property
    def size(self) -> int:
        return len(self.delta)


# ---------------------------------------------------------------- NFA

class _NFA:
    def __init__(self):
        self.edges: list[list[tuple[object, int]]] = []

    def state(self) -> int:
        self.edges.append([])
        return len(self.edges) - 1

    def add(self, src, label, dst):
        self.edges[src].append((label, dst))

    def build(self, node) -> tuple[int, int]:
        kind = node[0]
        if kind == "set":
            s, e = self.state(), self.state()
            if node[1]:
                self.add(s, node[1], e)
            return s, e
        if kind in ("bol", "eol"):
            s, e = self.state(), self.state()
            self.add(s, _BOL if kind == "bol" else _EOL, e)
            return s, e
        if kind == "cat":
            s = e = self.state()
            for child in node[1]:
                cs, ce = self.build(child)
                self.add(e, _EPS, cs)
                e = ce
            return s, e
        if kind == "alt":
            s, e = self.state(), self.state()
            for child in node[1]:
                cs, ce = self.build(child)
                self.add(s, _EPS, cs)
                self.add(ce, _EPS, e)
            return s, e
        if kind == "rep":
            _, child, lo, hi = node
            s = e = self.state()
            for _ in range(lo):
                cs, ce = self.build(child)
                self.add(e, _EPS, cs)
                e = ce
            if hi is None:
                cs, ce = self.build(child)
                self.add(e, _EPS, cs)
                self.add(ce, _EPS, cs)
                end = self.state()
                self.add(e, _EPS, end)
                self.add(ce, _EPS, end)
                return s, end
            end = self.state()
            self.add(e, _EPS, end)
            for _ in range(hi - lo):
                cs, ce = self.build(child)
                self.add(e, _EPS, cs)
                self.add(ce, _EPS, end)
                e = ce
            return s, end
        raise ValueError(f"unknown node {kind}")


def from_ast(ast, partial: bool) -> DFA:
    """Determinize a pattern AST.

    In partial mode the pattern may match anywhere: the language is
    ``Σ* p Σ*`` with ``^``/``$`` bound to the ends of the whole string.
    """
    nfa = _NFA()
    start, final = nfa.build(ast)
    if partial:
        pre, post = nfa.state(), nfa.state()
        nfa.add(pre, ANY, pre)
        nfa.add(pre, _EPS, start)
        nfa.add(final, _EPS, post)
        nfa.add(post, ANY, post)
        start, final = pre, post

    sets = {lab for out in nfa.edges for lab, _ in out if isinstance(lab, CharSet)}
    atoms = refine(sets)
    reps = [a.first() for a in atoms]
    edges = nfa.edges

    def closure(states, at_start):
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for lab, t in edges[q]:
                if (lab is _EPS or (lab is _BOL and at_start)) and t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def accepting(states, at_start):
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            if q == final:
                return True
            for lab, t in edges[q]:
                if (lab is _EPS or lab is _EOL or (lab is _BOL and at_start)) and t not in seen:
                    seen.add(t)
                    stack.append(t)
        return False

    init = (closure({start}, True), True)
    index = {init: 0}
    order = [init]
    delta: list[list[int]] = []
    accept = set()
    i = 0
    while i < len(order):
        tick()
        states, at_start = order[i]
        if accepting(states, at_start):
            accept.add(i)
        row = []
        for rep in reps:
            nxt = {t for q in states for lab, t in edges[q]
                   if isinstance(lab, CharSet) and rep in lab}
            key = (closure(nxt, False), False)
            j = index.get(key)
            if j is None:
                j = index[key] = len(order)
                order.append(key)
            row.append(j)
        delta.append(row)
        i += 1
    return minimize(DFA(tuple(atoms), tuple(tuple(r) for r in delta), frozenset(accept)))


# ------------------------------------------------------------- algebra

def product(a: DFA, b: DFA, op) -> DFA:
    """Synchronous product; ``op(x_accepts, y_accepts)`` decides acceptance."""
    atoms = refine(list(a.atoms) + list(b.atoms))
    ia, ib = AtomIndex(list(a.atoms)), AtomIndex(list(b.atoms))
    pairs = [(ia.find(x.first()), ib.find(x.first())) for x in atoms]
    index = {(0, 0): 0}
    order = [(0, 0)]
    delta, accept = [], set()
    i = 0
    while i < len(order):
        tick()
        p, q = order[i]
        if op(p in a.accept, q in b.accept):
            accept.add(i)
        row = []
        for x, y in pairs:
            key = (a.delta[p][x], b.delta[q][y])
            j = index.get(key)
            if j is None:
                j = index[key] = len(order)
                order.append(key)
            row.append(j)
        delta.append(row)
        i += 1
    return minimize(DFA(tuple(atoms), tuple(tuple(r) for r in delta), frozenset(accept)))


def complement(a: DFA) -> DFA:
    return DFA(a.atoms, a.delta, frozenset(range(a.size)) - a.accept)


def _hopcroft(d: DFA) -> list[int]:
    """Block number of every state under the coarsest stable partition."""
    n, k = d.size, len(d.atoms)
    inv: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(k)]
    for q, row in enumerate(d.delta):
        for a, t in enumerate(row):
            inv[a][t].append(q)
    acc = [q for q in range(n) if q in d.accept]
    rej = [q for q in range(n) if q not in d.accept]
    blocks = [set(b) for b in (acc, rej) if b]
    block = [0] * n
    for i, b in enumerate(blocks):
        for q in b:
            block[q] = i
    work = {(i, a) for i in range(len(blocks)) for a in range(k)}
    while work:
        tick()
        b, a = work.pop()
        pre: dict[int, set[int]] = {}
        for t in blocks[b]:
            for q in inv[a][t]:
                pre.setdefault(block[q], set()).add(q)
        for y, hit in pre.items():
            whole = blocks[y]
            if len(hit) == len(whole):
                continue
            rest = whole - hit
            blocks[y] = hit
            z = len(blocks)
            blocks.append(rest)
            for q in rest:
                block[q] = z
            small = y if len(hit) <= len(rest) else z
            for c in range(k):
                work.add((z, c) if (y, c) in work else (small, c))
    return block


def minimize(d: DFA) -> DFA:
    """Minimal complete DFA with merged atoms and BFS-canonical state numbering."""
    n, k = d.size, len(d.atoms)
    block = _hopcroft(d)
    # Quotient automaton over reachable blocks, BFS-numbered later.
    reps = {}
    for q in range(n):
        reps.setdefault(block[q], q)
    qdelta = {b: tuple(block[t] for t in d.delta[q]) for b, q in reps.items()}
    qaccept = {b for b, q in reps.items() if q in d.accept}
    # Merge atoms whose columns agree.
    cols: dict[tuple, list[int]] = {}
    blocks = sorted(qdelta)
    for a in range(k):
        col = tuple(qdelta[b][a] for b in blocks)
        cols.setdefault(col, []).append(a)
    merged = []
    for members in cols.values():
        cs = d.atoms[members[0]]
        for m in members[1:]:
            cs = cs | d.atoms[m]
        merged.append((cs, members[0]))
    merged.sort(key=lambda pair: pair[0].first())
    atoms = tuple(cs for cs, _ in merged)
    # Canonical BFS numbering from the start block.
    start = block[0]
    number = {start: 0}
    queue = deque([start])
    rows = []
    while queue:
        b = queue.popleft()
        row = []
        for _, a in merged:
            t = qdelta[b][a]
            if t not in number:
                number[t] = len(number)
                queue.append(t)
            row.append(number[t])
        rows.append(tuple(row))
    accept = frozenset(number[b] for b in qaccept if b in number)
    return DFA(atoms, tuple(rows), accept)


def length_dfa(lo: int, hi: int | None) -> DFA:
    """All strings whose length lies in ``[lo, hi]`` (``hi=None`` is unbounded)."""
    if hi is not None and hi < lo:
        return DFA((ANY,), ((0,),), frozenset())
    if hi is None:
        rows = [(min(q + 1, lo),) for q in range(lo + 1)]
        return minimize(DFA((ANY,), tuple(rows), frozenset({lo})))
    dead = hi + 1
    rows = [(min(q + 1, dead),) for q in range(hi + 1)] + [(dead,)]
    return minimize(DFA((ANY,), tuple(rows), frozenset(range(lo, hi + 1))))


def literal_dfa(text: str) -> DFA:
    """The single-string language ``{text}``."""
    n = len(text)
    dead = n + 1
    sets = [CharSet.of(c) for c in text]
    atoms = refine(sets)
    idx = AtomIndex(atoms)
    rows = []
    for i in range(n + 1):
        row = [dead] * len(atoms)
        if i < n:
            row[idx.find(ord(text[i]))] = i + 1
        rows.append(tuple(row))
    rows.append(tuple([dead] * len(atoms)))
    return minimize(DFA(tuple(atoms), tuple(rows), frozenset({n})))


# ------------------------------------------------------------- queries

def live_states(d: DFA) -> set[int]:
    """States from which an accepting state is reachable."""
    rev: list[set[int]] = [set() for _ in range(d.size)]
    for q, row in enumerate(d.delta):
        for t in row:
            rev[t].add(q)
    live = set(d.accept)
    stack = list(d.accept)
    while stack:
        q = stack.pop()
        for p in rev[q]:
            if p not in live:
                live.add(p)
                stack.append(p)
    return live


def shortest(d: DFA) -> str | None:
    """Shortest accepted string (smallest representative characters)."""
    parent = {0: None}
    queue = deque([0])
    while queue:
        q = queue.popleft()
        if q in d.accept:
            out = []
            while parent[q] is not None:
                q, c = parent[q]
                out.append(c)
            return "".join(reversed(out))
        for a, t in enumerate(d.delta[q]):
            if t not in parent:
                parent[t] = (q, d.atoms[a].sample())
                queue.append(t)
    return None


def is_finite(d: DFA) -> bool:
    """No cycle through live states reachable from the start."""
    live = live_states(d)
    if 0 not in live:
        return True
    color = {}
    stack = [(0, iter(set(d.delta[0])))]
    color[0] = 1
    while stack:
        q, it = stack[-1]
        advanced = False
        for t in it:
            if t not in live:
                continue
            c = color.get(t)
            if c == 1:
                return False
            if c is None:
                color[t] = 1
                stack.append((t, iter(set(d.delta[t]))))
                advanced = True
                break
        if not advanced:
            color[q] = 2
            stack.pop()
    return True


def count(d: DFA) -> int | None:
    """Number of accepted strings, or None when infinite."""
    if not is_finite(d):
        return None
    live = live_states(d)
    memo: dict[int, int] = {}
    sizes = [a.size() for a in d.atoms]

    def walk(q):
        if q in memo:
            return memo[q]
        total = 1 if q in d.accept else 0
        for a, t in enumerate(d.delta[q]):
            if t in live:
                total += sizes[a] * walk(t)
        memo[q] = total
        return total

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * d.size + 100))
    try:
        return walk(0) if 0 in live else 0
    finally:
        sys.setrecursionlimit(old)


def enumerate_strings(d: DFA, limit: int, per_atom: int | None = None):
    """Yield up to ``limit`` distinct accepted strings in shortlex order.

    ``per_atom`` caps how many characters of each atom are tried; ``None``
    means every character, which makes the enumeration complete.
    """
    import heapq

    live = live_states(d)
    if 0 not in live or limit <= 0:
        return
    choices = []
    for q in range(d.size):
        opts = []
        for a, t in enumerate(d.delta[q]):
            if t in live:
                opts.extend((c, t) for c in d.atoms[a].chars(per_atom))
        choices.append(opts)
    heap = [(0, "", 0)]
    produced = 0
    while heap:
        tick()
        n, s, q = heapq.heappop(heap)
        if q in d.accept:
            yield s
            produced += 1
            if produced >= limit:
                return
        for c, t in choices[q]:
            heapq.heappush(heap, (n + 1, s + c, t))
        if len(heap) > 50 * limit + 1000:
            heap = heapq.nsmallest(10 * limit + 200, heap)
            heapq.heapify(heap)


def accepts(d: DFA, text: str) -> bool:
    idx = AtomIndex(list(d.atoms))
    q = 0
    for ch in text:
        q = d.delta[q][idx.find(ord(ch))]
    return q in d.accept


# ------------------------------------------------------------- printing

def to_regex(d: DFA) -> str:
    """Regular expression (full-match body, unanchored) via state elimination."""
    live = live_states(d)
    if 0 not in live:
        return "[^\\s\\S]"
    n = d.size
    S, F = n, n + 1
    R: dict[tuple[int, int], object] = {}

    def add(i, j, expr):
        R[(i, j)] = expr if (i, j) not in R else _alt(R[(i, j)], expr)

    for q in range(n):
        if q not in live:
            continue
        by_target: dict[int, CharSet] = {}
        for a, t in enumerate(d.delta[q]):
            if t in live:
                by_target[t] = by_target.get(t, CharSet()) | d.atoms[a]
        for t, cs in by_target.items():
            add(q, t, ("set", cs))
        if q in d.accept:
            add(q, F, ("cat", []))
    add(S, 0, ("cat", []))
    remaining = set(q for q in range(n) if q in live)
    while remaining:
        tick()
        def cost(q):
            ins = sum(1 for (i, j) in R if j == q and i != q)
            outs = sum(1 for (i, j) in R if i == q and j != q)
            return ins * outs, q
        q = min(remaining, key=cost)
        remaining.discard(q)
        loop = R.pop((q, q), None)
        ins = [(i, R.pop((i, j))) for (i, j) in list(R) if j == q]
        outs = [(j, R.pop((i, j))) for (i, j) in list(R) if i == q]
        star = ("rep", loop, 0, None) if loop is not None else None
        for i, e_in in ins:
            for j, e_out in outs:
                parts = [e_in] + ([star] if star else []) + [e_out]
                add(i, j, _cat(parts))
    body = R.get((S, F))
    if body is None:
        return "[^\\s\\S]"
    return _print(body, 0)


def _cat(parts):
    flat = []
    for p in parts:
        if p[0] == "cat":
            flat.extend(p[1])
        else:
            flat.append(p)
    return flat[0] if len(flat) == 1 else ("cat", flat)


def _alt(x, y):
    if x[0] == "set" and y[0] == "set":
        return ("set", x[1] | y[1])
    xs = x[1] if x[0] == "alt" else [x]
    ys = y[1] if y[0] == "alt" else [y]
    out = list(xs)
    for e in ys:
        if e not in out:
            out.append(e)
    return out[0] if len(out) == 1 else ("alt", out)


_META = set("\\^$.|?*+()[]{}/")


def _char(cp: int, in_class: bool) -> str:
    c = chr(cp)
    if in_class:
        if c in "\\]^-[":
            return "\\" + c
    elif c in _META:
        return "\\" + c
    if cp < 0x20 or cp == 0x7F or 0xD800 <= cp <= 0xDFFF or 0x80 <= cp <= 0x9F:
        return f"\\u{cp:04x}" if cp <= 0xFFFF else c
    return c


def print_charset(cs: CharSet) -> str:
    if cs == ANY:
        return "."
    if len(cs.ranges) == 1 and cs.ranges[0][0] == cs.ranges[0][1]:
        return _char(cs.ranges[0][0], False)
    neg = ~cs
    negate = len(neg.ranges) < len(cs.ranges)
    body = neg if negate else cs
    parts = []
    for lo, hi in body.ranges:
        if lo == hi:
            parts.append(_char(lo, True))
        elif hi == lo + 1:
            parts.append(_char(lo, True) + _char(hi, True))
        else:
            parts.append(_char(lo, True) + "-" + _char(hi, True))
    return "[" + ("^" if negate else "") + "".join(parts) + "]"


def _print(node, prec: int) -> str:
    """prec: 0 alternation context, 1 concatenation, 2 quantifier operand."""
    kind = node[0]
    if kind == "set":
        return print_charset(node[1])
    if kind == "cat":
        if not node[1]:
            return "(?:)" if prec >= 2 else ""
        text = "".join(_print(c, 1) for c in node[1])
        return f"(?:{text})" if prec >= 2 and len(node[1]) > 1 else text
    if kind == "alt":
        opts = node[1]
        has_eps = any(o == ("cat", []) for o in opts)
        rest = [o for o in opts if o != ("cat", [])]
        text = "|".join(_print(o, 0) for o in rest)
        if has_eps:
            inner = _print(rest[0], 2) if len(rest) == 1 else f"(?:{text})"
            return inner + "?"
        return f"(?:{text})" if prec >= 1 else text
    if kind == "rep":
        child = node[1]
        if child[0] == "alt" and ("cat", []) in child[1]:
            rest = [o for o in child[1] if o != ("cat", [])]
            child = rest[0] if len(rest) == 1 else ("alt", rest)
        inner = _print(child, 2)
        return inner + "*"
    raise ValueError(kind)
