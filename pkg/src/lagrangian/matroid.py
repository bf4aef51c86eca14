"""Matroids presented by their lattice of flats.

Subsets of the ground set ``E = {1, ..., n}`` are ints used as bitmasks:
element ``e`` lives in bit ``e - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_GROUND = 64


class MatroidError(ValueError):
    """Base class for invalid matroid input."""


class ParseError(MatroidError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class AxiomError(MatroidError):
    """A flat family violates a matroid axiom; ``witnesses`` are the offending sets."""

    def __init__(self, axiom: str, message: str, witnesses: Sequence[int] = (), n: int = 0):
        listed = ", ".join(format_set(w, n) for w in witnesses)
        text = f"{axiom}: {message}"
        if listed:
            text += f" (witnesses: {listed})"
        super().__init__(text)
        self.axiom = axiom
        self.witnesses = tuple(witnesses)


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def format_set(mask: int, n: int = 0, *, compact: bool = False) -> str:
    """Canonical text for a subset: ``1,2,5``; ``{}`` for the empty set.

    With ``compact`` the ground set is written ``E`` and, when ``n < 10``,
    elements are concatenated (``125``), matching the usual notation for
    small examples.
    """
    if mask == 0:
        return "{}"
    if compact and n and mask == (1 << n) - 1:
        return "E"
    elems = elements_of(mask)
    if compact and n < 10:
        return "".join(map(str, elems))
    return ",".join(map(str, elems))


def parse_set(text: str, n: int) -> int:
    """Inverse of :func:`format_set` (accepts both canonical and compact forms)."""
    text = text.strip()
    if text in ("{}", ""):
        return 0
    if text == "E":
        return (1 << n) - 1
    if "," in text or n >= 10:
        elems = [int(t) for t in text.split(",")]
    else:
        elems = [int(c) for c in text]
    return to_mask(elems)


@dataclass(frozen=True)
class FlatLattice:
    flats: tuple[int, ...]          # sorted by (rank, canonical label)
    rank: dict[int, int]
    covers: tuple[tuple[int, int], ...]
    r: int

    def corank(self, flat: int) -> int:
        return self.r - self.rank[flat]


@dataclass(frozen=True, eq=False)
class Matroid:
    """A loopless matroid on ``{1..n}`` given by all of its flats.

    Construction validates the flat axioms; use :func:`parse_matroid`,
    :func:`from_graph` or :func:`uniform` rather than building raw families.
    """

    n: int
    flats: frozenset[int]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "flats", frozenset(self.flats))
        validate(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.flats == other.flats

    def __hash__(self) -> int:
        return hash((self.n, self.flats))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Matroid{label} n={self.n} rank={self.r} flats={len(self.flats)}>"

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def flat_rank(self) -> dict[int, int]:
        """Lattice height of every flat."""
        ranks: dict[int, int] = {}
        for f in sorted(self.flats, key=popcount):
            below = [ranks[g] for g in ranks if g != f and g & f == g]
            ranks[f] = 1 + max(below) if below else 0
        return ranks

    @property
    def r(self) -> int:
        return self.flat_rank[self.ground]

    def closure(self, s: int) -> int:
        c = self.ground
        for f in self.flats:
            if f & s == s:
                c &= f
        return c

    def rank(self, s: int) -> int:
        return self.flat_rank[self.closure(s)]

    def corank(self, flat: int) -> int:
        return self.r - self.flat_rank[flat]

    def is_flat(self, s: int) -> bool:
        return s in self.flats

    @cached_property
    def sorted_flats(self) -> tuple[int, ...]:
        return tuple(sorted(self.flats, key=lambda f: (self.flat_rank[f], format_set(f, self.n))))

    @property
    def proper_flats(self) -> tuple[int, ...]:
        """Flats other than the empty set and ``E``."""
        return tuple(f for f in self.sorted_flats if f not in (0, self.ground))

    def dual_rank(self, s: int) -> int:
        return popcount(s) + self.rank(self.ground & ~s) - self.r

    @cached_property
    def _dual(self) -> Matroid:
        # A set is a dual flat when adding any outside element raises the dual rank.
        # Enumerates all 2^n subsets; fine for the desk-scale inputs this targets.
        require_coloopless(self)
        if self.n > 24:
            raise MatroidError(f"dual of a matroid on {self.n} elements is too large to enumerate")
        rk = [self.dual_rank(s) for s in range(1 << self.n)]
        flats = []
        for s in range(1 << self.n):
            if all(rk[s | (1 << i)] > rk[s] for i in range(self.n) if not s >> i & 1):
                flats.append(s)
        name = f"{self.name}*" if self.name else ""
        d = Matroid(self.n, frozenset(flats), name)
        object.__setattr__(d, "_dual", self)
        return d

    def dual(self) -> Matroid:
        return self._dual

    def lattice(self) -> FlatLattice:
        return flats_lattice(self)

    def rank_is_uniform(self) -> bool:
        """True when ``rank(S) = min(|S|, r)`` for every subset S."""
        r = self.r
        return all(self.rank(s) == min(popcount(s), r) for s in range(1 << self.n))


def _covers(flats: Iterable[int]) -> dict[int, list[int]]:
    flats = list(flats)
    up: dict[int, list[int]] = {}
    for f in flats:
        above = [g for g in flats if g != f and g & f == f]
        up[f] = [g for g in above if not any(h != g and h & g == h for h in above)]
    return up


def validate(m: Matroid) -> None:
    """Raise :class:`AxiomError` unless ``m.flats`` is the flat family of a
    loopless matroid.

    Coloops are allowed here; everything built on biflats calls
    :func:`require_coloopless`.
    """
    n, flats = m.n, m.flats
    if not 1 <= n <= MAX_GROUND:
        raise AxiomError("ground", f"ground-set size {n} outside 1..{MAX_GROUND}")
    ground = (1 << n) - 1
    for f in flats:
        if f & ~ground or f < 0:
            raise AxiomError("ground", "flat has elements outside E", [f & ~ground], n)
    if ground not in flats:
        raise AxiomError("ground", "E is not a flat")
    if 0 not in flats:
        loops = min(flats, key=popcount)
        raise AxiomError("loopless", "the empty set is not a flat", [loops], n)
    ordered = sorted(flats)
    for a, b in combinations(ordered, 2):
        if a & b not in flats:
            raise AxiomError("intersection", "intersection of two flats is not a flat", [a, b], n)
    up = _covers(ordered)
    for f in ordered:
        if f == ground:
            continue
        seen = 0
        for g in up[f]:
            part = g & ~f
            if part & seen:
                raise AxiomError("cover-partition", "covers of a flat overlap outside it", [f, g], n)
            seen |= part
        if seen != ground & ~f:
            raise AxiomError(
                "cover-partition", "covers of a flat do not exhaust its complement",
                [f, ground & ~f & ~seen], n,
            )


def coloops(m: Matroid) -> int:
    """Mask of coloops: ``e`` is a coloop exactly when ``E - e`` is a flat."""
    return to_mask(e + 1 for e in range(m.n) if m.ground & ~(1 << e) in m.flats)


def require_coloopless(m: Matroid) -> None:
    c = coloops(m)
    if c:
        raise AxiomError("coloopless", "matroid has coloops", [c], m.n)


def flats_lattice(m: Matroid) -> FlatLattice:
    up = _covers(m.flats)
    covers = tuple(sorted(((f, g) for f in up for g in up[f]),
                          key=lambda p: (m.flat_rank[p[0]], format_set(p[0], m.n), format_set(p[1], m.n))))
    for f, g in covers:
        if m.flat_rank[g] != m.flat_rank[f] + 1:
            raise AxiomError("graded", "cover relation skips a rank", [f, g], m.n)
    return FlatLattice(m.sorted_flats, dict(m.flat_rank), covers, m.r)


# ---------------------------------------------------------------- constructors

def uniform(r: int, n: int) -> Matroid:
    if not 1 <= r <= n - 1:
        raise MatroidError(f"uniform({r},{n}) needs 1 <= r <= n-1 to be loopless and coloopless")
    flats = {to_mask(c) for k in range(r) for c in combinations(range(1, n + 1), k)}
    flats.add((1 << n) - 1)
    return Matroid(n, frozenset(flats), f"U{r},{n}")


def graphic_rank(edges: dict[int, tuple[str, str]], s: int) -> int:
    """Vertices touched minus components of the subgraph on edge set ``s``."""
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for e in elements_of(s):
        u, v = edges[e]
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            rank += 1
    return rank


def from_graph(edges: Sequence[tuple[int, object, object]], name: str = "") -> Matroid:
    """Cycle matroid of a multigraph with edges ``(id, u, v)``, ids ``1..n``."""
    table: dict[int, tuple[str, str]] = {}
    for eid, u, v in edges:
        if eid in table:
            raise MatroidError(f"duplicate edge id {eid}")
        if str(u) == str(v):
            raise MatroidError(f"edge {eid} is a self-loop (a matroid loop)")
        table[eid] = (str(u), str(v))
    n = len(table)
    if sorted(table) != list(range(1, n + 1)):
        raise MatroidError(f"edge ids must be exactly 1..{n}")
    if n > 24:
        raise MatroidError(f"graph with {n} edges is too large to enumerate flats")
    ground = (1 << n) - 1
    rk = [graphic_rank(table, s) for s in range(1 << n)]
    flats = set()
    for s in range(1 << n):
        c = s
        for i in range(n):
            bit = 1 << i
            if not s & bit and rk[s | bit] == rk[s]:
                c |= bit
        flats.add(c)
    for e in range(n):
        if rk[ground & ~(1 << e)] < rk[ground]:
            raise AxiomError("coloopless", f"edge {e + 1} is a coloop (bridge)", [1 << e], n)
    return Matroid(n, frozenset(flats), name)


# ---------------------------------------------------------------- file formats

def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_matroid(text: str, name: str = "") -> Matroid:
    """Parse ``ground <n>`` followed by ``flat e1 e2 ...`` lines."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "empty matroid file")
    lineno, head = lines[0]
    if head[0] != "ground" or len(head) != 2:
        raise ParseError(lineno, "expected 'ground <n>'")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(lineno, f"bad ground-set size {head[1]!r}") from None
    if not 1 <= n <= MAX_GROUND:
        raise ParseError(lineno, f"ground-set size {n} outside 1..{MAX_GROUND}")
    flats = set()
    for lineno, toks in lines[1:]:
        if toks[0] != "flat":
            raise ParseError(lineno, f"expected 'flat', got {toks[0]!r}")
        try:
            elems = [int(t) for t in toks[1:]]
        except ValueError:
            raise ParseError(lineno, "flat elements must be integers") from None
        bad = [e for e in elems if not 1 <= e <= n]
        if bad:
            raise ParseError(lineno, f"element {bad[0]} outside 1..{n}")
        f = to_mask(elems)
        if f in flats:
            raise ParseError(lineno, f"duplicate flat {format_set(f, n)}")
        flats.add(f)
    return Matroid(n, frozenset(flats), name)


def parse_graph(text: str) -> list[tuple[int, str, str]]:
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != ["graph"]:
        raise ParseError(lines[0][0] if lines else 1, "expected 'graph' header")
    edges = []
    for lineno, toks in lines[1:]:
        if toks[0] != "edge" or len(toks) != 4:
            raise ParseError(lineno, "expected 'edge <id> <u> <v>'")
        try:
            eid = int(toks[1])
        except ValueError:
            raise ParseError(lineno, f"bad edge id {toks[1]!r}") from None
        edges.append((eid, toks[2], toks[3]))
    return edges


def loads(text: str, name: str = "") -> Matroid:
    """Parse either a matroid (flat list) file or a graph file."""
    for _, toks in _content_lines(text):
        if toks[0] == "graph":
            return from_graph(parse_graph(text), name)
        break
    return parse_matroid(text, name)


def load(path: str) -> Matroid:
    from pathlib import Path

    p = Path(path)
    return loads(p.read_text(encoding="utf-8"), p.stem)


def format_matroid(m: Matroid) -> str:
    lines = [f"ground {m.n}"]
    for f in m.sorted_flats:
        lines.append(" ".join(["flat", *map(str, elements_of(f))]))
    return "\n".join(lines) + "\n"
