"""Elementary collapses: validation, replay, and the two collapse schedules.

The schedules follow the deletion orders that prove the biflats complex
collapses onto the unmixed biflats complex (``theorem1_sequence``) and onto
the conormal complex (``theorem2_sequence``).  Every emitted pair is applied
to a private working copy and checked for freeness as it is produced.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence, TextIO

from .biflats import (
    Biflat,
    as_bichain,
    biflat_poset,
    biflats_complex,
    conormal_complex,
    enumerate_biflats,
    is_biflag,
    non_biflags,
    unmixed_complex,
)
from .complexes import ComplexError, Poset, SimplicialComplex, bits, label_key
from .matroid import Matroid, format_set, popcount

Label = Hashable


class FreenessViolation(ValueError):
    def __init__(self, step: int, tau, coface, reason: str):
        super().__init__(f"step {step}: {reason}; tau={_fmt(tau)} offending coface={_fmt(coface)}")
        self.step = step
        self.tau = tau
        self.coface = coface


class ConeVertexError(ValueError):
    pass


def _fmt(face) -> str:
    if face is None:
        return "-"
    return "{" + ", ".join(sorted(map(label_key, face))) + "}"


@dataclass(frozen=True)
class CollapsePair:
    tau: frozenset
    sigma: frozenset

    def __post_init__(self) -> None:
        if not (self.tau < self.sigma and len(self.sigma) == len(self.tau) + 1):
            raise ValueError(f"bad collapse pair {_fmt(self.tau)} -> {_fmt(self.sigma)}")

    def format(self) -> str:
        def side(face):
            return " + ".join(sorted(map(label_key, face)))
        return f"{side(self.tau)} -> {side(self.sigma)}"


@dataclass
class CollapseSequence:
    pairs: list[CollapsePair] = field(default_factory=list)
    source: str = ""
    target: str = ""

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def header(self) -> str:
        return f"collapse-seq {self.source or '-'} {self.target or '-'} {len(self.pairs)}"

    def dumps(self) -> str:
        return "\n".join([self.header(), *(p.format() for p in self.pairs)]) + "\n"


def loads_sequence(text: str, vertices: Iterable[Label]) -> CollapseSequence:
    """Parse a collapse-sequence file, resolving labels against ``vertices``."""
    by_label = {label_key(v): v for v in vertices}
    lines = text.splitlines()
    head = lines[0].split() if lines else []
    if len(head) != 4 or head[0] != "collapse-seq":
        raise ValueError("expected 'collapse-seq <source> <target> <pair-count>' header")
    count = int(head[3])
    pairs = []
    for lineno, line in enumerate(lines[1:1 + count], 2):
        left, arrow, right = line.partition(" -> ")
        if not arrow:
            raise ValueError(f"line {lineno}: expected 'tau -> sigma'")
        try:
            tau = frozenset(by_label[t.strip()] for t in left.split(" + "))
            sigma = frozenset(by_label[t.strip()] for t in right.split(" + "))
        except KeyError as exc:
            raise ValueError(f"line {lineno}: unknown vertex {exc.args[0]}") from None
        pairs.append(CollapsePair(tau, sigma))
    if len(pairs) != count:
        raise ValueError(f"header announces {count} pairs, found {len(pairs)}")
    return CollapseSequence(pairs, head[1], head[2])


class WorkingComplex:
    """Mutable face set used while synthesizing or replaying collapses."""

    def __init__(self, cx: SimplicialComplex, sink: Callable[[CollapsePair], None] | None = None):
        self.vertices = cx.vertices
        self.index = cx.index
        self.nv = len(cx.vertices)
        self.faces = set(cx.faces)
        self.steps = 0
        self.sink = sink

    def mask(self, face: Iterable[Label]) -> int:
        m = 0
        for v in face:
            m |= 1 << self.index[v]
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.vertices[i] for i in bits(mask))

    def cofaces(self, tau: int) -> list[int]:
        """Faces of the form ``tau + v``; nonempty iff tau has a proper coface."""
        return [tau | (1 << i) for i in range(self.nv) if not tau >> i & 1 and tau | (1 << i) in self.faces]

    def freeness_problem(self, tau: int, sigma: int) -> tuple[str, int | None] | None:
        if tau not in self.faces:
            return "tau is not a face", None
        if sigma not in self.faces:
            return "sigma is not a face", None
        if sigma & tau != tau or popcount(sigma) != popcount(tau) + 1:
            return "sigma does not cover tau", None
        up = self.cofaces(tau)
        for c in up:
            if c != sigma:
                return "tau has a second coface", c
        above = self.cofaces(sigma)
        if above:
            return "sigma is not maximal", above[0]
        return None

    def collapse(self, tau: int, sigma: int) -> None:
        problem = self.freeness_problem(tau, sigma)
        if problem:
            reason, coface = problem
            raise FreenessViolation(self.steps, self.labels(tau),
                                    None if coface is None else self.labels(coface), reason)
        self.faces.discard(tau)
        self.faces.discard(sigma)
        self.steps += 1
        if self.sink is not None:
            self.sink(CollapsePair(self.labels(tau), self.labels(sigma)))

    def link(self, face: int) -> set[int]:
        return {g for g in self.faces if not g & face and g | face in self.faces}

    def snapshot(self) -> SimplicialComplex:
        return SimplicialComplex(self.vertices, self.faces, check=False)

    def star_pairs(self, face: int, v: int) -> list[tuple[int, int]]:
        """Pairs removing the open star of ``face`` given a cone vertex ``v`` of its link.

        Link faces ``G`` without ``v`` are paired with ``G + v`` in decreasing
        size (ties broken by label), lifted by ``face``; ``(face, face + v)``
        comes last.
        """
        lk = self.link(face)
        vbit = 1 << v
        if vbit not in lk:
            raise ConeVertexError(f"{self.vertices[v]} is not in the link of {_fmt(self.labels(face))}")
        for g in lk:
            if g | vbit not in lk:
                raise ConeVertexError(
                    f"{self.vertices[v]} is not a cone vertex of the link of {_fmt(self.labels(face))}"
                )
        movers = [g for g in lk if not g & vbit and g]
        movers.sort(key=lambda g: (-popcount(g), sorted(label_key(self.vertices[i]) for i in bits(g))))
        pairs = [(face | g, face | g | vbit) for g in movers]
        pairs.append((face, face | vbit))
        return pairs

    def collapse_star(self, face: int, v: int) -> int:
        pairs = self.star_pairs(face, v)
        for tau, sigma in pairs:
            self.collapse(tau, sigma)
        return len(pairs)


# ---------------------------------------------------------------- primitives

def validate_pair(cx: SimplicialComplex, pair: CollapsePair) -> bool:
    w = WorkingComplex(cx)
    try:
        return w.freeness_problem(w.mask(pair.tau), w.mask(pair.sigma)) is None
    except KeyError:
        return False


def apply_sequence(cx: SimplicialComplex, seq: Iterable[CollapsePair]) -> SimplicialComplex:
    """Replay ``seq`` on ``cx``, raising :class:`FreenessViolation` at the first bad step."""
    w = WorkingComplex(cx)
    for step, pair in enumerate(seq):
        try:
            tau, sigma = w.mask(pair.tau), w.mask(pair.sigma)
        except KeyError as exc:
            raise FreenessViolation(step, pair.tau, None, f"unknown vertex {exc.args[0]}") from None
        w.collapse(tau, sigma)
    return w.snapshot()


def _pairs_to_sequence(w: WorkingComplex, pairs: Sequence[tuple[int, int]]) -> CollapseSequence:
    return CollapseSequence([CollapsePair(w.labels(t), w.labels(s)) for t, s in pairs])


def _vertex(cx: SimplicialComplex, v: Label) -> int:
    if v not in cx.index:
        raise ConeVertexError(f"{v} is not a vertex")
    return cx.index[v]


def cone_collapse_sequence(cx: SimplicialComplex, v: Label) -> CollapseSequence:
    """Collapse a cone with apex ``v`` down to ``{v}``."""
    i = _vertex(cx, v)
    if any(not f >> i & 1 for f in cx.facets):
        raise ConeVertexError(f"{v} is not a cone vertex")
    w = WorkingComplex(cx)
    # The link of the empty face is the whole complex; drop the final (∅, v) pair.
    return _pairs_to_sequence(w, w.star_pairs(0, i)[:-1])


def lifted_star_collapse(cx: SimplicialComplex, face: Iterable[Label], v: Label) -> CollapseSequence:
    """Pairs removing exactly the open star of ``face``, given a cone vertex ``v`` of its link."""
    w = WorkingComplex(cx)
    f = cx.mask(face)
    if f not in cx.faces:
        raise ComplexError(f"{_fmt(face)} is not a face")
    return _pairs_to_sequence(w, w.star_pairs(f, _vertex(cx, v)))


def poset_element_collapse(poset: Poset, x: Label, cx: SimplicialComplex | None = None) -> CollapseSequence:
    """Remove ``x`` from the order complex when ``P_{>x}`` has a least element.

    The link of ``{x}`` is the join of the chains above and below ``x``, so
    the least element above ``x`` is a cone vertex of it.
    """
    cx = order_complex_of(poset) if cx is None else cx
    least = _least_above(poset, set(poset.greater(x)), x)
    return lifted_star_collapse(cx, [x], least)


def order_complex_of(poset: Poset) -> SimplicialComplex:
    from .complexes import order_complex
    return order_complex(poset)


def _least_above(poset: Poset, alive: set, x: Label) -> Label:
    above = [y for y in poset.greater(x) if y in alive]
    mins = [y for y in above if not any(poset.lt(z, y) for z in above)]
    if len(mins) != 1:
        raise ConeVertexError(f"elements above {x} have {len(mins)} minimal elements")
    return mins[0]


# ---------------------------------------------------------------- first schedule

def theorem1_schedule(m: Matroid) -> list[Biflat]:
    """Mixed biflats in deletion order.

    Flats by corank (canonical label order inside a corank), then for a fixed
    flat ``F0`` its dual partners ``G`` by increasing dual rank starting at
    the dual rank of ``E - F0`` (canonical order inside a rank).
    """
    d = m.dual()
    e = m.ground
    rstar = d.r
    out = []
    for k in range(1, m.r):
        for f0 in m.sorted_flats:
            if m.corank(f0) != k:
                continue
            r0 = d.rank(e & ~f0)
            for ell in range(rstar - r0):
                for g in d.sorted_flats:
                    if d.flat_rank[g] == ell + r0 and f0 | g == e:
                        out.append(Biflat(f0, g, m.n))
    return out


def theorem1_sequence(m: Matroid, stream: TextIO | None = None) -> CollapseSequence:
    cx = biflats_complex(m)
    poset = biflat_poset(m)
    e = m.ground
    seq = CollapseSequence(source="biflats", target="unmixed")
    sink = _make_sink(seq, stream)
    w = WorkingComplex(cx, sink)
    alive = set(poset.elements)
    schedule = theorem1_schedule(m)
    mixed = {b for b in alive if b.mixed}
    if set(schedule) != mixed or len(schedule) != len(mixed):
        raise AssertionError("deletion schedule does not enumerate the mixed biflats exactly once")
    for idx, x in enumerate(schedule):
        least = _least_above(poset, alive, x)
        if least != Biflat(e, x.G, m.n):
            raise ConeVertexError(f"least element above {x.short()} is {least.short()}, expected E|G")
        w.collapse_star(1 << w.index[x], w.index[least])
        alive.discard(x)
        stage_done = idx + 1 == len(schedule) or m.corank(schedule[idx + 1].F) != m.corank(x.F)
        if stage_done:
            k = m.corank(x.F)
            present = {w.vertices[i] for i in range(w.nv) if (1 << i) in w.faces}
            expected = {b for b in poset.elements if not (b.mixed and m.corank(b.F) <= k)}
            if present != expected:
                raise AssertionError(f"vertex set after corank stage {k} is not BF minus mixed biflats of corank <= {k}")
    result = w.snapshot()
    if result != unmixed_complex(m):
        raise AssertionError("first schedule did not end at the unmixed biflats complex")
    return seq


# ---------------------------------------------------------------- second schedule

@dataclass(frozen=True)
class _Key:
    chain: tuple[Biflat, ...]

    def __lt__(self, other: _Key) -> bool:
        return chain_label(self.chain) < chain_label(other.chain)


def chain_label(chain: Sequence[Biflat]) -> str:
    return " + ".join(map(str, chain))


def minimal_bichains(m: Matroid) -> list[tuple[Biflat, ...]]:
    """Non-biflag bichains repeating no flat and no dual flat, sorted by label."""
    bad = non_biflags(m)
    out = []
    for c in bad:
        fs = [b.F for b in c]
        gs = [b.G for b in c]
        if len(set(fs)) == len(fs) and len(set(gs)) == len(gs):
            out.append(c)
    keep = set(out)
    badset = [frozenset(c) for c in bad]
    for c in bad:
        s = frozenset(c)
        if not any(t < s for t in badset) and c not in keep:
            raise AssertionError(f"inclusion-minimal non-biflag {chain_label(c)} repeats a flat")
    e = m.ground
    for c in out:
        if c[0].G != e or c[-1].F != e:
            raise AssertionError(f"minimal bichain {chain_label(c)} is not of the form F1|E <= ... <= E|G")
    return sorted(out, key=chain_label)


def bichain_precedes(a: Sequence[Biflat], b: Sequence[Biflat]) -> bool:
    """Order on minimal bichains: larger bottom first, then smaller second element."""
    a, b = tuple(a), tuple(b)
    if a == b:
        return True
    if a[0] > b[0]:
        return True
    return a[0] == b[0] and a[1] < b[1]


def check_partial_order(chains: Sequence[tuple[Biflat, ...]]) -> None:
    for a in chains:
        if not bichain_precedes(a, a):
            raise AssertionError("relation is not reflexive")
        for b in chains:
            if a != b and bichain_precedes(a, b) and bichain_precedes(b, a):
                raise AssertionError(f"antisymmetry fails for {chain_label(a)} and {chain_label(b)}")
            if not bichain_precedes(a, b):
                continue
            for c in chains:
                if bichain_precedes(b, c) and not bichain_precedes(a, c):
                    raise AssertionError("relation is not transitive")


def linear_extension(chains: Sequence[tuple[Biflat, ...]]) -> list[tuple[Biflat, ...]]:
    """Topological sort of the minimal bichains, lexicographic tie-break."""
    chains = list(chains)
    check_partial_order(chains)
    indeg = {c: 0 for c in chains}
    for a in chains:
        for b in chains:
            if a != b and bichain_precedes(a, b):
                indeg[b] += 1
    heap = [_Key(c) for c in chains if indeg[c] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        a = heapq.heappop(heap).chain
        out.append(a)
        for b in chains:
            if a != b and bichain_precedes(a, b):
                indeg[b] -= 1
                if indeg[b] == 0:
                    heapq.heappush(heap, _Key(b))
    if len(out) != len(chains):
        raise AssertionError("precedence relation has a cycle")
    return out


def is_linear_extension(order: Sequence[tuple[Biflat, ...]]) -> bool:
    order = list(order)
    return all(not (bichain_precedes(order[j], order[i]) and order[i] != order[j])
               for i in range(len(order)) for j in range(i + 1, len(order)))


def theorem2_sequence(
    m: Matroid,
    order: Sequence[tuple[Biflat, ...]] | None = None,
    stream: TextIO | None = None,
) -> CollapseSequence:
    """Delete the open star of each minimal bichain in turn.

    The cone vertex of the link is found by scanning the link facets and
    must agree with the predicted ``F1|G2`` (bottom flat, second dual flat).
    """
    chains = linear_extension(minimal_bichains(m)) if order is None else [tuple(c) for c in order]
    if order is not None:
        if sorted(chains, key=chain_label) != minimal_bichains(m) or not is_linear_extension(chains):
            raise ValueError("order must be a linear extension of the minimal bichains")
    cx = biflats_complex(m)
    e = m.ground
    seq = CollapseSequence(source="biflats", target="conormal")
    sink = _make_sink(seq, stream)
    w = WorkingComplex(cx, sink)
    for c in chains:
        face = w.mask(c)
        if face not in w.faces:
            raise AssertionError(f"minimal bichain {chain_label(c)} was removed before its turn")
        predicted = Biflat(c[0].F, c[1].G, m.n)
        lk = w.link(face)
        common = -1
        for g in lk:
            if not any(g | (1 << i) in lk for i in range(w.nv) if not g >> i & 1):
                common &= g
        cones = {w.vertices[i] for i in bits(common & ((1 << w.nv) - 1))}
        if predicted not in cones:
            found = ", ".join(sorted(b.short() for b in cones)) or "none"
            raise ConeVertexError(f"{predicted.short()} is not a cone vertex of the link of "
                                  f"{chain_label(c)} (cone vertices: {found})")
        bottom = c[0]
        for g in lk:
            top_unmixed = [b for b in w.labels(g | face) if b.G == e]
            if max(top_unmixed, key=lambda b: bin(b.F).count("1")) != bottom:
                raise AssertionError(f"a chain through {chain_label(c)} has an unmixed biflat above {bottom.short()}")
        w.collapse_star(face, w.index[predicted])
    if w.snapshot() != conormal_complex(m):
        raise AssertionError("second schedule did not end at the conormal complex")
    return seq


def _make_sink(seq: CollapseSequence, stream: TextIO | None) -> Callable[[CollapsePair], None]:
    def sink(pair: CollapsePair) -> None:
        seq.pairs.append(pair)
        if stream is not None:
            stream.write(pair.format() + "\n")
            stream.flush()
    return sink

