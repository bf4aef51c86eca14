"""Budgeted search for (non-pure) shelling orders.

A facet order is a shelling when every facet after the first meets the
union of the earlier ones in a pure complex of codimension one.  Any
shelling can be rearranged so facet sizes never increase and it stays a
shelling, so the search only places facets of the largest remaining size.
Whether a partial order extends depends only on which facets are placed,
so failed placements are memoized by that set.

Large non-shellable complexes are refuted by an obstruction instead: a
shellable complex has shellable pure skeletons, and a shellable pure
complex has, in every face link, GF(2) homology only in top degree.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .complexes import SimplicialComplex, bits
from .homology import betti_gf2
from .matroid import popcount

DEFAULT_BUDGET = 200_000

SHELLABLE = "SHELLABLE"
NOT_SHELLABLE = "NOT-SHELLABLE"
UNKNOWN = "UNKNOWN"


@dataclass
class ShellingCertificate:
    status: str
    order: list[tuple] | None = None
    nodes: int = 0
    budget: int = 0
    method: str = "search"
    witness: str = ""

    def __bool__(self) -> bool:
        return self.status == SHELLABLE

    def describe(self) -> str:
        if self.status == UNKNOWN:
            return f"{UNKNOWN}({self.budget})"
        return self.status


def default_budget() -> int:
    raw = os.environ.get("LAGRANGIAN_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _attaches(f: int, earlier: list[int]) -> bool:
    need = popcount(f) - 1
    meets = [f & g for g in earlier]
    ridges = [x for x in meets if popcount(x) == need]
    if not ridges:
        return False
    return all(any(x & r == x for r in ridges) for x in meets)


@dataclass
class _Search:
    facets: list[int]
    budget: int
    nodes: int = 0
    dead: set[int] = field(default_factory=set)

    def run(self) -> list[int] | None:
        k = len(self.facets)
        full = (1 << k) - 1
        sizes = [popcount(f) for f in self.facets]
        # Each frame: (placed mask, placed order, remaining candidate list)
        start = self._candidates(0, sizes)
        stack = [(0, [], start)]
        while stack:
            placed, order, cands = stack[-1]
            if placed == full:
                return order
            if not cands:
                self.dead.add(placed)
                stack.pop()
                continue
            i = cands.pop(0)
            nxt = placed | (1 << i)
            if nxt in self.dead:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExhausted
            if order and not _attaches(self.facets[i], [self.facets[j] for j in order]):
                continue
            stack.append((nxt, order + [i], self._candidates(nxt, sizes)))
        return None

    def _candidates(self, placed: int, sizes: list[int]) -> list[int]:
        rest = [i for i in range(len(self.facets)) if not placed >> i & 1]
        if not rest:
            return []
        top = max(sizes[i] for i in rest)
        return [i for i in rest if sizes[i] == top]


class _BudgetExhausted(Exception):
    pass


def find_obstruction(cx: SimplicialComplex) -> str | None:
    """Describe a face link that rules out shellability, or return None.

    For each ``k``, take the pure skeleton generated by the faces of
    cardinality ``k``; every face link in it must have vanishing reduced
    GF(2) homology below its top dimension.
    """
    top = cx.max_facet_cardinality()
    for k in range(1, top + 1):
        gens = [f for f in cx.faces if popcount(f) == k]
        skel = set()
        for f in gens:
            s = f
            while True:
                skel.add(s)
                if s == 0:
                    break
                s = (s - 1) & f
        for sigma in sorted(skel, key=lambda x: (popcount(x), x)):
            d = k - popcount(sigma) - 1
            if d <= 0:
                continue
            link = {g for g in skel if not g & sigma and g | sigma in skel}
            betti = betti_gf2(SimplicialComplex(cx.vertices, link, check=False))
            low = [i for i in range(min(d, len(betti))) if betti[i]]
            if low:
                face = ", ".join(str(cx.vertices[i]) for i in bits(sigma)) or "empty face"
                return (f"pure {k - 1}-skeleton: link of {{{face}}} has reduced GF(2) "
                        f"Betti numbers {betti} (nonzero below degree {d})")
    return None


def search_shelling(cx: SimplicialComplex, budget: int | None = None) -> ShellingCertificate:
    """Exhaustive memoized backtracking only; ``budget`` caps visited search nodes.

    Single-threaded and deterministic: candidate facets are tried in
    canonical facet order, so the returned certificate is reproducible.
    """
    budget = default_budget() if budget is None else budget
    facets = list(cx.facets)
    search = _Search(facets, budget)
    try:
        order = search.run()
    except _BudgetExhausted:
        return ShellingCertificate(UNKNOWN, nodes=search.nodes, budget=budget)
    if order is None:
        return ShellingCertificate(NOT_SHELLABLE, nodes=search.nodes, budget=budget)
    labels = [cx.labels(facets[i]) for i in order]
    if not verify_shelling(cx, labels):
        raise AssertionError("search produced an order that fails verification")
    return ShellingCertificate(SHELLABLE, labels, search.nodes, budget)


def is_shellable(cx: SimplicialComplex, budget: int | None = None, *,
                 obstructions: bool = True) -> ShellingCertificate:
    """Decide shellability: obstruction check first, then backtracking search."""
    budget = default_budget() if budget is None else budget
    if obstructions:
        witness = find_obstruction(cx)
        if witness:
            return ShellingCertificate(NOT_SHELLABLE, budget=budget, method="obstruction", witness=witness)
    return search_shelling(cx, budget)


def verify_shelling(cx: SimplicialComplex, order: list[tuple]) -> bool:
    """Check a facet order directly: build each intersection complex and test its purity."""
    masks = [cx.mask(f) for f in order]
    if sorted(masks) != sorted(cx.facets):
        return False
    seen: set[int] = set()
    for j, f in enumerate(masks):
        mine = {s for s in _submasks(f)}
        if j:
            inter = mine & seen
            tops = [x for x in inter if not any(y != x and y & x == x for y in inter)]
            if {popcount(x) for x in tops} != {popcount(f) - 1}:
                return False
        seen |= mine
    return True


def _submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask
