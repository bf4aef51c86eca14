"""Biflats, bichains and the biflats / unmixed / conormal complexes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .complexes import (
    ComplexError,
    Poset,
    SimplicialComplex,
    bergman_complex,
    bits,
    join,
    order_complex,
)
from .matroid import Matroid, format_set, parse_set, require_coloopless


@dataclass(frozen=True)
class Biflat:
    """A pair ``F|G`` of a flat and a dual flat with ``F | G == E``."""

    F: int
    G: int
    n: int

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def __str__(self) -> str:
        return f"{format_set(self.F, self.n)}|{format_set(self.G, self.n)}"

    def short(self) -> str:
        """Compact notation, e.g. ``12|E``."""
        return f"{format_set(self.F, self.n, compact=True)}|{format_set(self.G, self.n, compact=True)}"

    def __repr__(self) -> str:
        return f"Biflat({self.short()})"

    def __le__(self, other: Biflat) -> bool:
        return self.F & other.F == self.F and self.G & other.G == other.G

    def __lt__(self, other: Biflat) -> bool:
        return self != other and self <= other

    def __ge__(self, other: Biflat) -> bool:
        return other <= self

    def __gt__(self, other: Biflat) -> bool:
        return other < self

    def comparable(self, other: Biflat) -> bool:
        return self <= other or other <= self

    @property
    def mixed(self) -> bool:
        return self.F != self.ground and self.G != self.ground

    @property
    def meet(self) -> int:
        """``F & G``; a bichain is a biflag when these do not cover E."""
        return self.F & self.G


def is_mixed(b: Biflat) -> bool:
    return b.mixed


def parse_biflat(text: str, n: int) -> Biflat:
    """Read ``F|G`` in canonical (``1,2|3,4``) or compact (``12|E``) notation."""
    left, sep, right = text.partition("|")
    if not sep:
        raise ValueError(f"biflat {text!r} lacks a '|' separator")
    return Biflat(parse_set(left, n), parse_set(right, n), n)


@lru_cache(maxsize=64)
def enumerate_biflats(m: Matroid) -> tuple[Biflat, ...]:
    """All biflats of ``m``, sorted by canonical label."""
    require_coloopless(m)
    d = m.dual()
    e = m.ground
    out = []
    for f in m.flats:
        if not f:
            continue
        for g in d.flats:
            if g and f | g == e and not (f == e and g == e):
                out.append(Biflat(f, g, m.n))
    return tuple(sorted(out, key=str))


def _lt(a: Biflat, b: Biflat) -> bool:
    return a < b


def biflat_poset(m: Matroid) -> Poset:
    return _poset(m, False)


def unmixed_poset(m: Matroid) -> Poset:
    return _poset(m, True)


@lru_cache(maxsize=64)
def _poset(m: Matroid, unmixed: bool) -> Poset:
    elems = [b for b in enumerate_biflats(m) if not (unmixed and b.mixed)]
    return Poset(elems, _lt)


def hasse(m: Matroid) -> list[tuple[Biflat, Biflat]]:
    return biflat_poset(m).covers()


@lru_cache(maxsize=64)
def biflats_complex(m: Matroid) -> SimplicialComplex:
    return order_complex(biflat_poset(m))


@lru_cache(maxsize=64)
def unmixed_complex(m: Matroid) -> SimplicialComplex:
    return order_complex(unmixed_poset(m))


# ---------------------------------------------------------------- bichains

def as_bichain(chain: Iterable[Biflat]) -> tuple[Biflat, ...]:
    """Sort ``chain`` increasingly, raising unless it is a chain of distinct biflats."""
    items = list(chain)
    if len(set(items)) != len(items):
        raise ValueError("bichain repeats a biflat")
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if not a.comparable(b):
                raise ValueError(f"{a.short()} and {b.short()} are incomparable")
    # Linear order: sort by (|F| ascending, |G| descending) is consistent with <.
    return tuple(sorted(items, key=lambda b: (bin(b.F).count("1"), -bin(b.G).count("1"))))


def is_biflag(m: Matroid, chain: Iterable[Biflat]) -> bool:
    c = as_bichain(chain)
    union = 0
    for b in c:
        union |= b.meet
    return union != m.ground


def gap_condition(m: Matroid, chain: Iterable[Biflat]) -> bool:
    """Pad with ``{}|E`` and ``E|{}``; true iff some ``F_j | G_{j+1} != E``."""
    c = as_bichain(chain)
    e = m.ground
    fs = [0] + [b.F for b in c] + [e]
    gs = [e] + [b.G for b in c] + [0]
    return any(fs[j] | gs[j + 1] != e for j in range(len(c) + 1))


def bichains(m: Matroid) -> list[tuple[Biflat, ...]]:
    """Every bichain (including the empty one), each sorted increasingly."""
    cx = biflats_complex(m)
    return [as_bichain(cx.labels(f)) for f in cx.sorted_faces()]


def non_biflags(m: Matroid) -> list[tuple[Biflat, ...]]:
    return [c for c in bichains(m) if not is_biflag(m, c)]


@lru_cache(maxsize=64)
def conormal_complex(m: Matroid) -> SimplicialComplex:
    cx = biflats_complex(m)
    e = m.ground
    meets = [v.meet for v in cx.vertices]
    keep = set()
    for f in cx.faces:
        union = 0
        for i in bits(f):
            union |= meets[i]
        if union != e:
            keep.add(f)
    for f in keep:
        for i in bits(f):
            if f & ~(1 << i) not in keep:
                raise ComplexError(f"biflags not downward closed at {cx.labels(f)}")
    return SimplicialComplex(cx.vertices, keep, check=False)


def is_uniform(m: Matroid) -> bool:
    """No mixed biflats; cross-checked against ``rank(S) = min(|S|, r)``."""
    by_biflats = not any(b.mixed for b in enumerate_biflats(m))
    by_rank = m.rank_is_uniform()
    if by_biflats != by_rank:
        raise AssertionError(
            f"uniformity criteria disagree: no-mixed-biflats={by_biflats}, rank-formula={by_rank}"
        )
    return by_rank


def unmixed_join_isomorphism(m: Matroid) -> dict[Biflat, str]:
    """Map ``F|E -> F`` and ``E|G -> G`` onto the join of the Bergman complexes.

    Flat labels are tagged ``M:`` and dual flat labels ``D:`` to keep the two
    vertex sets disjoint.  The map is checked to carry the unmixed complex
    exactly onto the join.
    """
    e = m.ground
    phi = {}
    for b in unmixed_poset(m).elements:
        if b.G == e:
            phi[b] = "M:" + format_set(b.F, m.n)
        else:
            phi[b] = "D:" + format_set(b.G, m.n)
    target = join(bergman_complex(m, "M:"), bergman_complex(m.dual(), "D:"))
    source = unmixed_complex(m)
    if len(set(phi.values())) != len(phi) or set(phi.values()) != set(target.vertices):
        raise AssertionError("unmixed biflats are not in bijection with the Bergman vertices")
    image = SimplicialComplex.from_faces([phi[v] for v in face] for face in source.label_faces)
    if image != target:
        raise AssertionError("vertex map is not a simplicial isomorphism onto the join")
    return phi


def format_bichain(chain: Sequence[Biflat], *, compact: bool = False) -> str:
    return " + ".join(b.short() if compact else str(b) for b in chain)
