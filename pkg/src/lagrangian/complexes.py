"""Finite simplicial complexes and posets over labeled vertices.

A complex stores every face explicitly as a bitmask over its (sorted)
vertex list, including the empty face.  The face family is immutable; the
collapse engine copies it into a mutable working set.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .matroid import Matroid, format_set, popcount

Label = Hashable


class ComplexError(ValueError):
    pass


def label_key(v: Label) -> str:
    return str(v)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite strict partial order.

    ``less(a, b)`` must be a strict order on ``elements``; it is checked for
    irreflexivity, antisymmetry and transitivity on construction.
    """

    def __init__(self, elements: Iterable[Label], less: Callable[[Label, Label], bool]):
        self.elements: tuple[Label, ...] = tuple(sorted(set(elements), key=label_key))
        self.index = {x: i for i, x in enumerate(self.elements)}
        k = len(self.elements)
        above = [0] * k
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                if i != j and less(a, b):
                    above[i] |= 1 << j
        self.above = above
        self.below = [0] * k
        for i in range(k):
            for j in bits(above[i]):
                self.below[j] |= 1 << i
        for i in range(k):
            if above[i] & self.below[i]:
                raise ComplexError(f"relation is not antisymmetric at {self.elements[i]}")
            for j in bits(above[i]):
                if above[j] & ~above[i]:
                    raise ComplexError(f"relation is not transitive through {self.elements[j]}")

    def __len__(self) -> int:
        return len(self.elements)

    def lt(self, a: Label, b: Label) -> bool:
        return bool(self.above[self.index[a]] >> self.index[b] & 1)

    def restrict(self, keep: Iterable[Label]) -> Poset:
        keep = set(keep)
        return Poset(keep, self.lt)

    def greater(self, x: Label) -> list[Label]:
        return [self.elements[j] for j in bits(self.above[self.index[x]])]

    def smaller(self, x: Label) -> list[Label]:
        return [self.elements[j] for j in bits(self.below[self.index[x]])]

    def covers(self) -> list[tuple[Label, Label]]:
        out = []
        for i, a in enumerate(self.elements):
            for j in bits(self.above[i]):
                if not self.above[i] & self.below[j]:
                    out.append((a, self.elements[j]))
        return out

    def minimal(self, subset: Iterable[Label]) -> list[Label]:
        sub = 0
        for x in subset:
            sub |= 1 << self.index[x]
        return [self.elements[i] for i in bits(sub) if not self.below[i] & sub]


class SimplicialComplex:
    """Downward-closed family of vertex sets, stored as bitmasks.

    Vertices are kept sorted by canonical label so every derived listing is
    deterministic.  Vertices not occurring in any face are dropped.
    """

    def __init__(self, vertices: Sequence[Label], masks: Iterable[int], *, check: bool = True):
        masks = set(masks)
        masks.add(0)
        used = 0
        for m in masks:
            used |= m
        order = sorted((i for i in bits(used)), key=lambda i: label_key(vertices[i]))
        if order != list(range(len(vertices))):
            remap = {old: new for new, old in enumerate(order)}
            masks = {_remap(m, remap) for m in masks}
            vertices = [vertices[i] for i in order]
        self.vertices: tuple[Label, ...] = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ComplexError("duplicate vertex labels")
        self.faces: frozenset[int] = frozenset(masks)
        if check:
            for f in self.faces:
                for i in bits(f):
                    if f & ~(1 << i) not in self.faces:
                        raise ComplexError(f"not downward closed at {self.labels(f)}")

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[Label]]) -> SimplicialComplex:
        faces = [frozenset(f) for f in faces]
        verts = sorted({v for f in faces for v in f}, key=label_key)
        index = {v: i for i, v in enumerate(verts)}
        return cls(verts, (_mask(f, index) for f in faces))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Label]]) -> SimplicialComplex:
        facets = [frozenset(f) for f in facets]
        verts = sorted({v for f in facets for v in f}, key=label_key)
        index = {v: i for i, v in enumerate(verts)}
        faces: set[int] = set()
        for f in facets:
            faces.update(subsets(_mask(f, index)))
        return cls(verts, faces, check=False)

    @classmethod
    def simplex(cls, vertices: Iterable[Label]) -> SimplicialComplex:
        return cls.from_facets([vertices])

    # -- conversions

    def mask(self, face: Iterable[Label]) -> int:
        try:
            return _mask(face, self.index)
        except KeyError as exc:
            raise ComplexError(f"unknown vertex {exc.args[0]}") from None

    def labels(self, mask: int) -> tuple[Label, ...]:
        return tuple(self.vertices[i] for i in bits(mask))

    @cached_property
    def label_faces(self) -> frozenset[frozenset[Label]]:
        return frozenset(frozenset(self.labels(f)) for f in self.faces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.label_faces == other.label_faces

    def __hash__(self) -> int:
        return hash(self.label_faces)

    def __contains__(self, face: Iterable[Label]) -> bool:
        try:
            return self.mask(face) in self.faces
        except ComplexError:
            return False

    def __len__(self) -> int:
        return len(self.faces)

    def __repr__(self) -> str:
        return f"<SimplicialComplex vertices={len(self.vertices)} faces={len(self.faces)} f={self.f_vector}>"

    def sorted_faces(self, masks: Iterable[int] | None = None) -> list[int]:
        masks = self.faces if masks is None else masks
        return sorted(masks, key=lambda m: (popcount(m), [label_key(v) for v in self.labels(m)]))

    # -- derived data

    @cached_property
    def facets(self) -> tuple[int, ...]:
        n = len(self.vertices)
        top = [f for f in self.faces if not any(f | (1 << i) in self.faces for i in range(n) if not f >> i & 1)]
        return tuple(self.sorted_faces(top))

    def facet_labels(self) -> list[tuple[Label, ...]]:
        return [self.labels(f) for f in self.facets]

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        """``(f_0, f_1, ...)``; the empty face is not counted."""
        top = max(popcount(f) for f in self.faces)
        counts = [0] * top
        for f in self.faces:
            if f:
                counts[popcount(f) - 1] += 1
        return tuple(counts)

    def reduced_euler(self) -> int:
        return -1 + sum((-1) ** i * c for i, c in enumerate(self.f_vector))

    def max_facet_cardinality(self) -> int:
        if not self.vertices:
            raise ComplexError("complex has no vertices")
        return max(popcount(f) for f in self.facets)

    def dimension(self) -> int:
        return self.max_facet_cardinality() - 1

    def is_pure(self) -> bool:
        if not self.vertices:
            raise ComplexError("complex has no vertices")
        return len({popcount(f) for f in self.facets}) == 1

    def cone_vertices(self) -> list[Label]:
        common = -1
        for f in self.facets:
            common &= f
        return [] if not self.vertices else list(self.labels(common & ((1 << len(self.vertices)) - 1)))

    # -- local structure

    def _face(self, face: Iterable[Label] | int) -> int:
        m = face if isinstance(face, int) else self.mask(face)
        if m not in self.faces:
            raise ComplexError(f"{self.labels(m)} is not a face")
        return m

    def link(self, face: Iterable[Label] | int) -> SimplicialComplex:
        f = self._face(face)
        return SimplicialComplex(self.vertices, (g for g in self.faces if not g & f and g | f in self.faces), check=False)

    def open_star(self, face: Iterable[Label] | int) -> frozenset[frozenset[Label]]:
        f = self._face(face)
        return frozenset(frozenset(self.labels(g)) for g in self.faces if g & f == f)

    def deletion(self, face: Iterable[Label] | int) -> SimplicialComplex:
        f = self._face(face)
        return SimplicialComplex(self.vertices, (g for g in self.faces if g & f != f), check=False)

    def minimal_nonfaces(self) -> list[tuple[Label, ...]]:
        n = len(self.vertices)
        found = set()
        for f in self.faces:
            for i in range(n):
                g = f | (1 << i)
                if g == f or g in self.faces or g in found:
                    continue
                if all(g & ~(1 << j) in self.faces for j in bits(g)):
                    found.add(g)
        return [self.labels(g) for g in self.sorted_faces(found)]

    def is_flag(self) -> bool:
        return all(len(nf) == 2 for nf in self.minimal_nonfaces())

    # -- export

    def dumps(self) -> str:
        lines = [f"complex {len(self.vertices)} {len(self.facets)}"]
        for f in self.facets:
            lines.append(" ".join(label_key(v) for v in self.labels(f)))
        return "\n".join(lines) + "\n"


def _mask(face: Iterable[Label], index: dict[Label, int]) -> int:
    m = 0
    for v in face:
        m |= 1 << index[v]
    return m


def _remap(mask: int, remap: dict[int, int]) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << remap[i]
    return out


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask``."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def loads_complex(text: str) -> SimplicialComplex:
    """Read the facet-list format written by :meth:`SimplicialComplex.dumps`.

    Labels come back as strings.
    """
    lines = text.splitlines()
    if not lines or not lines[0].startswith("complex "):
        raise ComplexError("expected 'complex <vertex-count> <facet-count>' header")
    try:
        _, nv, nf = lines[0].split()
        nv, nf = int(nv), int(nf)
    except ValueError:
        raise ComplexError(f"bad header {lines[0]!r}") from None
    body = lines[1:1 + nf]
    if len(body) != nf:
        raise ComplexError(f"expected {nf} facets, found {len(body)}")
    cx = SimplicialComplex.from_facets(line.split() for line in body)
    if len(cx.vertices) != nv:
        raise ComplexError(f"header declares {nv} vertices, facets use {len(cx.vertices)}")
    return cx


def order_complex(poset: Poset) -> SimplicialComplex:
    """Complex whose faces are the chains of ``poset`` (including the empty chain)."""
    faces = [0]
    stack = [(1 << i, poset.above[i]) for i in range(len(poset))]
    while stack:
        chain, cand = stack.pop()
        faces.append(chain)
        for j in bits(cand):
            stack.append((chain | (1 << j), cand & poset.above[j]))
    return SimplicialComplex(poset.elements, faces, check=False)


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    overlap = set(a.vertices) & set(b.vertices)
    if overlap:
        raise ComplexError(f"join needs disjoint vertex sets; shared: {sorted(map(label_key, overlap))}")
    verts = list(a.vertices) + list(b.vertices)
    shift = len(a.vertices)
    return SimplicialComplex(verts, (f | (g << shift) for f in a.faces for g in b.faces), check=False)


def bergman_complex(m: Matroid, tag: str = "") -> SimplicialComplex:
    """Order complex of the proper nonempty flats.

    Vertices are canonical flat labels, optionally prefixed with ``tag`` so
    the complexes of a matroid and its dual can be joined.
    """
    label = {f: tag + format_set(f, m.n) for f in m.proper_flats}
    inv = {v: f for f, v in label.items()}
    poset = Poset(inv, lambda a, b: a != b and inv[a] & inv[b] == inv[a])
    return order_complex(poset)
