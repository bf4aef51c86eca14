"""Reduced Betti numbers over GF(2) from boundary-matrix ranks."""

from __future__ import annotations

from .complexes import ComplexError, SimplicialComplex, bits
from .matroid import popcount


def faces_by_size(cx: SimplicialComplex) -> list[list[int]]:
    top = max(popcount(f) for f in cx.faces)
    out: list[list[int]] = [[] for _ in range(top + 1)]
    for f in cx.sorted_faces():
        out[popcount(f)].append(f)
    return out


def boundary_matrix(cx: SimplicialComplex, d: int) -> list[int]:
    """Boundary map from d-faces to (d-1)-faces, one bitmask row per d-face.

    ``d = 0`` gives the augmentation onto the empty face.
    """
    layers = faces_by_size(cx)
    if d + 1 >= len(layers) or d < 0:
        return []
    row_index = {f: i for i, f in enumerate(layers[d])}
    rows = []
    for f in layers[d + 1]:
        r = 0
        for v in bits(f):
            r |= 1 << row_index[f & ~(1 << v)]
        rows.append(r)
    return rows


def gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


def boundary_squares_to_zero(cx: SimplicialComplex) -> bool:
    layers = faces_by_size(cx)
    for d in range(1, len(layers) - 1):
        lower = boundary_matrix(cx, d - 1)
        for row in boundary_matrix(cx, d):
            acc = 0
            for i in bits(row):
                acc ^= lower[i]
            if acc:
                return False
    return True


def betti_gf2(cx: SimplicialComplex) -> tuple[int, ...]:
    """Reduced Betti numbers ``(b~0, ..., b~dim)``."""
    if not cx.vertices:
        raise ComplexError("homology of the empty complex is not computed")
    layers = faces_by_size(cx)
    dim = len(layers) - 2
    ranks = [gf2_rank(boundary_matrix(cx, d)) for d in range(dim + 1)] + [0]
    betti = tuple(len(layers[d + 1]) - ranks[d] - ranks[d + 1] for d in range(dim + 1))
    chi = sum((-1) ** i * b for i, b in enumerate(betti))
    if chi != reduced_euler(cx):
        raise ArithmeticError(f"Betti numbers {betti} disagree with reduced Euler characteristic {reduced_euler(cx)}")
    return betti


def reduced_euler(cx: SimplicialComplex) -> int:
    return cx.reduced_euler()
