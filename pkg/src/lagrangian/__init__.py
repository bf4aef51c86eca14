"""Biflats, conormal complexes and certified collapse sequences for matroids."""

from .biflats import (
    Biflat,
    biflat_poset,
    biflats_complex,
    conormal_complex,
    enumerate_biflats,
    gap_condition,
    is_biflag,
    is_uniform,
    unmixed_complex,
    unmixed_poset,
)
from .collapse import (
    CollapsePair,
    CollapseSequence,
    FreenessViolation,
    apply_sequence,
    minimal_bichains,
    theorem1_sequence,
    theorem2_sequence,
)
from .complexes import Poset, SimplicialComplex, bergman_complex, join, order_complex
from .homology import betti_gf2, reduced_euler
from .matroid import Matroid, from_graph, load, loads, parse_matroid, uniform
from .shelling import is_shellable

__all__ = [
    "Biflat", "CollapsePair", "CollapseSequence", "FreenessViolation", "Matroid", "Poset",
    "SimplicialComplex", "apply_sequence", "bergman_complex", "betti_gf2", "biflat_poset",
    "biflats_complex", "conormal_complex", "enumerate_biflats", "from_graph", "gap_condition",
    "is_biflag", "is_shellable", "is_uniform", "join", "load", "loads", "minimal_bichains",
    "order_complex", "parse_matroid", "reduced_euler", "theorem1_sequence", "theorem2_sequence",
    "uniform", "unmixed_complex", "unmixed_poset",
]
