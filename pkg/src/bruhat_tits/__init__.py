"""Exact computations in the Bruhat-Tits building of SL_n over Q_p, realized
as diagonalized non-Archimedean norms, with its seminorm compactification and
the enumerable SL_2 / SL_3 cases."""

from .building import (
    Apartment,
    BuildingPoint,
    RelPos,
    act,
    cartan,
    common_basis,
    distance2,
    eval_point,
    fold_fixed,
    normalize,
    reduce_to_chamber,
    relpos,
    stabilizes,
    vertex_type,
)
from .compactification import (
    Polynomial,
    Stratum,
    boundary_stab_check,
    eval_poly,
    poly_change_basis,
    quotient_embed,
    ray_limit,
    seminorm_equal,
    stratum_of,
)
from .linalg import ExactMatrix, SnfResult, hnf_dvr, is_unimodular, snf_dvr, solve
from .scalars import INF, ExtScalar, FieldConfig, ext_arith, ext_val, val_p
from .tree import TreeVertex, ball, canonical_vertex, galois_gap, link_counts_sl3, neighbors, path

__version__ = "0.1.0"
