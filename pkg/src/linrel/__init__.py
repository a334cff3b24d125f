"""Exact calculus of linear relations on finite-dimensional spaces."""
from .exceptions import CriterionError, DimensionError, PreconditionError
from .field import GF, QQ, FieldSpec
from .linalg import Matrix, column_echelon, nullspace, rank, solve
from .relation import (
    LinearRelation,
    compose,
    diagonal,
    equalizer,
    from_operator,
    from_pairs,
    identity,
    image,
    inverse,
    pointwise_diff,
    pointwise_sum,
    preimage,
    rect,
    subspace_sum,
    subspace_sum_direct,
    zero_operator,
    zero_relation,
)
from .subspace import Subspace, complement_within, coordinate, enumerate_subspaces, span
from .projections import Kind, classify, linear_selection, mp, projection

__version__ = "0.1.0"
