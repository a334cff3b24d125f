"""Seeded random instances: subspaces, relations, projections and their kin.

Everything is drawn from one :class:`random.Random`, so a seed fixes the whole
stream.  Over the rationals entries are small integers; over a prime field
they are uniform residues.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import subspace as sub
from .exceptions import PreconditionError
from .field import QQ, FieldSpec
from .linalg import Matrix, inverse as matrix_inverse
from .projections import assemble, mp
from .relation import LinearRelation, compose, from_operator, inverse
from .subspace import Subspace

EXHAUSTIVE = "exhaustive"
RANDOM = "random"
REJECTION_BUDGET = 2000


class GenerationError(RuntimeError):
    """Rejection sampling ran out of budget."""


@dataclass(frozen=True)
class GeneratorConfig:
    field: FieldSpec = QQ
    ambient_dim: int = 2
    mode: str = RANDOM
    seed: int = 0
    trials: int = 200

    def __post_init__(self):
        if self.mode not in (EXHAUSTIVE, RANDOM):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.ambient_dim < 0:
            raise ValueError("ambient dimension must be nonnegative")
        if self.mode == EXHAUSTIVE:
            if not self.field.is_prime_field:
                raise PreconditionError("exhaustive mode needs a prime field")
            if self.field.p ** (2 * self.ambient_dim) > sub.ENUMERATION_GUARD:
                raise PreconditionError(f"{self.field!r}^{2 * self.ambient_dim} is too large to enumerate")


class InstanceGenerator:
    """Stateful source of random objects on ``field^n``."""

    def __init__(self, field: FieldSpec = QQ, n: int = 2, seed: int = 0):
        self.field = field
        self.n = n
        self.rng = random.Random(seed)

    @classmethod
    def from_config(cls, config: GeneratorConfig) -> "InstanceGenerator":
        return cls(config.field, config.ambient_dim, config.seed)

    # -- scalars, vectors, matrices --------------------------------------------------

    def scalar(self, nonzero: bool = False):
        f = self.field
        if f.is_prime_field:
            lo = 1 if nonzero else 0
            return self.rng.randrange(lo, f.p)
        while True:
            a = self.rng.randint(-2, 2)
            if a or not nonzero:
                return f(a)

    def vector(self, length: Optional[int] = None) -> tuple:
        length = self.n if length is None else length
        return tuple(self.scalar() for _ in range(length))

    def matrix(self, nrows: Optional[int] = None, ncols: Optional[int] = None, max_rank: Optional[int] = None) -> Matrix:
        """Random matrix; ``max_rank`` caps the rank by multiplying thin factors."""
        nrows = self.n if nrows is None else nrows
        ncols = self.n if ncols is None else ncols
        if max_rank is None:
            return Matrix.from_rows([self.vector(ncols) for _ in range(nrows)], self.field, ncols)
        left = Matrix.from_rows([self.vector(max_rank) for _ in range(nrows)], self.field, max_rank)
        right = Matrix.from_rows([self.vector(ncols) for _ in range(max_rank)], self.field, ncols)
        return left @ right

    def invertible_matrix(self, n: Optional[int] = None) -> Matrix:
        """Unit upper triangular times unit lower triangular times a permutation."""
        n = self.n if n is None else n
        f = self.field
        upper = [[f.one if i == j else (self.scalar() if j > i else f.zero) for j in range(n)] for i in range(n)]
        lower = [[f.one if i == j else (self.scalar() if j < i else f.zero) for j in range(n)] for i in range(n)]
        perm = list(range(n))
        self.rng.shuffle(perm)
        P = [[f.one if perm[i] == j else f.zero for j in range(n)] for i in range(n)]
        return Matrix.from_rows(upper, f, n) @ Matrix.from_rows(lower, f, n) @ Matrix.from_rows(P, f, n)

    def idempotent_matrix(self, n: Optional[int] = None) -> Matrix:
        """``G D G^-1`` with ``D`` a random 0/1 diagonal."""
        n = self.n if n is None else n
        f = self.field
        G = self.invertible_matrix(n)
        D = Matrix.from_rows(
            [[(f.one if self.rng.random() < 0.5 else f.zero) if i == j else f.zero for j in range(n)] for i in range(n)],
            f,
            n,
        )
        return G @ D @ matrix_inverse(G)

    # -- subspaces -----------------------------------------------------------------

    def subspace(self, dim: Optional[int] = None, ambient: Optional[int] = None) -> Subspace:
        """Span of ``dim`` random vectors (so possibly smaller); ``dim`` is uniform by default."""
        ambient = self.n if ambient is None else ambient
        if dim is None:
            dim = self.rng.randint(0, ambient)
        return sub.span([self.vector(ambient) for _ in range(dim)], ambient, self.field)

    def subspace_of(self, W: Subspace, dim: Optional[int] = None) -> Subspace:
        """Random subspace of ``W``."""
        if dim is None:
            dim = self.rng.randint(0, W.dim)
        vecs = []
        for _ in range(dim):
            coeffs = [self.scalar() for _ in W.basis]
            vecs.append(_combine(W.basis, coeffs, W.ambient, self.field))
        return sub.span(vecs, W.ambient, self.field)

    def superspace_of(self, U: Subspace, extra: Optional[int] = None) -> Subspace:
        if extra is None:
            extra = self.rng.randint(0, U.ambient - U.dim)
        return U + self.subspace(extra, U.ambient)

    def complement(self, U: Subspace, W: Subspace) -> Subspace:
        """Random complement of ``U`` inside ``W`` (``U <= W``)."""
        if not U <= W:
            raise PreconditionError("U must lie in W")
        need = W.dim - U.dim
        for _ in range(REJECTION_BUDGET):
            C = self.subspace_of(W, need)
            if C.dim == need and sub.is_direct(C, U):
                return C
        return sub.complement_within(U, W)

    def direct_pair(self):
        """Two subspaces with trivial intersection, from disjoint columns of an invertible matrix."""
        G = self.invertible_matrix()
        cols = G.columns
        labels = [self.rng.randrange(3) for _ in range(self.n)]
        first = sub.span([c for c, t in zip(cols, labels) if t == 0], self.n, self.field)
        second = sub.span([c for c, t in zip(cols, labels) if t == 1], self.n, self.field)
        return first, second

    # -- relations ------------------------------------------------------------------

    def relation(self, n: Optional[int] = None, m: Optional[int] = None, operator: bool = False) -> LinearRelation:
        """``{(d, A d)} +^ ({0} x M)`` with random domain ``D``, low-rank ``A`` and multivalued part ``M``."""
        n = self.n if n is None else n
        m = self.n if m is None else m
        D = self.subspace(ambient=n)
        M = sub.zero(m, self.field) if operator else self.subspace(self.rng.randint(0, m), m)
        A = self.matrix(m, n, max_rank=self.rng.randint(0, min(n, m)))
        gens = [tuple(d) + tuple(A @ d) for d in D.basis]
        zero = (self.field.zero,) * n
        gens += [zero + tuple(y) for y in M.basis]
        return LinearRelation(n, m, sub.span(gens, n + m, self.field))

    def operator(self, n: Optional[int] = None, m: Optional[int] = None) -> LinearRelation:
        return self.relation(n, m, operator=True)

    def everywhere_operator(self, n: Optional[int] = None, m: Optional[int] = None) -> LinearRelation:
        n = self.n if n is None else n
        m = self.n if m is None else m
        return from_operator(self.matrix(m, n, max_rank=self.rng.randint(0, min(n, m))))

    def invertible(self) -> LinearRelation:
        return from_operator(self.invertible_matrix())

    def mp(self) -> LinearRelation:
        """Multivalued projection whose range and kernel often overlap."""
        M = self.subspace()
        N = self.subspace_of(M) + self.subspace(self.rng.randint(0, self.n))
        return mp(M, N)

    def projection(self) -> LinearRelation:
        S, N = self.direct_pair()
        return mp(S, N)

    def super_idempotent(self) -> LinearRelation:
        """``P0 +^ ({0} x T)`` for a random projection ``P0`` and subspace ``T``."""
        P0 = self.projection()
        return assemble(P0, self._mul_candidate(P0))

    def _mul_candidate(self, P0: LinearRelation) -> Subspace:
        pick = self.rng.randrange(3)
        if pick == 0:
            return self.subspace_of(P0.ker)
        if pick == 1:
            return self.subspace_of(P0.ker) + self.subspace_of(P0.ran, self.rng.randint(0, 1))
        return self.subspace()

    def idempotent(self) -> LinearRelation:
        """Rejection sample on the idempotency test of the selection form, then conjugate."""
        for _ in range(REJECTION_BUDGET):
            P0 = self.projection()
            T = self._mul_candidate(P0)
            if (T & P0.dom) == (P0.ker & (P0.ran + T)):
                return self.conjugate(assemble(P0, T))
        raise GenerationError(f"no idempotent found in {REJECTION_BUDGET} attempts")

    def conjugate(self, T: LinearRelation, G: Optional[LinearRelation] = None) -> LinearRelation:
        """``G T G^-1`` for a random (or given) invertible ``G``."""
        G = self.invertible() if G is None else G
        return compose(compose(G, T), inverse(G))

    # -- structured pairs -----------------------------------------------------------

    def commuting_mps(self):
        """Two commuting multivalued projections, built coordinatewise in a random basis."""
        pairs = _commuting_types(self.field)
        G = self.invertible_matrix().columns
        choice = [self.rng.choice(pairs) for _ in range(self.n)]
        return _typed_mp(G, [c[0] for c in choice], self.n, self.field), _typed_mp(
            G, [c[1] for c in choice], self.n, self.field
        )

    def commuting_mp_and_projection(self):
        """A multivalued projection and a projection that commute; the latter is single-valued."""
        pairs = [t for t in _commuting_types(self.field) if not (t[1][0] and t[1][1])]
        G = self.invertible_matrix().columns
        choice = [self.rng.choice(pairs) for _ in range(self.n)]
        return _typed_mp(G, [c[0] for c in choice], self.n, self.field), _typed_mp(
            G, [c[1] for c in choice], self.n, self.field
        )


def _combine(vectors, coeffs, length, field):
    out = [field.zero] * length
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                out[i] = field.reduce(out[i] + c * a)
    return tuple(out)


_TYPES = ((False, False), (True, False), (False, True), (True, True))


def _typed_mp(columns, types, n, field):
    """MP whose range/kernel contain the columns flagged in ``types``."""
    M = sub.span([c for c, (in_m, _) in zip(columns, types) if in_m], n, field)
    N = sub.span([c for c, (_, in_n) in zip(columns, types) if in_n], n, field)
    return mp(M, N)


@lru_cache(maxsize=8)
def _commuting_types(field: FieldSpec) -> tuple:
    """Pairs of one-dimensional (range, kernel) types whose MPs commute."""
    e = ((field.one,),)
    out = []
    for s in _TYPES:
        for t in _TYPES:
            P = _typed_mp(e, [s], 1, field)
            Q = _typed_mp(e, [t], 1, field)
            if compose(P, Q) == compose(Q, P):
                out.append((s, t))
    return tuple(out)


def random_subspace(config: GeneratorConfig) -> Subspace:
    return InstanceGenerator.from_config(config).subspace()


def random_relation(config: GeneratorConfig) -> LinearRelation:
    return InstanceGenerator.from_config(config).relation()


def random_mp(config: GeneratorConfig) -> LinearRelation:
    return InstanceGenerator.from_config(config).mp()


def random_idempotent(config: GeneratorConfig) -> LinearRelation:
    return InstanceGenerator.from_config(config).idempotent()


def random_super_idempotent(config: GeneratorConfig) -> LinearRelation:
    return InstanceGenerator.from_config(config).super_idempotent()
