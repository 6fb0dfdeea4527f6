"""
Non-membership witnesses.

A witness is a matrix tuple X and a full-column-rank V whose column space is
invariant under every f_j(X) but not under g(X).  Every polynomial in the
f_j preserves a jointly invariant subspace, so a verified witness proves
that g is outside the subalgebra.

The searches here are sound but incomplete: they only look at rational
matrices, at small sizes, along a fixed family of candidates.  Coming back
empty-handed proves nothing.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactla import DimensionError, RatMatrix, as_rat, rank
from .fock import creation_tuple, fock_basis, fock_dim
from .freealg import AlphabetError, MatTuple, NcPoly, evaluate_at_matrices
from .invariant import is_invariant_subspace, is_joint_invariant, krylov_closure

logger = logging.getLogger(__name__)

STRATEGIES = frozenset({"random", "fock-compression", "krylov-subspaces"})

# Fock compressions above this dimension are skipped.
MAX_FOCK_DIM = 64


@dataclass(frozen=True)
class Witness:
    n: int
    r: int
    X: MatTuple
    V: RatMatrix
    checked: bool = False


@dataclass(frozen=True)
class SearchConfig:
    max_n: int = 3
    max_trials_per_size: int = 200
    seed: int = 0
    entry_pool: tuple = (-1, 0, 0, 1)
    strategies: frozenset = field(default=STRATEGIES)

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be at least 1")
        if not self.entry_pool:
            raise ValueError("entry_pool must not be empty")
        unknown = set(self.strategies) - STRATEGIES
        if unknown:
            raise ValueError(f"unknown strategies: {sorted(unknown)}")
        object.__setattr__(self, "entry_pool", tuple(as_rat(e) for e in self.entry_pool))
        object.__setattr__(self, "strategies", frozenset(self.strategies))


def _check_arity(g: NcPoly, f: Sequence[NcPoly], X: MatTuple):
    for p in (g, *f):
        if p.nvars != len(X.mats):
            raise AlphabetError(f"polynomial over {p.nvars} letters at a {len(X.mats)}-tuple")


def verify_witness(g: NcPoly, f: Sequence[NcPoly], X: MatTuple, V: RatMatrix) -> bool:
    """Exact check of the three witness conditions."""
    _check_arity(g, f, X)
    if V.rows != X.n:
        raise DimensionError(f"subspace matrix with {V.rows} rows for {X.n}x{X.n} matrices")
    if not 1 <= V.cols <= X.n:
        return False
    if rank(V) != V.cols:
        return False
    if not is_joint_invariant([evaluate_at_matrices(fj, X) for fj in f], V):
        return False
    return not is_invariant_subspace(evaluate_at_matrices(g, X), V)


def _try_closures(g, f, X: MatTuple, FX, GX, vectors) -> Optional[Witness]:
    n = X.n
    for v in vectors:
        if not any(v):
            continue
        C = krylov_closure(FX, v)
        if not 0 < C.rank < n:
            continue
        if is_invariant_subspace(GX, C.basis):
            continue
        checked = verify_witness(g, f, X, C.basis)
        if checked:
            return Witness(n, C.rank, X, C.basis, checked=True)
    return None


def _unit_vectors(n):
    return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]


def search_witness_random(g: NcPoly, f: Sequence[NcPoly], cfg: SearchConfig) -> Optional[Witness]:
    """Random matrix tuples; candidate subspaces are closures of random vectors.

    Closures are jointly invariant by construction, so only the condition on
    g is really tested.  With the ``krylov-subspaces`` strategy, closures of
    the standard basis vectors are tried as well.
    """
    rng = random.Random(cfg.seed)
    d = g.nvars
    pool = cfg.entry_pool
    for n in range(1, cfg.max_n + 1):
        for _ in range(cfg.max_trials_per_size):
            X = MatTuple(n, tuple(
                RatMatrix(n, n, tuple(rng.choice(pool) for _ in range(n * n)))
                for _ in range(d)
            ))
            FX = [evaluate_at_matrices(fj, X) for fj in f]
            GX = evaluate_at_matrices(g, X)
            vectors = []
            if "random" in cfg.strategies:
                vectors += [tuple(rng.choice(pool) for _ in range(n)) for _ in range(n)]
            if "krylov-subspaces" in cfg.strategies:
                vectors += _unit_vectors(n)
            w = _try_closures(g, f, X, FX, GX, vectors)
            if w is not None:
                logger.debug("random search: witness at n=%d, r=%d", w.n, w.r)
                return w
    return None


def search_witness_structured(g: NcPoly, f: Sequence[NcPoly], cfg: SearchConfig) -> Optional[Witness]:
    """Creation operators of truncated Fock spaces of order 1..max_n as X.

    Candidate subspaces are the closures of the basis words under f_j(X).
    """
    if "fock-compression" not in cfg.strategies:
        return None
    d = g.nvars
    for m in range(1, cfg.max_n + 1):
        if fock_dim(d, m) > MAX_FOCK_DIM:
            break
        X = creation_tuple(fock_basis(d, m))
        FX = [evaluate_at_matrices(fj, X) for fj in f]
        GX = evaluate_at_matrices(g, X)
        w = _try_closures(g, f, X, FX, GX, _unit_vectors(X.n))
        if w is not None:
            logger.debug("structured search: witness at order %d", m)
            return w
    return None


def search_witness(g: NcPoly, f: Sequence[NcPoly], cfg: SearchConfig) -> Optional[Witness]:
    """Structured candidates first, then random ones; first verified hit wins."""
    return search_witness_structured(g, f, cfg) or search_witness_random(g, f, cfg)
