"""
Joint invariant subspaces.

The smallest subspace containing ``v`` and invariant under every ``T_j`` is
reached by the ascending chain ``V_0 ⊆ V_1 ⊆ ...`` where ``V_k`` is spanned
by ``u(T) v`` for words u of length <= k.  The chain grows strictly until it
stops, so it stops after at most ``dim`` steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .exactla import DimensionError, IncrementalSpan, RatMatrix, as_rat, column_dict, rank
from .freealg import Word


@dataclass(frozen=True)
class KrylovClosure:
    """Basis of the closure, one labelled column per accepted vector.

    ``labels[i]`` is ``(u, w)`` with ``w = u(T) v`` the i-th basis column;
    letter j of u stands for ``T_j`` and the first letter is applied last.
    """

    ambient_dim: int
    basis: RatMatrix
    labels: tuple
    stabilized_at: int

    @property
    def rank(self) -> int:
        return self.basis.cols


def closure_chain(ops: Sequence[Callable], v: Mapping) -> tuple[IncrementalSpan, list, int]:
    """Run the ascending chain for sparse vectors.

    ``ops[j]`` maps a vector (mapping key -> Fraction) to its image under the
    (j+1)-th operator.  Returns the span, the accepted ``(word, vector)``
    pairs in order, and the first k with ``V_k == V_{k+1}``.
    """
    span = IncrementalSpan()
    kept: list[tuple[Word, Mapping]] = []
    if not span.add(v):
        return span, kept, 0
    kept.append(((), v))
    frontier = [0]
    k = 0
    while True:
        nxt = []
        for j, op in enumerate(ops, start=1):
            for idx in frontier:
                u, w = kept[idx]
                image = op(w)
                if span.add(image):
                    nxt.append(len(kept))
                    kept.append(((j,) + u, image))
        if not nxt:
            return span, kept, k
        frontier = nxt
        k += 1


def _check_ops(T: Sequence[RatMatrix], n: int):
    for Tj in T:
        if Tj.shape != (n, n):
            raise DimensionError(f"operator of shape {Tj.shape} on a space of dimension {n}")


def krylov_closure(T: Sequence[RatMatrix], v: Sequence) -> KrylovClosure:
    n = len(v)
    _check_ops(T, n)
    ops = []
    for Tj in T:
        def op(w, Tj=Tj):
            dense = [0] * n
            for i, c in w.items():
                dense[i] = c
            return column_dict(Tj.matvec(dense))
        ops.append(op)
    _, kept, stab = closure_chain(ops, column_dict(v))
    columns = []
    labels = []
    for u, w in kept:
        col = [0] * n
        for i, c in w.items():
            col[i] = c
        columns.append(col)
        labels.append((u, tuple(as_rat(c) for c in col)))
    basis = RatMatrix.from_columns(columns, rows=n)
    return KrylovClosure(n, basis, tuple(labels), stab)


def is_invariant_subspace(Y: RatMatrix, V: RatMatrix) -> bool:
    """Whether ``Y`` maps the column space of ``V`` into itself."""
    n = V.rows
    if Y.shape != (n, n):
        raise DimensionError(f"operator of shape {Y.shape} against {n}-row subspace matrix")
    if V.cols == 0:
        return True
    return rank((Y @ V).hstack(V)) == rank(V)


def is_joint_invariant(T: Sequence[RatMatrix], V: RatMatrix) -> bool:
    return all(is_invariant_subspace(Tj, V) for Tj in T)
