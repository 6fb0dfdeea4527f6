from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncmember.exactla import DimensionError, RatMatrix, rank
from ncmember.freealg import evaluate_word, words_up_to
from ncmember.invariant import is_invariant_subspace, is_joint_invariant, krylov_closure

from strategies import matrices

M = RatMatrix.from_rows
J = M([[0, 1], [0, 0]])
e1 = (1, 0)
e2 = (0, 1)

ints = st.integers(-2, 2).map(Fraction)


def col(*v):
    return RatMatrix.from_columns([v])


def det(rows):
    # Leibniz expansion; exponential, only for the tiny minors used here
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += term
    return total


def minors_vanish(A: RatMatrix, k: int) -> bool:
    rows = A.to_rows()
    for ri in combinations(range(A.rows), k):
        for ci in combinations(range(A.cols), k):
            if det([[rows[i][j] for j in ci] for i in ri]):
                return False
    return True


def brute_force_span(T, v, n):
    vecs = []
    for u in words_up_to(len(T), n):
        vecs.append(evaluate_word(u, T, n).matvec(v) if u else tuple(Fraction(e) for e in v))
    return RatMatrix.from_columns(vecs, rows=n)


def same_column_space(A, B):
    r = rank(A)
    return r == rank(B) == rank(A.hstack(B))


def test_closure_jordan_block_e2():
    C = krylov_closure([J], e2)
    assert C.rank == 2
    assert C.stabilized_at == 1
    assert ((1,), (1, 0)) in C.labels
    assert C.labels[0] == ((), (0, 1))


def test_closure_jordan_block_e1():
    C = krylov_closure([J], e1)
    assert C.basis == col(1, 0)
    assert C.stabilized_at == 0


def test_closure_identity_operator():
    v = (Fraction(1), Fraction(-2), Fraction(3))
    C = krylov_closure([RatMatrix.identity(3)], v)
    assert C.basis == col(*v)


def test_closure_of_zero_vector():
    C = krylov_closure([J], (0, 0))
    assert C.rank == 0
    assert C.basis.shape == (2, 0)
    assert C.stabilized_at == 0


def test_closure_dimension_mismatch():
    with pytest.raises(DimensionError):
        krylov_closure([RatMatrix.identity(3)], (1, 0))


def test_invariance_examples():
    V = col(3, -1)
    assert is_invariant_subspace(RatMatrix.identity(2), V)
    assert is_invariant_subspace(J, col(*e1))
    assert not is_invariant_subspace(J, col(*e2))


def test_joint_invariance_examples():
    I2 = RatMatrix.identity(2)
    assert is_joint_invariant([I2, I2], col(1, 1))
    assert not is_joint_invariant([RatMatrix.zeros(2, 2), J], col(*e2))
    assert is_joint_invariant([], col(*e2))


def test_invariance_dimension_mismatch():
    with pytest.raises(DimensionError):
        is_invariant_subspace(RatMatrix.identity(3), col(1, 0))


@st.composite
def closure_inputs(draw, max_n=4, max_l=3):
    n = draw(st.integers(1, max_n))
    l = draw(st.integers(1, max_l))
    T = [draw(matrices(n, n, ints)) for _ in range(l)]
    v = tuple(draw(st.lists(ints, min_size=n, max_size=n)))
    return T, v


@settings(max_examples=60, deadline=None)
@given(closure_inputs())
def test_closure_equals_span_of_all_short_words(inp):
    T, v = inp
    n = len(v)
    C = krylov_closure(T, v)
    assert same_column_space(C.basis, brute_force_span(T, v, n)) or (C.rank == 0 and not any(v))


@settings(max_examples=60)
@given(closure_inputs(max_n=5))
def test_closure_is_invariant_and_bounded(inp):
    T, v = inp
    C = krylov_closure(T, v)
    assert rank(C.basis) == C.rank
    assert C.stabilized_at <= C.ambient_dim
    assert is_joint_invariant(T, C.basis)
    for Tj in T:
        for b in C.basis.columns():
            assert rank(C.basis.hstack(RatMatrix.from_columns([Tj.matvec(b)]))) == C.rank


@settings(max_examples=40)
@given(closure_inputs())
def test_closure_is_minimal(inp):
    T, v = inp
    C = krylov_closure(T, v)
    for b in C.basis.columns():
        Cb = krylov_closure(T, b)
        assert rank(C.basis.hstack(Cb.basis)) == C.rank


@settings(max_examples=60)
@given(closure_inputs())
def test_labels_reproduce_their_vectors(inp):
    T, v = inp
    n = len(v)
    C = krylov_closure(T, v)
    for j, (u, w) in enumerate(C.labels):
        # first letter of u is the last operator applied
        P = RatMatrix.identity(n)
        for k in u:
            P = P @ T[k - 1]
        assert P.matvec(v) == w
        assert C.basis.column(j) == w


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.data())
def test_rank_predicate_agrees_with_minors(n, data):
    r = data.draw(st.integers(1, n))
    Y = data.draw(matrices(n, n, ints))
    V = data.draw(matrices(n, r, ints).filter(lambda V: rank(V) == r))
    assert is_invariant_subspace(Y, V) == minors_vanish((Y @ V).hstack(V), r + 1)
