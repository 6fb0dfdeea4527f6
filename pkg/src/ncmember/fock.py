"""
The truncated Fock space of order m: the span of all words of length <= m.

Left creation operators prepend a letter and kill words of maximal length.
Polynomials act on vectors symbolically, ``f(L) w = truncate(f * w, m)``;
explicit matrices are only built when asked for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactla import DimensionError, RatMatrix, as_rat
from .freealg import AlphabetError, MatTuple, NcPoly, Word, mul_truncated, words_up_to


@dataclass(frozen=True)
class FockSpace:
    d: int
    m: int
    basis: tuple = field(repr=False)
    index: dict = field(repr=False, compare=False, hash=False)

    @property
    def dim(self) -> int:
        return len(self.basis)


def fock_dim(d: int, m: int) -> int:
    if d == 1:
        return m + 1
    return (d ** (m + 1) - 1) // (d - 1)


def fock_basis(d: int, m: int) -> FockSpace:
    if d < 1 or m < 0:
        raise ValueError("need d >= 1 and m >= 0")
    basis = tuple(words_up_to(d, m))
    return FockSpace(d, m, basis, {w: i for i, w in enumerate(basis)})


@dataclass(frozen=True)
class FockVector:
    space: FockSpace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise DimensionError(f"{len(self.coords)} coordinates in a space of dimension {self.space.dim}")
        object.__setattr__(self, "coords", tuple(as_rat(c) for c in self.coords))

    @classmethod
    def basis_vector(cls, space: FockSpace, w: Word) -> "FockVector":
        coords = [Fraction(0)] * space.dim
        coords[space.index[tuple(w)]] = Fraction(1)
        return cls(space, tuple(coords))

    @classmethod
    def vacuum(cls, space: FockSpace) -> "FockVector":
        return cls.basis_vector(space, ())

    @classmethod
    def from_poly(cls, space: FockSpace, p: NcPoly) -> "FockVector":
        if p.nvars != space.d:
            raise AlphabetError(f"polynomial over {p.nvars} letters in a Fock space over {space.d}")
        coords = [Fraction(0)] * space.dim
        for w, c in p.terms.items():
            if len(w) > space.m:
                raise DimensionError(f"word of length {len(w)} outside a Fock space of order {space.m}")
            coords[space.index[w]] = c
        return cls(space, tuple(coords))

    def to_poly(self) -> NcPoly:
        return NcPoly(self.space.d, {w: c for w, c in zip(self.space.basis, self.coords) if c})


def creation_matrix(space: FockSpace, k: int) -> RatMatrix:
    """Matrix of the left creation operator for letter k in the word basis."""
    if not 1 <= k <= space.d:
        raise IndexError(f"letter {k} outside 1..{space.d}")
    n = space.dim
    entries = [Fraction(0)] * (n * n)
    for col, w in enumerate(space.basis):
        if len(w) < space.m:
            entries[space.index[(k,) + w] * n + col] = Fraction(1)
    return RatMatrix(n, n, tuple(entries))


def creation_tuple(space: FockSpace) -> MatTuple:
    return MatTuple(space.dim, tuple(creation_matrix(space, k) for k in range(1, space.d + 1)))


def act(p: NcPoly, w: NcPoly, m: int) -> NcPoly:
    """``p(L)`` applied to the vector whose coordinates are the terms of w."""
    return mul_truncated(p, w, m)


def apply_at_creation(p: NcPoly, v: FockVector) -> FockVector:
    if p.nvars != v.space.d:
        raise AlphabetError(f"polynomial over {p.nvars} letters acting on a Fock space over {v.space.d}")
    return FockVector.from_poly(v.space, act(p, v.to_poly(), v.space.m))


def apply_matrix(A: RatMatrix, v: FockVector) -> FockVector:
    return FockVector(v.space, A.matvec(v.coords))

