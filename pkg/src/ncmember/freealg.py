"""
Noncommutative polynomials over the rationals.

A word is a tuple of 1-based variable indices, ``(1, 2)`` being ``x1*x2``;
the empty tuple is the unit.  Multiplication of words is concatenation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Sequence, Union

from .exactla import DimensionError, RatMatrix, as_rat

Word = tuple

# Degree of the zero polynomial: below every integer and absorbing under +.
ZERO_DEGREE = -math.inf

__all__ = [
    "Word",
    "ZERO_DEGREE",
    "AlphabetError",
    "NcPoly",
    "MatTuple",
    "word_key",
    "words_up_to",
    "poly_add",
    "poly_mul",
    "substitute",
    "evaluate_at_matrices",
    "evaluate_word",
    "homogeneous_degree",
    "ZERO",
    "NOT_HOMOGENEOUS",
    "truncate",
    "mul_truncated",
]


class AlphabetError(ValueError):
    """Raised when polynomials over different alphabets are combined."""


class _Marker:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


ZERO = _Marker("ZERO")
NOT_HOMOGENEOUS = _Marker("NOT_HOMOGENEOUS")


def word_key(w: Word):
    """Canonical order: by degree, then lexicographically by index."""
    return (len(w), w)


def words_up_to(nletters: int, maxdeg: int) -> Iterator[Word]:
    """All words over ``1..nletters`` of length <= maxdeg, canonical order."""
    letters = range(1, nletters + 1)
    for k in range(maxdeg + 1):
        yield from product(letters, repeat=k)


Scalar = Union[int, Fraction]


class NcPoly:
    """An element of the free algebra on ``nvars`` letters.

    Instances are treated as immutable; ``terms`` maps words to nonzero
    Fractions.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping = None):
        if nvars < 1:
            raise AlphabetError("alphabet size must be positive")
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            for k in w:
                if not 1 <= k <= nvars:
                    raise AlphabetError(f"letter {k} outside alphabet of size {nvars}")
            c = as_rat(c)
            if c:
                clean[w] = clean.get(w, 0) + c
                if not clean[w]:
                    del clean[w]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already validated and pruned
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar, nvars: int) -> "NcPoly":
        return cls(nvars, {(): c})

    @classmethod
    def var(cls, k: int, nvars: int) -> "NcPoly":
        return cls(nvars, {(k,): 1})

    @classmethod
    def word(cls, w: Word, nvars: int, c: Scalar = 1) -> "NcPoly":
        return cls(nvars, {tuple(w): c})

    @classmethod
    def zero(cls, nvars: int) -> "NcPoly":
        return cls._raw(nvars, {})

    def lift(self, nvars: int) -> "NcPoly":
        """The same polynomial viewed over a (possibly) larger alphabet."""
        if nvars == self.nvars:
            return self
        return NcPoly(nvars, self.terms)

    # -- inspection ---------------------------------------------------------

    @property
    def degree(self):
        if not self.terms:
            return ZERO_DEGREE
        return max(len(w) for w in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not w for w in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def coefficient(self, w: Word) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def homogeneous_part(self, k: int) -> "NcPoly":
        return NcPoly._raw(self.nvars, {w: c for w, c in self.terms.items() if len(w) == k})

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "NcPoly":
        if isinstance(other, NcPoly):
            if other.nvars != self.nvars:
                raise AlphabetError(f"alphabets of size {self.nvars} and {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return NcPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw(self.nvars, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_rat(other)
            if not c:
                return NcPoly.zero(self.nvars)
            return NcPoly._raw(self.nvars, {w: c * v for w, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = NcPoly.const(1, self.nvars)
        for _ in range(k):
            out = poly_mul(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .polytext import format_poly

        return f"NcPoly({self.nvars}, {format_poly(self)!r})"


def _check_same(p: NcPoly, q: NcPoly):
    if p.nvars != q.nvars:
        raise AlphabetError(f"alphabets of size {p.nvars} and {q.nvars}")


def poly_add(p: NcPoly, q: NcPoly) -> NcPoly:
    _check_same(p, q)
    out = dict(p.terms)
    for w, c in q.terms.items():
        v = out.get(w, 0) + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return NcPoly._raw(p.nvars, out)


def poly_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    _check_same(p, q)
    out = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            w = w1 + w2
            v = out.get(w, 0) + c1 * c2
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return NcPoly._raw(p.nvars, out)


def mul_truncated(p: NcPoly, q: NcPoly, m: int) -> NcPoly:
    """``truncate(p * q, m)`` without forming the words that get dropped."""
    _check_same(p, q)
    out = {}
    qterms = list(q.terms.items())
    for w1, c1 in p.terms.items():
        room = m - len(w1)
        if room < 0:
            continue
        for w2, c2 in qterms:
            if len(w2) > room:
                continue
            w = w1 + w2
            v = out.get(w, 0) + c1 * c2
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return NcPoly._raw(p.nvars, out)


def truncate(p: NcPoly, m: int) -> NcPoly:
    """Canonical representative of ``p`` modulo the ideal of words longer than m."""
    if m < 0:
        raise ValueError("truncation order must be nonnegative")
    return NcPoly._raw(p.nvars, {w: c for w, c in p.terms.items() if len(w) <= m})


def substitute(h: NcPoly, f: Sequence[NcPoly]) -> NcPoly:
    """``h(f_1, ..., f_l)``: replace letter j of every word of h by f[j-1]."""
    f = list(f)
    if h.nvars != len(f):
        raise AlphabetError(f"{len(f)} polynomials substituted into {h.nvars} variables")
    if not f:
        raise AlphabetError("nothing to substitute")
    nv = f[0].nvars
    for fj in f:
        if fj.nvars != nv:
            raise AlphabetError("substituted polynomials use different alphabets")
    cache = {(): NcPoly.const(1, nv)}

    def image(u):
        # u(f) built by prefix, shared across the words of h
        if u not in cache:
            cache[u] = poly_mul(image(u[:-1]), f[u[-1] - 1])
        return cache[u]

    out = {}
    for u, c in h.sorted_terms():
        for w, v in image(u).terms.items():
            nv_ = out.get(w, 0) + c * v
            if nv_:
                out[w] = nv_
            else:
                out.pop(w, None)
    return NcPoly._raw(nv, out)


@dataclass(frozen=True)
class MatTuple:
    """A d-tuple of n x n rational matrices."""

    n: int
    mats: tuple

    def __post_init__(self):
        object.__setattr__(self, "mats", tuple(self.mats))
        for X in self.mats:
            if X.shape != (self.n, self.n):
                raise DimensionError(f"matrix of shape {X.shape} in a tuple of size {self.n}")

    @classmethod
    def of(cls, *mats: RatMatrix) -> "MatTuple":
        if not mats:
            raise DimensionError("empty matrix tuple needs an explicit size")
        return cls(mats[0].rows, mats)

    def __len__(self):
        return len(self.mats)


def evaluate_word(u: Word, mats: Sequence[RatMatrix], n: int) -> RatMatrix:
    out = RatMatrix.identity(n)
    for k in u:
        out = out @ mats[k - 1]
    return out


def evaluate_at_matrices(p: NcPoly, X: MatTuple) -> RatMatrix:
    """``p(X_1, ..., X_d)``, the empty word mapping to the identity."""
    if p.nvars != len(X.mats):
        raise AlphabetError(f"polynomial in {p.nvars} variables evaluated at {len(X.mats)} matrices")
    n = X.n
    prefix = {(): RatMatrix.identity(n)}

    def power(w):
        if w not in prefix:
            prefix[w] = power(w[:-1]) @ X.mats[w[-1] - 1]
        return prefix[w]

    acc = [Fraction(0)] * (n * n)
    for w, c in p.sorted_terms():
        for i, e in enumerate(power(w).entries):
            if e:
                acc[i] += c * e
    return RatMatrix(n, n, tuple(acc))


def homogeneous_degree(p: NcPoly):
    """``k`` if every word of ``p`` has length k, ``ZERO`` for 0, else ``NOT_HOMOGENEOUS``."""
    if not p.terms:
        return ZERO
    degs = {len(w) for w in p.terms}
    if len(degs) == 1:
        return degs.pop()
    return NOT_HOMOGENEOUS
