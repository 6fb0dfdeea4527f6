"""
Membership of g in the unital subalgebra generated by f_1, ..., f_l.

Homogeneous generators admit a complete decision, by two independent
routes: the closure of the vacuum in a truncated Fock space (``fock``) and a
direct linear solve over all words of bounded weight (``direct``).  A single
generator is decided by a degree bound (``single``).  For anything else
only a capped semidecision is available (``semidecide``): it can certify
membership but never non-membership.

Every Member verdict carries a certificate ``h`` with ``h(f) == g`` that
has been checked by exact substitution before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactla import IncrementalSpan, RatMatrix, solve_linear
from .fock import act
from .freealg import (
    NOT_HOMOGENEOUS,
    ZERO,
    AlphabetError,
    NcPoly,
    Word,
    homogeneous_degree,
    poly_mul,
    substitute,
    word_key,
)
from .invariant import closure_chain


class NotHomogeneousError(ValueError):
    """A complete decider for homogeneous generators got a non-homogeneous one."""


@dataclass(frozen=True)
class MembershipCertificate:
    h: NcPoly
    route: str
    m: Optional[int] = None
    level: Optional[int] = None  # y-degree bound at which the semidecider succeeded


@dataclass(frozen=True)
class Member:
    certificate: MembershipCertificate
    kind = "member"

    @property
    def route(self) -> str:
        return self.certificate.route


@dataclass(frozen=True)
class NonMember:
    route: str
    m: Optional[int] = None
    kind = "non-member"


@dataclass(frozen=True)
class Unknown:
    cap: int
    route: str = "semidecide"
    kind = "unknown"


MembershipVerdict = Union[Member, NonMember, Unknown]


def _check_arity(g: NcPoly, f: Sequence[NcPoly]):
    if not f:
        raise AlphabetError("at least one generator is required")
    for fj in f:
        if fj.nvars != g.nvars:
            raise AlphabetError(f"generator over {fj.nvars} letters, target over {g.nvars}")


def _graded_generators(f: Sequence[NcPoly]) -> list[tuple[int, NcPoly, int]]:
    """``(original index, f_j, degree)`` for the generators of positive degree.

    Zero and constant generators only contribute scalars, which the unital
    algebra already contains, so they are dropped.
    """
    kept = []
    for i, fj in enumerate(f):
        k = homogeneous_degree(fj)
        if k is NOT_HOMOGENEOUS:
            raise NotHomogeneousError(f"generator {i + 1} is not homogeneous")
        if k is ZERO or k == 0:
            continue
        kept.append((i, fj, k))
    return kept


def _relabel(u: Word, orig: Sequence[int]) -> Word:
    return tuple(orig[j - 1] + 1 for j in u)


def _scalar_verdict(g: NcPoly, l: int, route: str) -> MembershipVerdict:
    if g.is_constant():
        return Member(MembershipCertificate(NcPoly.const(g.constant_term(), l), route, m=0))
    return NonMember(route)


def _certified(g, f, h, route, **kw) -> Member:
    if not verify_certificate(g, f, h):
        raise RuntimeError(f"{route} route produced an invalid certificate")
    return Member(MembershipCertificate(h, route, **kw))


def degree_filter(h: NcPoly, fdegs: Sequence[int], m: int) -> NcPoly:
    """Keep the words u of h whose image u(f) has degree <= m."""
    return NcPoly._raw(
        h.nvars,
        {u: c for u, c in h.terms.items() if sum(fdegs[j - 1] for j in u) <= m},
    )


def verify_certificate(g: NcPoly, f: Sequence[NcPoly], h: NcPoly) -> bool:
    _check_arity(g, f)
    if h.nvars != len(f):
        raise AlphabetError(f"certificate over {h.nvars} letters for {len(f)} generators")
    return substitute(h, f) == g


def decide_homogeneous_fock(g: NcPoly, f: Sequence[NcPoly]) -> MembershipVerdict:
    """Decide membership through the truncated Fock space of order deg g.

    The vacuum's smallest invariant subspace under the operators f_j(L)
    contains g(L)1 exactly when g lies in the subalgebra.  Each accepted
    closure vector is u(f)(L)1 for a recorded word u, so a solution maps
    straight back to a certificate.
    """
    _check_arity(g, f)
    l = len(f)
    kept = _graded_generators(f)
    if g.is_zero():
        return Member(MembershipCertificate(NcPoly.zero(l), "fock", m=0))
    if not kept:
        return _scalar_verdict(g, l, "fock")

    m = max(g.degree, 0)
    d = g.nvars
    ops = [
        (lambda w, fj=fj: act(fj, NcPoly._raw(d, w), m).terms)
        for _, fj, _ in kept
    ]
    span, vectors, _ = closure_chain(ops, {(): Fraction(1)})
    # g(L)1 is g itself since every word of g has length <= m
    combo = span.express(g.terms)
    if combo is None:
        return NonMember("fock", m=m)

    lk = len(kept)
    h_m = NcPoly(lk, {vectors[i][0]: c for i, c in combo.items()})
    h_filtered = degree_filter(h_m, [k for _, _, k in kept], m)
    orig = [i for i, _, _ in kept]
    h = NcPoly(l, {_relabel(u, orig): c for u, c in h_filtered.terms.items()})
    return _certified(g, f, h, "fock", m=m)


def _weighted_words(weights: Sequence[int], bound: int) -> list[Word]:
    """Words over ``1..len(weights)`` with total letter weight <= bound, canonical order."""
    out = [()]
    layer = [((), 0)]
    while layer:
        nxt = []
        for u, wt in layer:
            for j, wj in enumerate(weights, start=1):
                if wt + wj <= bound:
                    nxt.append((u + (j,), wt + wj))
        nxt.sort(key=lambda t: t[0])
        out.extend(u for u, _ in nxt)
        layer = nxt
    return out


def _solve_in_words(g: NcPoly, images: Sequence[NcPoly]) -> Optional[tuple]:
    """Solve ``g = sum_i c_i images[i]`` densely, rows indexed by the x-words seen."""
    support = set(g.terms)
    for p in images:
        support.update(p.terms)
    rows = sorted(support, key=word_key)
    where = {w: i for i, w in enumerate(rows)}
    ncols = len(images)
    entries = [Fraction(0)] * (len(rows) * ncols)
    for j, p in enumerate(images):
        for w, c in p.terms.items():
            entries[where[w] * ncols + j] = c
    A = RatMatrix._trusted(len(rows), ncols, tuple(entries))
    return solve_linear(A, [g.coefficient(w) for w in rows])


def decide_homogeneous_direct(g: NcPoly, f: Sequence[NcPoly]) -> MembershipVerdict:
    """Decide membership by one exact linear solve over all words of bounded weight.

    Homogeneous generators make every u(f) homogeneous of degree
    ``sum deg f_j`` over the letters of u, so only words with weight at most
    deg g can contribute.
    """
    _check_arity(g, f)
    l = len(f)
    kept = _graded_generators(f)
    if g.is_zero():
        return Member(MembershipCertificate(NcPoly.zero(l), "direct"))
    if not kept:
        return _scalar_verdict(g, l, "direct")

    bound = max(g.degree, 0)
    words = _weighted_words([k for _, _, k in kept], bound)
    images = {(): NcPoly.const(1, g.nvars)}
    for u in words[1:]:
        images[u] = poly_mul(images[u[:-1]], kept[u[-1] - 1][1])
    x = _solve_in_words(g, [images[u] for u in words])
    if x is None:
        return NonMember("direct")
    orig = [i for i, _, _ in kept]
    h = NcPoly(l, {_relabel(u, orig): c for u, c in zip(words, x)})
    return _certified(g, f, h, "direct")


def decide_single_generator(g: NcPoly, f: NcPoly) -> MembershipVerdict:
    """Decide whether g is a polynomial in the single element f.

    A nonzero combination of f^0, ..., f^N with top coefficient c_N has
    degree exactly N * deg f, so only powers up to deg g // deg f matter.
    """
    _check_arity(g, [f])
    if g.is_zero():
        return Member(MembershipCertificate(NcPoly.zero(1), "single"))
    if f.is_constant():
        return _scalar_verdict(g, 1, "single")
    top = max(g.degree, 0) // f.degree
    powers = [NcPoly.const(1, g.nvars)]
    for _ in range(top):
        powers.append(poly_mul(powers[-1], f))
    x = _solve_in_words(g, powers)
    if x is None:
        return NonMember("single")
    h = NcPoly(1, {(1,) * k: c for k, c in enumerate(x)})
    return _certified(g, [f], h, "single")


def semidecide_membership(g: NcPoly, f: Sequence[NcPoly], cap: int = 6) -> MembershipVerdict:
    """Look for ``g = sum c_u u(f)`` over words u of y-degree <= n, n = 1..cap.

    Returns Member as soon as a solution exists, otherwise Unknown(cap).
    Failure at every level is not a proof of anything.
    """
    _check_arity(g, f)
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    l = len(f)
    span = IncrementalSpan()
    accepted: list[Word] = []
    images = {(): NcPoly.const(1, g.nvars)}
    layer: list[Word] = [()]

    def offer(u):
        if span.add(images[u].terms):
            accepted.append(u)

    for n in range(1, cap + 1):
        if n == 1:
            offer(())
        nxt = []
        for u in layer:
            for j in range(1, l + 1):
                w = u + (j,)
                images[w] = poly_mul(images[u], f[j - 1])
                nxt.append(w)
        nxt.sort()
        for w in nxt:
            offer(w)
        layer = nxt
        combo = span.express(g.terms)
        if combo is not None:
            h = NcPoly(l, {accepted[i]: c for i, c in combo.items()})
            return _certified(g, f, h, "semidecide", level=n)
    return Unknown(cap)


def decide(g: NcPoly, f: Sequence[NcPoly], mode: str = "auto", cap: int = 6) -> MembershipVerdict:
    """Dispatch on shape: single generator, homogeneous generators, or semidecide."""
    f = list(f)
    if mode == "auto":
        if len(f) == 1:
            mode = "single"
        elif all(homogeneous_degree(fj) is not NOT_HOMOGENEOUS for fj in f):
            mode = "homog"
        else:
            mode = "semi"
    if mode == "single":
        if len(f) != 1:
            raise ValueError("single-generator mode needs exactly one generator")
        return decide_single_generator(g, f[0])
    if mode == "homog":
        return decide_homogeneous_fock(g, f)
    if mode == "semi":
        return semidecide_membership(g, f, cap)
    raise ValueError(f"unknown mode {mode!r}")
