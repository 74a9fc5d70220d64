"""Certificate-carrying colength computation by dense exact linear algebra.

This module is deliberately independent of the standard-basis engine: the
only shared code is the polynomial type itself.  A colength is computed by
working in jet spaces O/m^(N+1).  For increasing N we span the image of the
ideal (all monomial multiples of the generators, truncated at degree N) and
test whether every monomial of degree exactly N falls inside.  Success
yields a Nakayama certificate: m^N is contained in I + m^(N+1), hence in I,
so the colength equals the codimension of the image of I inside the space
of polynomials of degree below N.

Failure up to the cap returns NO_CERTIFICATE, which the oracle never
interprets as "infinite"; callers decide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import DimensionMismatch
from .poly import Mono, Polynomial, PolyVector, mono_deg, mono_mul


class _NoCertificate:
    __slots__ = ()

    def __repr__(self):
        return "NO_CERTIFICATE"

    def __eq__(self, other):
        return isinstance(other, _NoCertificate)

    def __hash__(self):
        return hash("NO_CERTIFICATE")


NO_CERTIFICATE = _NoCertificate()

DEFAULT_CAP = 40


def monomials_up_to(n: int, N: int) -> list[Mono]:
    """All exponent tuples of total degree <= N, deterministically ordered."""
    out = [m for m in itertools.product(range(N + 1), repeat=n) if sum(m) <= N]
    out.sort(key=lambda m: (sum(m), m))
    return out


def monomials_of_degree(n: int, N: int) -> list[Mono]:
    return [m for m in monomials_up_to(n, N) if sum(m) == N]


@dataclass(frozen=True)
class JetSpace:
    """Finite-dimensional model of O/m^(N+1)."""

    n: int
    N: int

    @property
    def basis(self) -> list[Mono]:
        return monomials_up_to(self.n, self.N)

    @property
    def dim(self) -> int:
        return comb(self.n + self.N, self.n)


@dataclass(frozen=True)
class NakayamaCertificate:
    """Degree N with m^N inside I + m^(N+1), proving m^N inside I."""

    N: int


class _Echelon:
    """Sparse exact row echelon with deterministic leftmost-column pivoting."""

    def __init__(self):
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def _reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = dict(row)
        while row:
            col = min(row)
            piv = self.pivots.get(col)
            if piv is None:
                return row
            factor = row[col]
            for c, v in piv.items():
                w = row.get(c, 0) - factor * v
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict[int, Fraction]) -> bool:
        """Insert a row; returns True when it enlarged the span."""
        row = self._reduce(row)
        if not row:
            return False
        col = min(row)
        inv = 1 / row[col]
        self.pivots[col] = {c: v * inv for c, v in row.items()}
        return True

    def contains(self, row: dict[int, Fraction]) -> bool:
        return not self._reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _ideal_rows(gens: Sequence[Polynomial], n: int, N: int, col: dict[Mono, int]):
    """Truncations of x^a * g for |a| <= N, as sparse rows over `col`."""
    for g in gens:
        for a in monomials_up_to(n, N):
            row: dict[int, Fraction] = {}
            for m, c in g.terms.items():
                mm = mono_mul(m, a)
                if mono_deg(mm) <= N:
                    row[col[mm]] = c
            if row:
                yield row


def _ideal_span(gens: Sequence[Polynomial], n: int, N: int) -> _Echelon:
    col = {m: i for i, m in enumerate(monomials_up_to(n, N))}
    ech = _Echelon()
    for row in _ideal_rows(gens, n, N, col):
        ech.add(row)
    return ech


def _degree_reached(gens: Sequence[Polynomial], n: int, N: int) -> bool:
    col = {m: i for i, m in enumerate(monomials_up_to(n, N))}
    ech = _Echelon()
    for row in _ideal_rows(gens, n, N, col):
        ech.add(row)
    return all(ech.contains({col[m]: Fraction(1)}) for m in monomials_of_degree(n, N))


def jet_colength(gens: Sequence[Polynomial], cap: int = DEFAULT_CAP):
    """Certified colength of the ideal generated by `gens` in the local ring.

    Returns (colength, NakayamaCertificate) on success, or (NO_CERTIFICATE,
    None) if no degree up to `cap` certifies.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = [g for g in gens if g]
    if not gens:
        return NO_CERTIFICATE, None
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise DimensionMismatch("generators disagree on variable count")
    prev_rank = _ideal_span(gens, n, 0).rank
    for N in range(1, cap + 1):
        col = {m: i for i, m in enumerate(monomials_up_to(n, N))}
        ech = _Echelon()
        for row in _ideal_rows(gens, n, N, col):
            ech.add(row)
        if all(ech.contains({col[m]: Fraction(1)}) for m in monomials_of_degree(n, N)):
            return comb(n + N - 1, n) - prev_rank, NakayamaCertificate(N)
        prev_rank = ech.rank
    return NO_CERTIFICATE, None


def verify_certificate(gens: Sequence[Polynomial], cert: NakayamaCertificate) -> bool:
    """Fresh elimination replay of a certificate (soundness check)."""
    gens = [g for g in gens if g]
    if not gens:
        return False
    return _degree_reached(gens, gens[0].n, cert.N)


# ---------------------------------------------------------------------------
# module version: columns are (position, monomial) pairs
# ---------------------------------------------------------------------------


def _module_rows(gens: Sequence[PolyVector], n: int, N: int, col):
    for g in gens:
        for a in monomials_up_to(n, N):
            row: dict[int, Fraction] = {}
            for pos, comp in enumerate(g.components):
                for m, c in comp.terms.items():
                    mm = mono_mul(m, a)
                    if mono_deg(mm) <= N:
                        row[col[(pos, mm)]] = c
            if row:
                yield row


def _module_columns(rank: int, n: int, N: int):
    cols = {}
    i = 0
    for m in monomials_up_to(n, N):
        for pos in range(rank):
            cols[(pos, m)] = i
            i += 1
    return cols


def jet_module_colength(gens: Sequence[PolyVector], rank: int, cap: int = DEFAULT_CAP):
    """Certified colength of a submodule of O^rank; same contract as jet_colength."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = [g for g in gens if g]
    if not gens:
        return NO_CERTIFICATE, None
    n = gens[0].nvars
    for g in gens:
        if g.nvars != n or g.rank != rank:
            raise DimensionMismatch("module generators disagree on rank or variables")
    prev_rank = 0
    ech0 = _Echelon()
    col0 = _module_columns(rank, n, 0)
    for row in _module_rows(gens, n, 0, col0):
        ech0.add(row)
    prev_rank = ech0.rank
    for N in range(1, cap + 1):
        col = _module_columns(rank, n, N)
        ech = _Echelon()
        for row in _module_rows(gens, n, N, col):
            ech.add(row)
        targets = [(pos, m) for m in monomials_of_degree(n, N) for pos in range(rank)]
        if all(ech.contains({col[t]: Fraction(1)}) for t in targets):
            return rank * comb(n + N - 1, n) - prev_rank, NakayamaCertificate(N)
        prev_rank = ech.rank
    return NO_CERTIFICATE, None


def verify_module_certificate(gens: Sequence[PolyVector], rank: int,
                              cert: NakayamaCertificate) -> bool:
    gens = [g for g in gens if g]
    if not gens:
        return False
    n = gens[0].nvars
    N = cert.N
    col = _module_columns(rank, n, N)
    ech = _Echelon()
    for row in _module_rows(gens, n, N, col):
        ech.add(row)
    targets = [(pos, m) for m in monomials_of_degree(n, N) for pos in range(rank)]
    return all(ech.contains({col[t]: Fraction(1)}) for t in targets)


def jet_membership(f: Polynomial, gens: Sequence[Polynomial], cap: int = DEFAULT_CAP):
    """Membership test for ideals of finite colength, independent of reduction.

    f lies in <gens> iff adjoining f does not change the certified colength.
    Returns True/False, or NO_CERTIFICATE when the base ideal never certifies.
    """
    base, cert = jet_colength(gens, cap)
    if base is NO_CERTIFICATE or isinstance(base, _NoCertificate):
        return NO_CERTIFICATE
    if not f:
        return True
    enlarged, _ = jet_colength(list(gens) + [f], cap)
    return enlarged == base
