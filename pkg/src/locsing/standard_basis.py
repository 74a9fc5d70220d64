"""Standard bases, normal forms, syzygies and colengths in the local ring.

Everything here runs over the anti-well-founded order `LOCAL_ORDER`, so plain
Groebner reduction would not terminate.  Termination is restored by Mora's
device: during a reduction the set of reducers is enlarged by intermediate
results, and among eligible reducers one of minimal ecart is chosen.  The
result is a weak normal form, i.e. for input f there are a unit u and ring
elements a_i with

    u * f = sum a_i g_i + r

and the leading monomial of r (when r != 0) divisible by no leading monomial
of the g_i.  Weak normal forms suffice for every use in this package:
membership, leading ideals, staircases and colengths are unaffected by the
unit.

Modules over the local ring are handled by the same engine on flattened
term dicts keyed by (position, exponent) pairs.  The module order is
term-over-position: monomials compare by the local order first, lower
position wins ties.  Syzygies come from a standard basis of the module
generated by the generators augmented with tagged unit vectors, under an
order that makes every main-block term beat every tag term; basis elements
whose main block vanished are syzygies, and they generate the full syzygy
module over the local ring.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import ContainmentError, DimensionMismatch, InternalInconsistencyError
from .poly import (
    LOCAL_ORDER,
    LocalOrder,
    Mono,
    Polynomial,
    PolyVector,
    mono_deg,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_sub,
)


class _Infinite:
    """Marker for a provably infinite colength."""

    __slots__ = ()

    def __repr__(self):
        return "INFINITE"

    def __eq__(self, other):
        return isinstance(other, _Infinite)

    def __hash__(self):
        return hash("INFINITE")


INFINITE = _Infinite()

Colength = "int | _Infinite"  # colength values: a count or the INFINITE marker


def is_finite(value) -> bool:
    return isinstance(value, int)


# ---------------------------------------------------------------------------
# module term orders; a flattened term is keyed by (position, exponents)
# ---------------------------------------------------------------------------


class TermOverPosition:
    """Compare module terms by the local order on monomials, then by position."""

    def __init__(self, order: LocalOrder = LOCAL_ORDER):
        self.order = order

    def wkey(self, key):
        pos, m = key
        return (self.order.sort_key(m), pos)


class SyzygyOrder:
    """Elimination order for syzygy extraction.

    Positions below `main_rank` hold the actual module element; positions at
    and above it hold the tag coefficients.  Any main term beats any tag
    term, so a basis element leads in the tag block iff its main block is
    identically zero.
    """

    def __init__(self, main_rank: int, order: LocalOrder = LOCAL_ORDER):
        self.main_rank = main_rank
        self.order = order

    def wkey(self, key):
        pos, m = key
        return (0 if pos < self.main_rank else 1, self.order.sort_key(m), pos)


MODULE_ORDER = TermOverPosition()


# ---------------------------------------------------------------------------
# flattened working form
# ---------------------------------------------------------------------------


def _flat_poly(f: Polynomial) -> dict:
    return {(0, m): c for m, c in f.terms.items()}


def _flat_vec(v: PolyVector) -> dict:
    t = {}
    for pos, comp in enumerate(v.components):
        for m, c in comp.terms.items():
            t[(pos, m)] = c
    return t


def _unflat_poly(t: dict, n: int) -> Polynomial:
    return Polynomial(n, {m: c for (_, m), c in t.items()})


def _unflat_vec(t: dict, rank: int, n: int) -> PolyVector:
    comps = [dict() for _ in range(rank)]
    for (pos, m), c in t.items():
        comps[pos][m] = c
    return PolyVector(Polynomial(n, d) for d in comps)


class _W:
    """A working vector with cached lead data for the Mora loop."""

    __slots__ = ("t", "lead", "lc", "deg", "ec", "seq")

    def __init__(self, t, lead, lc, deg, seq):
        self.t = t
        self.lead = lead
        self.lc = lc
        self.deg = deg
        self.ec = deg - mono_deg(lead[1])
        self.seq = seq


def _mk(t: dict, order, seq: int) -> _W:
    lead = min(t, key=order.wkey)
    deg = max(mono_deg(k[1]) for k in t)
    return _W(t, lead, t[lead], deg, seq)


def _mk_main(t: dict, order, main_rank: int, seq: int) -> "_W | None":
    """Working vector whose lead and ecart ignore tag positions >= main_rank."""
    main_keys = [k for k in t if k[0] < main_rank]
    if not main_keys:
        return None
    lead = min(main_keys, key=order.wkey)
    deg = max(mono_deg(k[1]) for k in main_keys)
    return _W(t, lead, t[lead], deg, seq)


def _content_normalize(t: dict) -> dict:
    """Scale to integer coefficients with content 1 (coefficient growth control)."""
    den = 1
    for c in t.values():
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in t.values():
        num = gcd(num, c.numerator * (den // c.denominator))
    if den == 1 and num == 1:
        return t
    scale = Fraction(den, num)
    return {k: c * scale for k, c in t.items()}


def _primitive(t: dict, order) -> dict:
    """Content normalization plus a positive leading coefficient."""
    t = _content_normalize(t)
    lead = min(t, key=order.wkey)
    if t[lead] < 0:
        return {k: -c for k, c in t.items()}
    return t


def _step(h: _W, g: _W) -> dict:
    """One reduction step: h minus (lt(h)/lt(g)) * g."""
    c = h.lc / g.lc
    delta = mono_sub(h.lead[1], g.lead[1])
    t = dict(h.t)
    if any(delta):
        for (pos, m), cf in g.t.items():
            k = (pos, mono_mul(m, delta))
            v = t.get(k, 0) - c * cf
            if v:
                t[k] = v
            else:
                t.pop(k, None)
    else:
        for k, cf in g.t.items():
            v = t.get(k, 0) - c * cf
            if v:
                t[k] = v
            else:
                t.pop(k, None)
    return t


def _mora_nf(ft: dict, reducers: Sequence[_W], order, main_rank: int | None = None,
             stop_block: int | None = None) -> dict:
    """Weak normal form of the flattened vector `ft` against `reducers`.

    When `main_rank` is given, positions >= main_rank are inert bookkeeping:
    they are carried through the arithmetic but never looked at for leads,
    ecarts or divisibility, and the loop stops once the main block is zero.

    When `stop_block` is given, reduction stops as soon as the overall lead
    falls into positions >= stop_block (used for syzygy extraction, where
    elements leading in the tag block need no further normalization).
    """
    if not ft:
        return {}
    T = list(reducers)
    seq = max((g.seq for g in T), default=-1) + 1

    def make(t):
        if main_rank is None:
            return _mk(t, order, -1)
        return _mk_main(t, order, main_rank, -1)

    current = _content_normalize(ft)
    h = make(current)
    steps = 0
    while h is not None:
        pos, m = h.lead
        if stop_block is not None and pos >= stop_block:
            break
        best = None
        for g in T:
            gp, gm = g.lead
            if gp == pos and mono_divides(gm, m):
                if best is None or (g.ec, g.seq) < (best.ec, best.seq):
                    best = g
        if best is None:
            break
        if best.ec > h.ec:
            keep = _W(h.t, h.lead, h.lc, h.deg, seq)
            T.append(keep)
            seq += 1
        current = _step(h, best)
        if not current:
            return {}
        steps += 1
        if steps & 7 == 0:
            # keep coefficients integer and primitive; rational arithmetic
            # otherwise snowballs on long reductions
            current = _content_normalize(current)
        h = make(current)
    return current


def _spoly(a: _W, b: _W) -> dict:
    """S-vector of two working vectors with the same lead position."""
    m = mono_lcm(a.lead[1], b.lead[1])
    da = mono_sub(m, a.lead[1])
    db = mono_sub(m, b.lead[1])
    t: dict = {}
    inv_a = 1 / a.lc
    for (pos, mm), c in a.t.items():
        k = (pos, mono_mul(mm, da))
        t[k] = c * inv_a
    inv_b = 1 / b.lc
    for (pos, mm), c in b.t.items():
        k = (pos, mono_mul(mm, db))
        v = t.get(k, 0) - c * inv_b
        if v:
            t[k] = v
        else:
            t.pop(k, None)
    return t


def _std(seed: Iterable[dict], order, syz_block: int | None = None) -> list[_W]:
    """Standard basis of the module generated by the flattened vectors.

    Pair selection: increasing lcm degree, then first-in-first-out.  The
    returned basis is lead-minimal and sorted by the order on leads, which
    pins the output for fixed input order.

    With `syz_block` set (syzygy extraction), elements leading in positions
    >= syz_block are collected but never paired or reduced further: the
    main-block completion together with the lifted pair relations already
    generates the full syzygy module, and a standard basis of the syzygy
    module itself is not needed.  Those elements are all kept (lead
    minimalization applies to the main block only).
    """
    G: list[_W] = []
    seq = 0
    for t in seed:
        if t:
            G.append(_mk(_primitive(t, order), order, seq))
            seq += 1

    def in_tag(w):
        return syz_block is not None and w.lead[0] >= syz_block

    pairs: list = []
    tick = itertools.count()

    def push_pairs(j):
        if in_tag(G[j]):
            return
        for i in range(j):
            if G[i].lead[0] == G[j].lead[0] and not in_tag(G[i]):
                d = mono_deg(mono_lcm(G[i].lead[1], G[j].lead[1]))
                heapq.heappush(pairs, (d, next(tick), i, j))

    for j in range(len(G)):
        push_pairs(j)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        st = _spoly(G[i], G[j])
        if not st:
            continue
        r = _mora_nf(st, G, order, stop_block=syz_block)
        if not r:
            continue
        G.append(_mk(_primitive(r, order), order, seq))
        seq += 1
        push_pairs(len(G) - 1)
    return _minimalize(G, order, syz_block)


def _minimalize(G: list[_W], order, syz_block: int | None = None) -> list[_W]:
    """Drop elements whose lead is divisible by another kept lead.

    Tag-block elements of a syzygy run are generators, not a standard basis,
    so they are all kept.
    """
    kept: list[_W] = []
    for w in sorted(G, key=lambda w: order.wkey(w.lead)):
        pos, m = w.lead
        if syz_block is not None and pos >= syz_block:
            kept.append(w)
            continue
        if any(k.lead[0] == pos and mono_divides(k.lead[1], m) for k in kept):
            continue
        kept.append(w)
    return kept


# ---------------------------------------------------------------------------
# staircases and colengths
# ---------------------------------------------------------------------------


def _staircase_count(leads: Sequence[Mono], n: int):
    """Monomials outside the monoid ideal of `leads`; INFINITE without pure powers."""
    if not leads:
        return INFINITE
    minimal = [m for m in leads if not any(o != m and mono_divides(o, m) for o in leads)]
    if any(mono_deg(m) == 0 for m in minimal):
        return 0
    bounds = []
    for i in range(n):
        pures = [m[i] for m in minimal if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pures:
            return INFINITE
        bounds.append(min(pures))
    count = 0
    for point in itertools.product(*(range(b) for b in bounds)):
        if not any(mono_divides(m, point) for m in minimal):
            count += 1
    return count


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


class IdealPresentation:
    """Ideal given by generators, with cached standard basis and staircase."""

    def __init__(self, generators: Iterable[Polynomial], order: LocalOrder = LOCAL_ORDER):
        gens = [g for g in generators if g]
        n = {g.n for g in gens}
        if len(n) > 1:
            raise DimensionMismatch("generators disagree on variable count")
        self.generators = gens
        self.n = n.pop() if n else None
        self.order = order
        self._sb: list[_W] | None = None
        self._staircase: list[Mono] | None = None

    def _basis(self) -> list[_W]:
        if self._sb is None:
            self._sb = _std([_flat_poly(g) for g in self.generators], TermOverPosition(self.order))
        return self._sb

    def standard_basis(self) -> list[Polynomial]:
        if self.n is None:
            return []
        return [_unflat_poly(w.t, self.n) for w in self._basis()]

    def leading_exponents(self) -> list[Mono]:
        if self._staircase is None:
            self._staircase = [w.lead[1] for w in self._basis()]
        return self._staircase

    def colength(self):
        if self.n is None:
            return INFINITE
        return _staircase_count(self.leading_exponents(), self.n)

    def contains(self, f: Polynomial) -> bool:
        if not f:
            return True
        if self.n is None:
            return False
        if f.n != self.n:
            raise DimensionMismatch("variable counts differ")
        return not _mora_nf(_flat_poly(f), self._basis(), TermOverPosition(self.order))


class SubmodulePresentation:
    """Submodule of O^rank given by generators, under term-over-position order."""

    def __init__(self, generators: Iterable[PolyVector], rank: int | None = None,
                 order: TermOverPosition = MODULE_ORDER):
        gens = [g for g in generators if g]
        ranks = {g.rank for g in gens}
        if len(ranks) > 1:
            raise DimensionMismatch("generators disagree on rank")
        if rank is None:
            if not ranks:
                raise ValueError("rank required for an empty generator list")
            rank = ranks.pop()
        elif ranks and ranks.pop() != rank:
            raise DimensionMismatch("declared rank disagrees with generators")
        self.generators = gens
        self.rank = rank
        self.n = gens[0].nvars if gens else None
        self.order = order
        self._sb: list[_W] | None = None

    def _basis(self) -> list[_W]:
        if self._sb is None:
            self._sb = _std([_flat_vec(g) for g in self.generators], self.order)
        return self._sb

    def standard_basis(self) -> list[PolyVector]:
        if self.n is None:
            return []
        return [_unflat_vec(w.t, self.rank, self.n) for w in self._basis()]

    def colength(self):
        if not self.generators:
            return INFINITE if self.rank else 0
        per_position: dict[int, list[Mono]] = {p: [] for p in range(self.rank)}
        for w in self._basis():
            pos, m = w.lead
            per_position[pos].append(m)
        total = 0
        for pos in range(self.rank):
            c = _staircase_count(per_position[pos], self.n)
            if not is_finite(c):
                return INFINITE
            total += c
        return total

    def contains(self, v: PolyVector) -> bool:
        if not v:
            return True
        if self.n is None:
            return False
        if v.rank != self.rank:
            raise DimensionMismatch("ranks differ")
        return not _mora_nf(_flat_vec(v), self._basis(), self.order)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def mora_reduce(f: Polynomial, G: Sequence[Polynomial],
                order: LocalOrder = LOCAL_ORDER) -> Polynomial:
    """Weak normal form of f against G in the local ring.

    Returns r with u*f = sum a_i g_i + r for some unit u; r is 0 exactly when
    f lies in the ideal generated by G *provided* G is a standard basis.
    """
    gens = [g for g in G if g]
    if not gens:
        raise ValueError("reducer list must contain a nonzero polynomial")
    for g in gens:
        if g.n != f.n:
            raise DimensionMismatch("variable counts differ")
    word = TermOverPosition(order)
    reducers = [_mk(_flat_poly(g), word, i) for i, g in enumerate(gens)]
    return _unflat_poly(_mora_nf(_flat_poly(f), reducers, word), f.n)


def mora_reduce_with_witness(f: Polynomial, G: Sequence[Polynomial]):
    """Weak normal form with the full representation made explicit.

    Returns (r, u, quotients) with u a unit of the local ring (checked) and

        u * f == sum quotients[i] * G[i] + r

    as an exact polynomial identity.
    """
    gens = list(G)
    if not gens or any(not g for g in gens):
        raise ValueError("reducers must be nonzero")
    n = f.n
    for g in gens:
        if g.n != n:
            raise DimensionMismatch("variable counts differ")
    word = TermOverPosition()
    zero = (0,) * n
    k = len(gens)
    # positions: 0 main, 1 tag for f, 2+i tag for gens[i]
    reducers = []
    for i, g in enumerate(gens):
        t = _flat_poly(g)
        t[(2 + i, zero)] = Fraction(1)
        reducers.append(_mk_main(t, word, 1, i))
    ft = _flat_poly(f)
    ft[(1, zero)] = Fraction(1)
    out = _mora_nf(ft, reducers, word, main_rank=1)
    r = Polynomial(n, {m: c for (pos, m), c in out.items() if pos == 0})
    u = Polynomial(n, {m: c for (pos, m), c in out.items() if pos == 1})
    tags = []
    for i in range(k):
        tags.append(Polynomial(n, {m: -c for (pos, m), c in out.items() if pos == 2 + i}))
    if not u.constant_term():
        raise InternalInconsistencyError("unit factor of the weak normal form vanishes at 0")
    return r, u, tags


def standard_basis(I: IdealPresentation) -> list[Polynomial]:
    return I.standard_basis()


def colength(I: IdealPresentation):
    return I.colength()


def ideal_membership(f: Polynomial, I: IdealPresentation) -> bool:
    return I.contains(f)


def vector_syzygies(gens: Sequence[PolyVector]) -> list[PolyVector]:
    """Generators of {h in O^k : sum h_i gens[i] = 0} over the local ring."""
    gens = list(gens)
    if not gens:
        return []
    r = gens[0].rank
    n = gens[0].nvars
    for g in gens:
        if g.rank != r or g.nvars != n:
            raise DimensionMismatch("syzygy input must share rank and variables")
    k = len(gens)
    zero = (0,) * n
    order = SyzygyOrder(r)
    seed = []
    for i, g in enumerate(gens):
        t = _flat_vec(g)
        t[(r + i, zero)] = Fraction(1)
        seed.append(t)
    basis = _std(seed, order, syz_block=r)
    out = []
    for w in basis:
        if w.lead[0] >= r:
            # main block is zero: the tag block is a syzygy
            comps = [dict() for _ in range(k)]
            for (pos, m), c in w.t.items():
                comps[pos - r][m] = c
            out.append(PolyVector(Polynomial(n, d) for d in comps))
    return out


def syzygies(gens: Sequence[Polynomial]) -> list[PolyVector]:
    """Syzygies of a list of polynomials, as vectors of rank len(gens)."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one polynomial")
    return vector_syzygies([PolyVector([g]) for g in gens])


def module_colength(M: SubmodulePresentation):
    return M.colength()


def module_membership(v: PolyVector, M: SubmodulePresentation) -> bool:
    return M.contains(v)


def quotient_presentation(N: Sequence[PolyVector], D: Sequence[PolyVector]) -> SubmodulePresentation:
    """Preimage presentation of <N>/<D>: {h in O^k : sum h_i N_i in <D>}.

    O^k modulo this submodule is isomorphic to <N>/<D> via h -> sum h_i N_i,
    so its colength computes the quotient dimension.  Requires <D> <= <N>.
    """
    N = list(N)
    D = list(D)
    if not N:
        raise ValueError("numerator generators must be nonempty")
    rank = N[0].rank
    for v in N + D:
        if v.rank != rank:
            raise DimensionMismatch("rank mismatch between numerator and denominator")
    module_N = SubmodulePresentation(N, rank=rank)
    for d in D:
        if not module_N.contains(d):
            raise ContainmentError("denominator generator outside the numerator module")
    k = len(N)
    syz = vector_syzygies(N + D)
    n = N[0].nvars
    preimage = []
    for v in syz:
        head = PolyVector(v.components[:k])
        if head:
            preimage.append(head)
    return SubmodulePresentation(preimage, rank=k)


def quotient_dimension(N: Sequence[PolyVector], D: Sequence[PolyVector]):
    """Vector-space dimension of <N>/<D> for submodules D <= N of O^r."""
    return quotient_presentation(N, D).colength()
