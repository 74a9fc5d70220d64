"""Exact sparse multivariate polynomial arithmetic over the rationals.

Coefficients are `fractions.Fraction`, terms live in a dict mapping exponent
tuples to nonzero coefficients, so equality of polynomials is equality of
term maps (canonical form).  The one monomial order used throughout is
`LOCAL_ORDER`: lower total degree is larger, so the constant monomial beats
every variable.  That anti-well-founded order is what makes the standard
basis machinery compute in the local ring at the origin rather than in the
polynomial ring.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch

Mono = tuple[int, ...]


def mono_deg(m: Mono) -> int:
    return sum(m)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_sub(b: Mono, a: Mono) -> Mono:
    """Exponent vector of x^b / x^a; requires divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


class LocalOrder:
    """Negative-degree order with reverse-lexicographic tie break, x1 > x2 > ...

    Smaller total degree means larger monomial (1 > x_i for all i).  The
    order is total and multiplicative; `sort_key` is ascending in descending
    order, so the leading monomial of a set is the one with minimal key.
    """

    kind = "negdegrevlex"

    @staticmethod
    def sort_key(m: Mono):
        return (sum(m), tuple(reversed(m)))

    def greater(self, a: Mono, b: Mono) -> bool:
        return self.sort_key(a) < self.sort_key(b)


LOCAL_ORDER = LocalOrder()


class Polynomial:
    """Immutable sparse polynomial in `n` variables with Fraction coefficients."""

    __slots__ = ("n", "terms", "_lead")

    def __init__(self, n: int, terms: Mapping[Mono, Fraction | int] | None = None):
        clean: dict[Mono, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise DimensionMismatch(f"exponent tuple {m} has length != {n}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = Fraction(c)
            if c:
                clean[m] = c
        self.n = n
        self.terms = clean
        self._lead: tuple[Fraction, Mono] | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Polynomial:
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> Polynomial:
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def variable(cls, n: int, i: int) -> Polynomial:
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): Fraction(1)})

    @classmethod
    def term(cls, n: int, c, mono: Mono) -> Polynomial:
        return cls(n, {tuple(mono): Fraction(c)})

    # -- ring operations ----------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"variable counts differ: {self.n} != {other.n}")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial(self.n, t)

    def __sub__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) - c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial(self.n, t)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            t: dict[Mono, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    v = t.get(m, 0) + c1 * c2
                    if v:
                        t[m] = v
                    else:
                        t.pop(m, None)
            return Polynomial(self.n, t)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> Polynomial:
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial(self.n, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, c, mono: Mono) -> Polynomial:
        """Multiply by the single term c * x^mono."""
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial(self.n, {mono_mul(m, mono): c * v for m, v in self.terms.items()})

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- queries --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def total_degree(self) -> int:
        """Maximal total degree of a term; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(mono_deg(m) for m in self.terms)

    def multiplicity(self) -> int:
        """Order at the origin: minimal total degree of a term."""
        if not self.terms:
            raise ValueError("zero polynomial has no multiplicity")
        return min(mono_deg(m) for m in self.terms)

    def diff(self, i: int) -> Polynomial:
        """Formal partial derivative with respect to variable i (0-based)."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        t: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                t[tuple(e)] = c * m[i]
        return Polynomial(self.n, t)

    def leading_term(self, order: LocalOrder | None = None) -> tuple[Fraction, Mono]:
        """Largest term under the local order; errors on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if order is None or order is LOCAL_ORDER:
            if self._lead is None:
                m = min(self.terms, key=LOCAL_ORDER.sort_key)
                self._lead = (self.terms[m], m)
            return self._lead
        m = min(self.terms, key=order.sort_key)
        return (self.terms[m], m)

    def render(self, names: Sequence[str]) -> str:
        return render_polynomial(self, names)

    def __repr__(self) -> str:
        names = tuple(f"x{i + 1}" for i in range(self.n))
        return f"Polynomial({self.n}, {self.render(names)})"


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    return f.diff(i)


def gradient(f: Polynomial) -> list[Polynomial]:
    return [f.diff(i) for i in range(f.n)]


def jacobian_minor(f: Polynomial, g: Polynomial, i: int, j: int) -> Polynomial:
    """(df/dx_i)(dg/dx_j) - (df/dx_j)(dg/dx_i); antisymmetric in (i, j)."""
    if i == j:
        raise ValueError("minor indices must differ")
    f._check(g)
    return f.diff(i) * g.diff(j) - f.diff(j) * g.diff(i)


def leading_term(f: Polynomial, order: LocalOrder | None = None) -> tuple[Fraction, Mono]:
    return f.leading_term(order)


def ecart(f: Polynomial) -> int:
    """Total degree minus degree of the leading monomial; never negative."""
    _, m = f.leading_term()
    return f.total_degree() - mono_deg(m)


class PolyVector:
    """Element of a free module O^r, stored as a tuple of r polynomials."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Polynomial]):
        comps = tuple(components)
        if not comps:
            raise ValueError("vector needs at least one component")
        n = comps[0].n
        for p in comps:
            if p.n != n:
                raise DimensionMismatch("components disagree on variable count")
        self.components = comps

    @classmethod
    def zero(cls, rank: int, n: int) -> PolyVector:
        return cls(Polynomial.zero(n) for _ in range(rank))

    @classmethod
    def unit(cls, rank: int, n: int, pos: int) -> PolyVector:
        comps = [Polynomial.zero(n) for _ in range(rank)]
        comps[pos] = Polynomial.constant(n, 1)
        return cls(comps)

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def nvars(self) -> int:
        return self.components[0].n

    def _check(self, other: PolyVector) -> None:
        if self.rank != other.rank:
            raise DimensionMismatch(f"ranks differ: {self.rank} != {other.rank}")

    def __add__(self, other: PolyVector) -> PolyVector:
        self._check(other)
        return PolyVector(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: PolyVector) -> PolyVector:
        self._check(other)
        return PolyVector(a - b for a, b in zip(self.components, other.components))

    def __neg__(self) -> PolyVector:
        return PolyVector(-a for a in self.components)

    def scale(self, c) -> PolyVector:
        return PolyVector(a.scale(c) for a in self.components)

    def mul_term(self, c, mono: Mono) -> PolyVector:
        return PolyVector(a.mul_term(c, mono) for a in self.components)

    def mul(self, p: Polynomial) -> PolyVector:
        return PolyVector(a * p for a in self.components)

    def __bool__(self) -> bool:
        return any(self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyVector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def render(self, names: Sequence[str]) -> str:
        return "(" + ", ".join(p.render(names) for p in self.components) + ")"

    def __repr__(self) -> str:
        names = tuple(f"x{i + 1}" for i in range(self.nvars))
        return f"PolyVector{self.render(names)}"


def _render_mono(m: Mono, names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(m, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_polynomial(f: Polynomial, names: Sequence[str]) -> str:
    """Terms sorted by the local order, '*' between factors, 'p/q' coefficients."""
    if len(names) != f.n:
        raise DimensionMismatch("name list does not match variable count")
    if not f.terms:
        return "0"
    pieces = []
    for m in sorted(f.terms, key=LOCAL_ORDER.sort_key):
        c = f.terms[m]
        mono = _render_mono(m, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(pieces)
