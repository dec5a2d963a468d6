"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is a rational linear combination of roots of unity.  Every CycNum
is kept in a canonical form: reduced modulo the m-th cyclotomic polynomial
and rewritten at the smallest conductor that contains the value (never
congruent to 2 mod 4).  Equality and hashing are therefore structural and
never consult floating point; ``embed`` exists only for diagnostics and
for the float-splitting step of the isotypic decomposition.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import ConductorCapError

Rational = Union[int, Fraction]

DEFAULT_CONDUCTOR_CAP = 1 << 20

_conductor_cap = DEFAULT_CONDUCTOR_CAP


def set_conductor_cap(cap: int) -> None:
    global _conductor_cap
    _conductor_cap = int(cap)


def get_conductor_cap() -> int:
    return _conductor_cap


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials; den must be monic up to sign."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[len(den) - 1 + k]
        assert c % lead == 0
        q = c // lead
        out[k] = q
        if q:
            for i, d in enumerate(den):
                num[i + k] -= q * d
    assert all(c == 0 for c in num), "polynomial division left a remainder"
    return out


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    result = m
    k = m
    p = 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


@lru_cache(maxsize=None)
def _prime_factors(m: int) -> tuple[int, ...]:
    out = []
    k = m
    p = 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return tuple(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first (integer, monic)."""
    if m == 1:
        return (-1, 1)
    poly = [0] * (m + 1)
    poly[0], poly[m] = -1, 1  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[dict[int, int], ...]:
    """x^k mod Phi_m for 0 <= k < m, as sparse integer rows exp -> coeff."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows: list[dict[int, int]] = [{k: 1} for k in range(min(deg, m))]
    # x^deg = -(phi_0 + ... + phi_{deg-1} x^{deg-1}) since Phi_m is monic
    top = {i: -phi[i] for i in range(deg) if phi[i]}
    while len(rows) < m:
        prev = rows[-1]
        nxt: dict[int, int] = {}
        for e, c in prev.items():
            if e + 1 == deg:
                for j, t in top.items():
                    nxt[j] = nxt.get(j, 0) + c * t
            else:
                nxt[e + 1] = nxt.get(e + 1, 0) + c
        rows.append({e: c for e, c in nxt.items() if c})
    return tuple(rows)


@lru_cache(maxsize=None)
def _descent_primes(m: int) -> tuple[int, ...]:
    """Primes p | m whose subfield Q(zeta_{m/p}) can hide behind basis
    reduction (wrapped exponents), so that a Galois descent test is needed.

    For all other subfields an element's reduced support consists of
    multiples of p and the cheap support-gcd step already finds it.
    """
    phi_m = totient(m)
    out = []
    for p in _prime_factors(m):
        d = m // p
        if d >= 3 and p * (totient(d) - 1) >= phi_m:
            out.append(p)
    return tuple(out)


def _reduce_mod_phi(m: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    """Normalize exponents mod m, then reduce modulo Phi_m."""
    deg = totient(m)
    folded: dict[int, Fraction] = {}
    high = False
    for e, c in coeffs.items():
        if not c:
            continue
        e %= m
        folded[e] = folded.get(e, Fraction(0)) + c
        if e >= deg:
            high = True
    if not high:
        return {e: c for e, c in folded.items() if c}
    rows = _reduction_rows(m)
    out: dict[int, Fraction] = {}
    for e, c in folded.items():
        if not c:
            continue
        if e < deg:
            out[e] = out.get(e, Fraction(0)) + c
        else:
            for j, t in rows[e].items():
                out[j] = out.get(j, Fraction(0)) + c * t
    return {e: c for e, c in out.items() if c}


def _solve_rational(cols: list[dict[int, int]], rhs: dict[int, Fraction],
                    nrows: int) -> list[Fraction] | None:
    """Solve sum_k x_k * cols[k] = rhs exactly; None if inconsistent."""
    ncols = len(cols)
    a = [[Fraction(0)] * (ncols + 1) for _ in range(nrows)]
    for k, col in enumerate(cols):
        for i, v in col.items():
            a[i][k] = Fraction(v)
    for i, v in rhs.items():
        a[i][ncols] = v
    piv_rows: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if a[i][c]), None)
        if pr is None:
            return None  # basis columns are independent, so this is failure
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_rows.append(c)
        r += 1
    for i in range(r, nrows):
        if a[i][ncols]:
            return None
    return [a[i][ncols] for i in range(ncols)]


def _canonicalize(m: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Reduce mod Phi_m and descend to the minimal conductor."""
    while True:
        coeffs = _reduce_mod_phi(m, coeffs)
        if not coeffs:
            return 1, {}
        if m == 1:
            return 1, coeffs
        if len(coeffs) == 1:
            (e, c), = coeffs.items()
            if e == 0:
                return 1, {0: c}
            g = math.gcd(e, m)
            if g > 1:
                m, coeffs = m // g, {e // g: c}
                continue
            if m % 4 == 2:
                u = m // 2
                coeffs = {(e * (u + 1) // 2) % u: -c if e % 2 else c}
                m = u
                continue
            return m, coeffs
        exps = list(coeffs)
        g = math.gcd(m, *exps)
        if g > 1:
            m, coeffs = m // g, {e // g: c for e, c in coeffs.items()}
            continue
        if m % 4 == 2:
            u = m // 2
            half = (u + 1) // 2
            nxt: dict[int, Fraction] = {}
            for e, c in coeffs.items():
                k = (e * half) % u
                v = -c if e % 2 else c
                nxt[k] = nxt.get(k, Fraction(0)) + v
            m, coeffs = u, nxt
            continue
        descended = False
        for p in _descent_primes(m):
            d = m // p
            fixed = True
            for j in range(2, m):
                if j % d == 1 and math.gcd(j, m) == 1:
                    img = _reduce_mod_phi(m, {(j * e) % m: c for e, c in coeffs.items()})
                    if img != coeffs:
                        fixed = False
                        break
            if not fixed:
                continue
            rows = _reduction_rows(m)
            basis = [rows[(p * k) % m] for k in range(totient(d))]
            sol = _solve_rational(basis, coeffs, totient(m))
            if sol is None:
                continue
            m = d
            coeffs = {k: v for k, v in enumerate(sol) if v}
            descended = True
            break
        if not descended:
            return m, coeffs


def _as_fraction(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class CycNum:
    """An element of a cyclotomic field, in minimal-conductor canonical form.

    Immutable and hashable; safe to share across threads.
    """

    __slots__ = ("conductor", "_items", "_hash")

    def __init__(self, conductor: int, items: tuple[tuple[int, Fraction], ...],
                 _canonical: bool = False):
        if not _canonical:
            conductor, d = _canonicalize(conductor, dict(items))
            items = tuple(sorted(d.items()))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("CycNum is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(x: Rational) -> "CycNum":
        f = _as_fraction(x)
        if not f:
            return ZERO
        return CycNum(1, ((0, f),), _canonical=True)

    @staticmethod
    def root_of_unity(m: int, k: int = 1) -> "CycNum":
        """zeta_m^k."""
        if m < 1:
            raise ValueError("conductor must be positive")
        if m > _conductor_cap:
            raise ConductorCapError(f"conductor {m} exceeds cap {_conductor_cap}")
        return CycNum(m, ((k % m, Fraction(1)),))

    @staticmethod
    def from_terms(conductor: int, terms: Iterable[tuple[int, Rational]]) -> "CycNum":
        acc: dict[int, Fraction] = {}
        for k, c in terms:
            f = _as_fraction(c)
            if f:
                acc[k] = acc.get(k, Fraction(0)) + f
        return CycNum(conductor, tuple(acc.items()))

    # -- serialization (textual form: list of [num, den, k] terms) ----------

    def to_terms(self) -> list[list[int]]:
        return [[c.numerator, c.denominator, k] for k, c in self._items]

    @staticmethod
    def from_term_list(conductor: int, terms: Iterable[Iterable[int]]) -> "CycNum":
        return CycNum.from_terms(
            conductor, ((int(k), Fraction(int(num), int(den))) for num, den, k in terms))

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._items

    def is_rational(self) -> bool:
        return self.conductor == 1

    def as_rational(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self!r} is not rational")
        return self._items[0][1] if self._items else Fraction(0)

    def is_one(self) -> bool:
        return self.conductor == 1 and self._items == ((0, Fraction(1)),)

    # -- arithmetic ----------------------------------------------------------

    def _items_at(self, big: int) -> Iterable[tuple[int, Fraction]]:
        s = big // self.conductor
        return ((k * s, c) for k, c in self._items)

    def _common(self, other: "CycNum") -> int:
        a, b = self.conductor, other.conductor
        if a == b:
            return a
        big = a * b // math.gcd(a, b)
        if big > _conductor_cap:
            raise ConductorCapError(
                f"lcm of conductors {a} and {b} exceeds cap {_conductor_cap}")
        return big

    @staticmethod
    def _coerce(x) -> "CycNum | None":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.from_rational(x)
        return None

    def __add__(self, other) -> "CycNum":
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        m = self._common(other)
        acc: dict[int, Fraction] = dict(self._items_at(m))
        for k, c in other._items_at(m):
            acc[k] = acc.get(k, Fraction(0)) + c
        return CycNum(m, tuple(acc.items()))

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.conductor, tuple((k, -c) for k, c in self._items),
                      _canonical=True)

    def __sub__(self, other) -> "CycNum":
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycNum":
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "CycNum":
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        if other.conductor == 1:
            f = other._items[0][1]
            return CycNum(self.conductor, tuple((k, c * f) for k, c in self._items),
                          _canonical=True) if f != 1 else self
        if self.conductor == 1:
            return other * self
        m = self._common(other)
        a = list(self._items_at(m))
        b = list(other._items_at(m))
        acc: dict[int, Fraction] = {}
        for k1, c1 in a:
            for k2, c2 in b:
                k = (k1 + k2) % m
                acc[k] = acc.get(k, Fraction(0)) + c1 * c2
        return CycNum(m, tuple(acc.items()))

    __rmul__ = __mul__

    def scaled(self, f: Rational) -> "CycNum":
        f = _as_fraction(f)
        if not f:
            return ZERO
        return CycNum(self.conductor, tuple((k, c * f) for k, c in self._items),
                      _canonical=True)

    def conj(self) -> "CycNum":
        """Complex conjugation, zeta_m^k -> zeta_m^{m-k}."""
        m = self.conductor
        if m == 1:
            return self
        return CycNum(m, tuple(((m - k) % m, c) for k, c in self._items))

    def norm_squared(self) -> "CycNum":
        return self * self.conj()

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        return self.conductor == other.conductor and self._items == other._items

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.conductor, self._items))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        """Deterministic total order; rationals first, 1 before -1."""
        return (self.conductor,
                tuple((k, -c.numerator, c.denominator) for k, c in self._items))

    # -- numeric image ---------------------------------------------------------

    def embed(self) -> complex:
        """Numeric value under zeta_m -> exp(2*pi*i/m).  Diagnostics only."""
        roots = _embed_roots(self.conductor)
        return sum((complex(c) * roots[k] for k, c in self._items), 0j)

    # -- display ---------------------------------------------------------------

    def __repr__(self) -> str:
        return f"CycNum({self.conductor}, {self.to_terms()})"

    def __str__(self) -> str:
        return format_cyc(self)


@lru_cache(maxsize=None)
def _embed_roots(m: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / m) for k in range(m))


ZERO = CycNum(1, (), _canonical=True)
ONE = CycNum(1, ((0, Fraction(1)),), _canonical=True)
MINUS_ONE = CycNum(1, ((0, Fraction(-1)),), _canonical=True)


def format_cyc(v: CycNum) -> str:
    """Compact human-readable form: rationals plainly, i for zeta_4,
    z{m}^{k} otherwise."""
    if v.is_zero():
        return "0"

    def mono(k: int, c: Fraction, m: int) -> str:
        if k == 0:
            return str(c)
        if m == 4 and k == 1:
            unit = "i"
        else:
            unit = f"z{m}" if k == 1 else f"z{m}^{k}"
        if c == 1:
            return unit
        if c == -1:
            return f"-{unit}"
        return f"{c}*{unit}"

    parts = [mono(k, c, v.conductor) for k, c in v._items]
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out
