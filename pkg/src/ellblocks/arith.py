"""Exact rational and cyclotomic arithmetic.

Rationals are :class:`fractions.Fraction`.  Elements of ``Z[zeta_L]`` are
:class:`CycloValue` objects stored in the group ring ``Z[x]/(x^L - 1)``; they
are reduced modulo the cyclotomic polynomial only when compared or converted
to a rational.

The module also carries the small amount of modular machinery used by the
fast contribution engine: primes ``p = 1 (mod L)`` and primitive ``L``-th
roots of unity in ``GF(p)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

BigRational = Fraction


class NonRationalValue(ValueError):
    """A cyclotomic value expected to be rational is not."""


def pi_part(m: int, ell: int) -> int:
    """Largest divisor of ``m`` whose prime factors all divide ``ell``.

    >>> pi_part(12, 6), pi_part(12, 2), pi_part(35, 6)
    (12, 4, 1)
    """
    if m < 1:
        raise ValueError(f"pi_part needs m >= 1, got {m}")
    if ell < 2:
        raise ValueError(f"pi_part needs ell >= 2, got {ell}")
    part = 1
    g = gcd(m, ell)
    while g > 1:
        m //= g
        part *= g
        g = gcd(m, g)
    return part


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n >= 1`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for q in prime_factors(n):
        result -= result // q
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# -- integer polynomials, coefficient tuples low degree first --------------

def _poly_divmod(num: list[int], den: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial."""
    num = list(num)
    dd = len(den) - 1
    if len(num) <= dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return quot, num[:dd] or [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Coefficients of the monic ``L``-th cyclotomic polynomial.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if L < 1:
        raise ValueError(f"conductor must be >= 1, got {L}")
    poly = [-1] + [0] * (L - 1) + [1]
    for d in divisors(L)[:-1]:
        poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
        assert not any(rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_reductions(L: int) -> tuple[tuple[int, ...], ...]:
    """``x^k mod Phi_L`` for ``0 <= k < L`` as coefficient tuples of length phi(L)."""
    phi = cyclotomic_polynomial(L)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(L):
        rows.append(tuple(cur))
        # multiply by x and reduce the overflow coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[j] for j, c in enumerate(cur)]
    return tuple(rows)


class CycloValue:
    """An element of ``Z[zeta_L]`` kept as a vector of ``L`` integer coefficients.

    The coefficient at index ``k`` multiplies ``zeta^k``.  Two values are equal
    when their difference vanishes modulo the ``L``-th cyclotomic polynomial;
    values of different conductor are compared after lifting both to the lcm.
    """

    __slots__ = ("conductor", "coeffs")
    __hash__ = None

    def __init__(self, conductor: int, coeffs):
        if conductor < 1:
            raise ValueError(f"conductor must be >= 1, got {conductor}")
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != conductor:
            raise ValueError(f"expected {conductor} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloValue is immutable")

    @classmethod
    def integer(cls, n: int, conductor: int = 1) -> CycloValue:
        return cls(conductor, (n,) + (0,) * (conductor - 1))

    @classmethod
    def root(cls, k: int, conductor: int) -> CycloValue:
        """``zeta_L ** k``."""
        c = [0] * conductor
        c[k % conductor] = 1
        return cls(conductor, c)

    def lift(self, conductor: int) -> CycloValue:
        """Re-express in ``Z[zeta_M]`` for a multiple ``M`` of the conductor."""
        if conductor == self.conductor:
            return self
        step, rem = divmod(conductor, self.conductor)
        if rem:
            raise ValueError(f"{conductor} is not a multiple of {self.conductor}")
        c = [0] * conductor
        for k, a in enumerate(self.coeffs):
            c[k * step] = a
        return CycloValue(conductor, c)

    def _coerce(self, other) -> tuple[CycloValue, CycloValue]:
        if isinstance(other, int):
            other = CycloValue.integer(other, self.conductor)
        elif not isinstance(other, CycloValue):
            return NotImplemented, NotImplemented
        if other.conductor == self.conductor:
            return self, other
        m = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloValue(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloValue(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloValue(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloValue(self.conductor, [x * other for x in self.coeffs])
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        L = a.conductor
        out = [0] * L
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in bnz:
                    out[(i + j) % L] += x * y
        return CycloValue(L, out)

    __rmul__ = __mul__

    def galois(self, k: int) -> CycloValue:
        """Image under ``zeta -> zeta^k`` (``k`` coprime to the conductor)."""
        L = self.conductor
        if gcd(k, L) != 1:
            raise ValueError(f"{k} is not a unit modulo {L}")
        out = [0] * L
        for i, x in enumerate(self.coeffs):
            out[(i * k) % L] += x
        return CycloValue(L, out)

    def conj(self) -> CycloValue:
        return self.galois(-1)

    def reduced(self) -> tuple[int, ...]:
        """Coordinates in the power basis ``1, zeta, ..., zeta^(phi(L)-1)``."""
        rows = _power_reductions(self.conductor)
        out = [0] * len(rows[0])
        for k, a in enumerate(self.coeffs):
            if a:
                for j, r in enumerate(rows[k]):
                    if r:
                        out[j] += a * r
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def __eq__(self, other):
        if isinstance(other, Fraction) and other.denominator == 1:
            other = other.numerator
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return (a - b).is_zero()

    def is_rational(self) -> bool:
        return not any(self.reduced()[1:])

    def mod(self, p: int, root: int) -> int:
        """Image in ``GF(p)`` under ``zeta -> root`` (``root`` of order ``L`` mod ``p``)."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = (acc * root + a) % p
        return acc

    def __repr__(self):
        terms = [f"{a}*z^{k}" if k else str(a) for k, a in enumerate(self.coeffs) if a]
        return f"CycloValue(L={self.conductor}: {' + '.join(terms) or '0'})"


def cyclo_as_rational(v: CycloValue) -> Fraction:
    """Exact rational value of ``v``; raises :class:`NonRationalValue` otherwise."""
    red = v.reduced()
    if any(red[1:]):
        raise NonRationalValue(f"non-rational value: {v!r}")
    return Fraction(red[0])


# -- modular evaluation --------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def split_prime(L: int, lower: int) -> int:
    """Smallest prime ``p > lower`` with ``p = 1 (mod L)``."""
    step = 2 * L if L % 2 else L
    p = lower + 1
    p += (1 - p) % step
    if L % 2 and p % 2 == 0:
        p += L
    while not is_prime(p):
        p += step
    return p


def root_of_unity_mod(L: int, p: int) -> int:
    """A primitive ``L``-th root of unity in ``GF(p)``; needs ``p = 1 (mod L)``."""
    if (p - 1) % L:
        raise ValueError(f"{p} is not 1 mod {L}")
    qs = prime_factors(L)
    for g in range(2, p):
        r = pow(g, (p - 1) // L, p)
        if all(pow(r, L // q, p) != 1 for q in qs):
            return r
    if L == 1:
        return 1
    raise ArithmeticError(f"no primitive {L}-th root of unity mod {p}")


def unit_group_generators(L: int) -> list[int]:
    """A generating set of ``(Z/L)^*`` (greedy, not necessarily minimal)."""
    gens: list[int] = []
    sub = {1 % L}
    for u in range(2, L):
        if gcd(u, L) != 1 or u in sub:
            continue
        gens.append(u)
        frontier = list(sub)
        while frontier:
            y = frontier.pop() * u % L
            if y not in sub:
                sub.add(y)
                frontier.append(y)
    return gens
