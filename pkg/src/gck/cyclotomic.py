"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored as rational coefficients on the power basis
``1, z, ..., z^(phi(m)-1)`` of ``Q[z]/Phi_m(z)``.  Because that basis is a
basis, coefficient equality is value equality for a fixed conductor; values
with different conductors are compared after lifting both to the lcm.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            assert c % lead == 0
            c //= lead
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    rem = num[: len(den) - 1] or [0]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]  # z^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Reduction of z^k modulo Phi_m for 0 <= k < 2m (integer vectors)."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(2 * m):
        rows.append(tuple(cur))
        # multiply by z and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


@lru_cache(maxsize=None)
def _ramanujan_traces(m: int) -> tuple[int, ...]:
    """Tr_{Q(zeta_m)/Q}(z^k) for k in range(phi(m))."""
    out = []
    for k in range(euler_phi(m)):
        d = m // gcd(k, m)
        out.append(_mobius(d) * euler_phi(m) // euler_phi(d))
    return tuple(out)


def _mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Cyclotomic:
    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable):
        coeffs = tuple(Fraction(c) for c in coeffs)
        d = euler_phi(conductor)
        if len(coeffs) != d:
            coeffs = _reduce(conductor, coeffs)
        self.conductor = conductor
        self.coeffs = coeffs

    @classmethod
    def rational(cls, q) -> Cyclotomic:
        return cls(1, (Fraction(q),))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> Cyclotomic:
        return cls(m, (Fraction(c) for c in _power_table(m)[k % m]))

    @classmethod
    def from_exponents(cls, m: int, exponents: dict[int, int] | Sequence[int]) -> Cyclotomic:
        """Sum of ``mult * zeta_m^k`` given a mapping ``k -> mult``."""
        if not isinstance(exponents, dict):
            exponents = dict(enumerate(exponents))
        table = _power_table(m)
        acc = [0] * euler_phi(m)
        for k, mult in exponents.items():
            if mult:
                for i, c in enumerate(table[k % m]):
                    acc[i] += mult * c
        return cls(m, acc)

    # -- conversion ----------------------------------------------------

    def lift(self, m: int) -> Cyclotomic:
        if m == self.conductor:
            return self
        if m % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {m}")
        step = m // self.conductor
        table = _power_table(m)
        acc = [Fraction(0)] * euler_phi(m)
        for k, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[k * step]):
                    if t:
                        acc[i] += c * t
        return Cyclotomic(m, acc)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(complex(float(c)) * z**k for k, c in enumerate(self.coeffs))

    def trace(self) -> Fraction:
        return sum((c * t for c, t in zip(self.coeffs, _ramanujan_traces(self.conductor))), Fraction(0))

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Rational)):
            return Cyclotomic(1, (Fraction(other),))
        return None

    def _aligned(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic, int]:
        if other.conductor == self.conductor:
            return self, other, self.conductor
        if other.conductor == 1 or self.conductor % other.conductor == 0:
            return self, other.lift(self.conductor), self.conductor
        m = _lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m), m

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == 1 and len(o.coeffs) == 1:
            c = list(self.coeffs)
            c[0] += o.coeffs[0]
            return Cyclotomic(self.conductor, c)
        a, b, m = self._aligned(o)
        return Cyclotomic(m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == 1:
            s = o.coeffs[0]
            return Cyclotomic(self.conductor, tuple(c * s for c in self.coeffs))
        if self.conductor == 1:
            s = self.coeffs[0]
            return Cyclotomic(o.conductor, tuple(c * s for c in o.coeffs))
        a, b, m = self._aligned(o)
        d = euler_phi(m)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(m, _reduce_long(m, prod))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero")
        if self.conductor == 1:
            return Cyclotomic(1, (1 / self.coeffs[0],))
        return Cyclotomic(self.conductor, _poly_inverse(list(self.coeffs), list(map(Fraction, cyclotomic_polynomial(self.conductor)))))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def galois(self, a: int) -> Cyclotomic:
        """Image under zeta -> zeta^a (a coprime to the conductor)."""
        m = self.conductor
        return Cyclotomic.from_exponents_fraction(m, {(a * k) % m: c for k, c in enumerate(self.coeffs) if c})

    @classmethod
    def from_exponents_fraction(cls, m: int, exponents: dict[int, Fraction]) -> Cyclotomic:
        table = _power_table(m)
        acc = [Fraction(0)] * euler_phi(m)
        for k, mult in exponents.items():
            for i, c in enumerate(table[k % m]):
                if c:
                    acc[i] += mult * c
        return cls(m, acc)

    def conjugate(self) -> Cyclotomic:
        return self.galois(-1)

    # -- comparison ----------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, _ = self._aligned(o)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # normalized trace is independent of the chosen conductor
        t = self.trace() / euler_phi(self.conductor)
        return hash(t) if not self.is_rational() else hash(self.coeffs[0])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (f"z{self.conductor}" if k == 1 else f"z{self.conductor}^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coefficients": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Cyclotomic:
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coefficients"]])


def _reduce(m: int, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Reduce an arbitrary-length coefficient vector (powers of zeta_m)."""
    table = _power_table(m)
    acc = [Fraction(0)] * euler_phi(m)
    for k, c in enumerate(coeffs):
        if c:
            for i, t in enumerate(table[k % m]):
                if t:
                    acc[i] += c * t
    return tuple(acc)


def _reduce_long(m: int, prod: list[Fraction]) -> tuple[Fraction, ...]:
    d = euler_phi(m)
    if len(prod) <= d:
        return tuple(prod) + (Fraction(0),) * (d - len(prod))
    table = _power_table(m)
    acc = prod[:d]
    for k in range(d, len(prod)):
        c = prod[k]
        if c:
            for i, t in enumerate(table[k]):
                if t:
                    acc[i] += c * t
    return tuple(acc)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_inverse(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    """Inverse of ``a`` modulo an irreducible polynomial (extended Euclid)."""
    d = len(modulus) - 1
    r0, r1 = _trim(list(modulus)), _trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1 or r1[0] != 0:
        if len(r1) == 1:
            inv = 1 / r1[0]
            out = [c * inv for c in s1] + [Fraction(0)] * d
            return out[:d]
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    raise ZeroDivisionError("not invertible")


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = a[shift + len(b) - 1] / lead
        q[shift] = c
        if c:
            for i, x in enumerate(b):
                a[shift + i] -= c * x
    return q, _trim(a[: len(b) - 1] or [Fraction(0)])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def as_scalar(x):
    """Demote rational cyclotomics to ``Fraction`` (faster linear algebra)."""
    if isinstance(x, Cyclotomic) and x.is_rational():
        return x.coeffs[0]
    return x


def conj(x):
    return x.conjugate() if isinstance(x, Cyclotomic) else x
