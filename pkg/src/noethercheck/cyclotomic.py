"""Exact arithmetic in Q(zeta_m), represented as Q[x] modulo the m-th
cyclotomic polynomial, together with the Galois maps zeta -> zeta^a.

Coefficients are exact rationals throughout; there is no floating point
anywhere. Inverses come from the extended Euclidean algorithm against the
minimal polynomial, which is irreducible over Q, so every nonzero element
is invertible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    result = m
    k, rest = 2, m
    while k * k <= rest:
        if rest % k == 0:
            result -= result // k
            while rest % k == 0:
                rest //= k
        k += 1
    if rest > 1:
        result -= result // rest
    return result


def divisors(m: int) -> list[int]:
    small, large = [], []
    k = 1
    while k * k <= m:
        if m % k == 0:
            small.append(k)
            if k != m // k:
                large.append(m // k)
        k += 1
    return small + large[::-1]


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_divexact_int(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (monic divisor); raises if inexact."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quo = [0] * (len(num) - dd)
    for k in range(len(quo) - 1, -1, -1):
        c = num[k + dd]
        quo[k] = c
        if c != 0:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    if any(num):
        raise ValueError("division not exact")
    return quo


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, ascending order, degree phi(m).

    Computed by exact division of x^m - 1 by the product of Phi_d over
    proper divisors d of m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return (-1, 1)
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    den = [1]
    for d in divisors(m)[:-1]:
        den = _poly_mul_int(den, list(cyclotomic_polynomial(d)))
    return tuple(_poly_divexact_int(num, den))


class CycField:
    """The cyclotomic field Q(zeta_m)."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.minpoly = cyclotomic_polynomial(m)
        self.degree = len(self.minpoly) - 1
        self._powers = self._build_power_table()
        self.zero = CycElem(self, (Fraction(0),) * self.degree)
        self.one = self.from_rational(1)

    def _build_power_table(self) -> list[tuple[Fraction, ...]]:
        # reduced representation of zeta^j for 0 <= j < m
        deg = self.degree
        table = []
        cur = [Fraction(0)] * deg
        cur[0] = Fraction(1)
        for _ in range(self.m):
            table.append(tuple(cur))
            nxt = [Fraction(0)] + cur[:-1] if deg > 1 else [Fraction(0)]
            lead = cur[-1]
            if lead:
                for i in range(deg):
                    nxt[i] -= lead * self.minpoly[i]
            cur = nxt
        return table

    def from_rational(self, c) -> "CycElem":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(c)
        return CycElem(self, tuple(coeffs))

    def zeta(self, power: int = 1) -> "CycElem":
        """The element zeta^power."""
        return CycElem(self, self._powers[power % self.m])

    def zeta_power_coeffs(self, j: int) -> tuple[Fraction, ...]:
        return self._powers[j % self.m]

    def reduce(self, coeffs: list[Fraction]) -> "CycElem":
        """Reduce an arbitrary-length coefficient list modulo the minimal polynomial."""
        deg = self.degree
        work = list(coeffs)
        for k in range(len(work) - 1, deg - 1, -1):
            c = work[k]
            if c:
                work[k] = Fraction(0)
                for j in range(deg + 1):
                    work[k - deg + j] -= c * self.minpoly[j]
        work = work[:deg] + [Fraction(0)] * (deg - len(work))
        return CycElem(self, tuple(work[:deg]))

    def __eq__(self, other) -> bool:
        return isinstance(other, CycField) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("CycField", self.m))

    def __repr__(self) -> str:
        return f"CycField(m={self.m})"


class CycElem:
    """An element of Q(zeta_m): coefficient vector in the power basis, length phi(m)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "CycElem":
        if isinstance(other, CycElem):
            if other.field.m != self.field.m:
                raise ValueError("elements of different cyclotomic fields")
            return other
        return self.field.from_rational(other)

    def __add__(self, other) -> "CycElem":
        o = self._coerce(other)
        return CycElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> "CycElem":
        o = self._coerce(other)
        return CycElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other) -> "CycElem":
        return self._coerce(other) - self

    def __neg__(self) -> "CycElem":
        return CycElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "CycElem":
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        out = [Fraction(0)] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return self.field.reduce(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycElem":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "CycElem":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycElem":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "CycElem":
        """Inverse via the extended Euclidean algorithm against the minimal polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        # r0 = minpoly, r1 = self; track s only against r1.
        r0 = [Fraction(c) for c in self.field.minpoly]
        r1 = list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            c = r0[d0] / r1[d1]
            shift = d0 - d1
            for i in range(d1 + 1):
                r0[i + shift] -= c * r1[i]
            s1p = [Fraction(0)] * shift + s1
            s0 = s0 + [Fraction(0)] * (len(s1p) - len(s0))
            s1p = s1p + [Fraction(0)] * (len(s0) - len(s1p))
            s0 = [a - c * b for a, b in zip(s0, s1p)]
            r0, r1, s0, s1 = r1, r0, s1, s0
        d = deg(r1)
        if d != 0:
            raise ZeroDivisionError("element not invertible (unexpected for irreducible modulus)")
        c = r1[0]
        return self.field.reduce([si / c for si in s1])

    def galois(self, a: int) -> "CycElem":
        """Image under zeta -> zeta^a; requires gcd(a, m) = 1."""
        m = self.field.m
        if gcd(a % m, m) != 1:
            raise ValueError(f"zeta -> zeta^{a} is not a Galois map for m={m}")
        out = [Fraction(0)] * self.field.degree
        for i, ci in enumerate(self.coeffs):
            if ci:
                for j, tj in enumerate(self.field.zeta_power_coeffs(a * i)):
                    out[j] += ci * tj
        return CycElem(self.field, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self == self.field.one

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, CycElem):
            return self.field.m == other.field.m and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.field.from_rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.m, self.coeffs))

    def __repr__(self) -> str:
        return f"CycElem({self})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "zeta" if i == 1 else f"zeta^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


@dataclass(frozen=True)
class GaloisMap:
    """The field automorphism zeta -> zeta^a of Q(zeta_m)."""

    a: int
    m: int

    def __post_init__(self):
        if gcd(self.a % self.m, self.m) != 1:
            raise ValueError(f"gcd(a, m) != 1: a={self.a}, m={self.m}")

    def apply(self, e: CycElem) -> CycElem:
        if e.field.m != self.m:
            raise ValueError("Galois map applied to element of a different field")
        return e.galois(self.a)

    def is_involution(self) -> bool:
        return (self.a * self.a) % self.m == 1 % self.m


def galois_apply(g: GaloisMap, e: CycElem) -> CycElem:
    return g.apply(e)


def root_order(e: CycElem) -> int | None:
    """Multiplicative order of e if e is a root of unity in Q(zeta_m), else None.

    The roots of unity in Q(zeta_m) have order dividing m for even m and
    2m for odd m, which bounds the search.
    """
    if e.is_zero():
        return None
    m = e.field.m
    bound = m if m % 2 == 0 else 2 * m
    power = e
    for k in range(1, bound + 1):
        if power.is_one():
            return k
        power = power * e
    return None


def verify_lemma_2_4(m: int, a: int):
    """Cyclotomic content of the degree-two descent lemma.

    In Q(zeta) with zeta of order 2^m (m >= 3), the Galois map zeta -> zeta^a
    for a = -1 or a = -1 + 2^(m-1) (mod 2^m) sends the embedded fourth root
    zeta_4 = zeta^(2^(m-2)) to its inverse, which differs from zeta_4. Hence
    adjoining zeta is the same as adjoining zeta_4 over the fixed field.
    """
    from .verdict import Verdict

    if m < 3:
        return Verdict.failed(f"requires m >= 3, got {m}")
    order = 1 << m
    a_red = a % order
    allowed = {(order - 1), (1 << (m - 1)) - 1}
    if a_red not in allowed:
        return Verdict.failed(
            f"a={a} (= {a_red} mod 2^{m}) is outside the two lemma cases "
            f"-1 and -1+2^{m - 1}"
        )
    field = CycField(order)
    zeta4 = field.zeta(1 << (m - 2))
    if root_order(zeta4) != 4:
        return Verdict.failed("embedded zeta_4 does not have order 4")
    image = zeta4.galois(a_red)
    inv = zeta4.inverse()
    if image != inv:
        return Verdict.failed(f"map sends zeta_4 to {image}, expected zeta_4^-1 = {inv}")
    if image == zeta4:
        return Verdict.failed("zeta_4 is fixed; the extension would not descend to Q(zeta_4)")
    return Verdict.passed(
        f"zeta_4 = zeta^{1 << (m - 2)} maps to zeta_4^-1 != zeta_4 under a={a_red}"
    )
