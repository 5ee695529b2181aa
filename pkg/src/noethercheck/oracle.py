"""Independent finite-field sampling oracle: re-checks symbolic identities
by evaluation over a prime field F_q with q = 1 (mod m), where the
cyclotomic generator maps to a verified element of exact order m.

The oracle only refutes or corroborates; a disagreement at any sampled
point is a definitive failure, while agreement bounds the false-pass
probability by (total degree)/q per trial.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycElem
from .errors import OracleError
from .ratfield import LaurentPoly, RatFunc

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the 64-bit range used here."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    k, rest = 2, m
    while k * k <= rest:
        if rest % k == 0:
            out.append(k)
            while rest % k == 0:
                rest //= k
        k += 1
    if rest > 1:
        out.append(rest)
    return out


@dataclass(frozen=True)
class PrimeField:
    """F_q together with an element omega of exact multiplicative order m."""

    q: int
    m: int
    omega: int

    def embed(self, c: CycElem) -> int:
        """Map a cyclotomic element into F_q via zeta -> omega."""
        if c.field.m != self.m:
            raise OracleError(f"element lives in m={c.field.m}, oracle has m={self.m}")
        total = 0
        w = 1
        for coeff in c.coeffs:
            if coeff:
                total = (total + self.embed_rational(coeff) * w) % self.q
            w = w * self.omega % self.q
        return total

    def embed_rational(self, f: Fraction) -> int:
        den = f.denominator % self.q
        if den == 0:
            raise OracleError(f"denominator {f.denominator} vanishes mod q={self.q}")
        return f.numerator % self.q * pow(den, -1, self.q) % self.q


def find_prime_with_root(m: int, min_q: int = 2**20 + 1,
                         search_cap: int = 10**7) -> PrimeField:
    """Smallest prime q >= min_q with q = 1 (mod m), plus an element of
    verified exact order m (candidates raised to (q-1)/m until the order
    checks pass against every prime divisor of m)."""
    if m < 1:
        raise ValueError("m must be positive")
    q = max(min_q, 2)
    if m > 1:
        r = (q - 1) % m
        if r:
            q += m - r
    scanned = 0
    while not is_prime(q):
        q += m if m > 1 else 1
        scanned += 1
        if scanned > search_cap:
            raise OracleError(f"no prime q = 1 mod {m} found below cap")
    if m == 1:
        return PrimeField(q, 1, 1)
    exps = [m // ell for ell in _prime_factors(m)]
    for r in range(2, q):
        omega = pow(r, (q - 1) // m, q)
        if omega != 1 and all(pow(omega, e, q) != 1 for e in exps):
            return PrimeField(q, m, omega)
    raise OracleError(f"no element of order {m} found in F_{q}")


@dataclass(frozen=True)
class OracleResult:
    ok: bool
    agree: int
    trials: int
    detail: str = ""


def _compile_poly(poly: LaurentPoly, field: PrimeField) -> list[tuple[int, list[tuple[int, int]]]]:
    """Embed coefficients once and keep only nonzero exponent positions."""
    q = field.q
    compiled = []
    for exps, c in poly.terms.items():
        support = [(i, e % (q - 1)) for i, e in enumerate(exps) if e]
        compiled.append((field.embed(c), support))
    return compiled


def _eval_compiled(compiled, q: int, point: list[int]) -> int:
    total = 0
    for coeff, support in compiled:
        term = coeff
        for i, e in support:
            x = point[i]
            term = term * (x if e == 1 else pow(x, e, q)) % q
        total += term
    return total % q


def sample_check(lhs: RatFunc, rhs: RatFunc, field: PrimeField,
                 trials: int = 100, rng: random.Random | None = None,
                 max_resamples: int = 200) -> OracleResult:
    """Evaluate both sides at `trials` random points with nonzero
    coordinates, resampling any point where a denominator vanishes."""
    if lhs.space != rhs.space:
        raise OracleError("sides live in different variable spaces")
    rng = rng or random.Random()
    nvars = lhs.space.nvars
    q = field.q
    agree = 0
    degree = max(
        lhs.num.total_degree_bound() + rhs.den.total_degree_bound(),
        rhs.num.total_degree_bound() + lhs.den.total_degree_bound(),
    )
    c_ln, c_ld = _compile_poly(lhs.num, field), _compile_poly(lhs.den, field)
    c_rn, c_rd = _compile_poly(rhs.num, field), _compile_poly(rhs.den, field)
    for trial in range(trials):
        for _ in range(max_resamples):
            point = [rng.randrange(1, q) for _ in range(nvars)]
            dl = _eval_compiled(c_ld, q, point)
            dr = _eval_compiled(c_rd, q, point)
            if dl and dr:
                break
        else:
            raise OracleError("could not avoid denominator zeros (degenerate identity)")
        nl = _eval_compiled(c_ln, q, point)
        nr = _eval_compiled(c_rn, q, point)
        if nl * dr % q == nr * dl % q:
            agree += 1
        else:
            return OracleResult(
                False, agree, trials,
                f"disagreement at trial {trial}: point {point} over q={q}",
            )
    bound = Fraction(degree, q)
    return OracleResult(
        True, agree, trials,
        f"{agree}/{trials} agree over q={q}; per-trial false-pass bound <= {bound} "
        f"(degree {degree})",
    )
