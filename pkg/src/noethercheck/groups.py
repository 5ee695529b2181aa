"""Element arithmetic and presentation checking for the four families of
p-groups with a cyclic subgroup of index p:

    M(p^n):   sigma^(p^(n-1)) = tau^p = 1,  tau^-1 sigma tau = sigma^(1+p^(n-2))
    D(2^(n-1)):  sigma^(2^(n-1)) = tau^2 = 1,  tau^-1 sigma tau = sigma^-1
    SD(2^(n-1)): sigma^(2^(n-1)) = tau^2 = 1,  tau^-1 sigma tau = sigma^(-1+2^(n-2))
    Q(2^n):   sigma^(2^(n-1)) = tau^4 = 1, sigma^(2^(n-2)) = tau^2,
              tau^-1 sigma tau = sigma^-1

Elements are kept in the normal form sigma^i tau^j with i reduced modulo
p^(n-1); j runs over 0..p-1 for M and over {0, 1} for D, SD and Q (for Q,
tau^2 is folded into the sigma part during reduction, so tau^4 = 1 is a
consequence rather than an assumption).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import EnumerationCapError, ParameterError
from .verdict import Verdict

FAMILIES = ("M", "D", "SD", "Q")

ENUMERATION_CAP = 2**14


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class GroupSpec:
    family: str
    p: int
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not _is_prime(self.p):
            raise ParameterError(f"p={self.p} is not prime")
        if self.family == "M":
            if self.n < 3:
                raise ParameterError("M(p^n) requires n >= 3")
        elif self.family in ("D", "SD"):
            if self.p != 2:
                raise ParameterError(f"{self.family} requires p = 2")
            if self.n < 4:
                raise ParameterError(f"{self.family}(2^(n-1)) requires n >= 4")
        else:  # Q
            if self.p != 2:
                raise ParameterError("Q requires p = 2")
            if self.n < 3:
                raise ParameterError("Q(2^n) requires n >= 3")

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def sigma_order(self) -> int:
        return self.p ** (self.n - 1)

    @property
    def tau_range(self) -> int:
        """Number of tau-powers in the normal form."""
        return self.p if self.family == "M" else 2

    @cached_property
    def twist(self) -> int:
        """k with tau^-1 sigma tau = sigma^k, reduced modulo sigma's order."""
        mod = self.sigma_order
        if self.family == "M":
            return (1 + self.p ** (self.n - 2)) % mod
        if self.family in ("D", "Q"):
            return (-1) % mod
        return (-1 + 2 ** (self.n - 2)) % mod  # SD

    def __str__(self) -> str:
        if self.family == "M":
            return f"M({self.p}^{self.n})"
        if self.family == "Q":
            return f"Q(2^{self.n})"
        return f"{self.family}(2^{self.n - 1})"


@dataclass(frozen=True)
class GroupElement:
    i: int
    j: int


def identity() -> GroupElement:
    return GroupElement(0, 0)


def sigma(power: int = 1) -> GroupElement:
    return GroupElement(power, 0)


def tau() -> GroupElement:
    return GroupElement(0, 1)


def _normalize(i: int, j: int, spec: GroupSpec) -> GroupElement:
    mod = spec.sigma_order
    if spec.family == "Q":
        while j >= 2:
            j -= 2
            i += 2 ** (spec.n - 2)
        while j < 0:
            j += 2
            i -= 2 ** (spec.n - 2)
    else:
        j %= spec.tau_range
    return GroupElement(i % mod, j)


def multiply(g: GroupElement, h: GroupElement, spec: GroupSpec) -> GroupElement:
    """Normal-form product: tau^b sigma^c = sigma^(c k^-b) tau^b."""
    mod = spec.sigma_order
    shifted = (h.i * pow(spec.twist, -g.j, mod)) % mod
    return _normalize(g.i + shifted, g.j + h.j, spec)


def inverse(g: GroupElement, spec: GroupSpec) -> GroupElement:
    mod = spec.sigma_order
    if g.j == 0:
        return GroupElement((-g.i) % mod, 0)
    b = spec.tau_range - g.j
    # (sigma^i tau^j)(sigma^a tau^b) = sigma^(i + a k^-j) tau^(j+b); tau^(j+b) = tau^tau_range
    extra = 2 ** (spec.n - 2) if spec.family == "Q" else 0
    a = (-(g.i + extra) * pow(spec.twist, g.j, mod)) % mod
    return _normalize(a, b, spec)


def power(g: GroupElement, k: int, spec: GroupSpec) -> GroupElement:
    if k < 0:
        return power(inverse(g, spec), -k, spec)
    result = identity()
    base = g
    while k:
        if k & 1:
            result = multiply(result, base, spec)
        base = multiply(base, base, spec)
        k >>= 1
    return result


def element_order(g: GroupElement, spec: GroupSpec) -> int:
    d = 1
    cur = g
    while cur != identity():
        cur = multiply(cur, g, spec)
        d += 1
        if d > spec.order:
            raise RuntimeError("order search exceeded group order; broken multiplication")
    return d


def enumerate_elements(spec: GroupSpec) -> list[GroupElement]:
    if spec.order > ENUMERATION_CAP:
        raise EnumerationCapError(
            f"|G| = {spec.order} exceeds enumeration cap {ENUMERATION_CAP}"
        )
    return [
        GroupElement(i, j)
        for j in range(spec.tau_range)
        for i in range(spec.sigma_order)
    ]


def group_exponent(spec: GroupSpec) -> int:
    """Maximum element order, by brute-force enumeration."""
    return max(element_order(g, spec) for g in enumerate_elements(spec))


def elements_by_order(spec: GroupSpec) -> dict[int, int]:
    counts: dict[int, int] = {}
    for g in enumerate_elements(spec):
        d = element_order(g, spec)
        counts[d] = counts.get(d, 0) + 1
    return counts


def involutions(spec: GroupSpec) -> list[GroupElement]:
    return [g for g in enumerate_elements(spec) if element_order(g, spec) == 2]


def verify_presentation(spec: GroupSpec) -> Verdict:
    """Check the defining relations, closure/associativity of the full
    multiplication table, and that <sigma> has index p."""
    elements = enumerate_elements(spec)
    if len(elements) != spec.order:
        return Verdict.failed(f"enumeration produced {len(elements)} != {spec.order} elements")
    if len(set(elements)) != spec.order:
        return Verdict.failed("normal forms are not distinct")

    s, t = sigma(), tau()
    if power(s, spec.sigma_order, spec) != identity():
        return Verdict.failed(f"sigma^{spec.sigma_order} != 1")
    if element_order(s, spec) != spec.sigma_order:
        return Verdict.failed("sigma has wrong order")
    if spec.family == "Q":
        if power(t, 4, spec) != identity():
            return Verdict.failed("tau^4 != 1")
        if power(t, 2, spec) != sigma(2 ** (spec.n - 2)):
            return Verdict.failed("tau^2 != sigma^(2^(n-2))")
    else:
        if power(t, spec.tau_range, spec) != identity():
            return Verdict.failed(f"tau^{spec.tau_range} != 1")
    # conjugation relation, globally: tau^-1 sigma^i tau = sigma^(i k)
    t_inv = inverse(t, spec)
    for i in range(spec.sigma_order):
        lhs = multiply(multiply(t_inv, sigma(i), spec), t, spec)
        if lhs != sigma((i * spec.twist) % spec.sigma_order):
            return Verdict.failed(f"conjugation fails at sigma^{i}")

    index = {g: pos for pos, g in enumerate(elements)}
    table = [
        [index[multiply(a, b, spec)] for b in elements]
        for a in elements
    ]
    size = len(elements)
    for a in range(size):
        for b in range(size):
            ab = table[a][b]
            row_ab = table[ab]
            row_b = table[b]
            for c in range(size):
                if row_ab[c] != table[a][row_b[c]]:
                    return Verdict.failed(
                        f"associativity fails at indices ({a}, {b}, {c})"
                    )
    cyclic = {sigma(i) for i in range(spec.sigma_order)}
    if len(cyclic) != spec.sigma_order or spec.order // len(cyclic) != spec.p:
        return Verdict.failed("<sigma> does not have index p")
    return Verdict.passed(f"|G| = {spec.order}, relations and full table verified")
