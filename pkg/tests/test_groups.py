import pytest

from noethercheck.errors import EnumerationCapError, ParameterError
from noethercheck.groups import (
    GroupElement,
    GroupSpec,
    element_order,
    elements_by_order,
    enumerate_elements,
    group_exponent,
    identity,
    inverse,
    involutions,
    multiply,
    power,
    sigma,
    tau,
    verify_presentation,
)

SPEC_GRID = [
    ("M", 2, 3), ("M", 2, 4), ("M", 2, 5),
    ("M", 3, 3), ("M", 3, 4), ("M", 5, 3),
    ("D", 2, 4), ("D", 2, 5),
    ("SD", 2, 4), ("SD", 2, 5),
    ("Q", 2, 3), ("Q", 2, 4), ("Q", 2, 5),
]


@pytest.mark.parametrize("family,p,n", SPEC_GRID)
def test_presentation_verifies(family, p, n):
    verdict = verify_presentation(GroupSpec(family, p, n))
    assert verdict.ok, verdict.detail


def test_family_bounds_rejected():
    with pytest.raises(ParameterError):
        GroupSpec("SD", 2, 3)
    with pytest.raises(ParameterError):
        GroupSpec("D", 2, 3)
    with pytest.raises(ParameterError):
        GroupSpec("M", 2, 2)
    with pytest.raises(ParameterError):
        GroupSpec("M", 4, 3)  # p must be prime
    with pytest.raises(ParameterError):
        GroupSpec("D", 3, 4)  # dihedral family needs p = 2
    with pytest.raises(ParameterError):
        GroupSpec("X", 2, 4)


@pytest.mark.parametrize("family,p,n", [("M", 2, 4), ("D", 2, 4), ("SD", 2, 4), ("Q", 2, 4)])
def test_identity_and_inverses(family, p, n):
    spec = GroupSpec(family, p, n)
    for g in enumerate_elements(spec):
        assert multiply(identity(), g, spec) == g
        assert multiply(g, identity(), spec) == g
        assert multiply(g, inverse(g, spec), spec) == identity()
        assert multiply(inverse(g, spec), g, spec) == identity()


def test_dihedral_conjugation():
    # tau^-1 sigma tau = sigma^-1 = sigma^7 in the order-16 dihedral group
    spec = GroupSpec("D", 2, 4)
    lhs = multiply(multiply(inverse(tau(), spec), sigma(), spec), tau(), spec)
    assert lhs == GroupElement(7, 0)


def test_quaternion_tau_squared():
    spec = GroupSpec("Q", 2, 4)
    assert multiply(tau(), tau(), spec) == sigma(4)
    assert element_order(tau(), spec) == 4


def test_modular_sigma_order():
    assert element_order(sigma(), GroupSpec("M", 3, 3)) == 9
    assert element_order(identity(), GroupSpec("M", 3, 3)) == 1


def test_exponents_match_brute_force():
    # independent brute force: repeated multiplication until the identity
    def brute_order(g, spec):
        cur, d = g, 1
        while cur != identity():
            cur = multiply(cur, g, spec)
            d += 1
        return d

    cases = {("M", 2, 3): 4, ("D", 2, 4): 8, ("Q", 2, 4): 8}
    for (family, p, n), expected in cases.items():
        spec = GroupSpec(family, p, n)
        brute = max(brute_order(g, spec) for g in enumerate_elements(spec))
        assert group_exponent(spec) == brute == expected

    for family, p, n in SPEC_GRID:
        spec = GroupSpec(family, p, n)
        brute = max(brute_order(g, spec) for g in enumerate_elements(spec))
        assert group_exponent(spec) == brute


def test_conjugation_relation_globally():
    for family, p, n in SPEC_GRID:
        spec = GroupSpec(family, p, n)
        t_inv = inverse(tau(), spec)
        for i in range(spec.sigma_order):
            conj = multiply(multiply(t_inv, sigma(i), spec), tau(), spec)
            assert conj == sigma((i * spec.twist) % spec.sigma_order)


def test_group_order_and_cyclic_index():
    for family, p, n in SPEC_GRID:
        spec = GroupSpec(family, p, n)
        elements = enumerate_elements(spec)
        assert len(elements) == len(set(elements)) == p**n
        powers = {power(sigma(), k, spec) for k in range(spec.sigma_order)}
        assert len(powers) == p ** (n - 1)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_quaternion_unique_involution(n):
    spec = GroupSpec("Q", 2, n)
    invs = involutions(spec)
    assert invs == [sigma(2 ** (n - 2))]


def test_order_histogram_sums_to_group_order():
    spec = GroupSpec("SD", 2, 4)
    histogram = elements_by_order(spec)
    assert sum(histogram.values()) == 16
    assert histogram[1] == 1


def test_enumeration_cap():
    spec = GroupSpec("M", 2, 16)
    with pytest.raises(EnumerationCapError):
        enumerate_elements(spec)
