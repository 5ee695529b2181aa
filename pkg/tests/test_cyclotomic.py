import random
from fractions import Fraction
from math import gcd

import pytest

from noethercheck.cyclotomic import (
    CycField,
    GaloisMap,
    cyclotomic_polynomial,
    euler_phi,
    galois_apply,
    root_order,
    verify_lemma_2_4,
)


# local polynomial helpers, independent of the implementation under test
def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divide(num, den):
    num = list(num)
    quo = [0] * (len(num) - len(den) + 1)
    for k in range(len(quo) - 1, -1, -1):
        c = num[k + len(den) - 1]
        quo[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    assert not any(num), "division not exact"
    return quo


def test_phi_base_cases():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)


def test_phi_8_by_exact_division():
    # divide x^8 - 1 by Phi_1 Phi_2 Phi_4 with local polynomial arithmetic
    den = poly_mul(poly_mul([-1, 1], [1, 1]), [1, 0, 1])
    num = [-1, 0, 0, 0, 0, 0, 0, 0, 1]
    assert tuple(poly_divide(num, den)) == cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)


def test_phi_product_over_divisors():
    for m in range(1, 65):
        prod = [1]
        for d in range(1, m + 1):
            if m % d == 0:
                prod = poly_mul(prod, list(cyclotomic_polynomial(d)))
        expected = [0] * (m + 1)
        expected[0], expected[m] = -1, 1
        assert prod == expected, f"m={m}"
        assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


def test_galois_identity_map():
    field = CycField(8)
    e = field.zeta() + field.from_rational(Fraction(3, 7))
    assert galois_apply(GaloisMap(1, 8), e) == e


def test_galois_inversion_m8():
    # zeta^-1 = zeta^7 = -zeta^3 in the basis modulo zeta^4 + 1
    field = CycField(8)
    image = field.zeta().galois(-1)
    assert image == -field.zeta(3)
    assert image.coeffs == (Fraction(0), Fraction(0), Fraction(0), Fraction(-1))


def test_galois_sends_fourth_root_to_inverse():
    field = CycField(8)
    zeta4 = field.zeta(2)
    assert zeta4.galois(-1) == zeta4.inverse() == -zeta4


def test_galois_rejects_noncoprime():
    field = CycField(8)
    with pytest.raises(ValueError):
        field.zeta().galois(2)
    with pytest.raises(ValueError):
        GaloisMap(4, 8)


def test_involutions_square_to_identity():
    for m, a in [(8, -1), (8, 3), (8, 5), (16, 7), (16, -1), (12, 5)]:
        assert (a * a) % m == 1
        field = CycField(m)
        for j in range(field.degree):
            e = field.zeta(j)
            assert e.galois(a).galois(a) == e


def test_field_axioms_on_random_elements():
    rng = random.Random(11)
    for m in (4, 5, 8, 9, 12):
        field = CycField(m)

        def rand_elem():
            return field.reduce(
                [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(field.degree)]
            )

        for _ in range(10):
            e1, e2, e3 = rand_elem(), rand_elem(), rand_elem()
            assert (e1 * e2) * e3 == e1 * (e2 * e3)
            assert e1 * (e2 + e3) == e1 * e2 + e1 * e3
            if not e1.is_zero():
                assert (e1 * e1.inverse()).is_one()


def test_root_order_formula():
    for m in (2, 3, 4, 6, 8, 9, 12, 16, 25, 32):
        field = CycField(m)
        for j in range(m):
            assert root_order(field.zeta(j)) == m // gcd(j, m)


def test_root_order_examples():
    assert root_order(CycField(4).one) == 1
    assert root_order(CycField(8).zeta(2)) == 4
    assert root_order(CycField(9).zeta(3)) == 3


def test_root_order_non_root():
    field = CycField(4)
    assert root_order(field.one + field.zeta()) is None
    assert root_order(field.zero) is None


def test_zeta_has_exact_order_m():
    for m in (2, 3, 4, 8, 9, 16):
        assert root_order(CycField(m).zeta()) == m


@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("case", ["inverse", "negated-inverse"])
def test_lemma_2_4_both_cases(m, case):
    a = -1 if case == "inverse" else -1 + 2 ** (m - 1)
    verdict = verify_lemma_2_4(m, a)
    assert verdict.ok, verdict.detail


def test_lemma_2_4_rejects_other_maps():
    assert not verify_lemma_2_4(3, 1).ok
    assert not verify_lemma_2_4(3, 5).ok  # zeta -> -zeta fixes zeta_4
    assert not verify_lemma_2_4(2, -1).ok  # below the lemma's range
