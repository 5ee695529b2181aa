import itertools
import random
from math import gcd

import pytest

from noethercheck.lattice import (
    determinant,
    diagonal_invariant_lattice,
    integer_inverse,
    invariant_exponent_lattice,
    is_unimodular,
    lattice_contains,
    lattice_index,
    mat_mul,
    identity_matrix,
    smith_normal_form,
)


# cofactor expansion as an independent determinant oracle
def det_by_cofactors(m):
    k = len(m)
    if k == 0:
        return 1
    if k == 1:
        return m[0][0]
    total = 0
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_by_cofactors(minor)
    return total


def rand_matrix(rng, k, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(k)] for _ in range(k)]


def test_determinant_examples():
    assert determinant(identity_matrix(4)) == 1
    assert determinant([[2, 0], [0, 1]]) == 2
    # exponent matrix of (x0, y1 = x1/x0, y2 = x2/x1)
    assert determinant([[1, 0, 0], [-1, 1, 0], [0, -1, 1]]) in (1, -1)


def test_determinant_matches_cofactor_oracle():
    rng = random.Random(3)
    for k in (1, 2, 3, 4):
        for _ in range(10):
            m = rand_matrix(rng, k)
            assert determinant(m) == det_by_cofactors(m)


def test_determinant_rejects_nonsquare():
    with pytest.raises(ValueError):
        determinant([[1, 2, 3], [4, 5, 6]])


def test_unimodular_examples():
    assert is_unimodular(identity_matrix(3))
    assert not is_unimodular([[2, 0], [0, 2]])
    # z-variables of the first twisted subcase at n = 4, rows over (y0..y3)
    assert is_unimodular([[1, -4, -2, 2], [0, 0, 1, 1], [0, 0, 1, 0], [0, 1, 0, 0]])


def test_snf_zero_matrix():
    u, d, v = smith_normal_form([[0, 0], [0, 0]])
    assert d == [[0, 0], [0, 0]]
    assert u == identity_matrix(2) and v == identity_matrix(2)


def test_snf_worked_example():
    m = [[2, 4], [6, 8]]
    u, d, v = smith_normal_form(m)
    assert [d[i][i] for i in range(2)] == [2, 4]
    assert mat_mul(mat_mul(u, m), v) == d
    assert is_unimodular(u) and is_unimodular(v)


def test_snf_of_unimodular_is_identity():
    rng = random.Random(23)
    for _ in range(5):
        # build a unimodular matrix from random elementary row operations
        m = identity_matrix(3)
        for _ in range(8):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-3, 3)
            for col in range(3):
                m[i][col] += c * m[j][col]
        _, d, _ = smith_normal_form(m)
        assert d == identity_matrix(3)


def minors_gcd(m, k):
    rows, cols = len(m), len(m[0])
    g = 0
    for rsel in itertools.combinations(range(rows), k):
        for csel in itertools.combinations(range(cols), k):
            sub = [[m[r][c] for c in csel] for r in rsel]
            g = gcd(g, abs(det_by_cofactors(sub)))
    return g


def test_snf_invariant_factors_match_minor_gcds():
    rng = random.Random(31)
    for _ in range(8):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        m = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        u, d, v = smith_normal_form(m)
        assert mat_mul(mat_mul(u, m), v) == d
        assert is_unimodular(u) and is_unimodular(v)
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(len(diag) - 1):
            if diag[i]:
                assert diag[i + 1] % diag[i] == 0
            else:
                assert diag[i + 1] == 0
        prod = 1
        for k, dk in enumerate(diag, start=1):
            prod *= dk
            assert abs(prod) == minors_gcd(m, k), (m, diag, k)


def test_invariant_lattice_trivial_weights():
    assert invariant_exponent_lattice([0, 0, 0], 5) == identity_matrix(3)


def test_invariant_lattice_p3_example():
    # brute-force oracle: kernel vectors with small entries must lie in the
    # returned lattice, and the index must be 3
    basis = diagonal_invariant_lattice([1, 2], 3)
    assert lattice_index(basis) == 3
    for e0 in range(-3, 4):
        for e1 in range(-3, 4):
            in_kernel = (e0 + 2 * e1) % 3 == 0
            assert lattice_contains(basis, [e0, e1]) == in_kernel
    # the stated basis generates the same lattice
    for v in [(1, 1), (0, 3)]:
        assert lattice_contains(basis, list(v))


def test_invariant_lattice_p2_single_variable():
    basis = diagonal_invariant_lattice([1], 2)
    assert basis == [[2]]


def test_invariant_lattice_index_formula():
    rng = random.Random(41)
    for p in (2, 3, 5, 7):
        for _ in range(6):
            r = rng.randint(1, 4)
            c = [rng.randrange(p) for _ in range(r)]
            basis = diagonal_invariant_lattice(c, p)
            expected = p if any(x % p for x in c) else 1
            assert lattice_index(basis) == expected
            for row in basis:
                assert sum(x * w for x, w in zip(row, c)) % p == 0


def test_invariant_lattice_composite_modulus():
    basis = invariant_exponent_lattice([1, 1, -1, -1], 8)
    assert lattice_index(basis) == 8
    for row in basis:
        assert (row[0] + row[1] - row[2] - row[3]) % 8 == 0
    # the monomials used in the dihedral chain lie in the lattice
    for v in [(8, 0, 0, 0), (-1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1)]:
        assert lattice_contains(basis, list(v))


def test_integer_inverse_round_trip():
    rng = random.Random(47)
    for _ in range(5):
        m = identity_matrix(4)
        for _ in range(10):
            i, j = rng.sample(range(4), 2)
            c = rng.randint(-2, 2)
            for col in range(4):
                m[i][col] += c * m[j][col]
        inv = integer_inverse(m)
        assert mat_mul(m, inv) == identity_matrix(4)
    with pytest.raises(ValueError):
        integer_inverse([[2, 0], [0, 1]])
