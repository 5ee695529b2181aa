"""Exact integer matrix algebra: determinants (fraction-free Bareiss),
unimodularity certificates for monomial changes of variables, Smith normal
form, and invariant-monomial lattices for diagonal root-of-unity actions.

Matrices are plain lists of lists of Python ints; all arithmetic is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

IntMatrix = list[list[int]]


def _copy(m: IntMatrix) -> IntMatrix:
    return [row[:] for row in m]


def _check_rect(m: IntMatrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("ragged matrix")
    return rows, cols


def identity_matrix(k: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    ra, ca = _check_rect(a)
    rb, cb = _check_rect(b)
    if ca != rb:
        raise ValueError("dimension mismatch")
    return [[sum(a[i][k] * b[k][j] for k in range(ca)) for j in range(cb)] for i in range(ra)]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    rows, cols = _check_rect(m)
    if rows != cols:
        raise ValueError("determinant of non-square matrix")
    if rows == 0:
        return 1
    a = _copy(m)
    sign = 1
    prev = 1
    for k in range(rows - 1):
        if a[k][k] == 0:
            for r in range(k + 1, rows):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, rows):
            for j in range(k + 1, rows):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[rows - 1][rows - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return determinant(m) in (1, -1)


def integer_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, exact and integral."""
    d = determinant(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    k, _ = _check_rect(m)
    if k == 0:
        return []
    # adjugate / det
    inv = []
    for i in range(k):
        row = []
        for j in range(k):
            minor = [
                [m[r][c] for c in range(k) if c != i]
                for r in range(k) if r != j
            ]
            cof = (-1) ** (i + j) * determinant(minor)
            row.append(cof // d)
        inv.append(row)
    return inv


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    if y == 0:
        return (x, 1, 0)
    g, s, t = _ext_gcd(y, x % y)
    return (g, t, s - (x // y) * t)


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U m V = D, U and V unimodular and D diagonal
    with nonnegative entries satisfying d1 | d2 | ...; plain gcd row/column
    reduction, adequate for the small matrices used here."""
    rows, cols = _check_rect(m)
    d = _copy(m)
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_op(i1, i2, a, b, c, e):
        # rows i1, i2 <- a*i1 + b*i2, c*i1 + e*i2 (applied to d and u)
        for mat in (d, u):
            r1, r2 = mat[i1], mat[i2]
            for k in range(len(r1)):
                x, y = r1[k], r2[k]
                r1[k] = a * x + b * y
                r2[k] = c * x + e * y

    def col_op(j1, j2, a, b, c, e):
        for mat in (d, v):
            for row in mat:
                x, y = row[j1], row[j2]
                row[j1] = a * x + b * y
                row[j2] = c * x + e * y

    limit = min(rows, cols)

    def diagonalize():
        for t in range(limit):
            pr = pc = -1
            for i in range(t, rows):
                for j in range(t, cols):
                    if d[i][j] != 0:
                        pr, pc = i, j
                        break
                if pr >= 0:
                    break
            if pr < 0:
                return
            if pr != t:
                row_op(t, pr, 0, 1, 1, 0)
            if pc != t:
                col_op(t, pc, 0, 1, 1, 0)
            # improve the pivot by gcd steps until it divides its whole row
            # and column (each step strictly shrinks |pivot|, so this ends)
            changed = True
            while changed:
                changed = False
                for i in range(t + 1, rows):
                    if d[i][t] % d[t][t] != 0:
                        g, s, q = _ext_gcd(d[t][t], d[i][t])
                        a, b = d[t][t] // g, d[i][t] // g
                        row_op(t, i, s, q, -b, a)
                        changed = True
                for j in range(t + 1, cols):
                    if d[t][j] % d[t][t] != 0:
                        g, s, q = _ext_gcd(d[t][t], d[t][j])
                        a, b = d[t][t] // g, d[t][j] // g
                        col_op(t, j, s, q, -b, a)
                        changed = True
            # plain eliminations: these leave the pivot row/column zeroed
            # without reintroducing fill-ins
            for i in range(t + 1, rows):
                if d[i][t]:
                    row_op(t, i, 1, 0, -(d[i][t] // d[t][t]), 1)
            for j in range(t + 1, cols):
                if d[t][j]:
                    col_op(t, j, 1, 0, -(d[t][j] // d[t][t]), 1)

    diagonalize()
    # enforce the divisibility chain: fold a violating entry back into the
    # pivot column and re-diagonalize until stable
    stable = False
    while not stable:
        stable = True
        for t in range(limit - 1):
            a, b = d[t][t], d[t + 1][t + 1]
            if a != 0 and b % a != 0:
                col_op(t, t + 1, 1, 0, 1, 1)
                diagonalize()
                stable = False
                break
            if a == 0 and b != 0:
                row_op(t, t + 1, 0, 1, 1, 0)
                col_op(t, t + 1, 0, 1, 1, 0)
                stable = False
                break
    for t in range(limit):
        if d[t][t] < 0:
            for mat in (d, u):
                mat[t] = [-x for x in mat[t]]
    return u, d, v


def lattice_contains(basis: IntMatrix, vector: list[int]) -> bool:
    """Whether `vector` lies in the integer row span of `basis` (square, full rank)."""
    k, cols = _check_rect(basis)
    if k != cols:
        raise ValueError("basis must be square")
    # solve x * basis = vector over Q, then check integrality
    a = [[Fraction(basis[r][c]) for r in range(k)] for c in range(k)]  # transposed
    rhs = [Fraction(x) for x in vector]
    # gaussian elimination on the transposed system
    perm = list(range(k))
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("basis is singular")
        a[col], a[piv] = a[piv], a[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        rhs[col] *= inv
        for r in range(k):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                rhs[r] -= f * rhs[col]
    del perm
    return all(x.denominator == 1 for x in rhs)


def invariant_exponent_lattice(weights: list[int], modulus: int) -> IntMatrix:
    """Basis (as rows) of {e in Z^r : weights . e = 0 mod modulus}.

    Used to certify fixed fields of diagonal root-of-unity actions: the
    action x_i -> omega^(weights[i]) x_i (omega of order `modulus`) fixes
    exactly the monomials whose exponent vectors lie in this lattice.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    r = len(weights)
    if r < 1:
        raise ValueError("need at least one weight")
    c = [w % modulus for w in weights]
    # accumulate a unimodular V with c . V = (g, 0, ..., 0)
    v = identity_matrix(r)
    vec = c[:]

    def ext_gcd(x, y):
        if y == 0:
            return (x, 1, 0)
        g, s, t = ext_gcd(y, x % y)
        return (g, t, s - (x // y) * t)

    for j in range(1, r):
        if vec[j] == 0:
            continue
        g, s, t = ext_gcd(vec[0], vec[j])
        a, b = vec[0] // g, vec[j] // g
        for row in v:
            x, y = row[0], row[j]
            row[0] = s * x + t * y
            row[j] = -b * x + a * y
        vec[0], vec[j] = g, 0
    g = vec[0]
    step = modulus // gcd(g, modulus) if g else 1
    basis_cols = _copy(v)
    for row in basis_cols:
        row[0] *= step
    # rows of the result are the basis vectors (transpose of the column picture)
    return [[basis_cols[i][j] for i in range(r)] for j in range(r)]


def diagonal_invariant_lattice(weights: list[int], p: int) -> IntMatrix:
    """Invariant lattice for a diagonal action of prime order p (see
    invariant_exponent_lattice for the general-modulus version)."""
    return invariant_exponent_lattice(weights, p)


def lattice_index(basis: IntMatrix) -> int:
    """Index in Z^r of the row span of a square basis, |det|."""
    return abs(determinant(basis))
