"""
Exact integer and rational linear algebra.

Matrices are plain nested lists (or tuples) of Python ints / Fractions.
Everything here is small-dimensional (rank <= 22), so clarity wins over speed.
"""

from fractions import Fraction
from math import gcd

from .errors import NotSquare, NotSymmetric, RankDeficient

Rational = Fraction


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def shape(M):
    m = len(M)
    n = len(M[0]) if m else 0
    for row in M:
        if len(row) != n:
            raise ValueError("ragged matrix")
    return m, n


def transpose(M):
    m, n = shape(M)
    return [[M[i][j] for i in range(m)] for j in range(n)]


def matmul(A, B):
    m, k = shape(A)
    k2, n = shape(B)
    if k != k2 and m and n:
        raise ValueError("shape mismatch %sx%s * %sx%s" % (m, k, k2, n))
    Bt = transpose(B) if k2 else [[] for _ in range(n)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def bilinear(G, u, v):
    return dot(u, matvec(G, v))


def is_symmetric(G):
    m, n = shape(G)
    return m == n and all(G[i][j] == G[j][i] for i in range(n) for j in range(i))


def to_tuple(M):
    return tuple(tuple(row) for row in M)


def block_diagonal(blocks):
    n = sum(len(B) for B in blocks)
    out = zeros(n, n)
    off = 0
    for B in blocks:
        k = len(B)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = B[i][j]
        off += k
    return out


def determinant(G):
    """Exact determinant by Bareiss fraction-free elimination."""
    m, n = shape(G)
    if m != n:
        raise NotSquare("determinant of a %dx%d matrix" % (m, n))
    if n == 0:
        return 1
    A = [list(row) for row in G]
    if any(isinstance(x, Fraction) for row in A for x in row):
        return _fraction_det(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _fraction_det(A):
    n = len(A)
    A = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return det


def inverse(M):
    """Inverse over Q as a matrix of Fractions."""
    m, n = shape(M)
    if m != n:
        raise NotSquare("inverse of a %dx%d matrix" % (m, n))
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[k], A[piv] = A[piv], A[k]
        p = A[k][k]
        A[k] = [x / p for x in A[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                f = A[i][k]
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return [row[n:] for row in A]


def rank(M):
    m, n = shape(M)
    A = [[Fraction(x) for x in row] for row in M]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            if A[i][c]:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


def charpoly(G):
    """Coefficients [c_n, ..., c_0] (c_n = 1) of det(xI - G), Faddeev-LeVerrier."""
    n = len(G)
    coeffs = [1]
    Mk = zeros(n, n)
    c = 1
    for k in range(1, n + 1):
        # M_k = G M_{k-1} + c_{n-k+1} I
        Mk = matmul(G, Mk) if k > 1 else zeros(n, n)
        for i in range(n):
            Mk[i][i] += c
        AM = matmul(G, Mk)
        tr = sum(AM[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs.append(c)
    return coeffs


def _sign_changes(seq):
    signs = [x > 0 for x in seq if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(G):
    """
    (n_plus, n_zero, n_minus) of a symmetric integer matrix.

    Uses Descartes' rule on the characteristic polynomial, which is exact
    because a symmetric matrix has only real eigenvalues.
    """
    if not is_symmetric(G):
        raise NotSymmetric("signature needs a symmetric matrix")
    n = len(G)
    coeffs = charpoly(G)
    n_zero = 0
    while n_zero < n and coeffs[n - n_zero] == 0:
        n_zero += 1
    trimmed = coeffs[: n + 1 - n_zero]
    n_plus = _sign_changes(trimmed)
    deg = len(trimmed) - 1
    n_minus = _sign_changes([c * (-1) ** (deg - i) for i, c in enumerate(trimmed)])
    assert n_plus + n_minus + n_zero == n
    return n_plus, n_zero, n_minus


def smith_normal_form(M):
    """
    Return (D, U, V) with U*M*V = D, U and V unimodular and D diagonal
    with d_1 | d_2 | ... and all d_i >= 0.
    """
    m, n = shape(M)
    A = [list(row) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            cand = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not cand:
                break
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def _row_hnf(A):
    """Row-style HNF; returns only the nonzero rows."""
    A = [list(row) for row in A]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if A[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            for i in range(r + 1, rows):
                if A[i][c]:
                    f = A[i][c] // A[r][c]
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                    done = done and A[i][c] == 0
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            f = A[i][c] // A[r][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return A[:r]


def hermite_normal_form(M, strict=False):
    """
    Column-style HNF of an integer matrix.

    The columns of the result form a basis of the Z-span of the columns
    of M, arranged so that a full-rank square result is upper triangular
    with positive diagonal and each pivot row reduced to [0, pivot) to the
    right of the pivot. With ``strict=True`` dependent columns raise
    RankDeficient instead of being reduced away.
    """
    m, n = shape(M)
    if strict and rank(M) < n:
        raise RankDeficient("columns of the %dx%d input are dependent" % (m, n))
    if m == 0 or n == 0:
        return [[] for _ in range(m)]
    flipped = [list(row) for row in reversed(M)]
    R = _row_hnf(transpose(flipped))
    if not R:
        return [[] for _ in range(m)]
    H = transpose(R)
    H = [list(reversed(row)) for row in reversed(H)]
    return H


def in_column_span(B, v):
    """True if v is an integer combination of the (independent) columns of B."""
    sol = solve_rational(B, v)
    return sol is not None and all(x.denominator == 1 for x in sol)


def solve_rational(B, v):
    """Solve B x = v over Q for x (B with independent columns); None if no solution."""
    m, n = shape(B)
    A = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(B, v)]
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(A[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = A[i][n]
    return x


def lcm(a, b):
    return a * b // gcd(a, b) if a and b else 0


def common_denominator(values):
    d = 1
    for x in values:
        d = lcm(d, Fraction(x).denominator)
    return d


def mod1(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def mod2(x):
    x = Fraction(x)
    return x - 2 * ((x.numerator // x.denominator) // 2)


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s):
    return Fraction(str(s).strip())
