"""
Even integral lattices given by Gram matrices.

Root lattices come in two signs: ``sign=-1`` gives diagonal -2, the
convention for (-2)-curves inside a Neron-Severi lattice.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import exact
from .errors import BudgetExceeded, NotDefinite, NotIntegral, NotSymmetric, UnknownName

ISOMETRY_RANK_BUDGET = 6


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    label: str = ""

    def __post_init__(self):
        gram = exact.to_tuple(self.gram)
        object.__setattr__(self, "gram", gram)
        if not exact.is_symmetric(gram):
            raise NotSymmetric("gram matrix of %r is not symmetric" % (self.label or "lattice"))
        if any(not isinstance(x, int) for row in gram for x in row):
            raise NotIntegral("gram entries must be integers")

    @property
    def rank(self):
        return len(self.gram)

    @property
    def det(self):
        return exact.determinant(self.gram)

    @property
    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def signature_pair(self):
        pos, _, neg = exact.signature(self.gram)
        return pos, neg

    def is_nondegenerate(self):
        return self.det != 0

    def definiteness(self):
        """+1 positive definite, -1 negative definite, 0 otherwise."""
        pos, zero, neg = exact.signature(self.gram)
        if zero == 0 and neg == 0:
            return 1
        if zero == 0 and pos == 0:
            return -1
        return 0

    def norm(self, v):
        return exact.bilinear(self.gram, v, v)

    def inner(self, u, v):
        return exact.bilinear(self.gram, u, v)

    def __repr__(self):
        return "Lattice(%s, rank=%d)" % (self.label or "?", self.rank)


# ---------------------------------------------------------------- catalog


def _cartan(n, edges):
    G = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        G[i][j] = G[j][i] = -1
    return G


def _a(n):
    return _cartan(n, [(i, i + 1) for i in range(n - 1)])


def _d(n):
    if n < 4:
        raise UnknownName("D_n needs n >= 4, got %d" % n)
    return _cartan(n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)])


def _e(n):
    if n not in (6, 7, 8):
        raise UnknownName("E_%d is not a root lattice" % n)
    # Bourbaki labels 1-3-4-5-..., node 2 hanging off node 4
    chain = [0, 2, 3] + list(range(4, n))
    edges = list(zip(chain, chain[1:])) + [(1, 3)]
    return _cartan(n, edges)


_NAME_RE = re.compile(r"^([ADE])_?(\d+)$")
_RANK1_RE = re.compile(r"^<\s*(-?\d+)\s*>$")


def standard_lattice(name, sign=1):
    """
    Standard Gram matrices: A_n, D_n, E6/E7/E8, U, <n>.

    ``sign`` only affects the root lattices; U and <n> ignore it.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    name = name.strip()
    if name == "U":
        return Lattice([[0, 1], [1, 0]], "U")
    m = _RANK1_RE.match(name)
    if m:
        n = int(m.group(1))
        if n == 0:
            raise UnknownName("<0> is degenerate")
        return Lattice([[n]], "<%d>" % n)
    m = _NAME_RE.match(name)
    if not m:
        raise UnknownName("unknown lattice name %r" % name)
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise UnknownName("rank must be positive in %r" % name)
    G = {"A": _a, "D": _d, "E": _e}[kind](n)
    G = [[sign * x for x in row] for row in G]
    label = "%s%d(%+d)" % (kind, n, sign)
    return Lattice(G, label)


def direct_sum(lattices, label=None):
    lattices = list(lattices)
    gram = exact.block_diagonal([L.gram for L in lattices])
    if label is None:
        label = "+".join(L.label or "?" for L in lattices)
    return Lattice(gram, label)


def rescale(L, n, label=None):
    if n == 0:
        raise ValueError("cannot rescale by 0")
    gram = [[n * x for x in row] for row in L.gram]
    return Lattice(gram, label or "%s(%d)" % (L.label, n))


def scale_down(L, p, label=None):
    """L(1/p); every Gram entry must be divisible by p."""
    if any(x % p for row in L.gram for x in row):
        raise NotIntegral("%s is not %d-divisible" % (L.label, p))
    gram = [[x // p for x in row] for row in L.gram]
    return Lattice(gram, label or "%s(1/%d)" % (L.label, p))


def dual_rescaled(L, n, label=None):
    """L^v(n): Gram n * gram^-1, which has to be integral."""
    if n <= 0:
        raise ValueError("n must be positive")
    inv = exact.inverse(L.gram)
    gram = []
    for row in inv:
        out = []
        for x in row:
            y = n * x
            if y.denominator != 1:
                raise NotIntegral("%d * gram^-1 of %s is not integral" % (n, L.label))
            out.append(int(y))
        gram.append(out)
    return Lattice(gram, label or "%s^v(%d)" % (L.label, n))


@dataclass(frozen=True)
class Invariants:
    rank: int
    signature: tuple
    det: int
    is_even: bool

    def as_dict(self):
        return {"rank": self.rank, "signature": list(self.signature),
                "det": self.det, "is_even": self.is_even}


def invariants(L):
    return Invariants(L.rank, L.signature_pair, L.det, L.is_even)


# ---------------------------------------------------------- short vectors


def _ldl(G):
    """Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2 for positive definite G."""
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i]
        for j in range(i + 1, n):
            mu[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                A[j][k] -= mu[i][j] * A[i][k]
                A[k][j] = A[j][k]
    return d, mu


def _enumerate(G, bound):
    """All nonzero x with x^T G x <= bound, G positive definite (Fincke-Pohst)."""
    n = len(G)
    d, mu = _ldl(G)
    x = [0] * n
    out = []

    def rec(i, remaining):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r = remaining / d[i]
        s = isqrt(r.numerator // r.denominator) + 1
        lo = -c - s
        hi = -c + s
        lo = lo.numerator // lo.denominator
        hi = -((-hi.numerator) // hi.denominator)
        for xi in range(lo, hi + 1):
            t = d[i] * (xi + c) ** 2
            if t <= remaining:
                x[i] = xi
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def canonical_sign(v):
    for a in v:
        if a:
            return tuple(v) if a > 0 else tuple(-b for b in v)
    return tuple(v)


def short_vectors(L, bound):
    """
    Nonzero vectors with |v.v| <= bound in a definite lattice.

    One representative per +-pair (first nonzero coordinate positive),
    sorted lexicographically; returns a list of (vector, norm).
    """
    sgn = L.definiteness()
    if sgn == 0:
        raise NotDefinite("%s is not definite" % (L.label or "lattice"))
    G = L.gram if sgn > 0 else [[-x for x in row] for row in L.gram]
    vecs = {canonical_sign(v) for v in _enumerate(G, bound)}
    return [(v, L.norm(v)) for v in sorted(vecs)]


# ---------------------------------------------------------- isometry tests


def isometric_definite(L1, L2):
    """
    Backtracking isometry test for small definite lattices.

    Returns (True, images) where images[i] is the L2-coordinate image of
    the i-th basis vector of L1, or (False, None).
    """
    if max(L1.rank, L2.rank) > ISOMETRY_RANK_BUDGET:
        raise BudgetExceeded("isometric_definite limited to rank <= %d" % ISOMETRY_RANK_BUDGET)
    if L1.rank != L2.rank:
        return False, None
    s1, s2 = L1.definiteness(), L2.definiteness()
    if s1 == 0 or s2 == 0:
        raise NotDefinite("isometric_definite needs definite lattices")
    if s1 != s2 or abs(L1.det) != abs(L2.det):
        return False, None
    n = L1.rank
    if n == 0:
        return True, []
    G1 = L1.gram
    bound = max(abs(G1[i][i]) for i in range(n))
    pool = []
    for v, nv in short_vectors(L2, bound):
        pool.append((v, nv))
        pool.append((tuple(-a for a in v), nv))
    by_norm = {}
    for v, nv in pool:
        by_norm.setdefault(nv, []).append(v)
    images = []

    def rec(i):
        if i == n:
            return abs(exact.determinant(images)) == 1
        for v in by_norm.get(G1[i][i], []):
            if all(L2.inner(images[j], v) == G1[j][i] for j in range(i)):
                images.append(v)
                if rec(i + 1):
                    return True
                images.pop()
        return False

    if rec(0):
        return True, [list(v) for v in images]
    return False, None


def genus_equal(L1, L2):
    """Same rank, signature and discriminant form (even nondegenerate lattices)."""
    from .fqf import disc_form, fqf_isomorphic

    if L1.rank != L2.rank or L1.signature_pair != L2.signature_pair:
        return False
    if abs(L1.det) != abs(L2.det):
        return False
    ok, _ = fqf_isomorphic(disc_form(L1), disc_form(L2))
    return ok
