"""
Finite quadratic forms (discriminant forms of even lattices).

A form lives on a direct sum of cyclic groups Z/d_i, with q valued in Q/2Z
and b valued in Q/Z.  Elements are integer tuples reduced mod the orders.
"""

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from . import exact
from .errors import BudgetExceeded, Degenerate, NotASubgroup, NotEven

ORDER_BUDGET = 3 ** 10
GAUSS_BUDGET = 10 ** 6


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _element_order(x, orders):
    o = 1
    for xi, d in zip(x, orders):
        o = exact.lcm(o, d // math.gcd(d, xi % d))
    return o


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple
    q: tuple
    b: tuple
    _den: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        k = len(self.orders)
        orders = tuple(int(d) for d in self.orders)
        if any(d <= 1 for d in orders):
            raise ValueError("generator orders must exceed 1")
        q = tuple(exact.mod2(x) for x in self.q)
        b = tuple(tuple(exact.mod1(x) for x in row) for row in self.b)
        if len(q) != k or len(b) != k or any(len(row) != k for row in b):
            raise ValueError("inconsistent form data")
        for i in range(k):
            if exact.mod1(q[i] - b[i][i]) != 0:
                raise ValueError("q(g%d) and b(g%d,g%d) disagree mod Z" % (i, i, i))
            if exact.mod2(orders[i] ** 2 * q[i]) != 0:
                raise ValueError("q(d*g%d) must vanish" % i)
            for j in range(k):
                if b[i][j] != b[j][i]:
                    raise ValueError("b is not symmetric")
                if exact.mod1(orders[i] * b[i][j]) != 0:
                    raise ValueError("b(g%d, g%d) incompatible with order %d" % (i, j, orders[i]))
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "b", b)
        den = exact.common_denominator(list(q) + [x for row in b for x in row])
        object.__setattr__(self, "_den", den)
        # integer numerators over the common denominator, for fast evaluation
        object.__setattr__(self, "_qn", tuple(int(den * x) for x in q))
        object.__setattr__(self, "_bn", tuple(tuple(int(den * x) for x in row) for row in b))
        if not self._nondegenerate():
            raise Degenerate("finite quadratic form is degenerate")

    # ------------------------------------------------------------ basics

    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        return reduce(lambda a, c: a * c, self.orders, 1)

    def _nondegenerate(self):
        k = self.rank
        if k == 0:
            return True
        N = exact.common_denominator([x for row in self.b for x in row])
        cols = [[int(N * self.b[i][j]) for i in range(k)] for j in range(k)]
        cols += [[N * int(i == j) for i in range(k)] for j in range(k)]
        H = exact.hermite_normal_form(exact.transpose(cols))
        h = abs(exact.determinant(H))
        return N ** k // h == self.order

    def reduce(self, x):
        return tuple(xi % d for xi, d in zip(x, self.orders))

    def add(self, x, y):
        return tuple((a + c) % d for a, c, d in zip(x, y, self.orders))

    def scalar(self, n, x):
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def zero(self):
        return (0,) * self.rank

    def _qint(self, x):
        qn, bn = self._qn, self._bn
        s = 0
        for i, xi in enumerate(x):
            if xi:
                s += xi * xi * qn[i]
                row = bn[i]
                for j in range(i + 1, self.rank):
                    if x[j]:
                        s += 2 * xi * x[j] * row[j]
        return s % (2 * self._den)

    def _bint(self, x, y):
        bn = self._bn
        s = 0
        for i, xi in enumerate(x):
            if xi:
                row = bn[i]
                for j, yj in enumerate(y):
                    if yj:
                        s += xi * yj * row[j]
        return s % self._den

    def q_value(self, x):
        return Fraction(self._qint(x), self._den)

    def b_value(self, x, y):
        return Fraction(self._bint(x, y), self._den)

    def element_order(self, x):
        return _element_order(x, self.orders)

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    # --------------------------------------------------------- derived forms

    def negate(self):
        return FiniteQuadraticForm(self.orders, [-x for x in self.q],
                                   [[-x for x in row] for row in self.b])

    def scale(self, n):
        """The form n*q (values multiplied by n)."""
        return FiniteQuadraticForm(self.orders, [n * x for x in self.q],
                                   [[n * x for x in row] for row in self.b])

    def primary_part(self, p):
        """
        The p-primary part as a form, plus its embedding: the j-th new
        generator is ``mult[j]`` times old generator ``index[j]``.
        """
        index, mult, orders = [], [], []
        for i, d in enumerate(self.orders):
            if d % p == 0:
                pa = 1
                while d % (pa * p) == 0:
                    pa *= p
                index.append(i)
                mult.append(d // pa)
                orders.append(pa)
        q = [mult[a] ** 2 * self.q[index[a]] for a in range(len(index))]
        b = [[mult[a] * mult[c] * self.b[index[a]][index[c]] for c in range(len(index))]
             for a in range(len(index))]
        return FiniteQuadraticForm(orders, q, b), list(zip(index, mult))

    def embed(self, embedding, y):
        """Map an element of a primary part back into this form's coordinates."""
        x = [0] * self.rank
        for (i, m), yj in zip(embedding, y):
            x[i] += m * yj
        return self.reduce(x)

    def as_json(self):
        return {"orders": list(self.orders),
                "q": [exact.format_rational(x) for x in self.q],
                "b": [[exact.format_rational(x) for x in row] for row in self.b]}

    @classmethod
    def from_json(cls, data):
        return cls(data["orders"], [Fraction(x) for x in data["q"]],
                   [[Fraction(x) for x in row] for row in data["b"]])


def trivial_form():
    return FiniteQuadraticForm((), (), ())


def orthogonal_sum(*forms):
    orders, q = [], []
    n = sum(F.rank for F in forms)
    b = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for F in forms:
        orders += F.orders
        q += F.q
        for i in range(F.rank):
            for j in range(F.rank):
                b[off + i][off + j] = F.b[i][j]
        off += F.rank
    return FiniteQuadraticForm(orders, q, b)


def cyclic_form(d, q):
    """Z/d with q(g) = q; b(g,g) = q mod 1."""
    q = Fraction(q)
    return FiniteQuadraticForm((d,), (q,), ((q,),))


def negate(F):
    return F.negate()


def p_length(F, p):
    return sum(1 for d in F.orders if d % p == 0)


# ---------------------------------------------------- from a lattice


def discriminant_data(L):
    """
    (form, lifts): the discriminant form of an even nondegenerate lattice and,
    for each generator, a lift to L^v in L-coordinates (a Fraction vector).
    """
    if not L.is_even:
        raise NotEven("%s is not even" % (L.label or "lattice"))
    if L.rank and L.det == 0:
        raise Degenerate("%s is degenerate" % (L.label or "lattice"))
    if L.rank == 0:
        return trivial_form(), []
    D, U, V = exact.smith_normal_form(L.gram)
    lifts, orders = [], []
    n = L.rank
    for i in range(n):
        d = D[i][i]
        if d > 1:
            lifts.append([Fraction(V[r][i], d) for r in range(n)])
            orders.append(d)
    G = L.gram
    q = [exact.bilinear(G, x, x) for x in lifts]
    b = [[exact.bilinear(G, x, y) for y in lifts] for x in lifts]
    return FiniteQuadraticForm(orders, q, b), lifts


def disc_form(L):
    return discriminant_data(L)[0]


# ------------------------------------------------------------- subgroups


def _span(F, gens):
    elems = {F.zero()}
    for g in gens:
        if g in elems:
            continue
        o = F.element_order(g)
        multiples = [F.scalar(k, g) for k in range(o)]
        elems = {F.add(s, m) for s in elems for m in multiples}
    return frozenset(elems)


def _greedy_generators(F, elements):
    gens = []
    span = {F.zero()}
    for x in sorted(elements):
        if x not in span:
            gens.append(x)
            span = set(_span(F, gens))
    return tuple(gens)


@dataclass(frozen=True)
class Subgroup:
    orders: tuple
    generators: tuple
    elements: frozenset

    @property
    def order(self):
        return len(self.elements)

    def sort_key(self):
        return (self.order, tuple(sorted(self.elements)))

    def as_json(self):
        return {"order": self.order, "generators": [list(g) for g in self.generators]}


def subgroup(F, gens):
    """The subgroup of F generated by ``gens``."""
    gens = [F.reduce(g) for g in gens]
    for g in gens:
        if len(g) != F.rank:
            raise NotASubgroup("generator %r has the wrong length" % (g,))
    if F.order > ORDER_BUDGET:
        raise BudgetExceeded("group order %d exceeds budget" % F.order)
    elems = _span(F, gens)
    return Subgroup(F.orders, _greedy_generators(F, elems), elems)


def invariant_generators(orders, gens):
    """
    Invariant-factor generators of the subgroup of (+) Z/d_i spanned by gens,
    returned as a list of (vector, order) with orders forming a divisor chain.
    """
    k = len(orders)
    if k == 0:
        return []
    cols = [list(g) for g in gens] + [[d * int(i == j) for i in range(k)] for j, d in enumerate(orders)]
    B = exact.hermite_normal_form(exact.transpose(cols))
    Binv = exact.inverse(B)
    M = [[int(sum(Binv[i][t] * (orders[t] if t == j else 0) for t in range(k))) for j in range(k)]
         for i in range(k)]
    E, U, _ = exact.smith_normal_form(M)
    Uinv = [[int(x) for x in row] for row in exact.inverse(U)]
    out = []
    for i in range(k):
        e = E[i][i]
        if e > 1:
            y = [Uinv[r][i] for r in range(k)]
            v = exact.matvec(B, y)
            out.append((tuple(v[r] % orders[r] for r in range(k)), e))
    return out


def restrict(F, S):
    """The form F restricted to the subgroup S, in invariant-factor coordinates."""
    if tuple(S.orders) != F.orders:
        raise NotASubgroup("subgroup belongs to a different group")
    if not all(F.reduce(g) == tuple(g) for g in S.generators):
        raise NotASubgroup("generators are not reduced elements")
    return _form_on(F, S.generators)


def _form_on(F, gens):
    gens = invariant_generators(F.orders, gens)
    vecs = [v for v, _ in gens]
    q = [F.q_value(v) for v in vecs]
    b = [[F.b_value(v, w) for w in vecs] for v in vecs]
    return FiniteQuadraticForm([e for _, e in gens], q, b)


def normalized(F):
    """An isomorphic form whose orders form a divisor chain."""
    return _form_on(F, [tuple(int(i == j) for j in range(F.rank)) for i in range(F.rank)])


def isotropic_elements(F):
    if F.order > GAUSS_BUDGET:
        raise BudgetExceeded("group order %d exceeds budget" % F.order)
    return [x for x in F.elements() if any(x) and F._qint(x) == 0]


def enumerate_isotropic_subgroups(F, order_filter=None, max_subgroups=200000):
    """
    All subgroups on which q vanishes identically (hence b too), canonically
    ordered by (order, sorted elements). ``order_filter`` is an int or a
    collection of admissible orders.
    """
    if F.order > ORDER_BUDGET:
        raise BudgetExceeded("group order %d exceeds 3^10" % F.order)
    iso = isotropic_elements(F)
    start = frozenset([F.zero()])
    seen = {start}
    frontier = [(start, ())]
    while frontier:
        nxt = []
        for elems, gens in frontier:
            for x in iso:
                if x in elems or any(F._bint(x, g) for g in gens):
                    continue
                new = _span(F, list(gens) + [x])
                if new not in seen:
                    seen.add(new)
                    if len(seen) > max_subgroups:
                        raise BudgetExceeded("more than %d isotropic subgroups" % max_subgroups)
                    nxt.append((new, gens + (x,)))
        frontier = nxt
    if order_filter is not None:
        allowed = {order_filter} if isinstance(order_filter, int) else set(order_filter)
        seen = [s for s in seen if len(s) in allowed]
    out = [Subgroup(F.orders, _greedy_generators(F, s), s) for s in seen]
    out.sort(key=Subgroup.sort_key)
    return out


def is_isotropic(F, S):
    return all(F._qint(x) == 0 for x in S.elements)


# ------------------------------------------------------------ isomorphism


def _profile(F):
    counts = {}
    for x in F.elements():
        key = (F.element_order(x), F.q_value(x))
        counts[key] = counts.get(key, 0) + 1
    return counts


def _primary_isomorphism(P1, P2):
    """Generator images of an isometry P1 -> P2 (both p-groups), or None."""
    if sorted(P1.orders) != sorted(P2.orders):
        return None
    if P1.order > ORDER_BUDGET:
        raise BudgetExceeded("primary part of order %d exceeds 3^10" % P1.order)
    if _profile(P1) != _profile(P2):
        return None
    k = P1.rank
    cand = []
    for i in range(k):
        o = P1.orders[i]
        qi = P1.q[i]
        cand.append([y for y in P2.elements() if P2.element_order(y) == o and P2.q_value(y) == qi])
    images = []
    span = [frozenset([P2.zero()])]

    def rec(i):
        if i == k:
            return True
        o = P1.orders[i]
        cur = span[-1]
        for y in cand[i]:
            if any(P2.b_value(images[j], y) != P1.b[j][i] for j in range(i)):
                continue
            multiples = [P2.scalar(t, y) for t in range(o)]
            if any(m in cur for m in multiples[1:]):
                continue
            images.append(y)
            span.append(frozenset(P2.add(s, m) for s in cur for m in multiples))
            if rec(i + 1):
                return True
            images.pop()
            span.pop()
        return False

    return list(images) if rec(0) else None


def fqf_isomorphic(F1, F2):
    """
    Decide whether F1 and F2 are isometric.  Returns (True, images) where
    images[i] is the image of the i-th generator of F1 in F2-coordinates,
    or (False, None).
    """
    if F1.order != F2.order:
        return False, None
    if F1.order == 1:
        return True, []
    per_prime = {}
    for p in _prime_factors(F1.order):
        P1, emb1 = F1.primary_part(p)
        P2, emb2 = F2.primary_part(p)
        if P1.order != P2.order:
            return False, None
        imgs = _primary_isomorphism(P1, P2)
        if imgs is None:
            return False, None
        per_prime[p] = (emb1, [F2.embed(emb2, y) for y in imgs])
    images = []
    for i, d in enumerate(F1.orders):
        x = F2.zero()
        for p, (emb1, imgs) in per_prime.items():
            for j, (idx, m) in enumerate(emb1):
                if idx == i:
                    pa = d // m
                    u = pow(m, -1, pa)
                    x = F2.add(x, F2.scalar(u, imgs[j]))
        images.append(x)
    for i in range(F1.rank):
        assert F2.q_value(images[i]) == F1.q[i]
        for j in range(F1.rank):
            assert F2.b_value(images[i], images[j]) == F1.b[i][j]
    return True, images


# ------------------------------------------------------------ Gauss sums


def signature_mod8(F):
    """
    The signature mod 8 of any even lattice with discriminant form F, read
    off from the Gauss sum sum_x exp(pi i q(x)) = sqrt|A| exp(2 pi i s/8).
    """
    total = 0
    for p in _prime_factors(F.order) if F.order > 1 else []:
        P, _ = F.primary_part(p)
        if P.order > GAUSS_BUDGET:
            raise BudgetExceeded("Gauss sum over %d elements" % P.order)
        z = sum(cmath.exp(1j * math.pi * float(P.q_value(x))) for x in P.elements())
        r = abs(z)
        if abs(r * r - P.order) > 1e-6 * P.order:
            raise Degenerate("Gauss sum has the wrong modulus")
        eighths = cmath.phase(z) / (math.pi / 4)
        k = round(eighths)
        if abs(eighths - k) > 1e-6:
            raise Degenerate("Gauss sum phase is not a multiple of pi/4")
        total += k
    return total % 8
