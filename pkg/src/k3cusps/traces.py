"""
Order-3 automorphisms: traces over Z[w] and the endomorphism-type filter.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BadPRank, NonRationalTrace, WrongSize


@dataclass(frozen=True)
class Eisenstein:
    """a + b*w with w^2 + w + 1 = 0."""

    a: int = 0
    b: int = 0

    def __add__(self, other):
        other = _eis(other)
        return Eisenstein(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Eisenstein(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_eis(other))

    def __rsub__(self, other):
        return _eis(other) - self

    def __mul__(self, other):
        other = _eis(other)
        # b*d*w^2 = b*d*(-1 - w)
        a, b, c, d = self.a, self.b, other.a, other.b
        return Eisenstein(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def conj(self):
        # w -> w^2 = -1 - w
        return Eisenstein(self.a - self.b, -self.b)

    def is_rational(self):
        return self.b == 0

    def __repr__(self):
        return "Eisenstein(%d%+dw)" % (self.a, self.b)


def _eis(x):
    return x if isinstance(x, Eisenstein) else Eisenstein(int(x), 0)


OMEGA = Eisenstein(0, 1)
_POWERS = (Eisenstein(1, 0), OMEGA, OMEGA * OMEGA)
_TOKENS = {"1": 0, "w": 1, "w1": 1, "w2": 2, "ww": 2}


class EigenvalueMultiset:
    """Multiset of cube roots of unity w^k, stored by exponent k in {0, 1, 2}."""

    def __init__(self, exponents):
        exps = [int(k) % 3 for k in exponents]
        self.counts = Counter({k: exps.count(k) for k in range(3)})

    @classmethod
    def parse(cls, text):
        toks = [t.strip().lower() for t in text.replace(" ", "").split(",") if t.strip()]
        try:
            return cls(_TOKENS[t] for t in toks)
        except KeyError as exc:
            raise ValueError("eigenvalue tokens are 1, w, w2; got %s" % exc) from None

    def __len__(self):
        return sum(self.counts.values())

    def exponents(self):
        return [k for k in range(3) for _ in range(self.counts[k])]

    def trace(self):
        t = Eisenstein()
        for k in range(3):
            t = t + self.counts[k] * _POWERS[k]
        return t

    def product_exponent(self):
        return sum(self.exponents()) % 3

    def __eq__(self, other):
        return isinstance(other, EigenvalueMultiset) and self.counts == other.counts

    def __repr__(self):
        names = ["1", "w", "w2"]
        return "{%s}" % ",".join(names[k] for k in self.exponents())

    def as_json(self):
        names = ["1", "w", "w2"]
        return [names[k] for k in self.exponents()]


def exterior_square(eigs):
    if len(eigs) != 4:
        raise WrongSize("exterior_square expects 4 eigenvalues, got %d" % len(eigs))
    return EigenvalueMultiset(i + j for i, j in combinations(eigs.exponents(), 2))


def lefschetz_number(h1):
    """
    Fixed points of an order-3 automorphism of an abelian surface:
    1 - tr H^1 + tr H^2 - tr H^3 + 1 with H^2 = wedge^2 H^1 and H^3 ~ H^1.
    """
    if len(h1) != 4:
        raise WrongSize("H^1 of an abelian surface has dimension 4, got %d" % len(h1))
    t1 = h1.trace()
    t2 = exterior_square(h1).trace()
    total = 1 - t1 + t2 - t1 + 1
    if not total.is_rational():
        raise NonRationalTrace("alternating trace %r is not a rational integer" % (total,))
    return total.a


def invariant_dimension(eigs):
    return eigs.counts[0]


# ---------------------------------------------------- endomorphism types


@dataclass(frozen=True)
class EndoTypeRow:
    label: str
    e: int
    e0: int
    d: int
    eta: Fraction
    dimD: int
    rho: int
    char_condition: str

    def __post_init__(self):
        if self.dimD != self.e * self.d ** 2:
            raise ValueError("%s: dim D must be e*d^2" % self.label)
        if self.eta * self.dimD != self.rho:
            raise ValueError("%s: rho must equal eta * dim D" % self.label)

    @property
    def commutative(self):
        return self.d == 1


_CHAR_CONDITION = {"I": "e | 2", "II": "2e | 2", "III": "e | 2", "IV": "e0 d | 2"}

ENDO_TABLE = tuple(
    EndoTypeRow(label, e, e0, d, Fraction(eta), e * d * d, int(Fraction(eta) * e * d * d),
                _CHAR_CONDITION[label.split("-")[0]])
    for label, e, e0, d, eta in [
        ("I-i", 1, 1, 1, "1"),
        ("I-ii", 2, 2, 1, "1"),
        ("II", 1, 1, 2, "3/4"),
        ("III-i", 1, 1, 2, "1/4"),
        ("III-ii", 2, 2, 2, "1/4"),
        ("IV-i", 2, 1, 1, "1/2"),
        ("IV-ii", 2, 1, 2, "1/2"),
        ("IV-iii", 4, 2, 1, "1/2"),
    ]
)


def mumford_filter(p_rank):
    """
    Annotate each endomorphism type of a simple abelian surface with whether
    it survives for the given p-rank.

    D (x) Q_p injects into End(T_p (x) Q_p), of dimension p_rank^2.  When the
    dimensions agree the map is onto, so a commutative D cannot match the
    non-commutative matrix algebra once p_rank >= 2.
    """
    if p_rank not in (1, 2):
        raise BadPRank("p-rank of a simple abelian surface is 1 or 2, got %r" % (p_rank,))
    bound = p_rank ** 2
    rows = []
    for row in ENDO_TABLE:
        if row.dimD > bound:
            ok, reason = False, "dim D (x) Q_p = %d > %d = dim End(T_p)" % (row.dimD, bound)
        elif row.dimD == bound and row.commutative and p_rank >= 2:
            ok, reason = False, "D (x) Q_p commutative but End(T_p) (x) Q_p is not"
        else:
            ok, reason = True, ""
        rows.append({"type": row.label, "e": row.e, "e0": row.e0, "d": row.d,
                     "eta": "%d/%d" % (row.eta.numerator, row.eta.denominator)
                     if row.eta.denominator != 1 else str(row.eta.numerator),
                     "dimD": row.dimD, "rho": row.rho, "char_condition": row.char_condition,
                     "admissible": ok, "reason": reason})
    return rows


def max_admissible_rho(rows):
    return max(r["rho"] for r in rows if r["admissible"])
