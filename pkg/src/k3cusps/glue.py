"""
Overlattices, gluing and primitive-embedding obstructions.

The embedding test only handles the coprime case: when |A_L| and |A_ambient|
share no prime, the complement of L has discriminant form (-q_L) + q_ambient
and its existence is decided by Nikulin's criterion at odd primes.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import exact
from .errors import BadCharacteristic, BudgetExceeded, NonIntegralResult, NotCoprime, NotIsotropic
from .fqf import (
    FiniteQuadraticForm,
    _prime_factors,
    cyclic_form,
    discriminant_data,
    disc_form,
    fqf_isomorphic,
    orthogonal_sum,
    p_length,
    signature_mod8,
    trivial_form,
)
from .lattice import Lattice, direct_sum, dual_rescaled, genus_equal, rescale, standard_lattice


class Obstruction(str, enum.Enum):
    NONE = "None"
    LENGTH_BOUND = "LengthBound"
    FORM_MISMATCH = "FormMismatch"


@dataclass
class GlueVerdict:
    feasible: bool
    obstruction: Obstruction
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.feasible != (self.obstruction is Obstruction.NONE):
            raise ValueError("feasible must coincide with obstruction None")

    def as_json(self):
        return {"feasible": self.feasible, "obstruction": self.obstruction.value,
                "details": self.details}


def _ok(**details):
    return GlueVerdict(True, Obstruction.NONE, details)


def _fail(kind, **details):
    return GlueVerdict(False, kind, details)


# ------------------------------------------------------------ overlattices


def overlattice_from_vectors(L, vectors, label=None):
    """
    The lattice spanned by L and rational vectors (L-coordinates).

    Returns (lattice, basis) where the columns of ``basis`` are the new basis
    vectors in L-coordinates.  Raises NonIntegralResult if the span is not
    an even integral lattice.
    """
    n = L.rank
    vectors = [[Fraction(x) for x in v] for v in vectors]
    den = exact.common_denominator([x for v in vectors for x in v])
    cols = [[den * int(i == j) for i in range(n)] for j in range(n)]
    cols += [[int(den * x) for x in v] for v in vectors]
    H = exact.hermite_normal_form(exact.transpose(cols))
    basis = [[Fraction(x, den) for x in row] for row in H]
    G = exact.matmul(exact.matmul(exact.transpose(basis), [list(r) for r in L.gram]), basis)
    gram = []
    for i, row in enumerate(G):
        if any(x.denominator != 1 for x in row):
            raise NonIntegralResult("overlattice is not integral")
        if row[i] % 2:
            raise NonIntegralResult("overlattice is not even")
        gram.append([int(x) for x in row])
    return Lattice(gram, label or "%s'" % (L.label or "L")), basis


def overlattice_with_basis(L, H):
    F, lifts = discriminant_data(L)
    for x in sorted(H.elements):
        if F._qint(x) != 0:
            raise NotIsotropic("element %r has q = %s" % (x, F.q_value(x)), element=x)
    vectors = []
    for g in H.generators:
        v = [Fraction(0)] * L.rank
        for c, lift in zip(g, lifts):
            for r in range(L.rank):
                v[r] += c * lift[r]
        vectors.append(v)
    M, basis = overlattice_from_vectors(L, vectors)
    if M.det * H.order ** 2 != L.det:
        raise NonIntegralResult("index check failed for the overlattice")
    return M, basis


def overlattice(L, H):
    """The even overlattice L_H with L_H / L = H for an isotropic H <= A_L."""
    return overlattice_with_basis(L, H)[0]


# ---------------------------------------------------------------- gluing


def glues_to_unimodular(L1, L2):
    """Can L1 + L2 be glued along all of A_L1 = A_L2 to a unimodular lattice?"""
    F1, F2 = disc_form(L1), disc_form(L2)
    ok, images = fqf_isomorphic(F1, F2.negate())
    p1, n1 = L1.signature_pair
    p2, n2 = L2.signature_pair
    if not ok:
        return _fail(Obstruction.FORM_MISMATCH,
                     reason="q_1 is not isomorphic to -q_2",
                     orders=[list(F1.orders), list(F2.orders)])
    details = {"glued_signature": [p1 + p2, n1 + n2],
               "witness": [list(x) for x in images]}
    glued = glue_along(L1, L2, images)
    details["glued_det"] = glued.det
    return _ok(**details)


def glue_along(L1, L2, images):
    """
    Glue L1 + L2 along the graph of x -> images(x), an anti-isometry from
    A_L1 to A_L2 given on generators (as returned by fqf_isomorphic).
    """
    F1, lifts1 = discriminant_data(L1)
    F2, lifts2 = discriminant_data(L2)
    vectors = []
    for lift, img in zip(lifts1, images):
        w = [Fraction(0)] * L2.rank
        for c, l2 in zip(img, lifts2):
            for r in range(L2.rank):
                w[r] += c * l2[r]
        vectors.append(list(lift) + w)
    M, _ = overlattice_from_vectors(direct_sum([L1, L2]), vectors,
                                    label="%s|%s" % (L1.label, L2.label))
    return M


# ---------------------------------------------------- ambient lattices


@dataclass(frozen=True)
class AmbientSpec:
    """An even lattice known only by its rank, signature and discriminant form."""

    rank: int
    signature: tuple
    form: FiniteQuadraticForm
    label: str = ""

    def as_json(self):
        return {"label": self.label, "rank": self.rank, "signature": list(self.signature),
                "form": self.form.as_json()}


def k3_ambient():
    """U^3 + E8(-1)^2: rank 22, signature (3, 19), unimodular."""
    return AmbientSpec(22, (3, 19), trivial_form(), "Lambda_K3")


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _odd_cyclic(p, c):
    """Z/p with b(g, g) = c/p and the matching even-numerator q."""
    q = Fraction(c, p) if c % 2 == 0 else Fraction(c + p, p)
    return cyclic_form(p, q)


def supersingular_ambient(p, sigma):
    """
    The even hyperbolic lattice of rank 22 with A = F_p^(2 sigma); its
    discriminant form is the one of the two classes on F_p^(2 sigma)
    compatible with signature (1, 21).
    """
    if not _is_prime(p) or p == 2:
        raise BadCharacteristic("supersingular ambient needs an odd prime, got %d" % p)
    if not 1 <= sigma <= 10:
        raise ValueError("Artin invariant must lie in 1..10, got %d" % sigma)
    nonsq = next(a for a in range(2, p) if _legendre(a, p) == -1)
    target = (1 - 21) % 8
    for last in (1, nonsq):
        coeffs = [1] * (2 * sigma - 1) + [last]
        sig = sum(signature_mod8(_odd_cyclic(p, c)) for c in coeffs) % 8
        if sig == target:
            form = orthogonal_sum(*(_odd_cyclic(p, c) for c in coeffs))
            return AmbientSpec(22, (1, 21), form, "Lambda_%d,%d" % (p, sigma))
    raise AssertionError("no form on F_p^2sigma matches the signature")


# ---------------------------------------------- existence of even lattices


def _odd_discriminant_class(F, p):
    """Legendre symbol of the unit part of det(b) on the p-primary part."""
    P, _ = F.primary_part(p)
    det = exact.determinant([list(row) for row in P.b])
    num, den = det.numerator, det.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    expected = -sum(1 for d in P.orders for _ in range(_valuation(d, p)))
    if v != expected:
        raise AssertionError("p-adic valuation of det b is %d, expected %d" % (v, expected))
    return _legendre(num * den, p)


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def existence_check(rank, signature, form):
    """
    Nikulin's existence criterion for an even lattice with the given rank,
    signature and discriminant form, at odd primes.

    Returns (obstruction, details) with obstruction an Obstruction value.
    """
    pos, neg = signature
    if pos < 0 or neg < 0 or pos + neg != rank:
        return Obstruction.FORM_MISMATCH, {"reason": "impossible signature", "signature": [pos, neg]}
    for p in _prime_factors(form.order) if form.order > 1 else []:
        length = p_length(form, p)
        if length > rank:
            return Obstruction.LENGTH_BOUND, {"prime": p, "length": length, "rank": rank}
    if signature_mod8(form) != (pos - neg) % 8:
        return Obstruction.FORM_MISMATCH, {"reason": "signature incompatible with the form (Gauss sum)"}
    for p in _prime_factors(form.order) if form.order > 1 else []:
        if p_length(form, p) < rank:
            continue
        if p == 2:
            raise BudgetExceeded("2-adic existence condition at full length is not decided")
        unit = (-1) ** neg * form.order
        while unit % p == 0:
            unit //= p
        lhs = _legendre(unit, p)
        rhs = _odd_discriminant_class(form, p)
        if lhs != rhs:
            return Obstruction.FORM_MISMATCH, {"reason": "p-adic determinant condition fails",
                                               "prime": p}
    return Obstruction.NONE, {}


def embedding_obstruction(L, ambient):
    """
    Decide whether L embeds primitively into a lattice with the invariants
    of ``ambient`` (coprime discriminants only).
    """
    qL = disc_form(L)
    if gcd(qL.order, ambient.form.order) != 1:
        raise NotCoprime("|A_L| = %d and |A_ambient| = %d are not coprime"
                         % (qL.order, ambient.form.order))
    r_perp = ambient.rank - L.rank
    lp, ln = L.signature_pair
    sig_perp = (ambient.signature[0] - lp, ambient.signature[1] - ln)
    base = {"ambient": ambient.label, "complement_rank": r_perp,
            "complement_signature": list(sig_perp)}
    if r_perp < 0 or min(sig_perp) < 0:
        return _fail(Obstruction.FORM_MISMATCH, reason="L does not fit the ambient signature", **base)
    comp = orthogonal_sum(qL.negate(), ambient.form)
    for p in _prime_factors(comp.order) if comp.order > 1 else []:
        length = p_length(comp, p)
        if length > r_perp:
            return _fail(Obstruction.LENGTH_BOUND, prime=p, length=length,
                         reason="length %d of the %d-part exceeds rank %d of the complement"
                         % (length, p, r_perp), **base)
    kind, info = existence_check(r_perp, sig_perp, comp)
    if kind is not Obstruction.NONE:
        return _fail(kind, **info, **base)
    return _ok(complement_form_order=comp.order, **base)


# --------------------------------------------------- characteristic p test


def n_lattice():
    """U(3) + A2(-1): the hyperbolic rank-4 lattice of discriminant -27."""
    return direct_sum([rescale(standard_lattice("U"), 3, "U(3)"), standard_lattice("A2", -1)],
                      label="N")


@lru_cache(maxsize=None)
def _cusp_form():
    from .codes import AFFINE_CODE, code_to_overlattice

    return disc_form(code_to_overlattice(AFFINE_CODE))


def duality_check(N=None):
    """N^v(3) is in the genus of U + A2(-1), and dualizing again returns N's genus."""
    N = N or n_lattice()
    dual = dual_rescaled(N, 3)
    target = direct_sum([standard_lattice("U"), standard_lattice("A2", -1)])
    back = dual_rescaled(dual, 3)
    return {"dual_det": dual.det, "dual_matches_U+A2": genus_equal(dual, target),
            "double_dual_matches_N": genus_equal(back, N)}


def theorem2_pipeline(p, sigma):
    """
    Can the rank-18 cusp lattice embed primitively into the supersingular
    K3 lattice of Artin invariant ``sigma`` in characteristic ``p``?
    """
    if p in (2, 3) or not _is_prime(p):
        raise BadCharacteristic("characteristic must be a prime > 3, got %d" % p)
    if not 1 <= sigma <= 10:
        raise ValueError("Artin invariant must lie in 1..10, got %d" % sigma)
    perp_rank = 22 - 18
    if 2 * sigma > perp_rank:
        return _fail(Obstruction.LENGTH_BOUND, prime=p, length=2 * sigma, rank=perp_rank,
                     reason="A_Lambda = F_p^%d must live on a complement of rank %d"
                     % (2 * sigma, perp_rank))
    if sigma < 2:
        return _ok(reason="no obstruction from the complement for sigma = 1")
    N = n_lattice()
    qL = _cusp_form()
    qN = disc_form(N)
    scaled = qN.scale(p)
    ok, images = fqf_isomorphic(qL, scaled.negate())
    details = {"p_mod_3": p % 3, "N": {"rank": N.rank, "det": N.det},
               "q_L": qL.as_json(), "p*q_N": scaled.as_json()}
    if ok:
        details["witness"] = [list(x) for x in images]
        return _ok(**details)
    details["reason"] = "q_L is not isomorphic to -p*q_N"
    return _fail(Obstruction.FORM_MISMATCH, **details)
