"""
The nine end-to-end checks behind ``k3cusps reproduce all``.

Each check returns a CheckResult; ``passed`` requires both the mathematical
assertion and the wall-clock limit.
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import exact
from .codes import TernaryCode, code_overlattice_with_basis, search_codes, verify_no_extra_roots
from .elliptic import (FAMILY_X, FAMILY_Y, KNOWN_SECTIONS, ns_overlattice_scan,
                       section_height, shioda_tate_disc, trivial_lattice)
from .fqf import disc_form, enumerate_isotropic_subgroups, fqf_isomorphic
from .glue import Obstruction, embedding_obstruction, overlattice, supersingular_ambient, theorem2_pipeline
from .lattice import (canonical_sign, direct_sum, dual_rescaled, genus_equal, isometric_definite, rescale,
                      short_vectors, standard_lattice)
from .traces import (EigenvalueMultiset, exterior_square, invariant_dimension, lefschetz_number,
                     max_admissible_rho, mumford_filter)


@dataclass
class CheckResult:
    number: int
    name: str
    anchor: str
    ok: bool
    limit_s: int
    elapsed_s: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.ok and self.elapsed_s <= self.limit_s

    def as_json(self, timing=True):
        return {"number": self.number, "name": self.name, "anchor": self.anchor,
                "passed": self.passed, "math_ok": self.ok, "limit_s": self.limit_s,
                "elapsed_ms": int(self.elapsed_s * 1000) if timing else 0, "detail": self.detail}


def _m_lattice():
    return direct_sum([rescale(standard_lattice("U"), 3, "U(3)"), standard_lattice("A2", 1)],
                      label="M")


# ------------------------------------------------------------ the checks


def check_code_search():
    codes = search_codes(3, {6, 9})
    qM = disc_form(_m_lattice())
    per_code = []
    for C in codes:
        L, basis = code_overlattice_with_basis(C)
        sub = exact.inverse(basis)
        roots, outside = verify_no_extra_roots(L, [[int(x) for x in r] for r in sub])
        iso, _ = fqf_isomorphic(disc_form(L), qM.negate())
        per_code.append({"generators": [list(g) for g in C.generators], "det": L.det,
                         "root_pairs": roots, "outside": outside, "q_L=-q_M": iso})
    ok = bool(codes) and all(abs(c["det"]) == 27 and c["root_pairs"] == 27 and c["outside"] == 0
                             and c["q_L=-q_M"] for c in per_code)
    return ok, {"classes": len(codes), "codes": per_code}


def check_weight3_exclusion():
    C = TernaryCode.span([[1, 1, 1, 0, 0, 0, 0, 0, 0]])
    L, basis = code_overlattice_with_basis(C)
    sub = [[int(x) for x in r] for r in exact.inverse(basis)]
    roots, outside = verify_no_extra_roots(L, sub)
    return outside >= 1, {"word": [1, 1, 1, 0, 0, 0, 0, 0, 0], "root_pairs": roots,
                          "outside": outside}


def _primes(lo, hi):
    return [p for p in range(lo, hi + 1) if p > 1 and all(p % d for d in range(2, isqrt(p) + 1))]


def check_supersingular():
    rows, ok = [], True
    for p in _primes(5, 97):
        v = theorem2_pipeline(p, 2)
        good = v.feasible == (p % 3 == 2)
        ok &= good
        rows.append({"p": p, "feasible": v.feasible, "obstruction": v.obstruction.value})
        for sigma in (3, 4, 5):
            w = theorem2_pipeline(p, sigma)
            ok &= (not w.feasible) and w.obstruction is Obstruction.LENGTH_BOUND
    return ok, {"sigma2": rows, "sigma3to5": "LengthBound" if ok else "mismatch"}


def check_duality():
    U, A2 = standard_lattice("U"), standard_lattice("A2", 1)
    N = direct_sum([rescale(U, 3, "U(3)"), A2])
    g = genus_equal(dual_rescaled(N, 3), direct_sum([U, A2]))
    iso, images = isometric_definite(dual_rescaled(A2, 3), A2)
    return g and iso, {"genus_equal": g, "isometric": iso, "isometry": images}


def check_lefschetz():
    e = EigenvalueMultiset.parse("w,w,w2,w2")
    h2 = exterior_square(e)
    got = {"fixed_points": lefschetz_number(e),
           "trivial": lefschetz_number(EigenvalueMultiset.parse("1,1,1,1")),
           "h2": h2.as_json(), "h2_invariants": invariant_dimension(h2)}
    ok = (got["fixed_points"] == 9 and got["trivial"] == 0
          and h2 == EigenvalueMultiset.parse("1,1,1,1,w,w2") and got["h2_invariants"] == 4)
    return ok, got


def check_mumford():
    rows = mumford_filter(2)
    rho = [r["rho"] for r in rows]
    excluded = sorted(r["type"] for r in rows if not r["admissible"])
    best = max_admissible_rho(rows)
    ok = rho == [1, 2, 3, 1, 2, 1, 4, 2] and excluded == ["III-ii", "IV-ii", "IV-iii"] and best == 3
    return ok, {"rho": rho, "excluded": excluded, "max_rho": best}


def check_heights():
    heights = []
    ok = True
    for name, section, expected in KNOWN_SECTIONS:
        config = FAMILY_Y if name == "Y" else FAMILY_X
        h = section_height(config, section).value
        ok &= h == expected
        heights.append({"surface": name, "height": h,
                        "disc": shioda_tate_disc(config, [[h]])})
    discs = [d["disc"] for d in heights]
    ok &= discs[0] == -87 and discs[1] == -183
    eulers = [trivial_lattice(c)[1] for c in (FAMILY_X, FAMILY_Y)]
    ok &= eulers == [24, 24]
    return ok, {"sections": heights, "euler": eulers}


def check_n0():
    N0, _ = trivial_lattice(FAMILY_X)
    scan = ns_overlattice_scan(N0)
    emb = {p: embedding_obstruction(N0, supersingular_ambient(p, 2)).obstruction.value
           for p in (7, 13)}
    ok = (abs(N0.det) == 90 and scan["nonzero_isotropic_count"] == 0
          and not scan["proper_even_overlattice_exists"]
          and all(v == "LengthBound" for v in emb.values()))
    return ok, {"det": N0.det, "scan": scan, "embedding": {str(p): v for p, v in emb.items()}}


# ------------------------------------------------------------- oracles


def box_search(L, bound):
    """
    Brute-force short vectors: |x_i| <= sqrt(bound * (G^-1)_ii) holds for
    every x with |x.x| <= bound in a definite lattice.
    """
    G = L.gram
    sgn = L.definiteness()
    inv = exact.inverse(G)
    box = []
    for i in range(L.rank):
        r = abs(Fraction(bound) * inv[i][i])
        box.append(isqrt(r.numerator // r.denominator) + 1)
    found = set()

    def rec(i, x):
        if i == L.rank:
            if any(x):
                n = L.norm(x)
                if sgn * n <= bound:
                    found.add(canonical_sign(x))
            return
        for a in range(-box[i], box[i] + 1):
            rec(i + 1, x + [a])

    rec(0, [])
    return sorted(found)


def corpus_forms():
    names = [("A2", 1), ("A2", -1), ("A1", -1), ("A4", -1), ("D5", -1), ("E6", -1)]
    lats = [standard_lattice(n, s) for n, s in names]
    U3 = rescale(standard_lattice("U"), 3, "U(3)")
    lats += [U3, _m_lattice()]
    return [(L.label, disc_form(L)) for L in lats]


def random_glue_instances(count=50, seed=20240917):
    rng = random.Random(seed)
    U3 = rescale(standard_lattice("U"), 3, "U(3)")
    cache = {}
    out = []
    for _ in range(count):
        k = rng.randint(1, 3)
        if k not in cache:
            L = direct_sum([U3] * k, label="U(3)^%d" % k)
            cache[k] = (L, enumerate_isotropic_subgroups(disc_form(L)))
        L, subs = cache[k]
        H = rng.choice(subs)
        M = overlattice(L, H)
        out.append({"k": k, "order": H.order, "det_L": L.det, "det_M": M.det,
                    "ok": M.det * H.order ** 2 == L.det and M.is_even})
    return out


def check_oracles(catalog=None):
    if catalog is None:
        from .catalog import load_catalog
        catalog = load_catalog()
    sv = {}
    ok = True
    for name, L in sorted(catalog.items()):
        if L.rank > 4 or L.definiteness() == 0:
            continue
        fast = [v for v, _ in short_vectors(L, 4)]
        slow = box_search(L, 4)
        sv[name] = len(fast)
        ok &= fast == slow
    forms = corpus_forms()
    n = len(forms)
    iso = [[fqf_isomorphic(forms[i][1], forms[j][1])[0] for j in range(n)] for i in range(n)]
    refl = all(iso[i][i] for i in range(n))
    symm = all(iso[i][j] == iso[j][i] for i in range(n) for j in range(n))
    trans = all(not (iso[i][j] and iso[j][k]) or iso[i][k]
                for i in range(n) for j in range(n) for k in range(n))
    glue = random_glue_instances()
    glue_ok = all(g["ok"] for g in glue)
    ok &= refl and symm and trans and glue_ok and len(sv) > 0
    return ok, {"short_vectors": sv, "fqf_corpus": [f[0] for f in forms],
                "reflexive": refl, "symmetric": symm, "transitive": trans,
                "glue_instances": len(glue), "glue_ok": glue_ok}


# ------------------------------------------------------------- driver

CHECKS = (
    (1, "code-search", "q_L = -q_M, index 27", 300, check_code_search),
    (2, "weight-3-exclusion", "a weight-3 word yields a vector of square -2", 60,
     check_weight3_exclusion),
    (3, "supersingular-obstruction", "sigma = 2 and p = -1 mod 3; sigma <= 2", 1, check_supersingular),
    (4, "duality-chain", "N^v(3) = U + A2, A2^v(3) = A2", 1, check_duality),
    (5, "lefschetz", "the number of fixed points is equal to 9", 1, check_lefschetz),
    (6, "mumford-filter", "(III-ii), (IV-ii), (IV-iii) cannot occur; rho(A) <= 3", 1,
     check_mumford),
    (7, "heights", "heights 29/30, 61/30, 5/6, 17/12; discriminants -87, -183", 1,
     check_heights),
    (8, "N0-rigidity", "d(N0) = 90, no non-zero isotropic elements, 2 sigma <= 3", 1, check_n0),
    (9, "oracles", "short vectors, fqf isomorphism and overlattice index oracles", 120,
     check_oracles),
)


def run_check(number):
    for num, name, anchor, limit, fn in CHECKS:
        if num == number:
            t0 = time.perf_counter()
            ok, detail = fn()
            return CheckResult(num, name, anchor, bool(ok), limit, time.perf_counter() - t0, detail)
    raise ValueError("no check numbered %r" % number)


def run_all(numbers=None):
    numbers = numbers or [c[0] for c in CHECKS]
    return [run_check(n) for n in numbers]


def summary_table(results, timing=True):
    lines = []
    for r in results:
        ms = "%7d ms" % int(r.elapsed_s * 1000) if timing else ""
        lines.append("%s  %d  %-26s %s  \"%s\"" % ("PASS" if r.passed else "FAIL", r.number,
                                                 r.name, ms, r.anchor))
    passed = sum(r.passed for r in results)
    total = len(results)
    lines.append(("PASS %d/%d" if passed == total else "FAIL %d/%d") % (passed, total))
    return "\n".join(lines)
