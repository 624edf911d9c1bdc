"""
Ternary codes of length 9 and the overlattices of A2(-1)^9 they define.

Block i of A2(-1)^9 has basis (C_i, C_i') with Gram [[-2, 1], [1, -2]].
A codeword c glues in sum_i c_i d_i with d_i = (C_i + 2 C_i')/3.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import BudgetExceeded, NotDefinite, NotIsotropic, NoWeight9Word
from .glue import overlattice_from_vectors
from .lattice import direct_sum, short_vectors, standard_lattice

LENGTH = 9


def _rref(rows):
    rows = [[x % 3 for x in r] for r in rows]
    out = []
    col = 0
    n = len(rows[0]) if rows else LENGTH
    for col in range(n):
        piv = next((i for i, r in enumerate(rows) if r[col]), None)
        if piv is None:
            continue
        r = rows.pop(piv)
        inv = 1 if r[col] == 1 else 2
        r = [(inv * x) % 3 for x in r]
        rows = [[(x - row[col] * y) % 3 for x, y in zip(row, r)] for row in rows]
        out = [[(x - row[col] * y) % 3 for x, y in zip(row, r)] for row in out]
        out.append(r)
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class TernaryCode:
    """A subspace of F_3^9 stored by its reduced row-echelon generator matrix."""

    generators: tuple

    def __post_init__(self):
        gens = _rref([list(r) for r in self.generators]) if self.generators else ()
        if len(gens) != len(self.generators) or gens != tuple(tuple(r) for r in self.generators):
            raise ValueError("generators must be independent and in RREF; use TernaryCode.span")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def span(cls, rows):
        rows = [list(r) for r in rows]
        if any(len(r) != LENGTH for r in rows):
            raise ValueError("codewords have length %d" % LENGTH)
        return cls(_rref(rows) if rows else ())

    @property
    def dim(self):
        return len(self.generators)

    def words(self):
        for coeffs in itertools.product(range(3), repeat=self.dim):
            w = [0] * LENGTH
            for a, g in zip(coeffs, self.generators):
                if a:
                    w = [(x + a * y) % 3 for x, y in zip(w, g)]
            yield tuple(w)

    def as_json(self):
        return {"dim": self.dim, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data):
        code = cls.span(data["generators"])
        if "dim" in data and data["dim"] != code.dim:
            raise ValueError("declared dim %s but generators span dim %d" % (data["dim"], code.dim))
        return code


def weight(w):
    return sum(1 for x in w if x)


def weight_enumerator(C):
    counts = {}
    for w in C.words():
        k = weight(w)
        counts[k] = counts.get(k, 0) + 1
    return dict(sorted(counts.items()))


AFFINE_CODE = TernaryCode.span([
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 1, 1, 2, 2, 2],
    [0, 1, 2, 0, 1, 2, 0, 1, 2],
])


# ------------------------------------------------------- monomial maps


def apply_monomial(C, witness):
    """witness[j] = (source coordinate, sign in {1, 2}) for target coordinate j."""
    return TernaryCode.span([[s * g[i] % 3 for i, s in witness] for g in C.generators])


def monomial_equivalent(C1, C2):
    """
    True with a witness (see apply_monomial) if C2 is the image of C1 under a
    coordinate permutation combined with per-coordinate sign changes.
    """
    if C1.dim != C2.dim:
        return False, None
    if weight_enumerator(C1) != weight_enumerator(C2):
        return False, None
    W1 = list(C1.words())
    W2 = list(C2.words())
    targets = [{w[: j + 1] for w in W2} for j in range(LENGTH)]
    chosen = []
    used = [False] * LENGTH

    def rec(j):
        if j == LENGTH:
            return True
        for i in range(LENGTH):
            if used[i]:
                continue
            for s in (1, 2):
                proj = {tuple(s2 * w[i2] % 3 for i2, s2 in chosen) + (s * w[i] % 3,) for w in W1}
                if proj != targets[j]:
                    continue
                used[i] = True
                chosen.append((i, s))
                if rec(j + 1):
                    return True
                chosen.pop()
                used[i] = False
        return False

    if rec(0):
        return True, list(chosen)
    return False, None


# ------------------------------------------------------------- search


def _candidate_words(allowed):
    """Nonzero words with allowed weight, normalized so the first nonzero entry is 1."""
    out = []
    for w in itertools.product(range(3), repeat=LENGTH):
        if weight(w) in allowed and next(x for x in w if x) == 1:
            out.append(w)
    return out


def _combos_ok(span, w, allowed):
    # span: list of words (including 0) of the current code
    for s in span:
        for a in (1, 2):
            if weight(tuple((x + a * y) % 3 for x, y in zip(s, w))) not in allowed:
                return False
    return True


def _extend(span, w):
    return span + [tuple((x + a * y) % 3 for x, y in zip(s, w)) for a in (1, 2) for s in span]


def _second_generators(w):
    """
    Representatives for a second generator modulo the stabilizer of the line
    through 1^w 0^(9-w): permutations inside the two blocks, sign changes on
    the zero block, a global sign, and adding multiples of the first word.
    """
    reps = []
    for n0 in range(w + 1):
        for n1 in range(w - n0 + 1):
            n2 = w - n0 - n1
            if not n0 >= n1 >= n2:
                continue
            head = [0] * n0 + [1] * n1 + [2] * n2
            for a in range(LENGTH - w + 1):
                word = tuple(head + [1] * a + [0] * (LENGTH - w - a))
                if any(word):
                    reps.append(word)
    return reps


def _stratum(args):
    """All codes containing the word 1^w 0^(9-w) whose maximal weight is w."""
    k, allowed, w, node_budget = args
    allowed = frozenset(allowed)
    first = tuple([1] * w + [0] * (LENGTH - w))
    cands = [c for c in _candidate_words(allowed) if weight(c) <= w]
    found = set()
    nodes = [0]

    def rec(span, gens, start):
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise BudgetExceeded("code search visited more than %d nodes" % node_budget)
        if len(gens) == k:
            found.add(_rref(gens))
            return
        for idx in range(start, len(cands)):
            c = cands[idx]
            if c not in span and _combos_ok(span, c, allowed):
                rec(_extend(span, c), gens + [list(c)], idx + 1)

    if weight(first) not in allowed:
        return []
    span = [(0,) * LENGTH, first, tuple(2 * x % 3 for x in first)]
    if k == 1:
        return [_rref([list(first)])]
    for c in _second_generators(w):
        if c not in span and weight(c) <= w and _combos_ok(span, c, allowed):
            rec(_extend(span, c), [list(first), list(c)], 0)
    return sorted(found)


def _class_key(C):
    we = weight_enumerator(C)
    # per coordinate: weights of the words that are nonzero there
    words = list(C.words())
    prof = sorted(tuple(sorted(weight(w) for w in words if w[i])) for i in range(LENGTH))
    return tuple(we.items()), tuple(prof)


def search_codes(k, allowed_weights, workers=1, node_budget=5_000_000):
    """
    Representatives of the monomial classes of k-dimensional codes in F_3^9
    all of whose nonzero words have weight in ``allowed_weights``.
    """
    if not 0 <= k <= 4:
        raise ValueError("search limited to dimension <= 4")
    allowed = frozenset(int(x) for x in allowed_weights)
    if k == 0:
        return [TernaryCode(())]
    strata = sorted((w for w in allowed if 1 <= w <= LENGTH), reverse=True)
    jobs = [(k, tuple(sorted(allowed)), w, node_budget) for w in strata]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_stratum, jobs))
    else:
        results = [_stratum(j) for j in jobs]
    codes = []
    for w, found in zip(strata, results):
        for gens in found:
            C = TernaryCode(gens)
            if max(weight_enumerator(C)) == w:
                codes.append(C)
    reps = []
    buckets = {}
    for C in sorted(codes, key=lambda c: c.generators):
        key = _class_key(C)
        bucket = buckets.setdefault(key, [])
        if any(monomial_equivalent(R, C)[0] for R in bucket):
            continue
        bucket.append(C)
        reps.append(C)
    reps.sort(key=lambda c: (tuple(weight_enumerator(c).items()), c.generators))
    return reps


# ---------------------------------------------------- lattice bridge


def a2_nine():
    return direct_sum([standard_lattice("A2", -1)] * LENGTH, label="A2(-1)^9")


def glue_vector(word):
    """sum_i c_i d_i in the curve basis (C_1, C_1', ..., C_9, C_9')."""
    v = []
    for c in word:
        v += [Fraction(c, 3), Fraction(2 * c, 3)]
    return v


def glue_norm(word):
    return sum(Fraction(-2, 3) * c * c for c in word)


def code_overlattice_with_basis(C):
    for w in C.words():
        if weight(w) % 3:
            raise NotIsotropic("word %r has weight %d, not divisible by 3" % (w, weight(w)),
                               element=w)
    base = a2_nine()
    M, basis = overlattice_from_vectors(base, [glue_vector(g) for g in C.generators],
                                        label="L_C" if C.dim else "A2(-1)^9")
    return M, basis


def code_to_overlattice(C):
    return code_overlattice_with_basis(C)[0]


def a2_sublattice_basis(C):
    """Basis of A2(-1)^9 in the coordinates of code_to_overlattice(C) (columns)."""
    _, basis = code_overlattice_with_basis(C)
    inv = exact.inverse(basis)
    return [[int(x) for x in row] for row in inv]


def verify_no_extra_roots(L, sublattice_basis):
    """
    (root pairs, pairs outside the sublattice) for a negative definite L;
    ``sublattice_basis`` has the sublattice basis as columns in L-coordinates.
    """
    if L.definiteness() != -1:
        raise NotDefinite("verify_no_extra_roots needs a negative definite lattice")
    roots = [v for v, nv in short_vectors(L, 2) if nv == -2]
    outside = sum(1 for v in roots if not exact.in_column_span(sublattice_basis, v))
    return len(roots), outside


# ---------------------------------------------------- triple cover class


@dataclass(frozen=True)
class GlueClass:
    word: tuple
    swapped: tuple
    coords: tuple
    norm: Fraction

    def as_json(self):
        return {"word": list(self.word), "swapped": list(self.swapped),
                "coords": [exact.format_rational(x) for x in self.coords],
                "norm": exact.format_rational(self.norm)}


def triple_cover_class(C):
    """
    The class (1/3) sum_i (C_i + 2 C_i') attached to a weight-9 word.

    Cusps where the word has entry 2 get their two curves relabeled, so the
    word becomes all-ones; coordinates refer to the relabeled curve basis.
    """
    nine = sorted(w for w in C.words() if weight(w) == LENGTH)
    if not nine:
        raise NoWeight9Word("code has no word of weight 9")
    ones = tuple([1] * LENGTH)
    word = ones if ones in nine else nine[0]
    swapped = tuple(i for i, c in enumerate(word) if c == 2)
    coords = tuple(glue_vector(ones))
    return GlueClass(word, swapped, coords, glue_norm(ones))


def curve_pairings(v):
    """(v.C_i, v.C_i') for each cusp, in the A2(-1)^9 curve basis."""
    G = a2_nine().gram
    out = []
    for i in range(LENGTH):
        eC = [0] * (2 * LENGTH)
        eC[2 * i] = 1
        eCp = [0] * (2 * LENGTH)
        eCp[2 * i + 1] = 1
        out.append((exact.bilinear(G, v, eC), exact.bilinear(G, v, eCp)))
    return out
