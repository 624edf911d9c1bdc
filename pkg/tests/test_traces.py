import cmath
from itertools import combinations, combinations_with_replacement

import pytest

from k3cusps.errors import BadPRank, NonRationalTrace, WrongSize
from k3cusps.traces import (OMEGA, EigenvalueMultiset, Eisenstein, exterior_square,
                            invariant_dimension, lefschetz_number, max_admissible_rho,
                            mumford_filter)

W = cmath.exp(2j * cmath.pi / 3)


def as_complex(z):
    return z.a + z.b * W


def complex_lefschetz(exps):
    """Floating point oracle: the same alternating sum with complex numbers."""
    vals = [W ** k for k in exps]
    t1 = sum(vals)
    t2 = sum(x * y for x, y in combinations(vals, 2))
    return 1 - t1 + t2 - t1 + 1


def test_eisenstein_arithmetic():
    assert OMEGA * OMEGA == Eisenstein(-1, -1)
    assert OMEGA * OMEGA * OMEGA == Eisenstein(1, 0)
    assert 1 + OMEGA + OMEGA * OMEGA == Eisenstein(0, 0)
    z = Eisenstein(3, -2)
    assert abs(as_complex(z * z.conj()) - abs(as_complex(z)) ** 2) < 1e-9
    assert as_complex(z.conj()) == pytest.approx(as_complex(z).conjugate())


@pytest.mark.parametrize("text,expected", [("w,w,w2,w2", 9), ("1,1,1,1", 0), ("1,1,w,w2", 0)])
def test_lefschetz_examples(text, expected):
    assert lefschetz_number(EigenvalueMultiset.parse(text)) == expected


def test_lefschetz_agrees_with_complex_oracle():
    for exps in combinations_with_replacement(range(3), 4):
        e = EigenvalueMultiset(exps)
        exact_value = complex_lefschetz(exps)
        if abs(exact_value.imag) > 1e-9:
            with pytest.raises(NonRationalTrace):
                lefschetz_number(e)
        else:
            assert lefschetz_number(e) == round(exact_value.real)


def test_exterior_square_examples():
    ws = EigenvalueMultiset.parse("w,w,w2,w2")
    assert exterior_square(ws) == EigenvalueMultiset.parse("1,1,1,1,w,w2")
    assert exterior_square(EigenvalueMultiset.parse("1,1,1,1")) == EigenvalueMultiset([0] * 6)
    assert exterior_square(EigenvalueMultiset.parse("1,1,w,w2")) == \
        EigenvalueMultiset.parse("1,1,w,w,w2,w2")


def test_exterior_square_determinant():
    for exps in combinations_with_replacement(range(3), 4):
        e = EigenvalueMultiset(exps)
        assert exterior_square(e).product_exponent() == (3 * e.product_exponent()) % 3


def test_invariant_dimensions():
    ws = EigenvalueMultiset.parse("w,w,w2,w2")
    assert invariant_dimension(exterior_square(ws)) == 4
    assert invariant_dimension(EigenvalueMultiset.parse("1,1,w,w2")) == 2
    assert invariant_dimension(ws) == 0
    for text in ("w,w,w2,w2", "1,1,1,1", "1,1,w,w2"):
        assert invariant_dimension(exterior_square(EigenvalueMultiset.parse(text))) >= 2


def test_wrong_sizes_and_tokens():
    with pytest.raises(WrongSize):
        exterior_square(EigenvalueMultiset.parse("w,w2"))
    with pytest.raises(WrongSize):
        lefschetz_number(EigenvalueMultiset.parse("1,1,1,1,1"))
    with pytest.raises(ValueError):
        EigenvalueMultiset.parse("1,2,3,4")


# ------------------------------------------------------------ mumford table


def test_mumford_rows_for_ordinary():
    rows = mumford_filter(2)
    assert [r["type"] for r in rows] == ["I-i", "I-ii", "II", "III-i", "III-ii", "IV-i", "IV-ii",
                                         "IV-iii"]
    assert [r["rho"] for r in rows] == [1, 2, 3, 1, 2, 1, 4, 2]
    assert {r["type"] for r in rows if not r["admissible"]} == {"III-ii", "IV-ii", "IV-iii"}
    reasons = {r["type"]: r["reason"] for r in rows}
    assert "commutative" in reasons["IV-iii"]
    assert "> 4" in reasons["III-ii"] and "> 4" in reasons["IV-ii"]
    assert max_admissible_rho(rows) == 3


def test_mumford_row_invariants():
    for r in mumford_filter(2):
        assert r["dimD"] == r["e"] * r["d"] ** 2
        num, _, den = r["eta"].partition("/")
        assert int(num) * r["dimD"] == r["rho"] * int(den or 1)
        assert set(r) >= {"type", "e", "e0", "d", "eta", "dimD", "rho", "admissible", "reason"}


def test_mumford_p_rank_one():
    rows = mumford_filter(1)
    assert [r["type"] for r in rows if r["admissible"]] == ["I-i"]
    assert max_admissible_rho(rows) == 1


@pytest.mark.parametrize("bad", [0, 3, -1])
def test_mumford_bad_p_rank(bad):
    with pytest.raises(BadPRank):
        mumford_filter(bad)
