from fractions import Fraction

import pytest

from k3cusps import exact
from k3cusps.elliptic import (FAMILY_X, FAMILY_Y, KNOWN_SECTIONS, Fiber, FiberConfiguration,
                              SectionData, local_contribution, ns_overlattice_scan,
                              section_height, shioda_tate_disc, trivial_lattice)
from k3cusps.errors import BudgetExceeded, InvalidComponent
from k3cusps.lattice import Lattice, direct_sum, rescale, standard_lattice


def test_trivial_lattice_family_x():
    T, euler = trivial_lattice(FAMILY_X)
    assert euler == 24
    expected = direct_sum([standard_lattice("U"), standard_lattice("E6", -1),
                           standard_lattice("E6", -1), standard_lattice("A4", -1),
                           standard_lattice("A1", -1)])
    assert T.gram == expected.gram
    assert T.rank == 19 and T.signature_pair == (1, 18)
    # -1 * 3 * 3 * 5 * (-2)
    assert T.det == 90


def test_trivial_lattice_family_y():
    T, euler = trivial_lattice(FAMILY_Y)
    assert euler == 24
    assert T.rank == 19 and T.det == -1 * 3 * 3 * -4


def test_empty_configuration():
    T, euler = trivial_lattice(FiberConfiguration(()))
    assert euler == 0 and T.gram == ((0, 1), (1, 0))


@pytest.mark.parametrize("text,euler,rank", [("I0", 0, 0), ("I1", 1, 0), ("I7", 7, 6),
                                             ("I0*", 6, 4), ("I3*", 9, 7), ("II", 2, 0),
                                             ("III", 3, 1), ("IV", 4, 2), ("IV*", 8, 6),
                                             ("III*", 9, 7), ("II*", 10, 8)])
def test_fiber_euler_and_rank(text, euler, rank):
    f = Fiber.parse(text)
    assert f.euler == euler
    R = f.root_lattice()
    assert (R.rank if R else 0) == rank
    assert Fiber.from_json(f.as_json()) == f


def test_fiber_parse_errors():
    with pytest.raises(ValueError):
        Fiber.parse("V")
    with pytest.raises(ValueError):
        Fiber("I", -1)


# ------------------------------------------------------------ contributions


def test_local_contribution_table():
    assert local_contribution(Fiber.parse("IV*"), 1) == Fraction(4, 3)
    assert local_contribution(Fiber.parse("I5"), 2) == Fraction(6, 5)
    assert local_contribution(Fiber.parse("I2"), 1) == Fraction(1, 2)
    assert local_contribution(Fiber.parse("I1*"), 1) == 1
    assert local_contribution(Fiber.parse("I1*"), 2) == Fraction(5, 4)
    assert local_contribution(Fiber.parse("III*"), 1) == Fraction(3, 2)
    assert local_contribution(Fiber.parse("IV"), 2) == Fraction(2, 3)
    for t in ("II", "II*", "I1", "I0", "IV*", "I5"):
        assert local_contribution(Fiber.parse(t), 0) == 0


@pytest.mark.parametrize("n", range(2, 9))
def test_cyclic_symmetry(n):
    f = Fiber("I", n)
    for i in range(1, n):
        assert local_contribution(f, i) == local_contribution(f, n - i)


def test_contribution_is_minus_inverse_cartan_entry():
    """The I_n contributions are the diagonal of -A_{n-1}(-1)^{-1}, an independent source."""
    for n in range(2, 7):
        inv = exact.inverse(standard_lattice("A%d" % (n - 1), -1).gram)
        for i in range(1, n):
            assert local_contribution(Fiber("I", n), i) == -inv[i - 1][i - 1]


@pytest.mark.parametrize("text,comp", [("II", 1), ("IV*", 3), ("I5", 5), ("I2*", 4), ("III", 2)])
def test_invalid_components(text, comp):
    with pytest.raises(InvalidComponent):
        local_contribution(Fiber.parse(text), comp)


# ---------------------------------------------------------------- heights


def test_known_section_heights():
    expected = [Fraction(29, 30), Fraction(61, 30), Fraction(5, 6), Fraction(17, 12)]
    for (name, section, value), want in zip(KNOWN_SECTIONS, expected):
        config = FAMILY_Y if name == "Y" else FAMILY_X
        h = section_height(config, section)
        assert h.value == value == want
        assert 0 < h.value < 4 + 2 * section.p_o
        assert not h.nonpositive


def test_nonpositive_height_is_flagged():
    config = FiberConfiguration.parse("IV*,IV*,IV*")
    h = section_height(config, SectionData(0, (1, 1, 1)))
    assert h.value == 0 and h.nonpositive


def test_section_component_count_must_match():
    with pytest.raises(InvalidComponent):
        section_height(FAMILY_X, SectionData(0, (1, 0)))


def test_section_json_round_trip():
    s = SectionData(1, (1, 1, 1, 1, 0))
    assert SectionData.from_json(s.as_json()) == s
    with pytest.raises(ValueError):
        SectionData(-1)


# ------------------------------------------------------------ shioda-tate


@pytest.mark.parametrize("height,disc", [(Fraction(29, 30), -87), (Fraction(61, 30), -183),
                                         (Fraction(5, 6), -75)])
def test_shioda_tate_family_x(height, disc):
    assert shioda_tate_disc(FAMILY_X, [[height]]) == disc


def test_shioda_tate_family_y_and_trivial():
    assert shioda_tate_disc(FAMILY_Y, [[Fraction(17, 12)]]) == -51
    assert shioda_tate_disc(FAMILY_X, []) == 90
    assert shioda_tate_disc(FAMILY_X, [[Fraction(29, 30)]], torsion_order=1) == -87


def test_shioda_tate_matches_explicit_lattice():
    """Two I2 fibers and a section P meeting both non-identity components.

    Intersection matrix on (O, F, C1, C2, P): O.O = P.P = -2, O.F = P.F = 1,
    C_i.C_i = -2, P.C_i = 1, P.O = 0; its determinant is computed directly.
    """
    G = [[-2, 1, 0, 0, 0],
         [1, 0, 0, 0, 1],
         [0, 0, -2, 0, 1],
         [0, 0, 0, -2, 1],
         [0, 1, 1, 1, -2]]
    config = FiberConfiguration.parse("I2,I2")
    h = section_height(config, SectionData(0, (1, 1))).value
    assert h == 3
    assert shioda_tate_disc(config, [[h]]) == Lattice(G).det == 12


# ------------------------------------------------------------ overlattices


def test_scan_examples():
    N0, _ = trivial_lattice(FAMILY_X)
    scan = ns_overlattice_scan(N0)
    assert scan["nonzero_isotropic_count"] == 0
    assert not scan["proper_even_overlattice_exists"]
    u3 = ns_overlattice_scan(rescale(standard_lattice("U"), 3))
    assert u3["nonzero_isotropic_count"] == 4 and u3["proper_even_overlattice_exists"]
    assert ns_overlattice_scan(standard_lattice("U"))["nonzero_isotropic_count"] == 0


def test_scan_budget():
    with pytest.raises(BudgetExceeded):
        ns_overlattice_scan(Lattice([[2 * 10 ** 4 + 2]]))
