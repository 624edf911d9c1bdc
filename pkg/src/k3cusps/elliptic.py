"""
Elliptic K3 surfaces: trivial lattices, section heights, Shioda-Tate.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact
from .errors import BudgetExceeded, InvalidComponent
from .lattice import direct_sum, standard_lattice

K3_EULER = 24
SCAN_DET_BUDGET = 10 ** 4

_STAR_TYPES = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}
_TYPE_RE = re.compile(r"^I_?(\d+)(\*?)$")


@dataclass(frozen=True)
class Fiber:
    """A singular fiber: ``kind`` is one of I, I*, II, III, IV, IV*, III*, II*."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind in ("I", "I*"):
            if self.n < 0:
                raise ValueError("%s_n needs n >= 0" % self.kind)
        elif self.kind in _STAR_TYPES:
            object.__setattr__(self, "n", 0)
        else:
            raise ValueError("unknown Kodaira type %r" % self.kind)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in _STAR_TYPES:
            return cls(text)
        m = _TYPE_RE.match(text)
        if not m:
            raise ValueError("cannot parse fiber type %r" % text)
        return cls("I*" if m.group(2) else "I", int(m.group(1)))

    @classmethod
    def from_json(cls, data):
        kind = data["type"]
        if kind in ("I", "I*"):
            return cls(kind, int(data["n"]))
        return cls.parse(kind)

    def as_json(self):
        if self.kind in ("I", "I*"):
            return {"type": self.kind, "n": self.n}
        return {"type": self.kind}

    @property
    def name(self):
        if self.kind == "I":
            return "I%d" % self.n
        if self.kind == "I*":
            return "I%d*" % self.n
        return self.kind

    @property
    def euler(self):
        if self.kind == "I":
            return self.n
        if self.kind == "I*":
            return self.n + 6
        return _STAR_TYPES[self.kind]

    def root_lattice(self):
        """Negative definite lattice of the non-identity components, or None."""
        if self.kind == "I":
            return standard_lattice("A%d" % (self.n - 1), -1) if self.n >= 2 else None
        if self.kind == "I*":
            return standard_lattice("D%d" % (self.n + 4), -1)
        name = {"II": None, "III": "A1", "IV": "A2", "IV*": "E6", "III*": "E7", "II*": "E8"}
        return standard_lattice(name[self.kind], -1) if name[self.kind] else None

    def simple_components(self):
        """Indices of the simple (multiplicity one) components; 0 is the identity."""
        if self.kind == "I":
            return range(max(self.n, 1))
        if self.kind == "I*":
            return range(4)
        return range({"II": 1, "III": 2, "IV": 3, "IV*": 3, "III*": 2, "II*": 1}[self.kind])


@dataclass(frozen=True)
class FiberConfiguration:
    fibers: tuple

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Fiber.from_json(f) for f in data["fibers"]))

    @classmethod
    def parse(cls, text):
        return cls(tuple(Fiber.parse(t) for t in text.split(",") if t.strip()))

    def as_json(self):
        return {"fibers": [f.as_json() for f in self.fibers]}

    @property
    def euler(self):
        return sum(f.euler for f in self.fibers)


@dataclass(frozen=True)
class SectionData:
    p_o: int
    components: tuple = field(default=())

    def __post_init__(self):
        if self.p_o < 0:
            raise ValueError("P.O must be nonnegative")
        object.__setattr__(self, "components", tuple(int(c) for c in self.components))

    @classmethod
    def from_json(cls, data):
        return cls(int(data["p_o"]), tuple(data.get("components", ())))

    def as_json(self):
        return {"p_o": self.p_o, "components": list(self.components)}


def trivial_lattice(config):
    parts = [standard_lattice("U")]
    parts += [R for R in (f.root_lattice() for f in config.fibers) if R is not None]
    label = "+".join(p.label for p in parts)
    return direct_sum(parts, label=label), config.euler


def local_contribution(fiber, component):
    """Correction term of a section meeting ``component`` of ``fiber``."""
    if component not in fiber.simple_components():
        raise InvalidComponent("%s has no simple component %r" % (fiber.name, component))
    if component == 0:
        return Fraction(0)
    kind, n = fiber.kind, fiber.n
    if kind == "I":
        return Fraction(component * (n - component), n)
    if kind == "I*":
        return Fraction(1) if component == 1 else 1 + Fraction(n, 4)
    return {"III": Fraction(1, 2), "IV": Fraction(2, 3),
            "IV*": Fraction(4, 3), "III*": Fraction(3, 2)}[kind]


@dataclass(frozen=True)
class Height:
    value: Fraction
    nonpositive: bool


def section_height(config, section, chi=2):
    """h(P) = 2 chi + 2 P.O - sum of local contributions (chi = 2 for K3)."""
    comps = section.components or (0,) * len(config.fibers)
    if len(comps) != len(config.fibers):
        raise InvalidComponent("section lists %d components for %d fibers"
                               % (len(comps), len(config.fibers)))
    h = 2 * chi + 2 * section.p_o - sum((local_contribution(f, c)
                                         for f, c in zip(config.fibers, comps)), Fraction(0))
    return Height(h, h <= 0)


def shioda_tate_disc(config, heights, torsion_order=1):
    """
    Signed determinant of NS from the trivial lattice and the height Gram
    matrix of Mordell-Weil generators.

    Heights are positive while the corresponding NS directions are negative,
    hence the factor (-1)^r for r generators.
    """
    if torsion_order < 1:
        raise ValueError("torsion order must be positive")
    T, _ = trivial_lattice(config)
    r = len(heights)
    hdet = exact.determinant([[Fraction(x) for x in row] for row in heights]) if r else Fraction(1)
    return Fraction(T.det) * (-1) ** r * hdet / torsion_order ** 2


def ns_overlattice_scan(L):
    from .fqf import disc_form, isotropic_elements

    if abs(L.det) > SCAN_DET_BUDGET:
        raise BudgetExceeded("|det| = %d exceeds scan budget %d" % (abs(L.det), SCAN_DET_BUDGET))
    F = disc_form(L)
    count = sum(1 for x in isotropic_elements(F) if any(x))
    return {"nonzero_isotropic_count": count, "proper_even_overlattice_exists": count > 0,
            "det": L.det, "group_order": F.order}


# The configurations and sections used for the two explicit families.
FAMILY_X = FiberConfiguration.parse("IV*,IV*,I5,I2,I1")
FAMILY_Y = FiberConfiguration.parse("IV*,IV*,I1*,I1")

KNOWN_SECTIONS = (
    ("X", SectionData(0, (1, 0, 2, 1, 0)), Fraction(29, 30)),
    ("X'", SectionData(1, (1, 1, 1, 1, 0)), Fraction(61, 30)),
    ("X, second family", SectionData(0, (1, 1, 0, 1, 0)), Fraction(5, 6)),
    ("Y", SectionData(0, (1, 0, 2, 0)), Fraction(17, 12)),
)
