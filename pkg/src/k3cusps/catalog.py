"""
Named lattice table loaded from JSON.

File format: a JSON list of objects {"name": str, "gram": [[int, ...], ...]},
optionally with a "description".  The default table ships with the package;
the K3CUSPS_CATALOG environment variable points at a replacement.
"""

import json
import os
from importlib import resources

from .errors import K3CuspsError, NotSymmetric, UnknownName
from .lattice import Lattice, direct_sum, rescale, standard_lattice

ENV_VAR = "K3CUSPS_CATALOG"


class CatalogError(K3CuspsError):
    """Malformed catalog file; the message carries line/column when known."""


def default_path():
    return os.environ.get(ENV_VAR) or str(resources.files("k3cusps").joinpath("catalog.json"))


def parse_catalog(text, source="<catalog>"):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError("%s: invalid JSON at line %d, column %d: %s"
                           % (source, exc.lineno, exc.colno, exc.msg)) from None
    if not isinstance(data, list):
        raise CatalogError("%s: top level must be a list of entries" % source)
    table = {}
    for i, entry in enumerate(data):
        if not isinstance(entry, dict) or "name" not in entry or "gram" not in entry:
            raise CatalogError("%s: entry %d needs 'name' and 'gram'" % (source, i))
        name = entry["name"]
        if name in table:
            raise CatalogError("%s: duplicate lattice name %r" % (source, name))
        gram = entry["gram"]
        if (not isinstance(gram, list) or not all(isinstance(r, list) for r in gram)
                or any(len(r) != len(gram) for r in gram)
                or not all(isinstance(x, int) and not isinstance(x, bool) for r in gram for x in r)):
            raise CatalogError("%s: entry %r: gram must be a square integer matrix" % (source, name))
        try:
            table[name] = Lattice(gram, name)
        except NotSymmetric:
            raise CatalogError("%s: entry %r: gram is not symmetric" % (source, name)) from None
    return table


def load_catalog(path=None):
    path = path or default_path()
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CatalogError("cannot read catalog %s: %s" % (path, exc.strerror)) from None
    return parse_catalog(text, source=str(path))


def lookup(table, name):
    if name in table:
        return table[name]
    raise UnknownName("no lattice named %r in the catalog" % name)


def default_entries():
    """The shipped table, built from the standard constructors."""
    U = standard_lattice("U")
    U3 = rescale(U, 3, "U(3)")
    A2p, A2m = standard_lattice("A2", 1), standard_lattice("A2", -1)
    E6m, E8m = standard_lattice("E6", -1), standard_lattice("E8", -1)
    A4m, A1m, D5m = (standard_lattice(n, -1) for n in ("A4", "A1", "D5"))
    entries = [
        ("A2+", A2p, "A2 root lattice, positive definite"),
        ("A2-", A2m, "A2 root lattice with diagonal -2"),
        ("E6+", standard_lattice("E6", 1), "E6 root lattice, positive definite"),
        ("E6-", E6m, "E6 root lattice with diagonal -2"),
        ("E8+", standard_lattice("E8", 1), "E8 root lattice, positive definite"),
        ("E8-", E8m, "E8 root lattice with diagonal -2"),
        ("U", U, "hyperbolic plane"),
        ("U(3)", U3, "hyperbolic plane scaled by 3"),
        ("A4-", A4m, "A4 with diagonal -2"),
        ("A1-", A1m, "A1 with diagonal -2"),
        ("D5-", D5m, "D5 with diagonal -2"),
        ("M", direct_sum([U3, A2p]), "U(3) + A2, signature (3,1); q_M = -q_L"),
        ("N", direct_sum([U3, A2m]), "U(3) + A2(-1), signature (1,3); q_N = q_L"),
        ("N0", direct_sum([U, E6m, E6m, A4m, A1m]), "U + 2E6 + A4 + A1, determinant 90"),
        ("LK3", direct_sum([U, U, U, E8m, E8m]), "K3 lattice U^3 + 2E8, unimodular"),
        ("T_X", direct_sum([Lattice([[-30]]), A2p]), "<-30> + A2, rank 3, determinant -90"),
    ]
    return [{"name": n, "gram": [list(r) for r in L.gram], "description": d}
            for n, L, d in entries]


def render_default_catalog():
    rows = []
    for e in default_entries():
        gram = ",\n".join("      " + json.dumps(r) for r in e["gram"])
        rows.append('  {\n    "name": %s,\n    "description": %s,\n    "gram": [\n%s\n    ]\n  }'
                    % (json.dumps(e["name"]), json.dumps(e["description"]), gram))
    return "[\n" + ",\n".join(rows) + "\n]\n"
