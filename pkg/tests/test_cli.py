import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from k3cusps.catalog import CatalogError, default_entries, load_catalog, parse_catalog
from k3cusps.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    rc = main(list(argv), stdout=out, stderr=err)
    return rc, out.getvalue(), err.getvalue()


def call_json(*argv):
    rc, out, err = call(*argv, "--no-timing")
    assert rc == 0, err
    return json.loads(out)


# ------------------------------------------------------------ examples


def test_glue_p7_reports_form_mismatch():
    rep = call_json("glue", "theorem2", "--p", "7", "--sigma", "2")
    assert rep["result"]["obstruction"] == "FormMismatch"
    assert rep["result"]["feasible"] is False


def test_glue_p5_is_feasible_and_exits_zero():
    rep = call_json("glue", "theorem2", "--p", "5", "--sigma", "2")
    assert rep["result"]["feasible"] is True


def test_lefschetz_nine():
    rep = call_json("trace", "lefschetz", "--eigs", "w,w,w2,w2")
    assert rep["result"]["fixed_points"] == 9


def test_ns_disc_minus_87():
    rep = call_json("ns", "disc", str(DATA / "fibers_x.json"), "--height", "29/30")
    assert rep["result"]["disc"] == "-87"


@pytest.mark.parametrize("fibers,section,height", [
    ("fibers_x.json", "section_29_30.json", "29/30"),
    ("fibers_x.json", "section_61_30.json", "61/30"),
    ("fibers_x.json", "section_5_6.json", "5/6"),
    ("fibers_y.json", "section_17_12.json", "17/12"),
])
def test_ns_height_files(fibers, section, height):
    rep = call_json("ns", "height", str(DATA / fibers), str(DATA / section))
    assert rep["result"]["height"] == height


def test_code_commands():
    rep = call_json("code", "search", "--dim", "2", "--weights", "6,9")
    assert rep["command"] == "code search"
    rep = call_json("code", "to-lattice", str(DATA / "affine_code.json"))
    assert rep["command"] == "code to-lattice"
    assert "27" in json.dumps(rep["result"])


def test_lattice_and_fqf_commands():
    rep = call_json("lattice", "invariants", "N0")
    assert rep["result"]["det"] == 90
    rep = call_json("fqf", "show", "A2+")
    assert rep["command"] == "fqf show"
    rep = call_json("ns", "scan", "N0")
    assert rep["result"]["nonzero_isotropic_count"] == 0


def test_mumford_command():
    rep = call_json("trace", "mumford", "--p-rank", "2")
    assert rep["command"] == "trace mumford"
    assert "3" in json.dumps(rep["result"])


def test_glue_embed_command():
    rep = call_json("glue", "embed", "N0", "--ambient", "22,1:21,ss:7:2")
    assert rep["result"]["obstruction"] == "LengthBound"


def test_global_options_after_subcommand():
    a = call("trace", "lefschetz", "--eigs", "w,w,w2,w2", "--no-timing")
    b = call("--no-timing", "trace", "lefschetz", "--eigs", "w,w,w2,w2")
    assert a == b and a[0] == 0


# ------------------------------------------------------------ errors


def test_malformed_json_reports_line_and_column(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"fibers": [\n  {"type": "I", "n": 5,}\n]}')
    rc, _, err = call("ns", "disc", str(bad), "--height", "1")
    assert rc == 2
    assert "line 2" in err and "column" in err


def test_bad_inputs_exit_two(tmp_path):
    assert call("trace", "lefschetz", "--eigs", "1,2,3,4")[0] == 2
    assert call("trace", "mumford", "--p-rank", "3")[0] == 2
    assert call("glue", "theorem2", "--p", "3", "--sigma", "2")[0] == 2
    assert call("lattice", "invariants", "no-such-lattice")[0] == 2
    assert call("ns", "disc", str(tmp_path / "missing.json"), "--height", "1")[0] == 2
    assert call("ns", "disc", str(DATA / "fibers_x.json"), "--height", "abc")[0] == 2


def test_argparse_errors_exit_two():
    assert call("trace")[0] == 2
    assert call("glue", "theorem2", "--p", "seven", "--sigma", "2")[0] == 2


def test_nonsymmetric_catalog_rejected(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps([{"name": "bad", "gram": [[2, 1], [0, 2]]}]))
    with pytest.raises(CatalogError):
        load_catalog(str(path))
    rc, _, err = call("--catalog", str(path), "lattice", "invariants", "A2")
    assert rc == 2 and "symmetric" in err


def test_duplicate_name_rejected():
    text = json.dumps([{"name": "X", "gram": [[2]]}, {"name": "X", "gram": [[4]]}])
    with pytest.raises(CatalogError, match="duplicate"):
        parse_catalog(text, "inline")


def test_catalog_parse_error_has_position():
    with pytest.raises(CatalogError, match="line 1, column"):
        parse_catalog('[{"name": "X" "gram": [[2]]}]', "inline")


def test_default_catalog_contents():
    cat = load_catalog()
    names = {"A2+", "A2-", "E6+", "E6-", "E8+", "E8-", "U", "U(3)", "A4-", "A1-", "D5-",
             "M", "N", "N0"}
    assert len(cat) >= 11
    assert names <= set(cat)
    assert len(default_entries()) == len(cat)


def test_env_var_overrides_catalog(tmp_path, monkeypatch):
    path = tmp_path / "mine.json"
    path.write_text(json.dumps([{"name": "Six", "description": "<6>", "gram": [[6]]}]))
    monkeypatch.setenv("K3CUSPS_CATALOG", str(path))
    rep = call_json("lattice", "invariants", "Six")
    assert rep["result"]["det"] == 6
    assert call("lattice", "invariants", "N0")[0] == 2


# ------------------------------------------------------------ rendering


def test_json_round_trip_and_determinism():
    argv = ("glue", "theorem2", "--p", "11", "--sigma", "2", "--no-timing")
    rc1, a, _ = call(*argv)
    rc2, b, _ = call(*argv)
    assert rc1 == rc2 == 0
    assert a == b
    data = json.loads(a)
    assert json.dumps(data, sort_keys=True, indent=2) + "\n" == a


def test_text_mode_has_elapsed_and_quoted_anchor():
    rc, out, _ = call("trace", "lefschetz", "--eigs", "w,w,w2,w2", "--format", "text")
    assert rc == 0
    assert "elapsed_ms:" in out
    assert 'anchor: "' in out


def test_no_floats_in_reports():
    out = call("ns", "height", str(DATA / "fibers_x.json"), str(DATA / "section_61_30.json"),
               "--no-timing")[1]
    assert "61/30" in out and "2.03" not in out


def test_reproduce_text_ends_with_pass():
    rc, out, _ = call("reproduce", "all", "--format", "text", "--no-timing")
    assert rc == 0
    assert out.strip().splitlines()[-1].endswith("PASS 9/9")


def test_reproduce_only_subset():
    rep = call_json("reproduce", "all", "--only", "5", "--only", "6")
    assert [c["number"] for c in rep["result"]["checks"]] == [5, 6]


def test_console_entry_point():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "k3cusps", "trace", "lefschetz", "--eigs",
                           "w,w,w2,w2", "--no-timing"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["fixed_points"] == 9
