"""Command-line interface: subcommands, JSON reports, fixtures."""
import json

import pytest

from geproci.cli import REPRODUCE, fixture_text, main
from geproci.fatpoints import read_scheme, write_scheme
from geproci.projgeom import read_point_set, write_point_set
from geproci.spreads import read_spread, write_spread

FIXDIR = "src/geproci/fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_field_info(capsys):
    code, out = run(capsys, "field-info", "--field", "p=3;ext=2")
    assert code == 0
    assert "size: 9" in out


def test_enumerate_canonical(capsys):
    code, out = run(capsys, "enumerate", "--field", "p=2", "--dim", "3")
    assert code == 0
    body = [ln for ln in out.splitlines() if ln and not ln.startswith("field:")]
    assert len(body) == 15
    assert body == sorted(body)  # canonical order is deterministic


def test_usage_error_exits_nonzero():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code != 0


def test_error_report_propagates_module_error(tmp_path, capsys):
    missing = tmp_path / "nope.points"
    out_path = tmp_path / "r.json"
    code = main(["--out", str(out_path), "hilbert", str(missing), "--degree", "2"])
    capsys.readouterr()
    assert code == 1
    report = json.loads(out_path.read_text())
    assert report["error"]["type"] == "FileNotFoundError"


def test_json_report_schema(tmp_path, capsys):
    out_path = tmp_path / "r.json"
    code = main(["--out", str(out_path), "cones", "inequality", "--q", "2,3"])
    capsys.readouterr()
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["schema"] == 1
    assert report["inequality"][0] == {"q": 2, "lhs": 6, "rhs": 6, "holds": False}
    assert "seconds" in report


def test_report_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    blobs = []
    for p in paths:
        main(["--out", str(p), "cones", "inequality", "--q", "3,4,5"])
        capsys.readouterr()
        blob = json.loads(p.read_text())
        del blob["seconds"]
        del blob["command"]
        blobs.append(blob)
    assert blobs[0] == blobs[1]


def test_spread_verify_fixture(capsys):
    code, out = run(capsys, "spread", "verify", f"{FIXDIR}/mps7-q3.spread")
    assert code == 0
    assert "7 lines" in out and "maximal: True" in out


def test_complement_count(capsys, tmp_path):
    dest = tmp_path / "z.points"
    code, out = run(capsys, "complement", f"{FIXDIR}/mps7-q3.spread",
                    "--save", str(dest))
    assert code == 0
    Z = read_point_set(dest.read_text())
    assert len(Z) == 12


def test_hilbert_subcommand(capsys):
    code, out = run(capsys, "hilbert", f"{FIXDIR}/complement-40-q7.points",
                    "--degree", "4")
    assert code == 0
    assert "= 5" in out


def test_geproci_check_subcommand(capsys, tmp_path):
    src = tmp_path / "z.points"
    main(["complement", f"{FIXDIR}/mps7-q3.spread", "--save", str(src)])
    capsys.readouterr()
    code, out = run(capsys, "geproci", "check", str(src),
                    "--alpha", "3", "--beta", "4")
    assert code == 0
    assert "True" in out


def test_geproci_classify_subcommand(capsys, tmp_path):
    src = tmp_path / "z.points"
    main(["complement", f"{FIXDIR}/mps7-q3.spread", "--save", str(src)])
    capsys.readouterr()
    code, out = run(capsys, "geproci", "classify", str(src),
                    "--alpha", "3", "--beta", "4")
    assert code == 0
    assert "half_grid_cover: True" in out


def test_scheme_check_subcommand(capsys):
    code, out = run(capsys, "scheme", "check",
                    f"{FIXDIR}/concurrent-nine-q2.scheme",
                    "--alpha", "3", "--beta", "3")
    assert code == 0
    assert "scheme length 9" in out and "True" in out


def test_cones_frobenius_subcommand(capsys):
    code, out = run(capsys, "cones", "frobenius", "--field", "p=2")
    assert code == 0
    assert "degree 3 cone" in out and "35/35" in out


def test_spread_search_first(capsys):
    code, out = run(capsys, "spread", "search", "--field", "p=2",
                    "--mode", "first")
    assert code == 0
    assert "found 1" in out


def test_reproduce_targets_cover_acceptance_ids():
    assert set(REPRODUCE) == {"thm1-q2", "mps-q3", "ex-40pt-q7", "fatpoint-ex7"}


def test_reproduce_thm1_q2(tmp_path, capsys):
    out_path = tmp_path / "r.json"
    code = main(["--out", str(out_path), "reproduce", "thm1-q2"])
    capsys.readouterr()
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["points"] == 15
    assert report["verdict"]["geproci"] is True
    assert report["verdict"]["degrees"] == [3, 5]


def test_every_fixture_roundtrips():
    pts = fixture_text("complement-40-q7.points")
    assert write_point_set(read_point_set(pts)) == pts
    sp = fixture_text("mps7-q3.spread")
    assert write_spread(read_spread(sp)) == sp
    sch = fixture_text("concurrent-nine-q2.scheme")
    assert write_scheme(read_scheme(sch)) == sch
