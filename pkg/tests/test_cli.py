import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from geoatoms.catalog import CONSTRUCTIONS
from geoatoms.cli import main
from geoatoms.specfile import SpecFile, SpecFileError, dumps, parse

SVG = "{http://www.w3.org/2000/svg}"


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _named_file(tmp_path, name):
    con = CONSTRUCTIONS[name]
    return _write(tmp_path, name.replace("@", "_") + ".txt", dumps(SpecFile(con.surface, con.specs)))


@pytest.mark.parametrize("name", list(CONSTRUCTIONS))
def test_check_atoms_exit_zero(tmp_path, capsys, name):
    assert main(["check", _named_file(tmp_path, name)]) == 0
    out = capsys.readouterr().out
    assert f"verdict: atom, V={CONSTRUCTIONS[name].vertices}" in out
    assert "failed:" not in out


def test_check_klein_odd_self_crossing(tmp_path, capsys):
    path = _write(tmp_path, "k.txt", "surface klein\ngeodesic 1 -2 1/3\n")
    assert main(["check", path]) == 1
    out = capsys.readouterr().out
    assert "odd_selfint_corollary  fail" in out
    assert "reason: odd_selfint_corollary" in out
    assert main(["check", path, "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert "odd_selfint_corollary" in data["failed"]
    assert data["reason"] == "odd_selfint_corollary"
    assert data["status"] == "not_two_colorable"


def test_check_reasons(tmp_path, capsys):
    rp2 = _write(tmp_path, "rp2.txt", "surface rp2\ncircle 1 0 0\ncircle 0 1 0\ncircle 0 0 1\n")
    assert main(["check", rp2, "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["reason"] == "crossing_parity"
    torus = _write(tmp_path, "t.txt", "surface torus\ngeodesic 1 0 0/1\ngeodesic 1 1 1/2\n")
    assert main(["check", torus, "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["reason"] == "torus_even_crossings"
    lonely = _write(tmp_path, "l.txt", "surface torus\ngeodesic 1 0 0/1\n")
    assert main(["check", lonely, "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["reason"] == "no_intersections"


def test_check_json_fields(tmp_path, capsys):
    assert main(["check", _named_file(tmp_path, "D2tilde@KL"), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["atom"] is True
    assert data["invariants"] == {"V": 2, "E": 4, "F": 2, "chi": 0, "orientable": False,
                                  "face_degrees": [4, 4]}
    assert [c["reverses_orientation"] for c in data["curves"]] == [True, True, False]


@pytest.mark.parametrize("text", [
    "",
    "geodesic 1 0 0/1\n",
    "surface torus\n",
    "surface torus\ngeodesic 2 4 0/1\n",
    "surface torus\ngeodesic 1 0 1/0\n",
    "surface torus\ncircle 1 0 0\n",
    "surface sphere\ngeodesic 1 0 0\n",
    "surface moebius\ncircle 1 0 0\n",
    "surface torus\ngeodesic 1 0 x\n",
    "surface torus\ngeodesic 99999999999999999999 1 0\n",
    "surface torus\nsurface torus\n",
])
def test_parse_errors_exit_two(tmp_path, capsys, text):
    with pytest.raises(SpecFileError):
        parse(text)
    assert main(["check", _write(tmp_path, "bad.txt", text)]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_exit_two(tmp_path):
    assert main(["check", str(tmp_path / "nope.txt")]) == 2


@pytest.mark.parametrize("text", [
    "surface torus\ngeodesic 1 0 0\ngeodesic 0 1 0\ngeodesic 1 1 0\n",
    "surface torus\ngeodesic 1 2 1/3\ngeodesic -1 -2 -1/3\n",
    "surface sphere\ncircle 1 0 0\ncircle 0 1 0\ncircle 1 1 0\n",
])
def test_degenerate_exit_three(tmp_path, capsys, text):
    assert main(["check", _write(tmp_path, "deg.txt", text)]) == 3
    assert "degenerate" in capsys.readouterr().err


def test_round_trip(tmp_path):
    for con in CONSTRUCTIONS.values():
        sf = SpecFile(con.surface, con.specs)
        again = parse(dumps(sf))
        assert again.surface is sf.surface and again.specs == tuple(con.specs)
    text = "# comment\nsurface klein  # trailing\n\ngeodesic 1 -1 1/3\n"
    assert dumps(parse(text)) == "surface klein\ngeodesic 1 -1 1/3\n"


def _svg(tmp_path, name, *extra):
    out = tmp_path / (name.replace("@", "_") + ".svg")
    assert main(["render", _named_file(tmp_path, name), "-o", str(out), *extra]) == 0
    return out.read_text()


@pytest.mark.parametrize("name,groups,dots", [
    ("D2tilde@KL", 3, 2),
    ("C2tilde@KL", 1, 2),
    ("E1@T2", 3, 3),
    ("C2@S2", 2, 2),
    ("Btilde@RP2", 2, 1),
])
def test_render_counts(tmp_path, name, groups, dots):
    root = ET.fromstring(_svg(tmp_path, name))
    assert root.tag == SVG + "svg"
    assert len(root.findall(f"{SVG}g[@class='geodesic']")) == groups
    assert len(root.findall(f"{SVG}circle[@class='vertex']")) == dots
    for g in root.findall(f"{SVG}g[@class='geodesic']"):
        assert g.findall(f"{SVG}polyline")


def test_render_klein_side_arrows(tmp_path):
    root = ET.fromstring(_svg(tmp_path, "D2tilde@KL"))
    # one head on each horizontal side, two on each vertical side
    assert len(root.findall(f"{SVG}path[@class='arrow']")) == 6
    assert len(root.findall(f"{SVG}line[@class='side']")) == 4


def test_render_is_deterministic(tmp_path):
    assert _svg(tmp_path, "G3tilde@KL") == _svg(tmp_path, "G3tilde@KL")


def test_render_size(tmp_path, capsys):
    root = ET.fromstring(_svg(tmp_path, "C1@T2", "--size", "300x200"))
    assert (root.get("width"), root.get("height")) == ("300", "200")
    path = _named_file(tmp_path, "C1@T2")
    assert main(["render", path, "--size", "0x200"]) == 2
    assert "must be positive" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["render", path, "--size", ""])


def test_render_to_stdout(tmp_path, capsys):
    assert main(["render", _named_file(tmp_path, "C2@S2")]) == 0
    ET.fromstring(capsys.readouterr().out)


def test_search_lists_results(capsys):
    assert main(["search", "klein", "--self", "2", "--bounds", "1", "--den", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == f"count {len(lines) - 1}"
    assert "geodesic 1 -1 1/3" in lines


def test_search_empty_is_not_an_error(capsys):
    assert main(["search", "klein", "--self", "3", "--simple"]) == 0
    assert capsys.readouterr().out == "count 0\n"


def test_search_pairs(capsys):
    assert main(["search", "torus", "--curves", "2", "--cross", "2", "--bounds", "2",
                 "--den", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "count 5"
    assert all(" ; " in line for line in lines[:-1])


def test_verify_command(capsys):
    assert main(["theorem1"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("all checks passed")
    assert main(["theorem1", "--bounds", "0"]) == 1
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "geoatoms", "theorem1", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    rows = [json.loads(line) for line in proc.stdout.splitlines()]
    assert rows[-1]["name"] == "summary" and rows[-1]["status"] == "pass"
