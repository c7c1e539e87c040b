import json
import subprocess
import sys

import pytest

from conftest import k4
from osforge import io as oio
from osforge.arrangements import arrangement_to_json, realize_generic
from osforge.cli import run
from osforge.constructions import build_Gm, cycle_matroid_Cn
from osforge.matroid import Matroid


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def files(tmp_path):
    c3 = write(tmp_path / "c3.json", oio.matroid_to_json(cycle_matroid_Cn(3)))
    bad = write(tmp_path / "bad.json", {"ground": ["a", "b", "c"], "circuits": [["a", "b"], ["b", "c"]]})
    g2 = write(tmp_path / "g2.json", oio.graph_to_json(build_Gm(2)))
    k4f = write(tmp_path / "k4.json", oio.matroid_to_json(k4()))
    arr = write(tmp_path / "a.json", arrangement_to_json(realize_generic(3)))
    arrb = realize_generic(3)
    data = arrangement_to_json(arrb)
    for f in data["forms"]:
        f["label"] = "b" + f["label"]
    arr2 = write(tmp_path / "b.json", data)
    elem = write(tmp_path / "e.json", {"terms": [{"monomial": ["2", "3"], "num": 1, "den": 1}]})
    return dict(c3=c3, bad=bad, g2=g2, k4=k4f, arr=arr, arr2=arr2, elem=elem, tmp=tmp_path)


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def payload(capsys, *argv):
    code, out, err = call(capsys, *argv)
    assert code == 0, err
    data = json.loads(out)
    assert data["schema"] == 1
    return data


class TestCommands:
    def test_validate(self, capsys, files):
        assert payload(capsys, "validate", "--matroid", files["c3"])["ok"] is True
        code, out, _ = call(capsys, "validate", "--matroid", files["bad"])
        assert code == 1
        assert json.loads(out)["failures"] == ["circuit elimination"]

    def test_tutte(self, capsys, files):
        data = payload(capsys, "tutte", "--matroid", files["c3"])
        assert data["string"] == "x^2 + x + y"
        code, out, _ = call(capsys, "tutte", "--matroid", files["c3"], "--format", "text")
        assert code == 0 and out == "x^2 + x + y\n"

    def test_tutte_from_graph(self, capsys, files):
        data = payload(capsys, "tutte", "--graph", files["g2"])
        assert data["string"] == "x^3 + 2*x^2 + 2*x*y + y^2 + x + y"

    def test_chi_beta(self, capsys, files):
        assert payload(capsys, "chi", "--matroid", files["c3"])["coeffs"] == [2, -3, 1]
        assert payload(capsys, "beta", "--matroid", files["k4"])["beta"] == 2

    def test_os_dims(self, capsys, files):
        assert payload(capsys, "os-dims", "--matroid", files["k4"], "--dual-check")["dims"] == [1, 6, 11, 6]

    def test_nf(self, capsys, files):
        data = payload(capsys, "nf", "--matroid", files["c3"], "--element", files["elem"])
        assert data["terms"] == [{"monomial": ["1", "2"], "num": -1, "den": 1},
                                 {"monomial": ["1", "3"], "num": 1, "den": 1}]

    def test_build_family(self, capsys, files):
        data = payload(capsys, "build-family", "--seed-matroid", files["c3"], "--basepoint", "1", "--n", "3")
        assert len(data["Mn"]["ground"]) == 6 and "p" in data["Mn_prime"]["ground"]

    def test_certify(self, capsys, files):
        data = payload(capsys, "certify", "--graph", files["g2"], "--basepoint", "s2", "--n", "3")
        assert data["accepted"] and data["dims"]["source"] == [1, 8, 25, 38, 28, 8]

    def test_corollary(self, capsys):
        data = payload(capsys, "corollary-cor", "--m", "1", "--n", "4")
        assert data["all_certified"]

    def test_arrangement_commands(self, capsys, files):
        d = payload(capsys, "arr-decone", "--arrangement", files["arr"], "--form", "H1")
        assert d["arrangement"]["variables"] == ["x2"]
        p = payload(capsys, "arr-parallel", "--arrangement", files["arr"], "--arrangement", files["arr2"])
        assert p["arrangement"]["variables"] == ["x1", "x2", "y2"]
        h = payload(capsys, "arr-verify-homo", "--arrangement", files["arr"], "--arrangement", files["arr2"])
        assert h["ok"]

    def test_isomorphic(self, capsys, files, tmp_path):
        other = write(tmp_path / "c3b.json", {"ground": ["a", "b", "c"], "circuits": [["a", "b", "c"]]})
        assert payload(capsys, "isomorphic", "--matroid", files["c3"], "--matroid", other)["isomorphic"]
        assert not payload(capsys, "isomorphic", "--matroid", files["c3"], "--matroid", files["k4"])["isomorphic"]


class TestUsage:
    def test_no_command(self, capsys):
        assert call(capsys)[0] == 2

    def test_unknown_flag(self, capsys):
        assert call(capsys, "tutte", "--bogus")[0] == 2

    def test_missing_input(self, capsys):
        code, _, err = call(capsys, "tutte")
        assert code == 2 and "--matroid" in err

    def test_missing_file(self, capsys, files):
        assert call(capsys, "tutte", "--matroid", str(files["tmp"] / "nope.json"))[0] == 2

    def test_bad_family(self, capsys, files):
        assert call(capsys, "certify", "--matroid", files["c3"], "--basepoint", "9", "--n", "3")[0] == 2
        assert call(capsys, "certify", "--matroid", files["c3"], "--basepoint", "1")[0] == 2

    def test_corollary_guard(self, capsys):
        assert call(capsys, "corollary-cor", "--m", "2", "--n", "5")[0] == 2

    def test_version(self, capsys):
        assert call(capsys, "--version")[0] == 0


class TestOutput:
    def test_out_file_and_determinism(self, capsys, files, tmp_path):
        a, b = tmp_path / "one.json", tmp_path / "two.json"
        for target in (a, b):
            code, out, _ = call(capsys, "certify", "--matroid", files["c3"], "--basepoint", "1", "--n", "4",
                                "--out", str(target))
            assert code == 0 and out == ""
        assert a.read_bytes() == b.read_bytes()
        data = json.loads(a.read_text())
        assert data["command"] == "certify"

    def test_matroid_round_trip(self, capsys, files, tmp_path):
        data = payload(capsys, "build-family", "--seed-matroid", files["k4"], "--basepoint", "e01", "--n", "3")
        m = oio.matroid_from_json(data["Mn_prime"])
        assert isinstance(m, Matroid)
        assert oio.matroid_to_json(m) == data["Mn_prime"]

    def test_entry_points(self, files):
        for cmd in (["osforge"], [sys.executable, "-m", "osforge"]):
            proc = subprocess.run(cmd + ["chi", "--matroid", files["c3"], "--format", "text"],
                                  capture_output=True, text=True)
            assert proc.returncode == 0, proc.stderr
            assert proc.stdout == "t^2 - 3*t + 2\n"
