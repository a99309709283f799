import json
import subprocess
import sys

import pytest

from monoidbench import TableMonoid, jsonio  # noqa: F401  (jsonio via package path below)
from monoidbench import jsonio as jio
from monoidbench.cli import main
from monoidbench.monoids import BOTTOM, LatticeMonoid, free_monoid, group_monoid
from monoidbench.ideals import ideal_generate, zero_ideal
from monoidbench.valuations import lattice_valuation, trivial_valuation

N2_DOC = {"kind": "lattice", "free": ["x", "y"], "invertible": []}
Z_DOC = {"kind": "lattice", "free": [], "invertible": ["g"]}
E_DOC = {
    "kind": "table",
    "names": ["0", "1", "e"],
    "table": [[0, 0, 0], [0, 1, 2], [0, 2, 2]],
}


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestJsonRoundTrips:
    def test_monoid(self):
        for doc in (N2_DOC, Z_DOC, E_DOC):
            A = jio.parse_monoid(doc)
            assert jio.parse_monoid(jio.monoid_to_json(A)) == A

    def test_elements(self):
        A = jio.parse_monoid(N2_DOC)
        assert jio.parse_element(A, {"x": 2}) == (2, 0)
        assert jio.parse_element(A, "bottom") is BOTTOM
        assert jio.element_to_json(A, (2, 0)) == {"x": 2}
        E = jio.parse_monoid(E_DOC)
        assert jio.parse_element(E, "e") == 2

    def test_ideal(self):
        A = jio.parse_monoid(N2_DOC)
        I = jio.parse_ideal(A, {"generators": [{"x": 2}, {"y": 2}]})
        assert I == ideal_generate(A, [(2, 0), (0, 2)])
        assert jio.parse_ideal(A, jio.ideal_to_json(I)) == I

    def test_valuation(self):
        A = jio.parse_monoid(N2_DOC)
        doc = {"rank": 2, "images": {"x": [0, -1], "y": [-1, 0]}, "zeros": []}
        v = jio.parse_valuation(A, doc)
        assert v == lattice_valuation(A, {"x": (0, -1), "y": (-1, 0)})
        assert jio.parse_valuation(A, jio.valuation_to_json(v)) == v

    def test_table_valuation(self):
        E = jio.parse_monoid(E_DOC)
        v = jio.parse_valuation(E, {"rank": 0, "zeros": ["e"]})
        assert v == trivial_valuation(ideal_generate(E, [2]))

    def test_aset(self):
        E = jio.parse_monoid(E_DOC)
        doc = {"elements": ["0", "m"], "action": {"0": [0, 0], "1": [0, 1], "e": [0, 1]}}
        M = jio.parse_aset(E, doc)
        assert jio.parse_aset(E, jio.aset_to_json(M)) == M

    def test_hom(self):
        doc = {
            "source": {"kind": "lattice", "free": ["x"], "invertible": []},
            "target": {"kind": "lattice", "free": ["x"], "invertible": []},
            "map": {"x": {"x": 2}},
        }
        f = jio.parse_hom(doc)
        assert f.apply((1,)) == (2,)

    def test_space(self):
        from monoidbench.ideals import mspec

        _, space, _ = mspec(free_monoid("x"))
        doc = jio.space_to_json(space)
        back = jio.parse_space(doc)
        assert back.opens == space.opens


class TestCLI:
    def test_mspec_lattice(self, capsys, tmp_path):
        p = tmp_path / "N2.json"
        p.write_text(json.dumps(N2_DOC))
        code, out = run_cli(["mspec", "--monoid", str(p)], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["count"] == 4

    def test_closure_apply_integral(self, capsys):
        code, out = run_cli(
            [
                "closure",
                "apply",
                "--op",
                "integral",
                "--monoid",
                json.dumps(N2_DOC),
                "--ideal",
                json.dumps({"generators": [{"x": 2}, {"y": 2}]}),
            ],
            capsys,
        )
        assert code == 0
        rep = json.loads(out)
        gens = rep["closure"]["generators"]
        assert {"x": 1, "y": 1} in gens and len(gens) == 3

    def test_cont_check_paper_example_exit_one(self, capsys):
        code, out = run_cli(
            [
                "cont",
                "check",
                "--monoid",
                json.dumps(Z_DOC),
                "--valuation",
                json.dumps({"rank": 0, "images": {}, "zeros": []}),
                "--ideal",
                json.dumps({"generators": [{"g": 1}]}),
            ],
            capsys,
        )
        assert code == 1
        rep = json.loads(out)
        assert rep["continuous"] is False

    def test_cont_check_zero_ideal_true(self, capsys):
        code, out = run_cli(
            [
                "cont",
                "check",
                "--monoid",
                json.dumps(Z_DOC),
                "--valuation",
                json.dumps({"rank": 0, "images": {}, "zeros": []}),
                "--ideal",
                json.dumps({"generators": []}),
            ],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["continuous"] is True

    def test_malformed_json_exit_two(self, capsys):
        code, out = run_cli(["mspec", "--monoid", "{bad json"], capsys)
        assert code == 2
        rep = json.loads(out)
        assert "line" in rep and "column" in rep

    def test_spv_enumerate(self, capsys):
        code, out = run_cli(["spv", "enumerate", "--monoid", json.dumps(E_DOC)], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["count"] == 2 and rep["t0"]

    def test_spv_equiv_witness(self, capsys):
        code, out = run_cli(
            [
                "spv",
                "equiv",
                "--monoid",
                json.dumps(N2_DOC),
                "--valuation",
                json.dumps({"rank": 2, "images": {"x": [0, -1], "y": [-1, 0]}}),
                "--valuation2",
                json.dumps({"rank": 2, "images": {"x": [-1, 0], "y": [0, -1]}}),
            ],
            capsys,
        )
        assert code == 1
        rep = json.loads(out)
        assert rep["equivalent"] is False and "witness" in rep

    def test_relation_check(self, capsys):
        E = jio.parse_monoid(E_DOC)
        from monoidbench import relation_of

        rel = relation_of(trivial_valuation(zero_ideal(E)))
        code, out = run_cli(
            [
                "relation",
                "check",
                "--monoid",
                json.dumps(E_DOC),
                "--relation",
                json.dumps(jio.relation_to_json(rel)),
            ],
            capsys,
        )
        assert code == 0 and json.loads(out)["valid"]

    def test_itop_metric(self, capsys):
        T_DOC = {
            "kind": "table",
            "names": ["0", "1", "x", "x^2"],
            "table": [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 0], [0, 3, 0, 0]],
        }
        code, out = run_cli(
            [
                "itop",
                "metric",
                "--monoid",
                json.dumps(T_DOC),
                "--ideal",
                json.dumps({"generators": ["x"]}),
                "--elem-a",
                "x",
                "--elem-b",
                "x^2",
            ],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["distance"] == "1/2"

    def test_export_dot(self, capsys):
        code, out = run_cli(["export-dot", "--monoid", json.dumps(N2_DOC)], capsys)
        assert code == 0
        assert out.count("->") == 4

    def test_byte_identical_reruns(self, capsys):
        args = ["mspec", "--monoid", json.dumps(N2_DOC)]
        _, out1 = run_cli(args, capsys)
        _, out2 = run_cli(args, capsys)
        assert out1 == out2

    def test_check_spectral(self, capsys):
        code, out = run_cli(["check-spectral", "--monoid", json.dumps(E_DOC)], capsys)
        assert code == 0 and json.loads(out)["spectral"]

    def test_sset_space(self, capsys):
        code, out = run_cli(["sset", "space", "--monoid", json.dumps(E_DOC)], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["ultrafilter_criterion"] and rep["t0"]

    def test_console_script_entry(self):
        proc = subprocess.run(
            [sys.executable, "-m", "monoidbench.cli", "mspec", "--monoid", json.dumps(N2_DOC)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["count"] == 4
