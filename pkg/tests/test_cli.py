from __future__ import annotations

import json

import pytest

from fieldquant.classical_modes import FieldState, cubic_stencil
from fieldquant.cli import main
from fieldquant.jsonio import dump_state, load_matrix, load_modes, load_state
from fieldquant.scalars import CQ


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return code, report, out.err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


EM_DOC = {
    "field": "em",
    "mass": "0",
    "modes": [
        {"k": ["1", "0", "0", "1"], "w": "1", "a": [["0", "0"], ["1", "0"], ["0", "0"], ["0", "0"]], "J": [["1", "0"], "0", "0", ["1", "0"]]},
        {"k": ["2", "0", "0", "-2"], "w": "1/2", "a": [["1", "1"], ["0", "0"], ["0", "-1/3"], ["0", "0"]], "J": ["1", "0", "0", "0"]},
    ],
}


class TestJson:
    def test_roundtrip(self):
        state = FieldState(cubic_stencil(), tuple((CQ(i), 0, CQ(0, 1), 0) for i in range(6)))
        doc = dump_state(state)
        assert load_state(json.loads(json.dumps(doc))) == state

    def test_rejects_floats(self):
        doc = {"field": "scalar", "mass": "0", "modes": [{"k": [1.0, 0, 0, 1], "w": "1"}]}
        with pytest.raises(ValueError):
            load_modes(doc)

    def test_matrix_forms(self):
        M = load_matrix({"M": [[1, 0, 0, 0], [0, "2", 0, 0], [0, 0, [3, "1/2"], 0], [0, 0, 0, 1.5]]})
        assert M[2][2] == 3 + 0.5j and M[3][3] == 1.5


class TestQuantize:
    def test_oscillator_variant2(self, capsys):
        code, rep, _ = run(capsys, "quantize", "--system", "oscillator", "--variant", "2", "--levels", "3")
        assert code == 0
        assert rep["results"]["norms"] == ["1", "-1", "2", "-6"]
        assert [lv["inertia"] for lv in rep["results"]["levels"]] == [[1, 0, 0], [0, 1, 0], [1, 0, 0], [0, 1, 0]]
        assert set(rep) == {"command", "inputs", "results", "seed", "version"}

    def test_em(self, capsys):
        code, rep, _ = run(capsys, "quantize", "--system", "em", "--levels", "1")
        assert code == 0
        assert rep["results"]["levels"][1]["inertia"] == [3, 1, 0]

    def test_negative_levels(self, capsys):
        code, rep, err = run(capsys, "quantize", "--system", "oscillator", "--levels", "-1")
        assert code == 2 and rep is None and "levels" in err

    def test_bad_flag(self, capsys):
        code, _, err = run(capsys, "quantize", "--system", "photon")
        assert code == 2 and err

    def test_deterministic(self, capsys):
        argv = ("quantize", "--system", "em", "--variant", "2", "--levels", "2")
        main(list(argv))
        first = capsys.readouterr().out
        main(list(argv))
        assert capsys.readouterr().out == first


class TestGB:
    def test_level1(self, capsys):
        code, rep, _ = run(capsys, "gb", "--n", "1", "--k", "1,0,0,1")
        assert code == 0
        r = rep["results"]
        assert (r["dim"], r["gauge"], r["inertia"]) == (3, 1, [2, 1, 0])

    def test_not_lightlike(self, capsys):
        code, _, err = run(capsys, "gb", "--n", "1", "--k", "1,0,0,0")
        assert code == 2 and "light-like" in err

    def test_bad_k(self, capsys):
        code, _, _ = run(capsys, "gb", "--n", "1", "--k", "1,0,1")
        assert code == 2


class TestLittleGroup:
    def test_element(self, capsys):
        code, rep, _ = run(capsys, "little-group", "element", "--phi", "0.3", "--alpha", "1.2", "--beta", "-0.7")
        assert code == 0
        for cell in rep["results"]["matrix"][0]:
            assert set(cell) == {"value", "tol"}

    def test_verify(self, capsys):
        code, rep, _ = run(capsys, "little-group", "verify", "--samples", "30", "--seed", "7")
        assert code == 0 and rep["seed"] == 7
        assert rep["results"]["orbit_span"] == {"outside_perp": 4, "perp_not_par": 3, "k": 1}

    def test_too_few_samples(self, capsys):
        code, _, _ = run(capsys, "little-group", "verify", "--samples", "3")
        assert code == 2


class TestClassical:
    def test_energy(self, capsys, tmp_path):
        code, rep, _ = run(capsys, "classical", "energy", "--input", write(tmp_path, "s.json", EM_DOC))
        assert code == 0 and rep["results"]["ok"]
        assert rep["results"]["P"][0] == rep["results"]["generator_time"]

    def test_generator(self, capsys, tmp_path):
        code, rep, _ = run(capsys, "classical", "generator", "--input", write(tmp_path, "s.json", EM_DOC))
        assert code == 0 and rep["results"]["generator"] == rep["results"]["P"]

    def test_radiate(self, capsys, tmp_path):
        code, rep, _ = run(capsys, "classical", "radiate", "--input", write(tmp_path, "j.json", EM_DOC))
        assert code == 0
        assert rep["results"]["lorentz_ok"] is False  # second mode carries a non-conserved current
        assert rep["results"]["a"][0] == [["0", "1"], ["0", "0"], ["0", "0"], ["0", "1"]]

    def test_bracket(self, capsys, tmp_path):
        doc = dict(EM_DOC)
        doc["observables"] = {
            "f": [{"mode": 0, "component": 0, "conj": False, "coef": ["1", "0"]}],
            "g": [{"mode": 0, "component": 0, "conj": True, "coef": ["1", "0"]}],
        }
        code, rep, _ = run(capsys, "classical", "bracket", "--input", write(tmp_path, "b.json", doc))
        assert code == 0 and rep["results"]["bracket"] == ["0", "1"]

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "classical", "energy", "--input", str(tmp_path / "nope.json"))
        assert code == 2 and err

    def test_malformed_json(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code, _, _ = run(capsys, "classical", "energy", "--input", str(p))
        assert code == 2


def test_lagrangian1d(capsys):
    code, rep, _ = run(capsys, "lagrangian1d", "--a", "1", "--b", "0", "--c", "4", "--shift", "5,-1/3")
    assert code == 0
    assert rep["results"]["omega"] == "-1" and rep["results"]["omega_shifted"] == ["-1", "-1"]


def test_equiv(capsys, tmp_path):
    m1 = write(tmp_path, "m1.json", {"M": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]})
    m2 = write(tmp_path, "m2.json", [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]])
    code, rep, _ = run(capsys, "equiv", "--m1", m1, "--m2", m2, "--seed", "3")
    assert code == 0
    assert rep["results"]["epsilon"]["value"] == pytest.approx(0.5)


def test_equiv_not_pd(capsys, tmp_path):
    m1 = write(tmp_path, "m1.json", [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    code, _, err = run(capsys, "equiv", "--m1", m1, "--m2", m1)
    assert code == 2 and "positive" in err
