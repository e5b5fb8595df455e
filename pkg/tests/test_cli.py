import io
import json
import subprocess
import sys

import pytest

from tmstate import automata
from tmstate.automata import from_json
from tmstate.classes import build_minimal
from tmstate.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestBuild:
    def test_minimal_dot(self, capsys):
        code, out, _ = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2", "--stage", "minimal", "--format", "dot")
        assert code == 0
        assert out.startswith("digraph") and out.count("doublecircle") == 1
        assert out.count("shape=circle") == 6
        assert out == automata.to_dot(build_minimal(6, 2, 2), name="minimal_6_2_2")

    def test_unit_json(self, capsys):
        code, out, _ = run(capsys, "build", "--m", "1", "--r", "0", "--p", "1", "--stage", "minimal")
        assert code == 0 and from_json(out).state_count == 2

    def test_projected_json(self, capsys):
        code, out, _ = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2", "--stage", "projected")
        obj = json.loads(out)
        assert code == 0 and obj["state_count"] == 12 and obj["alphabet_size"] == 4

    @pytest.mark.parametrize("stage, states, symbols", [
        ("a_t", 2, 16), ("a_mrb", 6, 16), ("pi_a_mrb", 6, 4), ("product", 12, 16),
    ])
    def test_stages(self, capsys, stage, states, symbols):
        code, out, _ = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2", "--stage", stage)
        a = from_json(out)
        assert code == 0 and (a.state_count, a.alphabet_size) == (states, symbols)

    def test_pair_dot(self, capsys):
        _, out, _ = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2", "--stage", "a_mrb", "--format", "dot")
        assert "(0,1)" in out

    def test_complement(self, capsys):
        code, out, _ = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2", "--complement")
        a = from_json(out)
        assert code == 0 and a.accepts([2, 0]) and not a.accepts([2])

    def test_bad_params(self, capsys):
        code, _, err = run(capsys, "build", "--m", "6", "--r", "6", "--p", "2")
        assert code == 2 and "r must lie" in err
        code, _, _ = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2", "--stage", "a_t", "--complement")
        assert code == 2

    def test_io_failure(self, capsys, tmp_path):
        code, _, err = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2", "--out", str(tmp_path / "no" / "x.json"))
        assert code == 3 and "cannot write" in err

    def test_out_file_and_determinism(self, capsys, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            assert run(capsys, "build", "--m", "24", "--r", "23", "--p", "2", "--out", str(path))[0] == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        assert from_json(paths[0].read_text()) == build_minimal(24, 23, 2)


class TestComplexity:
    def test_small_grid(self, capsys):
        code, out, _ = run(capsys, "complexity", "--m-max", "24", "--p-max", "2")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "m\tp\tformula\thopcroft\tagree"
        rows = {(int(m), int(p)): (int(f), int(h), a) for m, p, f, h, a in (x.split("\t") for x in lines[1:])}
        assert len(rows) == 48
        assert rows[(6, 2)] == (7, 7, "yes")
        assert rows[(24, 2)] == (8, 8, "yes")

    def test_full_grid(self, capsys):
        code, out, _ = run(capsys, "complexity", "--m-max", "64", "--p-max", "3")
        assert code == 0 and "NO" not in out and len(out.splitlines()) == 1 + 64 * 3

    def test_bad_bounds(self, capsys):
        assert run(capsys, "complexity", "--m-max", "0")[0] == 2


class TestDecide:
    def test_round_trip(self, capsys, monkeypatch):
        _, built, _ = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2")
        monkeypatch.setattr(sys, "stdin", io.StringIO(built))
        code, out, _ = run(capsys, "decide", "--input", "-", "--p", "2")
        assert code == 0
        assert json.loads(out) == {"match": True, "m": 6, "r": 2, "complement": False}

    def test_p_inferred_from_alphabet(self, capsys, tmp_path):
        path = tmp_path / "a.json"
        path.write_text(automata.to_json(build_minimal(12, 5, 3)))
        code, out, _ = run(capsys, "decide", "--input", str(path))
        assert code == 0 and json.loads(out)["m"] == 12

    def test_even_numbers(self, capsys, tmp_path):
        evens = {"alphabet_size": 2, "state_count": 2, "initial": 0, "finals": [0],
                 "transitions": [[0, 0, 0], [0, 1, 1], [1, 0, 0], [1, 1, 1]]}
        path = tmp_path / "evens.json"
        path.write_text(json.dumps(evens))
        code, out, _ = run(capsys, "decide", "--input", str(path), "--p", "1")
        assert code == 1 and json.loads(out)["match"] is False

    def test_complement_flag(self, capsys, tmp_path):
        _, built, _ = run(capsys, "build", "--m", "6", "--r", "2", "--p", "2", "--complement")
        path = tmp_path / "c.json"
        path.write_text(built)
        assert run(capsys, "decide", "--input", str(path))[0] == 1
        code, out, _ = run(capsys, "decide", "--input", str(path), "--allow-complement")
        assert code == 0 and json.loads(out)["complement"] is True

    @pytest.mark.parametrize("text", ["{not json", "[]", '{"alphabet_size": 3, "state_count": 1, "initial": 0, "finals": [], "transitions": []}'])
    def test_malformed(self, capsys, tmp_path, text):
        path = tmp_path / "bad.json"
        path.write_text(text)
        assert run(capsys, "decide", "--input", str(path))[0] == 2

    def test_p_mismatch(self, capsys, tmp_path):
        path = tmp_path / "a.json"
        path.write_text(automata.to_json(build_minimal(6, 2, 2)))
        assert run(capsys, "decide", "--input", str(path), "--p", "1")[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "decide", "--input", str(tmp_path / "none.json"))[0] == 3


class TestVerify:
    @pytest.mark.parametrize("argv", [
        ["--m", "6", "--r", "2", "--p", "2", "--max-len", "6"],
        ["--m", "24", "--r", "23", "--p", "2", "--max-len", "5"],
        ["--m", "6", "--r", "2", "--p", "2", "--max-len", "6", "--complement"],
    ])
    def test_pass(self, capsys, argv):
        code, out, _ = run(capsys, "verify", *argv)
        assert code == 0 and json.loads(out)["passed"] is True

    def test_overflow(self, capsys):
        assert run(capsys, "verify", "--m", "6", "--r", "2", "--p", "2", "--max-len", "40")[0] == 2

    def test_bad_params(self, capsys):
        assert run(capsys, "verify", "--m", "6", "--r", "7", "--p", "2")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tmstate", "verify", "--m", "6", "--r", "2", "--p", "2", "--max-len", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"]
