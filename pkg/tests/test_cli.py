"""Command-line behavior: exit codes, emitted files and determinism."""
from __future__ import annotations

import json
import subprocess
import sys

import pytest

from corpus import random_cycle_corpus
from orthosefe.cli import rotations_from_json, rotations_to_json, run
from orthosefe.gadgets import negative_sefe_instance
from orthosefe.instance import CycleInstance, SunflowerInstance, dump_instance, load_instance


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return write


def theta_doc() -> str:
    names = ["a", "b", "c", "d", "e", "f", "g"]
    shared = [("a", "c"), ("c", "d"), ("d", "b"), ("a", "e"), ("e", "b"), ("a", "f"), ("f", "g"), ("g", "b")]
    inst = SunflowerInstance.from_names(names, shared, [[("c", "e")], [("e", "g")]])
    return dump_instance(inst)


def test_check_negative_instance_exits_1(files, capsys):
    path = files("fig1a.json", dump_instance(negative_sefe_instance()))
    assert run(["check", path]) == 1
    assert run(["oracle", path]) == 1


def test_oracle_on_empty_instance_exits_0(files):
    path = files("empty.json", '{"k":2,"cycle":["a","b","c","d"],"exclusive":[[],[]]}')
    assert run(["oracle", path]) == 0


def test_check_witness_round_trip(files, tmp_path):
    c = CycleInstance.from_names(list("abcdef"), [[("a", "c"), ("a", "d")], [("b", "e")]])
    inst = files("inst.json", dump_instance(c))
    w = str(tmp_path / "w.json")
    trace, formula = str(tmp_path / "t.json"), str(tmp_path / "f.txt")
    assert run(["check", inst, "--emit-witness", w, "--emit-trace", trace, "--emit-formula", formula]) == 0
    assert json.loads(open(w).read())["assignment"]
    assert isinstance(json.loads(open(trace).read()), list)
    assert open(formula).read().startswith("p nae")
    assert run(["validate", inst, "--witness", w]) == 0
    flipped = {k: "R" if v == "L" else "L" for k, v in json.loads(open(w).read())["assignment"].items()}
    mirrored = files("mirrored.json", json.dumps({"assignment": flipped}))
    assert run(["validate", inst, "--witness", mirrored]) == 0


def test_validate_rejects_infeasible_assignment(files):
    c = CycleInstance.from_names(list("abcdef"), [[("a", "c"), ("a", "d")], [("a", "e")]])
    inst = files("inst.json", dump_instance(c))
    w = files("w.json", json.dumps({"assignment": {"a-c": "L", "a-d": "L", "a-e": "R"}}))
    assert run(["validate", inst, "--witness", w]) == 1


def test_check_and_oracle_agree_on_corpus(files):
    for k, c in enumerate(random_cycle_corpus(25, seed=5)):
        path = files(f"c{k}.json", dump_instance(c))
        assert run(["check", path]) == run(["oracle", path])


def test_biconnected_check_and_rotation_witness(files, tmp_path):
    inst = files("theta.json", theta_doc())
    w = str(tmp_path / "rot.json")
    assert run(["check", inst, "--emit-witness", w]) == 0
    assert "rotations" in json.loads(open(w).read())
    assert run(["validate", inst, "--witness", w]) == 0
    svg = str(tmp_path / "d.svg")
    assert run(["draw", inst, "--embedding", w, "-o", svg]) == 0
    assert open(svg).read().startswith("<svg")


def test_rotation_json_round_trip():
    inst = load_instance(theta_doc())
    rot = {v: tuple(sorted(w for e in inst.shared for w in e if v in e and w != v)) for v in range(inst.n)}
    assert rotations_from_json(inst, rotations_to_json(inst, rot)) == rot


def test_transform_writes_instance_and_trace(files, tmp_path):
    c = CycleInstance.from_names([str(i) for i in range(8)], [[("0", "4"), ("2", "6")], []])
    inst = files("inst.json", dump_instance(c))
    out, trace = str(tmp_path / "out.json"), str(tmp_path / "trace.json")
    assert run(["transform", "--lemma", "2", inst, "-o", out, "--emit-trace", trace]) == 0
    assert load_instance(open(out).read()).n == c.n + 15
    assert json.loads(open(trace).read())[0]["transformation"] == "outerplanarize"
    assert run(["transform", "--lemma", "5", inst]) == 2


def test_generate_is_deterministic(files, tmp_path, monkeypatch):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert run(["generate", "--random", "n=10", "m=6", "seed=3", "-o", a]) == 0
    assert run(["generate", "--random", "n=10", "m=6", "seed=3", "-o", b]) == 0
    assert open(a).read() == open(b).read()
    monkeypatch.setenv("ORTHOSEFE_SEED", "3")
    assert run(["generate", "--random", "n=10", "m=6", "-o", b]) == 0
    assert open(a).read() == open(b).read()
    cnf = files("f.txt", "x y z\nx y w\n")
    t3 = str(tmp_path / "t3.json")
    assert run(["generate", "--nae3sat", cnf, "--theorem", "3", "-o", t3]) == 0
    assert load_instance(open(t3).read()).k == 3
    t4 = str(tmp_path / "t4.json")
    assert run(["generate", "--nae3sat", cnf, "-o", t4]) == 0
    assert run(["oracle", t4, "--no-cap"]) == 0
    assert run(["check", t4]) == 2


def test_spqr_dump(files, capsys):
    inst = files("theta.json", theta_doc())
    assert run(["spqr", inst]) == 0
    out = capsys.readouterr().out
    assert out.count("S") >= 3 and "P" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["check"],
        ["check", "/nonexistent/file.json"],
        ["oracle", "--jobs", "0", "x.json"],
        ["generate"],
        ["generate", "--random", "n=5"],
    ],
)
def test_usage_errors_exit_2(argv):
    assert run(argv) == 2


def test_malformed_instance_exits_2(files):
    assert run(["check", files("bad.json", "{not json")]) == 2
    assert run(["check", files("deg.json", '{"k":1,"cycle":["a","b","c","d","e","f"],"exclusive":[[["a","c"],["a","d"],["a","e"]]]}')]) == 2


def test_cap_exceeded_exits_2(files):
    c = random_cycle_corpus(1, seed=1)[0]
    path = files("c.json", dump_instance(c))
    assert run(["oracle", path, "--cap", "0"]) == (2 if any(c.exclusive) else 0)


def test_console_script_entry_point(files):
    path = files("fig1a.json", dump_instance(negative_sefe_instance()))
    proc = subprocess.run([sys.executable, "-m", "orthosefe", "check", path], capture_output=True, text=True)
    assert proc.returncode == 1 and "infeasible" in proc.stdout
