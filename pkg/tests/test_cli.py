from __future__ import annotations

import json

import pytest

from gammatop.cli import main

DOC = """space S { points = 2  open = {} open = {0} open = {0 1} }
operation G on S { kind = identity }
operation C on S { kind = closure }
map swap : S -> S { 0 -> 1  1 -> 0 ; gamma = G ; beta = G }
"""


@pytest.fixture
def doc(tmp_path):
    p = tmp_path / "s.gt"
    p.write_text(DOC)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys, doc):
    code, out, _ = run(capsys, "validate", doc)
    assert code == 0 and out.strip().endswith("ok")


def test_enumerate_count(capsys):
    assert run(capsys, "enumerate", "--points", "3", "--count-only")[:2] == (0, "29\n")
    assert run(capsys, "enumerate", "--points", "3", "--count-only", "--up-to-iso")[:2] == (0, "9\n")
    assert run(capsys, "enumerate", "--points", "6", "--count-only")[0] == 3


def test_compute_scl(capsys, doc):
    code, out, _ = run(capsys, "compute", "--file", doc, "--space", "S", "--op", "G", "--set", "1", "--what", "scl")
    assert (code, out) == (0, "{1}\n")
    code, out, _ = run(capsys, "compute", "--file", doc, "--space", "S", "--op", "C", "--set", "1", "--what", "clg")
    assert out == "{0,1}\n"
    assert run(capsys, "compute", "--file", doc, "--space", "S", "--op", "G", "--set", "7", "--what", "sd")[0] == 2


def test_families_and_classify(capsys, doc):
    code, out, _ = run(capsys, "families", "--file", doc, "--space", "S", "--op", "G")
    assert code == 0 and "semi-open: {} {0} {0,1}" in out
    code, out, _ = run(capsys, "classify-op", "--file", doc, "--space", "S", "--op", "C", "--machine")
    assert json.loads(out)["monotone"] is True
    code, out, _ = run(capsys, "classify-map", "--file", doc, "--map", "swap")
    assert "gamma-semi-continuous: no (witness {0})" in out


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "--theorem", "T5.4.1", "--max-points", "3", "--ops", "builtins")[0] == 0
    code, out, _ = run(capsys, "check", "--theorem", "L3.12:2-1", "--max-points", "3")
    assert code == 1 and "first counterexample" in out
    assert run(capsys, "check", "--theorem", "T5.4.1", "--max-points", "5")[0] == 3
    assert run(capsys, "check", "--theorem", "nope")[0] == 2


def test_check_machine_stream_is_deterministic(capsys):
    argv = ("check", "--theorem", "T3.9", "--max-points", "2", "--machine")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    records = [json.loads(line) for line in a.splitlines()]
    assert records[-1]["type"] == "summary"


def test_search_exit_codes(capsys):
    assert run(capsys, "search", "--theorem", "T5.5:1-2", "--max-points", "3")[0] == 1
    assert run(capsys, "search", "--theorem", "T5.4.1", "--budget", "3")[0] == 3
    assert run(capsys, "search", "--theorem", "T5.4.1", "--max-points", "2")[0] == 0
    assert run(capsys, "search", "--theorem", "T3.9", "--drop", "op-open")[0] == 2


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.gt"
    bad.write_text("space S { points = 2 open = {} open = {0 1} }\nmap m : S -> S { 0 -> 5 1 -> 0 }\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "outside" in err
    bad.write_text("space S {\n oops }")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "line 2" in err
    assert run(capsys, "validate", str(tmp_path / "missing.gt"))[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["enumerate"])
    assert info.value.code == 2
    capsys.readouterr()


def test_audit(capsys):
    code, out, _ = run(capsys, "audit", "--max-points", "2")
    assert code == 0 and "T3.8.1" in out and "corrected" in out
