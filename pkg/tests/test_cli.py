import io
import json

import pytest

from ketonen.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_prove_statuses():
    assert run("prove", "|- ((P -> Q) -> P) -> P", "--atoms", "P,Q")[0] == 0
    code, text = run("prove", "|- a0:1 -> a1:1")
    assert code == 1 and "a0:1 = t, a1:1 = f" in text
    assert run("prove", "|- (")[0] == 3
    assert run("prove", "_|_ |-")[0] == 2
    assert run("prove", "_|_ |-", "--critical-rounds", "40")[0] == 0
    assert run("prove", "|- P", "--system", "kct")[0] == 3
    assert run("prove", "|- P", "--max-depth", "0")[0] == 3


def test_prove_json_is_byte_identical():
    a = run("prove", "|- P -> Q", "--format", "json")[1]
    b = run("prove", "|- P -> Q", "--format", "json")[1]
    assert a == b
    data = json.loads(a)
    assert data["verdict"] == "Refuted" and data["tableau"]["root"]["status"] == "open"


def test_chain_lists_both_alternatives():
    code, text = run("chain", "(a0:1 -> a1:1) |- a2:1", "--steps", "1")
    assert "R3.1a" in text and "R3.1b" in text and code == 2
    code, text = run("chain", "|- a0:1 -> a0:1", "--system", "kctt_h")
    assert code == 0 and "R3.1s" in text


def test_rank():
    assert run("rank", "(a0:1 -> a1:1)") == (0, "1\n")
    assert run("rank", "(")[0] == 3


@pytest.fixture
def figure(tmp_path):
    path = tmp_path / "fig.json"
    path.write_text(json.dumps({
        "sequent": "|- a0:1 -> a0:1", "rule": "ImpR", "witness": None,
        "children": [{"sequent": "a0:1 |- a0:1", "rule": None, "witness": None, "children": []}],
    }))
    return str(path)


def test_check_proof(figure, tmp_path):
    assert run("check-proof", figure, "--system", "kct")[0] == 0
    assert run("check-proof", figure, "--system", "kct_h")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("check-proof", str(bad))[0] == 3
    assert run("check-proof", str(tmp_path / "missing.json"))[0] == 3


def test_eval_model(tmp_path):
    from test_semantics import MODEL

    path = tmp_path / "m.json"
    path.write_text(json.dumps(MODEL))
    assert run("eval-model", str(path), "|- _|_")[0] == 1
    assert run("eval-model", str(path), "|- a0:1 -> a0:1")[0] == 0
    assert run("eval-model", str(path), "|- a0:(0)('c)")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"carriers": {}}')
    assert run("eval-model", str(bad), "|- _|_")[0] == 3


def test_usage_error():
    assert run("frobnicate")[0] == 3
