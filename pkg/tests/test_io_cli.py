import io
import json
import subprocess
import sys

import pytest

from snelling import cli
from snelling import generators as g
from snelling import hecke as h
from snelling.io import (
    LabelOnNonCover,
    MalformedJson,
    UnknownElement,
    parse_action_file,
    parse_poset_file,
    write_action,
    write_poset,
)

from conftest import LABELED


def names_of(P):
    return sorted(P.names), sorted(P.named_covers())


def named_labels(P, lab):
    return {(P.name(a), P.name(b)): v for (a, b), v in lab.items()}


def test_minimal_two_chain():
    P, lab = parse_poset_file(b'{"elements": ["a", "b"], "covers": [["a", "b"]]}')
    assert len(P) == 2 and P.lt("a", "b") and lab is None


def test_transitive_cover_is_tolerated(caplog):
    doc = {"elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"], ["a", "c"]]}
    P, _ = parse_poset_file(json.dumps(doc))
    assert P.named_covers() == {("a", "b"), ("b", "c")}
    assert caplog.records


def test_label_on_non_cover():
    doc = {"elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"]], "labels": {"a|c": 1}}
    with pytest.raises(LabelOnNonCover):
        parse_poset_file(json.dumps(doc))


@pytest.mark.parametrize(
    "text, exc",
    [
        (b"{not json", MalformedJson),
        (b"\xff\xfe", MalformedJson),
        (b"[]", MalformedJson),
        (b'{"elements": ["a"], "covers": [["a"]]}', MalformedJson),
        (b'{"elements": ["a", "b"], "covers": [["a", "b"]], "labels": {"a|b": "1"}}', MalformedJson),
        (b'{"elements": ["a", "b"], "covers": [["a", "b"]], "labels": {"a|z": 1}}', UnknownElement),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_poset_file(text)


def test_label_keys_with_bars_in_names():
    doc = {"elements": ["x|y", "z"], "covers": [["x|y", "z"]], "labels": {"x|y|z": 1}}
    P, lab = parse_poset_file(json.dumps(doc))
    assert named_labels(P, lab) == {("x|y", "z"): 1}


@pytest.mark.parametrize("name", sorted(LABELED))
def test_poset_round_trip(name):
    P, lab = LABELED[name]
    text = write_poset(P, lab)
    Q, lab2 = parse_poset_file(text)
    assert names_of(Q) == names_of(P)
    assert named_labels(Q, lab2) == named_labels(P, lab)
    assert write_poset(Q, lab2) == text


def test_action_round_trip(tmp_path):
    P, A = g.fixture_bowtie_good_action()
    B = parse_action_file(write_action(A))
    assert [B.chain_names(c) for c in range(len(B.chains))] == [A.chain_names(c) for c in range(len(A.chains))]
    assert B.table == A.table
    (tmp_path / "p.json").write_text(write_poset(P))
    C = parse_action_file(write_action(A, poset="p.json"), base=tmp_path)
    assert C.table == A.table


def test_action_must_list_every_chain():
    P, A = g.fixture_bowtie_good_action()
    doc = json.loads(write_action(A))
    doc["chains"] = doc["chains"][:-1]
    with pytest.raises(h.ActionError):
        parse_action_file(json.dumps(doc))
    doc = json.loads(write_action(A))
    doc["U"] = doc["U"][:1]
    with pytest.raises(h.ActionError):
        parse_action_file(json.dumps(doc))


# command line


def run_cli(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(stdin.encode())))
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_then_verify_snelling(capsys, monkeypatch):
    code, doc, _ = run_cli(["gen", "bn", "3"], capsys)
    assert code == 0
    code, out, _ = run_cli(["verify-snelling"], capsys, doc, monkeypatch)
    assert code == 0 and out.startswith("PASS")


def test_bowtie_action_reconstruct_is_ambiguous(capsys, monkeypatch):
    code, doc, _ = run_cli(["fixture", "bowtie-action"], capsys)
    assert code == 0
    code, out, _ = run_cli(["reconstruct"], capsys, doc, monkeypatch)
    assert code == 1 and "FAIL" in out + _ and "AmbiguousPermutation" in out + _


def test_supersolvable_both_methods_on_nc4(capsys, monkeypatch):
    _, doc, _ = run_cli(["gen", "nc", "4"], capsys)
    code, out, _ = run_cli(["--json", "supersolvable", "--method", "both"], capsys, doc, monkeypatch)
    report = json.loads(out)
    assert code == 0 and report["ok"] and report["format"] == 1


def test_negative_verdicts_exit_one(tmp_path, capsys):
    P, lab = g.fixture_b4_minus_edge()
    path = tmp_path / "b4.json"
    path.write_text(write_poset(P, lab))
    code, out, _ = run_cli(["--json", "check-lattice", str(path)], capsys)
    report = json.loads(out)
    assert code == 1 and not report["ok"] and report["witness"]
    P, _ = g.fixture_bowtie_good_action()
    path = tmp_path / "bowtie.json"
    path.write_text(write_poset(P))
    assert run_cli(["find-snelling", str(path)], capsys)[0] == 1
    assert run_cli(["check-bowtie", str(path)], capsys)[0] == 1


def test_input_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run_cli(["check-graded", str(bad)], capsys)[0] == 2
    assert run_cli(["check-graded", str(tmp_path / "missing.json")], capsys)[0] == 2
    bad.write_text(json.dumps({"elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"]], "labels": {"a|c": 1}}))
    assert run_cli(["verify-el", str(bad)], capsys)[0] == 2
    code, out, _ = run_cli(["--json", "gen", "jperm", "2213"], capsys)
    assert code == 2 and json.loads(out)["error"]


def test_unlabeled_input_to_labeled_verb(tmp_path, capsys):
    P, _ = g.gen_boolean(2)
    path = tmp_path / "b2.json"
    path.write_text(write_poset(P))
    assert run_cli(["verify-snelling", str(path)], capsys)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["check-graded"],
        ["flag-vectors"],
        ["fp", "--vars", "2"],
        ["fp", "--omega"],
        ["verify-el"],
        ["find-snelling"],
        ["supersolvable", "--method", "direct"],
        ["qm", "--chain", "0"],
    ],
)
def test_json_reports_are_deterministic(tmp_path, capsys, argv):
    P, lab = g.gen_partition_lattice(4)
    path = tmp_path / "pi4.json"
    path.write_text(write_poset(P, lab))
    first = run_cli(["--json", *argv, str(path)], capsys)
    second = run_cli(["--json", *argv, str(path)], capsys)
    assert first == second
    assert first[0] == 0
    assert json.loads(first[1])["format"] == 1


def test_qm_chain_by_names(tmp_path, capsys):
    P, lab = g.gen_noncrossing(4)
    path = tmp_path / "nc4.json"
    path.write_text(write_poset(P, lab))
    code, out, _ = run_cli(["--json", "qm", "--chain", "1-2-3-4<24-1-3<234-1<1234", str(path)], capsys)
    assert code == 0
    assert json.loads(out)["ok"]


def test_build_action_reconstruct_pipeline(tmp_path, capsys, monkeypatch):
    _, doc, _ = run_cli(["gen", "pi", "4"], capsys)
    _, action_doc, _ = run_cli(["build-action"], capsys, doc, monkeypatch)
    code = run_cli(["verify-good"], capsys, action_doc, monkeypatch)[0]
    assert code == 0
    _, rebuilt, _ = run_cli(["reconstruct"], capsys, action_doc, monkeypatch)
    Q, lab = parse_poset_file(rebuilt)
    P, lab0 = g.gen_partition_lattice(4)
    assert named_labels(Q, lab) == named_labels(P, lab0)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, err = run_cli(["gen", "chain", "3", "-o", str(target)], capsys)
    assert code == 0 and out == ""
    P, lab = parse_poset_file(target.read_bytes())
    assert len(P) == 4


def test_console_pipeline_in_subprocesses():
    exe = [sys.executable, "-c", "from snelling.cli import main; main()"]
    gen = subprocess.run(exe + ["gen", "bn", "3"], capture_output=True, check=True)
    check = subprocess.run(exe + ["verify-snelling"], input=gen.stdout, capture_output=True)
    assert check.returncode == 0
