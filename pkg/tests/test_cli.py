import json

import pytest

from corkcalc import datum as datum_io
from corkcalc.cli import main
from corkcalc.families import build_W, build_X
from corkcalc.moves import Recorder, trace_to_text
from corkcalc.scripts import deletion_script


def run(args):
    return main(args)


def test_gen_head_family(tmp_path):
    out = tmp_path / "c31.json"
    assert run(["gen", "C", "3", "1", "-o", str(out)]) == 0
    d = datum_io.loads(out.read_text())
    assert d.meta_map["sequence"] == "*00"


def test_gen_round_trip_is_identical(tmp_path):
    out = tmp_path / "x.json"
    assert run(["gen", "X", "4", "2", "--seq", "*0*0", "-o", str(out)]) == 0
    d = datum_io.loads(out.read_text())
    assert d == build_X(4, 2, "*0*0")
    assert datum_io.dumps(d) == out.read_text()


def test_gen_alternating_wheel(tmp_path):
    out = tmp_path / "f.json"
    assert run(["gen", "F", "2", "2", "-o", str(out)]) == 0
    assert datum_io.loads(out.read_text()).meta_map["sequence"] == "0*0*"


def test_gen_bad_parameters_exit_2(tmp_path):
    assert run(["gen", "C", "0", "1", "-o", str(tmp_path / "x.json")]) == 2
    assert run(["gen", "X", "3", "1", "-o", str(tmp_path / "x.json")]) == 2
    assert run(["gen", "Z", "3", "1", "-o", str(tmp_path / "x.json")]) == 2
    assert run(["gen", "Q", "3", "1"]) == 2


def test_invariants_report_fields(tmp_path, capsys):
    path = tmp_path / "c11.json"
    run(["gen", "C", "1", "1", "-o", str(path)])
    assert run(["invariants", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {"h1", "b2", "boundary_invariants", "is_homology_sphere",
                           "pi1_certified_trivial", "form_diag_minus_one"}
    assert report["b2"] == 0 and report["is_homology_sphere"]
    assert report["pi1_certified_trivial"] is True


def test_invariants_of_decorated_wheel(tmp_path, capsys):
    path = tmp_path / "w31.json"
    path.write_text(datum_io.dumps(build_W(3, 1)))
    assert run(["invariants", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["b2"] == 3
    assert report["form_diag_minus_one"] is True


def test_invariants_on_truncated_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    good = datum_io.dumps(build_X(2, 1, "*0"))
    path.write_text(good[: len(good) // 2])
    assert run(["invariants", str(path)]) == 2


def test_invariants_missing_file_exit_3(tmp_path):
    assert run(["invariants", str(tmp_path / "nope.json")]) == 3


def test_verify_small_sweep(tmp_path):
    out = tmp_path / "r.json"
    assert run(["verify", "lemma-2-2", "--n-max", "3", "--m-max", "1",
                "-o", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["passed"] and report["total"] == 14


def test_verify_alias(tmp_path):
    out = tmp_path / "r.json"
    assert run(["verify", "contractibility", "--n-max", "2", "--m-max", "1",
                "-o", str(out)]) == 0


def test_verify_unknown_suite():
    assert run(["verify", "no-such-suite"]) == 2


def test_verify_surface_sum_single_pair(tmp_path, capsys):
    assert run(["verify", "thm-1-7-arith", "--l", "2", "--n", "3"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["total"] == 1
    assert "fails" in report["cases"][0]["details"]  # embedding precondition reported


def test_verify_markdown_format(capsys):
    assert run(["verify", "cork-order", "--n-max", "3", "--format", "md"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("#")


def test_replay_with_declared_target(tmp_path, capsys):
    datum_path = tmp_path / "x.json"
    run(["gen", "X", "3", "1", "--seq", "*00", "-o", str(datum_path)])
    trace = deletion_script(3, 1, "*00", 2)
    trace_path = tmp_path / "d.trace"
    trace_path.write_text(trace_to_text(trace))
    out_path = tmp_path / "result.json"
    assert run(["replay", str(datum_path), str(trace_path),
                "--out-datum", str(out_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["integrity"] == "ok" and report["target_isomorphic"]
    assert datum_io.loads(out_path.read_text()).two_handles


def test_replay_tampered_trace_exit_1(tmp_path, capsys):
    datum_path = tmp_path / "x.json"
    run(["gen", "X", "3", "1", "--seq", "*00", "-o", str(datum_path)])
    text = trace_to_text(deletion_script(3, 1, "*00", 2))
    trace_path = tmp_path / "bad.trace"
    trace_path.write_text(text.replace('"framing": 0', '"framing": 1', 1))
    assert run(["replay", str(datum_path), str(trace_path)]) == 1


def test_replay_wrong_target_exit_1(tmp_path, capsys):
    d = build_X(2, 1, "*0")
    datum_path = tmp_path / "x.json"
    datum_path.write_text(datum_io.dumps(d))
    rec = Recorder(d, target={"family": "X", "n": 2, "m": 1, "sequence": "00"})
    rec.apply("rotate", i=1)
    trace_path = tmp_path / "t.trace"
    trace_path.write_text(trace_to_text(rec.trace()))
    assert run(["replay", str(datum_path), str(trace_path)]) == 1


def test_simplify_command(tmp_path, capsys):
    pres = tmp_path / "p.json"
    pres.write_text(json.dumps({"generators": ["a"], "relators": [["a"]]}))
    assert run(["simplify", str(pres)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["certified_trivial"] is True


def test_simplify_bad_file_exit_2(tmp_path):
    pres = tmp_path / "p.json"
    pres.write_text("{]")
    assert run(["simplify", str(pres)]) == 2


def test_stein_check_command(tmp_path):
    datum_path = tmp_path / "c21.json"
    run(["gen", "C", "2", "1", "-o", str(datum_path)])
    from corkcalc.families import data_dir
    front_path = data_dir() / "fronts" / "C_2_1.front"
    assert run(["stein-check", str(datum_path), str(front_path)]) == 0


def test_stein_check_failure_exit_1(tmp_path, capsys):
    # wrong wheel size: every handle still maps, but framings disagree with tb
    datum_path = tmp_path / "w.json"
    d = build_X(1, 1, "*")
    bad = d.replace(two_handles=tuple(
        h.__class__(h.id, h.word, -3, h.linking) for h in d.two_handles))
    datum_path.write_text(datum_io.dumps(bad))
    from corkcalc.families import data_dir
    front_path = data_dir() / "fronts" / "C_1_1.front"
    assert run(["stein-check", str(datum_path), str(front_path)]) == 1
