import json
from pathlib import Path

import pytest

from braidhopf.cli import (OUT_DIR_ENV, SUITES, UsageError, load_subject, main, normalize_suites,
                           run_report, strip_timing)
from braidhopf.specfile import SpecParseError, build, load_spec, parse_spec_text, serialize
from braidhopf.zoo import ZooError, sweedler_h4, zoo_build, zoo_list

SPECS = Path(__file__).resolve().parent.parent / "specs"
KZ2 = (SPECS / "kz2.spec").read_text()


def _same_structure(a, b):
    names = ("m", "eta", "delta", "eps", "S", "mult", "unit", "action", "coaction")
    return all(getattr(a, n, None) == getattr(b, n, None) for n in names)


# --- spec files -------------------------------------------------------------------------

@pytest.mark.parametrize("entry", zoo_list(), ids=lambda e: e.name)
def test_round_trip(entry):
    obj = zoo_build(entry.name)
    text = serialize(obj, entry.name)
    again = build(parse_spec_text(text))
    assert serialize(again, entry.name) == text
    assert _same_structure(obj, again)


def test_shipped_sweedler_matches_zoo():
    H = load_spec(SPECS / "sweedler_h4.spec")
    ref = sweedler_h4()
    assert (H.m, H.eta, H.delta, H.eps, H.S) == (ref.m, ref.eta, ref.delta, ref.eps, ref.S)
    assert H.labels == ref.labels


def test_comments_and_blank_lines_ignored():
    text = "# header\n\n" + KZ2.replace("mult:", "mult:   # product") + "\n# trailer\n"
    assert build(parse_spec_text(text)).m == build(parse_spec_text(KZ2)).m


@pytest.mark.parametrize("text,line,column,fragment", [
    (KZ2.replace("backend: trivial", "backend: trivial\ncolour: red"), 6, 1, "unknown key"),
    (KZ2.replace("backend: trivial", "backend: trivial\nfield: rational"), 6, 1, "duplicate key"),
    (KZ2.replace("  1 1 0 1\nunit", "  1 1 5 1\nunit"), 10, 7, "out of range"),
    (KZ2.replace("  1 1 1 1\ncounit", "  1 1 1 z\ncounit"), 15, 9, "not available"),
    (KZ2.replace("  0 1 1 1\n", "  0 1 1 1\n  0 1 1 1\n"), 9, 3, "repeated"),
    (KZ2.replace("field: rational\n", "") + "field: rational\n", 6, 1, "before tensors"),
], ids=["unknown", "duplicate", "range", "z-over-Q", "repeat", "field-late"])
def test_parse_errors_located(text, line, column, fragment):
    with pytest.raises(SpecParseError) as exc:
        build(parse_spec_text(text))
    assert (exc.value.line, exc.value.column) == (line, column)
    assert fragment in str(exc.value)


def test_missing_block_rejected():
    text = KZ2.split("comult:")[0]
    with pytest.raises(SpecParseError) as exc:
        build(parse_spec_text(text))
    assert "comult" in str(exc.value)


def test_cyclotomic_scalars_parse():
    obj = zoo_build("taft", n=3)
    text = serialize(obj)
    assert "field: cyclotomic 3" in text and "z" in text
    assert build(parse_spec_text(text)).m == obj.m


# --- reports ----------------------------------------------------------------------------

def test_kz2_file_passes():
    R = run_report(str(SPECS / "kz2.spec"))
    assert R.ok and R.subject.kind == "hopf"
    assert R.as_dict()["input"]["digest"].startswith("sha256:")


def test_broken_assoc_fails_with_witness():
    R = run_report(str(SPECS / "broken_assoc.spec"), ["axioms"])
    assert not R.ok
    bad = [c for c in R.checks if c["status"] == "fail"]
    assoc = next(c for c in bad if c["name"].endswith("associativity"))
    assert assoc["witness"]["input"] == ["g", "g", "x"]


def test_gate_skips_theorem_suites():
    R = run_report(str(SPECS / "broken_assoc.spec"), ["integrals", "maschke"])
    skipped = [c for c in R.checks if c["suite"] in ("integrals", "maschke")]
    assert skipped and all(c["status"] == "skip" and c["detail"] == "structural axioms failed"
                           for c in skipped)


def test_sweedler_all_suites():
    R = run_report("zoo:sweedler_h4", ["all"])
    d = R.as_dict()
    assert d["ok"] and d["suites"] == list(SUITES)
    assert d["data"]["integrals"]
    for c in d["checks"]:
        if c["status"] == "skip":
            assert c.get("detail")


def test_braided_line_integrals_are_zero():
    R = run_report("zoo:braided_line", ["integrals"])
    d = R.as_dict()["data"]["integrals"]
    assert d["integrals_in"] == [] and d["dim_integrals_in"] == 0


def test_scalars_are_exact_strings():
    R = run_report("zoo:taft:n=3", ["integrals"])
    text = R.to_json()
    for col in R.data["integrals"]["integrals_in"]:
        assert all(isinstance(v, str) for v in col.values())
    assert "e-" not in text and "." not in json.dumps(R.data)


def test_empty_selection_has_no_checks():
    R = run_report("zoo:sweedler_h4", [])
    assert R.checks == [] and R.ok


def test_unknown_suite():
    with pytest.raises(UsageError):
        normalize_suites(["axioms,nonsense"])
    assert normalize_suites(["maschke,axioms"]) == ("axioms", "maschke")


def test_unknown_zoo_name():
    with pytest.raises(ZooError):
        load_subject("zoo:no_such_thing")


def test_object_subject_digest_matches_zoo():
    a = load_subject(sweedler_h4())
    b = load_subject(sweedler_h4())
    assert a.digest == b.digest and a.kind == "hopf"


@pytest.mark.parametrize("target", ["zoo:sweedler_h4", "zoo:nichols_yd:n=3", "zoo:sign_yd_module"])
def test_reports_deterministic(target):
    a = strip_timing(run_report(target).as_dict())
    b = strip_timing(run_report(target).as_dict())
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


# --- command line -------------------------------------------------------------------------

def test_main_exit_codes(tmp_path, capsys):
    assert main(["check", str(SPECS / "kz2.spec"), "--out", str(tmp_path / "a.json")]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["check", str(SPECS / "broken_assoc.spec"), "--out", str(tmp_path / "b.json")]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert main(["check", "zoo:nope"]) == 2
    assert main(["check", "zoo:sweedler_h4", "--suite", "bogus"]) == 2
    assert main(["frobnicate"]) == 2


def test_stdout_report(capsys):
    assert main(["check", "zoo:group_algebra:n=2", "--suite", "maschke"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["tool"] == "braidhopf" and d["ok"] and d["suites"] == ["maschke"]


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.spec"
    bad.write_text(KZ2.replace("backend: trivial", "backend: trivial\ncolour: red"))
    assert main(["check", str(bad)]) == 2
    assert "line 6" in capsys.readouterr().err


def test_out_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path))
    assert main(["check", "zoo:group_algebra", "--suite", "axioms", "--out", "sub/r.json"]) == 0
    written = json.loads((tmp_path / "sub" / "r.json").read_text())
    assert written["counts"]["fail"] == 0


def test_zoo_list(capsys):
    assert main(["zoo", "list"]) == 0
    out = capsys.readouterr().out
    for e in zoo_list():
        assert e.name in out


def test_zoo_dump_matches_shipped(tmp_path):
    out = tmp_path / "h4.spec"
    assert main(["zoo", "dump", "sweedler_h4", "--out", str(out)]) == 0
    assert out.read_text() == (SPECS / "sweedler_h4.spec").read_text()
    assert main(["check", str(out), "--suite", "axioms", "--out", str(tmp_path / "r.json")]) == 0


def test_file_digest_is_of_raw_bytes():
    import hashlib
    raw = (SPECS / "kz2.spec").read_bytes()
    assert load_subject(str(SPECS / "kz2.spec")).digest == hashlib.sha256(raw).hexdigest()
