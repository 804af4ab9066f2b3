import json
import subprocess
import sys

import pytest

from tfocalc.cli import main
from tfocalc.corpus import path

CORPUS = lambda name: str(path(name))  # noqa: E731


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_ok(capsys):
    code, out, _ = run(capsys, "check", CORPUS("extav.prf"))
    assert code == 0 and out.startswith("ok\textav")


def test_check_failure_reports_kind(capsys):
    code, out, err = run(capsys, "check", CORPUS("russell_nf_mustfail.prf"))
    assert code == 3 and out.startswith("fail")
    assert "stratification" in err


def test_system_override(capsys):
    code, _, err = run(capsys, "check", CORPUS("iota_contradiction.prf"), "--system", "GSNF")
    assert code == 3 and "rule-not-in-system" in err


def test_missing_file(capsys):
    assert run(capsys, "check", "/nonexistent/x.prf")[0] == 1


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.prf"
    bad.write_text("system GC\nproof p\n1. => P( ; Ax\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "bad.prf" in err


def test_unknown_system(capsys):
    assert run(capsys, "check", CORPUS("extav.prf"), "--system", "GQQ")[0] == 2


def test_stratify(capsys):
    code, out, _ = run(capsys, "stratify", "x in y & y in z")
    assert code == 0 and out.strip() == "stratified: x:0 y:1 z:2"
    assert run(capsys, "stratify", "not (x in x)")[0] == 3
    assert run(capsys, "stratify", "x in (")[0] == 2


def test_search_found_and_exhausted(capsys):
    code, out, _ = run(capsys, "search", "P(a) & Q(a) => Q(a) & P(a)", "--system", "GC")
    assert code == 0 and "and=>" in out
    code, out, _ = run(capsys, "search", "P(a) => Q(a)", "--system", "GC", "--depth", "4")
    assert code == 4 and out.startswith("exhausted")


def test_search_output_rechecks(tmp_path, capsys):
    code, out, _ = run(capsys, "search", "=> forall x (P(x) -> P(x))", "--system", "GPC")
    assert code == 0
    f = tmp_path / "found.prf"
    f.write_text(out)
    assert run(capsys, "check", str(f))[0] == 0


def test_cutelim_writes_cut_free_script(tmp_path, capsys):
    target = tmp_path / "cf.prf"
    code, _, err = run(capsys, "cutelim", CORPUS("thm2_aintro.prf"), "-o", str(target), "--trace")
    assert code == 0 and "-> 0" in err and "principal-both" in err
    code, out, _ = run(capsys, "check", str(target))
    assert code == 0 and out.rstrip().endswith("cuts=0")


def test_cutelim_refusal(capsys):
    assert run(capsys, "cutelim", CORPUS("extav_rule_gci.prf"))[0] == 3


def test_export_import_pipeline(tmp_path, capsys):
    doc = tmp_path / "p.json"
    assert run(capsys, "export", CORPUS("ll_case3.prf"), "--format", "json", "-o", str(doc))[0] == 0
    assert json.loads(doc.read_text())["system"] == "GS"
    script = tmp_path / "p.prf"
    assert run(capsys, "import", str(doc), "-o", str(script))[0] == 0
    assert run(capsys, "check", str(script))[0] == 0


def test_export_latex(capsys):
    code, out, _ = run(capsys, "export", CORPUS("extav.prf"), "--format", "latex-bussproofs")
    assert code == 0 and "\\begin{prooftree}" in out


def test_import_rejects_garbage(tmp_path, capsys):
    f = tmp_path / "x.json"
    f.write_text('{"schema": "tfocalc.proof", "version": 7}')
    assert run(capsys, "import", str(f))[0] == 2


def test_corpus_and_catalog(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and "18/18" in out
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "GTNF'" in out and "[experimental]" in out
    code, out, _ = run(capsys, "catalog", "GS")
    assert code == 0 and "| Ext |" in out


def test_no_ansi_when_disabled(monkeypatch):
    monkeypatch.setenv("TFO_COLOR", "0")
    r = subprocess.run([sys.executable, "-m", "tfocalc", "check", CORPUS("eigen_mustfail.prf")],
                       capture_output=True, text=True)
    assert r.returncode == 3 and "\033[" not in r.stderr and "eigenvariable" in r.stderr


def test_missing_subcommand():
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
