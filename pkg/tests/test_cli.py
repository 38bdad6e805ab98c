import os
import shutil

import pytest

from rce import cli
from rce import plays as PL
from rce import strategies as ST
from rce import syntax as S
from rce.parser import parse_comp

from conftest import CORPUS_DIR


@pytest.fixture
def small_corpus(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    for name in ("01-unit.rce", "12-throw-uncaught.rce"):
        shutil.copy(os.path.join(CORPUS_DIR, name), d / name)
    return str(d)


@pytest.fixture
def diverging_corpus(tmp_path):
    d = tmp_path / "div"
    d.mkdir()
    (d / "loop.rce").write_text(
        "-- expect: diverges\n"
        "new r [ 1 -> 1 ] := (\\x. [x]).\n"
        "r := (\\x. let g = deref(r) in g x);\n"
        "let g = deref(r) in g ()\n")
    return str(d)


def corpus_file(name):
    return os.path.join(CORPUS_DIR, name)


def test_run_reports_convergence(capsys):
    assert cli.main(["run", corpus_file("01-unit.rce")]) == 0
    out = capsys.readouterr().out
    assert "converged: ()" in out


def test_run_reports_uncaught_exception(capsys):
    assert cli.main(["run", corpus_file("12-throw-uncaught.rce")]) == 1
    assert "uncaught exception" in capsys.readouterr().out


def test_run_trace_prints_configurations(capsys):
    cli.main(["run", corpus_file("02-let-chain.rce"), "--trace"])
    out = capsys.readouterr().out.splitlines()
    assert sum(1 for line in out if "| store:" in line) >= 2


def test_translate_output_reparses(capsys):
    cli.main(["translate", corpus_file("13-catch-basic.rce"),
              "--pass", "exn"])
    parse_comp(capsys.readouterr().out)


def test_translate_both_has_sections(capsys):
    cli.main(["translate", corpus_file("01-unit.rce"), "--pass", "both"])
    out = capsys.readouterr().out
    assert "-- exn:" in out and "-- cps:" in out


def test_arena_edge_lines(capsys):
    assert cli.main(["arena", "1", "--mode", "exception"]) == 0
    out = capsys.readouterr().out
    assert "('q',) -> ('e',) [A] [E]" in out


def test_arena_dot_output(capsys):
    cli.main(["arena", "1", "--dot"])
    out = capsys.readouterr().out
    assert out.startswith("digraph arena {")
    assert out.rstrip().endswith("}")


def test_denote_emits_parseable_traces(capsys):
    cli.main(["denote", corpus_file("01-unit.rce"), "--mode", "control",
              "--depth", "4"])
    out = capsys.readouterr().out
    block = out.split("\n\n")[0]
    arena = ST.denote(parse_comp("[()]"), ST.CONTROL,
                      expected=S.One()).arena
    play = PL.parse_trace(block, arena)
    assert PL.is_legal_control(play)


def test_check_single_file(capsys):
    assert cli.main(["check", corpus_file("13-catch-basic.rce")]) == 0
    out = capsys.readouterr().out
    assert "agree" in out and "yes" in out


def test_check_directory_table(small_corpus, capsys):
    rc = cli.main(["check", small_corpus, "--internal-fuel", "200",
                   "--depth", "6"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "01-unit.rce" in out and "12-throw-uncaught.rce" in out
    assert "2/2 pass" in out


def test_check_tsv_is_deterministic(small_corpus, capsys):
    args = ["check", small_corpus, "--internal-fuel", "200",
            "--depth", "6", "--tsv"]
    cli.main(args)
    first = capsys.readouterr().out
    cli.main(args)
    second = capsys.readouterr().out
    assert first == second
    rows = [line.split("\t") for line in first.strip().splitlines()]
    assert rows[0] == cli._COLUMNS
    assert all(len(r) == len(cli._COLUMNS) for r in rows)
    assert [r[0] for r in rows[1:]] == sorted(r[0] for r in rows[1:])


def test_check_inconclusive_exit_codes(diverging_corpus, capsys):
    rc = cli.main(["check", diverging_corpus, "--fuel", "300",
                   "--internal-fuel", "20", "--depth", "6"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "inconclusive-fuel" in out
    rc = cli.main(["check", diverging_corpus, "--fuel", "300",
                   "--internal-fuel", "20", "--depth", "6",
                   "--allow-inconclusive"])
    capsys.readouterr()
    assert rc == 0


def test_check_env_var_sets_default_corpus(small_corpus, capsys,
                                           monkeypatch):
    monkeypatch.setenv(cli.CORPUS_ENV, small_corpus)
    rc = cli.main(["check", "--internal-fuel", "200", "--depth", "6"])
    out = capsys.readouterr().out
    assert rc == 0 and "01-unit.rce" in out


def test_laws_small_run(capsys):
    assert cli.main(["laws", "--trials", "2", "--depth", "6"]) == 0
    out = capsys.readouterr().out
    assert "all laws hold" in out
    assert "expected counterexample" in out


def test_explore_session(capsys, monkeypatch):
    feed = iter(["0", "q"])
    monkeypatch.setattr("builtins.input", lambda *a: next(feed))
    assert cli.main(["explore", corpus_file("01-unit.rce"),
                     "--mode", "control"]) == 0
    out = capsys.readouterr().out
    assert "[0]" in out
    assert "1 ('a','*') P A just=0 ctl=-" in out


def test_parse_error_is_reported(tmp_path, capsys):
    bad = tmp_path / "bad.rce"
    bad.write_text("let x =")
    assert cli.main(["run", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
