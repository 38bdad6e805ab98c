import pytest

from rce import machine as MA
from rce import syntax as S
from rce.parser import parse_comp


def run(src, fuel=10000):
    return MA.run(parse_comp(src), fuel=fuel)


def test_return_is_terminal():
    assert run("[()]") == MA.Converged(S.Unit())


def test_let_sequencing():
    assert run("let x = [tt] in [x]") == MA.Converged(S.Inj1(S.Unit()))


def test_application_beta():
    assert run("(\\x. [x]) ff") == MA.Converged(S.Inj2(S.Unit()))


def test_match_and_case():
    assert run("match <tt, ff> as (x, y). [y]") \
        == MA.Converged(S.Inj2(S.Unit()))
    assert run("case in2(()) as in1(x). [tt] | in2(y). [ff]") \
        == MA.Converged(S.Inj2(S.Unit()))


def test_conditional():
    assert run("if tt then [ff] else [tt]") == MA.Converged(S.Inj2(S.Unit()))


def test_store_read_after_write():
    out = run("new r [ 1 + 1 ] := tt. r := ff ; deref(r)")
    assert out == MA.Converged(S.Inj2(S.Unit()))


def test_fresh_locations_are_distinct():
    out = run("new r [ 1 + 1 ] := tt. new s [ 1 + 1 ] := ff. "
              "s := tt ; deref(r)")
    assert out == MA.Converged(S.Inj1(S.Unit()))


def test_catch_intercepts_throw():
    out = run("let e = new_exn () in catch e in throw(e); [tt]")
    assert out == MA.Converged(S.Inj1(S.Unit()))


def test_uncaught_throw_escapes():
    out = run("let e = new_exn () in throw(e); [()]")
    assert isinstance(out, MA.UncaughtException)


def test_outer_catch_gets_rethrow():
    out = run("let e = new_exn () in "
              "catch e in (catch e in throw(e); throw(e)); [()]")
    assert out == MA.Converged(S.Unit())


def test_distinct_exceptions_do_not_interfere():
    out = run("let e1 = new_exn () in let e2 = new_exn () in "
              "catch e1 in throw(e2); [()]")
    assert isinstance(out, MA.UncaughtException)


def test_handle_runs_handler_on_throw():
    out = run("let e = new_exn () in handle e in (throw(e); [tt]) with [ff]")
    assert out == MA.Converged(S.Inj2(S.Unit()))


def test_callcc_invokes_continuation():
    out = run("callcc (\\k. k tt)")
    assert out == MA.Converged(S.Inj1(S.Unit()))


def test_callcc_plain_return():
    out = run("callcc [1, 0] (\\k. [()])")
    assert out == MA.Converged(S.Unit())


def test_out_of_fuel_on_divergence():
    src = ("new r [ 1 -> 1 ] := (\\x. [x]). "
           "r := (\\x. let g = deref(r) in g x); "
           "let g = deref(r) in g ()")
    out = run(src, fuel=300)
    assert out == MA.OutOfFuel(300)
    with pytest.raises(MA.Inconclusive):
        MA.converges(parse_comp(src), fuel=300)


def test_stuck_configuration_reported():
    out = MA.run(parse_comp("() ()"))
    assert isinstance(out, MA.Stuck)


def test_converges_on_corpus_expectations(corpus_program):
    p = corpus_program
    assert MA.converges(p.program, fuel=10000) == p.expect_converges


def test_trace_records_every_configuration():
    trace = []
    MA.run(parse_comp("let x = [()] in [x]"), trace=trace)
    assert len(trace) >= 2
    assert trace[0].comp == parse_comp("let x = [()] in [x]")
