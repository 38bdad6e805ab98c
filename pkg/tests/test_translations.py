import pytest

from rce import machine as MA
from rce import syntax as S
from rce import translations as TR
from rce.parser import parse_comp, parse_type
from rce.typecheck import TypecheckError


def test_exn_type_translation_adds_error_summand_to_arrows():
    t = parse_type("( 1 -> 1 ) -> 1")
    assert TR.exn_translate_type(t) == parse_type(
        "( 1 -> ( 1 + 1 ) ) -> ( 1 + 1 )")


def test_cps_type_translation_double_negates_arrows():
    t = parse_type("1 -> 1")
    assert TR.cps_translate_type(t) == parse_type("( 1 * ( 1 -> 0 ) ) -> 0")


def test_exn_image_is_exception_free(corpus_program):
    out = TR.exn_translate(corpus_program.program)
    assert TR.in_fragment_rc(out.term)


def test_exn_image_typechecks_at_translated_type():
    prog = parse_comp("let e = new_exn () in catch e in throw(e); [()]")
    out = TR.exn_translate(prog)
    assert out.type == S.Sum(S.One(), S.One())
    assert TR.check_against(out.term, out.type) == out.type


def test_exn_image_converges_to_ok_summand():
    prog = parse_comp("let e = new_exn () in catch e in throw(e); [()]")
    out = TR.exn_translate(prog)
    assert MA.run(out.term) == MA.Converged(S.Inj1(S.Unit()))


def test_exn_image_reifies_uncaught_exception():
    prog = parse_comp("let e = new_exn () in throw(e); [()]")
    out = TR.exn_translate(prog)
    assert MA.run(out.term) == MA.Converged(S.Inj2(S.Unit()))


def test_cps_rejects_exception_constructs():
    prog = parse_comp("let e = new_exn () in throw(e); [()]")
    with pytest.raises(TypecheckError):
        TR.cps_translate(prog)


def test_cps_image_is_pure(corpus_program):
    exn = TR.exn_translate(corpus_program.program)
    cps = TR.cps_translate(exn.term, expected=exn.type)
    assert TR.in_fragment_r(cps.term)


def test_cps_of_callcc_is_continuation_free():
    prog = parse_comp("callcc (\\k. k ())")
    cps = TR.cps_translate(prog)
    assert TR.in_fragment_r(cps.term)


def test_top_driver_reaches_tau_iff_ok():
    conv = TR.exn_translate(parse_comp("[()]"))
    cps = TR.cps_translate(conv.term, expected=conv.type)
    rep = TR.check_translation_soundness(parse_comp("[()]"))
    assert rep.cps_leg is True
    rep = TR.check_translation_soundness(
        parse_comp("let e = new_exn () in throw(e); [()]"))
    assert rep.cps_leg is False
    assert cps is not None


def test_soundness_report_agreement():
    rep = TR.check_translation_soundness(
        parse_comp("let e = new_exn () in catch e in throw(e); [()]"))
    assert rep.direct is True
    assert rep.exn_leg is True
    assert rep.cps_leg is True
    assert rep.agree and rep.conclusive


def test_soundness_report_inconclusive_on_divergence():
    prog = parse_comp(
        "new r [ 1 -> 1 ] := (\\x. [x]). "
        "r := (\\x. let g = deref(r) in g x); "
        "let g = deref(r) in g ()")
    rep = TR.check_translation_soundness(prog, fuel=300)
    assert rep.direct is None
    assert not rep.conclusive
    assert rep.agree
