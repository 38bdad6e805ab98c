import pytest

from rce import syntax as S
from rce.parser import parse_comp, parse_value
from rce.typecheck import TypecheckError, typecheck, typecheck_comp, \
    typecheck_value


def test_unit_value():
    assert typecheck_value(None, S.Unit()) == S.One()


def test_pair_type():
    assert typecheck_value(None, parse_value("<(), ()>")) \
        == S.Prod(S.One(), S.One())


def test_bare_injection_needs_annotation():
    # tt = in1(()) leaves the right summand undetermined
    with pytest.raises(TypecheckError):
        typecheck_value(None, parse_value("tt"))
    assert typecheck_value(None, parse_value("tt"), strict=False) is not None


def test_lambda_type_inferred_from_use():
    t = typecheck_comp(None, parse_comp("(\\x. if x then [()] else [()]) tt"))
    assert t == S.One()


def test_annotation_drives_cell_type():
    t = typecheck_comp(None, parse_comp(
        "new r [ 1 + 1 ] := tt. deref(r)"))
    assert t == S.Sum(S.One(), S.One())


def test_catch_body_must_be_empty_type():
    with pytest.raises(TypecheckError):
        typecheck_comp(None, parse_comp(
            "let e = new_exn () in catch e in [()]; [()]"))


def test_throw_has_empty_type():
    typecheck_comp(None, parse_comp(
        "let e = new_exn () in catch e in throw(e); [()]"))


def test_ill_typed_application_rejected():
    with pytest.raises(TypecheckError):
        typecheck_comp(None, parse_comp("(\\x. x ()) ()"))


def test_unbound_variable_rejected():
    with pytest.raises(TypecheckError):
        typecheck_comp(None, parse_comp("[x]"))


def test_branch_types_must_agree():
    with pytest.raises(TypecheckError):
        typecheck_comp(None, parse_comp("if tt then [()] else [tt]"))


def test_callcc_annotation():
    t = typecheck_comp(None, parse_comp("callcc [1, 0] (\\k. [()])"))
    assert t == S.One()


def test_typecheck_accepts_values_and_comps():
    assert typecheck(parse_value("()")) == S.One()
    assert typecheck(parse_comp("[()]")) == S.One()


def test_corpus_typechecks_at_unit(corpus_program):
    assert typecheck_comp(None, corpus_program.program) == S.One()
