import pytest
from hypothesis import given, strategies as st

from rce import syntax as S
from rce.parser import ParseError, parse_comp, parse_type, parse_value

types = st.recursive(
    st.sampled_from([S.Zero(), S.One()]),
    lambda sub: st.one_of(
        st.builds(S.Sum, sub, sub),
        st.builds(S.Prod, sub, sub),
        st.builds(S.Arrow, sub, sub)),
    max_leaves=8)


@given(types)
def test_type_print_parse_roundtrip(t):
    assert parse_type(S.print_type(t)) == t


def test_comp_print_parse_roundtrip(corpus):
    for p in corpus:
        text = S.print_comp(p.program)
        assert parse_comp(text) == p.program, p.name


def test_parse_value_shapes():
    assert parse_value("()") == S.Unit()
    assert parse_value("<(), ()>") == S.Pair(S.Unit(), S.Unit())
    assert parse_value("in1(())") == S.Inj1(S.Unit())
    assert parse_value("tt") == S.Inj1(S.Unit())
    assert parse_value("ff") == S.Inj2(S.Unit())


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse_comp("let x = in")
    with pytest.raises(ParseError):
        parse_type("1 +")


def test_subst_replaces_free_occurrences():
    body = parse_comp("let y = [x] in [y]")
    out = S.subst(body, "x", S.Unit())
    assert out == parse_comp("let y = [()] in [y]")


def test_subst_respects_shadowing():
    body = parse_comp("let x = [()] in [x]")
    assert S.subst(body, "x", S.Inj1(S.Unit())) == body


def test_subst_avoids_capture():
    # substituting a value whose free variable collides with a binder
    body = parse_comp("(\\y. [x]) ()")
    out = S.subst(body, "x", S.Var("y"))
    lam = out.fun
    assert isinstance(lam, S.Lambda)
    assert lam.var != "y"
    assert lam.body == S.Return(S.Var("y"))


def test_free_vars():
    m = parse_comp("let y = [x] in z y")
    assert S.free_vars(m) == frozenset({"x", "z"})
