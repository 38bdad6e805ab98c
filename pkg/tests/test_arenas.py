import pytest
from hypothesis import given, settings, strategies as st

from rce import arenas as AR
from rce import syntax as S
from rce.parser import parse_type

types = st.recursive(
    st.sampled_from([S.Zero(), S.One()]),
    lambda sub: st.one_of(
        st.builds(S.Sum, sub, sub),
        st.builds(S.Prod, sub, sub),
        st.builds(S.Arrow, sub, sub)),
    max_leaves=6)


def _base(a):
    return a.base if isinstance(a, AR.ExceptionArena) else a


@settings(max_examples=60, deadline=None)
@given(types, st.sampled_from(AR.MODES))
def test_computation_arena_is_a_forest(t, mode):
    a = _base(AR.denote_comp_type(t, mode))
    for m in a.moves:
        p = a.parent.get(m)
        assert p is None or p in a.moves
        seen = set()
        while m is not None:
            assert m not in seen  # acyclic
            seen.add(m)
            m = a.parent.get(m)


@settings(max_examples=60, deadline=None)
@given(types, st.sampled_from(AR.MODES))
def test_polarity_alternates_along_enabling(t, mode):
    a = _base(AR.denote_comp_type(t, mode))
    for m in a.moves:
        p = a.parent.get(m)
        if p is not None:
            assert a.polarity(m) != a.polarity(p)


@settings(max_examples=60, deadline=None)
@given(types, st.sampled_from(AR.MODES))
def test_answers_are_enabled_by_questions(t, mode):
    a = _base(AR.denote_comp_type(t, mode))
    for m in a.moves:
        if a.label[m] == AR.A:
            p = a.parent.get(m)
            assert p is not None and a.label[p] == AR.Q


def test_sigma0_is_one_question():
    a = AR.sigma0()
    assert set(a.moves) == {AR.ROOT_Q}
    assert a.label[AR.ROOT_Q] == AR.Q


def test_sigma1_is_question_and_answer():
    a = AR.sigma1()
    assert set(a.moves) == {AR.ROOT_Q, ("a", "*")}
    assert a.parent[("a", "*")] == AR.ROOT_Q


def test_computation_arena_has_single_root():
    for mode in AR.MODES:
        a = _base(AR.denote_comp_type(parse_type("(1 + 1) * 1"), mode))
        assert list(a.roots) == [AR.ROOT_Q]


@settings(max_examples=40, deadline=None)
@given(types)
def test_exception_arena_raises_everywhere(t):
    ea = AR.denote_comp_type(t, AR.EXCEPTION)
    questions = [m for m in ea.base.moves if ea.base.label[m] == AR.Q]
    assert set(ea.e_answer) == set(questions)
    for q, e in ea.e_answer.items():
        assert ea.base.parent[e] == q
        assert ea.base.label[e] == AR.A


@settings(max_examples=40, deadline=None)
@given(types)
def test_erasure_removes_exactly_the_exception_answers(t):
    ea = AR.denote_comp_type(t, AR.EXCEPTION)
    k = AR.erase_exception_answers(ea)
    assert set(k.moves) == set(ea.base.moves) - set(ea.e_answer.values())


@settings(max_examples=40, deadline=None)
@given(types)
def test_control_shares_the_plain_arena(t):
    a = AR.denote_comp_type(t, AR.PLAIN)
    b = AR.denote_comp_type(t, AR.CONTROL)
    assert a.canonical_form() == b.canonical_form()


def test_relabel_answers_as_questions():
    u = AR.relabel_answers_as_questions(AR.sigma1())
    assert all(u.label[m] == AR.Q for m in u.moves)


def test_are_isomorphic_respects_labels():
    assert AR.are_isomorphic(AR.sigma1(), AR.sigma1())
    assert not AR.are_isomorphic(
        AR.sigma1(), AR.function_space(AR.sigma0(), AR.sigma0()))


def test_arena_edges_format():
    lines = AR.arena_edges(AR.denote_comp_type(S.One(), AR.EXCEPTION))
    assert "* -> ('q',) [Q]" in lines
    assert "('q',) -> ('e',) [A] [E]" in lines


def test_cps_iso_self_validates():
    iso = AR.cps_iso(parse_type("1 -> 1"))
    assert iso.move_maps
