import random

import pytest

from rce import arenas as AR
from rce import plays as PL
from rce import strategies as ST
from rce import syntax as S
from rce.plays import JustifiedSequence as JS, MoveOccurrence as MO, STAR

S1 = AR.sigma1()


def test_identity_copies_the_question_and_mirrors_the_answer():
    ident = ST.identity(S1)
    pos = JS(ident.arena, (MO(("c", ("q",)), None, None),))
    r = ident.respond(pos)
    assert r == MO(("g", ("q",), ("q",)), 0)
    pos = pos.snoc(r).snoc(MO(("g", ("q",), ("a", "*")), 1, None))
    assert ident.respond(pos) == MO(("c", ("a", "*")), 0)


def test_compose_with_identity_is_neutral():
    ans = ST.PlaySetStrategy(
        S1, {((("q",), None, None), (("a", "*"), 0, None))}, name="ans")
    comp = ST.compose(ans, ST.identity(S1))
    assert ST.equal_to_depth(ans, comp, max_len=4) is None


def test_probe_top():
    ans = ST.PlaySetStrategy(
        S1, {((("q",), None, None), (("a", "*"), 0, None))}, name="ans")
    bot = ST.PlaySetStrategy(S1, set(), name="bot")
    assert ST.probe_top(ans) is True
    assert ST.probe_top(bot) is False


def test_play_set_materializes_even_prefixes():
    ident = ST.identity(S1)
    plays = ST.play_set(ident, max_len=4)
    assert all(len(p) % 2 == 0 for p in plays)
    assert any(len(p) == 4 for p in plays)


def test_callcc_answers_label_on_jump():
    cc = ST.callcc_strategy(S.One(), S.Zero())
    label = ("c", ("q",))
    ok = ("g", ("q",), ("p", "*", ("c", ("q",))))
    jump = ("g", ("q",), ("p", "*", ("g", ("q",), ("p", "*", ("c", ("q",))))))
    pos = JS(cc.arena, (MO(label, None, None),))
    r1 = cc.respond(pos)
    assert r1 is not None and r1.move == ok and r1.justifier == 0
    pos = pos.snoc(r1).snoc(MO(jump, 1, None))
    r2 = cc.respond(pos)
    assert r2 == MO(("c", ("a", "*")), 0)


def test_callcc_answers_label_on_normal_return():
    cc = ST.callcc_strategy(S.One(), S.Zero())
    label = ("c", ("q",))
    okans = ("g", ("q",), ("p", "*", ("c", ("a", "*"))))
    pos = JS(cc.arena, (MO(label, None, None),))
    pos = pos.snoc(cc.respond(pos)).snoc(MO(okans, 1, None))
    r = cc.respond(pos)
    assert r == MO(("c", ("a", "*")), 0)


def test_exn_c_catches_at_most_recent_open_try():
    ec = ST.exn_c_strategy()
    pos = JS(ec.arena, (MO(ST.EXNC_Q, None, STAR),))
    r1 = ec.respond(pos)
    assert r1 == MO(ST.EXNC_A, 0)
    pos = pos.snoc(r1).snoc(MO(ST.EXNC_TRY, 1, STAR))
    r2 = ec.respond(pos)
    assert r2 == MO(ST.EXNC_OK, 2, 2)
    pos = pos.snoc(r2).snoc(MO(ST.EXNC_RAISE, 1, 3))
    r3 = ec.respond(pos)
    assert r3 == MO(ST.EXNC_CAUGHT, 2)


def test_exn_c_is_bottom_without_an_open_try():
    ec = ST.exn_c_strategy()
    pos = JS(ec.arena, (MO(ST.EXNC_Q, None, STAR),))
    pos = pos.snoc(ec.respond(pos)).snoc(MO(ST.EXNC_RAISE, 1, STAR))
    assert ec.respond(pos) is None


def test_exn_e_raise_then_catch():
    ee = ST.exn_e_strategy()
    pos = JS(ee.arena, (MO(ST.EXNE_Q, None, None),))
    pos = pos.snoc(ee.respond(pos)).snoc(MO(ST.EXNE_TRY, 1, None))
    pos = pos.snoc(ee.respond(pos)).snoc(MO(ST.EXNE_RAISE, 1, None))
    r = ee.respond(pos)
    assert r == MO(ST.EXNE_E_RAISE, 4)
    pos = pos.snoc(r).snoc(MO(ST.EXNE_E_OK, 3, None))
    r = ee.respond(pos)
    assert r == MO(ST.EXNE_CAUGHT, 2)


def test_exn_e_propagates_without_a_raise():
    ee = ST.exn_e_strategy()
    pos = JS(ee.arena, (MO(ST.EXNE_Q, None, None),))
    pos = pos.snoc(ee.respond(pos)).snoc(MO(ST.EXNE_TRY, 1, None))
    pos = pos.snoc(ee.respond(pos)).snoc(MO(ST.EXNE_E_OK, 3, None))
    assert ee.respond(pos) == MO(ST.EXNE_E_TRY, 2)


def test_cell_strategy_reads_last_write():
    bool_t = S.Sum(S.One(), S.One())
    cell = ST.cell_strategy(bool_t)
    i = cell.idx
    w_tt = ("m", i, ("l", ("p", ("in1", "*"), ("c", ("q",)))))
    w_tt_ack = ("m", i, ("l", ("p", ("in1", "*"), ("c", ("a", "*")))))
    rd = ("m", i, ("r", ("p", "*", ("c", ("q",)))))
    rd_tt = ("m", i, ("r", ("p", "*", ("c", ("a", ("in1", "*"))))))
    pos = JS(cell.arena, (MO(AR.ROOT_Q, None, None),))
    r = cell.respond(pos)
    assert r is not None and r.move == ("a", i)
    pos = pos.snoc(r)
    assert cell.respond(pos.snoc(MO(rd, 1, None))) is None
    pos = pos.snoc(MO(w_tt, 1, None))
    r = cell.respond(pos)
    assert r is not None and r.move == w_tt_ack
    pos = pos.snoc(r).snoc(MO(rd, 1, None))
    r = cell.respond(pos)
    assert r is not None and r.move == rd_tt and r.justifier == 4


def test_hat_lift_is_control_blind_and_local():
    ident = ST.identity(S1)
    hat = ST.hat_lift(ident)
    assert ST.is_control_blind(hat, max_len=6)
    for p in ST.play_set(hat, max_len=6):
        assert PL.is_local(p)


def test_k_functor_of_exn_e_is_exn_c():
    kee = ST.k_functor(ST.exn_e_strategy(), max_len=8)
    assert ST.equal_to_depth(kee, ST.exn_c_strategy(), max_len=6) is None


def test_top_level_player_raise_has_bottom_k_image():
    ea = AR.denote_comp_type(S.One(), AR.EXCEPTION)

    def raiser(pos):
        if len(pos) == 1 and pos[0].move == AR.ROOT_Q:
            return MO(("e",), 0)
        return None

    sigma = ST.FunctionStrategy(ea.base, raiser, mode=ST.PLAIN, earena=ea)
    # raising with nobody left to propagate erases to no play at all
    assert ST.is_ep_strategy(sigma, max_len=4)
    k = ST.k_functor(sigma, max_len=4)
    assert ST.probe_top(k) is False


def test_k_functor_rejects_ignoring_an_opponent_raise():
    e1 = AR.denote_comp_type(S.One(), AR.EXCEPTION)
    eb = AR.function_space_e(e1, e1)
    cq, ca = ("c", ("q",)), ("c", ("a", "*"))
    gq, ge = ("g", ("q",), ("q",)), ("g", ("q",), ("e",))

    def ignorer(pos):
        last = pos[len(pos) - 1]
        if last.move == cq:
            return MO(gq, len(pos) - 1)
        if last.move == ge:
            return MO(ca, 0)  # answer normally instead of propagating
        return None

    sigma = ST.FunctionStrategy(eb.base, ignorer, mode=ST.PLAIN, earena=eb)
    assert not ST.is_ep_strategy(sigma, max_len=6)


def test_random_compact_strategy_is_reproducible():
    a = AR.function_space(S1, S1)
    s1 = ST.random_compact_strategy(a, random.Random(5), ST.PLAIN)
    s2 = ST.random_compact_strategy(a, random.Random(5), ST.PLAIN)
    assert ST.equal_to_depth(s1, s2, max_len=6) is None


def test_equal_to_depth_reports_first_disagreement():
    ans = ST.PlaySetStrategy(
        S1, {((("q",), None, None), (("a", "*"), 0, None))}, name="ans")
    bot = ST.PlaySetStrategy(S1, set(), name="bot")
    bad = ST.equal_to_depth(ans, bot, max_len=4)
    assert bad is not None
    assert bad.left is not None and bad.right is None


def test_denote_simple_return():
    sigma = ST.denote(S.Return(S.Unit()), ST.CONTROL, expected=S.One())
    assert ST.probe_top(sigma) is True
