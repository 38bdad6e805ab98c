import pytest

from rce import arenas as AR
from rce import plays as PL
from rce import strategies as ST
from rce import syntax as S
from rce.plays import JustifiedSequence as JS, MoveOccurrence as MO, STAR

# board for Sigma1 => Sigma1 with its exception decoration
E1 = AR.denote_comp_type(S.One(), AR.EXCEPTION)
EBOARD = AR.function_space_e(E1, E1)
BOARD = EBOARD.base

CQ = ("c", ("q",))
CA = ("c", ("a", "*"))
CE = ("c", ("e",))
GQ = ("g", ("q",), ("q",))
GA = ("g", ("q",), ("a", "*"))
GE = ("g", ("q",), ("e",))


def seq(*occs):
    return JS(BOARD, tuple(MO(*o) for o in occs))


def test_legal_play():
    s = seq((CQ, None), (GQ, 0), (GA, 1), (CA, 0))
    assert PL.is_legal(s)


def test_alternation_violation_is_illegal():
    s = seq((CQ, None), (CQ, None))
    assert not PL.is_legal(s)


def test_justifier_must_enable():
    s = seq((CQ, None), (GA, 0))
    assert not PL.is_legal(s)


def test_initial_move_has_no_justifier():
    s = seq((CQ, 0),)
    assert not PL.is_legal(s)


def test_pending_walks_past_answered_brackets():
    s = seq((CQ, None), (GQ, 0), (GA, 1), (CA, 0))
    assert PL.pending(s, 1) == 0
    assert PL.pending(s, 3) == 0
    assert PL.pending(s) is None


def test_control_sequence_polarity():
    good = seq((CQ, None, STAR), (GQ, 0, 0))
    assert PL.is_control_sequence(good)
    # Player question pointing at another Player move
    bad = seq((CQ, None, STAR), (GQ, 0, 1))
    assert not PL.is_control_sequence(bad)
    # Opponent question with a bare integer pointer to Opponent
    bad2 = seq((CQ, None, STAR), (GQ, 0, 0),
               (CQ, None, 0))
    assert not PL.is_control_sequence(bad2)


def test_open_set_truncated_by_root_pointer():
    s = seq((CQ, None, STAR), (GQ, 0, 0), (CQ, None, STAR))
    assert PL.open_questions(s) == (2,)


def test_open_set_follows_pointer_chain():
    s = seq((CQ, None, STAR), (GQ, 0, 0), (CQ, None, 1), (GQ, 2, 2))
    assert PL.open_questions(s) == (0, 1, 2, 3)


def test_answer_rewinds_open_set():
    s = seq((CQ, None, STAR), (GQ, 0, 0), (GA, 1))
    assert PL.open_questions(s) == (0,)


def test_restrict_reroutes_dangling_pointer():
    s = seq((CQ, None, STAR), (GQ, 0, 0), (CQ, None, 1), (GQ, 2, 2))
    out = PL.restrict(s, lambda i: i != 1)
    assert [o.ctl for o in out.occurrences] == [STAR, 0, 1]
    assert out[1].justifier is None  # initial after hiding its justifier


def test_bracketing_predicates():
    wb = seq((CQ, None), (GQ, 0), (GA, 1), (CA, 0))
    assert PL.is_well_bracketed(wb)
    jumpy = seq((CQ, None), (GQ, 0), (CQ, None), (CA, 0))
    assert not PL.is_well_bracketed(jumpy)
    assert not PL.is_player_well_bracketed(jumpy)


def test_player_locality():
    local = seq((CQ, None, STAR), (GQ, 0, 0))
    assert PL.is_local(local)
    nonlocal_ = seq((CQ, None, STAR), (GQ, 0, 0),
                    (CQ, None, 1), (GQ, 2, 0))
    assert not PL.is_local(nonlocal_)


def test_exception_local_play():
    s = seq((CQ, None), (GQ, 0), (GE, 1), (CE, 0))
    assert PL.is_exception_local(s, EBOARD)
    raising = seq((CQ, None), (GE, 0))
    assert not PL.is_exception_local(raising, EBOARD)


def test_ep_prefix_requires_adjacent_pairs():
    s = seq((CQ, None), (GQ, 0), (GE, 1), (CE, 0))
    assert PL.is_exception_propagating(s, EBOARD)
    lone = seq((CQ, None), (GQ, 0), (GE, 1), (CA, 0))
    assert PL._ep_prefix_len(lone, EBOARD) == 2
    assert not PL.is_exception_propagating(lone, EBOARD)


def test_k_map_decorates_with_pending_and_erases():
    s = seq((CQ, None), (GQ, 0), (CQ, None), (GQ, 2),
            (GE, 3), (CE, 2), (CQ, None), (GQ, 6))
    out = PL.k_map(s, EBOARD)
    assert [o.move for o in out.occurrences] == [CQ, GQ, CQ, GQ, CQ, GQ]
    assert [o.ctl for o in out.occurrences] == [STAR, 0, 1, 2, 1, 4]
    assert PL.is_legal_control(out)


def test_k_map_truncates_non_ep_suffix():
    s = seq((CQ, None), (GQ, 0), (GE, 1), (CA, 0))
    out = PL.k_map(s, EBOARD)
    assert len(out) == 2


def test_trace_roundtrip():
    s = seq((CQ, None, STAR), (GQ, 0, 0), (CQ, None, 1), (GQ, 2, 2))
    text = PL.emit_trace(s)
    back = PL.parse_trace(text, BOARD)
    assert back == s


def test_trace_line_format():
    s = seq((CQ, None, STAR), (GA, 0))
    lines = PL.emit_trace(s, {CQ: "q", GA: "a"}).splitlines()
    assert lines[0] == "0 q O Q just=- ctl=*"
    assert lines[1] == "1 a P A just=0 ctl=-"


def test_parse_trace_rejects_malformed_lines():
    with pytest.raises(PL.PlayError):
        PL.parse_trace("0 q O Q just=-", BOARD)
    with pytest.raises(PL.PlayError):
        PL.parse_trace("0 nosuch O Q just=- ctl=-", BOARD)
