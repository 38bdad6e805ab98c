"""End-to-end acceptance gate.

Each section pins down one headline property of the workbench at desk
scale: machine/translation agreement over the whole corpus, adequacy of
both game models, the control-decoration functor matching the two
models, frozen reference plays, the category and functor laws, the two
factorization theorems, the arena-level lemmas, and the documented
scope boundary.
"""

import itertools
import os
import random
import textwrap
import time

import pytest

from rce import arenas as AR
from rce import machine as MA
from rce import plays as PL
from rce import strategies as ST
from rce import syntax as S
from rce import translations as TR
from rce.plays import JustifiedSequence as JS, MoveOccurrence as MO, STAR

from conftest import _CORPUS

FUEL = 10000
INTERNAL_FUEL = 2000
DEPTH = 12


# ---------------------------------------------------------------------------
# 1. Translation soundness over the corpus

class TestTranslationSoundness:

    def test_corpus_is_large_enough(self, corpus):
        assert len(corpus) >= 25

    def test_corpus_agrees_through_both_translations(self, corpus):
        t0 = time.time()
        for p in corpus:
            rep = TR.check_translation_soundness(p.program, fuel=FUEL)
            assert rep.conclusive, p.name
            assert rep.agree, p.name
            assert rep.direct == p.expect_converges, p.name
            assert rep.exn_leg == p.expect_converges, p.name
            assert rep.cps_leg == p.expect_converges, p.name
        assert time.time() - t0 < 10.0


# ---------------------------------------------------------------------------
# 2. Adequacy of both denotations
#
# Denotations are shared with the correspondence section below; they are
# memoized per corpus program.

_DENOTE_CACHE = {}


def _denotations(p):
    if p.name not in _DENOTE_CACHE:
        dc = ST.denote(p.program, ST.CONTROL, fuel=INTERNAL_FUEL,
                       expected=S.One())
        de = ST.denote(p.program, ST.EXCEPTION, fuel=INTERNAL_FUEL,
                       expected=S.One())
        _DENOTE_CACHE[p.name] = (dc, de)
    return _DENOTE_CACHE[p.name]


class TestAdequacy:

    def test_control_model(self, corpus_program):
        dc, _ = _denotations(corpus_program)
        assert ST.probe_top(dc) == corpus_program.expect_converges

    def test_exception_model(self, corpus_program):
        _, de = _denotations(corpus_program)
        assert ST.probe_top(de) == corpus_program.expect_converges


# ---------------------------------------------------------------------------
# 3. The control decoration of the exception denotation is the control
#    denotation

class TestControlCorrespondence:

    def test_k_of_exception_denotation_matches_control(self, corpus):
        t0 = time.time()
        for p in corpus:
            dc, de = _denotations(p)
            k = ST.k_functor(de, max_len=DEPTH + 2, fuel=INTERNAL_FUEL)
            bad = ST.equal_to_depth(k, dc, max_len=DEPTH)
            assert bad is None, (p.name, bad)
        assert time.time() - t0 < 60.0


# ---------------------------------------------------------------------------
# 4. Frozen reference plays

CC_LABEL = ("c", ("q",))
CC_OK = ("g", ("q",), ("p", "*", ("c", ("q",))))
CC_JUMP = ("g", ("q",), ("p", "*", ("g", ("q",), ("p", "*", ("c", ("q",))))))
CC_CAUGHT = ("c", ("a", "*"))
CC_NAMES = {CC_LABEL: "label", CC_OK: "ok", CC_JUMP: "jump",
            CC_CAUGHT: "caught"}

EXNC_NAMES = {ST.EXNC_Q: "q", ST.EXNC_A: "a", ST.EXNC_TRY: "try",
              ST.EXNC_OK: "ok", ST.EXNC_RAISE: "raise",
              ST.EXNC_CAUGHT: "caught"}

EXNE_NAMES = {ST.EXNE_Q: "q", ST.EXNE_A: "a", ST.EXNE_TRY: "try",
              ST.EXNE_OK: "ok", ST.EXNE_RAISE: "raise",
              ST.EXNE_CAUGHT: "caught", ST.EXNE_E_OK: "e(ok)",
              ST.EXNE_E_RAISE: "e(raise)", ST.EXNE_E_TRY: "e(try)"}


def _drive(sigma, opponent_moves):
    """Alternate given Opponent occurrences with the strategy's replies."""
    pos = JS(sigma.arena, ())
    for o in opponent_moves:
        pos = pos.snoc(o)
        r = sigma.respond(pos)
        if r is not None:
            pos = pos.snoc(r)
    return pos


class TestReferencePlays:

    def test_callcc_jump_play(self):
        cc = ST.callcc_strategy(S.One(), S.Zero())
        play = _drive(cc, [MO(CC_LABEL, None, None), MO(CC_JUMP, 1, None)])
        assert PL.emit_trace(play, CC_NAMES) == textwrap.dedent("""\
            0 label O Q just=- ctl=-
            1 ok P Q just=0 ctl=-
            2 jump O Q just=1 ctl=-
            3 caught P A just=0 ctl=-""")
        assert PL.is_legal(play)
        assert not PL.is_well_bracketed(play)

    def test_exn_c_catch_play(self):
        ec = ST.exn_c_strategy()
        play = _drive(ec, [MO(ST.EXNC_Q, None, STAR),
                           MO(ST.EXNC_TRY, 1, STAR),
                           MO(ST.EXNC_RAISE, 1, 3)])
        assert PL.emit_trace(play, EXNC_NAMES) == textwrap.dedent("""\
            0 q O Q just=- ctl=*
            1 a P A just=0 ctl=-
            2 try O Q just=1 ctl=*
            3 ok P Q just=2 ctl=2
            4 raise O Q just=1 ctl=3
            5 caught P A just=2 ctl=-""")
        assert PL.is_legal_control(play)
        assert not PL.is_player_well_bracketed(play)

    def test_exn_e_catch_play(self):
        ee = ST.exn_e_strategy()
        play = _drive(ee, [MO(ST.EXNE_Q, None, None),
                           MO(ST.EXNE_TRY, 1, None),
                           MO(ST.EXNE_RAISE, 1, None),
                           MO(ST.EXNE_E_OK, 3, None)])
        assert PL.emit_trace(play, EXNE_NAMES) == textwrap.dedent("""\
            0 q O Q just=- ctl=-
            1 a P A just=0 ctl=-
            2 try O Q just=1 ctl=-
            3 ok P Q just=2 ctl=-
            4 raise O Q just=1 ctl=-
            5 e(raise) P A just=4 ctl=-
            6 e(ok) O A just=3 ctl=-
            7 caught P A just=2 ctl=-""")
        assert PL.is_legal(play)
        assert PL.is_player_well_bracketed(play)
        assert PL.is_exception_propagating(play, ee.earena)

    def test_exn_e_propagation_play(self):
        ee = ST.exn_e_strategy()
        play = _drive(ee, [MO(ST.EXNE_Q, None, None),
                           MO(ST.EXNE_TRY, 1, None),
                           MO(ST.EXNE_E_OK, 3, None)])
        assert PL.emit_trace(play, EXNE_NAMES) == textwrap.dedent("""\
            0 q O Q just=- ctl=-
            1 a P A just=0 ctl=-
            2 try O Q just=1 ctl=-
            3 ok P Q just=2 ctl=-
            4 e(ok) O A just=3 ctl=-
            5 e(try) P A just=2 ctl=-""")
        assert PL.is_legal(play)
        assert PL.is_player_well_bracketed(play)
        assert PL.is_exception_propagating(play, ee.earena)

    def test_reference_traces_roundtrip(self):
        ee = ST.exn_e_strategy()
        play = _drive(ee, [MO(ST.EXNE_Q, None, None),
                           MO(ST.EXNE_TRY, 1, None),
                           MO(ST.EXNE_RAISE, 1, None),
                           MO(ST.EXNE_E_OK, 3, None)])
        text = PL.emit_trace(play, EXNE_NAMES)
        assert PL.parse_trace(text, ee.arena, EXNE_NAMES) == play


# ---------------------------------------------------------------------------
# 5. Category and functor laws

LAW_POOL = [AR.sigma1(),
            AR.denote_comp_type(S.Sum(S.One(), S.One()), AR.PLAIN),
            AR.denote_comp_type(S.Arrow(S.One(), S.One()), AR.PLAIN)]


def _rand_fn(a, b, rng, mode, **kw):
    s = ST.random_compact_strategy(AR.function_space(a, b), rng, mode, **kw)
    s.split = (a, b)
    return s


class TestLaws:

    def test_identity_laws_on_100_random_strategies(self):
        rng = random.Random(11)
        for trial in range(100):
            mode = ST.PLAIN if trial % 2 == 0 else ST.CONTROL
            a, b = rng.choice(LAW_POOL), rng.choice(LAW_POOL)
            f = _rand_fn(a, b, rng, mode)
            assert ST.equal_to_depth(
                ST.compose(ST.identity(a, mode), f), f, 8) is None
            assert ST.equal_to_depth(
                ST.compose(f, ST.identity(b, mode)), f, 8) is None

    def test_associativity_on_100_random_strategies(self):
        rng = random.Random(13)
        for trial in range(34):
            mode = ST.PLAIN if trial % 2 == 0 else ST.CONTROL
            a, b, c, d = (rng.choice(LAW_POOL) for _ in range(4))
            f = _rand_fn(a, b, rng, mode)
            g = _rand_fn(b, c, rng, mode)
            h = _rand_fn(c, d, rng, mode)
            bad = ST.equal_to_depth(ST.compose(ST.compose(f, g), h),
                                    ST.compose(f, ST.compose(g, h)), 8)
            assert bad is None, trial

    def test_hat_is_functorial_on_well_bracketed_strategies(self):
        rng = random.Random(17)
        for trial in range(10):
            a, b, c = (rng.choice(LAW_POOL) for _ in range(3))
            f = _rand_fn(a, b, rng, ST.PLAIN, wb=True)
            g = _rand_fn(b, c, rng, ST.PLAIN, wb=True)
            bad = ST.equal_to_depth(
                ST.hat_lift(ST.compose(f, g)),
                ST.compose(ST.hat_lift(f), ST.hat_lift(g)), 8)
            assert bad is None, trial

    def test_hat_is_not_functorial_on_the_witness_iso(self):
        """Sigma1 and Sigma0=>Sigma0 are isomorphic in the plain
        category, but the hat images of the two halves no longer compose
        to the identity: a disagreement appears within four moves."""
        f_iso, g_iso = ST.sigma1_fun_iso()
        b = AR.function_space(AR.sigma0(), AR.sigma0())
        assert ST.equal_to_depth(ST.compose(g_iso, f_iso),
                                 ST.identity(b, ST.PLAIN), 6) is None
        bad = ST.equal_to_depth(
            ST.compose(ST.hat_lift(g_iso), ST.hat_lift(f_iso)),
            ST.identity(b, ST.CONTROL), 4)
        assert bad is not None
        assert len(bad.position) + 1 <= 4

    @pytest.mark.parametrize("t", [S.One(), S.Sum(S.One(), S.One())],
                             ids=S.print_type)
    def test_k_preserves_identities(self, t):
        ea = AR.denote_comp_type(t, AR.EXCEPTION)
        ide = ST._copycat(ea, ST.EXCEPTION)
        k = ST.k_functor(ide, max_len=12)
        idc = ST.identity(AR.erase_exception_answers(ea), ST.CONTROL)
        assert ST.equal_to_depth(k, idc, 6, open_ctl=True) is None

    def test_exception_propagation_closed_under_composition(self):
        rng = random.Random(19)
        epool = [AR.denote_comp_type(S.One(), AR.EXCEPTION),
                 AR.denote_comp_type(S.Sum(S.One(), S.One()), AR.EXCEPTION)]
        for trial in range(50):
            ea, eb, ec = (rng.choice(epool) for _ in range(3))
            f = ST.random_ep_strategy(AR.function_space_e(ea, eb), rng)
            f.split = (ea.base, eb.base)
            g = ST.random_ep_strategy(AR.function_space_e(eb, ec), rng)
            g.split = (eb.base, ec.base)
            assert ST.is_ep_strategy(f), trial
            assert ST.is_ep_strategy(g), trial
            comp = ST.compose(f, g)
            comp.earena = AR.function_space_e(ea, ec)
            assert ST.is_ep_strategy(comp), trial


# ---------------------------------------------------------------------------
# 6. Factorizations


class TestFactorization:

    def test_control_blind_strategies_factor_through_callcc(self):
        for seed in range(20):
            rng = random.Random(100 + seed)
            arena = LAW_POOL[seed % len(LAW_POOL)]
            sigma = ST.hat_lift(
                ST.random_compact_strategy(arena, rng, ST.PLAIN))
            comp = ST.compose(ST.lam_callcc(), ST.factor_callcc(sigma))
            bad = ST.equal_to_depth(comp, sigma, max_len=10,
                                    well_opened=True)
            assert bad is None, seed

    def test_control_strategies_factor_through_exn(self):
        for seed in range(20):
            rng = random.Random(200 + seed)
            arena = LAW_POOL[seed % len(LAW_POOL)]
            sigma = ST.random_compact_strategy(arena, rng, ST.CONTROL)
            comp = ST.compose(ST.exn_c_strategy(), ST.factor_exn(sigma))
            bad = ST.equal_to_depth(comp, sigma, max_len=10,
                                    well_opened=True)
            assert bad is None, seed


# ---------------------------------------------------------------------------
# 7. Arena lemmas over all small types


def _types_of_size(n):
    if n == 1:
        return [S.Zero(), S.One()]
    out = []
    for i in range(1, n - 1):
        for left in _types_of_size(i):
            for right in _types_of_size(n - 1 - i):
                out.extend([S.Sum(left, right), S.Prod(left, right),
                            S.Arrow(left, right)])
    return out


SMALL_TYPES = [t for n in range(1, 7) for t in _types_of_size(n)]


class TestArenaLemmas:

    def test_small_type_census(self):
        assert len(SMALL_TYPES) == 158

    @pytest.mark.parametrize("t", SMALL_TYPES, ids=S.print_type)
    def test_forgetting_exceptions_adds_an_error_summand(self, t):
        fam = AR.denote_type(t, AR.EXCEPTION)
        lhs = AR.forget_exn(AR.exn_lifted_sum(fam))
        members = tuple((i, AR.forget_exn(a)) for i, a in fam.members)
        rhs = AR.lifted_sum(AR.ArenaFamily(
            members + ((("exn-slot",), AR.EMPTY),)))
        assert AR.are_isomorphic(lhs, rhs)

    @pytest.mark.parametrize("t", SMALL_TYPES, ids=S.print_type)
    def test_erasure_commutes_with_lifting(self, t):
        fam = AR.denote_type(t, AR.EXCEPTION)
        lhs = AR.erase_exception_answers(AR.exn_lifted_sum(fam))
        members = tuple((i, AR.erase_exception_answers(a))
                        for i, a in fam.members)
        rhs = AR.lifted_sum(AR.ArenaFamily(members))
        assert AR.are_isomorphic(lhs, rhs)
        assert AR.are_isomorphic(lhs, AR.denote_comp_type(t, AR.CONTROL))

    @pytest.mark.parametrize("t", SMALL_TYPES, ids=S.print_type)
    def test_cps_image_arena_matches_unbracketed_source(self, t):
        iso = AR.cps_iso(t)
        fam = AR.denote_type(t, AR.PLAIN)
        assert [i for i, _ in iso.index_map] == fam.indices


# ---------------------------------------------------------------------------
# 8. Scope boundary

README = os.path.join(os.path.dirname(__file__), os.pardir, "README.md")


class TestScope:

    def test_full_abstraction_is_a_documented_non_goal(self):
        with open(README) as f:
            text = f.read().lower()
        assert "full abstraction" in text
        assert "non-goal" in text
