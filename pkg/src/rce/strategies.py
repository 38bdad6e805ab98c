"""Strategies as deterministic oracles over legal positions.

A strategy carries an arena (the full game board), a mode (plain, control,
or exception), and a `respond` function from odd-length positions to an
optional next occurrence. Composition is parallel composition plus hiding
with a fuel bound on internal chatter; no response within fuel models
divergence. Stateful behaviours (the reference cell, the exception
objects) recompute their state from the history on every call, which makes
determinacy and replay trivially consistent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Callable, Dict, FrozenSet, List, Optional, Set, Tuple

from . import arenas as AR
from . import plays as PL
from .arenas import Arena, ExceptionArena, Move
from .plays import (JustifiedSequence as JS, MoveOccurrence as MO, STAR,
                    pending, restrict)

PLAIN, CONTROL, EXCEPTION = "plain", "control", "exception"


class StrategyError(Exception):
    pass


class Strategy:
    """Oracle presentation of a deterministic strategy."""

    def __init__(self, arena: Arena, mode: str = PLAIN,
                 earena: Optional[ExceptionArena] = None,
                 split: Optional[Tuple[Arena, Arena]] = None,
                 name: str = "strategy"):
        self.arena = arena
        self.mode = mode
        self.earena = earena
        self.split = split  # (dom, cod) when arena = function_space(dom,cod)
        self.name = name

        self._memo: Dict[tuple, Optional[MO]] = {}

    def respond(self, position: JS) -> Optional[MO]:
        raise NotImplementedError

    def respond_memo(self, position: JS) -> Optional[MO]:
        """Memoized respond; oracles are pure so caching is sound."""
        key = tuple((o.move, o.justifier, o.ctl)
                    for o in position.occurrences)
        try:
            return self._memo[key]
        except KeyError:
            r = self.respond(position)
            self._memo[key] = r
            return r

    def __repr__(self):
        return f"<{self.name} on {self.arena!r} ({self.mode})>"


class FunctionStrategy(Strategy):
    def __init__(self, arena: Arena, fn, **kw):
        super().__init__(arena, **kw)
        self._fn = fn

    def respond(self, position: JS) -> Optional[MO]:
        return self._fn(position)


# ---------------------------------------------------------------------------
# Position exploration helpers

def opponent_options(s: JS, mode: str, open_ctl: bool = False) -> List[MO]:
    """All legal Opponent extensions of an even-length position. With
    `open_ctl`, Opponent control pointers are restricted to targets in the
    open-question set of the position (plus the root token)."""
    arena = s.arena
    i = len(s)
    out: List[MO] = []
    if mode == CONTROL and open_ctl:
        allowed = set(PL.open_questions(s))
    for m in sorted(arena.moves, key=repr):
        if arena.polarity(m) != "O":
            continue
        if arena.is_initial(m):
            justs: List[Optional[int]] = [None]
        else:
            justs = [j for j in range(i)
                     if arena.enables(s[j].move, m)]
        for j in justs:
            if mode == CONTROL and arena.label[m] == AR.Q:
                ctls: List[PL.Ctl] = [STAR] + [
                    k for k in range(1, i, 2)
                    if s.is_question(k)
                    and (not open_ctl or k in allowed)]
                for c in ctls:
                    out.append(MO(m, j, c))
            else:
                out.append(MO(m, j, None))
    return out


def occ_key(o: Optional[MO]):
    return None if o is None else (o.move, o.justifier, o.ctl)


@dataclass
class Disagreement:
    position: JS
    left: Optional[MO]
    right: Optional[MO]


def equal_to_depth(sigma: Strategy, tau: Strategy, max_len: int = 8,
                   well_opened: bool = False,
                   open_ctl: bool = False) -> Optional[Disagreement]:
    """Exhaustively explore Opponent behaviours to plays of length
    <= max_len; None means no disagreement found. With `well_opened`,
    Opponent opens a single thread (thread-independent strategies are
    determined by their well-opened plays). With `open_ctl`, Opponent
    control pointers target open questions only (pointers into closed
    regions have no image under exception-answer erasure)."""
    if sigma.arena.moves != tau.arena.moves:
        raise StrategyError("arena mismatch")
    mode = sigma.mode

    def go(s: JS) -> Optional[Disagreement]:
        if len(s) + 2 > max_len:
            return None
        for opt in opponent_options(s, mode, open_ctl=open_ctl):
            if well_opened and len(s) > 0 and opt.justifier is None:
                continue
            pos = s.snoc(opt)
            r1 = sigma.respond_memo(pos)
            r2 = tau.respond_memo(pos)
            if occ_key(r1) != occ_key(r2):
                return Disagreement(pos, r1, r2)
            if r1 is not None:
                bad = go(pos.snoc(r1))
                if bad is not None:
                    return bad
        return None

    return go(JS(sigma.arena))


def play_set(sigma: Strategy, max_len: int = 8) -> List[JS]:
    """Materialize all oracle-generated even-length plays to max_len."""
    out: List[JS] = [JS(sigma.arena)]

    def go(s: JS):
        if len(s) + 2 > max_len:
            return
        for opt in opponent_options(s, sigma.mode):
            pos = s.snoc(opt)
            r = sigma.respond_memo(pos)
            if r is not None:
                nxt = pos.snoc(r)
                out.append(nxt)
                go(nxt)

    go(JS(sigma.arena))
    return out


def probe_top(sigma: Strategy) -> bool:
    """Play the initial question; true iff the oracle answers with a
    value (an uncaught global exception is not convergence)."""
    roots = sigma.arena.roots
    if not roots:
        raise StrategyError("no initial move to probe")
    root = roots[0]
    ctl = STAR if sigma.mode == CONTROL else None
    pos = JS(sigma.arena, (MO(root, None, ctl),))
    r = sigma.respond_memo(pos)
    if r is None:
        return False
    if sigma.earena is not None \
            and r.move in set(sigma.earena.e_answer.values()):
        return False
    return True


def is_control_blind(sigma: Strategy, max_len: int = 8) -> bool:
    """Erasing control pointers leaves a deterministic play-set."""
    seen: Dict[tuple, tuple] = {}
    ok = True

    def strip(s: JS, r: Optional[MO]):
        key = tuple((o.move, o.justifier) for o in s.occurrences)
        val = None if r is None else (r.move, r.justifier)
        return key, val

    def go(s: JS):
        nonlocal ok
        if not ok or len(s) + 2 > max_len:
            return
        for opt in opponent_options(s, sigma.mode):
            pos = s.snoc(opt)
            r = sigma.respond_memo(pos)
            key, val = strip(pos, r)
            if key in seen and seen[key] != val:
                ok = False
                return
            seen[key] = val
            if r is not None:
                go(pos.snoc(r))

    go(JS(sigma.arena))
    return ok


# ---------------------------------------------------------------------------
# Play-set strategies (compact strategies)

class PlaySetStrategy(Strategy):
    """Extensional strategy given by a finite, even-prefix-closed,
    deterministic set of plays."""

    def __init__(self, arena: Arena, plays: Set[tuple], **kw):
        super().__init__(arena, **kw)
        self.plays = set(plays)
        self.plays.add(())
        self._responses: Dict[tuple, tuple] = {}
        for p in self.plays:
            for n in range(1, len(p) + 1, 2):
                if n + 1 <= len(p):
                    prefix, resp = p[:n], p[n]
                    old = self._responses.get(prefix)
                    if old is not None and old != resp:
                        raise StrategyError("non-deterministic play set")
                    self._responses[prefix] = resp

    def respond(self, position: JS) -> Optional[MO]:
        key = tuple((o.move, o.justifier, o.ctl) for o in position.occurrences)
        r = self._responses.get(key)
        return None if r is None else MO(*r)

    @staticmethod
    def from_strategy(sigma: Strategy, max_len: int = 8
                      ) -> "PlaySetStrategy":
        plays = {
            tuple((o.move, o.justifier, o.ctl) for o in s.occurrences)
            for s in play_set(sigma, max_len)}
        return PlaySetStrategy(sigma.arena, plays, mode=sigma.mode,
                               earena=sigma.earena, split=sigma.split,
                               name=f"playset({sigma.name})")


# ---------------------------------------------------------------------------
# Copycat identities

class CopycatStrategy(Strategy):
    """Identity on A: copycat between the two copies of A in A => A.
    In control mode Player questions point to the pending question."""

    def __init__(self, a: Arena, mode: str = PLAIN, **kw):
        board = AR.function_space(a, a)
        super().__init__(board, mode=mode, split=(a, a),
                         name=kw.pop("name", "identity"), **kw)
        self.component = a

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        last = position[i]
        root = _thread_root(position, i)  # ('c', r)
        r = root[1]
        if last.move[0] == "c":
            mirrored = ("g", r, last.move[1])
        else:
            mirrored = ("c", last.move[2])
        if mirrored not in self.arena.moves:
            return None
        just = _partner(position, last.justifier)
        if just is None and not self.arena.is_initial(mirrored):
            # mirror of an initial codomain move hangs under it
            just = i
        ctl = _response_ctl(self, position, mirrored)
        return MO(mirrored, just, ctl)


def _root_occ(position: JS, i: int) -> int:
    """Index of the hereditarily-justifying initial occurrence."""
    while position[i].justifier is not None:
        i = position[i].justifier
    return i


def _thread_root(position: JS, i: int) -> Move:
    """The move of the hereditarily-justifying initial occurrence."""
    return position[_root_occ(position, i)].move


def _partner(position: JS, j: Optional[int]) -> Optional[int]:
    """In an immediate-response play, occurrence 2k pairs with 2k+1."""
    if j is None:
        return None
    return j + 1 if j % 2 == 0 else j - 1


def _response_ctl(sigma: Strategy, position: JS, move: Move) -> PL.Ctl:
    if sigma.mode == CONTROL and sigma.arena.label[move] == AR.Q:
        p = pending(position)
        return STAR if p is None else p
    return None


def identity(a: Arena, mode: str = PLAIN) -> Strategy:
    return CopycatStrategy(a, mode=mode)


# ---------------------------------------------------------------------------
# Paired (schedule) strategies: copycat along a move map

class PairedStrategy(Strategy):
    """Respond to the Opponent move m with move_map(m, thread_root,
    position); the justifier is the partner of m's justifier (with a
    fallback to the arena parentage within the same thread). Covers the
    linear structural strategies (units, strength, application,
    renamings). In exception mode Opponent exception answers are
    propagated to the pending question."""

    def __init__(self, arena: Arena, move_map, mode: str = PLAIN, **kw):
        super().__init__(arena, mode=mode, **kw)
        self._map = move_map
        self._exn_image = (frozenset(self.earena.e_answer.values())
                           if self.earena is not None else frozenset())

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        last = position[i]
        if self.mode == EXCEPTION and last.move in self._exn_image:
            p = pending(position)
            if p is None:
                return None
            return MO(self.earena.e_answer[position[p].move], p)
        root = _thread_root(position, i)
        target = self._map(last.move, root, position)
        if target is None or target not in self.arena.moves:
            return None
        just = self._justifier_for(position, i, target)
        ctl = _response_ctl(self, position, target)
        return MO(target, just, ctl)

    def _justifier_for(self, position: JS, i: int,
                       target: Move) -> Optional[int]:
        if self.arena.is_initial(target):
            return None
        parent = self.arena.parent[target]
        cand = _partner(position, position[i].justifier)
        if cand is not None and position[cand].move == parent:
            return cand
        if position[i].move == parent:
            return i
        # most recent occurrence of the parent in the same thread
        r0 = _root_occ(position, i)
        for k in range(i, -1, -1):
            if position[k].move == parent \
                    and _root_occ(position, k) == r0:
                return k
        return None


# ---------------------------------------------------------------------------
# Composition: parallel composition plus hiding

@dataclass
class _Entry:
    tag: str       # 'A' | 'B' | 'C'
    move: Move     # raw move of the component arena
    justifier: Optional[int]  # global index
    ctl: PL.Ctl    # global index, '*' or None


class ComposedStrategy(Strategy):
    """sigma : A => B (or 1 -> B), tau : B => C, composed by running the
    interaction and hiding B. Internal chatter beyond the fuel bound is
    reported as no response."""

    def __init__(self, sigma: Strategy, tau: Strategy, fuel: int = 2000):
        if tau.split is None:
            raise StrategyError("tau must be a function-space strategy")
        b, c = tau.split
        if sigma.split is not None:
            a, b2 = sigma.split
        else:
            a, b2 = None, sigma.arena
        if b2.canonical_form() != b.canonical_form() \
                or b2.moves != b.moves:
            raise StrategyError("middle arenas do not match")
        if a is None:
            board = c
            split = None
        else:
            board = AR.function_space(a, c)
            split = (a, c)
        super().__init__(board, mode=sigma.mode, split=split,
                         name=f"({sigma.name};{tau.name})")
        self.sigma, self.tau = sigma, tau
        self.a, self.b, self.c = a, b, c
        self.fuel = fuel
        self._board_label = {}
        for tag, ar in (("A", a), ("B", b), ("C", c)):
            if ar is None:
                continue
            for m in ar.moves:
                self._board_label[(tag, m)] = ar.label[m]
        # interaction state per even-length external prefix, so that
        # incremental exploration extends rather than replays
        self._istate: Dict[tuple, Tuple[tuple, tuple, int]] = {}

    # -- naming -------------------------------------------------------------

    def _ext_to_entry(self, u: List[_Entry], ext_map: List[int],
                      occ: MO) -> _Entry:
        m = occ.move
        if self.a is None:
            tag, raw = "C", m
        elif m[0] == "c":
            tag, raw = "C", m[1]
        else:
            tag, raw = "A", m[2]
        just = None if occ.justifier is None else ext_map[occ.justifier]
        if tag == "A" and self.a.is_initial(raw):
            # in the interaction, initial A-moves hang off a B-initial
            just = self._recent_b_initial(u)
        ctl = occ.ctl
        if isinstance(ctl, int):
            ctl = ext_map[ctl]
        return _Entry(tag, raw, just, ctl)

    def _recent_b_initial(self, u: List[_Entry]) -> Optional[int]:
        for k in range(len(u) - 1, -1, -1):
            if u[k].tag == "B" and self.b.is_initial(u[k].move):
                return k
        return None

    def _global_js(self, u: List[_Entry]) -> JS:
        moves = {(e.tag, e.move) for e in u}
        label = {mm: self._board_label[mm] for mm in moves}
        board = Arena(moves, {mm: None for mm in moves}, label, check=False)
        occs = tuple(MO((e.tag, e.move), e.justifier, e.ctl) for e in u)
        return JS(board, occs)

    def _view(self, u: List[_Entry], tags: FrozenSet[str],
              rename) -> Tuple[JS, List[int]]:
        g = self._global_js(u)
        kept = [i for i, e in enumerate(u) if e.tag in tags]
        renamed = {i: rename(u, i) for i in kept}
        view = restrict(g, lambda i: u[i].tag in tags,
                        arena=None,
                        move_map=None)
        occs = tuple(replace(o, move=renamed[kept[k]])
                     for k, o in enumerate(view.occurrences))
        return JS(self._view_board(tags), occs), kept

    def _view_board(self, tags: FrozenSet[str]) -> Arena:
        if tags in (frozenset({"A", "B"}), frozenset({"B"})):
            return self.sigma.arena
        if tags == frozenset({"B", "C"}):
            return self.tau.arena
        return self.arena

    # renaming into component coordinates ----------------------------------

    def _thread_init(self, u: List[_Entry], i: int, tag: str,
                     arena: Arena) -> Move:
        """Raw move of the initial `tag`-entry reached along justifiers."""
        while True:
            e = u[i]
            if e.tag == tag and arena.is_initial(e.move):
                return e.move
            if e.justifier is None:
                raise StrategyError("thread has no initial move")
            i = e.justifier

    def _rename_sigma(self, u: List[_Entry], i: int) -> Move:
        e = u[i]
        if self.sigma.split is None:
            return e.move
        if e.tag == "B":
            return ("c", e.move)
        r = self._thread_init(u, i, "B", self.b)
        return ("g", r, e.move)

    def _rename_tau(self, u: List[_Entry], i: int) -> Move:
        e = u[i]
        if e.tag == "C":
            return ("c", e.move)
        r = self._thread_init(u, i, "C", self.c)
        return ("g", r, e.move)

    def _rename_ext(self, u: List[_Entry], i: int) -> Move:
        e = u[i]
        if self.a is None:
            return e.move
        if e.tag == "C":
            return ("c", e.move)
        r = self._thread_init(u, i, "C", self.c)
        return ("g", r, e.move)

    # -- the interaction loop ----------------------------------------------

    @staticmethod
    def _prefix_key(position: JS, k: int) -> tuple:
        return tuple((o.move, o.justifier, o.ctl)
                     for o in position.occurrences[:k])

    def respond(self, position: JS) -> Optional[MO]:
        u: List[_Entry] = []
        ext_map: List[int] = []  # external occurrence -> global index
        steps = 0
        k = 0
        n = len(position)
        for j in range(n - (n % 2), -1, -2):
            st = self._istate.get(self._prefix_key(position, j))
            if st is not None:
                u, ext_map, steps = list(st[0]), list(st[1]), st[2]
                k = j
                break
        while k < n:
            occ = position[k]
            if k % 2 == 1:
                k += 1
                continue  # recorded P responses are replayed below
            u.append(self._ext_to_entry(u, ext_map, occ))
            ext_map.append(len(u) - 1)
            mover = "tau" if u[-1].tag == "C" else "sigma"
            while True:
                resp = self._ask(mover, u)
                if resp is None:
                    return None
                tag, entry = resp
                u.append(entry)
                if entry.tag == "B":
                    steps += 1
                    if steps > self.fuel:
                        return None
                    mover = "sigma" if mover == "tau" else "tau"
                    continue
                # external response
                ext_map.append(len(u) - 1)
                ext = self._external_occ(u, ext_map)
                if k + 1 < n:
                    rec = position[k + 1]
                    if occ_key(ext) != occ_key(rec):
                        raise StrategyError(
                            "inconsistent replay of a composite position")
                    k += 2
                    self._istate[self._prefix_key(position, k)] = (
                        tuple(u), tuple(ext_map), steps)
                    break
                self._istate[self._prefix_key(position, n)
                             + (occ_key(ext),)] = (
                    tuple(u), tuple(ext_map), steps)
                return ext
        return None

    def _ask(self, who: str, u: List[_Entry]):
        if who == "sigma":
            tags = frozenset({"A", "B"}) if self.sigma.split else \
                frozenset({"B"})
            rename = self._rename_sigma
            player = self.sigma
        else:
            tags = frozenset({"B", "C"})
            rename = self._rename_tau
            player = self.tau
        view, kept = self._view(u, tags, rename)
        r = player.respond_memo(view)
        if r is None:
            return None
        # map back to a global entry
        m = r.move
        if who == "sigma":
            if self.sigma.split is None:
                tag, raw = "B", m
            elif m[0] == "c":
                tag, raw = "B", m[1]
            else:
                tag, raw = "A", m[2]
        else:
            if m[0] == "c":
                tag, raw = "C", m[1]
            else:
                tag, raw = "B", m[2]
        just = None if r.justifier is None else kept[r.justifier]
        ctl = r.ctl
        if isinstance(ctl, int):
            ctl = kept[ctl]
        return tag, _Entry(tag, raw, just, ctl)

    def _external_occ(self, u: List[_Entry], ext_map: List[int]
                      ) -> MO:
        tags = frozenset({"C"} if self.a is None else {"A", "C"})
        view, kept = self._view(u, tags, self._rename_ext)
        return view.occurrences[-1]


def compose(sigma: Strategy, tau: Strategy, fuel: int = 2000) -> Strategy:
    return ComposedStrategy(sigma, tau, fuel)


# ---------------------------------------------------------------------------
# Hat and tilde lifts

class HatStrategy(Strategy):
    """Control completion: ignore Opponent control pointers, emit Player
    control pointers to the pending question."""

    def __init__(self, inner: Strategy, **kw):
        super().__init__(inner.arena, mode=CONTROL, split=inner.split,
                         name=kw.pop("name", f"hat({inner.name})"), **kw)
        self.inner = inner

    def respond(self, position: JS) -> Optional[MO]:
        r = self.inner.respond(position.underlying())
        if r is None:
            return None
        if self.arena.label[r.move] == AR.Q:
            p = pending(position)
            return replace(r, ctl=STAR if p is None else p)
        return replace(r, ctl=None)


def hat_lift(sigma: Strategy) -> Strategy:
    return HatStrategy(sigma)


class TildeStrategy(Strategy):
    """Exception completion: propagate Opponent exception answers to the
    pending question, never raise, defer to the underlying strategy on the
    erased play."""

    def __init__(self, inner: Strategy, earena: ExceptionArena, **kw):
        super().__init__(earena.base, mode=EXCEPTION, earena=earena,
                         split=kw.pop("split", None),
                         name=kw.pop("name", f"tilde({inner.name})"), **kw)
        self.inner = inner
        self._exn = frozenset(earena.e_answer.values())

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        if position[i].move in self._exn:
            p = pending(position)
            if p is None:
                return None
            return MO(self.earena.e_answer[position[p].move], p, None)
        kept = [k for k in range(len(position))
                if position[k].move not in self._exn]
        erased = restrict(position, lambda k: position[k].move
                          not in self._exn, arena=self.inner.arena)
        r = self.inner.respond(erased.underlying())
        if r is None or r.move in self._exn:
            return None if r is None else None
        just = None if r.justifier is None else kept[r.justifier]
        return MO(r.move, just, None)


def tilde_lift(sigma: Strategy, earena: ExceptionArena) -> Strategy:
    return TildeStrategy(sigma, earena)


# ---------------------------------------------------------------------------
# K functor on strategies

def k_functor(sigma: Strategy, max_len: int = 12,
              fuel: int = 2000) -> Strategy:
    """Materialize sigma's plays to max_len, push them through the K map,
    and present the image as a play-set control strategy. Reports
    violations of the exception-propagation conditions."""
    if sigma.earena is None:
        raise StrategyError("K needs an exception arena")
    ea = sigma.earena
    exn = frozenset(ea.e_answer.values())
    out_plays: Set[tuple] = set()

    def ep_ok(s: JS) -> bool:
        """EP up to (at most) an unmatched trailing exception answer."""
        n = PL._ep_prefix_len(s, ea)
        return n == len(s) or (n == len(s) - 1 and s[n].move in exn)

    def record(s: JS):
        if PL._ep_prefix_len(s, ea) < len(s):
            return  # half-pair tail; covered by shorter prefixes
        ks = PL.k_map(s, ea)
        if len(ks) % 2 != 0:
            raise StrategyError(
                f"K image of odd length: {PL.emit_trace(s)}")
        out_plays.add(tuple((o.move, o.justifier, o.ctl)
                            for o in ks.occurrences))

    def go(s: JS):
        if len(s) + 2 > max_len:
            return
        for opt in opponent_options(s, sigma.mode):
            pos = s.snoc(opt)
            if not ep_ok(pos):
                continue  # Opponent leaves the EP play-set
            r = sigma.respond_memo(pos)
            if r is not None:
                nxt = pos.snoc(r)
                if not ep_ok(nxt):
                    raise StrategyError(
                        f"not exception-propagating: {PL.emit_trace(nxt)}")
                record(nxt)
                go(nxt)

    record(JS(sigma.arena))
    go(JS(sigma.arena))
    arena = AR.erase_exception_answers(ea)
    return PlaySetStrategy(arena, out_plays, mode=CONTROL,
                           split=None, name=f"K({sigma.name})")


# ---------------------------------------------------------------------------
# Built-in effect strategies

class CellStrategy(Strategy):
    """The reference cell on Sigma(write-methods x read-method): answers
    the root, acknowledges writes, answers each read with the most recent
    preceding write's value index, and plays copycat between read contents
    and the corresponding write-argument contents. Reads before any write
    get no response."""

    def __init__(self, content_type, mode: str = PLAIN):
        from . import syntax as S
        vt = S.var_type(content_type)
        if mode == EXCEPTION:
            earena = AR.denote_comp_type(vt, AR.EXCEPTION)
            arena = earena.base
        else:
            earena = None
            arena = AR.denote_comp_type(vt, AR.PLAIN)
        super().__init__(arena, mode=mode, earena=earena, name="cell")
        self.content_type = content_type
        # the single family index of var[T]
        fam = AR.denote_type(vt, AR.PLAIN)
        self.idx = fam.indices[0]
        self._exn = (frozenset(earena.e_answer.values()) if earena
                     else frozenset())

    # move classifiers ------------------------------------------------------

    def _body(self, m: Move):
        if len(m) == 3 and m[0] == "m" and m[1] == self.idx:
            return m[2]
        return None

    def _wrap(self, body: Move) -> Move:
        return ("m", self.idx, body)

    def respond(self, position: JS) -> Optional[MO]:
        if self.mode == EXCEPTION:
            i = len(position) - 1
            if position[i].move in self._exn:
                p = pending(position)
                if p is None:
                    return None
                return MO(self.earena.e_answer[position[p].move], p)
            kept = [k for k in range(len(position))
                    if position[k].move not in self._exn]
            erased = restrict(
                position, lambda k: position[k].move not in self._exn,
                arena=AR.erase_exception_answers(self.earena))
            r = self._respond_plain(erased.underlying())
            if r is None:
                return None
            just = None if r.justifier is None else kept[r.justifier]
            return MO(r.move, just, None)
        r = self._respond_plain(position.underlying())
        if r is None:
            return None
        if self.mode == CONTROL:
            if self.arena.label[r.move] == AR.Q:
                p = pending(position)
                return replace(r, ctl=STAR if p is None else p)
        return r

    def _respond_plain(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        last = position[i].move
        if last == AR.ROOT_Q:
            return MO(("a", self.idx), i)
        body = self._body(last)
        if body is None:
            return None
        if body[0] == "l" and body[1][0] == "p" and body[1][2] == \
                ("c", ("q",)):
            # write call: acknowledge
            return MO(self._wrap(("l", (body[1][0], body[1][1],
                                        ("c", ("a", "*"))))), i)
        if body == ("r", ("p", "*", ("c", ("q",)))):
            w = self._last_write(position, i)
            if w is None:
                return None
            j = position[w].move[2][1][1]
            return MO(self._wrap(("r", ("p", "*", ("c", ("a", j))))), i)
        # content moves: mirror between read contents and write arguments
        return self._mirror(position, i)

    def _last_write(self, position: JS, i: int) -> Optional[int]:
        for k in range(i - 1, -1, -1):
            b = self._body(position[k].move)
            if b is not None and b[0] == "l" and b[1][0] == "p" \
                    and b[1][2] == ("c", ("q",)):
                return k
        return None

    def _read_src(self, position: JS, answer_idx: int) -> int:
        """The write occurrence a read answer copies from: the last write
        before the read question."""
        rq = position[answer_idx].justifier
        w = self._last_write(position, rq)
        return w

    def _mirror(self, position: JS, i: int) -> Optional[MO]:
        # pair occurrences transitively: walk up the justifier chain to a
        # read answer or a write call, mapping the path.
        occ = position[i]
        body = self._body(occ.move)
        if body is None:
            return None
        if body[0] == "r":
            # inside a read answer's content: replay into the source write
            path = self._strip_read(body)
            if path is None:
                return None
            target_just = self._map_read_to_write(position, occ.justifier)
            if target_just is None:
                return None
            j = self._value_index(position[target_just].move)
            tgt = self._write_content(j, path)
            return MO(tgt, target_just)
        if body[0] == "l":
            # Opponent moved inside a write argument: mirror to the read
            # content that probed it
            path = self._strip_write(body)
            if path is None:
                return None
            target_just = self._map_write_to_read(position, occ.justifier)
            if target_just is None:
                return None
            j = self._value_index_read(position[target_just].move)
            tgt = self._read_content(j, path)
            return MO(tgt, target_just)
        return None

    # path surgery ----------------------------------------------------------

    def _value_index(self, move: Move):
        b = self._body(move)
        return b[1][1]

    def _value_index_read(self, move: Move):
        # read answer: ('m',I,('r',('p','*',('c',('a',j)))))
        b = self._body(move)
        return b[1][2][1][1]

    def _strip_read(self, body):
        # read content: ('r',('p','*',('c',('m',j,path))))
        x = body[1][2][1]
        if x[0] == "m":
            return x[2]
        return None

    def _strip_write(self, body):
        inner = body[1]
        if inner[0] == "p" and inner[2][0] == "g":
            return inner[2][2]
        return None

    def _write_content(self, j, path) -> Move:
        return self._wrap(("l", ("p", j, ("g", ("q",), path))))

    def _read_content(self, j, path) -> Move:
        return self._wrap(("r", ("p", "*", ("c", ("m", j, path)))))

    def _map_read_to_write(self, position: JS, j: Optional[int]
                           ) -> Optional[int]:
        """Map a justifier inside a read content to the corresponding
        occurrence inside the source write."""
        if j is None:
            return None
        b = self._body(position[j].move)
        if b[0] == "r" and b[1][2][1][0] == "a":
            # read answer: counterpart is the write call occurrence
            return self._read_src(position, j)
        # otherwise j is a content move that was itself mirrored: its
        # response (at j+1 or j-1) lives on the write side
        return _partner(position, j)

    def _map_write_to_read(self, position: JS, j: Optional[int]
                           ) -> Optional[int]:
        if j is None:
            return None
        b = self._body(position[j].move)
        if b[0] == "l" and b[1][0] == "p" and b[1][2] == ("c", ("q",)):
            return None
        return _partner(position, j)


def cell_strategy(content_type, mode: str = PLAIN) -> Strategy:
    return CellStrategy(content_type, mode)


class CallccStrategy(Strategy):
    """call-with-current-continuation at types (T, S): responds to the
    initial question with `ok`; to ok's answer or a continuation
    invocation with an answer to the initial question; thereafter plays
    copycat between the contents."""

    def __init__(self, t_type, s_type, mode: str = PLAIN):
        from . import syntax as S
        arrow = S.Arrow(S.Arrow(t_type, s_type), t_type)
        self.dom_fam = AR.denote_type(arrow, AR.PLAIN)
        dom = self.dom_fam.arena("*")
        cod = AR.denote_comp_type(t_type, AR.PLAIN)
        if mode == EXCEPTION:
            dom_e = AR.denote_type(arrow, AR.EXCEPTION).arena("*")
            cod_e = AR.denote_comp_type(t_type, AR.EXCEPTION)
            self.full_earena = AR.function_space_e(dom_e, cod_e)
            arena = self.full_earena.base
            earena = self.full_earena
        else:
            arena = AR.function_space(dom, cod)
            earena = None
        super().__init__(arena, mode=mode, earena=earena,
                         split=(dom, cod), name="callcc")
        self.t_fam = AR.denote_type(t_type, AR.PLAIN)
        self._exn = (frozenset(earena.e_answer.values()) if earena
                     else frozenset())

    # names: label = ('c',('q',)); ok = ('g',('q',),('p','*',('c',('q',))))
    LABEL = ("c", ("q",))

    @staticmethod
    def OK(label=("q",)):
        return ("g", label, ("p", "*", ("c", ("q",))))

    def respond(self, position: JS) -> Optional[MO]:
        if self.mode == EXCEPTION:
            i = len(position) - 1
            if position[i].move in self._exn:
                p = pending(position)
                if p is None:
                    return None
                return MO(self.earena.e_answer[position[p].move], p)
            kept = [k for k in range(len(position))
                    if position[k].move not in self._exn]
            erased = restrict(
                position, lambda k: position[k].move not in self._exn,
                arena=AR.erase_exception_answers(self.earena))
            r = self._respond_plain(erased.underlying())
            if r is None:
                return None
            just = None if r.justifier is None else kept[r.justifier]
            return MO(r.move, just, None)
        r = self._respond_plain(position.underlying())
        if r is None:
            return None
        if self.mode == CONTROL and self.arena.label[r.move] == AR.Q:
            p = pending(position)
            return replace(r, ctl=STAR if p is None else p)
        return r

    def _respond_plain(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        m = position[i].move
        if m == self.LABEL:
            return MO(self.OK(), i)
        if m[0] == "g":
            inner = m[2]  # ('p','*', x) with x in (T->S)-fam => SigmaT
            x = inner[2]
            if x[0] == "c" and x[1][0] == "a":
                # normal return of the body with value index j
                j = x[1][1]
                return self._caught(position, i, j, via=i)
            if x[0] == "g":
                # moves of the (T->S) argument copy
                y = x[2]  # in Pi_j (A_j => SigmaS)
                if y[0] == "p" and y[2] == ("c", ("q",)):
                    # continuation invoked with value index y[1]
                    return self._caught(position, i, y[1], via=i)
                if y[0] == "p" and y[2][0] == "g":
                    # Opponent probing the jump argument: mirror to the
                    # caught answer's content
                    path = y[2][2]
                    tgt_just = self._map_into_caught(position, i)
                    if tgt_just is None:
                        return None
                    j = y[1]
                    return MO(("c", ("m", j, path)), tgt_just)
            if x[0] == "c" and x[1][0] == "m":
                # Opponent inside the ok-answer content: mirror outward
                j, path = x[1][1], x[1][2]
                tgt = self._map_out(position, position[i].justifier)
                if tgt is None:
                    return None
                return MO(("c", ("m", j, path)), tgt)
            return None
        if m[0] == "c" and m[1][0] == "m":
            # Opponent probing the caught answer's content: mirror inward
            j, path = m[1][1], m[1][2]
            src = self._caught_source(position, i)
            if src is None:
                return None
            mirrored = self._inward_move(position, src, j, path)
            tgt_just = self._inward_justifier(position, i, src)
            if mirrored is None or tgt_just is None:
                return None
            return MO(mirrored, tgt_just)
        return None

    def _caught(self, position: JS, i: int, j, via: int) -> Optional[MO]:
        # the label of the invoking thread, reached along justifiers
        lbl = _root_occ(position, i)
        if position[lbl].move != self.LABEL:
            return None
        return MO(("c", ("a", j)), lbl)

    def _caught_source(self, position: JS, i: int) -> Optional[int]:
        """The occurrence whose content the caught answer copies: walk to
        the caught answer and take the move it responded to."""
        j = position[i].justifier
        # j: the caught answer occurrence? i's justifier chain passes the
        # caught answer; find the most recent caught answer above i
        k = i
        while k is not None:
            if position[k].move[0] == "c" and position[k].move[1][0] == "a":
                return _partner(position, k)
            k = position[k].justifier
        return None

    def _map_into_caught(self, position: JS, i: int) -> Optional[int]:
        j = position[i].justifier
        b = position[j].move if j is not None else None
        # the jump (or ok-answer) itself pairs with the caught answer
        if b is not None:
            p = _partner(position, j)
            if p is not None:
                return p
        return None

    def _map_out(self, position: JS, j: Optional[int]) -> Optional[int]:
        if j is None:
            return None
        return _partner(position, j)

    def _inward_move(self, position: JS, src: int, j, path
                     ) -> Optional[Move]:
        m = position[src].move
        x = m[2]
        if x[0] == "c" and x[1][0] == "a":
            # ok was answered normally: content lives under it
            return ("g", ("q",), ("p", "*", ("c", ("m", j, path))))
        if x[0] == "g":
            y = x[2]
            if y[0] == "p" and y[2] == ("c", ("q",)):
                # continuation invocation: content is the argument copy
                return ("g", ("q",),
                        ("p", "*", ("g", ("q",),
                                    ("p", j, ("g", ("q",), path)))))
        return None

    def _inward_justifier(self, position: JS, i: int, src: int
                          ) -> Optional[int]:
        j = position[i].justifier
        b = position[j].move if j is not None else None
        if b is not None and b[0] == "c" and b[1][0] == "a":
            return src
        return _partner(position, j)


def callcc_strategy(t_type, s_type, mode: str = PLAIN) -> Strategy:
    return CallccStrategy(t_type, s_type, mode)


# -- exn_C ------------------------------------------------------------------

def exn_c_arena() -> Arena:
    body = AR.product(AR.function_space(AR.sigma0(), AR.sigma1()),
                      AR.sigma0())
    return AR.lifted_sum(AR.ArenaFamily((("*", body),)))


EXNC_Q = ("q",)
EXNC_A = ("a", "*")
EXNC_TRY = ("m", "*", ("l", ("c", ("q",))))
EXNC_OK = ("m", "*", ("l", ("g", ("q",), ("q",))))
EXNC_RAISE = ("m", "*", ("r", ("q",)))
EXNC_CAUGHT = ("m", "*", ("l", ("c", ("a", "*"))))


class ExnCStrategy(Strategy):
    """The control-game new-exception strategy: answer the initial
    question; respond to try with ok; answer a raise by `caught`,
    justified by the most recent open try (no response if none)."""

    def __init__(self):
        super().__init__(exn_c_arena(), mode=CONTROL, name="exn_C")

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        m = position[i].move
        if m == EXNC_Q:
            return MO(EXNC_A, i)
        if m == EXNC_TRY:
            p = pending(position)
            return MO(EXNC_OK, i, STAR if p is None else p)
        if m == EXNC_RAISE:
            opens = PL.open_questions(position)
            tries = [k for k in opens if position[k].move == EXNC_TRY]
            if not tries:
                return None
            return MO(EXNC_CAUGHT, tries[-1])
        return None


def exn_c_strategy() -> Strategy:
    return ExnCStrategy()


# -- exn_E ------------------------------------------------------------------

def exn_e_arena() -> ExceptionArena:
    se0 = AR.exn_lifted_sum(AR.ArenaFamily(()))
    se1 = AR.exn_lifted_sum(AR.ArenaFamily((("*", AR.EMPTY_E),)))
    body = AR.product_e(AR.function_space_e(se0, se1), se0)
    return AR.exn_lifted_sum(AR.ArenaFamily((("*", body),)))


EXNE_Q = ("q",)
EXNE_A = ("a", "*")
EXNE_TRY = ("m", "*", ("l", ("c", ("q",))))
EXNE_OK = ("m", "*", ("l", ("g", ("q",), ("q",))))
EXNE_E_OK = ("m", "*", ("l", ("g", ("q",), ("e",))))
EXNE_RAISE = ("m", "*", ("r", ("q",)))
EXNE_E_RAISE = ("m", "*", ("r", ("e",)))
EXNE_CAUGHT = ("m", "*", ("l", ("c", ("a", "*"))))
EXNE_E_TRY = ("m", "*", ("l", ("c", ("e",))))


class ExnEStrategy(Strategy):
    """The exception-arena new-exception strategy: raise sets the
    (history-derived) flag and raises the global exception; when Opponent
    propagates into a handler, answer `caught` if the flag is set
    (consuming it) and propagate otherwise. All plays are
    Player-well-bracketed."""

    def __init__(self):
        ea = exn_e_arena()
        super().__init__(ea.base, mode=EXCEPTION, earena=ea, name="exn_E")

    def _flag(self, position: JS, upto: int) -> bool:
        """Set iff raises so far exceed caughts so far."""
        raises = sum(1 for k in range(upto)
                     if position[k].move == EXNE_E_RAISE)
        caughts = sum(1 for k in range(upto)
                      if position[k].move == EXNE_CAUGHT)
        return raises > caughts

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        m = position[i].move
        if m == EXNE_Q:
            return MO(EXNE_A, i)
        if m == EXNE_TRY:
            return MO(EXNE_OK, i)
        if m == EXNE_RAISE:
            # set the flag and raise the global exception
            return MO(EXNE_E_RAISE, i)
        if m == EXNE_E_OK:
            p = pending(position)
            if p is None:
                return None
            if self._flag(position, i):
                # handle: answer the pending try normally
                if position[p].move != EXNE_TRY:
                    return None
                return MO(EXNE_CAUGHT, p)
            # propagate
            if position[p].move == EXNE_TRY:
                return MO(EXNE_E_TRY, p)
            return MO(self.earena.e_answer[position[p].move], p)
        if m in (EXNE_E_TRY, EXNE_E_RAISE):
            # Opponent re-propagating into us: continue propagation
            p = pending(position)
            if p is None:
                return None
            return MO(self.earena.e_answer[position[p].move], p)
        return None


def exn_e_strategy() -> Strategy:
    return ExnEStrategy()


# ---------------------------------------------------------------------------
# Term denotation: context families, structural combinators, recursion

def _mk_board(dom, cod, mode: str):
    """(arena, earena, split) for a component board dom => cod; in
    exception mode dom/cod are exception arenas."""
    if mode == EXCEPTION:
        fse = AR.function_space_e(dom, cod)
        return fse.base, fse, (dom.base, cod.base)
    return AR.function_space(dom, cod), None, (dom, cod)


def _base(a):
    return a.base if isinstance(a, ExceptionArena) else a


def _fam_product(f: AR.ArenaFamily, g: AR.ArenaFamily,
                 mode: str) -> AR.ArenaFamily:
    pair = AR.product_e if mode == EXCEPTION else AR.product
    return AR.ArenaFamily(tuple(
        ((i, j), pair(a, b)) for i, a in f.members for j, b in g.members))


class EmptyBoardStrategy(Strategy):
    """No moves, no responses: morphisms into the empty arena."""

    def respond(self, position: JS) -> Optional[MO]:
        return None


def _empty_component(gm, cod, mode: str) -> Strategy:
    arena, earena, split = _mk_board(gm, cod, mode)
    return EmptyBoardStrategy(arena, mode=mode, earena=earena, split=split,
                              name="bang")


def _copycat(a, mode: str) -> Strategy:
    if mode == EXCEPTION:
        c = CopycatStrategy(a.base, mode=mode)
        c.earena = AR.function_space_e(a, a)
        c.split = (a.base, a.base)
        return c
    return CopycatStrategy(a, mode=mode)


def _relabel_component(dom, cod, fwd: Dict[Move, Move], mode: str,
                       name: str) -> Strategy:
    """Copycat along a partial move bijection from dom to cod."""
    arena, earena, split = _mk_board(dom, cod, mode)
    inv = {v: k for k, v in fwd.items()}

    def mp(move, root, position):
        if move[0] == "c":
            dm = inv.get(move[1])
            return None if dm is None else ("g", root[1], dm)
        if move[0] == "g":
            cm = fwd.get(move[2])
            return None if cm is None else ("c", cm)
        return None

    return PairedStrategy(arena, mp, mode=mode, earena=earena, split=split,
                          name=name)


class RegionStrategy(Strategy):
    """Dispatch each Opponent move to a region-local inner strategy; the
    inner position is the restriction of the play to the region, renamed
    into the inner board's coordinates."""

    def __init__(self, arena: Arena, classify, inners: Dict,
                 rename_in, rename_out, mode: str = PLAIN, **kw):
        super().__init__(arena, mode=mode, **kw)
        self.classify = classify
        self.inners = inners
        self.rename_in = rename_in
        self.rename_out = rename_out

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        reg = self.classify(position[i].move)
        inner = self.inners.get(reg)
        if inner is None:
            return None

        def keep(k):
            return self.classify(position[k].move) == reg

        kept = [k for k in range(len(position)) if keep(k)]
        view = restrict(position, keep, arena=inner.arena,
                        move_map=lambda m: self.rename_in(reg, m))
        r = inner.respond_memo(view)
        if r is None:
            return None
        just = None if r.justifier is None else kept[r.justifier]
        ctl = r.ctl
        if isinstance(ctl, int):
            ctl = kept[ctl]
        return MO(self.rename_out(reg, r.move), just, ctl)


def _pair_component(gm, left_s: Strategy, right_s: Strategy, lcod, rcod,
                    mode: str) -> Strategy:
    """< f, g > : Gamma -> A x B from components f and g."""
    pair = AR.product_e if mode == EXCEPTION else AR.product
    cod = pair(lcod, rcod)
    arena, earena, split = _mk_board(gm, cod, mode)

    def classify(move):
        return move[1][0]

    def rin(reg, move):
        if move[0] == "c":
            return ("c", move[1][1])
        return ("g", move[1][1], move[2])

    def rout(reg, move):
        if move[0] == "c":
            return ("c", (reg, move[1]))
        return ("g", (reg, move[1]), move[2])

    return RegionStrategy(arena, classify, {"l": left_s, "r": right_s},
                          rin, rout, mode=mode, earena=earena, split=split,
                          name="pair")


def _lambda_component(gm, dom_fam: AR.ArenaFamily, sig_cod,
                      inners: Dict, mode: str) -> Strategy:
    """Currying: from components Gamma x A_i -> Sigma B, one for each
    domain index i, to Gamma -> [[A -> B]]."""
    graft = AR.function_space_e if mode == EXCEPTION else AR.function_space
    prodl = AR.product_list_e if mode == EXCEPTION else AR.product_list
    parts = [graft(dom_fam.arena(i), sig_cod) for i in dom_fam.indices]
    member = prodl(parts, dom_fam.indices)
    arena, earena, split = _mk_board(gm, member, mode)

    def classify(move):
        return move[1][1]

    def rin(i, move):
        if move[0] == "g":
            return ("g", ("q",), ("l", move[2]))
        x = move[1][2]
        if x[0] == "c":
            return ("c", x[1])
        return ("g", ("q",), ("r", x[2]))

    def rout(i, move):
        if move[0] == "g":
            b = move[2]
            if b[0] == "l":
                return ("g", ("p", i, ("c", ("q",))), b[1])
            return ("c", ("p", i, ("g", ("q",), b[1])))
        return ("c", ("p", i, ("c", move[1])))

    return RegionStrategy(arena, classify, inners, rin, rout, mode=mode,
                          earena=earena, split=split, name="curry")


def _eta_map(i):
    def mp(move, root, position):
        if move == ("c", ("q",)):
            return ("c", ("a", i))
        if move[0] == "c" and move[1][0] == "m":
            if move[1][1] != i:
                return None
            return ("g", ("q",), move[1][2])
        if move[0] == "g":
            return ("c", ("m", i, move[2]))
        return None
    return mp


def _eta_component(member, i, sig, mode: str) -> Strategy:
    arena, earena, split = _mk_board(member, sig, mode)
    return PairedStrategy(arena, _eta_map(i), mode=mode, earena=earena,
                          split=split, name="eta")


def _app_map(j):
    def mp(move, root, position):
        if move[0] == "c":
            return ("g", ("q",), ("l", ("p", j, ("c", move[1]))))
        b = move[2]
        if b[0] == "l":
            x = b[1]
            if x[0] != "p" or x[1] != j:
                return None
            y = x[2]
            if y[0] == "c":
                return ("c", y[1])
            if y[0] == "g":
                return ("g", ("q",), ("r", y[2]))
            return None
        if b[0] == "r":
            return ("g", ("q",), ("l", ("p", j, ("g", ("q",), b[1]))))
        return None
    return mp


def _thread_value_index(position: JS):
    """In a strength play, the codomain answer index of the current
    thread (None before the answer)."""
    i = len(position) - 1
    r0 = _root_occ(position, i)
    for k in range(len(position)):
        o = position[k]
        if o.move[0] == "c" and o.move[1][0] == "a" \
                and _root_occ(position, k) == r0:
            return o.move[1][1][1]
    return None


def _strength_map(gamma):
    def mp(move, root, position):
        if move == ("c", ("q",)):
            return ("g", ("q",), ("r", ("q",)))
        if move[0] == "g":
            b = move[2]
            if b[0] == "r":
                x = b[1]
                if x[0] == "a":
                    return ("c", ("a", (gamma, x[1])))
                if x[0] == "m":
                    return ("c", ("m", (gamma, x[1]), ("r", x[2])))
                return None
            if b[0] == "l":
                i = _thread_value_index(position)
                if i is None:
                    return None
                return ("c", ("m", (gamma, i), ("l", b[1])))
            return None
        if move[0] == "c" and move[1][0] == "m":
            side = move[1][2]
            i = move[1][1][1]
            if side[0] == "l":
                return ("g", ("q",), ("l", side[1]))
            return ("g", ("q",), ("r", ("m", i, side[1])))
        return None
    return mp


class StarStrategy(Strategy):
    """Kleisli extension: ask the lifted domain its value, then behave as
    the component selected by the answer index (the strength having paired
    the context into the domain)."""

    ROOT = ("c", ("q",))
    DOMQ = ("g", ("q",), ("q",))

    def __init__(self, dom, cod, inners: Dict, mode: str = PLAIN,
                 name: str = "star"):
        arena, earena, split = _mk_board(dom, cod, mode)
        super().__init__(arena, mode=mode, earena=earena, split=split,
                         name=name)
        self.inners = inners
        self._e_image = (frozenset(earena.e_answer.values()) if earena
                         else frozenset())

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        last = position[i]
        if last.move == self.ROOT:
            return MO(self.DOMQ, i,
                      _response_ctl(self, position, self.DOMQ))
        r0 = _root_occ(position, i)
        dq = self._find(position, lambda k, o: o.justifier == r0
                        and o.move == self.DOMQ)
        if dq is None:
            return None
        # each answer to the domain question opens its own run of the
        # body (a jump back into the continuation replays it); moves are
        # attributed to runs along justifiers, responses to their trigger
        run: Dict[int, Optional[int]] = {}
        for k, o in enumerate(position.occurrences):
            if k in (r0, dq) or _root_occ(position, k) != r0:
                continue
            if o.justifier == dq:
                run[k] = k
            elif o.justifier in run:
                run[k] = run[o.justifier]
            else:
                run[k] = run.get(k - 1)
        da = run.get(i)
        if da is None:
            return None
        if i == da and self.mode == EXCEPTION \
                and last.move in self._e_image:
            return MO(("c", ("e",)), r0)
        body = position[da].move[2]
        if body[0] != "a":
            return None
        inner = self.inners.get(body[1])
        if inner is None:
            return None
        return self._delegate(position, r0, dq, da, run, body[1], inner)

    def _find(self, position: JS, pred) -> Optional[int]:
        for k in range(len(position)):
            if pred(k, position[k]):
                return k
        return None

    def _delegate(self, position: JS, r0: int, dq: int, da: int, run,
                  idx, inner: Strategy) -> Optional[MO]:
        def keep(k):
            return k == r0 or (k not in (dq, da) and run.get(k) == da)

        kept = [k for k in range(len(position)) if keep(k)]

        def rin(m):
            if m[0] == "g" and m[2][0] == "m":
                return ("g", ("q",), m[2][2])
            return m

        view = restrict(position, keep, arena=inner.arena, move_map=rin)
        r = inner.respond_memo(view)
        if r is None:
            return None
        move = r.move
        just = None if r.justifier is None else kept[r.justifier]
        if move[0] == "g":
            move = ("g", ("q",), ("m", idx, move[2]))
            if just == r0:
                # domain roots hang off the value answer, which the inner
                # component does not see
                just = da
        ctl = r.ctl
        if isinstance(ctl, int):
            ctl = kept[ctl]
        return MO(move, just, ctl)


class PointStrategy(Strategy):
    """A constant: ignore the context and play a renamed copy of the
    inner strategy inside the codomain member."""

    def __init__(self, inner: Strategy, gm, member, wrap: Dict[Move, Move],
                 mode: str, name: str):
        arena, earena, split = _mk_board(gm, member, mode)
        super().__init__(arena, mode=mode, earena=earena, split=split,
                         name=name)
        cod_moves = {("c", m) for m in _base(member).moves}
        if set(wrap.values()) != cod_moves:
            raise StrategyError(
                f"{name}: constant board does not match its type")
        self.inner = inner
        self.wrap = wrap
        self.unwrap = {v: k for k, v in wrap.items()}

    def respond(self, position: JS) -> Optional[MO]:
        occs = []
        for o in position.occurrences:
            m = self.unwrap.get(o.move)
            if m is None:
                return None
            occs.append(replace(o, move=m))
        r = self.inner.respond_memo(JS(self.inner.arena, tuple(occs)))
        if r is None:
            return None
        return replace(r, move=self.wrap[r.move])


def _exn_rename_body(b):
    if b[0] == "r":
        return ("r", ("p", "*", ("c", b[1])))
    x = b[1]
    if x[0] == "c":
        return ("l", ("p", "*", ("c", x[1])))
    return ("l", ("p", "*", ("g", ("q",), ("p", "*", ("c", x[2])))))


def _exn_rename(m: Move) -> Move:
    """The board of the exception strategies uses the bare
    Sigma((Sigma0 => Sigma1) x Sigma0) names; rename into the arena of the
    exn type ((1 -> 0) -> 1) x (1 -> 0)."""
    if m in (("q",), ("e",)):
        return m
    if m[0] == "a":
        return ("a", ("*", "*"))
    return ("m", ("*", "*"), _exn_rename_body(m[2]))


class _UnwrapStrategy(Strategy):
    """Present a closed denotation (board 1 => Sigma T) on the raw
    computation arena Sigma T."""

    def __init__(self, inner: Strategy, arena, earena, mode: str,
                 name: str = "denotation"):
        super().__init__(arena, mode=mode, earena=earena, name=name)
        self.inner = inner

    def respond(self, position: JS) -> Optional[MO]:
        occs = tuple(replace(o, move=("c", o.move))
                     for o in position.occurrences)
        r = self.inner.respond_memo(JS(self.inner.arena, occs))
        if r is None:
            return None
        return replace(r, move=r.move[1])


def _peel(gamma, n: int, k: int):
    g = gamma
    for _ in range(n - 1 - k):
        g = g[0]
    return g[1]


class _Denoter:
    """Structural recursion: values as family morphisms (reindexing plus
    per-index components), computations as per-index components into the
    lifted codomain."""

    def __init__(self, mode: str, elab, fuel: int):
        if mode not in (CONTROL, EXCEPTION):
            raise StrategyError(
                "denotation modes are 'control' and 'exception'")
        self.mode = mode
        self.exn = mode == EXCEPTION
        self.amode = AR.EXCEPTION if self.exn else AR.PLAIN
        self.elab = elab
        self.fuel = fuel

    def fam(self, t) -> AR.ArenaFamily:
        return AR.denote_type(t, self.amode)

    def sig(self, t):
        return AR.denote_comp_type(t, self.amode)

    def prod2(self, a, b):
        return (AR.product_e if self.exn else AR.product)(a, b)

    # -- values -------------------------------------------------------------

    def val(self, v, ctx, gfam):
        from . import syntax as S
        if isinstance(v, S.Var):
            return self._var(v, ctx, gfam)
        if isinstance(v, S.Unit):
            dst = self.fam(S.One())
            member = dst.arena("*")
            return dst, {g: "*" for g in gfam.indices}, {
                g: _empty_component(gfam.arena(g), member, self.mode)
                for g in gfam.indices}
        if isinstance(v, S.Pair):
            return self._pair(v, ctx, gfam)
        if isinstance(v, (S.Inj1, S.Inj2)):
            tag = "in1" if isinstance(v, S.Inj1) else "in2"
            bf, bre, bco = self.val(v.body, ctx, gfam)
            dst = self.fam(self.elab.type_of(v))
            return dst, {g: (tag, bre[g]) for g in gfam.indices}, bco
        if isinstance(v, S.Lambda):
            return self._lambda(v, ctx, gfam)
        if isinstance(v, (S.New, S.NewExn, S.Callcc)):
            return self._constant(v, ctx, gfam)
        raise StrategyError(f"no denotation for value {v!r}")

    def _var(self, v, ctx, gfam):
        names = [x for x, _ in ctx]
        if v.name not in names:
            raise StrategyError(f"unbound variable {v.name!r}")
        k = len(names) - 1 - names[::-1].index(v.name)
        tk = ctx[k][1]
        dst = self.fam(tk)
        n = len(ctx)

        def w(m):
            mm = ("r", m)
            for _ in range(n - 1 - k):
                mm = ("l", mm)
            return mm

        reindex, comps = {}, {}
        for g in gfam.indices:
            ik = _peel(g, n, k)
            reindex[g] = ik
            tka = dst.arena(ik)
            fwd = {w(m): m for m in _base(tka).moves}
            comps[g] = _relabel_component(gfam.arena(g), tka, fwd,
                                          self.mode, f"var({v.name})")
        return dst, reindex, comps

    def _pair(self, v, ctx, gfam):
        lf, lre, lco = self.val(v.left, ctx, gfam)
        rf, rre, rco = self.val(v.right, ctx, gfam)
        dst = self.fam(self.elab.type_of(v))
        reindex, comps = {}, {}
        for g in gfam.indices:
            i, j = lre[g], rre[g]
            reindex[g] = (i, j)
            comps[g] = _pair_component(gfam.arena(g), lco[g], rco[g],
                                       lf.arena(i), rf.arena(j), self.mode)
        return dst, reindex, comps

    def _lambda(self, v, ctx, gfam):
        from . import syntax as S
        t = self.elab.type_of(v)
        dom_fam = self.fam(t.dom)
        sig_cod = self.sig(t.cod)
        gfam2 = _fam_product(gfam, dom_fam, self.mode)
        body = self.comp(v.body, ctx + [(v.var, t.dom)], gfam2)
        dst = self.fam(t)
        reindex, comps = {}, {}
        for g in gfam.indices:
            reindex[g] = "*"
            inners = {i: body[(g, i)] for i in dom_fam.indices}
            comps[g] = _lambda_component(gfam.arena(g), dom_fam, sig_cod,
                                         inners, self.mode)
        return dst, reindex, comps

    def _constant(self, v, ctx, gfam):
        from . import syntax as S
        t = self.elab.type_of(v)
        if isinstance(v, S.New):
            content = t.cod.right.cod
            inner = CellStrategy(content, self.mode)
            wrap = {m: ("c", ("p", "*", ("c", m)))
                    for m in inner.arena.moves}
            name = "new"
        elif isinstance(v, S.Callcc):
            tt, ss = t.cod, t.dom.dom.cod
            inner = CallccStrategy(tt, ss, self.mode)
            wrap = {m: ("c", ("p", "*", m)) for m in inner.arena.moves}
            name = "callcc"
        else:
            inner = ExnEStrategy() if self.exn else ExnCStrategy()
            wrap = {m: ("c", ("p", "*", ("c", _exn_rename(m))))
                    for m in inner.arena.moves}
            name = "new_exn"
        dst = self.fam(t)
        member = dst.arena("*")
        reindex, comps = {}, {}
        for g in gfam.indices:
            reindex[g] = "*"
            comps[g] = PointStrategy(inner, gfam.arena(g), member, wrap,
                                     self.mode, name)
        return dst, reindex, comps

    # -- computations -------------------------------------------------------

    def comp(self, m, ctx, gfam):
        from . import syntax as S
        if isinstance(m, S.Return):
            return self._return(m, ctx, gfam)
        if isinstance(m, S.Let):
            return self._let(m, ctx, gfam)
        if isinstance(m, S.App):
            return self._app(m, ctx, gfam)
        if isinstance(m, S.Case):
            return self._case(m, ctx, gfam)
        if isinstance(m, S.Match):
            return self._match(m, ctx, gfam)
        if isinstance(m, S.Void):
            if len(gfam) != 0:
                raise StrategyError(
                    "void in a context with value shapes")
            return {}
        raise StrategyError(f"no denotation for computation {m!r}")

    def _return(self, m, ctx, gfam):
        f, re_, co = self.val(m.value, ctx, gfam)
        sig = self.sig(self.elab.type_of(m))
        comps = {}
        for g in gfam.indices:
            i = re_[g]
            eta = _eta_component(f.arena(i), i, sig, self.mode)
            comps[g] = compose(co[g], eta, self.fuel)
        return comps

    def _let(self, m, ctx, gfam):
        a_t = self.elab.type_of(m.bound)
        m1 = self.comp(m.bound, ctx, gfam)
        a_fam = self.fam(a_t)
        gfam2 = _fam_product(gfam, a_fam, self.mode)
        body = self.comp(m.body, ctx + [(m.var, a_t)], gfam2)
        sig_a = self.sig(a_t)
        sig_b = self.sig(self.elab.type_of(m))
        lift = AR.exn_lifted_sum if self.exn else AR.lifted_sum
        comps = {}
        for g in gfam.indices:
            gm = gfam.arena(g)
            pid = _pair_component(gm, _copycat(gm, self.mode), m1[g],
                                  gm, sig_a, self.mode)
            dom = self.prod2(gm, sig_a)
            d = lift(AR.ArenaFamily(tuple(
                ((g, i), self.prod2(gm, a_fam.arena(i)))
                for i in a_fam.indices)))
            arena, earena, split = _mk_board(dom, d, self.mode)
            st = PairedStrategy(arena, _strength_map(g), mode=self.mode,
                                earena=earena, split=split,
                                name="strength")
            star = StarStrategy(
                d, sig_b,
                {(g, i): body[(g, i)] for i in a_fam.indices},
                self.mode)
            comps[g] = compose(compose(pid, st, self.fuel), star,
                               self.fuel)
        return comps

    def _app(self, m, ctx, gfam):
        tf = self.elab.type_of(m.fun)
        fF, reF, coF = self.val(m.fun, ctx, gfam)
        fA, reA, coA = self.val(m.arg, ctx, gfam)
        sig_b = self.sig(tf.cod)
        comps = {}
        for g in gfam.indices:
            gm = gfam.arena(g)
            j = reA[g]
            fm = fF.arena(reF[g])
            pc = _pair_component(gm, coF[g], coA[g], fm, fA.arena(j),
                                 self.mode)
            dom = self.prod2(fm, fA.arena(j))
            arena, earena, split = _mk_board(dom, sig_b, self.mode)
            appc = PairedStrategy(arena, _app_map(j), mode=self.mode,
                                  earena=earena, split=split, name="app")
            comps[g] = compose(pc, appc, self.fuel)
        return comps

    def _case(self, m, ctx, gfam):
        ts = self.elab.type_of(m.value)
        fV, reV, coV = self.val(m.value, ctx, gfam)
        lfam, rfam = self.fam(ts.left), self.fam(ts.right)
        b1 = self.comp(m.body1, ctx + [(m.var1, ts.left)],
                       _fam_product(gfam, lfam, self.mode))
        b2 = self.comp(m.body2, ctx + [(m.var2, ts.right)],
                       _fam_product(gfam, rfam, self.mode))
        comps = {}
        for g in gfam.indices:
            gm = gfam.arena(g)
            tag, i = reV[g]
            member = fV.arena((tag, i))
            pc = _pair_component(gm, _copycat(gm, self.mode), coV[g],
                                 gm, member, self.mode)
            inner = (b1 if tag == "in1" else b2)[(g, i)]
            comps[g] = compose(pc, inner, self.fuel)
        return comps

    def _match(self, m, ctx, gfam):
        tp = self.elab.type_of(m.value)
        fV, reV, coV = self.val(m.value, ctx, gfam)
        lfam, rfam = self.fam(tp.left), self.fam(tp.right)
        gfam2 = _fam_product(_fam_product(gfam, lfam, self.mode), rfam,
                             self.mode)
        body = self.comp(m.body,
                         ctx + [(m.var1, tp.left), (m.var2, tp.right)],
                         gfam2)
        comps = {}
        for g in gfam.indices:
            gm = gfam.arena(g)
            i, j = reV[g]
            member = fV.arena((i, j))
            pc = _pair_component(gm, _copycat(gm, self.mode), coV[g],
                                 gm, member, self.mode)
            dom = self.prod2(gm, member)
            cod = self.prod2(self.prod2(gm, lfam.arena(i)),
                             rfam.arena(j))
            fwd = {}
            for dm in _base(dom).moves:
                if dm[0] == "l":
                    fwd[dm] = ("l", ("l", dm[1]))
                elif dm[1][0] == "l":
                    fwd[dm] = ("l", ("r", dm[1][1]))
                else:
                    fwd[dm] = ("r", dm[1][1])
            assoc = _relabel_component(dom, cod, fwd, self.mode, "assoc")
            comps[g] = compose(compose(pc, assoc, self.fuel),
                               body[((g, i), j)], self.fuel)
        return comps


# ---------------------------------------------------------------------------
# Factorization through callcc and through the new-exception strategy

_CC_LABEL = ("c", ("q",))
_CC_OK = ("g", ("q",), ("p", "*", ("c", ("q",))))
_CC_JUMP = ("g", ("q",),
            ("p", "*", ("g", ("q",), ("p", "*", ("c", ("q",))))))
_CC_CAUGHT = ("c", ("a", "*"))


def lam_callcc() -> Strategy:
    """callcc at (1, 0), presented as a point of its own board."""
    from . import syntax as S
    cc = CallccStrategy(S.One(), S.Zero(), mode=CONTROL)
    cc.split = None
    cc.name = "lam(callcc)"
    return cc


class FactorCallcc(Strategy):
    """Local, well-bracketed presentation of a control-blind strategy:
    interject a fresh label (and its ok) after each Opponent question, and
    route every answer through a jump into the target question's label
    block, so the caught answer closes the intervening questions."""

    def __init__(self, sigma: Strategy):
        if sigma.split is not None:
            raise StrategyError("expected a strategy on a raw arena")
        carena = lam_callcc().arena
        board = AR.function_space(carena, sigma.arena)
        super().__init__(board, mode=CONTROL, split=(carena, sigma.arena),
                         name=f"factor_callcc({sigma.name})")
        self.sigma = sigma

    def _ext_view(self, position: JS) -> Tuple[JS, List[int]]:
        ext = [k for k in range(len(position))
               if position[k].move[0] == "c"]
        u = restrict(position, lambda k: position[k].move[0] == "c",
                     arena=self.sigma.arena, move_map=lambda mv: mv[1])
        return u, ext

    def _play_sigma(self, position: JS) -> Optional[MO]:
        u, ext = self._ext_view(position)
        rho = self.sigma.respond_memo(u)
        if rho is None:
            return None
        just = None if rho.justifier is None else ext[rho.justifier]
        if self.sigma.arena.label[rho.move] == AR.Q:
            return MO(("c", rho.move), just, pending(position))
        # answers go through the target question's label block
        d = ext[rho.justifier]
        ok_d = d + 2
        if ok_d >= len(position) or position[ok_d].move[0] != "g" \
                or position[ok_d].move[2] != _CC_OK:
            return None
        r = position[ok_d].move[1]
        return MO(("g", r, _CC_JUMP), ok_d, pending(position))

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        m = position[i].move
        if m[0] == "c":
            if position.is_question(i):
                r = _thread_root(position, i)[1]
                return MO(("g", r, _CC_LABEL), _root_occ(position, i), i)
            return self._play_sigma(position)
        x = m[2]
        if x == _CC_OK:
            return self._play_sigma(position)
        if x == _CC_CAUGHT:
            lbl = position[i].justifier
            u, ext = self._ext_view(position)
            rho = self.sigma.respond_memo(u)
            if rho is None or self.sigma.arena.label[rho.move] == AR.Q:
                return None
            return MO(("c", rho.move), ext[rho.justifier], None)
        return None


def factor_callcc(sigma: Strategy) -> Strategy:
    return FactorCallcc(sigma)


class FactorExn(Strategy):
    """Control-blind presentation of a control strategy over the
    new-exception board: raise the exception before responding to each
    Opponent question (the handler that catches it decodes the question's
    control pointer), and open a handler marking each Player question's
    own pointer before playing it."""

    def __init__(self, sigma: Strategy):
        if sigma.split is not None:
            raise StrategyError("expected a strategy on a raw arena")
        exn = exn_c_arena()
        board = AR.function_space(exn, sigma.arena)
        super().__init__(board, mode=CONTROL, split=(exn, sigma.arena),
                         name=f"factor_exn({sigma.name})")
        self.sigma = sigma

    # -- protocol bookkeeping ------------------------------------------------

    def _is_base_try(self, position: JS, t: int) -> bool:
        prev = position[t - 1].move
        return prev[0] == "g" and prev[2] == EXNC_A

    def _thread_ea(self, position: JS, i: int) -> Optional[int]:
        i0 = _root_occ(position, i)
        for k in range(len(position)):
            mv = position[k].move
            if mv[0] == "g" and mv[2] == EXNC_A \
                    and _root_occ(position, k) == i0:
                return k
        return None

    def _decode(self, position: JS, g: int, idx: Dict[int, int]) -> PL.Ctl:
        cidx = g + 6 if position[g].justifier is None else g + 2
        if cidx >= len(position):
            return STAR
        c = position[cidx]
        if c.move[0] != "g" or c.move[2] != EXNC_CAUGHT:
            return STAR
        t = c.justifier
        if self._is_base_try(position, t):
            return STAR
        return idx[t + 2]

    def _sigma_view(self, position: JS) -> Tuple[JS, List[int]]:
        """The external play with every control pointer reconstructed
        from the raise/caught and try bookkeeping alone."""
        ext = [k for k in range(len(position))
               if position[k].move[0] == "c"]
        idx = {g: n for n, g in enumerate(ext)}
        occs = []
        for n, g in enumerate(ext):
            occ = position[g]
            just = None if occ.justifier is None else idx[occ.justifier]
            ctl: PL.Ctl = None
            if position.is_question(g):
                if n % 2 == 1:
                    # our question points at its ok; the handler below the
                    # ok records the intended target
                    t = position[occ.ctl].justifier
                    ctl = idx[position[t].ctl]
                else:
                    ctl = self._decode(position, g, idx)
            occs.append(MO(occ.move[1], just, ctl))
        return JS(self.sigma.arena, tuple(occs)), ext

    def _respond_sigma(self, position: JS, ka: Optional[int]
                       ) -> Optional[MO]:
        u, ext = self._sigma_view(position)
        rho = self.sigma.respond_memo(u)
        if rho is None:
            return None
        if self.sigma.arena.label[rho.move] == AR.Q:
            if ka is None:
                return None
            r = position[ka].move[1]
            return MO(("g", r, EXNC_TRY), ka, ext[rho.ctl])
        just = None if rho.justifier is None else ext[rho.justifier]
        return MO(("c", rho.move), just, None)

    def respond(self, position: JS) -> Optional[MO]:
        i = len(position) - 1
        occ = position[i]
        m = occ.move
        if m[0] == "c":
            if occ.justifier is None:
                return MO(("g", m[1], EXNC_Q), i, i)
            if position.is_question(i):
                ka = self._thread_ea(position, i)
                if ka is None:
                    return None
                r = position[ka].move[1]
                # aim the raise so the catching handler encodes this
                # question's pointer: through the question itself when it
                # points at one of our questions, at the base handler's ok
                # when it points at the root
                ctl = ka + 2 if occ.ctl == STAR else i
                if ctl >= len(position):
                    return None
                return MO(("g", r, EXNC_RAISE), ka, ctl)
            # Opponent answered: respond without a decode cycle
            return self._respond_sigma(position,
                                       self._thread_ea(position, i))
        r, em = m[1], m[2]
        if em == EXNC_A:
            return MO(("g", r, EXNC_TRY), i, _root_occ(position, i))
        if em == EXNC_OK:
            t = occ.justifier
            if self._is_base_try(position, t):
                ka = position[t].justifier
                return MO(("g", r, EXNC_RAISE), ka, i)
            u, ext = self._sigma_view(position)
            rho = self.sigma.respond_memo(u)
            if rho is None or self.sigma.arena.label[rho.move] != AR.Q:
                return None
            just = None if rho.justifier is None else ext[rho.justifier]
            return MO(("c", rho.move), just, i)
        if em == EXNC_CAUGHT:
            return self._respond_sigma(position, position[i - 1].justifier)
        return None


def factor_exn(sigma: Strategy) -> Strategy:
    return FactorExn(sigma)


# ---------------------------------------------------------------------------
# Random compact strategies

def player_options(s: JS, mode: str) -> List[MO]:
    """All legal Player extensions of an odd-length position."""
    arena = s.arena
    i = len(s)
    answered = {s[k].justifier for k in range(i) if not s.is_question(k)}
    out: List[MO] = []
    for m in sorted(arena.moves, key=repr):
        if arena.polarity(m) != "P":
            continue
        if arena.is_initial(m):
            justs: List[Optional[int]] = [None]
        else:
            justs = [j for j in range(i) if arena.enables(s[j].move, m)
                     and not (arena.label[m] == AR.A and j in answered)]
        for j in justs:
            if mode == CONTROL and arena.label[m] == AR.Q:
                for c in range(0, i, 2):
                    if s.is_question(c):
                        out.append(MO(m, j, c))
            else:
                out.append(MO(m, j, None))
    return out


def random_compact_strategy(arena: Arena, rng, mode: str = PLAIN,
                            n_walks: int = 12, max_len: int = 10,
                            stop_p: float = 0.25,
                            well_opened: bool = True,
                            wb: bool = False,
                            name: str = "random") -> Strategy:
    """A deterministic, even-prefix-closed, finite strategy grown by
    random walks: Opponent extensions are sampled among legal ones (with
    initial questions pointing to the root and later ones to Player
    questions), Player responses are drawn once per position and reused.
    With `wb`, both players answer only the pending question, so every
    play of the result is well-bracketed."""
    resp: Dict[tuple, Optional[tuple]] = {}

    def key(pos: JS) -> tuple:
        return tuple((o.move, o.justifier, o.ctl) for o in pos.occurrences)

    def bracket(pos: JS, opts: List[MO]) -> List[MO]:
        if not wb:
            return opts
        p = PL.pending(pos)
        return [o for o in opts
                if arena.label[o.move] == AR.Q or o.justifier == p]

    for _ in range(n_walks):
        pos = JS(arena)
        while len(pos) + 1 <= max_len:
            opts = bracket(pos, opponent_options(pos, mode))
            if well_opened and len(pos) > 0:
                opts = [o for o in opts if o.justifier is not None]
            if not opts:
                break
            pos = pos.snoc(rng.choice(opts))
            k = key(pos)
            if k in resp:
                r = resp[k]
                if r is None:
                    break
                pos = pos.snoc(MO(*r))
                continue
            popts = bracket(pos, player_options(pos, mode))
            if not popts or rng.random() < stop_p:
                resp[k] = None
                break
            r = rng.choice(popts)
            resp[k] = (r.move, r.justifier, r.ctl)
            pos = pos.snoc(r)

    def fn(position: JS) -> Optional[MO]:
        r = resp.get(key(position))
        return None if r is None else MO(*r)

    return FunctionStrategy(arena, fn, mode=mode, name=name)


class RelabelIso(Strategy):
    """Copycat through a move relabelling dom <-> cod: an invertible
    strategy witnessing that a bijection of move trees which preserves
    enabling (but not necessarily question/answer labels) is an
    isomorphism in the plain category."""

    def __init__(self, dom: Arena, cod: Arena, fwd: Dict[Move, Move]):
        super().__init__(AR.function_space(dom, cod), mode=PLAIN,
                         split=(dom, cod), name="relabel-iso")
        self.dom, self.cod, self.fwd = dom, cod, fwd
        self.inv = {v: k for k, v in fwd.items()}

    def respond(self, pos: JS) -> Optional[MO]:
        i = len(pos) - 1
        m = pos[i].move
        if m[0] == "c":
            dm = self.inv[m[1]]
            if self.dom.is_initial(dm):
                r = _root_occ(pos, i)
                return MO(("g", pos[r].move[1], dm), r)
            p = _partner(pos, pos[i].justifier)
            return MO(("g", _thread_root(pos, i), dm), p)
        cm = self.fwd[m[2]]
        p = _partner(pos, pos[i].justifier)
        return MO(("c", cm), p)


def invertible_pair(dom: Arena, cod: Arena,
                    fwd: Dict[Move, Move]) -> Tuple[Strategy, Strategy]:
    """The forward and backward copycats through a move relabelling."""
    return (RelabelIso(dom, cod, fwd),
            RelabelIso(cod, dom, {v: k for k, v in fwd.items()}))


def sigma1_fun_iso() -> Tuple[Strategy, Strategy]:
    """The invertible pair between Sigma1 and Sigma0 => Sigma0: the two
    arenas have the same move tree, with the answer of Sigma1 relabelled
    as the inner question."""
    b = AR.function_space(AR.sigma0(), AR.sigma0())
    fwd = {("q",): ("c", ("q",)),
           ("a", "*"): ("g", ("q",), ("q",))}
    return invertible_pair(AR.sigma1(), b, fwd)


def is_ep_strategy(sigma: Strategy, max_len: int = 8) -> bool:
    """An exception-arena strategy is exception-propagating when the K
    image of its play-set is a well-defined control strategy: the images
    are even-length (the strategy always propagates Opponent raises) and
    even-branching (responses depend only on the image)."""
    try:
        k_functor(sigma, max_len=max_len)
    except StrategyError:
        return False
    return True


def random_ep_strategy(earena: ExceptionArena, rng,
                       n_walks: int = 12, max_len: int = 10,
                       stop_p: float = 0.25,
                       name: str = "random-ep") -> Strategy:
    """A finite exception-propagating strategy grown by random walks on
    an exception arena: after any exception answer, the walk forces the
    immediate propagation to the pending question, so every even play is
    exception-propagating."""
    arena = earena.base if hasattr(earena, "base") else earena
    exn = frozenset(earena.e_answer.values())
    resp: Dict[tuple, Optional[tuple]] = {}

    def key(pos: JS) -> tuple:
        return tuple((o.move, o.justifier, o.ctl) for o in pos.occurrences)

    def propagation(pos: JS) -> Optional[MO]:
        p = PL.pending(pos)
        if p is None:
            return None
        m = earena.e_answer.get(pos[p].move)
        if m is None:
            return None
        return MO(m, p)

    for _ in range(n_walks):
        pos = JS(arena)
        while len(pos) + 1 <= max_len:
            if len(pos) > 0 and pos[len(pos) - 1].move in exn:
                o = propagation(pos)
                if o is None:
                    break
                opts = [o]
            else:
                opts = [o for o in opponent_options(pos, PLAIN)
                        if len(pos) == 0 or o.justifier is not None]
            if not opts:
                break
            pos = pos.snoc(rng.choice(opts))
            k = key(pos)
            if k in resp:
                r = resp[k]
                if r is None:
                    break
                pos = pos.snoc(MO(*r))
                continue
            if pos[len(pos) - 1].move in exn:
                r = propagation(pos)
                popts = [] if r is None else [r]
            else:
                popts = player_options(pos, PLAIN)
                if rng.random() < stop_p:
                    popts = []
            if not popts:
                resp[k] = None
                break
            r = rng.choice(popts)
            resp[k] = (r.move, r.justifier, r.ctl)
            pos = pos.snoc(r)

    def fn(position: JS) -> Optional[MO]:
        r = resp.get(key(position))
        return None if r is None else MO(*r)

    return FunctionStrategy(arena, fn, mode=PLAIN, earena=earena, name=name)


def denote(term, mode: str = CONTROL, fuel: int = 2000,
           expected=None) -> Strategy:
    """Compositional denotation of a closed core term in the chosen
    model, presented on the raw computation arena of its type."""
    from . import syntax as S
    from . import translations as TR
    t = S.desugar(term)
    if isinstance(t, S.ValueTerm):
        t = S.Return(t)
    if not S.is_core(t):
        raise StrategyError("machine-only constants have no denotation")
    elab = TR.elaborate(t, expected=expected)
    d = _Denoter(mode, elab, fuel)
    exn = mode == EXCEPTION
    gfam = AR.ArenaFamily((("*", AR.EMPTY_E if exn else AR.EMPTY),))
    comps = d.comp(t, [], gfam)
    sig = d.sig(elab.type_of(t))
    if exn:
        return _UnwrapStrategy(comps["*"], sig.base, sig, mode)
    return _UnwrapStrategy(comps["*"], sig, None, mode)
