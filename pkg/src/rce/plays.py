"""Justified sequences and control sequences over arenas: legality,
pending/open computations, bracketing predicates, restriction with control
pointer rerouting, exception locality/propagation, the K map from
exception plays to control plays, and the factorization maps.

Justifiers and control references are absolute indices into the occurrence
list; the distinguished control root token is the string "*".
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple, Union

from . import arenas as AR
from .arenas import Arena, ExceptionArena, Move

STAR = "*"
Ctl = Union[int, str, None]


class PlayError(Exception):
    pass


@dataclass(frozen=True)
class MoveOccurrence:
    move: Move
    justifier: Optional[int] = None
    ctl: Ctl = None


@dataclass(frozen=True)
class JustifiedSequence:
    arena: Arena
    occurrences: Tuple[MoveOccurrence, ...] = ()

    def __len__(self):
        return len(self.occurrences)

    def __getitem__(self, i):
        return self.occurrences[i]

    def prefix(self, n: int) -> "JustifiedSequence":
        return JustifiedSequence(self.arena, self.occurrences[:n])

    def snoc(self, occ: MoveOccurrence) -> "JustifiedSequence":
        return JustifiedSequence(self.arena, self.occurrences + (occ,))

    def moves(self) -> Tuple[Move, ...]:
        return tuple(o.move for o in self.occurrences)

    def polarity(self, i: int) -> str:
        return "O" if i % 2 == 0 else "P"

    def is_question(self, i: int) -> bool:
        return self.arena.label[self.occurrences[i].move] == AR.Q

    def underlying(self) -> "JustifiedSequence":
        """|s|: forget control pointers."""
        return JustifiedSequence(
            self.arena,
            tuple(replace(o, ctl=None) for o in self.occurrences))


# ---------------------------------------------------------------------------
# Legality

def is_legal(s: JustifiedSequence, arena: Optional[Arena] = None) -> bool:
    arena = arena or s.arena
    for i, occ in enumerate(s.occurrences):
        if occ.move not in arena.moves:
            return False
        # alternation: arena polarity must match position parity
        if arena.polarity(occ.move) != s.polarity(i):
            return False
        if arena.is_initial(occ.move):
            if occ.justifier is not None:
                return False
        else:
            j = occ.justifier
            if j is None or not (0 <= j < i):
                return False
            if not arena.enables(s[j].move, occ.move):
                return False
    return True


def is_control_sequence(s: JustifiedSequence) -> bool:
    """Questions all carry control pointers of the right polarity; answers
    carry none."""
    for i, occ in enumerate(s.occurrences):
        if s.is_question(i):
            if occ.ctl == STAR:
                if s.polarity(i) != "O":
                    return False
            elif isinstance(occ.ctl, int):
                j = occ.ctl
                if not (0 <= j < i) or not s.is_question(j):
                    return False
                if s.polarity(j) == s.polarity(i):
                    return False
            else:
                return False
        else:
            if occ.ctl is not None:
                return False
    return True


def is_legal_control(s: JustifiedSequence) -> bool:
    return is_legal(s) and is_control_sequence(s)


# ---------------------------------------------------------------------------
# Pending and open questions

def pending(s: JustifiedSequence, upto: Optional[int] = None
            ) -> Optional[int]:
    """Index of the pending question of s (or of its prefix of length
    `upto`), None if every question is answered."""
    n = len(s) if upto is None else upto
    while n > 0:
        i = n - 1
        if s.is_question(i):
            return i
        j = s[i].justifier
        if j is None:
            raise PlayError("unjustified answer")
        n = j
    return None


def _open_sets(s: JustifiedSequence) -> List[Tuple[int, ...]]:
    """open_after[i] = open-question indices of s[0..i] (inclusive)."""
    out: List[Tuple[int, ...]] = []

    def upto(k: int) -> Tuple[int, ...]:
        return out[k] if k >= 0 else ()

    for i, occ in enumerate(s.occurrences):
        if not s.is_question(i):
            j = occ.justifier
            out.append(upto((j if j is not None else 0) - 1))
        elif occ.ctl == STAR or occ.ctl is None:
            # questions of plain sequences behave like root-pointing ones
            out.append((i,) if occ.ctl == STAR else upto(i - 1) + (i,))
        else:
            out.append(upto(occ.ctl) + (i,))
    return out


def open_questions(s: JustifiedSequence) -> Tuple[int, ...]:
    """The open questions of a control sequence, in sequence order."""
    if len(s) == 0:
        return ()
    return _open_sets(s)[len(s) - 1]


# ---------------------------------------------------------------------------
# Bracketing

def is_well_bracketed(s: JustifiedSequence) -> bool:
    return _bracketed(s, lambda i: True)


def is_player_well_bracketed(s: JustifiedSequence) -> bool:
    return _bracketed(s, lambda i: s.polarity(i) == "P")


def _bracketed(s: JustifiedSequence, want: Callable[[int], bool]) -> bool:
    for i in range(len(s)):
        if not s.is_question(i) and want(i):
            if pending(s, i) != s[i].justifier:
                return False
    return True


def is_local(s: JustifiedSequence) -> bool:
    """Player control locality: every Player question points to the
    pending question."""
    for i in range(len(s)):
        if s.is_question(i) and s.polarity(i) == "P":
            if s[i].ctl != pending(s, i):
                return False
    return True


# ---------------------------------------------------------------------------
# Restriction

def restrict(s: JustifiedSequence, keep: Callable[[int], bool],
             arena: Optional[Arena] = None,
             move_map: Optional[Callable[[Move], Move]] = None
             ) -> JustifiedSequence:
    """Restrict to the occurrences selected by `keep` (an index predicate).
    Justifiers are followed through hidden occurrences; a question's control
    pointer is rerouted to the most recent member of the open set at its
    target which is kept."""
    opens = _open_sets(s)
    new_index: Dict[int, int] = {}
    occs: List[MoveOccurrence] = []
    for i, occ in enumerate(s.occurrences):
        if not keep(i):
            continue
        # justifier chain
        j = occ.justifier
        while j is not None and not keep(j):
            j = s[j].justifier
        nj = None if j is None else new_index[j]
        # control pointer
        ctl: Ctl = None
        if s.is_question(i) and occ.ctl is not None:
            if occ.ctl == STAR:
                ctl = STAR
            else:
                kept_open = [k for k in opens[occ.ctl] if keep(k)]
                ctl = new_index[kept_open[-1]] if kept_open else STAR
        new_index[i] = len(occs)
        m = occ.move if move_map is None else move_map(occ.move)
        occs.append(MoveOccurrence(m, nj, ctl))
    return JustifiedSequence(arena if arena is not None else s.arena,
                             tuple(occs))


# ---------------------------------------------------------------------------
# Exception predicates and the K map

def _is_exn(m: Move, ea: ExceptionArena) -> bool:
    return m in set(ea.e_answer.values())


def is_exception_local(s: JustifiedSequence, ea: ExceptionArena) -> bool:
    """Player propagates and never raises."""
    exn = set(ea.e_answer.values())
    for i in range(1, len(s), 2):  # Player positions
        prev_exn = s[i - 1].move in exn
        here_exn = s[i].move in exn
        if prev_exn:
            # must propagate: answer the pending question's exception answer
            p = pending(s, i)
            if not here_exn or p is None \
                    or s[i].justifier != p \
                    or s[i].move != ea.e_answer[s[p].move]:
                return False
        else:
            if here_exn:
                return False
    return True


def _ep_prefix_len(s: JustifiedSequence, ea: ExceptionArena) -> int:
    """Length of the greatest exception-propagating prefix: exception
    answers come in adjacent pairs (at either parity) whose second member
    answers the question pending after the first."""
    exn = set(ea.e_answer.values())
    i = 0
    while i < len(s):
        if s[i].move in exn:
            if i + 1 >= len(s) or s[i + 1].move not in exn:
                return i
            p = pending(s, i + 1)
            if p is None or s[i + 1].justifier != p \
                    or s[i + 1].move != ea.e_answer[s[p].move]:
                return i
            i += 2
        else:
            i += 1
    return len(s)


def is_exception_propagating(s: JustifiedSequence,
                             ea: ExceptionArena) -> bool:
    return _ep_prefix_len(s, ea) == len(s)


def k_map(s: JustifiedSequence, ea: ExceptionArena) -> JustifiedSequence:
    """Decorate with pending-targeted control pointers, then delete
    exception answers; non-propagating input is truncated to its greatest
    exception-propagating prefix."""
    t = s.prefix(_ep_prefix_len(s, ea))
    exn = set(ea.e_answer.values())
    decorated: List[MoveOccurrence] = []
    for i, occ in enumerate(t.occurrences):
        if t.is_question(i):
            p = pending(t, i)
            decorated.append(replace(occ, ctl=STAR if p is None else p))
        else:
            decorated.append(occ)
    dec = JustifiedSequence(t.arena, tuple(decorated))
    out = restrict(dec, lambda i: dec[i].move not in exn,
                   arena=AR.erase_exception_answers(ea))
    return out


# ---------------------------------------------------------------------------
# Trace format

def emit_trace(s: JustifiedSequence,
               names: Optional[Dict[Move, str]] = None) -> str:
    """One occurrence per line:
    `idx <moveId> [O|P] [Q|A] just=<idx|-> ctl=<idx|*|->`."""
    lines = []
    for i, occ in enumerate(s.occurrences):
        name = (names or {}).get(occ.move, AR._move_name(occ.move))
        just = "-" if occ.justifier is None else str(occ.justifier)
        ctl = "-" if occ.ctl is None else str(occ.ctl)
        kind = s.arena.label[occ.move]
        lines.append(f"{i} {name} {s.polarity(i)} {kind} "
                     f"just={just} ctl={ctl}")
    return "\n".join(lines)


def parse_trace(text: str, arena: Arena,
                names: Optional[Dict[Move, str]] = None
                ) -> JustifiedSequence:
    by_name = {v: k for k, v in (names or {}).items()}
    for m in arena.moves:
        by_name.setdefault(AR._move_name(m), m)
    occs = []
    for line in text.strip().splitlines():
        parts = line.split()
        if len(parts) != 6:
            raise PlayError(f"malformed trace line: {line!r}")
        idx, name, pol, kind, just, ctl = parts
        if int(idx) != len(occs):
            raise PlayError(f"bad index in line: {line!r}")
        move = by_name.get(name)
        if move is None:
            raise PlayError(f"unknown move {name!r}")
        jv = just[len("just="):]
        cv = ctl[len("ctl="):]
        justifier = None if jv == "-" else int(jv)
        c: Ctl = None if cv == "-" else (STAR if cv == STAR else int(cv))
        occs.append(MoveOccurrence(move, justifier, c))
    return JustifiedSequence(arena, tuple(occs))
