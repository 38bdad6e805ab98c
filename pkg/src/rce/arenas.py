"""Arena data model and constructions: product, function-space graft,
lifted sums, set-indexed families, exception arenas, the forgetful maps
(relabelling answers as questions; forgetting exception structure), the
exception-answer erasure, type denotations in all three modes, and the
structural CPS isomorphism.

Moves are construction-trace paths (nested tuples), so every construction
produces canonical node names and isomorphism checking reduces to
comparison of canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from . import syntax as S

Move = tuple
Q, A = "Q", "A"


class ArenaError(Exception):
    pass


class Arena:
    """A bipartite labelled forest: moves, child -> parent enabling map,
    and a question/answer labelling. Roots are Opponent moves; polarity
    alternates along enabling edges."""

    def __init__(self, moves: Iterable[Move],
                 parent: Dict[Move, Optional[Move]],
                 label: Dict[Move, str],
                 check: bool = True):
        self.moves: FrozenSet[Move] = frozenset(moves)
        self.parent: Dict[Move, Optional[Move]] = dict(parent)
        self.label: Dict[Move, str] = dict(label)
        self._children: Dict[Move, List[Move]] = {m: [] for m in self.moves}
        for m in sorted(self.moves, key=repr):
            p = self.parent.get(m)
            if p is not None:
                self._children[p].append(m)
        self._depth: Dict[Move, int] = {}
        if check:
            self.check_invariants()

    # -- structure ----------------------------------------------------------

    @property
    def roots(self) -> List[Move]:
        return sorted((m for m in self.moves if self.parent.get(m) is None),
                      key=repr)

    def children(self, m: Move) -> List[Move]:
        return list(self._children[m])

    def enables(self, m: Move, n: Move) -> bool:
        return self.parent.get(n) == m

    def depth(self, m: Move) -> int:
        if m not in self._depth:
            p = self.parent.get(m)
            self._depth[m] = 0 if p is None else self.depth(p) + 1
        return self._depth[m]

    def polarity(self, m: Move) -> str:
        return "O" if self.depth(m) % 2 == 0 else "P"

    def is_leaf(self, m: Move) -> bool:
        return not self._children[m]

    def is_initial(self, m: Move) -> bool:
        return self.parent.get(m) is None

    # -- invariants ---------------------------------------------------------

    def check_invariants(self) -> None:
        for m in self.moves:
            p = self.parent.get(m)
            if p is not None and p not in self.moves:
                raise ArenaError(f"dangling parent of {m!r}")
            if self.label.get(m) not in (Q, A):
                raise ArenaError(f"unlabelled move {m!r}")
            if self.label[m] == A:
                if p is None:
                    raise ArenaError(f"initial answer {m!r}")
                if self.label[p] != Q:
                    raise ArenaError(f"answer {m!r} enabled by an answer")
        # acyclicity: every move reaches a root
        for m in self.moves:
            seen = set()
            cur: Optional[Move] = m
            while cur is not None:
                if cur in seen:
                    raise ArenaError(f"cycle through {m!r}")
                seen.add(cur)
                cur = self.parent.get(cur)

    # -- canonical form -----------------------------------------------------

    def _form(self, m: Move) -> tuple:
        return (self.label[m],
                tuple(sorted(self._form(c) for c in self.children(m))))

    def canonical_form(self) -> tuple:
        return tuple(sorted(self._form(r) for r in self.roots))

    def __repr__(self):
        return f"Arena({len(self.moves)} moves, {len(self.roots)} roots)"


EMPTY = Arena((), {}, {})


class ExceptionArena:
    """An arena together with a map sending each question to its unique
    exception-answer child (a leaf)."""

    def __init__(self, base: Arena, e_answer: Dict[Move, Move],
                 check: bool = True):
        self.base = base
        self.e_answer: Dict[Move, Move] = dict(e_answer)
        if check:
            self.check_invariants()

    def is_exception_answer(self, m: Move) -> bool:
        return m in self._image()

    def _image(self) -> FrozenSet[Move]:
        return frozenset(self.e_answer.values())

    def check_invariants(self) -> None:
        b = self.base
        questions = {m for m in b.moves if b.label[m] == Q}
        if set(self.e_answer) != questions:
            raise ArenaError("eAnswer is not total on questions")
        img = list(self.e_answer.values())
        if len(set(img)) != len(img):
            raise ArenaError("eAnswer is not injective")
        for q, a in self.e_answer.items():
            if not b.enables(q, a):
                raise ArenaError(f"eAnswer({q!r}) not a child")
            if not b.is_leaf(a):
                raise ArenaError(f"eAnswer({q!r}) not a leaf")
            if b.label[a] != A:
                raise ArenaError(f"eAnswer({q!r}) not an answer")

    def _form(self, m: Move) -> tuple:
        b = self.base
        return (b.label[m], m in self._image(),
                tuple(sorted(self._form(c) for c in b.children(m))))

    def canonical_form(self) -> tuple:
        return tuple(sorted(self._form(r) for r in self.base.roots))

    def __repr__(self):
        return f"ExceptionArena({len(self.base.moves)} moves)"


EMPTY_E = ExceptionArena(EMPTY, {})


def are_isomorphic(a, b) -> bool:
    """Isomorphism up to the canonical renaming (label- and, for exception
    arenas, exception-structure-preserving)."""
    return a.canonical_form() == b.canonical_form()


# ---------------------------------------------------------------------------
# Constructions on plain arenas

def _retag(arena: Arena, f) -> Tuple[dict, dict, dict]:
    moves = {m: f(m) for m in arena.moves}
    parent = {f(m): (None if arena.parent.get(m) is None
                     else f(arena.parent[m])) for m in arena.moves}
    label = {f(m): arena.label[m] for m in arena.moves}
    return moves, parent, label


def product(a: Arena, b: Arena) -> Arena:
    """Disjoint sum of forests."""
    _, pa, la = _retag(a, lambda m: ("l", m))
    _, pb, lb = _retag(b, lambda m: ("r", m))
    return Arena(list(pa) + list(pb), {**pa, **pb}, {**la, **lb})


def product_list(arenas: List[Arena], tags: Optional[List] = None) -> Arena:
    """Indexed disjoint sum (finite product over a family's index set)."""
    if tags is None:
        tags = list(range(len(arenas)))
    parent: Dict[Move, Optional[Move]] = {}
    label: Dict[Move, str] = {}
    for tag, a in zip(tags, arenas):
        _, pa, la = _retag(a, lambda m, tag=tag: ("p", tag, m))
        parent.update(pa)
        label.update(la)
    return Arena(list(parent), parent, label)


def function_space(a: Arena, b: Arena) -> Arena:
    """Graft a copy of A under each root of B."""
    _, pb, lb = _retag(b, lambda m: ("c", m))
    parent: Dict[Move, Optional[Move]] = dict(pb)
    label: Dict[Move, str] = dict(lb)
    for r in b.roots:
        def f(m, r=r):
            return ("g", r, m)
        _, pa, la = _retag(a, f)
        for m in a.roots:
            pa[f(m)] = ("c", r)
        parent.update(pa)
        label.update(la)
    return Arena(list(parent), parent, label)


ROOT_Q: Move = ("q",)


def lifted_sum(family: "ArenaFamily") -> Arena:
    """Tree with a root question, an answer per family index, and the
    member arena under its answer."""
    parent: Dict[Move, Optional[Move]] = {ROOT_Q: None}
    label: Dict[Move, str] = {ROOT_Q: Q}
    for i, a in family.members:
        ai = ("a", i)
        parent[ai] = ROOT_Q
        label[ai] = A
        def f(m, i=i):
            return ("m", i, m)
        _, pa, la = _retag(a, f)
        for m in a.roots:
            pa[f(m)] = ai
        parent.update(pa)
        label.update(la)
    return Arena(list(parent), parent, label)


SIGMA_ZERO_FAMILY_TAG = ()


# ---------------------------------------------------------------------------
# Constructions on exception arenas

def product_e(a: ExceptionArena, b: ExceptionArena) -> ExceptionArena:
    base = product(a.base, b.base)
    e = {("l", q): ("l", v) for q, v in a.e_answer.items()}
    e.update({("r", q): ("r", v) for q, v in b.e_answer.items()})
    return ExceptionArena(base, e)


def product_list_e(arenas: List[ExceptionArena],
                   tags: Optional[List] = None) -> ExceptionArena:
    if tags is None:
        tags = list(range(len(arenas)))
    base = product_list([a.base for a in arenas], tags)
    e: Dict[Move, Move] = {}
    for tag, a in zip(tags, arenas):
        e.update({("p", tag, q): ("p", tag, v)
                  for q, v in a.e_answer.items()})
    return ExceptionArena(base, e)


def function_space_e(a: ExceptionArena, b: ExceptionArena) -> ExceptionArena:
    base = function_space(a.base, b.base)
    e = {("c", q): ("c", v) for q, v in b.e_answer.items()}
    for r in b.base.roots:
        e.update({("g", r, q): ("g", r, v) for q, v in a.e_answer.items()})
    return ExceptionArena(base, e)


EXN_ANSWER: Move = ("e",)


def exn_lifted_sum(family: "ArenaFamily") -> ExceptionArena:
    """Lifted sum with an extra exception-answer child of the root, and
    the member exception structure inherited."""
    plain = ArenaFamily(tuple((i, a.base) for i, a in family.members))
    base0 = lifted_sum(plain)
    parent = {m: base0.parent.get(m) for m in base0.moves}
    label = dict(base0.label)
    parent[EXN_ANSWER] = ROOT_Q
    label[EXN_ANSWER] = A
    base = Arena(list(parent), parent, label)
    e: Dict[Move, Move] = {ROOT_Q: EXN_ANSWER}
    for i, a in family.members:
        e.update({("m", i, q): ("m", i, v) for q, v in a.e_answer.items()})
    return ExceptionArena(base, e)


def forget_exn(a: ExceptionArena) -> Arena:
    """U_E: forget the exception-answer labelling."""
    return a.base


def relabel_answers_as_questions(a: Arena) -> Arena:
    """U_C: same forest, every move a question."""
    return Arena(a.moves, a.parent, {m: Q for m in a.moves})


def erase_exception_answers(a: ExceptionArena) -> Arena:
    """K on arenas: drop exactly the exception answers."""
    dead = set(a.e_answer.values())
    keep = [m for m in a.base.moves if m not in dead]
    return Arena(keep,
                 {m: a.base.parent.get(m) for m in keep},
                 {m: a.base.label[m] for m in keep})


# ---------------------------------------------------------------------------
# Families and type denotations

@dataclass(frozen=True)
class ArenaFamily:
    """Set-indexed family; members are (index, Arena-or-ExceptionArena)
    pairs with distinct indices."""
    members: Tuple[Tuple[object, object], ...] = ()

    def __post_init__(self):
        idx = [i for i, _ in self.members]
        if len(set(map(repr, idx))) != len(idx):
            raise ArenaError("duplicate family indices")

    @property
    def indices(self) -> list:
        return [i for i, _ in self.members]

    def arena(self, i):
        for j, a in self.members:
            if j == i:
                return a
        raise KeyError(i)

    def __len__(self):
        return len(self.members)


PLAIN, CONTROL, EXCEPTION = "plain", "control", "exception"
MODES = (PLAIN, CONTROL, EXCEPTION)


def denote_type(t: S.TypeExpr, mode: str = PLAIN) -> ArenaFamily:
    """Interpret a type as a family of (exception) arenas. Control mode
    shares the plain arenas: control structure lives in the plays."""
    if mode not in MODES:
        raise ArenaError(f"unknown mode {mode!r}")
    exn = mode == EXCEPTION
    if isinstance(t, S.Zero):
        return ArenaFamily(())
    if isinstance(t, S.One):
        return ArenaFamily((("*", EMPTY_E if exn else EMPTY),))
    if isinstance(t, S.Prod):
        fl = denote_type(t.left, mode)
        fr = denote_type(t.right, mode)
        pair = product_e if exn else product
        return ArenaFamily(tuple(
            ((i, j), pair(a, b))
            for i, a in fl.members for j, b in fr.members))
    if isinstance(t, S.Sum):
        fl = denote_type(t.left, mode)
        fr = denote_type(t.right, mode)
        return ArenaFamily(
            tuple((("in1", i), a) for i, a in fl.members)
            + tuple((("in2", j), b) for j, b in fr.members))
    if isinstance(t, S.Arrow):
        fd = denote_type(t.dom, mode)
        cod = denote_comp_type(t.cod, mode)
        graft = function_space_e if exn else function_space
        prod = product_list_e if exn else product_list
        parts = [graft(a, cod) for _, a in fd.members]
        return ArenaFamily((("*", prod(parts, fd.indices)),))
    raise ArenaError(f"not a type: {t!r}")


def denote_comp_type(t: S.TypeExpr, mode: str = PLAIN):
    """The computation arena of a type: the lifted sum of its family."""
    fam = denote_type(t, mode)
    if mode == EXCEPTION:
        return exn_lifted_sum(fam)
    return lifted_sum(fam)


def sigma0() -> Arena:
    return lifted_sum(ArenaFamily(()))


def sigma1() -> Arena:
    return lifted_sum(ArenaFamily((("*", EMPTY),)))


# ---------------------------------------------------------------------------
# CPS isomorphism

@dataclass(frozen=True)
class CpsIso:
    """Per-family-index move bijections witnessing
    U_C of the plain denotation of T  =  the denotation of the CPS image
    of T (which is answer-free)."""
    index_map: Tuple[Tuple[object, object], ...]
    move_maps: Tuple[Tuple[object, Dict[Move, Move]], ...]

    def move_map(self, i) -> Dict[Move, Move]:
        for j, f in self.move_maps:
            if j == i:
                return f
        raise KeyError(i)


def _cps_index(i):
    """Family indices translate structurally (value shapes survive CPS)."""
    return i


def cps_iso(t: S.TypeExpr) -> CpsIso:
    from .translations import cps_translate_type
    fam = denote_type(t, PLAIN)
    maps = []
    for i, a in fam.members:
        maps.append((i, _cps_iso_arena(t, i, a)))
    iso = CpsIso(tuple((i, _cps_index(i)) for i in fam.indices),
                 tuple(maps))
    # verification: bijective, enabling- and label-preserving
    target = denote_type(cps_translate_type(t), PLAIN)
    for i, a in fam.members:
        f = iso.move_map(i)
        b = target.arena(_cps_index(i))
        src = relabel_answers_as_questions(a)
        if set(f) != set(src.moves) or set(f.values()) != set(b.moves):
            raise ArenaError(f"cps_iso not a bijection at index {i!r}")
        for m in src.moves:
            pm = src.parent.get(m)
            if (None if pm is None else f[pm]) != b.parent.get(f[m]):
                raise ArenaError(f"cps_iso breaks enabling at {m!r}")
            if b.label[f[m]] != Q:
                raise ArenaError("CPS-image arena has an answer move")
    return iso


def _cps_iso_arena(t: S.TypeExpr, idx, arena) -> Dict[Move, Move]:
    if isinstance(t, S.One):
        return {}
    if isinstance(t, S.Prod):
        i, j = idx
        fl = denote_type(t.left, PLAIN)
        fr = denote_type(t.right, PLAIN)
        f1 = _cps_iso_arena(t.left, i, fl.arena(i))
        f2 = _cps_iso_arena(t.right, j, fr.arena(j))
        out = {("l", m): ("l", v) for m, v in f1.items()}
        out.update({("r", m): ("r", v) for m, v in f2.items()})
        return out
    if isinstance(t, S.Sum):
        tag, i = idx
        side = t.left if tag == "in1" else t.right
        f1 = _cps_iso_arena(side, i, denote_type(side, PLAIN).arena(i))
        return dict(f1)
    if isinstance(t, S.Arrow):
        return _cps_iso_arrow(t)
    raise ArenaError(f"no CPS iso at type {t!r}")


def _cps_iso_arrow(t: S.Arrow) -> Dict[Move, Move]:
    """Σ-answers become continuation-component roots; codomain-member
    moves move under the continuation graft; domain copies map to the
    left product component."""
    fd = denote_type(t.dom, PLAIN)
    fc = denote_type(t.cod, PLAIN)
    root_in = ("c", ROOT_Q)
    out: Dict[Move, Move] = {}
    for i, a in fd.members:
        j = (_cps_index(i), "*")

        def wrap(m, j=j):
            return ("p", j, m)

        out[("p", i, root_in)] = wrap(root_in)
        # answers of Σ⟦cod⟧ -> roots of the continuation components
        for k, b in fc.members:
            cont_root = ("g", ROOT_Q, ("r", ("p", k, root_in)))
            out[("p", i, ("c", ("a", k)))] = wrap(cont_root)
            fk = _cps_iso_arena(t.cod, k, b)
            for m, v in fk.items():
                out[("p", i, ("c", ("m", k, m)))] = wrap(
                    ("g", ROOT_Q, ("r", ("p", k, ("g", ROOT_Q, v)))))
        fi = _cps_iso_arena(t.dom, i, a)
        for m, v in fi.items():
            out[("p", i, ("g", ROOT_Q, m))] = wrap(("g", ROOT_Q, ("l", v)))
    return out


# ---------------------------------------------------------------------------
# DOT-style emission

def arena_edges(a, exn: Optional[ExceptionArena] = None) -> List[str]:
    """One line per move: `parent -> child [Q|A] [E]` (roots use `*`)."""
    if isinstance(a, ExceptionArena):
        exn, a = a, a.base
    img = frozenset(exn.e_answer.values()) if exn else frozenset()
    lines = []
    for m in sorted(a.moves, key=repr):
        p = a.parent.get(m)
        ptxt = "*" if p is None else _move_name(p)
        tag = f" [{a.label[m]}]"
        if m in img:
            tag += " [E]"
        lines.append(f"{ptxt} -> {_move_name(m)}{tag}")
    return lines


def _move_name(m: Move) -> str:
    return repr(m).replace(" ", "")
