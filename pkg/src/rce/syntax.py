"""Abstract syntax: types, values, computations, sugar, and basic operations.

Terms are immutable dataclasses. Values and computations are separate
syntactic categories. Surface sugar (assignment, dereference, catch/throw,
sequencing, handle-with, and the derived exception declarations) is
represented by dedicated nodes that `desugar` expands into the core grammar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


# ---------------------------------------------------------------------------
# Types

class TypeExpr:
    """Base class for type expressions."""

    def __str__(self) -> str:
        return print_type(self)


@dataclass(frozen=True)
class Zero(TypeExpr):
    pass


@dataclass(frozen=True)
class One(TypeExpr):
    pass


@dataclass(frozen=True)
class Prod(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class Sum(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class Arrow(TypeExpr):
    dom: TypeExpr
    cod: TypeExpr


ZERO = Zero()
UNIT_T = One()
BOOL_T = Sum(One(), One())


def var_type(t: TypeExpr) -> TypeExpr:
    """var[T] = (T -> 1) x (1 -> T)."""
    return Prod(Arrow(t, One()), Arrow(One(), t))


def exn_type() -> TypeExpr:
    """exn = ((1 -> 0) -> 1) x (1 -> 0)."""
    return Prod(Arrow(Arrow(One(), Zero()), One()), Arrow(One(), Zero()))


def type_size(t: TypeExpr) -> int:
    if isinstance(t, (Zero, One)):
        return 1
    if isinstance(t, (Prod, Sum)):
        return 1 + type_size(t.left) + type_size(t.right)
    if isinstance(t, Arrow):
        return 1 + type_size(t.dom) + type_size(t.cod)
    raise TypeError(f"not a type: {t!r}")


# ---------------------------------------------------------------------------
# Values

class ValueTerm:
    def __str__(self) -> str:
        return print_value(self)


class CompTerm:
    def __str__(self) -> str:
        return print_comp(self)


Term = Union[ValueTerm, CompTerm]


@dataclass(frozen=True)
class Var(ValueTerm):
    name: str


@dataclass(frozen=True)
class Unit(ValueTerm):
    pass


@dataclass(frozen=True)
class Pair(ValueTerm):
    left: ValueTerm
    right: ValueTerm


@dataclass(frozen=True)
class Inj1(ValueTerm):
    body: ValueTerm


@dataclass(frozen=True)
class Inj2(ValueTerm):
    body: ValueTerm


@dataclass(frozen=True)
class Lambda(ValueTerm):
    var: str
    body: CompTerm


@dataclass(frozen=True)
class New(ValueTerm):
    """Reference declaration constant, 1 -> var[T]."""
    ann: Optional[TypeExpr] = None


@dataclass(frozen=True)
class NewExn(ValueTerm):
    """Exception declaration constant, 1 -> exn."""


@dataclass(frozen=True)
class Callcc(ValueTerm):
    """callcc : ((T -> S) -> T) -> T; optional instance annotation (T, S)."""
    ann: Optional[tuple] = None


# Machine-only constants (never in user source).

@dataclass(frozen=True)
class SetC(ValueTerm):
    loc: str


@dataclass(frozen=True)
class GetC(ValueTerm):
    loc: str


@dataclass(frozen=True)
class ThrowC(ValueTerm):
    exn: str


@dataclass(frozen=True)
class CatchC(ValueTerm):
    exn: str


# ---------------------------------------------------------------------------
# Computations

@dataclass(frozen=True)
class Return(CompTerm):
    value: ValueTerm


@dataclass(frozen=True)
class Let(CompTerm):
    var: str
    bound: CompTerm
    body: CompTerm


@dataclass(frozen=True)
class Void(CompTerm):
    value: ValueTerm
    ann: Optional[TypeExpr] = None


@dataclass(frozen=True)
class App(CompTerm):
    fun: ValueTerm
    arg: ValueTerm


@dataclass(frozen=True)
class Match(CompTerm):
    value: ValueTerm
    var1: str
    var2: str
    body: CompTerm


@dataclass(frozen=True)
class Case(CompTerm):
    value: ValueTerm
    var1: str
    body1: CompTerm
    var2: str
    body2: CompTerm


@dataclass(frozen=True)
class Mark(CompTerm):
    """Composition with the top-level continuation (machine-only)."""
    body: CompTerm


# ---------------------------------------------------------------------------
# Surface sugar nodes (eliminated by desugar)

@dataclass(frozen=True)
class Assign(CompTerm):
    """a := V"""
    ref: ValueTerm
    value: ValueTerm


@dataclass(frozen=True)
class Deref(CompTerm):
    """deref(a)"""
    ref: ValueTerm


@dataclass(frozen=True)
class CatchIn(CompTerm):
    """catch e in N"""
    exn: ValueTerm
    body: CompTerm


@dataclass(frozen=True)
class ThrowS(CompTerm):
    """throw(e)"""
    exn: ValueTerm


@dataclass(frozen=True)
class Seq(CompTerm):
    """M ; N"""
    first: CompTerm
    second: CompTerm


@dataclass(frozen=True)
class NewIn(CompTerm):
    """new x [ T ] := V . M (annotation optional)"""
    var: str
    init: ValueTerm
    body: CompTerm
    ann: Optional[TypeExpr] = None


@dataclass(frozen=True)
class HandleWith(CompTerm):
    """handle e in N with M"""
    exn: ValueTerm
    body: CompTerm
    handler: CompTerm


@dataclass(frozen=True)
class If(CompTerm):
    """if V then M else N, booleans as 1 + 1 with tt = in1(())."""
    cond: ValueTerm
    then: CompTerm
    els: CompTerm


@dataclass(frozen=True)
class NewExnV(ValueTerm):
    """Value-carrying exception declaration at payload type T."""
    ann: TypeExpr


@dataclass(frozen=True)
class ResumableExn(CompTerm):
    """Resumable exception declaration at payload type T."""
    ann: TypeExpr


TRUE = Inj1(Unit())
FALSE = Inj2(Unit())


# ---------------------------------------------------------------------------
# Fresh names

class FreshCounter:
    """Deterministic global counter for bound variables and machine names."""

    def __init__(self) -> None:
        self.n = 0

    def fresh(self, prefix: str = "x") -> str:
        name = f"{prefix}_{self.n}"
        self.n += 1
        return name

    def reset(self) -> None:
        self.n = 0


FRESH = FreshCounter()


def fresh(prefix: str = "x") -> str:
    return FRESH.fresh(prefix)


def reset_fresh() -> None:
    FRESH.reset()


# ---------------------------------------------------------------------------
# Free variables and substitution

def free_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, (Unit, New, NewExn, Callcc, SetC, GetC, ThrowC, CatchC,
                      NewExnV)):
        return frozenset()
    if isinstance(t, Pair):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, (Inj1, Inj2)):
        return free_vars(t.body)
    if isinstance(t, Lambda):
        return free_vars(t.body) - {t.var}
    if isinstance(t, Return):
        return free_vars(t.value)
    if isinstance(t, Let):
        return free_vars(t.bound) | (free_vars(t.body) - {t.var})
    if isinstance(t, Void):
        return free_vars(t.value)
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, Match):
        return free_vars(t.value) | (free_vars(t.body) - {t.var1, t.var2})
    if isinstance(t, Case):
        return (free_vars(t.value)
                | (free_vars(t.body1) - {t.var1})
                | (free_vars(t.body2) - {t.var2}))
    if isinstance(t, Mark):
        return free_vars(t.body)
    if isinstance(t, Assign):
        return free_vars(t.ref) | free_vars(t.value)
    if isinstance(t, Deref):
        return free_vars(t.ref)
    if isinstance(t, CatchIn):
        return free_vars(t.exn) | free_vars(t.body)
    if isinstance(t, ThrowS):
        return free_vars(t.exn)
    if isinstance(t, Seq):
        return free_vars(t.first) | free_vars(t.second)
    if isinstance(t, NewIn):
        return free_vars(t.init) | (free_vars(t.body) - {t.var})
    if isinstance(t, HandleWith):
        return free_vars(t.exn) | free_vars(t.body) | free_vars(t.handler)
    if isinstance(t, If):
        return free_vars(t.cond) | free_vars(t.then) | free_vars(t.els)
    if isinstance(t, ResumableExn):
        return frozenset()
    raise TypeError(f"not a term: {t!r}")


def subst(t: Term, name: str, v: ValueTerm):
    """Capture-avoiding substitution of value v for variable name in t."""
    return _subst(t, name, v, free_vars(v))


def _subst(t: Term, name: str, v: ValueTerm, fv: frozenset):
    def subst(t, name, v, _fv=fv):
        # recursion keeps the one fv computed for the top-level call
        return _subst(t, name, v, _fv)

    def binder(x: str, body, rebuild):
        if x == name:
            return None  # shadowed: leave body alone
        if x in fv:
            x2 = fresh(x.split("_")[0] or "x")
            return rebuild(x2, subst(subst_var(body, x, x2), name, v))
        return rebuild(x, subst(body, name, v))

    if isinstance(t, Var):
        return v if t.name == name else t
    if isinstance(t, (Unit, New, NewExn, Callcc, SetC, GetC, ThrowC, CatchC,
                      NewExnV, ResumableExn)):
        return t
    if isinstance(t, Pair):
        return Pair(subst(t.left, name, v), subst(t.right, name, v))
    if isinstance(t, Inj1):
        return Inj1(subst(t.body, name, v))
    if isinstance(t, Inj2):
        return Inj2(subst(t.body, name, v))
    if isinstance(t, Lambda):
        r = binder(t.var, t.body, lambda x, b: Lambda(x, b))
        return r if r is not None else t
    if isinstance(t, Return):
        return Return(subst(t.value, name, v))
    if isinstance(t, Let):
        bound = subst(t.bound, name, v)
        r = binder(t.var, t.body, lambda x, b: Let(x, bound, b))
        return r if r is not None else Let(t.var, bound, t.body)
    if isinstance(t, Void):
        return Void(subst(t.value, name, v), t.ann)
    if isinstance(t, App):
        return App(subst(t.fun, name, v), subst(t.arg, name, v))
    if isinstance(t, Match):
        val = subst(t.value, name, v)
        if name in (t.var1, t.var2):
            return Match(val, t.var1, t.var2, t.body)
        body = t.body
        x1, x2 = t.var1, t.var2
        if x1 in fv:
            n1 = fresh(x1.split("_")[0] or "x")
            body = subst_var(body, x1, n1)
            x1 = n1
        if x2 in fv:
            n2 = fresh(x2.split("_")[0] or "x")
            body = subst_var(body, x2, n2)
            x2 = n2
        return Match(val, x1, x2, subst(body, name, v))
    if isinstance(t, Case):
        val = subst(t.value, name, v)
        b1 = t.body1 if t.var1 == name else None
        b2 = t.body2 if t.var2 == name else None
        x1, body1 = t.var1, t.body1
        x2, body2 = t.var2, t.body2
        if b1 is None:
            if x1 in fv:
                n1 = fresh(x1.split("_")[0] or "x")
                body1 = subst_var(body1, x1, n1)
                x1 = n1
            body1 = subst(body1, name, v)
        if b2 is None:
            if x2 in fv:
                n2 = fresh(x2.split("_")[0] or "x")
                body2 = subst_var(body2, x2, n2)
                x2 = n2
            body2 = subst(body2, name, v)
        return Case(val, x1, body1, x2, body2)
    if isinstance(t, Mark):
        return Mark(subst(t.body, name, v))
    raise TypeError(f"substitution applies to core terms only: {t!r}")


def subst_var(t: Term, old: str, new: str):
    """Rename free occurrences of variable old to new."""
    return subst(t, old, Var(new))


# ---------------------------------------------------------------------------
# Alpha-equivalence

def alpha_eq(a: Term, b: Term) -> bool:
    return _alpha(a, b, {}, {})


def _alpha(a, b, env_a, env_b) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        ra = env_a.get(a.name, ("free", a.name))
        rb = env_b.get(b.name, ("free", b.name))
        return ra == rb
    if isinstance(a, (Unit, NewExn)):
        return True
    if isinstance(a, New):
        return a.ann == b.ann
    if isinstance(a, Callcc):
        return a.ann == b.ann
    if isinstance(a, (SetC, GetC)):
        return a.loc == b.loc
    if isinstance(a, (ThrowC, CatchC)):
        return a.exn == b.exn
    if isinstance(a, Pair):
        return (_alpha(a.left, b.left, env_a, env_b)
                and _alpha(a.right, b.right, env_a, env_b))
    if isinstance(a, (Inj1, Inj2)):
        return _alpha(a.body, b.body, env_a, env_b)
    if isinstance(a, Lambda):
        lvl = ("bound", len(env_a))
        return _alpha(a.body, b.body,
                      {**env_a, a.var: lvl}, {**env_b, b.var: lvl})
    if isinstance(a, Return):
        return _alpha(a.value, b.value, env_a, env_b)
    if isinstance(a, Let):
        if not _alpha(a.bound, b.bound, env_a, env_b):
            return False
        lvl = ("bound", len(env_a))
        return _alpha(a.body, b.body,
                      {**env_a, a.var: lvl}, {**env_b, b.var: lvl})
    if isinstance(a, Void):
        return a.ann == b.ann and _alpha(a.value, b.value, env_a, env_b)
    if isinstance(a, App):
        return (_alpha(a.fun, b.fun, env_a, env_b)
                and _alpha(a.arg, b.arg, env_a, env_b))
    if isinstance(a, Match):
        if not _alpha(a.value, b.value, env_a, env_b):
            return False
        l1 = ("bound", len(env_a))
        l2 = ("bound", len(env_a) + 1)
        return _alpha(a.body, b.body,
                      {**env_a, a.var1: l1, a.var2: l2},
                      {**env_b, b.var1: l1, b.var2: l2})
    if isinstance(a, Case):
        if not _alpha(a.value, b.value, env_a, env_b):
            return False
        lvl = ("bound", len(env_a))
        return (_alpha(a.body1, b.body1,
                       {**env_a, a.var1: lvl}, {**env_b, b.var1: lvl})
                and _alpha(a.body2, b.body2,
                           {**env_a, a.var2: lvl}, {**env_b, b.var2: lvl}))
    if isinstance(a, Mark):
        return _alpha(a.body, b.body, env_a, env_b)
    # surface nodes: structural comparison is enough for testing
    if isinstance(a, Assign):
        return (_alpha(a.ref, b.ref, env_a, env_b)
                and _alpha(a.value, b.value, env_a, env_b))
    if isinstance(a, Deref):
        return _alpha(a.ref, b.ref, env_a, env_b)
    if isinstance(a, CatchIn):
        return (_alpha(a.exn, b.exn, env_a, env_b)
                and _alpha(a.body, b.body, env_a, env_b))
    if isinstance(a, ThrowS):
        return _alpha(a.exn, b.exn, env_a, env_b)
    if isinstance(a, Seq):
        return (_alpha(a.first, b.first, env_a, env_b)
                and _alpha(a.second, b.second, env_a, env_b))
    if isinstance(a, NewIn):
        if a.ann != b.ann or not _alpha(a.init, b.init, env_a, env_b):
            return False
        lvl = ("bound", len(env_a))
        return _alpha(a.body, b.body,
                      {**env_a, a.var: lvl}, {**env_b, b.var: lvl})
    if isinstance(a, HandleWith):
        return (_alpha(a.exn, b.exn, env_a, env_b)
                and _alpha(a.body, b.body, env_a, env_b)
                and _alpha(a.handler, b.handler, env_a, env_b))
    if isinstance(a, If):
        return (_alpha(a.cond, b.cond, env_a, env_b)
                and _alpha(a.then, b.then, env_a, env_b)
                and _alpha(a.els, b.els, env_a, env_b))
    if isinstance(a, (NewExnV, ResumableExn)):
        return a.ann == b.ann
    raise TypeError(f"not a term: {a!r}")


# ---------------------------------------------------------------------------
# Desugaring

def seq(m: CompTerm, n: CompTerm) -> CompTerm:
    return Let(fresh("_s"), m, n)


def desugar(t: Term) -> Term:
    """Expand surface forms into the core grammar. Total on parsed terms."""
    if isinstance(t, (Var, Unit, New, NewExn, Callcc, SetC, GetC, ThrowC,
                      CatchC)):
        return t
    if isinstance(t, Pair):
        return Pair(desugar(t.left), desugar(t.right))
    if isinstance(t, Inj1):
        return Inj1(desugar(t.body))
    if isinstance(t, Inj2):
        return Inj2(desugar(t.body))
    if isinstance(t, Lambda):
        return Lambda(t.var, desugar(t.body))
    if isinstance(t, Return):
        return Return(desugar(t.value))
    if isinstance(t, Let):
        return Let(t.var, desugar(t.bound), desugar(t.body))
    if isinstance(t, Void):
        return Void(desugar(t.value), t.ann)
    if isinstance(t, App):
        return App(desugar(t.fun), desugar(t.arg))
    if isinstance(t, Match):
        return Match(desugar(t.value), t.var1, t.var2, desugar(t.body))
    if isinstance(t, Case):
        return Case(desugar(t.value), t.var1, desugar(t.body1),
                    t.var2, desugar(t.body2))
    if isinstance(t, Mark):
        return Mark(desugar(t.body))
    if isinstance(t, Assign):
        x, y = fresh("w"), fresh("r")
        return Match(desugar(t.ref), x, y, App(Var(x), desugar(t.value)))
    if isinstance(t, Deref):
        x, y = fresh("w"), fresh("r")
        return Match(desugar(t.ref), x, y, App(Var(y), Unit()))
    if isinstance(t, CatchIn):
        x, y = fresh("c"), fresh("t")
        z = fresh("_z")
        return Match(desugar(t.exn), x, y,
                     App(Var(x), Lambda(z, desugar(t.body))))
    if isinstance(t, ThrowS):
        x, y = fresh("c"), fresh("t")
        return Match(desugar(t.exn), x, y, App(Var(y), Unit()))
    if isinstance(t, Seq):
        return seq(desugar(t.first), desugar(t.second))
    if isinstance(t, NewIn):
        return Let(t.var, App(New(t.ann), Unit()),
                   seq(desugar(Assign(Var(t.var), t.init)),
                       desugar(t.body)))
    if isinstance(t, HandleWith):
        k = fresh("k")
        protected = CatchIn(t.exn, Seq(t.body, App(Var(k), Unit())))
        return desugar(
            App(Callcc((One(), Zero())),
                Lambda(k, Seq(protected, t.handler))))
    if isinstance(t, If):
        return Case(desugar(t.cond), fresh("_b"), desugar(t.then),
                    fresh("_b"), desugar(t.els))
    if isinstance(t, NewExnV):
        return desugar(_new_exn_v(t.ann))
    if isinstance(t, ResumableExn):
        return desugar(_resumable_exn(t.ann))
    raise TypeError(f"not a term: {t!r}")


def _new_exn_v(payload: TypeExpr) -> ValueTerm:
    """Value-carrying exception declaration at payload type T.

    exn[T] = ((1 -> 0) -> T) x (T -> 0): right projection raises with a
    value, left projection traps the exception and returns the value.
    """
    a, e, f, x, z = fresh("a"), fresh("e"), fresh("f"), fresh("x"), fresh("_z")
    catcher = Lambda(
        f, Seq(CatchIn(Var(e), App(Var(f), Unit())), Deref(Var(a))))
    raiser = Lambda(x, Seq(Assign(Var(a), Var(x)), ThrowS(Var(e))))
    return Lambda(
        z,
        Let(a, App(New(payload), Unit()),
            Let(e, App(NewExn(), Unit()),
                Return(Pair(catcher, raiser)))))


def _resumable_exn(payload: TypeExpr) -> CompTerm:
    """Resumable exception declaration at payload type T.

    Type ((1 -> 0) -> (T -> 0)) x (1 -> T): the right method captures the
    current continuation, stores it and raises; the left method traps the
    exception and returns the stored continuation as a first-class function.
    """
    a, e, f, u = fresh("a"), fresh("e"), fresh("f"), fresh("_u")
    k, z = fresh("k"), fresh("z")
    catcher = Lambda(
        f, Seq(CatchIn(Var(e), App(Var(f), Unit())), Deref(Var(a))))
    raiser = Lambda(
        u, App(Callcc((payload, Zero())),
               Lambda(k, Seq(Assign(Var(a), Var(k)),
                             Let(z, ThrowS(Var(e)), Void(Var(z), payload))))))
    return Let(a, App(New(Arrow(payload, Zero())), Unit()),
               Let(e, App(NewExn(), Unit()),
                   Return(Pair(catcher, raiser))))


def is_core(t: Term) -> bool:
    """True if t contains no surface sugar nodes."""
    try:
        return alpha_eq(t, desugar_check(t))
    except _NotCore:
        return False


class _NotCore(Exception):
    pass


def desugar_check(t: Term) -> Term:
    if isinstance(t, (Assign, Deref, CatchIn, ThrowS, Seq, NewIn, HandleWith,
                      If, NewExnV, ResumableExn)):
        raise _NotCore
    if isinstance(t, (Var, Unit, New, NewExn, Callcc, SetC, GetC, ThrowC,
                      CatchC)):
        return t
    if isinstance(t, Pair):
        desugar_check(t.left), desugar_check(t.right)
        return t
    if isinstance(t, (Inj1, Inj2)):
        desugar_check(t.body)
        return t
    if isinstance(t, Lambda):
        desugar_check(t.body)
        return t
    if isinstance(t, Return):
        desugar_check(t.value)
        return t
    if isinstance(t, Let):
        desugar_check(t.bound), desugar_check(t.body)
        return t
    if isinstance(t, Void):
        desugar_check(t.value)
        return t
    if isinstance(t, App):
        desugar_check(t.fun), desugar_check(t.arg)
        return t
    if isinstance(t, Match):
        desugar_check(t.value), desugar_check(t.body)
        return t
    if isinstance(t, Case):
        desugar_check(t.value), desugar_check(t.body1), desugar_check(t.body2)
        return t
    if isinstance(t, Mark):
        desugar_check(t.body)
        return t
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Printing (canonical: fully parenthesized, one space between tokens)

def print_type(t: TypeExpr) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Prod):
        return f"( {print_type(t.left)} * {print_type(t.right)} )"
    if isinstance(t, Sum):
        return f"( {print_type(t.left)} + {print_type(t.right)} )"
    if isinstance(t, Arrow):
        return f"( {print_type(t.dom)} -> {print_type(t.cod)} )"
    raise TypeError(f"not a type: {t!r}")


def print_value(v: ValueTerm) -> str:
    if isinstance(v, Var):
        return v.name
    if isinstance(v, Unit):
        return "()"
    if isinstance(v, Pair):
        return f"< {print_value(v.left)} , {print_value(v.right)} >"
    if isinstance(v, Inj1):
        return f"in1 ( {print_value(v.body)} )"
    if isinstance(v, Inj2):
        return f"in2 ( {print_value(v.body)} )"
    if isinstance(v, Lambda):
        return f"( \\ {v.var} . {print_comp(v.body)} )"
    if isinstance(v, New):
        if v.ann is None:
            return "new"
        return f"new [ {print_type(v.ann)} ]"
    if isinstance(v, NewExn):
        return "new_exn"
    if isinstance(v, Callcc):
        if v.ann is None:
            return "callcc"
        return f"callcc [ {print_type(v.ann[0])} , {print_type(v.ann[1])} ]"
    if isinstance(v, SetC):
        return f"%set ( {v.loc} )"
    if isinstance(v, GetC):
        return f"%get ( {v.loc} )"
    if isinstance(v, ThrowC):
        return f"%throw ( {v.exn} )"
    if isinstance(v, CatchC):
        return f"%catch ( {v.exn} )"
    if isinstance(v, NewExnV):
        return f"new_exn_v [ {print_type(v.ann)} ]"
    raise TypeError(f"not a value: {v!r}")


def print_comp(m: CompTerm) -> str:
    if isinstance(m, Return):
        return f"[ {print_value(m.value)} ]"
    if isinstance(m, Let):
        return (f"( let {m.var} = {print_comp(m.bound)} in"
                f" {print_comp(m.body)} )")
    if isinstance(m, Void):
        if m.ann is None:
            return f"( void {print_value(m.value)} )"
        return f"( void [ {print_type(m.ann)} ] {print_value(m.value)} )"
    if isinstance(m, App):
        return f"( {print_value(m.fun)} {print_value(m.arg)} )"
    if isinstance(m, Match):
        return (f"( match {print_value(m.value)} as"
                f" ( {m.var1} , {m.var2} ) . {print_comp(m.body)} )")
    if isinstance(m, Case):
        return (f"( case {print_value(m.value)} as"
                f" in1 ( {m.var1} ) . {print_comp(m.body1)}"
                f" | in2 ( {m.var2} ) . {print_comp(m.body2)} )")
    if isinstance(m, Mark):
        return f"( # {print_comp(m.body)} )"
    if isinstance(m, Assign):
        return f"( {print_value(m.ref)} := {print_value(m.value)} )"
    if isinstance(m, Deref):
        return f"( deref ( {print_value(m.ref)} ) )"
    if isinstance(m, CatchIn):
        return f"( catch {print_value(m.exn)} in {print_comp(m.body)} )"
    if isinstance(m, ThrowS):
        return f"( throw ( {print_value(m.exn)} ) )"
    if isinstance(m, Seq):
        return f"( {print_comp(m.first)} ; {print_comp(m.second)} )"
    if isinstance(m, NewIn):
        ann = f" [ {print_type(m.ann)} ]" if m.ann is not None else ""
        return (f"( new {m.var}{ann} := {print_value(m.init)} ."
                f" {print_comp(m.body)} )")
    if isinstance(m, HandleWith):
        return (f"( handle {print_value(m.exn)} in {print_comp(m.body)}"
                f" with {print_comp(m.handler)} )")
    if isinstance(m, If):
        return (f"( if {print_value(m.cond)} then {print_comp(m.then)}"
                f" else {print_comp(m.els)} )")
    if isinstance(m, ResumableExn):
        return f"( resumable_exn [ {print_type(m.ann)} ] )"
    raise TypeError(f"not a computation: {m!r}")


def print_term(t: Term) -> str:
    if isinstance(t, ValueTerm):
        return print_value(t)
    return print_comp(t)
