"""Bidirectional typechecker with instance inference for the polymorphic
constants (new, callcc, void, and the machine constants).

Unannotated constants get metavariables that must be forced by their
application sites; leftover metavariables are an error in strict mode
(the caller must annotate), and tolerated in lenient mode (used when
checking machine configurations, whose reified contexts can leave the
result type of a discarded continuation unconstrained).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple, Union

from . import syntax as S


class TypecheckError(Exception):
    pass


@dataclass(frozen=True)
class TMeta(S.TypeExpr):
    uid: int


def _show(t: S.TypeExpr) -> str:
    """Render a type that may still contain metavariables."""
    if isinstance(t, TMeta):
        return f"?{t.uid}"
    if isinstance(t, S.Prod):
        return f"( {_show(t.left)} * {_show(t.right)} )"
    if isinstance(t, S.Sum):
        return f"( {_show(t.left)} + {_show(t.right)} )"
    if isinstance(t, S.Arrow):
        return f"( {_show(t.dom)} -> {_show(t.cod)} )"
    return S.print_type(t)


class Checker:
    def __init__(self, store_ty: Optional[Dict[str, S.TypeExpr]] = None):
        self.solution: Dict[int, S.TypeExpr] = {}
        self.counter = 0
        self.store_ty: Dict[str, S.TypeExpr] = dict(store_ty or {})
        self.constant_metas: list = []

    def constant_meta(self) -> TMeta:
        m = self.meta()
        self.constant_metas.append(m)
        return m

    def meta(self) -> TMeta:
        self.counter += 1
        return TMeta(self.counter)

    # -- unification --------------------------------------------------------

    def resolve(self, t: S.TypeExpr) -> S.TypeExpr:
        while isinstance(t, TMeta) and t.uid in self.solution:
            t = self.solution[t.uid]
        return t

    def deep_resolve(self, t: S.TypeExpr) -> S.TypeExpr:
        t = self.resolve(t)
        if isinstance(t, S.Prod):
            return S.Prod(self.deep_resolve(t.left),
                          self.deep_resolve(t.right))
        if isinstance(t, S.Sum):
            return S.Sum(self.deep_resolve(t.left),
                         self.deep_resolve(t.right))
        if isinstance(t, S.Arrow):
            return S.Arrow(self.deep_resolve(t.dom),
                           self.deep_resolve(t.cod))
        return t

    def occurs(self, uid: int, t: S.TypeExpr) -> bool:
        t = self.resolve(t)
        if isinstance(t, TMeta):
            return t.uid == uid
        if isinstance(t, (S.Prod, S.Sum)):
            return self.occurs(uid, t.left) or self.occurs(uid, t.right)
        if isinstance(t, S.Arrow):
            return self.occurs(uid, t.dom) or self.occurs(uid, t.cod)
        return False

    def unify(self, a: S.TypeExpr, b: S.TypeExpr) -> None:
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, TMeta):
            if self.occurs(a.uid, b):
                raise TypecheckError(f"occurs check failed: {a} in {b}")
            self.solution[a.uid] = b
            return
        if isinstance(b, TMeta):
            self.unify(b, a)
            return
        if type(a) is type(b) and isinstance(a, (S.Prod, S.Sum)):
            self.unify(a.left, b.left)
            self.unify(a.right, b.right)
            return
        if isinstance(a, S.Arrow) and isinstance(b, S.Arrow):
            self.unify(a.dom, b.dom)
            self.unify(a.cod, b.cod)
            return
        raise TypecheckError(
            f"cannot unify {_show(self.deep_resolve(a))} "
            f"with {_show(self.deep_resolve(b))}")

    # -- judgements ---------------------------------------------------------

    def check_value(self, ctx: Dict[str, S.TypeExpr],
                    v: S.ValueTerm) -> S.TypeExpr:
        if isinstance(v, S.Var):
            if v.name not in ctx:
                raise TypecheckError(f"unbound variable {v.name}")
            return ctx[v.name]
        if isinstance(v, S.Unit):
            return S.One()
        if isinstance(v, S.Pair):
            return S.Prod(self.check_value(ctx, v.left),
                          self.check_value(ctx, v.right))
        if isinstance(v, S.Inj1):
            return S.Sum(self.check_value(ctx, v.body), self.meta())
        if isinstance(v, S.Inj2):
            return S.Sum(self.meta(), self.check_value(ctx, v.body))
        if isinstance(v, S.Lambda):
            dom = self.meta()
            cod = self.check_comp({**ctx, v.var: dom}, v.body)
            return S.Arrow(dom, cod)
        if isinstance(v, S.New):
            t = v.ann if v.ann is not None else self.constant_meta()
            return S.Arrow(S.One(), S.var_type(t))
        if isinstance(v, S.NewExn):
            return S.Arrow(S.One(), S.exn_type())
        if isinstance(v, S.Callcc):
            if v.ann is not None:
                t, s = v.ann
            else:
                t, s = self.constant_meta(), self.constant_meta()
            return S.Arrow(S.Arrow(S.Arrow(t, s), t), t)
        if isinstance(v, S.SetC):
            t = self.store_ty.setdefault(v.loc, self.meta())
            return S.Arrow(t, S.One())
        if isinstance(v, S.GetC):
            t = self.store_ty.setdefault(v.loc, self.meta())
            return S.Arrow(S.One(), t)
        if isinstance(v, S.ThrowC):
            return S.Arrow(S.One(), S.Zero())
        if isinstance(v, S.CatchC):
            return S.Arrow(S.Arrow(S.One(), S.Zero()), S.One())
        raise TypecheckError(f"cannot type value {v!r} (desugar first?)")

    def check_comp(self, ctx: Dict[str, S.TypeExpr],
                   m: S.CompTerm) -> S.TypeExpr:
        if isinstance(m, S.Return):
            return self.check_value(ctx, m.value)
        if isinstance(m, S.Let):
            s = self.check_comp(ctx, m.bound)
            return self.check_comp({**ctx, m.var: s}, m.body)
        if isinstance(m, S.Void):
            self.unify(self.check_value(ctx, m.value), S.Zero())
            return m.ann if m.ann is not None else self.constant_meta()
        if isinstance(m, S.App):
            tf = self.check_value(ctx, m.fun)
            ta = self.check_value(ctx, m.arg)
            res = self.meta()
            self.unify(tf, S.Arrow(ta, res))
            return res
        if isinstance(m, S.Match):
            tv = self.check_value(ctx, m.value)
            a, b = self.meta(), self.meta()
            self.unify(tv, S.Prod(a, b))
            return self.check_comp({**ctx, m.var1: a, m.var2: b}, m.body)
        if isinstance(m, S.Case):
            tv = self.check_value(ctx, m.value)
            a, b = self.meta(), self.meta()
            self.unify(tv, S.Sum(a, b))
            t1 = self.check_comp({**ctx, m.var1: a}, m.body1)
            t2 = self.check_comp({**ctx, m.var2: b}, m.body2)
            self.unify(t1, t2)
            return t1
        if isinstance(m, S.Mark):
            self.check_comp(ctx, m.body)
            return self.meta()
        raise TypecheckError(f"cannot type computation {m!r} (desugar first?)")


Context = Union[Dict[str, S.TypeExpr], Iterable[Tuple[str, S.TypeExpr]]]


def _as_dict(ctx: Optional[Context]) -> Dict[str, S.TypeExpr]:
    if ctx is None:
        return {}
    if isinstance(ctx, dict):
        return dict(ctx)
    d = {}
    for name, ty in ctx:
        if name in d:
            raise TypecheckError(f"duplicate context entry {name}")
        d[name] = ty
    return d


def _has_meta(t: S.TypeExpr) -> bool:
    if isinstance(t, TMeta):
        return True
    if isinstance(t, (S.Prod, S.Sum)):
        return _has_meta(t.left) or _has_meta(t.right)
    if isinstance(t, S.Arrow):
        return _has_meta(t.dom) or _has_meta(t.cod)
    return False


def _finish(ck: Checker, t: S.TypeExpr, strict: bool) -> S.TypeExpr:
    out = ck.deep_resolve(t)
    if strict:
        if _has_meta(out):
            raise TypecheckError(
                "unresolved constant instance; add a type annotation "
                f"(got {_show(out)})")
        for m in ck.constant_metas:
            if _has_meta(ck.deep_resolve(m)):
                raise TypecheckError(
                    "unresolved polymorphic constant instance; "
                    "the application site does not force it, annotate")
    return out


def typecheck_value(ctx: Optional[Context], v: S.ValueTerm,
                    strict: bool = True,
                    store_ty: Optional[Dict[str, S.TypeExpr]] = None
                    ) -> S.TypeExpr:
    ck = Checker(store_ty)
    return _finish(ck, ck.check_value(_as_dict(ctx), v), strict)


def typecheck_comp(ctx: Optional[Context], m: S.CompTerm,
                   strict: bool = True,
                   store_ty: Optional[Dict[str, S.TypeExpr]] = None
                   ) -> S.TypeExpr:
    ck = Checker(store_ty)
    return _finish(ck, ck.check_comp(_as_dict(ctx), m), strict)


def typecheck(term, ctx: Optional[Context] = None, strict: bool = True):
    if isinstance(term, S.ValueTerm):
        return typecheck_value(ctx, term, strict)
    return typecheck_comp(ctx, term, strict)
