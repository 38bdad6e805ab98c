"""Effect translations: exception-passing (into the continuations-and-
references fragment) and CPS (into the references-only fragment), plus the
three-way differential soundness check.

Both passes are type-directed: a preliminary elaboration pass resolves all
constant instances, and the translators consult recorded source types to
annotate the constants they emit, so that translated output typechecks
strictly in its fragment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from . import machine as M
from . import syntax as S
from .typecheck import Checker, TypecheckError

TAU = "%tau"
DEAD = "%dead"


# ---------------------------------------------------------------------------
# Elaboration: record the resolved source type of every subterm

class _Elab(Checker):
    def __init__(self):
        super().__init__()
        self.node_types: Dict[int, S.TypeExpr] = {}

    def check_value(self, ctx, v):
        t = super().check_value(ctx, v)
        self.node_types[id(v)] = t
        return t

    def check_comp(self, ctx, m):
        t = super().check_comp(ctx, m)
        self.node_types[id(m)] = t
        return t

    def type_of(self, node) -> S.TypeExpr:
        t = self.deep_resolve(self.node_types[id(node)])
        from .typecheck import _has_meta
        if _has_meta(t):
            raise TypecheckError(
                f"unresolved instance in subterm {node}; annotate")
        return t


def elaborate(term, ctx: Optional[dict] = None,
              expected: Optional[S.TypeExpr] = None) -> _Elab:
    ck = _Elab()
    if isinstance(term, S.ValueTerm):
        got = ck.check_value(dict(ctx or {}), term)
    else:
        got = ck.check_comp(dict(ctx or {}), term)
    if expected is not None:
        ck.unify(got, expected)
    return ck


# ---------------------------------------------------------------------------
# Output container and fragment purity

@dataclass(frozen=True)
class TranslationOutput:
    term: object  # CompTerm or ValueTerm
    type: S.TypeExpr
    fragment: str  # "RC" or "R"


def _scan(t, pred) -> bool:
    """True if pred holds on any node of the term."""
    if pred(t):
        return True
    kids = []
    if isinstance(t, S.Pair):
        kids = [t.left, t.right]
    elif isinstance(t, (S.Inj1, S.Inj2)):
        kids = [t.body]
    elif isinstance(t, S.Lambda):
        kids = [t.body]
    elif isinstance(t, S.Return):
        kids = [t.value]
    elif isinstance(t, S.Let):
        kids = [t.bound, t.body]
    elif isinstance(t, S.Void):
        kids = [t.value]
    elif isinstance(t, S.App):
        kids = [t.fun, t.arg]
    elif isinstance(t, S.Match):
        kids = [t.value, t.body]
    elif isinstance(t, S.Case):
        kids = [t.value, t.body1, t.body2]
    elif isinstance(t, S.Mark):
        kids = [t.body]
    return any(_scan(k, pred) for k in kids)


def in_fragment_rc(t) -> bool:
    """No exception constructs (post exception-passing)."""
    return not _scan(t, lambda n: isinstance(n, (S.NewExn, S.ThrowC,
                                                 S.CatchC)))


def in_fragment_r(t) -> bool:
    """No continuations or exceptions (post CPS)."""
    return not _scan(t, lambda n: isinstance(
        n, (S.NewExn, S.ThrowC, S.CatchC, S.Callcc, S.Mark)))


# ---------------------------------------------------------------------------
# Exception-passing translation

def exn_translate_type(t: S.TypeExpr) -> S.TypeExpr:
    if isinstance(t, (S.Zero, S.One)):
        return t
    if isinstance(t, S.Prod):
        return S.Prod(exn_translate_type(t.left), exn_translate_type(t.right))
    if isinstance(t, S.Sum):
        return S.Sum(exn_translate_type(t.left), exn_translate_type(t.right))
    if isinstance(t, S.Arrow):
        return S.Arrow(exn_translate_type(t.dom),
                       S.Sum(exn_translate_type(t.cod), S.One()))
    raise TypeError(f"not a type: {t!r}")


def _seq(m: S.CompTerm, n: S.CompTerm) -> S.CompTerm:
    return S.Let(S.fresh("_s"), m, n)


def _assign(ref: S.ValueTerm, v: S.ValueTerm) -> S.CompTerm:
    w, r = S.fresh("w"), S.fresh("r")
    return S.Match(ref, w, r, S.App(S.Var(w), v))


def _deref(ref: S.ValueTerm) -> S.CompTerm:
    w, r = S.fresh("w"), S.fresh("r")
    return S.Match(ref, w, r, S.App(S.Var(r), S.Unit()))


class ExnTranslator:
    def __init__(self, elab: _Elab):
        self.elab = elab

    def value(self, ctx: Dict[str, S.TypeExpr], v: S.ValueTerm
              ) -> S.ValueTerm:
        if isinstance(v, S.Var):
            return v
        if isinstance(v, S.Unit):
            return v
        if isinstance(v, S.Pair):
            return S.Pair(self.value(ctx, v.left), self.value(ctx, v.right))
        if isinstance(v, S.Inj1):
            return S.Inj1(self.value(ctx, v.body))
        if isinstance(v, S.Inj2):
            return S.Inj2(self.value(ctx, v.body))
        if isinstance(v, S.Lambda):
            ty = self.elab.type_of(v)
            assert isinstance(ty, S.Arrow)
            return S.Lambda(v.var,
                            self.comp({**ctx, v.var: ty.dom}, v.body))
        if isinstance(v, S.New):
            return self._new(self.elab.type_of(v))
        if isinstance(v, S.NewExn):
            return self._new_exn()
        if isinstance(v, S.Callcc):
            ty = self.elab.type_of(v)
            # ((T -> S) -> T) -> T
            t = ty.cod
            s = ty.dom.dom.cod
            f = S.fresh("f")
            return S.Lambda(f, self._callcc_app(t, s, S.Var(f)))
        raise TypecheckError(f"cannot translate value {v!r}")

    def _new(self, ty: S.TypeExpr) -> S.ValueTerm:
        # source type 1 -> var[T]; the emitted methods never raise
        t_e = exn_translate_type(ty.cod.left.dom)
        z, a, x, y, vv = (S.fresh("_z"), S.fresh("a"), S.fresh("x"),
                          S.fresh("y"), S.fresh("v"))
        setm = S.Lambda(x, _seq(_assign(S.Var(a), S.Var(x)),
                                S.Return(S.Inj1(S.Unit()))))
        getm = S.Lambda(y, S.Let(vv, _deref(S.Var(a)),
                                 S.Return(S.Inj1(S.Var(vv)))))
        return S.Lambda(
            z, S.Let(a, S.App(S.New(t_e), S.Unit()),
                     S.Return(S.Inj1(S.Pair(setm, getm)))))

    def _new_exn(self) -> S.ValueTerm:
        # internal boolean flag; raise sets it and raises the global
        # exception, handle tests-and-resets or re-raises
        z, e, f, x, b = (S.fresh("_z"), S.fresh("e"), S.fresh("f"),
                         S.fresh("x"), S.fresh("b"))
        d1, d2 = S.fresh("_d"), S.fresh("_d")
        raiser = S.Lambda(x, _seq(_assign(S.Var(e), S.TRUE),
                                  S.Return(S.Inj2(S.Unit()))))
        handler = S.Lambda(
            f,
            _seq(S.App(S.Var(f), S.Unit()),
                 S.Let(b, _deref(S.Var(e)),
                       S.Case(S.Var(b),
                              d1, _seq(_assign(S.Var(e), S.FALSE),
                                       S.Return(S.Inj1(S.Unit()))),
                              d2, S.Return(S.Inj2(S.Unit()))))))
        return S.Lambda(
            z, S.Let(e, S.App(S.New(S.BOOL_T), S.Unit()),
                     _seq(_assign(S.Var(e), S.FALSE),
                          S.Return(S.Inj1(S.Pair(handler, raiser))))))

    def _callcc_app(self, t: S.TypeExpr, s: S.TypeExpr,
                    v_e: S.ValueTerm) -> S.CompTerm:
        t_e = exn_translate_type(t)
        s_e = exn_translate_type(s)
        k, x = S.fresh("k"), S.fresh("x")
        inst = (S.Sum(t_e, S.One()), S.Sum(s_e, S.One()))
        return S.App(
            S.Callcc(inst),
            S.Lambda(k, S.App(v_e, S.Lambda(
                x, S.App(S.Var(k), S.Inj1(S.Var(x)))))))

    def comp(self, ctx: Dict[str, S.TypeExpr], m: S.CompTerm) -> S.CompTerm:
        if isinstance(m, S.Return):
            return S.Return(S.Inj1(self.value(ctx, m.value)))
        if isinstance(m, S.Let):
            bound_ty = self.elab.type_of(m.bound)
            y, z = S.fresh("y"), S.fresh("z")
            return S.Let(
                y, self.comp(ctx, m.bound),
                S.Case(S.Var(y),
                       m.var, self.comp({**ctx, m.var: bound_ty}, m.body),
                       z, S.Return(S.Inj2(S.Unit()))))
        if isinstance(m, S.Void):
            ty = self.elab.type_of(m)
            return S.Void(self.value(ctx, m.value),
                          S.Sum(exn_translate_type(ty), S.One()))
        if isinstance(m, S.App):
            if isinstance(m.fun, S.Callcc):
                ty = self.elab.type_of(m.fun)
                t = ty.cod
                s = ty.dom.dom.cod
                return self._callcc_app(t, s, self.value(ctx, m.arg))
            return S.App(self.value(ctx, m.fun), self.value(ctx, m.arg))
        if isinstance(m, S.Match):
            vt = self.elab.type_of(m.value)
            return S.Match(self.value(ctx, m.value), m.var1, m.var2,
                           self.comp({**ctx, m.var1: vt.left,
                                      m.var2: vt.right}, m.body))
        if isinstance(m, S.Case):
            vt = self.elab.type_of(m.value)
            return S.Case(self.value(ctx, m.value),
                          m.var1,
                          self.comp({**ctx, m.var1: vt.left}, m.body1),
                          m.var2,
                          self.comp({**ctx, m.var2: vt.right}, m.body2))
        raise TypecheckError(f"cannot translate computation {m!r}")


def exn_translate(term, ctx: Optional[dict] = None,
                  expected: Optional[S.TypeExpr] = None) -> TranslationOutput:
    """Exception-passing translation of a well-typed term."""
    elab = elaborate(term, ctx, expected)
    tr = ExnTranslator(elab)
    src_ty = elab.type_of(term)
    ctx2 = dict(ctx or {})
    if isinstance(term, S.ValueTerm):
        out = tr.value(ctx2, term)
        ty = exn_translate_type(src_ty)
    else:
        out = tr.comp(ctx2, term)
        ty = S.Sum(exn_translate_type(src_ty), S.One())
    return TranslationOutput(out, ty, "RC")


# ---------------------------------------------------------------------------
# CPS translation

def cps_translate_type(t: S.TypeExpr) -> S.TypeExpr:
    if isinstance(t, (S.Zero, S.One)):
        return t
    if isinstance(t, S.Prod):
        return S.Prod(cps_translate_type(t.left), cps_translate_type(t.right))
    if isinstance(t, S.Sum):
        return S.Sum(cps_translate_type(t.left), cps_translate_type(t.right))
    if isinstance(t, S.Arrow):
        return S.Arrow(
            S.Prod(cps_translate_type(t.dom),
                   S.Arrow(cps_translate_type(t.cod), S.Zero())),
            S.Zero())
    raise TypeError(f"not a type: {t!r}")


class CpsTranslator:
    def __init__(self, elab: _Elab):
        self.elab = elab

    def value(self, v: S.ValueTerm) -> S.ValueTerm:
        if isinstance(v, (S.Var, S.Unit)):
            return v
        if isinstance(v, S.Pair):
            return S.Pair(self.value(v.left), self.value(v.right))
        if isinstance(v, S.Inj1):
            return S.Inj1(self.value(v.body))
        if isinstance(v, S.Inj2):
            return S.Inj2(self.value(v.body))
        if isinstance(v, S.Lambda):
            z, k = S.fresh("z"), S.fresh("kk")
            return S.Lambda(z, S.Match(S.Var(z), v.var, k,
                                       S.App(self.comp(v.body), S.Var(k))))
        if isinstance(v, S.New):
            return self._new(self.elab.type_of(v))
        if isinstance(v, S.Callcc):
            ty = self.elab.type_of(v)
            t = ty.cod
            z, vv, k = S.fresh("z"), S.fresh("v"), S.fresh("kk")
            return S.Lambda(
                z, S.Match(S.Var(z), vv, k,
                           self._callcc_body(S.Var(vv), S.Var(k))))
        raise TypecheckError(f"cannot translate value {v!r}")

    def _new(self, ty: S.TypeExpr) -> S.ValueTerm:
        # 1 -> var[T]; the cell stores translated values
        t_c = cps_translate_type(ty.cod.left.dom)
        z, u, k, a = S.fresh("z"), S.fresh("_u"), S.fresh("kk"), S.fresh("a")
        x, vv, k1 = S.fresh("x"), S.fresh("v"), S.fresh("k")
        y, u2, k2, w = S.fresh("y"), S.fresh("_u"), S.fresh("k"), S.fresh("w")
        setm = S.Lambda(
            x, S.Match(S.Var(x), vv, k1,
                       _seq(_assign(S.Var(a), S.Var(vv)),
                            S.App(S.Var(k1), S.Unit()))))
        getm = S.Lambda(
            y, S.Match(S.Var(y), u2, k2,
                       S.Let(w, _deref(S.Var(a)),
                             S.App(S.Var(k2), S.Var(w)))))
        return S.Lambda(
            z, S.Match(S.Var(z), u, k,
                       S.Let(a, S.App(S.New(t_c), S.Unit()),
                             S.App(S.Var(k), S.Pair(setm, getm)))))

    def _callcc_body(self, v_c: S.ValueTerm, kv: S.ValueTerm) -> S.CompTerm:
        x, y, z2 = S.fresh("x"), S.fresh("y"), S.fresh("_z")
        reified = S.Lambda(x, S.Match(S.Var(x), y, z2,
                                      S.App(kv, S.Var(y))))
        return S.App(v_c, S.Pair(reified, kv))

    def comp(self, m: S.CompTerm) -> S.ValueTerm:
        k = S.fresh("kk")
        if isinstance(m, S.Return):
            return S.Lambda(k, S.App(S.Var(k), self.value(m.value)))
        if isinstance(m, S.Let):
            return S.Lambda(
                k, S.App(self.comp(m.bound),
                         S.Lambda(m.var,
                                  S.App(self.comp(m.body), S.Var(k)))))
        if isinstance(m, S.Void):
            return S.Lambda(k, S.Void(self.value(m.value), S.Zero()))
        if isinstance(m, S.App):
            if isinstance(m.fun, S.Callcc):
                return S.Lambda(
                    k, self._callcc_body(self.value(m.arg), S.Var(k)))
            return S.Lambda(k, S.App(self.value(m.fun),
                                     S.Pair(self.value(m.arg), S.Var(k))))
        if isinstance(m, S.Match):
            return S.Lambda(
                k, S.Match(self.value(m.value), m.var1, m.var2,
                           S.App(self.comp(m.body), S.Var(k))))
        if isinstance(m, S.Case):
            return S.Lambda(
                k, S.Case(self.value(m.value),
                          m.var1, S.App(self.comp(m.body1), S.Var(k)),
                          m.var2, S.App(self.comp(m.body2), S.Var(k))))
        if isinstance(m, S.Mark):
            return S.Lambda(k, S.App(self.comp(m.body), S.Var(TAU)))
        raise TypecheckError(f"cannot translate computation {m!r}")


def cps_translate(term, ctx: Optional[dict] = None,
                  expected: Optional[S.TypeExpr] = None) -> TranslationOutput:
    """CPS translation of a well-typed exception-free term."""
    if not in_fragment_rc(term):
        raise TypecheckError("CPS input must be exception-free")
    elab = elaborate(term, ctx, expected)
    src_ty = elab.type_of(term)
    tr = CpsTranslator(elab)
    if isinstance(term, S.ValueTerm):
        out = tr.value(term)
        ty = cps_translate_type(src_ty)
    else:
        out = tr.comp(term)
        ty = S.Arrow(S.Arrow(cps_translate_type(src_ty), S.Zero()), S.Zero())
    return TranslationOutput(out, ty, "R")


def check_against(term, expected: S.TypeExpr,
                  ctx: Optional[dict] = None) -> S.TypeExpr:
    """Typecheck a term against an expected type (unification closes the
    instances that inference alone would leave open, e.g. the unused side
    of an injection)."""
    ck = Checker()
    ctx2 = dict(ctx or {})
    if isinstance(term, S.ValueTerm):
        got = ck.check_value(ctx2, term)
    else:
        got = ck.check_comp(ctx2, term)
    ck.unify(got, expected)
    out = ck.deep_resolve(got)
    from .typecheck import _has_meta
    if _has_meta(out):
        raise TypecheckError(f"residual instance after unification: {out}")
    return out


# ---------------------------------------------------------------------------
# Differential soundness check

@dataclass(frozen=True)
class SoundnessReport:
    direct: Optional[bool]      # M converges to ()
    exn_leg: Optional[bool]     # M^E converges to in1(())
    cps_leg: Optional[bool]     # (M^E)^C applied to the top continuation
    agree: bool                 # pairwise equal among determined legs

    @property
    def conclusive(self) -> bool:
        return None not in (self.direct, self.exn_leg, self.cps_leg)


def cps_top_driver(cps_value: S.ValueTerm) -> S.CompTerm:
    """Apply the CPS image of a (1 + 1)-typed computation to the top-level
    continuation: in1 feeds the reserved %tau, in2 the reserved %dead."""
    v, x, y = S.fresh("v"), S.fresh("x"), S.fresh("y")
    kont = S.Lambda(v, S.Case(S.Var(v),
                              x, S.App(S.Var(TAU), S.Var(x)),
                              y, S.App(S.Var(DEAD), S.Var(y))))
    return S.App(cps_value, kont)


def _cps_leg_result(program: S.CompTerm, fuel: int) -> Optional[bool]:
    outcome, cfg = M.run_config(M.initial_config(program), fuel)
    if isinstance(outcome, M.OutOfFuel):
        return None
    if isinstance(outcome, M.Stuck):
        d = M.decompose(cfg.comp)
        if not isinstance(d, M.Terminal):
            _, redex = d
            if (isinstance(redex, S.App) and isinstance(redex.fun, S.Var)
                    and redex.fun.name == TAU):
                return True
    return False


def check_translation_soundness(program: S.CompTerm,
                                fuel: int = 10000) -> SoundnessReport:
    """Run the program and both translation images, compare convergence."""
    out1 = M.run(program, fuel)
    direct: Optional[bool]
    if isinstance(out1, M.OutOfFuel):
        direct = None
    else:
        direct = out1 == M.Converged(S.Unit())

    exn_out = exn_translate(program)
    out2 = M.run(exn_out.term, fuel)
    if isinstance(out2, M.OutOfFuel):
        exn_leg: Optional[bool] = None
    else:
        exn_leg = out2 == M.Converged(S.Inj1(S.Unit()))

    cps_out = cps_translate(exn_out.term, expected=exn_out.type)
    cps_leg = _cps_leg_result(cps_top_driver(cps_out.term), fuel)

    legs = [x for x in (direct, exn_leg, cps_leg) if x is not None]
    agree = len(set(legs)) <= 1
    return SoundnessReport(direct, exn_leg, cps_leg, agree)
