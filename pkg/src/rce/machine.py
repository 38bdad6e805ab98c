"""Small-step operational semantics with evaluation-context decomposition.

A configuration is a computation plus an environment: declared locations,
the store, and declared exception names. Evaluation contexts are spines of
let-frames and catch-frames; `decompose` finds the redex, `step` applies
the unique matching rule, and `run` is the fueled driver.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from . import syntax as S


@dataclass(frozen=True)
class LetFrame:
    var: str
    body: S.CompTerm


@dataclass(frozen=True)
class CatchFrame:
    exn: str
    var: str  # the (inert) thunk binder, kept so plugging is exact


Frame = Union[LetFrame, CatchFrame]


@dataclass(frozen=True)
class EvalContext:
    """Outermost frame first."""
    spine: Tuple[Frame, ...] = ()

    def plug(self, m: S.CompTerm) -> S.CompTerm:
        for frame in reversed(self.spine):
            if isinstance(frame, LetFrame):
                m = S.Let(frame.var, m, frame.body)
            else:
                m = S.App(S.CatchC(frame.exn), S.Lambda(frame.var, m))
        return m


@dataclass(frozen=True)
class Terminal:
    value: S.ValueTerm


@dataclass(frozen=True)
class MachineConfig:
    comp: S.CompTerm
    locs: FrozenSet[str] = frozenset()
    store: Tuple[Tuple[str, S.ValueTerm], ...] = ()
    exns: FrozenSet[str] = frozenset()

    def store_dict(self) -> Dict[str, S.ValueTerm]:
        return dict(self.store)


class StepError(Exception):
    """No rule applies (stuck configuration)."""

    def __init__(self, msg: str, cfg: Optional[MachineConfig] = None):
        super().__init__(msg)
        self.cfg = cfg


class UncaughtThrow(StepError):
    def __init__(self, exn: str, cfg: Optional[MachineConfig] = None):
        super().__init__(f"uncaught exception {exn}", cfg)
        self.exn = exn


# ---------------------------------------------------------------------------
# Outcomes

@dataclass(frozen=True)
class Converged:
    value: S.ValueTerm


@dataclass(frozen=True)
class UncaughtException:
    exn: str


@dataclass(frozen=True)
class OutOfFuel:
    steps: int


@dataclass(frozen=True)
class Stuck:
    description: str


Outcome = Union[Converged, UncaughtException, OutOfFuel, Stuck]


# ---------------------------------------------------------------------------
# Decomposition

def decompose(comp: S.CompTerm) -> Union[Tuple[EvalContext, S.CompTerm],
                                         Terminal]:
    """Split a closed computation into evaluation context and redex.

    Returns Terminal(v) exactly when comp is a bare return. The redex
    returned is never itself decomposable.
    """
    spine: List[Frame] = []
    m = comp
    while True:
        if isinstance(m, S.Let):
            if isinstance(m.bound, S.Return):
                # let x = [V] in N is itself the redex
                return EvalContext(tuple(spine)), m
            spine.append(LetFrame(m.var, m.body))
            m = m.bound
            continue
        if (isinstance(m, S.App) and isinstance(m.fun, S.CatchC)
                and isinstance(m.arg, S.Lambda)):
            spine.append(CatchFrame(m.fun.exn, m.arg.var))
            m = m.arg.body
            continue
        if isinstance(m, S.Return):
            if not spine:
                return Terminal(m.value)
            # [V] under a frame: the innermost let (or stuck catch) rule
            frame = spine.pop()
            ctx = EvalContext(tuple(spine))
            if isinstance(frame, LetFrame):
                return ctx, S.Let(frame.var, m, frame.body)
            return ctx, S.App(S.CatchC(frame.exn), S.Lambda(frame.var, m))
        return EvalContext(tuple(spine)), m


def plug(ctx: EvalContext, m: S.CompTerm) -> S.CompTerm:
    return ctx.plug(m)


# ---------------------------------------------------------------------------
# Stepping

def step(cfg: MachineConfig) -> MachineConfig:
    """Apply the unique applicable rule to a non-terminal configuration."""
    d = decompose(cfg.comp)
    if isinstance(d, Terminal):
        raise StepError("terminal configuration", cfg)
    ctx, redex = d

    def done(m: S.CompTerm, **changes) -> MachineConfig:
        return replace(cfg, comp=ctx.plug(m), **changes)

    if isinstance(redex, S.Let):
        # let x = [V] in N
        assert isinstance(redex.bound, S.Return)
        return done(S.subst(redex.body, redex.var, redex.bound.value))

    if isinstance(redex, S.Case):
        v = redex.value
        if isinstance(v, S.Inj1):
            return done(S.subst(redex.body1, redex.var1, v.body))
        if isinstance(v, S.Inj2):
            return done(S.subst(redex.body2, redex.var2, v.body))
        raise StepError(f"case on non-injection {v}", cfg)

    if isinstance(redex, S.Match):
        v = redex.value
        if isinstance(v, S.Pair):
            return done(S.subst(S.subst(redex.body, redex.var1, v.left),
                                redex.var2, v.right))
        raise StepError(f"match on non-pair {v}", cfg)

    if isinstance(redex, S.Mark):
        # E[#(M)] -> M: the whole context is discarded
        return replace(cfg, comp=redex.body)

    if isinstance(redex, S.App):
        return _step_app(cfg, ctx, redex)

    if isinstance(redex, S.Void):
        raise StepError("void applied to a value (no rule)", cfg)

    raise StepError(f"no rule for {redex}", cfg)


def _step_app(cfg: MachineConfig, ctx: EvalContext,
              redex: S.App) -> MachineConfig:
    fun, arg = redex.fun, redex.arg

    def done(m: S.CompTerm, **changes) -> MachineConfig:
        return replace(cfg, comp=ctx.plug(m), **changes)

    if isinstance(fun, S.Lambda):
        return done(S.subst(fun.body, fun.var, arg))

    if isinstance(fun, S.New):
        a = S.fresh("loc")
        return done(S.Return(S.Pair(S.SetC(a), S.GetC(a))),
                    locs=cfg.locs | {a})

    if isinstance(fun, S.SetC):
        store = tuple((k, v) for k, v in cfg.store if k != fun.loc)
        return done(S.Return(S.Unit()), store=store + ((fun.loc, arg),))

    if isinstance(fun, S.GetC):
        sd = cfg.store_dict()
        if fun.loc not in sd:
            raise StepError(f"read from uninitialized location {fun.loc}",
                            cfg)
        return done(S.Return(sd[fun.loc]))

    if isinstance(fun, S.NewExn):
        e = S.fresh("exn")
        return done(S.Return(S.Pair(S.CatchC(e), S.ThrowC(e))),
                    exns=cfg.exns | {e})

    if isinstance(fun, S.CatchC):
        if isinstance(arg, S.Lambda):
            # only reachable with [V] directly under the catch, which is
            # impossible for well-typed programs (the body has type 0)
            raise StepError("catch over a returned value of empty type", cfg)
        # administrative eta-expansion so the context grammar applies
        z = S.fresh("_z")
        return done(S.App(fun, S.Lambda(z, S.App(arg, S.Var(z)))))

    if isinstance(fun, S.ThrowC):
        if not isinstance(arg, S.Unit):
            raise StepError(f"throw applied to non-unit {arg}", cfg)
        return _propagate_throw(cfg, ctx, fun.exn)

    if isinstance(fun, S.Callcc):
        x = S.fresh("cc")
        reified = S.Lambda(x, S.Mark(ctx.plug(S.Return(S.Var(x)))))
        return replace(cfg, comp=ctx.plug(S.App(arg, reified)))

    if isinstance(fun, S.Var):
        raise StepError(f"application of free variable {fun.name}", cfg)

    raise StepError(f"no rule for application of {fun}", cfg)


def _propagate_throw(cfg: MachineConfig, ctx: EvalContext,
                     exn: str) -> MachineConfig:
    """E[catch(e) \\x.E_e[throw(e) ()]] -> E[[()]]."""
    spine = list(ctx.spine)
    for i in range(len(spine) - 1, -1, -1):
        frame = spine[i]
        if isinstance(frame, CatchFrame) and frame.exn == exn:
            outer = EvalContext(tuple(spine[:i]))
            return replace(cfg, comp=outer.plug(S.Return(S.Unit())))
    raise UncaughtThrow(exn, cfg)


# ---------------------------------------------------------------------------
# Driver

def initial_config(program: S.CompTerm) -> MachineConfig:
    return MachineConfig(program)


def run(program: S.CompTerm, fuel: int = 10000,
        trace: Optional[list] = None) -> Outcome:
    """Iterate `step` up to fuel times from the empty environment."""
    cfg = initial_config(program)
    for n in range(fuel):
        if trace is not None:
            trace.append(cfg)
        d = decompose(cfg.comp)
        if isinstance(d, Terminal):
            return Converged(d.value)
        try:
            cfg = step(cfg)
        except UncaughtThrow as e:
            return UncaughtException(e.exn)
        except StepError as e:
            return Stuck(str(e))
    if trace is not None:
        trace.append(cfg)
    return OutOfFuel(fuel)


def run_config(cfg: MachineConfig, fuel: int = 10000
               ) -> Tuple[Outcome, MachineConfig]:
    for n in range(fuel):
        d = decompose(cfg.comp)
        if isinstance(d, Terminal):
            return Converged(d.value), cfg
        try:
            cfg = step(cfg)
        except UncaughtThrow as e:
            return UncaughtException(e.exn), cfg
        except StepError as e:
            return Stuck(str(e)), cfg
    return OutOfFuel(fuel), cfg


class Inconclusive(Exception):
    """Fuel ran out: convergence is undetermined at this fuel."""


def converges(program: S.CompTerm, fuel: int = 10000) -> bool:
    """True iff the program (of type 1) reduces to [()]."""
    outcome = run(program, fuel)
    if isinstance(outcome, OutOfFuel):
        raise Inconclusive(f"no verdict within {fuel} steps")
    return outcome == Converged(S.Unit())
