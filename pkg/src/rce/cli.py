"""Command-line driver: run, translate, arena, denote, explore, check,
laws.

Defaults: 10000 machine steps, 2000 internal composition steps, play
depth 12. The `check` command accepts a single program or a corpus
directory; the default corpus directory may be set with the
RCE_CORPUS_DIR environment variable and falls back to the shipped corpus.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from importlib import resources
from typing import List, Optional

from . import arenas as AR
from . import machine as MA
from . import plays as PL
from . import strategies as ST
from . import syntax as S
from . import translations as TR
from .parser import ParseError, parse_comp, parse_type
from .typecheck import TypecheckError

DEFAULT_FUEL = 10000
DEFAULT_INTERNAL_FUEL = 2000
DEFAULT_DEPTH = 12
CORPUS_ENV = "RCE_CORPUS_DIR"


def default_corpus_dir() -> str:
    env = os.environ.get(CORPUS_ENV)
    if env:
        return env
    return str(resources.files("rce").joinpath("corpus"))


def _load(path: str) -> S.CompTerm:
    with open(path) as f:
        return parse_comp(f.read())


def _show_config(cfg: MA.MachineConfig) -> str:
    store = ", ".join(f"{k}={S.print_value(v)}" for k, v in cfg.store)
    exns = ", ".join(sorted(cfg.exns))
    return (f"{S.print_comp(cfg.comp)}  "
            f"| store: {{{store}}} | exns: {{{exns}}}")


def _show_outcome(out, steps: int) -> str:
    if isinstance(out, MA.Converged):
        return f"converged: {S.print_value(out.value)} ({steps} steps)"
    if isinstance(out, MA.UncaughtException):
        return f"uncaught exception: {out.exn} ({steps} steps)"
    if isinstance(out, MA.OutOfFuel):
        return f"out of fuel after {out.steps} steps"
    return f"stuck: {out.description}"


# ---------------------------------------------------------------------------
# run

def cmd_run(args) -> int:
    prog = _load(args.file)
    trace: List[MA.MachineConfig] = []
    out = MA.run(prog, fuel=args.fuel, trace=trace)
    if args.trace:
        for cfg in trace:
            print(_show_config(cfg))
    print(_show_outcome(out, max(len(trace) - 1, 0)))
    return 0 if isinstance(out, MA.Converged) else 1


# ---------------------------------------------------------------------------
# translate

def cmd_translate(args) -> int:
    prog = _load(args.file)
    want = args.which
    if want in ("exn", "both"):
        exn = TR.exn_translate(prog)
        if want == "both":
            print("-- exn:")
        print(S.print_comp(exn.term))
    if want in ("cps", "both"):
        if TR.in_fragment_rc(prog):
            cps = TR.cps_translate(prog)
        else:
            exn = TR.exn_translate(prog)
            cps = TR.cps_translate(exn.term, expected=exn.type)
        if want == "both":
            print("-- cps:")
        print(S.print_value(cps.term) if isinstance(cps.term, S.ValueTerm)
              else S.print_comp(cps.term))
    return 0


# ---------------------------------------------------------------------------
# arena

def cmd_arena(args) -> int:
    t = parse_type(args.type)
    a = AR.denote_comp_type(t, args.mode)
    edges = AR.arena_edges(a)
    if args.dot:
        print("digraph arena {")
        for e in edges:
            parent, rest = e.split(" -> ", 1)
            child, _, tags = rest.partition(" ")
            print(f'  "{parent}" -> "{child}" [label="{tags}"];')
        print("}")
    else:
        for e in edges:
            print(e)
    return 0


# ---------------------------------------------------------------------------
# denote / explore

_MODES = {"control": ST.CONTROL, "exn": ST.EXCEPTION}


def cmd_denote(args) -> int:
    prog = _load(args.file)
    sigma = ST.denote(prog, _MODES[args.mode], fuel=args.fuel)
    plays = ST.play_set(sigma, max_len=args.depth)
    for p in plays:
        if len(p) == 0:
            continue
        print(PL.emit_trace(p))
        print()
    print(f"{sum(1 for p in plays if len(p))} plays to depth {args.depth}")
    return 0


def cmd_explore(args) -> int:
    prog = _load(args.file)
    mode = _MODES[args.mode]
    sigma = ST.denote(prog, mode, fuel=args.fuel)
    pos = PL.JustifiedSequence(sigma.arena)
    print("interactive explorer; pick an Opponent move by number, "
          "q to quit, u to undo")
    while True:
        opts = ST.opponent_options(pos, mode)
        if not opts:
            print("no legal Opponent moves")
            return 0
        for i, o in enumerate(opts):
            just = "-" if o.justifier is None else str(o.justifier)
            ctl = "-" if o.ctl is None else str(o.ctl)
            print(f"  [{i}] {AR._move_name(o.move)} just={just} ctl={ctl}")
        try:
            line = input("> ").strip()
        except EOFError:
            return 0
        if line in ("q", "quit"):
            return 0
        if line in ("u", "undo"):
            pos = pos.prefix(max(len(pos) - 2, 0))
            print(PL.emit_trace(pos) or "(empty)")
            continue
        try:
            choice = opts[int(line)]
        except (ValueError, IndexError):
            print("?")
            continue
        pos = pos.snoc(choice)
        r = sigma.respond(pos)
        if r is None:
            print(PL.emit_trace(pos))
            print("no Player response (bottom); undo or quit")
            continue
        pos = pos.snoc(r)
        print(PL.emit_trace(pos))
    return 0


# ---------------------------------------------------------------------------
# check

def _tri(v: Optional[bool]) -> str:
    return "?" if v is None else ("T" if v else "F")


def check_program(prog: S.CompTerm, fuel: int, internal: int,
                  depth: int) -> dict:
    """All per-program verdict cells for the check report."""
    row: dict = {}
    rep = TR.check_translation_soundness(prog, fuel=fuel)
    row["machine"] = rep.direct
    row["exn_leg"] = rep.exn_leg
    row["cps_leg"] = rep.cps_leg
    try:
        dc = ST.denote(prog, ST.CONTROL, fuel=internal, expected=S.One())
        row["probe_ctl"] = ST.probe_top(dc)
    except ST.StrategyError:
        dc = None
        row["probe_ctl"] = None
    try:
        de = ST.denote(prog, ST.EXCEPTION, fuel=internal, expected=S.One())
        row["probe_exn"] = ST.probe_top(de)
    except ST.StrategyError:
        de = None
        row["probe_exn"] = None
    if dc is None or de is None:
        row["k"] = None
    else:
        try:
            k = ST.k_functor(de, max_len=depth + 2, fuel=internal)
            row["k"] = ST.equal_to_depth(k, dc, max_len=depth) is None
        except ST.StrategyError:
            row["k"] = None
    cells = [row["machine"], row["exn_leg"], row["cps_leg"],
             row["probe_ctl"], row["probe_exn"]]
    known = [c for c in cells if c is not None]
    if len(set(known)) > 1 or row["k"] is False:
        row["verdict"] = "fail"
    elif None in cells or row["k"] is None:
        row["verdict"] = "inconclusive-fuel"
    else:
        row["verdict"] = "pass"
    return row


_COLUMNS = ["name", "machine", "exn_leg", "cps_leg",
            "probe_ctl", "probe_exn", "k", "verdict"]


def cmd_check(args) -> int:
    target = args.target or default_corpus_dir()
    if os.path.isfile(target):
        prog = _load(target)
        rep = TR.check_translation_soundness(prog, fuel=args.fuel)
        print(f"direct machine run : {_tri(rep.direct)}")
        print(f"exn translation    : {_tri(rep.exn_leg)}")
        print(f"cps of exn image   : {_tri(rep.cps_leg)}")
        print(f"agree              : {'yes' if rep.agree else 'NO'}")
        print(f"conclusive         : {'yes' if rep.conclusive else 'no'}")
        if not rep.agree:
            return 1
        if not rep.conclusive and not args.allow_inconclusive:
            return 1
        return 0

    files = sorted(f for f in os.listdir(target) if f.endswith(".rce"))
    rows = []
    for fname in files:
        t0 = time.time()
        prog = _load(os.path.join(target, fname))
        row = check_program(prog, args.fuel, args.internal_fuel, args.depth)
        row["name"] = fname
        row["time"] = time.time() - t0
        rows.append(row)
    if args.tsv:
        print("\t".join(_COLUMNS))
        for row in rows:
            print("\t".join(
                row[c] if c in ("name", "verdict") else _tri(row[c])
                for c in _COLUMNS))
    else:
        w = max((len(r["name"]) for r in rows), default=4)
        hdr = (f"{'name':<{w}}  mach  exn  cps  "
               f"ctl  exc  K    verdict            time")
        print(hdr)
        print("-" * len(hdr))
        for row in rows:
            print(f"{row['name']:<{w}}  "
                  f"{_tri(row['machine']):<4}  {_tri(row['exn_leg']):<3}  "
                  f"{_tri(row['cps_leg']):<3}  {_tri(row['probe_ctl']):<3}  "
                  f"{_tri(row['probe_exn']):<3}  {_tri(row['k']):<3}  "
                  f"{row['verdict']:<17}  {row['time']:5.2f}s")
        n = sum(1 for r in rows if r["verdict"] == "pass")
        print(f"{n}/{len(rows)} pass")
    fails = [r for r in rows if r["verdict"] == "fail"]
    inc = [r for r in rows if r["verdict"] == "inconclusive-fuel"]
    if fails:
        return 1
    if inc and not args.allow_inconclusive:
        return 1
    return 0


# ---------------------------------------------------------------------------
# laws

def _law_line(name: str, ok: bool, expected_failure: bool = False) -> bool:
    """Print a verdict line; returns True when the result is acceptable."""
    if expected_failure:
        tag = "ok (expected counterexample)" if not ok else "UNEXPECTED PASS"
        print(f"{tag:<30} {name}")
        return not ok
    print(f"{'ok' if ok else 'FAIL':<30} {name}")
    return ok


def _rand_fn(a, b, rng, mode, **kw):
    s = ST.random_compact_strategy(AR.function_space(a, b), rng, mode, **kw)
    s.split = (a, b)
    return s


def cmd_laws(args) -> int:
    rng = random.Random(args.seed)
    depth = args.depth
    fuel = args.fuel
    pool = [AR.sigma1(),
            AR.denote_comp_type(S.Sum(S.One(), S.One()), AR.PLAIN),
            AR.denote_comp_type(S.Arrow(S.One(), S.One()), AR.PLAIN)]
    ok = True

    def show(bad):
        if bad is not None:
            print(PL.emit_trace(bad.position))
            print(f"left: {bad.left}  right: {bad.right}")

    n_id = n_assoc = 0
    for trial in range(args.trials):
        mode = ST.PLAIN if trial % 2 == 0 else ST.CONTROL
        a, b, c, d = (rng.choice(pool) for _ in range(4))
        f = _rand_fn(a, b, rng, mode)
        g = _rand_fn(b, c, rng, mode)
        h = _rand_fn(c, d, rng, mode)
        bl = ST.equal_to_depth(ST.compose(ST.identity(a, mode), f), f,
                               depth)
        br = ST.equal_to_depth(ST.compose(f, ST.identity(b, mode)), f,
                               depth)
        if bl is None and br is None:
            n_id += 1
        else:
            show(bl or br)
        ba = ST.equal_to_depth(ST.compose(ST.compose(f, g), h),
                               ST.compose(f, ST.compose(g, h)), depth)
        if ba is None:
            n_assoc += 1
        else:
            show(ba)
    ok &= _law_line(f"identity ({n_id}/{args.trials})",
                    n_id == args.trials)
    ok &= _law_line(f"associativity ({n_assoc}/{args.trials})",
                    n_assoc == args.trials)

    n_hat = 0
    for trial in range(args.trials):
        a, b, c = (rng.choice(pool) for _ in range(3))
        f = _rand_fn(a, b, rng, ST.PLAIN, wb=True)
        g = _rand_fn(b, c, rng, ST.PLAIN, wb=True)
        bad = ST.equal_to_depth(ST.hat_lift(ST.compose(f, g)),
                                ST.compose(ST.hat_lift(f), ST.hat_lift(g)),
                                depth)
        if bad is None:
            n_hat += 1
        else:
            show(bad)
    ok &= _law_line(f"hat functorial on well-bracketed pairs "
                    f"({n_hat}/{args.trials})", n_hat == args.trials)

    f_iso, g_iso = ST.sigma1_fun_iso()
    b_arena = AR.function_space(AR.sigma0(), AR.sigma0())
    bad = ST.equal_to_depth(ST.compose(g_iso, f_iso),
                            ST.identity(b_arena, ST.PLAIN), 6)
    ok &= _law_line("Sigma1 ~ Sigma0=>Sigma0 composes to id", bad is None)
    badc = ST.equal_to_depth(
        ST.compose(ST.hat_lift(g_iso), ST.hat_lift(f_iso)),
        ST.identity(b_arena, ST.CONTROL), 4)
    ok &= _law_line("hat images compose to hat(id)", badc is None,
                    expected_failure=True)
    if badc is not None:
        print(PL.emit_trace(badc.position))
        print(f"left: {badc.left}  right: {badc.right}")

    for t in (S.One(), S.Sum(S.One(), S.One())):
        ea = AR.denote_comp_type(t, AR.EXCEPTION)
        ide = ST._copycat(ea, ST.EXCEPTION)
        k = ST.k_functor(ide, max_len=12, fuel=fuel)
        idc = ST.identity(AR.erase_exception_answers(ea), ST.CONTROL)
        bad = ST.equal_to_depth(k, idc, 6, open_ctl=True)
        show(bad)
        ok &= _law_line(f"K(id)=id at {S.print_type(t)}", bad is None)

    epool = [AR.denote_comp_type(S.One(), AR.EXCEPTION),
             AR.denote_comp_type(S.Sum(S.One(), S.One()), AR.EXCEPTION)]
    n_ep = 0
    for trial in range(args.trials):
        ea, eb, ec = (rng.choice(epool) for _ in range(3))
        f = ST.random_ep_strategy(AR.function_space_e(ea, eb), rng)
        f.split = (ea.base, eb.base)
        g = ST.random_ep_strategy(AR.function_space_e(eb, ec), rng)
        g.split = (eb.base, ec.base)
        comp = ST.compose(f, g, fuel=fuel)
        comp.earena = AR.function_space_e(ea, ec)
        if ST.is_ep_strategy(f) and ST.is_ep_strategy(g) \
                and ST.is_ep_strategy(comp):
            n_ep += 1
    ok &= _law_line(f"EP closure of composition ({n_ep}/{args.trials})",
                    n_ep == args.trials)

    print("all laws hold" if ok else "LAW VIOLATION")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rce",
        description="semantics workbench: abstract machine, effect "
                    "translations, and game models")
    sub = p.add_subparsers(dest="cmd", required=True)

    def fuel_flag(q, default=DEFAULT_FUEL):
        q.add_argument("--fuel", type=int, default=default,
                       help=f"step budget (default {default})")

    q = sub.add_parser("run", help="run a program on the abstract machine")
    q.add_argument("file")
    fuel_flag(q)
    q.add_argument("--trace", action="store_true",
                   help="print every configuration")
    q.set_defaults(fn=cmd_run)

    q = sub.add_parser("translate", help="print effect translations")
    q.add_argument("file")
    q.add_argument("--pass", dest="which",
                   choices=["exn", "cps", "both"], default="both")
    q.set_defaults(fn=cmd_translate)

    q = sub.add_parser("arena", help="dump the arena of a type")
    q.add_argument("type")
    q.add_argument("--mode", choices=["plain", "control", "exception"],
                   default="plain")
    q.add_argument("--dot", action="store_true")
    q.set_defaults(fn=cmd_arena)

    q = sub.add_parser("denote",
                       help="materialize the play-set of a denotation")
    q.add_argument("file")
    q.add_argument("--mode", choices=["control", "exn"], default="control")
    q.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    fuel_flag(q, DEFAULT_INTERNAL_FUEL)
    q.set_defaults(fn=cmd_denote)

    q = sub.add_parser("explore", help="interactive play explorer")
    q.add_argument("file")
    q.add_argument("--mode", choices=["control", "exn"], default="control")
    fuel_flag(q, DEFAULT_INTERNAL_FUEL)
    q.set_defaults(fn=cmd_explore)

    q = sub.add_parser("check",
                       help="soundness/adequacy report for a program or "
                            "corpus directory")
    q.add_argument("target", nargs="?",
                   help="program file or corpus directory "
                        f"(default ${CORPUS_ENV} or the shipped corpus)")
    fuel_flag(q)
    q.add_argument("--internal-fuel", type=int,
                   default=DEFAULT_INTERNAL_FUEL)
    q.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    q.add_argument("--tsv", action="store_true",
                   help="machine-readable tab-separated output")
    q.add_argument("--allow-inconclusive", action="store_true",
                   help="exit 0 when cells are inconclusive but nothing "
                        "disagrees")
    q.set_defaults(fn=cmd_check)

    q = sub.add_parser("laws", help="category/functor law property suite")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--trials", type=int, default=20)
    q.add_argument("--depth", type=int, default=8)
    fuel_flag(q, DEFAULT_INTERNAL_FUEL)
    q.set_defaults(fn=cmd_laws)

    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, FileNotFoundError, TypecheckError,
            ST.StrategyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
