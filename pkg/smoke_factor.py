import random
import sys
import time
sys.path.insert(0, "src")

from rce import arenas as AR
from rce import plays as PL
from rce import strategies as ST
from rce import syntax as S

fails = []


def check(name, cond):
    print(("ok  " if cond else "FAIL") + " " + name)
    if not cond:
        fails.append(name)


ARENAS = [
    ("Sigma1", AR.sigma1()),
    ("Sigma(1+1)", AR.denote_comp_type(S.Sum(S.One(), S.One()), AR.PLAIN)),
    ("Sigma((1=>S1)=>S1)",
     AR.denote_comp_type(S.Arrow(S.Arrow(S.One(), S.One()), S.One()),
                         AR.PLAIN)),
]

for aname, arena in ARENAS:
    for seed in range(4):
        rng = random.Random(1000 + seed)
        t0 = time.time()
        # callcc leg: control-blind sigma as a hat-lifted plain strategy
        tau = ST.random_compact_strategy(arena, rng, ST.PLAIN,
                                         name=f"r{seed}")
        sigma = ST.hat_lift(tau)
        st = ST.factor_callcc(sigma)
        comp = ST.compose(ST.lam_callcc(), st)
        try:
            bad = ST.equal_to_depth(comp, sigma, max_len=10,
                                    well_opened=True)
        except Exception as ex:
            print("   EXC:", repr(ex)[:300])
            bad = "exc"
        if bad is not None and bad != "exc":
            print("   disagreement:")
            print(PL.emit_trace(bad.position))
            print("   left:", bad.left, "right:", bad.right)
        check(f"callcc-leg[{aname} seed={seed}] ({time.time()-t0:.2f}s)",
              bad is None)

        t0 = time.time()
        # exn leg: arbitrary control sigma
        sigma = ST.random_compact_strategy(arena, rng, ST.CONTROL,
                                           name=f"c{seed}")
        se = ST.factor_exn(sigma)
        comp = ST.compose(ST.exn_c_strategy(), se)
        try:
            bad = ST.equal_to_depth(comp, sigma, max_len=10,
                                    well_opened=True)
        except Exception as ex:
            print("   EXC:", repr(ex)[:300])
            bad = "exc"
        if bad is not None and bad != "exc":
            print("   disagreement:")
            print(PL.emit_trace(bad.position))
            print("   left:", bad.left, "right:", bad.right)
        check(f"exn-leg[{aname} seed={seed}] ({time.time()-t0:.2f}s)",
              bad is None)

print()
print("FAILURES:", fails if fails else "none")
