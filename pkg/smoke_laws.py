import random, sys, time
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

def rand_fn(a, b, rng, mode):
    s = ST.random_compact_strategy(AR.function_space(a, b), rng, mode)
    s.split = (a, b)
    return s

A1 = AR.sigma1()
A2 = AR.denote_comp_type(S.Sum(S.One(), S.One()), AR.PLAIN)
A3 = AR.denote_comp_type(S.Arrow(S.One(), S.One()), AR.PLAIN)
POOL = [A1, A2, A3]

t0 = time.time()
rng = random.Random(7)
nid = nassoc = 0
for trial in range(20):
    mode = ST.PLAIN if trial % 2 == 0 else ST.CONTROL
    a, b, c, d = (rng.choice(POOL) for _ in range(4))
    f = rand_fn(a, b, rng, mode)
    if ST.equal_to_depth(ST.compose(ST.identity(a, mode), f), f, 8) is None \
       and ST.equal_to_depth(ST.compose(f, ST.identity(b, mode)), f, 8) is None:
        nid += 1
    g = rand_fn(b, c, rng, mode)
    h = rand_fn(c, d, rng, mode)
    lhs = ST.compose(ST.compose(f, g), h)
    rhs = ST.compose(f, ST.compose(g, h))
    bad = ST.equal_to_depth(lhs, rhs, 8)
    if bad is None:
        nassoc += 1
    else:
        print("assoc ce:", PL.emit_trace(bad.position), bad.left, bad.right)
check(f"identity laws 20/20 ({nid})", nid == 20)
check(f"associativity 20/20 ({nassoc}) ({time.time()-t0:.1f}s)", nassoc == 20)

# hat functoriality on well-bracketed pairs
t0 = time.time(); nfun = 0
for trial in range(10):
    a, b, c = (rng.choice(POOL) for _ in range(3))
    f = ST.random_compact_strategy(AR.function_space(a, b), rng, ST.PLAIN, wb=True)
    f.split = (a, b)
    g = ST.random_compact_strategy(AR.function_space(b, c), rng, ST.PLAIN, wb=True)
    g.split = (b, c)
    lhs = ST.hat_lift(ST.compose(f, g))
    rhs = ST.compose(ST.hat_lift(f), ST.hat_lift(g))
    bad = ST.equal_to_depth(lhs, rhs, 8)
    if bad is None:
        nfun += 1
    else:
        print("hat ce:", PL.emit_trace(bad.position), bad.left, bad.right)
check(f"hat functorial on wb 10/10 ({nfun}) ({time.time()-t0:.1f}s)", nfun == 10)

# the iso counterexample: Sigma1 vs Sigma0 => Sigma0
B = AR.function_space(AR.sigma0(), AR.sigma0())
f_iso, g_iso = ST.sigma1_fun_iso()
badp = ST.equal_to_depth(ST.compose(g_iso, f_iso), ST.identity(B, ST.PLAIN), 6)
check("iso composes to id in G", badp is None)
badc = ST.equal_to_depth(ST.compose(ST.hat_lift(g_iso), ST.hat_lift(f_iso)),
                         ST.identity(B, ST.CONTROL), 4)
check("hat images do not compose to hat(id) (ce at <=4)", badc is not None)
if badc is not None:
    print(PL.emit_trace(badc.position)); print(badc.left, badc.right)

# K(id) = id
t0 = time.time()
for t in (S.One(), S.Sum(S.One(), S.One())):
    ea = AR.denote_comp_type(t, AR.EXCEPTION)
    ide = ST._copycat(ea, ST.EXCEPTION)
    k = ST.k_functor(ide, max_len=12)
    idc = ST.identity(AR.erase_exception_answers(ea), ST.CONTROL)
    bad = ST.equal_to_depth(k, idc, 6, open_ctl=True)
    if bad is not None:
        print(PL.emit_trace(bad.position)); print(bad.left, bad.right)
    check(f"K(id)=id at {S.print_type(t)} ({time.time()-t0:.1f}s)",
          bad is None)

# EP closure
t0 = time.time(); nep = 0
E1 = AR.denote_comp_type(S.One(), AR.EXCEPTION)
E2 = AR.denote_comp_type(S.Sum(S.One(), S.One()), AR.EXCEPTION)
EPOOL = [E1, E2]
for trial in range(10):
    ea, eb, ec = (rng.choice(EPOOL) for _ in range(3))
    fab = AR.function_space_e(ea, eb)
    fbc = AR.function_space_e(eb, ec)
    sg = ST.random_ep_strategy(fab, rng)
    sg.split = (ea.base, eb.base)
    tu = ST.random_ep_strategy(fbc, rng)
    tu.split = (eb.base, ec.base)
    comp = ST.compose(sg, tu)
    comp.earena = AR.function_space_e(ea, ec)
    if ST.is_ep_strategy(sg) and ST.is_ep_strategy(tu) \
            and ST.is_ep_strategy(comp):
        nep += 1
check(f"EP closure 10/10 ({nep}) ({time.time()-t0:.1f}s)", nep == 10)

print(); print("FAILURES:", fails if fails else "none")
