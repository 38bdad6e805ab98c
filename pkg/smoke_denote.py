import sys
import time
sys.path.insert(0, "src")

from rce import arenas as AR
from rce import machine as MA
from rce import plays as PL
from rce import strategies as ST
from rce import syntax as S
from rce.parser import parse_comp

fails = []


def check(name, cond):
    print(("ok  " if cond else "FAIL") + " " + name)
    if not cond:
        fails.append(name)


PROGRAMS = [
    ("unit", "[()]", True),
    ("let", "let x = [()] in [x]", True),
    ("app", "(\\x. [x]) ()", True),
    ("pair-match", "match <(), ()> as (x, y). [y]", True),
    ("case", "case in1(()) as in1(x). [x] | in2(y). [y]", True),
    ("if", "new b [ 1 + 1 ] := ff. let v = deref(b) in if v then [()] else ([()]; [()])", True),
    ("cell", "new r [ 1 + 1 ] := tt. deref(r); [()]", True),
    ("cell-read", "new r [ 1 + 1 ] := tt. "
     "let v = deref(r) in if v then [()] else [()]", True),
    ("catch", "let e = new_exn () in catch e in throw(e); [()]", True),
    ("uncaught", "let e = new_exn () in throw(e); [()]", False),
    ("handle", "let e = new_exn () in handle e in [()] with [()]", True),
    ("callcc", "callcc [1, 0] (\\k. [()])", True),
    ("callcc-jump", "callcc (\\k. k ())", True),
]


for name, src, expect in PROGRAMS:
    prog = parse_comp(src)
    conv = MA.converges(prog)
    check(f"machine[{name}] converges={expect}", conv == expect)
    t0 = time.time()
    try:
        dc = ST.denote(prog, ST.CONTROL, expected=S.One())
        pc = ST.probe_top(dc)
    except Exception as ex:
        print("   control EXC:", repr(ex)[:200])
        pc = None
    check(f"denote-control[{name}] adequacy", pc == expect)
    try:
        de = ST.denote(prog, ST.EXCEPTION, expected=S.One())
        pe = ST.probe_top(de)
    except Exception as ex:
        print("   exception EXC:", repr(ex)[:200])
        pe = None
        de = None
    check(f"denote-exception[{name}] adequacy", pe == expect)
    if de is not None and pc is not None:
        try:
            k = ST.k_functor(de, max_len=8)
            bad = ST.equal_to_depth(k, dc, max_len=6)
            if bad is not None:
                print("   K-disagreement:")
                print(PL.emit_trace(bad.position))
                print("   left:", bad.left, "right:", bad.right)
            check(f"K[{name}]", bad is None)
        except Exception as ex:
            print("   K EXC:", repr(ex)[:200])
            check(f"K[{name}]", False)
    print(f"   ({time.time() - t0:.2f}s)")

print()
print("FAILURES:", fails if fails else "none")
