import sys
sys.path.insert(0, "src")

from rce import arenas as AR
from rce import plays as PL
from rce import strategies as ST
from rce import syntax as S
from rce.plays import JustifiedSequence as JS, MoveOccurrence as MO, STAR

fails = []


def check(name, cond):
    print(("ok  " if cond else "FAIL") + " " + name)
    if not cond:
        fails.append(name)


# --- identity responds like a copycat --------------------------------------
s1 = AR.sigma1()
ident = ST.identity(s1)
root = ("c", ("q",))
pos = JS(ident.arena, (MO(root, None, None),))
r = ident.respond(pos)
check("id responds to root with dom copy",
      r is not None and r.move == ("g", ("q",), ("q",)) and r.justifier == 0)
pos2 = pos.snoc(r).snoc(MO(("g", ("q",), ("a", "*")), 1, None))
r2 = ident.respond(pos2)
check("id mirrors the answer",
      r2 is not None and r2.move == ("c", ("a", "*")) and r2.justifier == 0)

# --- compose(sigma, id) == sigma for a playset strategy ---------------------
# sigma : 1 -> Sigma1, the strategy that answers the question
ans = ST.PlaySetStrategy(
    s1, {((("q",), None, None), (("a", "*"), 0, None))}, name="ans")
comp = ST.compose(ans, ident)
bad = ST.equal_to_depth(ans, comp, max_len=4)
check("compose with identity (plain, right)", bad is None)

# identity ; identity == identity on Sigma1 => Sigma1
ii = ST.compose(ident, ident)
bad = ST.equal_to_depth(ident, ii, max_len=6)
check("id;id == id", bad is None)

# --- callcc strategy reproduces the canonical play --------------------------
cc = ST.callcc_strategy(S.Zero(), S.One())
# board: dom = [[(0 -> 1) -> 0]] member, cod = Sigma[[0]] = Sigma0
LABEL = ("c", ("q",))
OK = ("g", ("q",), ("p", "*", ("c", ("q",))))
pos = JS(cc.arena, (MO(LABEL, None, None),))
r = cc.respond(pos)
check("callcc: label -> ok", r is not None and r.move == OK
      and r.justifier == 0)
# Zero has no value shapes, so no normal answer; jump needs S=0 dom idx...
cc2 = ST.callcc_strategy(S.One(), S.Zero())
d = cc2.arena
JUMP = ("g", ("q",), ("p", "*", ("g", ("q",), ("p", "*", ("c", ("q",))))))
pos = JS(d, (MO(LABEL, None, None),))
r1 = cc2.respond(pos)
check("callcc(1,0): label -> ok", r1 is not None and r1.move == OK)
pos = pos.snoc(r1).snoc(MO(JUMP, 1, None))
r2 = cc2.respond(pos)
check("callcc: jump -> caught answer to label",
      r2 is not None and r2.move == ("c", ("a", "*")) and r2.justifier == 0)
# normal return instead of jump
pos = JS(d, (MO(LABEL, None, None),))
pos = pos.snoc(cc2.respond(pos))
OKANS = ("g", ("q",), ("p", "*", ("c", ("a", "*"))))
pos = pos.snoc(MO(OKANS, 1, None))
r3 = cc2.respond(pos)
check("callcc: ok answered -> caught",
      r3 is not None and r3.move == ("c", ("a", "*")) and r3.justifier == 0)

# --- exn_C strategy reproduces the frozen trace ------------------------------
ec = ST.exn_c_strategy()
a = ec.arena
pos = JS(a, (MO(ST.EXNC_Q, None, STAR),))
r1 = ec.respond(pos)
check("exn_C: q -> a", r1 is not None and r1.move == ST.EXNC_A
      and r1.justifier == 0 and r1.ctl is None)
pos = pos.snoc(r1).snoc(MO(ST.EXNC_TRY, 1, STAR))
r2 = ec.respond(pos)
check("exn_C: try -> ok ctl=2", r2 is not None and r2.move == ST.EXNC_OK
      and r2.justifier == 2 and r2.ctl == 2)
pos = pos.snoc(r2).snoc(MO(ST.EXNC_RAISE, 1, 3))
r3 = ec.respond(pos)
check("exn_C: raise -> caught just=2",
      r3 is not None and r3.move == ST.EXNC_CAUGHT and r3.justifier == 2
      and r3.ctl is None)

# no open try: no response
pos0 = JS(a, (MO(ST.EXNC_Q, None, STAR),))
pos0 = pos0.snoc(ec.respond(pos0)).snoc(MO(ST.EXNC_RAISE, 1, STAR))
check("exn_C: raise with no open try -> bottom", ec.respond(pos0) is None)

# --- exn_E strategy: the two frozen traces ----------------------------------
ee = ST.exn_e_strategy()
b = ee.arena
pos = JS(b, (MO(ST.EXNE_Q, None, None),))
r = ee.respond(pos)
check("exn_E: q -> a", r is not None and r.move == ST.EXNE_A)
pos = pos.snoc(r).snoc(MO(ST.EXNE_TRY, 1, None))
r = ee.respond(pos)
check("exn_E: try -> ok", r is not None and r.move == ST.EXNE_OK
      and r.justifier == 2)
pos = pos.snoc(r).snoc(MO(ST.EXNE_RAISE, 1, None))
r = ee.respond(pos)
check("exn_E: raise -> e(raise)", r is not None
      and r.move == ST.EXNE_E_RAISE and r.justifier == 4)
pos = pos.snoc(r).snoc(MO(ST.EXNE_E_OK, 3, None))
r = ee.respond(pos)
check("exn_E: e(ok) with flag -> caught", r is not None
      and r.move == ST.EXNE_CAUGHT and r.justifier == 2)
left = pos.snoc(r)
check("exn_E left play legal", PL.is_legal(left))
check("exn_E left play P-well-bracketed",
      PL.is_player_well_bracketed(left))
check("exn_E left play EP", PL.is_exception_propagating(left, ee.earena))

# right: no raise; e(ok) propagates
pos = JS(b, (MO(ST.EXNE_Q, None, None),))
pos = pos.snoc(ee.respond(pos)).snoc(MO(ST.EXNE_TRY, 1, None))
pos = pos.snoc(ee.respond(pos)).snoc(MO(ST.EXNE_E_OK, 3, None))
r = ee.respond(pos)
check("exn_E: e(ok) without flag -> e(try)", r is not None
      and r.move == ST.EXNE_E_TRY and r.justifier == 2)

# --- K(exn_E) == exn_C to depth ---------------------------------------------
kee = ST.k_functor(ee, max_len=8)
bad = ST.equal_to_depth(kee, ec, max_len=6)
if bad is not None:
    print("  disagreement at:")
    print(PL.emit_trace(bad.position))
    print("  left:", bad.left, "right:", bad.right)
check("K(exn_E) == exn_C (len 6)", bad is None)

# --- cell strategy ----------------------------------------------------------
bool_t = S.Sum(S.One(), S.One())
cell = ST.cell_strategy(bool_t)
I = cell.idx
Q = AR.ROOT_Q
W_TT = ("m", I, ("l", ("p", ("in1", "*"), ("c", ("q",)))))
W_TT_ACK = ("m", I, ("l", ("p", ("in1", "*"), ("c", ("a", "*")))))
W_FF = ("m", I, ("l", ("p", ("in2", "*"), ("c", ("q",)))))
RD = ("m", I, ("r", ("p", "*", ("c", ("q",)))))
RD_TT = ("m", I, ("r", ("p", "*", ("c", ("a", ("in1", "*"))))))
RD_FF = ("m", I, ("r", ("p", "*", ("c", ("a", ("in2", "*"))))))

pos = JS(cell.arena, (MO(Q, None, None),))
r = cell.respond(pos)
check("cell: q -> a", r is not None and r.move == ("a", I))
pos = pos.snoc(r)
# read before write: bottom
check("cell: read before write -> bottom",
      cell.respond(pos.snoc(MO(RD, 1, None))) is None)
# write tt, ack, read -> tt
pos = pos.snoc(MO(W_TT, 1, None))
r = cell.respond(pos)
check("cell: write acknowledged", r is not None and r.move == W_TT_ACK
      and r.justifier == 2)
pos = pos.snoc(r).snoc(MO(RD, 1, None))
r = cell.respond(pos)
check("cell: read -> last write", r is not None and r.move == RD_TT
      and r.justifier == 4)
# overwrite then read -> ff
pos = pos.snoc(r).snoc(MO(W_FF, 1, None))
r = cell.respond(pos)
pos = pos.snoc(r).snoc(MO(RD, 1, None))
r = cell.respond(pos)
check("cell: read after overwrite", r is not None and r.move == RD_FF)

print()
print("FAILURES:", fails if fails else "none")
