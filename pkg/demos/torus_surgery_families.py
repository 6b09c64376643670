# Infinite families from 1/n surgery on a nullhomologous torus.
from swcalc.ring import SWElement, torus_surgery

t = ["t"]
sw_R = SWElement.zero(t)
sw_Q = SWElement.parse("t^-1 - t", t)
family = [torus_surgery(sw_R, sw_Q, n, {"t": "t"}) for n in range(2, 8)]
for n, sw in zip(range(2, 8), family):
    print(f"n = {n}: {sw}")
print("pairwise distinct:", len(set(family)) == len(family))

v = ["t1", "t2"]
q2 = SWElement.parse("t1^-1 - t1", v) * SWElement.parse("t2^-1 - t2", v)
print("two-node version, n = 4:", torus_surgery(SWElement.zero(v), q2, 4, {"t1": "t1", "t2": "t2"}))
