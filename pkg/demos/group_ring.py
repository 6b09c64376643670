# Laurent group-ring arithmetic for Seiberg-Witten invariants.
from swcalc.ring import AlexanderPolynomial, SWElement, SWFraction, blowup, knot_surgery, skein_E1L, wall_cross

t = ["t"]
d = SWElement.parse("t - t^-1", t)
minus_unknot = SWFraction(SWElement.one(t), d)    # formal inverse, kept as a fraction
print("SW^- before surgery:", minus_unknot)

trefoil = AlexanderPolynomial([1, -1, 1])
print("after trefoil knot surgery:", knot_surgery(minus_unknot, trefoil, "t"))

sw_L = skein_E1L(SWElement.zero(t), minus_unknot, "t")
print("skein result:", sw_L)
print("blown up:", blowup(sw_L, "e"))

# crossing a wall in a b+ = 1 manifold changes SW by -1 at dimension 0
print("wall crossing from 0 at d = 0:", wall_cross(0, 0))
