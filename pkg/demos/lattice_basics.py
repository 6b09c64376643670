# Intersection forms of blown-up projective planes, done exactly.
from swcalc.lattice import ClassTable, gram_of, is_characteristic, solve_pairings, standard_lattice

P11 = standard_lattice(11)
classes = ClassTable(P11, {
    "F": "3H-E1-E2-E3-E4-E5-E6-E7-E8-E9",
    "V8": "2H-3E11",
})
F = classes["F"]
print("F =", F, " F.F =", F.square())
print("V8.V8 =", classes["V8"].square())

# the canonical class of P11 is characteristic, its square obeys k^2 = 1 - m mod 8
k = P11.vector([3] + [-1] * 11)
print("k =", k, "characteristic:", is_characteristic(k), "k^2 =", k.square())

# a class is pinned down by its pairings; rebuild one from pairings with a chain
g = gram_of([classes.evaluate("E9-2E10"), classes.evaluate("E8-E9")])
coords, square = solve_pairings(g, [3, 0])
print("gram", g, "-> coordinates", [str(c) for c in coords], "square", square)
