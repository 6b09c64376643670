# Which basic classes survive a C_3 rational blowdown?
from swcalc.blowdown import CpConfig, allowed_restrictions, descend_element
from swcalc.lattice import ClassTable, standard_lattice
from swcalc.ring import SWElement

for p in range(2, 6):
    print(f"p = {p}: {len(allowed_restrictions(p))} allowed restrictions")
print("p = 3:", allowed_restrictions(3))

t = ClassTable(standard_lattice(10), {
    "F": "3H-E1-E2-E3-E4-E5-E6-E7-E8-E9",
    "C": "E9-2E10",
    "S": "E8-E9",
    "T": "F+E10",
})
config = CpConfig(3, [t["C"], t["S"]])
print("boundary", config.boundary)

sw = SWElement.parse("t^-1*e^-1 + t^-1*e - t*e^-1 - t*e", ["t", "e"])
out, rows = descend_element(sw, {"t": t["F"], "e": t["E10"]}, config, {"t": t["T"]})
for r in rows:
    print(f"  {str(r.ambient_class):>36}  {r.pairings}  {'descends' if r.descends else '-'}")
print("SW after blowdown:", out)
