# The finite search for basic classes of R7, then the chamber check.
from swcalc import scenario as sc

report = sc.run("r7-basic-classes")
for stage in report["enumeration"]:
    print(f"{stage['label']}: {stage['count']} candidates, {stage['pm_orbits']} +- pairs")

ver = report["verification"]
pp = ver["stated_period_point"]
print(f"listed period point: square {pp['square']}, dot H {pp['dot_reference']}")
print("used instead:", ver["searched_period_point"]["class"])
print(ver["counts"], "->", ver["verdict"])

# the amended class list gives a valid period point directly
amended = sc.run("r7-basic-classes", sc.Options(amended=True))["verification"]
print("amended:", amended["stated_period_point"]["class"], amended["verdict"])
