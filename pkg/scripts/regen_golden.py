"""Rewrite the golden/ tree from the current code. Review the diff before committing."""
import json
from pathlib import Path

from swcalc import scenario as sc
from swcalc.blowdown import allowed_restrictions
from swcalc.lattice import ClassTable, gram_of, standard_lattice

ROOT = Path(__file__).resolve().parent.parent / "golden"


def main():
    ROOT.mkdir(exist_ok=True)
    variants = [(name, sc.Options(), name) for name in sc.list_scenarios()]
    variants.append(("r7-basic-classes", sc.Options(amended=True), "r7-basic-classes.amended"))
    variants.append(("r7-basic-classes", sc.Options(strict_integrality=True), "r7-basic-classes.strict"))
    for name, opts, stem in variants:
        report = sc.run(name, opts)
        (ROOT / f"{stem}.json").write_text(sc.to_json(report))
        (ROOT / f"{stem}.txt").write_text(sc.to_table(report))
    table = {str(p): [list(v) for v in allowed_restrictions(p)] for p in range(2, 8)}
    (ROOT / "allowed_restrictions.json").write_text(json.dumps(table, indent=1) + "\n")
    data = sc.load("r7-basic-classes")
    classes = ClassTable(standard_lattice(11), data["classes"])
    labels = [f"V{i}" for i in range(1, 10)]
    gram = gram_of([classes[x] for x in labels])
    (ROOT / "r7-gram.json").write_text(json.dumps({"labels": labels, "gram": gram}) + "\n")


if __name__ == "__main__":
    main()
