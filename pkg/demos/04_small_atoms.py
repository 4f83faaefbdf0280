"""The eight geodesic atoms with at most three vertices, and pictures of them."""

from pathlib import Path

from geoatoms.catalog import CONSTRUCTIONS, build_named, invariant_table, verify_theorem1
from geoatoms.svg import render

print(f"{'name':<12} V  E  F  chi orientable  face degrees")
for name, v, e, f, chi, orientable, degrees in invariant_table():
    print(f"{name:<12} {v}  {e}  {f}  {chi:>3} {str(orientable):<11} {list(degrees)}")

report = verify_theorem1()
print()
print(report.to_text())

out = Path(__file__).with_name("figures")
out.mkdir(exist_ok=True)
for name in CONSTRUCTIONS:
    _, _, arrangement = build_named(name)
    path = out / (name.replace("@", "_") + ".svg")
    path.write_text(render(arrangement))
    print("wrote", path)
