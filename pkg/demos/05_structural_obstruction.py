"""
A graph that can never carry a hypercyclic shift
================================================

If a vertex has two parents whose only child is that vertex, the shift
fixes a relation between coordinates that every orbit must respect. The
diamond chain has such a vertex. Strips and the skip path do not.
"""

from lattice_shifts import DiamondChain, SkipPath, Strip
from lattice_shifts.graph import parents, structural_obstruction

for model in (DiamondChain(), Strip(3), SkipPath()):
    v = structural_obstruction(model, 100)
    print(f"{str(model):10s} witness={v}")
    if v is not None:
        for p in sorted(parents(model, v)):
            print("   parent", p, "children", sorted(model.children(p)))
