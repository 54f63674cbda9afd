"""Fragmentation levels of the coordinate embedding on [0,ω] and [0,ω²].

Each level keeps the points where every neighbourhood still has diameter at
least the threshold.  A finite truncation of the line gives an independent
check of the symbolic computation.
"""
from fractions import Fraction

from compactlines.fragmentation import compute_hierarchy
from compactlines.functions import CoefficientPattern, CoordinateEmbedding
from compactlines.oracles import oracle_hierarchy, restrict_levels
from compactlines.order import OrdinalLine

cases = [
    ("[0,w]", CoordinateEmbedding(OrdinalLine((0, 1, 0)))),
    ("[0,w^2]", CoordinateEmbedding(OrdinalLine((1, 0, 0)), CoefficientPattern.constant(1), Fraction(1, 2))),
]
for name, R in cases:
    h = compute_hierarchy(R, 1)
    print(f"{name}: {len(h.levels)} levels at threshold 1")
    for i, level in enumerate(h.levels):
        print(f"  level {i}: {level}")
    agrees = restrict_levels(h, 100) == oracle_hierarchy(R, 1, 100)
    print(f"  matches the truncation at N=100: {agrees}\n")
