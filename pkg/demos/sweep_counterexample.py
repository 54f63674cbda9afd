"""A weak*-null sequence on [0,1] that cannot be pushed through the double arrow at 1/2.

The dyadic sweep moves a unit dipole across ever finer intervals.  Against any
piecewise linear function its integral shrinks with the interval width, yet the
distribution function equals 1 at t = 1/2 once per dyadic generation.
"""
from fractions import Fraction

from compactlines.extension import check_criterion
from compactlines.functions import PiecewiseLinear
from compactlines.measures import NBVProfile, cumulative, rs_integral
from compactlines.order import RationalPoint, double_arrow_projection
from compactlines.sequences import sweep_interval, sweep_sequence

DEPTH = 4

seq = sweep_sequence(DEPTH)
f = PiecewiseLinear.identity()
print(f"sweep of depth {DEPTH}, {seq.horizon} terms")
print(" n   interval        integral of x   width")
for n in range(1, seq.horizon + 1):
    _, a, b = sweep_interval(n)
    val = rs_integral(f, NBVProfile(seq[n]))
    print(f"{n:>2}   [{a}, {b}]".ljust(22), f"{str(val):>10}   {b - a}")

half = RationalPoint(Fraction(1, 2))
hits = [n for n in range(1, seq.horizon + 1) if cumulative(seq[n], half) == 1]
print(f"\ndistribution function equals 1 at t=1/2 for n in {hits}")
verdict = check_criterion(double_arrow_projection((half.x,)), seq, [half])
print(f"extension verdict through the double arrow at 1/2: {verdict}")
