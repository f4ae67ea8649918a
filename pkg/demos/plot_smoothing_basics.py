"""
Smoothing the square root near zero
===================================

The square root has an infinite slope at the origin.  Replacing it on
``[0, delta]`` by a cubic that matches value, slope and curvature at
``delta`` gives a function whose slope at 0 is finite.
"""

import numpy as np

from smoothkit import funcmodel, smoothing

f = funcmodel.root(0.5)
s = smoothing.make_smoothing(f, 1.0)
print(f"g1={s.g1}  g2={s.g2}  g3={s.g3}")

# the cubic and f agree at delta through the second derivative
print("at delta:", s.cubic(1.0).as_tuple()[:3], f.jet(1.0).as_tuple()[:3])

# slope at zero drops as delta grows: g1 = 15 / (8 sqrt(delta))
for delta in (0.01, 0.1, 1.0):
    print(f"delta={delta:<5} g1={smoothing.make_smoothing(f, delta).g1:.6f}")

# the same function typed as an expression gives the same coefficients
g = funcmodel.from_expression("w^0.5")
print(smoothing.make_smoothing(g, 1.0).g1, s.g1)

# a condition report lists which structural results apply
report = smoothing.check_conditions(f, 1.0)
print(report.theorems)

w = np.linspace(0.0, 1.0, 5)
print(np.column_stack([w, f(w), s(w)]))
