"""Derivatives from dual-number coefficients.

A dual number a + b e0 with e0*e0 = 0 carries a value and its derivative.
Putting dual numbers inside dual numbers gives second derivatives.

Run: python3 demos/04_autodiff.py
"""
import numpy as np

from sparsega import Algebra
from sparsega.autodiff import derivatives, variable
from sparsega.derivdemo import analytic, report, trajectory

t = variable(2.0)
print("t              =", t)
print("t**3 at t=2    =", derivatives(t * t * t, 1))

t = variable(2.0, order=2)
print("t**3, 2nd order:", derivatives(t * t * t, 2))
print("1/t,  2nd order:", derivatives(1 / t, 2))

# A point rotating about the origin. The rotor's exp sees a dual angle,
# so velocity and acceleration fall out of the sandwich product.
alg = Algebra(2, 0, 1)
x, y = trajectory(alg, variable(0.8, 2))
(px, py), (vx, vy), (ax, ay) = analytic(0.8)
print("\nx, x', x'' :", derivatives(x, 2))
print("analytic   :", [float(px), float(vx), float(ax)])

# Array-valued time axis: one evaluation gives the whole trajectory.
rep = report(samples=200)
for key, value in rep.items():
    print(f"{key:<32} {value:.3g}" if key != "samples" else f"{key:<32} {value}")
