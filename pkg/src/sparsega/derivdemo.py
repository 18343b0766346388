"""First and second time derivatives of a rotating point via nested duals."""
from __future__ import annotations

import numpy as np

from .algebra import Algebra
from .autodiff import derivatives, variable

OMEGA = 1.5
START = (1.0, 0.5)


def trajectory(alg: Algebra, t, omega: float = OMEGA, start=START):
    """Point at time t: ``start`` rotated about the origin by omega * t.

    ``t`` may be a float, an array, or a (nested) dual number over either.
    Returns the (x, y) coefficients of the undualized point.
    """
    R = (alg.e12 * (t * (-omega / 2))).exp()
    P = alg.vector([1.0, *start]).dual()
    Q = (R >> P).undual()
    return Q.e1, Q.e2


def analytic(t, omega: float = OMEGA, start=START):
    x0, y0 = start
    c, s = np.cos(omega * t), np.sin(omega * t)
    x = x0 * c - y0 * s
    y = x0 * s + y0 * c
    return (x, y), (-omega * y, omega * x), (-omega**2 * x, -omega**2 * y)


def _vec_err(a, b):
    num = np.hypot(a[0] - b[0], a[1] - b[1])
    return float(np.max(num / np.hypot(b[0], b[1])))


def report(samples: int = 50, h1: float = 1e-5, h2: float = 1e-4) -> dict:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    alg = Algebra(2, 0, 1)
    taxis = np.linspace(0, 2 * np.pi, samples)
    x, y = trajectory(alg, variable(taxis, 2))
    dx, dy = derivatives(x, 2), derivatives(y, 2)
    pos, vel, acc = (dx[0], dy[0]), (dx[1], dy[1]), (dx[2], dy[2])

    def f(t):
        return np.array(trajectory(alg, t))

    fd1 = (f(taxis + h1) - f(taxis - h1)) / (2 * h1)
    fd2 = (f(taxis + h2) - 2 * f(taxis) + f(taxis - h2)) / h2**2
    (ax, ay), avel, aacc = analytic(taxis)
    radial = np.abs(vel[0] * pos[0] + vel[1] * pos[1])
    return {
        "samples": samples,
        "max_rel_err_first_vs_analytic": _vec_err(vel, avel),
        "max_rel_err_second_vs_analytic": _vec_err(acc, aacc),
        "max_rel_err_first_vs_fd": _vec_err(vel, fd1),
        "max_rel_err_second_vs_fd": _vec_err(acc, fd2),
        "max_rel_err_position": _vec_err(pos, (ax, ay)),
        "max_velocity_dot_radius": float(np.max(radial)),
    }


def polynomial_check(t: float = 3.0) -> list:
    """f(t) = t**2: value, first and second derivative."""
    v = variable(t, 2)
    return derivatives(v * v, 2)
