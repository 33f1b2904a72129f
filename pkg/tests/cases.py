"""Shared problem builders for the module tests and the acceptance run."""
import math

import numpy as np

from critline.oscillatory import (
    PhaseProblem, bump_window, derivatives, family_h2, family_h3, family_h4, family_h5,
)

FAMILY_T = 1.0e4


def family_problem(name: str, T: float = FAMILY_T) -> PhaseProblem:
    """One of the four main-term phase shapes with its stationary point centred in [Z, 2Z]."""
    if name == "h2":
        h, x0 = family_h2(T, 1.3, 1.0, 1.0, 1.0, 1.0), T * 1.3 / (2 * math.pi)
    elif name == "h3":
        h, x0 = family_h3(T, 1.0, 1.0, 2387.0), 2 * math.pi * 2387.0 / T
    elif name == "h4":
        h, x0 = family_h4(T, 2387.0, 2387.0), 2 * math.pi * 2387.0 / T
    elif name == "h5":
        h, x0 = family_h5(1.0, 1.0, 1.0, T), T
    else:
        raise KeyError(name)
    Z = x0 / 1.5
    w = bump_window(Z, 2 * Z)
    X = w.scale(Z)
    Y = abs(float(derivatives(h, np.array(x0), 2)[2])) * Z * Z
    return PhaseProblem(w, h, Z, X, Y, Y / X**2)


def linear_problem(Z: float, ratio: float) -> PhaseProblem:
    """h = lambda xi with lambda Z / Y = 1 and Y/X = ratio."""
    w = bump_window(Z, 2 * Z)
    X = w.scale(Z)
    Y = ratio * X
    lam = Y / Z
    return PhaseProblem(w, lambda x: lam * x, Z, X, Y)
