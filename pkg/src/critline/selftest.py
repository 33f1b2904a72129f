"""Quick property checks for every module, run by ``critline selftest``.

Each check returns (ok, detail); the whole table runs in well under a minute.
"""
from __future__ import annotations

import math
import time

import numpy as np


def _arith():
    from .arith import kloosterman_residues, mod_inverse, primes_up_to, ramanujan_tau

    tau = ramanujan_tau(10)
    ok = tau == [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]
    ok &= all(a * mod_inverse(a, 97) % 97 == 1 for a in range(1, 97))
    worst = max(float(np.max(np.abs(kloosterman_residues(int(p))))) / (2 * math.sqrt(p))
                for p in primes_up_to(200))
    return ok and worst <= 1.0, f"max Weil ratio p<=200 {worst:.3f}"


def _special():
    import mpmath

    from .special import bessel_j, log_gamma

    z = np.array([0.5 + 10j, 3.0 - 40j, 0.25 + 400j])
    lg = max(abs(complex(log_gamma(x)) - complex(mpmath.loggamma(x))) for x in z)
    j = abs(complex(bessel_j(2j, 7.5)) - complex(mpmath.besselj(2j, 7.5)))
    return lg < 1e-12 and j < 1e-10, f"log_gamma {lg:.1e}, J_2i(7.5) {j:.1e}"


def _forms():
    from .forms import build_delta, hecke_defect

    f = build_delta(2000)
    d = hecke_defect(f.eigenvalues, 2000)
    return d <= 1e-12, f"Hecke defect n<=2000 {d:.1e}"


def _lfunc():
    from .lfunc import DyadicPartition, zeta

    z = abs(zeta(0.5) - (-1.4603545088095868))
    pu = DyadicPartition().identity_defect(10_000)
    return z < 1e-12 and pu < 1e-10, f"zeta(1/2) {z:.1e}, partition of unity {pu:.1e}"


def _oscillatory():
    from .oscillatory import PhaseProblem, bump_window, first_derivative_test, oracle_integral

    worst = 0.0
    w = bump_window(10.0, 20.0)
    X = w.scale(10.0)
    for ratio in (3.0, 30.0):
        Y = ratio * X
        lam = Y / 10.0
        p = PhaseProblem(w, lambda x, lam=lam: lam * x, 10.0, X, Y)
        worst = max(worst, abs(oracle_integral(p)) / first_derivative_test(p, 3))
    return worst <= 1.0, f"linear phase |I|/envelope {worst:.2e}"


def _sums():
    from .sums import completion_residual

    r = completion_residual(3, 7, 50.0)
    return r <= 1e-6, f"completion residual {r:.1e}"


def _voronoi():
    from .forms import load_maass_table
    from .voronoi import voronoi_residual

    r = voronoi_residual(load_maass_table(), 1, 1, 10.0)
    return r <= 1e-4, f"Voronoi residual (1,1,10) {r:.1e}"


def _moments():
    from .moments import make_window, mean_value_exact, mean_value_ratio

    rng = np.random.default_rng(7)
    worst, agree = 0.0, 0.0
    for _ in range(5):
        a = rng.standard_normal(20) + 1j * rng.standard_normal(20)
        r = mean_value_ratio(a, 50.0)
        exact = mean_value_exact(a, 50.0) / ((50.0 + 60.0) * float(np.sum(np.abs(a) ** 2)))
        worst, agree = max(worst, r), max(agree, abs(r - exact))
    w = make_window(8.0)
    mass = abs(w.c - 0.875)
    return worst <= 1.0 and agree < 1e-9 and mass < 1e-12, f"mean-value ratio {worst:.3f}, window mass {mass:.1e}"


CHECKS = (("arith", _arith), ("special", _special), ("forms", _forms), ("lfunc", _lfunc),
          ("oscillatory", _oscillatory), ("sums", _sums), ("voronoi", _voronoi), ("moments", _moments))


def run_all():
    out = []
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported in the table
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), f"{detail} ({time.perf_counter() - start:.1f}s)"))
    return out
