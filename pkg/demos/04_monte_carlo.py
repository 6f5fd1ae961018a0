"""Monte-Carlo cross-check of the analytic machinery.

Simulates the argmax of W(t) - gamma t^2 on a grid, compares sample means
to the contour-integral values, and uses step-halving on the same paths to
size the discretization bias.
"""
import math

import numpy as np

from chernoff import (
    CANONICAL_GAMMA,
    SimConfig,
    discretization_probe,
    estimate,
    mean_max,
    moment,
)

CFG = SimConfig(gamma=CANONICAL_GAMMA, horizon=4.0, step=2e-3,
                num_paths=20_000, seed=42)


def main():
    print(f"simulating {CFG.num_paths} paths, step {CFG.step}, "
          f"horizon {CFG.horizon} (seed {CFG.seed})")
    fine, coarse = discretization_probe(CFG)

    rows = [
        ("E V^2", fine.v ** 2, coarse.v ** 2, moment(2)),
        ("E V^4", fine.v ** 4, coarse.v ** 4, moment(4)),
        ("E M  ", fine.m, coarse.m, mean_max()),
        ("E W_V", fine.w_at_argmax, coarse.w_at_argmax, 4.0 / 3.0 * mean_max()),
    ]
    print(f"\n{'stat':<6} {'MC':>10} {'stderr':>9} {'bias est':>9} "
          f"{'analytic':>10} {'pull':>6}")
    for name, xf, xc, analytic in rows:
        est = xf.mean()
        se = xf.std(ddof=1) / math.sqrt(len(xf))
        delta = (xf - xc).mean()          # stat(h) - stat(2h), same paths
        bias = delta / (1.0 - math.sqrt(2.0))   # sqrt(h) bias model
        pull = (est - bias - analytic) / se
        print(f"{name:<6} {est:>10.5f} {se:>9.2g} {bias:>+9.4f} "
              f"{analytic:>10.5f} {pull:>+6.1f}")

    r = estimate(fine, "w_at_argmax_mean").value / estimate(fine, "m_mean").value
    print(f"\nE W_V / E M = {r:.4f}   (analytic: 4/3 = {4 / 3:.4f})")

    t = 1.0
    mc_cos = estimate(fine, "cos_v", t=t)
    from chernoff import char_fn
    print(f"E cos(V)    = {mc_cos.value:.4f} +- {mc_cos.stderr:.4f}   "
          f"(cf({t}) = {char_fn(t).real:.4f})")

    print("\nbias-corrected pulls should sit within a few units; the raw E M")
    print("estimate is visibly low because the grid only sees the maximum at")
    print("grid points, which is exactly what the step-halving column sizes.")


if __name__ == "__main__":
    main()
