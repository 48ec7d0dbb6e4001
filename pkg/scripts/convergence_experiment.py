"""Error of T_m(1) against m for random real-rooted and stable polynomials.

Prints CSV rows (kind, seed, n, delta, m, error, tail_bound) so the decay can
be compared with the tail bound N / (beta^m (beta - 1) (m + 1)).

    python scripts/convergence_experiment.py --trials 5 --n 60 > conv.csv
"""

from __future__ import annotations

import argparse
import csv
import math
import random
import sys
from dataclasses import dataclass

from truncapprox.approximator import log_expansion
from truncapprox.poly import PolynomialPrefix
from truncapprox.transforms import RootRegion, tail_bound


@dataclass
class Config:
    trials: int = 5
    n: int = 60
    deltas: tuple = (0.1, 0.5)
    eps: float = 1e-12
    seed: int = 0


def poly_mul(P, Q):
    out = [0] * (len(P) + len(Q) - 1)
    for i, x in enumerate(P):
        for j, y in enumerate(Q):
            out[i + j] += x * y
    return out


def random_poly(rng, n, delta, stable):
    """Integer polynomial with roots on a 1/1000 grid and its exact ln P(1)."""
    lo, hi = math.ceil(delta * 1000), 10000
    P, logs, deg = [1], [], 0
    while deg < n:
        if stable and n - deg >= 2 and rng.random() < 0.5:
            A, B = rng.randint(lo, hi), rng.randint(1, hi)
            P = poly_mul(P, [A * A + B * B, 2000 * A, 10**6])
            logs.append(math.log((1000 + A) ** 2 + B * B))
            deg += 2
        else:
            q = rng.randint(lo, hi)
            P = poly_mul(P, [q, 1000])
            logs.append(math.log(q + 1000))
            deg += 1
    return P, math.fsum(logs)


def run(cfg: Config, out=sys.stdout):
    writer = csv.writer(out)
    writer.writerow(["kind", "seed", "n", "delta", "m", "error", "tail_bound"])
    for kind in ("real-rooted", "stable"):
        for delta in cfg.deltas:
            for t in range(cfg.trials):
                seed = cfg.seed + t
                rng = random.Random(seed)
                P, truth = random_poly(rng, cfg.n, delta, kind == "stable")
                region = RootRegion(kind, delta)
                exp = log_expansion(PolynomialPrefix.full(P), region, cfg.eps, "high")
                plan = exp.plan
                for m, value in enumerate(exp.partial_sums(), start=1):
                    err = abs(complex(value) - truth)
                    bound = tail_bound(plan.beta, plan.degree_bound, m)
                    writer.writerow([kind, seed, cfg.n, delta, m, f"{err:.6e}", f"{bound:.6e}"])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--eps", type=float, default=Config.eps)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args(argv)
    run(Config(trials=args.trials, n=args.n, eps=args.eps, seed=args.seed))


if __name__ == "__main__":
    main()
