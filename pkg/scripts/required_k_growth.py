"""How the number of counted sizes grows with 1/eps and with the graph.

For each family and eps, prints required_k, the estimate, the exact total
(when the graph is small enough) and the observed log error, as CSV.

    python scripts/required_k_growth.py --max-exp 8
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass, field

from truncapprox.errors import TooLargeForOracle
from truncapprox.graphcount import (
    Kind,
    cycle_graph,
    estimate_total,
    exact_total,
    is_claw_free,
    line_graph,
    petersen_graph,
    required_k,
)


@dataclass
class Config:
    max_exp: int = 8
    families: dict = field(
        default_factory=lambda: {
            "petersen": petersen_graph(),
            "cycle20": cycle_graph(20),
            "line(petersen)": line_graph(petersen_graph()),
        }
    )


def run(cfg: Config, out=sys.stdout):
    writer = csv.writer(out)
    writer.writerow(["graph", "kind", "eps", "required_k", "log_estimate", "log_exact", "error", "ms"])
    for name, G in cfg.families.items():
        for kind in Kind:
            if kind is Kind.INDEPENDENT and not is_claw_free(G):
                continue
            try:
                exact = exact_total(G, kind)
            except TooLargeForOracle:
                exact = None
            for e in range(1, cfg.max_exp + 1):
                eps = 10.0**-e
                t0 = time.perf_counter()
                est, _ = estimate_total(G, kind, eps)
                ms = 1000 * (time.perf_counter() - t0)
                lv = complex(est.log_value).real
                log_exact = math.log(exact) if exact else float("nan")
                writer.writerow([
                    name, kind.value, f"{eps:.0e}", required_k(G, kind, eps),
                    f"{lv:.12f}", f"{log_exact:.12f}", f"{abs(lv - log_exact):.3e}", f"{ms:.1f}",
                ])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-exp", type=int, default=Config.max_exp)
    args = ap.parse_args(argv)
    run(Config(max_exp=args.max_exp))


if __name__ == "__main__":
    main()
