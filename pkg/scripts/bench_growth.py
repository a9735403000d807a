"""Worklist pop counts versus n on random Dyck-2 graphs at fixed density.

Prints mean pops per size, the doubling ratios, and the worst pops / bound
ratio, where bound = (|Sigma| + |N|) * n^2. Cubic work would show ratios
near 8; sparse random graphs sit well below that.
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field

from cflreach.cli import run_bench


@dataclass(frozen=True)
class BenchConfig:
    sizes: list = field(default_factory=lambda: [50, 100, 200, 400])
    seeds: int = 5
    density: float = 2.0
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description="worklist growth curve")
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--density", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    cfg = BenchConfig(**vars(ap.parse_args()))
    rep = run_bench(cfg.sizes, cfg.seeds, cfg.density, cfg.seed)
    worst = max(r["pops"] / r["pop_bound"] for r in rep["runs"])
    seconds = {n: round(sum(r["seconds"] for r in rep["runs"] if r["n"] == n) / cfg.seeds, 4) for n in cfg.sizes}
    print(json.dumps({"config": asdict(cfg), "mean_pops": rep["mean_pops"], "growth": rep["growth"],
                      "mean_seconds": seconds, "worst_pop_ratio": round(worst, 4),
                      "within_pop_bound": rep["within_pop_bound"]}, indent=2))


if __name__ == "__main__":
    main()
