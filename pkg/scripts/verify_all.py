"""Run every reduction check against its oracle and print one JSON summary.

    python3 scripts/verify_all.py --trials 100 --seed 0
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from cflreach.harness import VerifyConfig, verify
from cflreach.reductions import KINDS

# per-kind source-size caps used by the acceptance suite
MAX_N = {"triangle-dyck1": 10, "ov-dyck2": 8, "triangle-pds": 8, "aemono-pds": 8,
         "aemono-sub": 6, "led-wcflr": 5, "subdiv": 4}


@dataclass(frozen=True)
class Experiment:
    trials: int = 50
    seed: int = 0


def run(exp: Experiment) -> dict:
    rows = []
    for kind in KINDS:
        t0 = time.perf_counter()
        rep = verify(VerifyConfig(kind, exp.trials, exp.seed, MAX_N[kind]))
        rows.append({"reduction": kind, "max_n": MAX_N[kind], "agreements": rep["agreements"],
                     "failures": len(rep["failures"]), "seconds": round(time.perf_counter() - t0, 3)})
    return {"config": asdict(exp), "results": rows}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(json.dumps(run(Experiment(args.trials, args.seed)), indent=2))


if __name__ == "__main__":
    main()
