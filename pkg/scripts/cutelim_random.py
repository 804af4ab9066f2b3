"""Cut elimination over random proofs assembled from lemmas and (Cut)."""
import random
import statistics
import time
from dataclasses import dataclass

import _common
from cutgen import random_cut_proof
from tfocalc.calculi import check_proof
from tfocalc.cutelim import eliminate_cuts, flatten_trace, trace
from tfocalc.proof import count_rule, height


@dataclass
class Config:
    """Generate, eliminate, re-check."""
    n: int = 500
    seed: int = 0
    json: bool = False
    rows: bool = False


def main(cfg: Config):
    rng = random.Random(cfg.seed)
    rows, growth, steps, failures = [], [], [], 0
    t0 = time.perf_counter()
    for i in range(cfg.n):
        p, system = random_cut_proof(rng)
        out = eliminate_cuts(system, p)
        ok = (count_rule(out, "Cut") == 0 and out.conclusion.same(p.conclusion)
              and not check_proof(system, out))
        failures += not ok
        k = len(flatten_trace(trace(system, p)))
        growth.append(height(out) / height(p))
        steps.append(k)
        rows.append({"i": i, "system": system, "cuts": count_rule(p, "Cut"), "height": height(p),
                     "height_out": height(out), "steps": k, "ok": ok})
    summary = {"proofs": cfg.n, "failures": failures,
               "mean_height_ratio": round(statistics.mean(growth), 3),
               "max_height_ratio": round(max(growth), 3),
               "mean_reduction_steps": round(statistics.mean(steps), 2),
               "seconds": round(time.perf_counter() - t0, 2)}
    _common.emit(cfg, rows if cfg.rows or cfg.json else [], summary)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main(_common.parse_config(Config)))
