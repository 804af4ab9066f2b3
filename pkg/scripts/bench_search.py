"""Bounded search on the S-theory principles and on the Russell sequent."""
import time
from dataclasses import dataclass

import _common
from tfocalc.proof import height, parse_sequent
from tfocalc.search import SearchBudget, prove_bounded

R = "{ x | not (x in x) }"
GOALS = [
    ("EXT", "GS", "forall x (P(x) <-> Q(x)) => tau x (P(x)) = tau x (Q(x))"),
    ("AV", "GS", "=> tau x (P(x)) = tau y (P(y))"),
    ("EXTAV", "GS'", "=> forall x (forall y (x = y -> (P(x) <-> Q(y)))) -> tau x (P(x)) = tau y (Q(y))"),
    ("converse-EXT", "GS", "tau x (P(x)) = tau x (Q(x)) => forall x (P(x) <-> Q(x))"),
    ("russell-GSNF", "GSNF", f"=> {R} in {R} <-> not ({R} in {R})"),
    ("russell-unsound", "GT-CLASSICAL-UNSOUND[in]", f"=> {R} in {R} <-> not ({R} in {R})"),
]


@dataclass
class Config:
    """Search each benchmark goal at increasing depth."""
    min_depth: int = 2
    max_depth: int = 8
    time_limit: float = 30.0
    json: bool = False


def main(cfg: Config):
    rows = []
    for name, system, goal in GOALS:
        seq = parse_sequent(goal)
        for depth in range(cfg.min_depth, cfg.max_depth + 1):
            t0 = time.perf_counter()
            r = prove_bounded(system, seq, SearchBudget(max_depth=depth, time_limit=cfg.time_limit))
            rows.append({"goal": name, "system": system, "depth": depth, "status": r.status,
                         "nodes": r.nodes, "seconds": round(time.perf_counter() - t0, 3),
                         "height": height(r.proof) if r.status == "found" else ""})
            if r.status != "exhausted":
                break
    _common.emit(cfg, rows, {})
    return 0


if __name__ == "__main__":
    raise SystemExit(main(_common.parse_config(Config)))
