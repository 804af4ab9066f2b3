"""Full Leibniz' law t1 = t2, φ(t1) => φ(t2) found by search from the atomic rule."""
import itertools
import time
from dataclasses import dataclass

import _common
from tfocalc.binding import instantiate
from tfocalc.calculi import check_proof
from tfocalc.proof import Sequent, height
from tfocalc.search import SearchBudget, prove_bounded
from tfocalc.syntax import Eq, parse_formula, parse_term

BODIES = ["P(x)", "not P(x)", "P(x) & Q(x)", "P(x) | G", "P(x) -> Q(x)", "P(x) <-> Q(x)",
          "forall y (R(x, y))", "exists y (R(y, x))", "x = x", "x in c", "not (x = c)",
          "exists y (y = x)", "P(x) & not Q(x)", "forall y (R(x, y) -> P(x))"]
TERMS = [("a", "b"), ("tau x (P(x))", "tau y (Q(y))"), ("a", "iota x (P(x))")]


@dataclass
class Config:
    """Sweep formula bodies and term pairs."""
    system: str = "GS"
    depth: int = 8
    time_limit: float = 20.0
    json: bool = False


def main(cfg: Config):
    rows, found = [], 0
    for body, (s1, s2) in itertools.product(BODIES, TERMS):
        q = parse_formula(f"forall x ({body})")
        t1, t2 = parse_term(s1), parse_term(s2)
        goal = Sequent((Eq(t1, t2), instantiate(q, t1)), (instantiate(q, t2),))
        t0 = time.perf_counter()
        r = prove_bounded(cfg.system, goal, SearchBudget(max_depth=cfg.depth, time_limit=cfg.time_limit))
        ok = r.status == "found" and not check_proof(cfg.system, r.proof)
        found += ok
        rows.append({"body": body, "t1": s1, "t2": s2, "status": r.status, "rechecks": ok,
                     "nodes": r.nodes, "height": height(r.proof) if ok else "",
                     "seconds": round(time.perf_counter() - t0, 3)})
    _common.emit(cfg, rows, {"found": f"{found}/{len(rows)}"})
    return 0


if __name__ == "__main__":
    raise SystemExit(main(_common.parse_config(Config)))
