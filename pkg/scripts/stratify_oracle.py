"""Exhaustive comparison of the stratifier with brute-force level assignment."""
import time
from collections import Counter
from dataclasses import dataclass

import _common
from oracles import brute_force_stratifiable, enumerate_formulas, satisfies
from tfocalc.stratify import StratAssignment, stratify
from tfocalc.syntax import print_formula


@dataclass
class Config:
    """Enumerate all small formulas and compare verdicts."""
    span: int = 3
    show: int = 5
    json: bool = False


def main(cfg: Config):
    tally, bad = Counter(), []
    t0 = time.perf_counter()
    for phi in enumerate_formulas():
        expected = brute_force_stratifiable(phi, span=cfg.span)
        r = stratify(phi)
        got = isinstance(r, StratAssignment)
        agree = got == expected and (not got or satisfies(r.levels, phi))
        tally["stratified" if expected else "unstratifiable"] += 1
        tally["agree" if agree else "disagree"] += 1
        if not agree and len(bad) < cfg.show:
            bad.append({"formula": print_formula(phi), "oracle": expected, "stratify": str(r)})
    _common.emit(cfg, bad, {**tally, "seconds": round(time.perf_counter() - t0, 2)})
    return 1 if tally["disagree"] else 0


if __name__ == "__main__":
    raise SystemExit(main(_common.parse_config(Config)))
