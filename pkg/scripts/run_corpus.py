"""Check every fixture and report per-entry verdicts and timings."""
from dataclasses import dataclass

import _common
from tfocalc.corpus import run_corpus


@dataclass
class Config:
    """Run the fixture corpus."""
    repeat: int = 1
    json: bool = False


def main(cfg: Config):
    reports = [run_corpus() for _ in range(cfg.repeat)]
    last = reports[-1]
    rows = [{"id": r.entry.id, "name": r.entry.name, "system": r.entry.system,
             "expect": r.entry.expect, "passed": r.passed, "ms": round(1000 * r.seconds, 2)}
            for r in last.results]
    _common.emit(cfg, rows, {"passed": f"{last.passed}/{len(last.results)}",
                             "best_seconds": round(min(r.seconds for r in reports), 4)})
    return 0 if last.ok else 1


if __name__ == "__main__":
    raise SystemExit(main(_common.parse_config(Config)))
