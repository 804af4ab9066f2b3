"""Shared bits for the experiment scripts: dataclass configs as CLI flags."""
import argparse
import dataclasses
import json
import sys
from pathlib import Path

TESTS = Path(__file__).resolve().parents[1] / "tests"
if str(TESTS) not in sys.path:
    sys.path.insert(0, str(TESTS))


def parse_config(cls, argv=None):
    """One ``--flag`` per dataclass field, typed by its default."""
    p = argparse.ArgumentParser(description=cls.__doc__)
    for f in dataclasses.fields(cls):
        default = f.default
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, bool):
            p.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        else:
            p.add_argument(flag, type=type(default), default=default)
    return cls(**vars(p.parse_args(argv)))


def emit(cfg, rows, summary):
    """Rows as tab-separated lines, or one JSON document with ``--json``."""
    if getattr(cfg, "json", False):
        print(json.dumps({"config": dataclasses.asdict(cfg), "rows": rows, "summary": summary},
                         indent=1, default=str))
        return
    if rows:
        keys = list(rows[0])
        print("\t".join(keys))
        for r in rows:
            print("\t".join(str(r[k]) for k in keys))
    for k, v in summary.items():
        print(f"# {k}: {v}")
