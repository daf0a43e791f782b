"""Recheck the shipped discriminant tables and print the running group proportions.

    python scripts/table4_statistics.py --bounds 1000000 2000000 3000000 4000000 5000000
"""
import argparse
import json
from pathlib import Path
from dataclasses import dataclass, field

from deeptkt.tables import default_data_dir, load_table, tally_groups, verify_tables


@dataclass
class Config:
    data: str | None = None
    bounds: list[int] = field(default_factory=lambda: [10**6, 2 * 10**6, 3 * 10**6, 4 * 10**6, 5 * 10**6])


def main(cfg: Config) -> int:
    rep = verify_tables(cfg.data)
    for e in rep.errors:
        print("error:", e)
    base = default_data_dir() if cfg.data is None else Path(cfg.data)
    rows = load_table(base / "table4.json")["rows"]
    print(f"{'bound':>9s}  rows  <729,99> <729,100> <729,101>")
    for b in cfg.bounds:
        sub = [r for r in rows if r["d"] < b]
        tally, prop = tally_groups(sub)
        print(f"{b:9d}  {len(sub):4d}  " + "  ".join(f"{prop.get(k, 0):6.1f}%" for k in (99, 100, 101)))
    print(json.dumps({"tally": rep.tally, "ok": rep.ok}, sort_keys=True))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data")
    ap.add_argument("--bounds", type=int, nargs="+", default=Config().bounds)
    raise SystemExit(main(Config(**vars(ap.parse_args()))))
