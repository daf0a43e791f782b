"""Scan fundamental discriminants for 3-class rank two, optionally in parallel.

    python scripts/scan_discriminants.py --min 2 --max 500000 --workers 4 --out scan.json
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from deeptkt.quadfield import scan


@dataclass
class Config:
    min: int = 2
    max: int = 300000
    workers: int = 1
    out: str | None = None


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    hits = scan(cfg.min, cfg.max, min_rank=2, workers=cfg.workers)
    for d, s in hits:
        print(d, s)
    print(f"{len(hits)} discriminants in [{cfg.min}, {cfg.max}], {time.perf_counter() - t0:.1f}s")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": [{"d": d, "sylow3": list(s.factors)} for d, s in hits]},
                      fh, indent=1, sort_keys=True)
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for k in ("min", "max", "workers"):
        ap.add_argument(f"--{k}", type=int, default=getattr(Config, k))
    ap.add_argument("--out")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))
