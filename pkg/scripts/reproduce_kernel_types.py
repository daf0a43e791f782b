"""Recompute transfer kernel types for every admissible group and compare with the case analysis.

    python scripts/reproduce_kernel_types.py --nmax 9 --out kernel_types.json
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from deeptkt.symbolic import symbolic_pattern
from deeptkt.transfer import verify_kernel_types


@dataclass
class Config:
    nmax: int = 9
    out: str | None = None


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    rep = verify_kernel_types(cfg.nmax)
    print(f"{'group':14s} {'type':5s} {'kappa_s':8s} {'kappa_d':12s} {'tau_1':10s} ok")
    for r in rep.rows:
        c = r.computed
        print(f"{str(r.params):14s} {symbolic_pattern(r.params).type_label:5s} "
              f"{''.join(map(str, c.kappa_s)):8s} {','.join(map(str, c.kappa_d_orders)):12s} "
              f"{str(c.tau[0]):10s} {'yes' if r.match else 'NO'}")
    print(f"{len(rep.rows)} groups, {len(rep.mismatches)} mismatches, {time.perf_counter() - t0:.1f}s")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), **rep.as_dict()}, fh, indent=1, sort_keys=True)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=Config.nmax)
    ap.add_argument("--out")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))
