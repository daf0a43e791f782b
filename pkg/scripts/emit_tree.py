"""Write the annotated coclass-1 tree as DOT and JSON.

    python scripts/emit_tree.py --nmax 9 --prefix coclass_tree
"""
import argparse
from dataclasses import dataclass

from deeptkt.pcgroup import admissible_params
from deeptkt.tree import build_tree, parenthood_holds


@dataclass
class Config:
    nmax: int = 9
    prefix: str = "coclass_tree"
    check_parents: bool = False


def main(cfg: Config) -> int:
    tree = build_tree(cfg.nmax)
    with open(f"{cfg.prefix}.dot", "w") as fh:
        fh.write(tree.to_dot())
    with open(f"{cfg.prefix}.json", "w") as fh:
        fh.write(tree.to_json() + "\n")
    print(f"{len(tree.vertices)} vertices written to {cfg.prefix}.dot / .json")
    if cfg.check_parents:
        bad = [str(p) for p in admissible_params(min(cfg.nmax, 8), 3) if not parenthood_holds(p)]
        print("parenthood:", "ok" if not bad else "failed for " + ", ".join(bad))
        return 1 if bad else 0
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=Config.nmax)
    ap.add_argument("--prefix", default=Config.prefix)
    ap.add_argument("--check-parents", action="store_true")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))
