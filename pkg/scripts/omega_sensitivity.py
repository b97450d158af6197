"""How often does the candidate generate as the Cartan summand moves through a box?

For each family the other ingredients are held fixed and ``h`` ranges over every
integer coordinate tuple of max-norm at most ``radius``. Each tuple is classed
as separating or not, and generating or not.

    python3 scripts/omega_sensitivity.py [--radius R] [--only classical]
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass
from itertools import product

from supergen.families import select
from supergen.generate import candidate, certify
from supergen.weights import separates


@dataclass
class Config:
    radius: int = 2
    only: str | None = "classical"
    graded: bool = False


def sweep(cfg: Config, fam) -> Counter:
    a = fam.build()
    base = candidate(a)
    counts: Counter = Counter()
    rng = range(-cfg.radius, cfg.radius + 1)
    for coords in product(rng, repeat=base.frame.rank):
        sep = separates(base.separated, coords)
        gen = certify(base.with_h(coords), cfg.graded).generated
        counts[(sep, gen)] += 1
    return counts


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--only", default="classical")
    p.add_argument("--graded", action="store_true")
    cfg = Config(**vars(p.parse_args()))
    print(f"{'family':<8} {'sep+gen':>8} {'sep-gen':>8} {'nosep+gen':>10} {'nosep-gen':>10}")
    for fam in select(cfg.only):
        c = sweep(cfg, fam)
        print(f"{fam.label:<8} {c[(True, True)]:>8} {c[(True, False)]:>8}"
              f" {c[(False, True)]:>10} {c[(False, False)]:>10}")


if __name__ == "__main__":
    main()
