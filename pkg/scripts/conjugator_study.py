"""Cartan families with and without the balancing conjugation of the Cartan summand.

The plain variant keeps every ingredient but places ``h`` in the standard frame,
where ``x_0`` is not balanced; it then spends the whole fallback budget on other
separating ``h``. The conjugated variant is the shipped candidate.

    python3 scripts/conjugator_study.py [--budget N]
"""

from __future__ import annotations

import argparse
import dataclasses
from dataclasses import dataclass

from supergen.families import select
from supergen.generate import candidate, is_balanced, search_fallback


@dataclass
class Config:
    budget: int = 8
    graded: bool = False


def study(cfg: Config, fam) -> dict:
    a = fam.build()
    conj = candidate(a)
    plain = dataclasses.replace(conj, conjugator=None).with_h(conj.h_coords)
    x0 = conj.ingredient("x_0").element
    out = {"family": fam.label, "x0_balanced_standard": is_balanced(x0, conj.frame, degree=0),
           "psi": conj.conjugator.coeffs}
    for name, c in (("conjugated", conj), ("plain", plain)):
        cert = search_fallback(a, c, cfg.budget, cfg.graded)
        out[name] = (cert.verdict, cert.attempts, cert.final_dim, a.dim)
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=8)
    p.add_argument("--graded", action="store_true")
    cfg = Config(**vars(p.parse_args()))
    for fam in select("cartan"):
        r = study(cfg, fam)
        print(f"{r['family']:<6} psi={r['psi']} x0 balanced in standard frame: {r['x0_balanced_standard']}")
        for name in ("conjugated", "plain"):
            verdict, att, got, dim = r[name]
            print(f"    {name:<10} {verdict:<14} attempts {att}, dim {got}/{dim}")


if __name__ == "__main__":
    main()
