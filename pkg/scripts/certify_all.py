"""Certify the acceptance matrix and print one row per family.

    python3 scripts/certify_all.py [--graded] [--budget N] [--only cartan] [--out report.json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from supergen.families import select
from supergen.generate import certify_algebra


@dataclass
class Config:
    graded: bool = False
    budget: int = 8
    only: str | None = None
    out: str | None = None


def run(cfg: Config) -> list[dict]:
    rows = []
    for fam in select(cfg.only):
        a = fam.build()
        t0 = time.perf_counter()
        cert = certify_algebra(a, budget=cfg.budget, graded=cfg.graded)
        rows.append({
            "family": fam.label,
            "dim": a.dim,
            "recipe": cert.candidate.recipe,
            "attempts": cert.attempts,
            "rounds": cert.closure_rounds,
            "dims": list(cert.dims_per_round),
            "verdict": cert.verdict,
            "seconds": round(time.perf_counter() - t0, 3),
        })
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--graded", action="store_true")
    p.add_argument("--budget", type=int, default=8)
    p.add_argument("--only")
    p.add_argument("--out")
    cfg = Config(**vars(p.parse_args()))
    rows = run(cfg)
    print(f"{'family':<8} {'dim':>4} {'recipe':<16} {'att':>3} {'rnd':>3} {'sec':>7}  verdict")
    for r in rows:
        print(f"{r['family']:<8} {r['dim']:>4} {r['recipe']:<16} {r['attempts']:>3} {r['rounds']:>3}"
              f" {r['seconds']:>7.2f}  {r['verdict']}")
    ok = sum(r["verdict"] == "generated" for r in rows)
    print(f"{ok}/{len(rows)} generated, {sum(r['seconds'] for r in rows):.1f}s total")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
