"""Compare the compatibility conditions with the direct axiom check on random data.

Prints the agreement rate, the fraction of valid data per base, and how often
each condition is the first one to fail.

    python3 scripts/oracle_agreement.py --samples 2000 --seed 7
"""

from __future__ import annotations

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from rbla.extending import check_unified_axioms, unified_product, validate_datum
from rbla.generators import random_datum, random_rb_base


@dataclass
class Config:
    samples: int = 1000
    seed: int = 0
    density: float | None = None     # None: mix of densities


def run(cfg: Config) -> dict:
    rng = random.Random(cfg.seed)
    first_failure = Counter()
    per_base = Counter()
    valid_per_base = Counter()
    disagreements = 0
    t0 = time.perf_counter()
    for _ in range(cfg.samples):
        base = random_rb_base(rng)
        om = random_datum(rng, base=base, density=cfg.density)
        rep = validate_datum(om)
        oracle = check_unified_axioms(unified_product(om)).passed
        disagreements += rep.passed != oracle
        key = (base.algebra.dim, base.algebra.is_abelian(), str(base.weight))
        per_base[key] += 1
        valid_per_base[key] += rep.passed
        if not rep.passed:
            first_failure[rep.failures[0].condition] += 1
    return {"elapsed": time.perf_counter() - t0, "disagreements": disagreements,
            "per_base": per_base, "valid_per_base": valid_per_base, "first_failure": first_failure}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--density", type=float, default=None)
    cfg = Config(**vars(ap.parse_args()))
    out = run(cfg)
    print(f"{cfg.samples} data, {out['disagreements']} disagreements, {out['elapsed']:.1f}s")
    print("base (dim, abelian, weight)      valid/total")
    for key in sorted(out["per_base"]):
        print(f"  {str(key):30s} {out['valid_per_base'][key]:5d}/{out['per_base'][key]}")
    print("first failing condition:")
    for cid, count in sorted(out["first_failure"].items()):
        print(f"  {cid}: {count}")


if __name__ == "__main__":
    main()
