"""Sample valid extended derivations over a fixture and sort them into equivalence classes.

Each class corresponds to one isomorphism type of codimension-one extension
(up to the stabilizing isomorphisms).  Class representatives are printed.

    python3 scripts/exder_classes.py --base aff1 --weight 0 --samples 30
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from rbla.classify import transform_datum
from rbla.core import fixture, rb
from rbla.exactla import Matrix, render_rational
from rbla.flag import ExDerWitness, datum_from_exder, exder_from_datum, partition_exders
from rbla.generators import operator_candidates, random_valid_exder


@dataclass
class Config:
    base: str = "aff1"
    weight: int = 0
    operator: int = 0          # index into the candidate operator list
    samples: int = 30
    seed: int = 0
    mix: float = 0.5           # chance that a sample is a transformed copy of an earlier one


def _fmt(v):
    return "(" + ", ".join(render_rational(x) for x in v) + ")"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    cands = operator_candidates(cfg.base, cfg.weight)
    P: Matrix = cands[cfg.operator % len(cands)]
    base = rb(fixture(cfg.base), P, cfg.weight)
    rng = random.Random(cfg.seed)
    items = []
    for _ in range(cfg.samples):
        if items and rng.random() < cfg.mix:
            X = rng.choice(items)
            w = ExDerWitness(tuple(rng.randint(-2, 2) for _ in range(base.dim)), rng.choice((1, -1, 2)))
            items.append(exder_from_datum(transform_datum(datum_from_exder(X),
                                                          w.to_equivalence_witness())))
        else:
            items.append(random_valid_exder(rng, base))
    classes = partition_exders(items)
    print(f"{cfg.base}, weight {cfg.weight}, P rows {[list(map(str, r)) for r in P.entries]}")
    print(f"{cfg.samples} quadruples fall into {len(classes)} classes")
    for members in classes:
        X = items[members[0]]
        print(f"  size {len(members):3d}  eps={_fmt(X.epsilon)} g0={_fmt(X.g0)} "
              f"k0={render_rational(X.k0)} D rows={[_fmt(r) for r in X.D.entries]}")


if __name__ == "__main__":
    main()
