"""List the Rota-Baxter operators on aff(1) with small integer entries.

    python3 scripts/aff1_operators.py --weight 0 --bound 2
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from itertools import product

from rbla.core import aff1, check_rb, rb
from rbla.exactla import Matrix


@dataclass
class Config:
    weight: int = 0
    bound: int = 2


def operators(cfg: Config) -> list[Matrix]:
    L = aff1()
    r = range(-cfg.bound, cfg.bound + 1)
    return [M for M in (Matrix.from_rows([[a, b], [c, d]]) for a, b, c, d in product(r, repeat=4))
            if check_rb(rb(L, M, cfg.weight)).passed]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--weight", type=int, default=Config.weight)
    ap.add_argument("--bound", type=int, default=Config.bound)
    cfg = Config(**vars(ap.parse_args()))
    found = operators(cfg)
    total = (2 * cfg.bound + 1) ** 4
    print(f"weight {cfg.weight}: {len(found)} of {total} matrices are Rota-Baxter operators")
    for M in found:
        cols = ["(" + ", ".join(str(x) for x in M.column(j)) + ")" for j in range(2)]
        print(f"  P(e1) = {cols[0]:10s} P(e2) = {cols[1]}")


if __name__ == "__main__":
    main()
