"""Classify f^-1(y) for every periodic-digit value y = (c)^inf, over a range of (s, r).

    python3 scripts/levelset_table.py --max-s 6
"""
import argparse
from dataclasses import dataclass

from redundant_radix.numerals import Params, PeriodicRep, value_of
from redundant_radix.projector import levelset_classify


@dataclass(frozen=True)
class TableConfig:
    min_s: int = 2
    max_s: int = 6
    all_regimes: bool = False


def rows(cfg: TableConfig):
    for s in range(cfg.min_s, cfg.max_s + 1):
        top = 2 * s + 1 if cfg.all_regimes else 2 * s - 2
        for r in range(s, top + 1):
            p = Params(s, r)
            for c in range(r + 1):
                y = value_of(PeriodicRep((), (c,), r), s)
                ls = levelset_classify(y, p)
                yield s, r, c, y, ls


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-s", type=int, default=2)
    ap.add_argument("--max-s", type=int, default=6)
    ap.add_argument("--all-regimes", action="store_true", help="also r >= 2s-1")
    a = ap.parse_args()
    cfg = TableConfig(a.min_s, a.max_s, a.all_regimes)
    print("s,r,c,y,class,period_r_tail")
    for s, r, c, y, ls in rows(cfg):
        print(f"{s},{r},{c},{y.numerator}/{y.denominator},{ls.cardinality},{int(ls.period_r_tail)}")


if __name__ == "__main__":
    main()
