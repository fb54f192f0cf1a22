"""Box-counting slopes of the graph of f against the self-affine dimension.

    python3 scripts/box_dimension.py --s 2 --r 3 --depth 10
"""
import argparse
from dataclasses import dataclass

from redundant_radix.numerals import Params
from redundant_radix.projector import box_count_estimate, graph_sample, self_affine_dimension


@dataclass(frozen=True)
class BoxConfig:
    s: int = 2
    r: int = 3
    depth: int = 10
    k_min: int = 1
    k_max: int = 8


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(BoxConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = BoxConfig(**vars(ap.parse_args()))
    p = Params(cfg.s, cfg.r)
    sample = graph_sample(p, cfg.depth)
    target = self_affine_dimension(p).value
    print(f"# (s, r) = ({cfg.s}, {cfg.r}), depth {cfg.depth}, self-affine dimension {target:.6f}")
    print("k,scale,count,slope")
    for k, (scale, count, slope) in zip(range(cfg.k_min, cfg.k_max + 1), box_count_estimate(sample, range(cfg.k_min, cfg.k_max + 1))):
        print(f"{k},{scale:.6g},{count},{'' if slope is None else f'{slope:.6f}'}")


if __name__ == "__main__":
    main()
