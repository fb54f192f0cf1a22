"""Write the graph sample of f as CSV and, optionally, a PNG scatter plot.

    python3 scripts/export_graph.py --s 2 --r 3 --depth 7 --out graph.csv [--png graph.png]
"""
import argparse
from pathlib import Path

from redundant_radix.numerals import Params
from redundant_radix.projector import graph_sample


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--depth", type=int, default=7)
    ap.add_argument("--out", type=Path, default=Path("graph.csv"))
    ap.add_argument("--png", type=Path)
    a = ap.parse_args()
    g = graph_sample(Params(a.s, a.r), a.depth)
    a.out.write_text(g.to_csv())
    print(f"wrote {len(g)} points to {a.out}")
    if a.png:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(7, 4))
        ax.scatter(g.x_num / g.x_den, g.y_num / g.y_den, s=0.2, color="k")
        ax.set_xlabel("x")
        ax.set_ylabel("f(x)")
        ax.set_title(f"s={a.s}, r={a.r}, depth {a.depth}")
        fig.savefig(a.png, dpi=150, bbox_inches="tight")
        print(f"wrote {a.png}")


if __name__ == "__main__":
    main()
