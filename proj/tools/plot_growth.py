"""Plot the scale timings written by `acceptance --csv growth.csv`."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv")
    parser.add_argument("--output", default="growth.png")
    args = parser.parse_args()

    df = pd.read_csv(args.csv)
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    for col in ("baselines_s", "lattice_s", "solve_s"):
        left.loglog(df["n"], df[col], marker="o", label=col.removesuffix("_s"))
    left.set_xlabel("agents per side")
    left.set_ylabel("seconds")
    left.legend()
    right.plot(df["n"], df["rotations"], marker="o", label="rotations")
    right.plot(df["n"], df["digraph_edges"], marker="o", label="digraph edges")
    right.set_xlabel("agents per side")
    right.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=120)


if __name__ == "__main__":
    main()
