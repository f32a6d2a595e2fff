#!/usr/bin/env python3
"""Plot acceptance and profit per time bucket from a `detsfc compare` output dir.

    python3 scripts/plot_metrics.py out/ [--save fig.png]
"""
import argparse
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("dir", type=Path)
    ap.add_argument("--save", type=Path)
    args = ap.parse_args()

    paired = pd.read_csv(args.dir / "compare.csv")
    latency = pd.read_csv(args.dir / "latency.csv")

    fig, axes = plt.subplots(1, 3, figsize=(15, 4))
    ax = axes[0]
    ax.plot(paired.time_bucket, paired.det_acceptance, marker="o", label="det-sfcd")
    ax.plot(paired.time_bucket, paired.sph_acceptance, marker="s", label="sph-le")
    for start, end, peak in zip(paired.time_bucket, paired.bucket_end, paired.peak):
        if peak:
            ax.axvspan(start, end, color="0.9", zorder=0)
    ax.set_xlabel("time")
    ax.set_ylabel("acceptance rate")
    ax.legend()

    ax = axes[1]
    ax.plot(paired.time_bucket, paired.det_profit.cumsum(), label="det-sfcd")
    ax.plot(paired.time_bucket, paired.sph_profit.cumsum(), label="sph-le")
    ax.set_xlabel("time")
    ax.set_ylabel("cumulative profit")
    ax.legend()

    ax = axes[2]
    for name, g in latency.groupby("strategy"):
        mid = (g.rate_lo + g.rate_hi) / 2
        ax.errorbar(mid, g.mean_deviation, yerr=g.jitter, marker="o", capsize=3, label=name)
    ax.axhline(0, color="k", lw=0.5)
    ax.set_xlabel("data rate (Mbps)")
    ax.set_ylabel("latency - bound (ms)")
    ax.legend()

    fig.tight_layout()
    if args.save:
        fig.savefig(args.save, dpi=120)
    else:
        plt.show()


if __name__ == "__main__":
    main()
