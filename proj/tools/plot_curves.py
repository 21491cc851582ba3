#!/usr/bin/env python3
"""Plot CSV output of `rsh-error-lab analyze` or `compare`.

usage: plot_curves.py results.csv [out.png]
"""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def to_float(text):
    if "/" in text:
        p, q = text.split("/")
        return int(p) / int(q)
    return float(text)


def main():
    src = sys.argv[1]
    dst = sys.argv[2] if len(sys.argv) > 2 else src.rsplit(".", 1)[0] + ".png"
    with open(src) as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    series = defaultdict(list)
    sim = defaultdict(list)
    for r in rows:
        key = (r["n"], r["method"], r["theorem_id"], r["bound_kind"])
        series[key].append((int(r["t"]), to_float(r["value"])))
        if "mean_error" in r:
            sim[r["n"]].append((int(r["t"]), float(r["mean_error"])))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (n, method, th, kind), pts in sorted(series.items()):
        pts.sort()
        label = f"n={n} {method} {th} {kind}".replace("  ", " ")
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=label)
    for n, pts in sorted(sim.items()):
        pts = sorted(set(pts))
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "k.", markersize=2, label=f"n={n} simulation")
    ax.set_xlabel("t")
    ax.set_ylabel("expected approximation error")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(dst, dpi=150)
    print(dst)


if __name__ == "__main__":
    main()
