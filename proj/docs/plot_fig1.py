#!/usr/bin/env python3
"""Plot fidelity and Mandel Q from a protection-run CSV."""
import csv
import sys

import matplotlib.pyplot as plt


def main():
    if len(sys.argv) < 2:
        sys.exit("usage: plot_fig1.py <run.csv> [out.png]")
    tau, fid, q = [], [], []
    with open(sys.argv[1]) as f:
        for row in csv.DictReader(f):
            tau.append(float(row["tau"]))
            fid.append(float(row["fidelity"]))
            q.append(float(row["mandel_q"]))

    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
    ax1.semilogx(tau, fid)
    ax1.set_ylabel("fidelity")
    ax1.grid(alpha=0.3)
    ax2.semilogx(tau, q)
    ax2.set_ylabel("Mandel Q")
    ax2.set_xlabel(r"$\gamma t$")
    ax2.grid(alpha=0.3)
    fig.tight_layout()
    if len(sys.argv) > 2:
        fig.savefig(sys.argv[2], dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
