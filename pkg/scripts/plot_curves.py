#!/usr/bin/env python3
"""Render the emitted CSV curves as PNGs (double-well potential, offset decay).

Usage: python scripts/plot_curves.py [artifact_dir]
Defaults to out/canonical; run scripts/run_canonical.py first.
"""

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        columns = [[] for _ in header]
        for row in reader:
            for col, cell in zip(columns, row):
                col.append(float(cell) if cell not in ("", "nan") else float("nan"))
    return header, columns


def main() -> int:
    art_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out") / "canonical"
    curve = art_dir / "potential_curve.csv"
    traj = art_dir / "kessence_trajectory.csv"
    if not curve.is_file():
        print(f"no artifacts in {art_dir}; run scripts/run_canonical.py first",
              file=sys.stderr)
        return 1

    _, (phi, v, _, _) = read_csv(curve)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(phi, v, lw=1.5)
    ax.set_xlabel(r"$\phi$ (Planck units)")
    ax.set_ylabel(r"$V(\phi)$")
    ax.set_title("tilted double-well potential")
    fig.tight_layout()
    fig.savefig(art_dir / "potential_curve.png", dpi=150)

    _, (t, eps, w, cs2, _) = read_csv(traj)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    ax1.semilogy(t, [abs(e) for e in eps], lw=1.5)
    ax1.set_ylabel(r"$|\varepsilon|$")
    ax2.plot(t, w, lw=1.5, label="w")
    ax2.plot(t, cs2, lw=1.5, label=r"$C_s^2$ (exact)")
    ax2.set_xlabel("t (Planck units)")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(art_dir / "kessence_trajectory.png", dpi=150)

    print(f"wrote potential_curve.png and kessence_trajectory.png to {art_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
