#!/usr/bin/env python3
"""Plot the output directory of `lvfb simulate` or `lvfb sweep`."""

import argparse
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def plot_simulate(out: pathlib.Path, dest: pathlib.Path) -> None:
    traj = np.genfromtxt(out / "trajectory.csv", delimiter=",", names=True)
    snaps = sorted(out.glob("snapshot_t*.csv"), key=lambda p: float(p.stem[len("snapshot_t"):]))

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].plot(traj["t"], traj["h"], label="h(t)")
    axes[0].plot(traj["t"], traj["sup_u"], label="sup u")
    axes[0].set_xlabel("t")
    axes[0].legend()

    for path in snaps:
        s = np.genfromtxt(path, delimiter=",", names=True)
        t = path.stem[len("snapshot_t"):]
        (line,) = axes[1].plot(s["r"], s["u"], label=f"u, t={t}")
        axes[1].plot(s["r"], s["v"], "--", color=line.get_color())
    axes[1].set_xlabel("r")
    if snaps:
        axes[1].legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(dest)


def plot_sweep(out: pathlib.Path, dest: pathlib.Path) -> None:
    with open(out / "phase_matrix.dat") as f:
        header = f.readline()
        data = np.loadtxt(f)
    data = np.atleast_2d(data)
    x = data[0, 1:]
    y = data[1:, 0]
    z = data[1:, 1:]
    fig, ax = plt.subplots(figsize=(5, 4))
    mesh = ax.pcolormesh(x, y, z, shading="nearest", vmin=0, vmax=1, cmap="coolwarm")
    fig.colorbar(mesh, ax=ax, label="0 vanishing, 1 spreading")
    ax.set_title(header.lstrip("# ").split(";")[0])
    fig.tight_layout()
    fig.savefig(dest)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=pathlib.Path, help="run directory")
    ap.add_argument("-o", "--output", type=pathlib.Path, default=None)
    args = ap.parse_args()
    dest = args.output or args.out / "plot.png"
    if (args.out / "phase_matrix.dat").exists():
        plot_sweep(args.out, dest)
    else:
        plot_simulate(args.out, dest)
    print(dest)


if __name__ == "__main__":
    main()
