"""Reconstruction error versus noise level for a few random d=6 signals.

Writes one CSV per signal plus a log-log plot of median error against
epsilon/epsilon0 (skipped if matplotlib is missing).

    python scripts/run_noise_sweep.py --signals 4 --out results/
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from polyretrieval.experiments import (
    SignalSpec,
    emit_csv,
    gen_signal,
    log_grid,
    loglog_slope,
    median_errors,
    noise_sweep,
    signal_bounds,
)


@dataclass
class SweepConfig:
    degree: int = 6
    signals: int = 4
    points: int = 12
    trials: int = 50
    span: float = 50.0
    seed: int = 0
    out: Path = Path("results")


def parse_args() -> SweepConfig:
    cfg = SweepConfig()
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, value in vars(cfg).items():
        p.add_argument(f"--{name}", type=type(value), default=value)
    return SweepConfig(**vars(p.parse_args()))


def main():
    cfg = parse_args()
    cfg.out.mkdir(parents=True, exist_ok=True)
    curves = []
    for s in range(cfg.signals):
        spec = SignalSpec(cfg.degree, seed=cfg.seed + s)
        eps0 = float(signal_bounds(gen_signal(spec)[0]).epsilon0)
        rows = noise_sweep(spec, log_grid(eps0, cfg.span * eps0, cfg.points), cfg.trials)
        emit_csv(rows, cfg.out / f"sweep_d{cfg.degree}_seed{spec.seed}.csv")
        eps, med = median_errors(rows)
        slope = loglog_slope(rows)
        curves.append((spec.seed, eps / eps0, med, slope))
        print(f"seed {spec.seed}: eps0 = {eps0:.3e}, slope = {slope:.3f}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed, skipping plot")
        return
    fig, ax = plt.subplots(figsize=(5, 4))
    for seed, x, y, slope in curves:
        ax.loglog(x, y, "o-", ms=3, label=f"seed {seed} (slope {slope:.2f})")
    x = np.array([1.0, cfg.span])
    ax.loglog(x, curves[0][2][0] * x, "k--", lw=0.8, label="slope 1")
    ax.set_xlabel(r"$\epsilon / \epsilon_0$")
    ax.set_ylabel("median coefficient error")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(cfg.out / "noise_sweep.png", dpi=150)
    print(f"plot written to {cfg.out / 'noise_sweep.png'}")


if __name__ == "__main__":
    main()
