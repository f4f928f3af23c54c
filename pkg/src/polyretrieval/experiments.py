"""Randomized experiments: noise sweeps and injectivity trials."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._numeric import REAL
from .measurements import (
    NoiseDistribution,
    NoiseSpec,
    design_4d4,
    measure,
    measure_4d4,
    polarize,
)
from .polynomial import Poly, RootSet, circle_extrema, error_up_to_phase, from_roots
from .recovery import (
    RecoveryConfig,
    RecoveryError,
    StabilityBounds,
    inner_power_sums,
    outer_power_sums,
    recover,
    stability_bounds,
)

CSV_FIELDS = (
    "epsilon",
    "trial",
    "coeff_err",
    "moment_err_max",
    "gamma_bound",
    "n0_correct",
    "epsilon_over_eps0",
)
COLLISION_TOL = 1e-8


@dataclass(frozen=True)
class SignalSpec:
    d: int
    annulus_gap: float = 0.2
    root_radius_max: float = 3.0
    seed: int = 0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if not 0 < self.annulus_gap < 1:
            raise ValueError("annulus_gap must lie in (0, 1)")


@dataclass
class SweepRow:
    epsilon: float
    trial: int
    coeff_err: float
    moment_err_max: float
    gamma_bound: float
    n0_correct: bool
    epsilon_over_eps0: float
    error: str | None = None  # not written to CSV

    @property
    def failed(self) -> bool:
        return self.error is not None


def _radius_sample(rng: np.random.Generator, spec: SignalSpec, size: int) -> np.ndarray:
    # uniform on [0, 1-gap] U [1+gap, rmax], weighted by length
    lo = min(1 - spec.annulus_gap, spec.root_radius_max)
    hi_start = 1 + spec.annulus_gap
    hi_len = max(spec.root_radius_max - hi_start, 0.0)
    u = rng.uniform(0, lo + hi_len, size=size)
    return np.where(u < lo, u, hi_start + (u - lo))


def gen_signal(spec: SignalSpec) -> tuple[Poly, RootSet]:
    """Random polynomial with ``d-1`` roots kept away from the unit circle."""
    rng = np.random.default_rng(spec.seed)
    n = spec.d - 1
    radius = _radius_sample(rng, spec, n)
    angle = rng.uniform(0, 2 * np.pi, size=n)
    leading = np.exp(1j * rng.uniform(0, 2 * np.pi))
    rs = RootSet(radius * np.exp(1j * angle), leading)
    return from_roots(rs), rs


def signal_bounds(f: Poly, grid: int | None = None) -> StabilityBounds:
    grid = grid or max(8192, 64 * f.degree_bound)
    m, M, Mp = circle_extrema(f, grid)
    return stability_bounds(m, M, Mp, f.degree_bound)


def trial_seed(seed: int, *index: int) -> int:
    """Per-trial seed derived from a base seed and trial coordinates."""
    return int(np.random.SeedSequence([seed, *index]).generate_state(1, np.uint64)[0])


def power_sums(roots: np.ndarray, kmax: int) -> np.ndarray:
    roots = np.asarray(roots, dtype=np.clongdouble)
    return np.array([np.sum(roots**k) for k in range(kmax + 1)])


def reversal_inner_roots(rs: RootSet, d: int) -> np.ndarray:
    """Inner roots of ``z^(d-1) f(1/z)``: reciprocals of the outer roots of
    ``f`` plus ``d-1-deg f`` zeros."""
    outer = rs.outer()
    zeros = np.zeros(d - 1 - len(rs.roots))
    return np.concatenate([1 / outer, zeros])


def log_grid(lo: float, hi: float, points: int) -> np.ndarray:
    return np.geomspace(lo, hi, points)


def noise_sweep(
    spec: SignalSpec,
    eps_grid: Sequence[float],
    trials: int,
    distribution: NoiseDistribution | str = NoiseDistribution.UNIFORM_SYMMETRIC,
    cfg: RecoveryConfig | None = None,
    signal: tuple[Poly, RootSet] | None = None,
) -> list[SweepRow]:
    """Recover one random signal under repeated random perturbations.

    Rows are ordered by (epsilon index, trial). Recovery failures are kept
    as rows with ``coeff_err = inf`` and ``n0_correct = False``.
    """
    eps_grid = [float(e) for e in eps_grid]
    if any(e < 0 for e in eps_grid) or any(b < a for a, b in zip(eps_grid, eps_grid[1:])):
        raise ValueError("eps_grid must be nonnegative and ascending")
    cfg = cfg or RecoveryConfig()
    f, rs = signal if signal is not None else gen_signal(spec)
    d = f.degree_bound
    bounds = signal_bounds(f)
    inner = rs.inner()
    g_inner = reversal_inner_roots(rs, d)
    mu_f = power_sums(inner, len(inner))
    mu_g = power_sums(g_inner, len(g_inner))

    rows = []
    for i, eps in enumerate(eps_grid):
        eps_fn = (2 * d - 1) * eps  # sup-norm bound after interpolation
        gamma = max(bounds.gamma_of(eps_fn), bounds.gamma_outer_of(d * eps_fn))
        for t in range(trials):
            noise = NoiseSpec(eps, trial_seed(spec.seed, i, t), distribution)
            ms = measure(f, noise)
            rows.append(
                _sweep_trial(ms, f, d, mu_f, mu_g, bounds, eps, t, gamma, len(inner), cfg)
            )
    return rows


def _sweep_trial(ms, f, d, mu_f, mu_g, bounds, eps, t, gamma, n_inner, cfg) -> SweepRow:
    G0, G1 = polarize(ms)
    try:
        if d == 1:
            moment_err = 0.0
        else:
            mi = inner_power_sums(G1, G0, len(mu_f) - 1, cfg)[0]
            mo = outer_power_sums(G1, G0, d, len(mu_g) - 1, cfg)[0]
            moment_err = float(max(np.max(np.abs(mi - mu_f)), np.max(np.abs(mo - mu_g))))
    except RecoveryError:
        moment_err = math.inf
    try:
        rec = recover(ms, cfg)
    except RecoveryError as exc:
        return SweepRow(eps, t, math.inf, moment_err, gamma, False, eps / bounds.epsilon0, str(exc))
    err = error_up_to_phase(f, rec.coeffs)[1]
    ok = rec.n_inner == n_inner and rec.n_outer == d - 1 - n_inner
    return SweepRow(eps, t, err, moment_err, gamma, ok, eps / bounds.epsilon0)


def median_errors(rows: Iterable[SweepRow]) -> tuple[np.ndarray, np.ndarray]:
    """Distinct epsilons and the median ``coeff_err`` at each (failures count as inf)."""
    by_eps: dict[float, list[float]] = {}
    for r in rows:
        by_eps.setdefault(r.epsilon, []).append(r.coeff_err)
    eps = np.array(sorted(by_eps))
    med = np.array([np.median(by_eps[e]) for e in eps])
    return eps, med


def loglog_slope(rows: Iterable[SweepRow], lo: float = 0.0, hi: float = math.inf) -> float:
    """Least-squares slope of log(median error) against log(epsilon) on [lo, hi]."""
    eps, med = median_errors(rows)
    keep = (eps > 0) & (eps >= lo) & (eps <= hi) & np.isfinite(med) & (med > 0)
    if keep.sum() < 2:
        raise ValueError("need at least two finite positive medians to fit a slope")
    slope, _ = np.polyfit(np.log(eps[keep]), np.log(med[keep]), 1)
    return float(slope)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _row_text(r: SweepRow) -> list[str]:
    return [
        _fmt(r.epsilon),
        str(int(r.trial)),
        _fmt(r.coeff_err),
        _fmt(r.moment_err_max),
        _fmt(r.gamma_bound),
        "true" if r.n0_correct else "false",
        _fmt(r.epsilon_over_eps0),
    ]


def emit_csv(rows: Iterable[SweepRow], destination) -> None:
    """Write rows as CSV to a path or an open text stream."""
    if isinstance(destination, io.TextIOBase) or hasattr(destination, "write"):
        _write_csv(rows, destination)
        return
    with open(destination, "w", newline="") as fh:
        _write_csv(rows, fh)


def _write_csv(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow(_row_text(r))


def read_csv(source) -> list[SweepRow]:
    if hasattr(source, "read"):
        return _read_csv(source)
    with open(source, newline="") as fh:
        return _read_csv(fh)


def _read_csv(fh) -> list[SweepRow]:
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [
        SweepRow(
            epsilon=float(rec["epsilon"]),
            trial=int(rec["trial"]),
            coeff_err=float(rec["coeff_err"]),
            moment_err_max=float(rec["moment_err_max"]),
            gamma_bound=float(rec["gamma_bound"]),
            n0_correct=rec["n0_correct"] == "true",
            epsilon_over_eps0=float(rec["epsilon_over_eps0"]),
        )
        for rec in reader
    ]


def random_poly(rng: np.random.Generator, d: int) -> Poly:
    return Poly(rng.standard_normal(d) + 1j * rng.standard_normal(d))


def measurement_separation(f: Poly, g: Poly, alpha: float = 1.0) -> float:
    """Sup-norm distance between the ``4d-4`` measurement vectors of f and g."""
    design = design_4d4(f.degree_bound, alpha)
    return float(np.max(np.abs(measure_4d4(f, design) - measure_4d4(g, design))))


def injectivity_trial(d: int, pairs: int, alpha: float = 1.0, seed: int = 0) -> dict:
    """Monte-Carlo check that the ``4d-4`` design separates non-equivalent pairs.

    Pairs are drawn with complex Gaussian coefficients and kept only if their
    phase-invariant coefficient distance exceeds 0.1.
    """
    if d < 2:
        raise ValueError("the injectivity design needs d >= 2")
    rng = np.random.default_rng(seed)
    design = design_4d4(d, alpha)
    min_sep = math.inf
    collisions = 0
    done = 0
    while done < pairs:
        f, g = random_poly(rng, d), random_poly(rng, d)
        if error_up_to_phase(f, g)[1] <= 0.1:
            continue
        sep = float(np.max(np.abs(measure_4d4(f, design) - measure_4d4(g, design))))
        min_sep = min(min_sep, sep)
        collisions += sep <= COLLISION_TOL
        done += 1
    return {
        "d": d,
        "pairs": pairs,
        "alpha": float(alpha),
        "seed": seed,
        "min_separation": min_sep,
        "collisions": int(collisions),
    }
