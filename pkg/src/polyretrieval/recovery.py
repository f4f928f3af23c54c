"""Reconstruction of a polynomial from the polarized magnitude data.

The pipeline:

1. ``G1 / G0`` approximates ``f'/f`` on the unit circle. Trapezoid
   quadrature of ``z^k f'/f`` gives the power sums of the roots inside the
   disk; ``round(mu_0)`` is their count.
2. Newton's identities turn the power sums into the monic inner factor.
3. The same procedure applied to the reversed polynomial
   ``g(z) = z^(d-1) f(1/z)`` yields the outer factor after coefficient
   reversal.
4. The product is rescaled to the l2 norm given by Parseval.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from math import comb
from typing import Callable

import numpy as np

from . import _numeric
from ._numeric import COMPLEX
from .measurements import MeasurementSet, polarize
from .polynomial import Poly, multiply, pad, poly_to_json, reverse, unit_circle
from .trig_interp import TrigPoly, eval_trig, parseval_norm

log = logging.getLogger(__name__)


class RecoveryError(RuntimeError):
    """Recovery failed for data-dependent reasons."""


class SignalTooSmallError(RecoveryError):
    """The perturbed ``|f|^2`` is not bounded away from zero on the circle."""


class AmbiguousRootCountError(RecoveryError):
    """``mu_0`` is too far from an integer to fix the inner root count."""


class DegenerateNormError(RecoveryError):
    pass


@dataclass
class RecoveryConfig:
    nodes: int | None = None  # starting quadrature size; None picks 8*(n + kmax)
    max_nodes: int = 2**20
    tol: float = 1e-10
    n0_threshold: float = 0.25
    m_floor: float = 1e-6


@dataclass
class MomentEstimate:
    mu: np.ndarray
    n0: int
    n0_residual: float
    nodes: int = 0
    converged: bool = True


@dataclass
class StabilityBounds:
    d: int
    m: float
    M: float
    Mp: float
    alpha: float
    beta: float
    epsilon0: float
    newton_constants: np.ndarray

    def gamma_of(self, eps: float) -> float:
        """Moment error bound for function-level perturbations of size ``eps``."""
        return eps * (1 + self.Mp / self.m) / ((1 - self.alpha) * self.m**2)

    def gamma_outer_of(self, eps: float) -> float:
        """Same bound for the reversed polynomial, whose derivative bound is
        ``(d-1)M + M'`` and whose stability fraction is ``beta``."""
        Mp_g = (self.d - 1) * self.M + self.Mp
        return eps * (1 + Mp_g / self.m) / ((1 - self.beta) * self.m**2)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "M": self.M,
            "Mp": self.Mp,
            "alpha": self.alpha,
            "beta": self.beta,
            "epsilon0": self.epsilon0,
            "newton_constants": self.newton_constants.tolist(),
        }


@dataclass
class RecoveredSignal:
    coeffs: Poly
    n_inner: int
    n_outer: int
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "coeffs": poly_to_json(self.coeffs),
            "n_inner": self.n_inner,
            "n_outer": self.n_outer,
            "diagnostics": self.diagnostics,
        }

    def save(self, path):
        _numeric.dump(self.to_json(), path)


def newton_error_constants(n0: int) -> np.ndarray:
    """Constants ``C_1..C_n0`` bounding ``|b~_{n0-k} - b_{n0-k}| <= C_k gamma``.

    Recursion ``C_k = (1/k) sum_{i=1}^k ((n0+1) C_{k-i} + binom(n0, k-i))``
    with ``C_0 = 0``.
    """
    C = [0.0]
    for k in range(1, n0 + 1):
        C.append(sum((n0 + 1) * C[k - i] + comb(n0, k - i) for i in range(1, k + 1)) / k)
    return np.array(C[1:])


def stability_bounds(m: float, M: float, Mp: float, d: int) -> StabilityBounds:
    if not m > 0:
        raise ValueError("m must be positive")
    if M < m:
        raise ValueError("need m <= M")
    alpha = 1 / (1 + 2 * (1 + Mp / m))
    beta = 1 / (1 + 2 * (1 + ((d - 1) * M + Mp) / m))
    eps0 = beta * m**2 / ((2 * d - 1) * d)
    C = newton_error_constants(d - 1) if d > 1 else np.zeros(0)
    return StabilityBounds(d, m, M, Mp, alpha, beta, eps0, C)


def _trapezoid_moments(values: np.ndarray, z: np.ndarray, kmax: int) -> np.ndarray:
    # (1/2 pi i) \oint z^k R dz = mean over nodes of z^(k+1) R(z)
    w = z * values
    mu = np.empty(kmax + 1, dtype=COMPLEX)
    for k in range(kmax + 1):
        mu[k] = w.mean()
        w = w * z
    return mu


def _quadrature(
    ratio: Callable[[np.ndarray], np.ndarray],
    kmax: int,
    start: int,
    cfg: RecoveryConfig,
) -> tuple[np.ndarray, int, bool]:
    n = max(start, 16)
    z = unit_circle(n)
    mu = _trapezoid_moments(ratio(z), z, kmax)
    converged = False
    while n < cfg.max_nodes:
        n *= 2
        z = unit_circle(n)
        new = _trapezoid_moments(ratio(z), z, kmax)
        delta = np.max(np.abs(new - mu))
        mu = new
        if delta < cfg.tol:
            converged = True
            break
    if not converged:
        log.warning("quadrature did not converge below %g with %d nodes", cfg.tol, n)
    return mu, n, converged


def _round_count(mu: np.ndarray, nodes: int, converged: bool, cfg: RecoveryConfig) -> MomentEstimate:
    n0 = int(np.rint(mu[0].real))
    resid = float(abs(mu[0] - n0))
    if n0 < 0 or resid >= cfg.n0_threshold:
        raise AmbiguousRootCountError(
            f"mu_0 = {complex(mu[0]):.6g} does not determine a root count "
            f"(residual {resid:.3g}, threshold {cfg.n0_threshold})"
        )
    return MomentEstimate(mu=mu, n0=n0, n0_residual=resid, nodes=nodes, converged=converged)


def _ratio_inner(G1: TrigPoly, G0: TrigPoly, cfg: RecoveryConfig):
    def ratio(z):
        den = eval_trig(G0, z).real
        _check_positive(den, cfg)
        return eval_trig(G1, z) / den

    return ratio


def _ratio_outer(G1: TrigPoly, G0: TrigPoly, d: int, cfg: RecoveryConfig):
    # |g(z)|^2 = |f(zb)|^2 and g'(z) conj(g(z)) = (d-1) zb |f(zb)|^2 - zb^2 f'(zb) conj(f(zb))
    def ratio(z):
        zb = np.conj(z)
        den = eval_trig(G0, zb).real
        _check_positive(den, cfg)
        num = (d - 1) * zb * den - zb**2 * eval_trig(G1, zb)
        return num / den

    return ratio


def _check_positive(den: np.ndarray, cfg: RecoveryConfig):
    lo, hi = den.min(), den.max()
    if lo <= 0 or lo <= cfg.m_floor**2 * hi:
        raise SignalTooSmallError(
            f"perturbed |f|^2 reaches {float(lo):.3g} on the circle (max {float(hi):.3g}); "
            "the magnitude is not bounded away from zero"
        )


def _start_nodes(G0: TrigPoly, kmax: int, cfg: RecoveryConfig) -> int:
    need = 8 * (G0.bandwidth + kmax)
    return max(cfg.nodes or need, need)


def moments_from_ratio(
    G1: TrigPoly,
    G0: TrigPoly,
    kmax: int,
    nodes: int | None = None,
    cfg: RecoveryConfig | None = None,
) -> MomentEstimate:
    """Power sums ``mu_0..mu_kmax`` of the roots inside the unit disk.

    ``mu_k = (1/2 pi i) \\oint z^k G1/G0 dz`` by the trapezoid rule, doubling
    the node count until successive estimates agree to ``cfg.tol``.
    """
    cfg = cfg or RecoveryConfig()
    if nodes is not None:
        cfg = replace(cfg, nodes=nodes)
    return _round_count(*inner_power_sums(G1, G0, kmax, cfg), cfg)


def outer_moments(
    G1: TrigPoly, G0: TrigPoly, d: int, kmax: int, cfg: RecoveryConfig | None = None
) -> MomentEstimate:
    """Power sums of the inner roots of ``z^(d-1) f(1/z)`` from data on ``f``."""
    cfg = cfg or RecoveryConfig()
    return _round_count(*outer_power_sums(G1, G0, d, kmax, cfg), cfg)


def inner_power_sums(G1: TrigPoly, G0: TrigPoly, kmax: int, cfg: RecoveryConfig | None = None):
    """Unrounded moment estimates ``(mu, nodes, converged)``."""
    cfg = cfg or RecoveryConfig()
    return _quadrature(_ratio_inner(G1, G0, cfg), kmax, _start_nodes(G0, kmax, cfg), cfg)


def outer_power_sums(
    G1: TrigPoly, G0: TrigPoly, d: int, kmax: int, cfg: RecoveryConfig | None = None
):
    cfg = cfg or RecoveryConfig()
    return _quadrature(_ratio_outer(G1, G0, d, cfg), kmax, _start_nodes(G0, kmax, cfg), cfg)


def newton_coeffs(mu: MomentEstimate) -> Poly:
    """Monic polynomial of degree ``n0`` with the given root power sums.

    ``b_{n0} = 1``, ``b_{n0-k} = -(1/k) sum_{l=1}^k mu_l b_{n0-k+l}``.
    """
    n0 = mu.n0
    if n0 > len(mu.mu) - 1:
        raise ValueError(f"need {n0 + 1} moments, got {len(mu.mu)}")
    b = np.zeros(n0 + 1, dtype=COMPLEX)
    b[n0] = 1.0
    for k in range(1, n0 + 1):
        s = sum(mu.mu[l] * b[n0 - k + l] for l in range(1, k + 1))
        b[n0 - k] = -s / k
    return Poly(b)


def _inner_estimate(G1, G0, cfg) -> MomentEstimate:
    # the root count can be at most the bandwidth of G0 (= d - 1)
    return moments_from_ratio(G1, G0, G0.bandwidth, cfg=cfg)


def _outer_estimate(G1, G0, d, cfg) -> MomentEstimate:
    return outer_moments(G1, G0, d, d - 1, cfg=cfg)


def recover_inner(G1: TrigPoly, G0: TrigPoly, cfg: RecoveryConfig | None = None) -> Poly:
    """Monic factor of ``f`` collecting its roots inside the unit disk."""
    return newton_coeffs(_inner_estimate(G1, G0, cfg or RecoveryConfig()))


def recover_outer(
    G1: TrigPoly,
    G0: TrigPoly,
    d: int,
    cfg: RecoveryConfig | None = None,
    n_inner: int | None = None,
) -> Poly:
    """Outer factor of ``f`` (roots outside the disk), up to a constant.

    Recovers the inner factor of ``g(z) = z^(d-1) f(1/z)`` and reverses its
    coefficients over length ``d - n_inner``.
    """
    cfg = cfg or RecoveryConfig()
    if n_inner is None:
        n_inner = _inner_estimate(G1, G0, cfg).n0
    gi = newton_coeffs(_outer_estimate(G1, G0, d, cfg))
    return _reverse_outer(gi, d, n_inner)


def _reverse_outer(gi: Poly, d: int, n_inner: int) -> Poly:
    length = d - n_inner
    if gi.degree_bound != length:
        raise AmbiguousRootCountError(
            f"inconsistent root counts: {n_inner} inner roots of f and "
            f"{gi.degree_bound - 1} inner roots of the reversal, expected "
            f"{d - 1} in total"
        )
    return reverse(gi, length)


def recover(ms: MeasurementSet, cfg: RecoveryConfig | None = None) -> RecoveredSignal:
    """Estimate ``f`` (up to a unimodular constant) from ``8d-4`` magnitudes."""
    cfg = cfg or RecoveryConfig()
    d = ms.d
    G0, G1 = polarize(ms)
    if d == 1:
        h = Poly([1.0])
        est_i = est_o = None
        n_inner = 0
    else:
        est_i = _inner_estimate(G1, G0, cfg)
        est_o = _outer_estimate(G1, G0, d, cfg)
        fi = newton_coeffs(est_i)
        fo = _reverse_outer(newton_coeffs(est_o), d, est_i.n0)
        n_inner = est_i.n0
        h = multiply(fo, fi)
    hn = np.sqrt(np.sum(np.abs(h.coeffs) ** 2))
    if hn == 0 or not np.isfinite(hn):
        raise DegenerateNormError("recovered product has zero or non-finite norm")
    norm = parseval_norm(ms.base)
    coeffs = Poly(pad(h, d).coeffs * (norm / hn))
    # the reversal also has d-1-deg(f) roots at 0, so n_inner + n_outer = d-1
    n_outer = est_o.n0 if est_o else 0
    diagnostics = {
        "norm": float(norm),
        "inner_nodes": est_i.nodes if est_i else 0,
        "outer_nodes": est_o.nodes if est_o else 0,
        "inner_n0_residual": est_i.n0_residual if est_i else 0.0,
        "outer_n0_residual": est_o.n0_residual if est_o else 0.0,
        "converged": bool((est_i is None or est_i.converged) and (est_o is None or est_o.converged)),
    }
    return RecoveredSignal(coeffs=coeffs, n_inner=n_inner, n_outer=n_outer, diagnostics=diagnostics)
