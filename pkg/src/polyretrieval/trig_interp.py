"""Trigonometric polynomials sampled at equispaced points of the unit circle.

A trigonometric polynomial of bandwidth ``n`` is ``sum_{k=-n}^{n} a_k z^k``
restricted to ``|z| = 1``. Coefficients are stored in a length ``2n+1``
array with ``a_k`` at position ``k + n``.

Inner products are normalized by ``1/(2 pi)``, so Parseval reads
``sum |c_k|^2 = mean of |f|^2 over the nodes``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._numeric import COMPLEX, PI, REAL
from .polynomial import unit_circle

_ON_CIRCLE_TOL = 1e-9


class ParsevalClampWarning(RuntimeWarning):
    """Noisy samples produced a negative mean; the norm was clamped to 0."""


@dataclass(frozen=True)
class TrigPoly:
    coeffs: np.ndarray
    real_valued: bool = False

    def __post_init__(self):
        a = np.array(self.coeffs, dtype=COMPLEX).reshape(-1)
        if a.size % 2 != 1:
            raise ValueError("a trigonometric polynomial needs 2n+1 coefficients")
        if self.real_valued:
            a = 0.5 * (a + np.conj(a[::-1]))
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    @property
    def bandwidth(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, k: int) -> complex:
        n = self.bandwidth
        if abs(k) > n:
            return COMPLEX(0)
        return self.coeffs[k + n]

    def __call__(self, z):
        return eval_trig(self, z)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        n = max(self.bandwidth, other.bandwidth)
        return TrigPoly(
            widen(self, n).coeffs + widen(other, n).coeffs,
            real_valued=self.real_valued and other.real_valued,
        )

    def scale(self, c) -> "TrigPoly":
        real = self.real_valued and np.isreal(c)
        return TrigPoly(self.coeffs * c, real_valued=bool(real))

    def conj_arg(self) -> "TrigPoly":
        """The trigonometric polynomial ``z -> t(conj(z))`` (index reversal)."""
        return TrigPoly(self.coeffs[::-1], real_valued=self.real_valued)


def widen(t: TrigPoly, n: int) -> TrigPoly:
    """Zero-pad ``t`` to bandwidth ``n``."""
    if n < t.bandwidth:
        raise ValueError("cannot narrow a trigonometric polynomial")
    extra = n - t.bandwidth
    return TrigPoly(np.pad(t.coeffs, extra), real_valued=t.real_valued)


def _check_on_circle(z):
    if np.any(np.abs(np.abs(z) - 1) > _ON_CIRCLE_TOL):
        raise ValueError("evaluation point is not on the unit circle")


def dirichlet_kernel(n: int, z):
    """Normalized Dirichlet kernel ``(1/(2n+1)) sum_{j=-n}^{n} z^j``.

    Real on the unit circle; the real part is returned.
    """
    z = np.asarray(z, dtype=COMPLEX)
    _check_on_circle(z)
    j = np.arange(-n, n + 1)
    vals = np.power.outer(z, j).sum(axis=-1) / (2 * n + 1)
    return vals.real[()] if vals.ndim == 0 else vals.real


def interpolate(samples, n: int | None = None) -> TrigPoly:
    """Bandwidth-``n`` trigonometric interpolant of values at ``omega**l``.

    ``samples[l]`` is the value at ``exp(2 pi i l / (2n+1))``. Coefficients
    come from the direct discrete Fourier sum
    ``a_k = (1/(2n+1)) sum_l samples[l] omega^(-k l)``.
    Real input yields a conjugate-symmetric (real-valued) result.
    """
    s = np.asarray(samples)
    if s.ndim != 1:
        raise ValueError("samples must be one-dimensional")
    if n is None:
        if s.size % 2 != 1:
            raise ValueError(f"need an odd number of samples, got {s.size}")
        n = (s.size - 1) // 2
    if s.size != 2 * n + 1:
        raise ValueError(f"expected {2 * n + 1} samples for bandwidth {n}, got {s.size}")
    N = 2 * n + 1
    k = np.arange(-n, n + 1)
    l = np.arange(N)
    # reduce k*l mod N before forming the angle to keep phases exact
    theta = 2 * PI * (np.outer(k, l) % N).astype(REAL) / N
    phase = (np.cos(theta) - 1j * np.sin(theta)).astype(COMPLEX)
    a = phase @ s.astype(COMPLEX) / N
    return TrigPoly(a, real_valued=bool(np.isrealobj(s)))


def eval_trig(t: TrigPoly, z):
    """Evaluate ``sum_k a_k z^k`` at points of the unit circle."""
    z = np.asarray(z, dtype=COMPLEX)
    _check_on_circle(z)
    n = t.bandwidth
    # Horner on z^n * t(z), then divide by z^n (= multiply by conj(z)^n)
    acc = np.full(z.shape, t.coeffs[-1], dtype=COMPLEX)
    for c in t.coeffs[-2::-1]:
        acc = acc * z + c
    out = acc * np.conj(z) ** n
    if t.real_valued:
        out = out.real.astype(COMPLEX)
    return out[()] if out.ndim == 0 else out


def nodes(n: int) -> np.ndarray:
    """The ``2n+1`` interpolation nodes ``omega**l``."""
    return unit_circle(2 * n + 1)


def parseval_norm(samples):
    """l2 coefficient norm of ``f`` from samples of ``|f|^2`` at equispaced nodes."""
    mean = np.mean(np.asarray(samples, dtype=REAL))
    if mean < 0:
        warnings.warn(
            f"mean of |f|^2 samples is negative ({float(mean):.3g}); clamping norm to 0",
            ParsevalClampWarning,
            stacklevel=2,
        )
        return REAL(0)
    return np.sqrt(mean)
