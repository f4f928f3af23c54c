"""Forward magnitude measurements.

Two designs are provided:

* the stable ``8d-4`` design: ``|f|^2`` at the ``2d-1`` roots of unity plus
  ``|f + nu^j f'|^2`` at the same nodes for the three cube roots of unity
  ``nu^j``;
* the ``4d-4`` injectivity design: ``2d-1`` equispaced points on the circle
  ``S_alpha`` (image of the real line under a Moebius map) together with
  the roots of unity ``omega_l``, ``l = 2..2d-2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _numeric
from ._numeric import COMPLEX, PI, REAL
from .polynomial import Poly, derivative, evaluate, pad, unit_circle
from .trig_interp import TrigPoly, interpolate

NU = unit_circle(3)[1]


class InvalidDesignError(ValueError):
    pass


class NoiseDistribution(str, enum.Enum):
    UNIFORM_SYMMETRIC = "uniform_symmetric"
    ADVERSARIAL_SIGN = "adversarial_sign"


@dataclass(frozen=True)
class NoiseSpec:
    """Bounded additive noise, ``|eps| <= epsilon`` per measured value."""

    epsilon: float = 0.0
    seed: int = 0
    distribution: NoiseDistribution = NoiseDistribution.UNIFORM_SYMMETRIC

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be nonnegative")
        object.__setattr__(self, "distribution", NoiseDistribution(self.distribution))

    def draw(self, shape, rng: np.random.Generator | None = None) -> np.ndarray:
        rng = np.random.default_rng(self.seed) if rng is None else rng
        if self.distribution is NoiseDistribution.ADVERSARIAL_SIGN:
            return self.epsilon * rng.choice([-1.0, 1.0], size=shape)
        return rng.uniform(-self.epsilon, self.epsilon, size=shape)


@dataclass
class MeasurementSet:
    """The ``8d-4`` noisy magnitudes.

    ``base[l]`` ~ |f(omega^l)|^2 and ``shifted[j-1][l]`` ~
    |f(omega^l) + nu^j f'(omega^l)|^2 for j = 1, 2, 3.
    """

    d: int
    base: np.ndarray
    shifted: np.ndarray
    epsilon_claimed: float = 0.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.base = np.asarray(self.base, dtype=REAL)
        self.shifted = np.asarray(self.shifted, dtype=REAL)
        n = 2 * self.d - 1
        if self.base.shape != (n,) or self.shifted.shape != (3, n):
            raise ValueError(
                f"expected base ({n},) and shifted (3, {n}); got "
                f"{self.base.shape} and {self.shifted.shape}"
            )

    @property
    def count(self) -> int:
        return self.base.size + self.shifted.size

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "base": list(self.base),
            "shifted": [list(row) for row in self.shifted],
            "epsilon_claimed": float(self.epsilon_claimed),
        }
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, data: dict) -> "MeasurementSet":
        return cls(
            d=int(data["d"]),
            base=data["base"],
            shifted=data["shifted"],
            epsilon_claimed=float(data.get("epsilon_claimed", 0.0)),
            meta=dict(data.get("meta", {})),
        )

    def save(self, path):
        _numeric.dump(self.to_json(), path)

    @classmethod
    def load(cls, path) -> "MeasurementSet":
        return cls.from_json(_numeric.load(path))


def measure(f: Poly, noise: NoiseSpec = NoiseSpec()) -> MeasurementSet:
    d = f.degree_bound
    z = unit_circle(2 * d - 1)
    fz = evaluate(f, z)
    dfz = evaluate(derivative(f), z)
    base = np.abs(fz) ** 2
    shifted = np.stack([np.abs(fz + NU**j * dfz) ** 2 for j in (1, 2, 3)])
    if noise.epsilon > 0:
        eps = noise.draw((4, 2 * d - 1))
        base = base + eps[0]
        shifted = shifted + eps[1:]
    return MeasurementSet(d=d, base=base, shifted=shifted, epsilon_claimed=noise.epsilon)


def polarize(ms: MeasurementSet) -> tuple[TrigPoly, TrigPoly]:
    """Interpolate the data and recombine into ``(~|f|^2, ~f' conj(f))``."""
    n = ms.d - 1
    G0 = interpolate(ms.base, n)
    acc = np.zeros(2 * n + 1, dtype=COMPLEX)
    for j in (1, 2, 3):
        acc += np.conj(NU) ** j * interpolate(ms.shifted[j - 1], n).coeffs
    return G0, TrigPoly(acc / 3)


@dataclass(frozen=True)
class InjectivityDesign:
    d: int
    alpha: float
    points_s_alpha: np.ndarray
    points_s: np.ndarray
    center: complex
    radius: float

    @property
    def points(self) -> np.ndarray:
        return np.concatenate([self.points_s_alpha, self.points_s])

    def to_json(self) -> dict:
        def pairs(a):
            return [[z.real, z.imag] for z in a]

        return {
            "d": self.d,
            "alpha": self.alpha,
            "center": [self.center.real, self.center.imag],
            "radius": self.radius,
            "points_s_alpha": pairs(self.points_s_alpha),
            "points_s": pairs(self.points_s),
        }


def moebius_phi(alpha: float, omega: complex, z):
    """``phi_alpha(z) = (e^{i alpha} z - omega) / (e^{i alpha} z - 1)``."""
    e = COMPLEX(np.cos(REAL(alpha)) + 1j * np.sin(REAL(alpha)))
    z = np.asarray(z, dtype=COMPLEX)
    return (e * z - omega) / (e * z - 1)


def _circumcircle(a, b, c):
    # |z - center|^2 equal at a, b, c: two real linear equations, solved by Cramer
    u, v = b - a, c - a
    det = u.real * v.imag - u.imag * v.real
    if abs(det) < 1e-12 * max(1.0, abs(u) * abs(v)):
        raise InvalidDesignError("the three image points are collinear")
    r1 = (abs(b) ** 2 - abs(a) ** 2) / 2
    r2 = (abs(c) ** 2 - abs(a) ** 2) / 2
    x = (r1 * v.imag - r2 * u.imag) / det
    y = (u.real * r2 - v.real * r1) / det
    center = COMPLEX(x + 1j * y)
    return center, abs(a - center)


def design_4d4(d: int, alpha: float = 1.0) -> InjectivityDesign:
    """Sample points of the ``4d-4`` injectivity design.

    ``S_alpha`` is the circle through ``phi_alpha(0) = omega``,
    ``phi_alpha(1)`` and ``phi_alpha(-1)``; it also contains
    ``phi_alpha(inf) = 1``. Its ``2d-1`` points start at angle 0 measured
    from the center.
    """
    if d < 2:
        raise ValueError("the injectivity design needs d >= 2")
    # phi_alpha maps the real line to a line exactly when its pole is real
    if abs(np.sin(alpha)) < 1e-6:
        raise InvalidDesignError(f"alpha={alpha} is a multiple of pi; S_alpha degenerates")
    N = 2 * d - 1
    omega = unit_circle(N)[1]
    a, b, c = moebius_phi(alpha, omega, [0.0, 1.0, -1.0])
    center, radius = _circumcircle(a, b, c)
    pts_alpha = center + radius * unit_circle(N)
    pts_s = unit_circle(N)[2:]
    return InjectivityDesign(
        d=d,
        alpha=float(alpha),
        points_s_alpha=pts_alpha,
        points_s=pts_s,
        center=center,
        radius=radius,
    )


def measure_4d4(
    f: Poly, design: InjectivityDesign, noise: NoiseSpec = NoiseSpec()
) -> np.ndarray:
    if f.degree_bound != design.d:
        raise ValueError("polynomial degree bound does not match the design")
    vals = np.abs(evaluate(f, design.points)) ** 2
    if noise.epsilon > 0:
        vals = vals + noise.draw(vals.shape)
    return vals


def cayley_transform(f: Poly, k: int | None = None) -> Poly:
    """Expand ``(1+z)^(k-1) f(-(1-z)/(1+z))`` into ``k`` coefficients."""
    k = f.degree_bound if k is None else k
    if f.degree_bound > k:
        raise ValueError("k must be at least the degree bound of f")
    c = pad(f, k).coeffs
    out = np.zeros(k, dtype=COMPLEX)
    for j, cj in enumerate(c):
        if cj == 0:
            continue
        # (-1)^j (1-z)^j (1+z)^(k-1-j)
        term = np.ones(1, dtype=REAL)
        for _ in range(j):
            term = np.convolve(term, np.array([1, -1], dtype=REAL))
        for _ in range(k - 1 - j):
            term = np.convolve(term, np.array([1, 1], dtype=REAL))
        out += (-1) ** j * cj * term
    return Poly(out)
