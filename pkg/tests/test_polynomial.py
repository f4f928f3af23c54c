import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyretrieval._numeric import dumps, loads
from polyretrieval.polynomial import (
    Poly,
    RootSet,
    circle_extrema,
    derivative,
    error_up_to_phase,
    evaluate,
    from_roots,
    multiply,
    poly_from_json,
    poly_to_json,
    reverse,
)

W = Poly([1, -2.5, 1])  # (z - 0.5)(z - 2)

unit_box = st.floats(-1, 1, allow_nan=False)
cplx = st.builds(complex, unit_box, unit_box)
coeff_lists = st.lists(cplx, min_size=1, max_size=8)


def close(p, q, tol=1e-12):
    return np.max(np.abs(np.asarray(p.coeffs) - np.asarray(q.coeffs))) <= tol


@pytest.mark.parametrize(
    "coeffs, z, expected",
    [([1], 5, 1), ([-0.5, 1], 0.5, 0), ([1, -2.5, 1], 1, -0.5)],
)
def test_eval_examples(coeffs, z, expected):
    assert evaluate(Poly(coeffs), z) == expected


def test_eval_vectorized_matches_scalar(rng):
    p = Poly(rng.standard_normal(6) + 1j * rng.standard_normal(6))
    z = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    vec = evaluate(p, z)
    assert vec.shape == (5,)
    for zi, vi in zip(z, vec):
        direct = sum(c * zi**k for k, c in enumerate(p.coeffs))
        assert abs(vi - direct) < 1e-12 * max(1, abs(direct))


@pytest.mark.parametrize(
    "coeffs, expected",
    [([1], [0]), ([1, 2], [2]), ([1, -2.5, 1], [-2.5, 2])],
)
def test_derivative_examples(coeffs, expected):
    assert derivative(Poly(coeffs)) == Poly(expected)


def test_multiply_examples():
    c = Poly([0.3 + 1j, -2])
    assert multiply(Poly([1]), c) == c
    assert multiply(Poly([-0.5, 1]), Poly([-2, 1])) == W
    assert multiply(Poly([1, -0.5]), Poly([-0.5, 1])) == Poly([-0.5, 1.25, -0.5])
    assert multiply(Poly([1, 2]), Poly([3, 4, 5])).degree_bound == 4


def test_reverse_examples():
    assert reverse(Poly([1, 2]), 2) == Poly([2, 1])
    assert reverse(W, 3) == W
    assert reverse(Poly([1, 2]), 4) == Poly([0, 0, 2, 1])
    with pytest.raises(ValueError):
        reverse(W, 2)


@pytest.mark.parametrize(
    "roots, expected",
    [([], [1]), ([0.5], [-0.5, 1]), ([0.5, -0.5], [-0.25, 0, 1])],
)
def test_from_roots_examples(roots, expected):
    assert close(from_roots(RootSet(roots, 1)), Poly(expected))


def test_from_roots_leading():
    p = from_roots(RootSet([2.0], 3j))
    assert close(p, Poly([-6j, 3j]))


def test_circle_extrema_examples():
    assert circle_extrema(Poly([1]), 64) == (1.0, 1.0, 0.0)
    m, M, Mp = circle_extrema(Poly([0, 1]), 64)
    assert m == pytest.approx(1) and M == pytest.approx(1) and Mp == pytest.approx(1)
    m, M, Mp = circle_extrema(W, 4096)
    assert m == pytest.approx(0.5, abs=1e-6)
    assert M == pytest.approx(4.5, abs=1e-12)
    # |f'(z)| = |2z - 2.5| peaks at z = -1
    assert Mp == pytest.approx(4.5, abs=1e-12)


def test_circle_extrema_grid_precondition():
    with pytest.raises(ValueError):
        circle_extrema(W, 16)


def test_error_up_to_phase_examples():
    c, err = error_up_to_phase(W, W)
    assert err == 0 and c == 1
    c, err = error_up_to_phase(W, 1j * W)
    assert err < 1e-12 and abs(c - 1j) < 1e-15
    c, err = error_up_to_phase(W, 2 * Poly([-0.5, 1.25, -0.5]))
    assert err < 1e-15 and abs(c + 1) < 1e-15


def test_error_up_to_phase_zero_inner_product():
    c, err = error_up_to_phase(Poly([1, 0]), Poly([0, 1]))
    assert c == 1 and err == 1


def test_error_up_to_phase_requires_equal_length():
    with pytest.raises(ValueError):
        error_up_to_phase(Poly([1]), Poly([1, 0]))


def test_json_roundtrip_is_exact(rng):
    p = from_roots(RootSet(rng.standard_normal(5) + 1j * rng.standard_normal(5), 1j))
    q = poly_from_json(loads(dumps(poly_to_json(p))))
    assert q == p


def test_json_accepts_bare_reals():
    assert poly_from_json([1, 2.5]) == Poly([1, 2.5])


# -- properties ---------------------------------------------------------------


@given(
    st.lists(
        st.tuples(st.floats(0, 3), st.floats(0, 2 * np.pi)), min_size=0, max_size=10
    ),
    st.floats(0.1, 3),
)
def test_from_roots_vanishes_at_roots(polar, lead):
    roots = [r * np.exp(1j * t) for r, t in polar]
    p = from_roots(RootSet(roots, lead))
    tol = 1e-9 * (1 + lead * 3 ** len(roots))
    for r in roots:
        assert abs(evaluate(p, r)) <= tol


@given(coeff_lists, coeff_lists, coeff_lists)
def test_multiply_commutative_associative(a, b, c):
    p, q, r = Poly(a), Poly(b), Poly(c)
    assert close(multiply(p, q), multiply(q, p))
    assert close(multiply(multiply(p, q), r), multiply(p, multiply(q, r)))


@given(coeff_lists, st.integers(0, 4))
def test_reverse_involution_exact(a, extra):
    p = Poly(a)
    d = p.degree_bound + extra
    padded = Poly(list(a) + [0] * extra)
    assert reverse(reverse(p, d), d) == padded


@given(coeff_lists, st.integers(0, 3), st.floats(0, 2 * np.pi))
def test_reverse_modulus_on_circle(a, extra, theta):
    p = Poly(a)
    d = p.degree_bound + extra
    z = np.exp(1j * theta)
    assert abs(abs(evaluate(reverse(p, d), z)) - abs(evaluate(p, np.conj(z)))) <= 1e-10


@given(coeff_lists, coeff_lists, st.floats(0, 2 * np.pi))
def test_error_metric_phase_invariance(a, b, theta):
    n = max(len(a), len(b))
    f = Poly(list(a) + [0] * (n - len(a)))
    g = Poly(list(b) + [0] * (n - len(b)))
    c = np.exp(1j * theta)
    assert error_up_to_phase(f, c * f)[1] <= 1e-12
    assert error_up_to_phase(f, g)[1] == pytest.approx(error_up_to_phase(f, c * g)[1], abs=1e-12)
