import numpy as np
import pytest

from irrlangevin.drift import J2, make_constant_drift, make_rotational_drift
from irrlangevin.errors import DimensionError, ParameterError
from irrlangevin.potentials import get_potential
from irrlangevin.ratefn import (
    GridDensity,
    circle_rate_closed_form,
    field_on_grid,
    grid_points,
    quadratic_coefficient,
    random_smooth_density,
    rate_irreversible,
    rate_reversible,
    solve_gauge_field,
    spectral_divergence,
    spectral_gradient,
)

TORUS = get_potential("torus-cosine", a=0.5, b=0.5)
CIRCLE_U0 = get_potential("torus-zero", dim=1)

# frozen from the N=256 grid oracle; the solve is spectrally exact, so the
# values agree across N in {64, 128, 256} to full precision
GOLDEN_SHIFTED_J = 0.014647169287286
GOLDEN_SHIFTED_I0 = 0.060791069526910


def cosine_density(size=256, amplitude=0.5):
    x = grid_points(size, 1)[:, 0]
    return GridDensity.from_values(1.0 + amplitude * np.cos(x))


def shifted_density(size=128):
    return GridDensity.from_potential(TORUS, 0.5, size, shift=(1.0, 0.0))


# ---------------------------------------------------------------------------
# grid density and spectral operators


def test_density_requires_positivity():
    with pytest.raises(ParameterError):
        GridDensity.from_values(np.array([1.0, 0.0, 2.0, 1.0]))
    with pytest.raises(ParameterError):
        GridDensity(np.array([0.5, 1.5, 0.5, 1.4]))  # mean != 1
    with pytest.raises(DimensionError):
        GridDensity(np.ones((4, 4, 4)))


def test_density_normalization():
    d = GridDensity.from_values(np.random.default_rng(0).uniform(0.5, 2.0, 64))
    assert d.values.mean() == pytest.approx(1.0, abs=1e-13)


def test_gibbs_density_matches_formula():
    d = GridDensity.from_potential(TORUS, 0.5, 64)
    pts = d.points()
    expected = np.exp(-TORUS.eval(pts) / 0.5)
    expected /= expected.mean()
    np.testing.assert_allclose(d.values, expected, rtol=1e-12)


def test_spectral_gradient_exact_for_modes():
    x = grid_points(64, 1)[:, 0]
    values = np.sin(3 * x) + 0.5 * np.cos(x)
    grad = spectral_gradient(values)[0]
    np.testing.assert_allclose(grad, 3 * np.cos(3 * x) - 0.5 * np.sin(x),
                               atol=1e-12)


def test_spectral_divergence_of_curl_vanishes():
    pts = grid_points(64, 2)
    x, y = pts[..., 0], pts[..., 1]
    stream = np.exp(np.cos(x) + 0.5 * np.sin(y))
    g = spectral_gradient(stream)
    curl = np.stack([g[1], -g[0]])
    assert np.max(np.abs(spectral_divergence(curl))) <= 1e-10


# ---------------------------------------------------------------------------
# gauge solver


def test_gauge_zero_drift_gives_zero_field():
    p = cosine_density(64)
    gauge = solve_gauge_field(p, np.zeros((1, 64)))
    assert np.max(np.abs(gauge.values)) == 0.0
    assert gauge.iterations == 0


def test_gauge_reversible_invariant_density():
    # b = -grad U with p ~ e^{-2U}: the gauge field equals U (mean-zero) and
    # the flux p(b + grad psi) vanishes identically
    p = GridDensity.from_potential(TORUS, 0.5, 64)
    pts = p.points()
    b = -np.moveaxis(TORUS.grad(pts), -1, 0)
    gauge = solve_gauge_field(p, b)
    expected = TORUS.eval(pts)
    expected = expected - expected.mean()
    np.testing.assert_allclose(gauge.values, expected, atol=1e-10)
    assert gauge.residual_rel <= 1e-10
    assert abs(gauge.values.mean()) <= 1e-12


def test_gauge_circle_constant_drift_first_integral():
    # div[p (delta + psi')] = 0 on the circle forces a constant flux
    # p (delta + psi') = delta / mean(1/p)
    p = cosine_density(256)
    delta = 1.5
    gauge = solve_gauge_field(p, np.full((1, 256), delta))
    flux = p.values * (delta + spectral_gradient(gauge.values)[0])
    assert np.max(np.abs(flux - flux.mean())) <= 1e-8
    expected_flux = delta / np.mean(1.0 / p.values)
    assert flux.mean() == pytest.approx(expected_flux, rel=1e-12)


def test_gauge_rejects_shape_mismatch():
    p = cosine_density(64)
    with pytest.raises(DimensionError):
        solve_gauge_field(p, np.zeros((2, 64)))


# ---------------------------------------------------------------------------
# reversible rate


def test_rate_reversible_vanishes_at_invariant_density():
    p = GridDensity.from_potential(TORUS, 0.5, 64)
    assert rate_reversible(p, TORUS, 0.5) <= 1e-8


def test_rate_reversible_circle_closed_form():
    # (1/8) mean(p'^2 / p) = (1 - sqrt(1 - a^2)) / 8 for p = 1 + a cos x
    p = cosine_density(512)
    value = rate_reversible(p, CIRCLE_U0, 0.5)
    expected = (1.0 - np.sqrt(1.0 - 0.25)) / 8.0
    assert value == pytest.approx(expected, abs=1e-10)
    assert value == pytest.approx(0.0167468, abs=1e-7)


def test_rate_reversible_uniform_flat():
    p = GridDensity.uniform(64, 2)
    flat = get_potential("torus-zero", dim=2)
    assert rate_reversible(p, flat, 0.5) == 0.0


# ---------------------------------------------------------------------------
# circle example: closed form vs PDE route


def test_circle_closed_form_uniform_density():
    assert circle_rate_closed_form(GridDensity.uniform(128), 3.0) == \
        pytest.approx(0.0, abs=1e-14)


def test_circle_closed_form_reference_value():
    assert circle_rate_closed_form(cosine_density(512), 1.0) == \
        pytest.approx(0.0837341, abs=1e-6)


def test_circle_closed_form_matches_gauge_solve():
    p = cosine_density(512)
    drift = make_constant_drift([1.0], 1.0)
    report = rate_irreversible(p, CIRCLE_U0, drift, 0.5, compute_quadratic=True)
    assert report.i_c == pytest.approx(circle_rate_closed_form(p, 1.0), abs=1e-6)
    # quadratic coefficient: (1/2)(1 - sqrt(1 - a^2))
    assert report.k == pytest.approx(0.0669873, abs=1e-6)
    assert report.i0 == pytest.approx(0.0167468, abs=1e-6)


def test_quadratic_coefficient_circle_closed_form():
    p = cosine_density(256)
    k = quadratic_coefficient(p, make_constant_drift([1.0], 1.0), 0.5)
    assert k == pytest.approx(0.5 * (1.0 - np.sqrt(0.75)), abs=1e-9)


# ---------------------------------------------------------------------------
# irreversible rate on the 2-torus


def test_invariant_density_rate_zero_for_all_deltas():
    p = GridDensity.from_potential(TORUS, 0.5, 64)
    for delta in (0.0, 1.0, 10.0):
        drift = make_rotational_drift(J2, TORUS, delta)
        report = rate_irreversible(p, TORUS, drift, 0.5)
        assert report.i_c <= 1e-8, delta


def test_degenerate_density_function_of_potential():
    # p = h(U) with C0 = J grad U satisfies div(p C0) = 0: no rate increase
    p = GridDensity.from_potential(TORUS, 0.25, 64)  # h(U) = exp(-4U)
    drift = make_rotational_drift(J2, TORUS, 1.0)
    report = rate_irreversible(p, TORUS, drift, 0.5, compute_quadratic=True)
    assert report.j_c <= 1e-8
    assert report.k <= 1e-8
    assert report.i0 > 1e-3  # the density is far from invariant


def test_shifted_density_strictly_positive_increment():
    report = rate_irreversible(shifted_density(128), TORUS,
                               make_rotational_drift(J2, TORUS, 1.0), 0.5)
    assert report.j_c > 1e-4
    assert report.j_c == pytest.approx(GOLDEN_SHIFTED_J, abs=1e-9)
    assert report.i0 == pytest.approx(GOLDEN_SHIFTED_I0, abs=1e-9)


def test_shifted_density_golden_value_grid_independent():
    values = []
    for size in (64, 128, 256):
        report = rate_irreversible(shifted_density(size), TORUS,
                                   make_rotational_drift(J2, TORUS, 1.0), 0.5)
        values.append(report.j_c)
    assert np.max(np.abs(np.diff(values))) <= 1e-11
    assert values[-1] == pytest.approx(GOLDEN_SHIFTED_J, abs=1e-10)


def test_quadratic_law_in_delta():
    p = shifted_density(128)
    k = quadratic_coefficient(p, make_rotational_drift(J2, TORUS, 1.0), 0.5)
    for delta in (0.5, 1.0, 2.0, 4.0):
        drift = make_rotational_drift(J2, TORUS, delta)
        report = rate_irreversible(p, TORUS, drift, 0.5)
        assert report.j_c / delta**2 == pytest.approx(k, rel=1e-6), delta


def test_lemma_decomposition_consistency():
    p = shifted_density(64)
    for delta in (0.0, 1.0, 3.0):
        drift = make_rotational_drift(J2, TORUS, delta)
        report = rate_irreversible(p, TORUS, drift, 0.5)
        assert report.lemma_mismatch <= 1e-8, delta


def test_monotone_increase_random_densities():
    drift = make_rotational_drift(J2, TORUS, 1.0)
    pts = grid_points(64, 2)
    c = field_on_grid(drift, 64, 2)
    for seed in range(50):
        p = random_smooth_density(64, dims=2, seed=seed, amplitude=0.6)
        report = rate_irreversible(p, TORUS, drift, 0.5)
        assert report.j_c >= 0.0
        div_pc = spectral_divergence(p.values * c)
        if np.max(np.abs(div_pc)) > 1e-4:
            assert report.j_c > 1e-8, seed


def test_rate_nonnegative_and_ordered():
    # I_C >= I_0 pointwise (rate increase under irreversibility)
    p = random_smooth_density(64, dims=2, seed=7)
    drift = make_rotational_drift(J2, TORUS, 2.0)
    report = rate_irreversible(p, TORUS, drift, 0.5)
    assert report.i_c >= report.i0 >= 0.0


def test_grid_convergence_on_rough_density():
    # |sin|^3 flavor: finite smoothness makes the spectral error visible and
    # at least third order, so doubling the grid shrinks it by >= 3x
    def rough(pts):
        return 1.0 + 0.5 * np.abs(np.sin(pts[..., 0])) ** 3

    drift = make_constant_drift([1.0], 1.0)
    reference = None
    errors = []
    fine = GridDensity.from_function(rough, 16384, 1)
    reference = circle_rate_closed_form(fine, 1.0)
    for size in (32, 64, 128):
        p = GridDensity.from_function(rough, size, 1)
        report = rate_irreversible(p, CIRCLE_U0, drift, 0.5)
        errors.append(abs(report.i_c - reference))
    assert errors[0] / errors[1] >= 3.0
    assert errors[1] / errors[2] >= 3.0


def test_nonconforming_drift_warns():
    p = random_smooth_density(32, dims=2, seed=1)

    class RadialField:
        delta = 1.0

        def eval(self, pts):
            return np.asarray(pts, dtype=float)

        def base_eval(self, pts):
            return np.asarray(pts, dtype=float)

    with pytest.warns(UserWarning):
        rate_irreversible(p, TORUS, RadialField(), 0.5)
