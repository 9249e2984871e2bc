import numpy as np
import pytest

from irrlangevin.errors import DomainError, ParameterError
from irrlangevin.spectral import (
    FourierObservable,
    ScaledCgf,
    discrete_mode_eigenvalue,
    fourier_sigma2,
    generator_spectrum,
    observable_rate,
    principal_eigenvalue,
    principal_eigenvalue_2d,
    rate_curvature,
    spectral_report,
)

COS = FourierObservable.cosine()


def cos_samples(n=256):
    return COS.samples(n)


# ---------------------------------------------------------------------------
# Fourier observable and exact variance


def test_cosine_coefficients():
    assert COS.mean == 0.0
    x = np.linspace(0, 2 * np.pi, 17)[:-1]
    np.testing.assert_allclose(COS.samples(16), np.cos(x), atol=1e-12)


def test_conjugate_symmetry_enforced():
    with pytest.raises(ParameterError):
        FourierObservable(np.array([0.5j, 0.0, 0.5j]))
    with pytest.raises(ParameterError):
        FourierObservable(np.array([0.5, 0.0]))  # even length


def test_sigma2_reference_values():
    assert fourier_sigma2(COS, 0.0, 1.0) == pytest.approx(1.0)
    assert fourier_sigma2(COS, 2.0, 1.0) == pytest.approx(0.2)


def test_sigma2_strictly_decreasing_in_delta():
    deltas = np.linspace(0.0, 10.0, 21)
    values = [fourier_sigma2(COS, d, 1.0) for d in deltas]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_sigma2_multimode():
    obs = FourierObservable(np.array([0.25, 0.5, 0.0, 0.5, 0.25]))
    # modes 1 and 2: 4(1/4)D/(D^2 + d^2) + 4(1/16)... with c_2 = 0.25
    d, D = 1.5, 1.0
    expected = 4 * 0.25 / (1 + d**2) + 4 * 0.0625 / (4 + d**2)
    assert fourier_sigma2(obs, d, D) == pytest.approx(expected)


def test_sigma2_rejects_constant_observable():
    with pytest.raises(ParameterError):
        fourier_sigma2(FourierObservable(np.array([0.0, 1.0, 0.0])), 1.0, 1.0)


# ---------------------------------------------------------------------------
# generator spectrum


def test_spectrum_mode_one_reversible():
    eig = generator_spectrum(256, 0.0, 1.0)
    # sorted by descending real part: the zero mode first, then modes +-1
    assert eig[0].real == pytest.approx(0.0, abs=1e-10)
    assert eig[1].real == pytest.approx(-1.0, abs=1e-3)
    assert eig[1].imag == pytest.approx(0.0, abs=1e-8)


def test_spectrum_mode_one_irreversible():
    eig = generator_spectrum(256, 5.0, 1.0)
    mode = eig[np.argmin(np.abs(eig - (-1 + 5j)))]
    assert mode.real == pytest.approx(-1.0, abs=1e-3)
    assert mode.imag == pytest.approx(5.0, abs=1e-2)


def test_spectrum_matches_exact_discrete_formula():
    n = 64
    eig = np.sort_complex(generator_spectrum(n, 3.0, 0.7))
    exact = np.sort_complex(np.array([
        discrete_mode_eigenvalue(n, k, 3.0, 0.7) for k in range(-n // 2, n // 2)
    ]))
    np.testing.assert_allclose(eig, exact, atol=1e-9)


def test_real_parts_independent_of_delta():
    re0 = np.sort(generator_spectrum(128, 0.0, 1.0).real)
    re100 = np.sort(generator_spectrum(128, 100.0, 1.0).real)
    assert np.max(np.abs(re0 - re100)) <= 1e-10


def test_real_parts_nonpositive():
    for delta in (0.0, 5.0):
        eig = generator_spectrum(96, delta, 1.0)
        assert np.max(eig.real) <= 1e-10


# ---------------------------------------------------------------------------
# principal eigenvalue


def test_principal_eigenvalue_beta_zero():
    lam, vec = principal_eigenvalue(cos_samples(), 0.0, 3.0, 1.0,
                                    return_vector=True)
    assert lam == pytest.approx(0.0, abs=1e-10)
    assert np.max(np.abs(vec - 1.0)) <= 1e-8  # constant eigenvector


def test_principal_eigenvalue_constant_shift():
    lam = principal_eigenvalue(np.ones(128), 0.7, 2.0, 1.0)
    assert lam == pytest.approx(0.7, abs=1e-10)


def test_principal_eigenvalue_second_order_perturbation():
    # lambda(beta cos) = beta^2 sum |c_n|^2 / (D n^2) + O(beta^3) at delta=0
    lam = principal_eigenvalue(cos_samples(), 0.1, 0.0, 1.0)
    assert lam == pytest.approx(0.005, abs=5e-4)


def test_principal_eigenvalue_perron_positivity():
    for beta in (-2.0, -0.5, 0.5, 2.0):
        lam, vec = principal_eigenvalue(cos_samples(), beta, 1.0, 1.0,
                                        return_vector=True)
        assert vec.min() > 0.0
        assert vec.min() / vec.max() > 0.0


def test_power_iteration_path_matches_dense():
    f = cos_samples(600)  # above the dense cutoff
    lam = principal_eigenvalue(f, 0.3, 1.0, 1.0)
    dense = principal_eigenvalue(cos_samples(512), 0.3, 1.0, 1.0)
    assert lam == pytest.approx(dense, abs=1e-4)


def test_principal_eigenvalue_2d():
    n = 12
    x = 2 * np.pi * np.arange(n) / n
    f2 = np.cos(x)[:, None] * np.ones(n)[None, :]
    assert principal_eigenvalue_2d(f2, 0.0, None, 1.0) == pytest.approx(0.0, abs=1e-10)
    assert principal_eigenvalue_2d(np.ones((n, n)), 0.7, None, 1.0) == \
        pytest.approx(0.7, abs=1e-10)
    with pytest.raises(ParameterError):
        principal_eigenvalue_2d(np.ones((80, 80)), 0.1, None, 1.0)


def test_scgf_convex_in_beta():
    scgf = ScaledCgf(cos_samples(), 2.0, 1.0)
    betas = np.linspace(-2.0, 2.0, 21)
    values = np.array([scgf.value(b) for b in betas])
    second = np.diff(values, 2)
    assert np.min(second) >= -1e-8
    # lambda(0) = 0 for every delta: invariant measure unchanged
    for delta in (0.0, 1.0, 10.0):
        assert ScaledCgf(cos_samples(), delta, 1.0).value(0.0) == \
            pytest.approx(0.0, abs=1e-10)


# ---------------------------------------------------------------------------
# observable rate function


def test_rate_zero_at_mean():
    curve = observable_rate(cos_samples(), 0.0, 1.0, [0.0])
    assert curve.rates[0] == pytest.approx(0.0, abs=1e-9)
    assert curve.betas[0] == pytest.approx(0.0, abs=1e-6)


def test_rate_increases_with_delta():
    ells = [-0.6, -0.3, 0.3, 0.6]
    base = observable_rate(cos_samples(), 0.0, 1.0, ells)
    fast = observable_rate(cos_samples(), 4.0, 1.0, ells)
    assert np.all(fast.rates - base.rates > 1e-6)


def test_rate_symmetric_for_reversible_cosine():
    curve = observable_rate(cos_samples(), 0.0, 1.0, [-0.4, 0.4])
    assert abs(curve.rates[0] - curve.rates[1]) <= 1e-8


def test_rate_rejects_level_outside_range():
    with pytest.raises(DomainError):
        observable_rate(cos_samples(), 0.0, 1.0, [1.5])
    with pytest.raises(DomainError):
        observable_rate(cos_samples(), 0.0, 1.0, [-1.0])  # boundary excluded


def test_curvature_implies_sigma2():
    for delta, expected in ((0.0, 1.0), (2.0, 0.2)):
        curvature, implied = rate_curvature(cos_samples(), delta, 1.0)
        assert implied == pytest.approx(expected, rel=0.02)
        assert curvature == pytest.approx(1.0 / (2.0 * expected), rel=0.02)


def test_curvature_sigma2_strictly_decreasing():
    implied = [rate_curvature(cos_samples(), d, 1.0)[1] for d in (0.0, 1.0, 2.0, 4.0)]
    assert all(a > b for a, b in zip(implied, implied[1:]))


def test_spectral_report_bundle():
    report = spectral_report(COS, 2.0, 1.0, n=128, ell_grid=[-0.3, 0.3])
    assert report.sigma2_fourier == pytest.approx(0.2)
    assert report.sigma2_curvature == pytest.approx(0.2, rel=0.02)
    assert report.rate_curve is not None
    assert len(report.rate_curve.rates) == 2
