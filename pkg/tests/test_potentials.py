import numpy as np
import pytest

from irrlangevin.errors import DimensionError, ParameterError
from irrlangevin.potentials import (
    CATALOG,
    finite_difference_gradient,
    get_potential,
)

ALL_NAMES = sorted(CATALOG)


def sample_points(field, n, seed=0):
    rng = np.random.default_rng(seed)
    if field.is_torus:
        return rng.uniform(0.0, 2 * np.pi, size=(n, field.dimension))
    return rng.uniform(-2.0, 2.0, size=(n, field.dimension))


def test_bimodal1_value_at_origin():
    assert get_potential("bimodal1").eval([0.0, 0.0]) == pytest.approx(0.25)


def test_quadratic_minimum():
    assert get_potential("quadratic").eval([0.0, 0.0]) == 0.0


def test_quadratic_gradient_is_identity():
    np.testing.assert_allclose(get_potential("quadratic").grad([2.0, 3.0]), [2.0, 3.0])


def test_bimodal1_critical_points():
    field = get_potential("bimodal1")
    np.testing.assert_allclose(field.grad([1.0, 0.0]), [0.0, 0.0], atol=1e-14)
    np.testing.assert_allclose(field.grad([-1.0, 0.0]), [0.0, 0.0], atol=1e-14)


def test_threewell_reported_critical_points():
    # printed coordinates are rounded, hence the loose tolerance
    field = get_potential("threewell")
    for point in ([1.00051, 0.125314], [-1.00051, 0.125314], [0.0, -0.0139],
                  [0.0, -1.00711], [0.0, 1.08849]):
        assert np.linalg.norm(field.grad(point)) <= 1e-2


def test_threewell_local_maximum_shape():
    field = get_potential("threewell")
    center = field.eval([0.0, -0.0139])
    for dx, dy in ((1e-2, 0), (-1e-2, 0), (0, 1e-2), (0, -1e-2)):
        assert field.eval([dx, -0.0139 + dy]) < center


@pytest.mark.parametrize("name", ALL_NAMES)
def test_gradient_matches_finite_differences(name):
    field = get_potential(name)
    pts = sample_points(field, 100, seed=hash(name) % 2**32)
    exact = field.grad(pts)
    approx = finite_difference_gradient(field, pts, h=1e-5)
    scale = np.maximum(np.abs(exact), 1.0)
    assert np.max(np.abs(exact - approx) / scale) <= 1e-5


@pytest.mark.parametrize("name", ["torus-cosine", "torus-cosine-1d", "torus-zero"])
def test_torus_periodicity(name):
    field = get_potential(name)
    pts = sample_points(field, 50, seed=3)
    for axis in range(field.dimension):
        shifted = pts.copy()
        shifted[:, axis] += field.period[axis]
        assert np.max(np.abs(field.eval(pts) - field.eval(shifted))) <= 1e-12
        assert np.max(np.abs(field.grad(pts) - field.grad(shifted))) <= 1e-12


@pytest.mark.parametrize("name", ["torus-cosine", "torus-cosine-1d"])
def test_torus_laplacian_integrates_to_zero(name):
    field = get_potential(name)
    n = 64
    axis = 2 * np.pi * np.arange(n) / n
    if field.dimension == 1:
        pts = axis[:, None]
    else:
        gx, gy = np.meshgrid(axis, axis, indexing="ij")
        pts = np.stack([gx, gy], axis=-1)
    assert abs(np.mean(field.laplacian(pts))) <= 1e-10


def test_laplacian_finite_difference_fallback():
    field = get_potential("threewell")  # no closed-form Laplacian wired in
    quad = get_potential("quadratic")
    np.testing.assert_allclose(quad.laplacian([0.3, -0.7]), 2.0)
    pts = np.array([[0.4, 0.2]])
    # compare against a second-difference evaluation at another step size
    h = 1e-4
    ref = sum(
        (field.eval(pts + off) - 2 * field.eval(pts) + field.eval(pts - off)) / h**2
        for off in (np.array([h, 0.0]), np.array([0.0, h]))
    )
    assert field.laplacian(pts) == pytest.approx(ref, rel=1e-4)


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        get_potential("bimodal1").eval([1.0, 2.0, 3.0])
    with pytest.raises(DimensionError):
        get_potential("quadratic", dim=3).grad([1.0, 2.0])


def test_unknown_name_raises():
    with pytest.raises(ParameterError):
        get_potential("does-not-exist")


def test_torus_cosine_parameters():
    field = get_potential("torus-cosine", a=2.0, b=0.5)
    assert field.eval([0.0, 0.0]) == pytest.approx(2.5)
    assert field.params == {"a": 2.0, "b": 0.5}
