"""Scalar potential fields on R^d and on flat tori.

Every catalog entry carries a hand-coded analytic gradient; central finite
differences exist only as a cross-check oracle (tests) and as the fallback
for the Laplacian when no closed form is wired in.  Evaluation is
vectorized: points have shape ``(..., d)``, energies come back with shape
``(...,)`` and gradients with shape ``(..., d)``.

Torus entries use period 2*pi per axis so that Fourier modes are plain
integer wavenumbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionError, ParameterError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PotentialField:
    """A smooth energy U with vectorized value/gradient access.

    ``period`` is None on unbounded domains, otherwise the per-axis period
    vector of the torus.  ``params`` echoes the builder arguments so a
    field is reconstructible from (name, params).  Instances are immutable
    and safe for concurrent reads.
    """

    name: str
    dimension: int
    value_fn: Callable[[np.ndarray], np.ndarray]
    grad_fn: Callable[[np.ndarray], np.ndarray]
    laplacian_fn: Callable[[np.ndarray], np.ndarray] | None = None
    period: tuple[float, ...] | None = None
    params: dict = field(default_factory=dict)

    def _as_points(self, x) -> np.ndarray:
        pts = np.asarray(x, dtype=float)
        if pts.ndim == 0 or pts.shape[-1] != self.dimension:
            raise DimensionError(
                f"potential {self.name!r} expects points of dimension "
                f"{self.dimension}, got shape {pts.shape}"
            )
        return pts

    def eval(self, x) -> np.ndarray:
        """Energy U(x)."""
        return self.value_fn(self._as_points(x))

    def grad(self, x) -> np.ndarray:
        """Analytic gradient of U at x."""
        return self.grad_fn(self._as_points(x))

    def laplacian(self, x) -> np.ndarray:
        """Laplacian of U, by closed form or central differences (h=1e-5)."""
        pts = self._as_points(x)
        if self.laplacian_fn is not None:
            return self.laplacian_fn(pts)
        h = 1e-5
        acc = np.zeros(pts.shape[:-1])
        for axis in range(self.dimension):
            shift = np.zeros(self.dimension)
            shift[axis] = h
            acc = acc + (
                self.value_fn(pts + shift)
                - 2.0 * self.value_fn(pts)
                + self.value_fn(pts - shift)
            ) / h**2
        return acc

    @property
    def is_torus(self) -> bool:
        return self.period is not None


def _quadratic(dim: int = 2) -> PotentialField:
    dim = int(dim)
    if dim < 1:
        raise ParameterError("quadratic potential needs dim >= 1")
    return PotentialField(
        name="quadratic",
        dimension=dim,
        value_fn=lambda z: 0.5 * np.sum(z**2, axis=-1),
        grad_fn=lambda z: z.copy(),
        laplacian_fn=lambda z: np.full(z.shape[:-1], float(dim)),
        params={"dim": dim},
    )


def _bimodal1() -> PotentialField:
    # U(x, y) = (x^2 - 1)^2 / 4 + y^2 / 2
    def value(z):
        x, y = z[..., 0], z[..., 1]
        return 0.25 * (x**2 - 1.0) ** 2 + 0.5 * y**2

    def grad(z):
        x, y = z[..., 0], z[..., 1]
        return np.stack([x**3 - x, y], axis=-1)

    def lap(z):
        x = z[..., 0]
        return 3.0 * x**2

    return PotentialField("bimodal1", 2, value, grad, lap)


def _bimodal2() -> PotentialField:
    # U(x, y) = (x^2 - 1)^2 + (3 y + x^2 - 1)^2 / 2
    def value(z):
        x, y = z[..., 0], z[..., 1]
        return (x**2 - 1.0) ** 2 + 0.5 * (3.0 * y + x**2 - 1.0) ** 2

    def grad(z):
        x, y = z[..., 0], z[..., 1]
        w = 3.0 * y + x**2 - 1.0
        return np.stack([4.0 * x * (x**2 - 1.0) + 2.0 * x * w, 3.0 * w], axis=-1)

    def lap(z):
        x, y = z[..., 0], z[..., 1]
        return 18.0 * x**2 + 6.0 * y + 3.0

    return PotentialField("bimodal2", 2, value, grad, lap)


def _threewell() -> PotentialField:
    # U(x, y) = [(x^2-1)^2 ((y^2-2)^2 + 1) + 2 y^2] / 4 - y/8 + exp(-8x^2 - 4y^2).
    # The -y/8 tilt sits outside the 1/4 bracket: that placement is what makes
    # (+-1.00051, 0.125314) minima, (0, -1.00711)/(0, 1.08849) saddles and
    # (0, -0.0139) a local maximum.
    def value(z):
        x, y = z[..., 0], z[..., 1]
        bump = np.exp(-8.0 * x**2 - 4.0 * y**2)
        return (
            0.25 * ((x**2 - 1.0) ** 2 * ((y**2 - 2.0) ** 2 + 1.0) + 2.0 * y**2)
            - y / 8.0
            + bump
        )

    def grad(z):
        x, y = z[..., 0], z[..., 1]
        bump = np.exp(-8.0 * x**2 - 4.0 * y**2)
        gx = x * (x**2 - 1.0) * ((y**2 - 2.0) ** 2 + 1.0) - 16.0 * x * bump
        gy = y * (x**2 - 1.0) ** 2 * (y**2 - 2.0) + y - 0.125 - 8.0 * y * bump
        return np.stack([gx, gy], axis=-1)

    return PotentialField("threewell", 2, value, grad)


def _torus_cosine(a: float = 1.0, b: float = 1.0) -> PotentialField:
    # U(x, y) = a cos x + b cos y on [0, 2 pi)^2
    a, b = float(a), float(b)

    def value(z):
        return a * np.cos(z[..., 0]) + b * np.cos(z[..., 1])

    def grad(z):
        return np.stack([-a * np.sin(z[..., 0]), -b * np.sin(z[..., 1])], axis=-1)

    def lap(z):
        return -a * np.cos(z[..., 0]) - b * np.cos(z[..., 1])

    return PotentialField(
        "torus-cosine", 2, value, grad, lap,
        period=(TWO_PI, TWO_PI), params={"a": a, "b": b},
    )


def _torus_cosine_1d(a: float = 1.0) -> PotentialField:
    a = float(a)
    return PotentialField(
        name="torus-cosine-1d",
        dimension=1,
        value_fn=lambda z: a * np.cos(z[..., 0]),
        grad_fn=lambda z: -a * np.sin(z),
        laplacian_fn=lambda z: -a * np.cos(z[..., 0]),
        period=(TWO_PI,),
        params={"a": a},
    )


def _torus_zero(dim: int = 1) -> PotentialField:
    dim = int(dim)
    return PotentialField(
        name="torus-zero",
        dimension=dim,
        value_fn=lambda z: np.zeros(z.shape[:-1]),
        grad_fn=np.zeros_like,
        laplacian_fn=lambda z: np.zeros(z.shape[:-1]),
        period=(TWO_PI,) * dim,
        params={"dim": dim},
    )


@dataclass(frozen=True)
class CatalogEntry:
    """Named builder so potentials are addressable from CLI configs."""

    name: str
    builder: Callable[..., PotentialField]


CATALOG: dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        CatalogEntry("quadratic", _quadratic),
        CatalogEntry("bimodal1", _bimodal1),
        CatalogEntry("bimodal2", _bimodal2),
        CatalogEntry("threewell", _threewell),
        CatalogEntry("torus-cosine", _torus_cosine),
        CatalogEntry("torus-cosine-1d", _torus_cosine_1d),
        CatalogEntry("torus-zero", _torus_zero),
    )
}


def get_potential(name: str, **params) -> PotentialField:
    """Build a catalog potential by name."""
    try:
        entry = CATALOG[name]
    except KeyError:
        raise ParameterError(
            f"unknown potential {name!r}; available: {sorted(CATALOG)}"
        ) from None
    return entry.builder(**params)


def finite_difference_gradient(field: PotentialField, x, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient, the test oracle for analytic gradients."""
    pts = np.asarray(x, dtype=float)
    out = np.zeros_like(pts)
    for axis in range(field.dimension):
        shift = np.zeros(field.dimension)
        shift[axis] = h
        out[..., axis] = (field.eval(pts + shift) - field.eval(pts - shift)) / (2.0 * h)
    return out
