"""Circle-generator analytics and observable-level rate functions.

The flat circle with generator L = D Lap + delta d/dx is the one setting
where everything is exactly computable: the spectrum is -D n^2 + i n delta,
the asymptotic variance of a zero-mean observable f = sum c_n e^{inx} is

    sigma^2(delta) = sum_{n >= 1} 4 |c_n|^2 D / (D^2 n^2 + delta^2) ,

(the value of 2 * integral of the stationary autocovariance), and the
scaled cumulant generating function lambda(beta f) is the principal
eigenvalue of L + beta f.  The module discretizes L with centered
differences on an N-point periodic grid, extracts lambda(beta f) from the
dense spectrum (power iteration on the exponential propagator above the
dense-solve cutoff), and Legendre-transforms it into the rate function of
the ergodic average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, ParameterError, SolverError

TWO_PI = 2.0 * math.pi

_DENSE_LIMIT = 512


@dataclass(frozen=True)
class FourierObservable:
    """Real observable on the circle given by coefficients c_n, |n| <= n_max.

    ``coefficients[k]`` stores c_{k - n_max}; conjugate symmetry
    c_{-n} = conj(c_n) is required (real-valued observable).
    """

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or len(c) % 2 != 1:
            raise ParameterError(
                "coefficients must be a 1-d array of odd length (c_{-n}..c_n)"
            )
        n_max = len(c) // 2
        if np.max(np.abs(c - np.conj(c[::-1]))) > 1e-12:
            raise ParameterError("coefficients violate c_{-n} = conj(c_n)")
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "n_max", n_max)

    @classmethod
    def cosine(cls) -> "FourierObservable":
        """f(x) = cos x, i.e. c_{+-1} = 1/2."""
        return cls(np.array([0.5, 0.0, 0.5], dtype=complex))

    @property
    def mean(self) -> float:
        return float(self.coefficients[self.n_max].real)

    def samples(self, n: int) -> np.ndarray:
        x = TWO_PI * np.arange(n) / n
        out = np.zeros(n)
        for k, c in enumerate(self.coefficients):
            mode = k - self.n_max
            out += (c * np.exp(1j * mode * x)).real
        return out


def fourier_sigma2(observable: FourierObservable, delta: float,
                   diffusion: float) -> float:
    """Exact asymptotic variance sum over modes for the circle generator."""
    if diffusion <= 0:
        raise ParameterError("diffusion must be positive")
    c = observable.coefficients
    n_max = observable.n_max
    total = 0.0
    for n in range(1, n_max + 1):
        total += 4.0 * abs(c[n_max + n]) ** 2 * diffusion / (
            diffusion**2 * n**2 + delta**2
        )
    if total == 0.0:
        raise ParameterError("observable has no nonconstant Fourier content")
    return total


def circle_operator(n: int, delta: float, diffusion: float) -> np.ndarray:
    """Dense centered-difference discretization of D Lap + delta d/dx."""
    if n < 8:
        raise ParameterError("grid size must be at least 8")
    h = TWO_PI / n
    eye = np.eye(n)
    up = np.roll(eye, 1, axis=1)     # row j picks psi_{j+1}
    down = np.roll(eye, -1, axis=1)  # row j picks psi_{j-1}
    lap = (up - 2.0 * eye + down) / h**2
    grad = (up - down) / (2.0 * h)
    return diffusion * lap + delta * grad


def generator_spectrum(n: int, delta: float, diffusion: float) -> np.ndarray:
    """Eigenvalues of the discretized circle generator, sorted by real part
    (descending).  The advection part only shifts imaginary parts: real
    parts are identical across delta."""
    eig = np.linalg.eigvals(circle_operator(n, delta, diffusion))
    order = np.lexsort((eig.imag, -eig.real))
    return eig[order]


def discrete_mode_eigenvalue(n: int, mode: int, delta: float,
                             diffusion: float) -> complex:
    """Exact eigenvalue of the discretization at the given Fourier mode:
    -(2D/h^2)(1 - cos(mode h)) + i (delta/h) sin(mode h)."""
    h = TWO_PI / n
    return complex(
        -(2.0 * diffusion / h**2) * (1.0 - math.cos(mode * h)),
        (delta / h) * math.sin(mode * h),
    )


def _top_eigenpair_dense(matrix: np.ndarray) -> tuple[float, np.ndarray]:
    eigvals, eigvecs = np.linalg.eig(matrix)
    top = int(np.argmax(eigvals.real))
    lam = eigvals[top]
    scale = max(1.0, float(np.max(np.abs(eigvals.real))))
    if abs(lam.imag) > 1e-9 * scale:
        raise SolverError(
            f"top eigenvalue is not real ({lam:.6g}); no Perron eigenpair found"
        )
    vec = eigvecs[:, top]
    return float(lam.real), vec


def _top_eigenpair_power(matrix: np.ndarray, tau: float = 1.0,
                         max_iter: int = 500, tol: float = 1e-11):
    """Power iteration on the exponential propagator exp(tau M).

    The propagator maps the positive cone to itself, so iterating it from a
    positive vector converges to the Perron eigenpair with ratio
    exp(-gap * tau) per step; the eigenvalue is log(growth)/tau."""
    import scipy.sparse
    import scipy.sparse.linalg

    sparse_op = scipy.sparse.csr_matrix(tau * matrix)
    n = matrix.shape[0]
    v = np.full(n, 1.0 / math.sqrt(n))
    lam_old = np.inf
    hits = 0
    for _ in range(max_iter):
        w = scipy.sparse.linalg.expm_multiply(sparse_op, v)
        growth = np.linalg.norm(w)
        v = w / growth
        lam = math.log(growth) / tau
        if abs(lam - lam_old) <= tol * max(1.0, abs(lam)):
            hits += 1
            if hits >= 3:
                return float(lam), v
        else:
            hits = 0
        lam_old = lam
    raise SolverError(f"power iteration did not converge in {max_iter} iterations")


def _assert_perron_vector(vec: np.ndarray) -> np.ndarray:
    """Rotate the eigenvector to the positive cone and assert positivity."""
    w = vec / vec[int(np.argmax(np.abs(vec)))]
    if np.iscomplexobj(w):
        if np.max(np.abs(w.imag)) > 1e-8:
            raise SolverError("top eigenvector has a non-trivial imaginary part")
        w = w.real
    if w.min() <= 0.0:
        raise SolverError(
            f"top eigenvector is not strictly positive (min/max = "
            f"{w.min() / w.max():.3e}); Perron structure violated"
        )
    return w


def principal_eigenvalue(f_samples: np.ndarray, beta: float, delta: float,
                         diffusion: float, return_vector: bool = False):
    """Principal (Feynman-Kac) eigenvalue of D Lap + delta d/dx + beta f.

    ``f_samples`` are the observable values on the N-point grid that also
    fixes the discretization.  Dense eigensolve for N <= 512, power
    iteration on the exponential propagator above.  The converged
    eigenvector is checked to be strictly positive.
    """
    f = np.asarray(f_samples, dtype=float)
    if f.ndim != 1:
        raise DimensionError("f_samples must be a 1-d array of grid values")
    matrix = circle_operator(len(f), delta, diffusion) + beta * np.diag(f)
    if len(f) <= _DENSE_LIMIT:
        lam, vec = _top_eigenpair_dense(matrix)
    else:
        lam, vec = _top_eigenpair_power(matrix)
    positive = _assert_perron_vector(vec)
    if return_vector:
        return lam, positive
    return lam


def torus_operator_2d(f_samples: np.ndarray, beta: float, drift_samples,
                      diffusion: float) -> np.ndarray:
    """Dense discretization of D Lap + C . grad + beta f on the 2-torus.

    ``drift_samples`` has shape (2, N, N).  Dense solves only; N <= 64."""
    f = np.asarray(f_samples, dtype=float)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise DimensionError("2-d observable samples must be square")
    n = f.shape[0]
    if n > 64:
        raise ParameterError("dense 2-d solves are limited to N <= 64 per axis")
    c = np.zeros((2, n, n)) if drift_samples is None else np.asarray(drift_samples)
    h = TWO_PI / n
    size = n * n
    idx = np.arange(size).reshape(n, n)
    matrix = np.zeros((size, size))
    row = idx.ravel()
    for axis, sign_field in ((0, c[0]), (1, c[1])):
        plus = np.roll(idx, -1, axis=axis).ravel()
        minus = np.roll(idx, 1, axis=axis).ravel()
        matrix[row, plus] += diffusion / h**2 + sign_field.ravel() / (2.0 * h)
        matrix[row, minus] += diffusion / h**2 - sign_field.ravel() / (2.0 * h)
        matrix[row, row] -= 2.0 * diffusion / h**2
    matrix[row, row] += beta * f.ravel()
    return matrix


def principal_eigenvalue_2d(f_samples, beta: float, drift_samples,
                            diffusion: float) -> float:
    """Principal eigenvalue of the 2-torus generator (dense, N <= 64)."""
    matrix = torus_operator_2d(f_samples, beta, drift_samples, diffusion)
    lam, vec = _top_eigenpair_dense(matrix)
    _assert_perron_vector(vec)
    return lam


class ScaledCgf:
    """Cached beta -> lambda(beta f) map for one (f, delta, D, N) context."""

    def __init__(self, f_samples, delta: float, diffusion: float,
                 fd_step: float = 1e-4):
        self.f = np.asarray(f_samples, dtype=float)
        self.delta = float(delta)
        self.diffusion = float(diffusion)
        self.fd_step = float(fd_step)
        self._base = circle_operator(len(self.f), self.delta, self.diffusion)
        self._diag = np.diag(self.f)
        self._cache: dict[float, float] = {}

    def value(self, beta: float) -> float:
        beta = float(beta)
        if beta not in self._cache:
            matrix = self._base + beta * self._diag
            if len(self.f) <= _DENSE_LIMIT:
                lam, vec = _top_eigenpair_dense(matrix)
            else:
                lam, vec = _top_eigenpair_power(matrix)
            _assert_perron_vector(vec)
            self._cache[beta] = lam
        return self._cache[beta]

    def derivative(self, beta: float) -> float:
        h = self.fd_step
        return (self.value(beta + h) - self.value(beta - h)) / (2.0 * h)

    def second_derivative(self, beta: float) -> float:
        h = self.fd_step
        return (
            self.value(beta + h) - 2.0 * self.value(beta) + self.value(beta - h)
        ) / h**2


def _solve_tilt(scgf: ScaledCgf, ell: float, bracket: tuple[float, float] = (-50.0, 50.0),
                tol: float = 1e-8, max_iter: int = 80) -> float:
    """Find beta with lambda'(beta) = ell; Newton with bisection fallback.

    lambda is smooth and strictly convex, so lambda' is increasing and the
    root is unique whenever ell lies in the closure of lambda'(R)."""
    lo, hi = bracket
    beta = 0.0
    glo = ghi = None
    for _ in range(max_iter):
        g = scgf.derivative(beta) - ell
        if abs(g) <= tol * max(1.0, abs(ell)):
            return beta
        if g < 0:
            lo, glo = max(lo, beta), g
        else:
            hi, ghi = min(hi, beta), g
        curv = scgf.second_derivative(beta)
        if curv > 0:
            candidate = beta - g / curv
        else:
            candidate = math.nan
        if not (lo < candidate < hi):
            # bisect; make sure the bracket actually straddles the root
            if glo is None:
                if scgf.derivative(lo) - ell >= 0:
                    raise DomainError(f"level {ell} below the reachable range")
                glo = -1.0
            if ghi is None:
                if scgf.derivative(hi) - ell <= 0:
                    raise DomainError(f"level {ell} above the reachable range")
                ghi = 1.0
            candidate = 0.5 * (lo + hi)
        beta = candidate
    raise SolverError(f"tilt solve for level {ell} did not converge")


@dataclass(frozen=True)
class ObservableRateCurve:
    """Sampled rate function of the ergodic average of f."""

    ells: np.ndarray
    rates: np.ndarray
    betas: np.ndarray
    delta: float
    diffusion: float


def observable_rate(f_samples, delta: float, diffusion: float,
                    ell_grid) -> ObservableRateCurve:
    """Legendre transform sup_beta {beta ell - lambda(beta f)} on a grid of
    levels, each strictly inside (min f, max f).

    Convexity of the returned curve is asserted (second divided differences
    >= -1e-8)."""
    f = np.asarray(f_samples, dtype=float)
    ells = np.asarray(ell_grid, dtype=float)
    fmin, fmax = float(f.min()), float(f.max())
    for ell in ells:
        if not fmin < ell < fmax:
            raise DomainError(
                f"level {ell} outside the open range ({fmin:g}, {fmax:g}) of f"
            )
    scgf = ScaledCgf(f, delta, diffusion)
    betas = np.empty(len(ells))
    rates = np.empty(len(ells))
    for i, ell in enumerate(ells):
        beta = _solve_tilt(scgf, float(ell))
        betas[i] = beta
        rates[i] = beta * ell - scgf.value(beta)
    order = np.argsort(ells)
    e, r = ells[order], rates[order]
    for i in range(1, len(e) - 1):
        left = (r[i] - r[i - 1]) / (e[i] - e[i - 1])
        right = (r[i + 1] - r[i]) / (e[i + 1] - e[i])
        if right - left < -1e-8:
            raise SolverError("rate curve failed the convexity check")
    return ObservableRateCurve(ells, rates, betas, float(delta), float(diffusion))


def rate_curvature(f_samples, delta: float, diffusion: float) -> tuple[float, float]:
    """Quadratic coefficient of the rate function at the mean and the
    asymptotic variance it implies.

    ``curvature`` is the growth coefficient kappa in
    I(ell) ~ kappa (ell - fbar)^2 near the mean (half the literal second
    derivative); with this normalization kappa = 1/(2 sigma^2), so the
    implied variance is 1/(2 kappa).  Central differences with level step
    1e-3 * (max f - min f)."""
    f = np.asarray(f_samples, dtype=float)
    fbar = float(f.mean())
    h = 1e-3 * (float(f.max()) - float(f.min()))
    if h <= 0:
        raise ParameterError("observable is constant")
    curve = observable_rate(f, delta, diffusion, [fbar - h, fbar, fbar + h])
    second = (curve.rates[2] - 2.0 * curve.rates[1] + curve.rates[0]) / h**2
    curvature = 0.5 * second
    if curvature <= 0:
        raise SolverError("non-positive curvature at the mean")
    return curvature, 1.0 / (2.0 * curvature)


@dataclass(frozen=True)
class SpectralReport:
    """Bundle of circle diagnostics for one (delta, D)."""

    delta: float
    diffusion: float
    eigenvalues: np.ndarray
    sigma2_fourier: float
    sigma2_curvature: float
    curvature_at_mean: float
    rate_curve: ObservableRateCurve | None


def spectral_report(observable: FourierObservable, delta: float, diffusion: float,
                    n: int = 256, ell_grid=None) -> SpectralReport:
    f = observable.samples(n)
    curvature, implied = rate_curvature(f, delta, diffusion)
    curve = None
    if ell_grid is not None:
        curve = observable_rate(f, delta, diffusion, ell_grid)
    return SpectralReport(
        delta=float(delta),
        diffusion=float(diffusion),
        eigenvalues=generator_spectrum(n, delta, diffusion)[: 2 * observable.n_max + 3],
        sigma2_fourier=fourier_sigma2(observable, delta, diffusion),
        sigma2_curvature=implied,
        curvature_at_mean=curvature,
        rate_curve=curve,
    )
