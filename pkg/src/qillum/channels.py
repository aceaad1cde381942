"""Gaussian channels acting on first and second moments.

A channel ``(X, Y, d0)`` maps ``cov -> X cov X^T + Y`` and
``mean -> X mean + d0``.  It is completely positive iff
``Y + i Omega_out - i X Omega_in X^T >= 0``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidArgumentError
from .symplectic import PHYSICALITY_TOL, GaussianState, _check_modes, _quadrature_index, omega


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    X: np.ndarray
    Y: np.ndarray
    d0: np.ndarray = None

    def __post_init__(self):
        x = np.array(self.X, dtype=float)
        y = np.array(self.Y, dtype=float)
        if x.ndim != 2 or x.shape[0] % 2 or x.shape[1] % 2:
            raise DimensionError(f"X must be 2n_out x 2n_in, got {x.shape}")
        if y.shape != (x.shape[0], x.shape[0]):
            raise DimensionError(f"Y must be {x.shape[0]}x{x.shape[0]}, got {y.shape}")
        d0 = np.zeros(x.shape[0]) if self.d0 is None else np.array(self.d0, dtype=float)
        if d0.shape != (x.shape[0],):
            raise DimensionError("d0 length does not match the output dimension")
        if np.abs(y - y.T).max(initial=0.0) > 1e-12 * max(1.0, np.abs(y).max(initial=0.0)):
            raise InvalidArgumentError("Y is not symmetric")
        y = (y + y.T) / 2
        for arr in (x, y, d0):
            arr.setflags(write=False)
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "Y", y)
        object.__setattr__(self, "d0", d0)
        if cp_margin(self) < -PHYSICALITY_TOL:
            raise InvalidArgumentError("channel is not completely positive")

    @property
    def n_in(self):
        return self.X.shape[1] // 2

    @property
    def n_out(self):
        return self.X.shape[0] // 2


def cp_margin(c):
    """Minimum eigenvalue of the complete-positivity matrix."""
    m = c.Y + 1j * omega(c.n_out) - 1j * c.X @ omega(c.n_in) @ c.X.T
    return float(np.linalg.eigvalsh(m).min())


def _check_transmissivity(eta, n_env):
    if not 0.0 < eta <= 1.0:
        raise InvalidArgumentError(f"transmissivity must lie in (0, 1], got {eta}")
    if not np.isfinite(n_env) or n_env < 0:
        raise InvalidArgumentError(f"environment photon number must be >= 0, got {n_env}")


def identity_channel(n):
    return GaussianChannel(np.eye(2 * n), np.zeros((2 * n, 2 * n)))


def attenuator(n, eta, n_env):
    """Thermal attenuator: ``b = sqrt(eta) a + sqrt(1 - eta) e`` with ``<e^dag e> = n_env``."""
    _check_transmissivity(eta, n_env)
    eye = np.eye(2 * n)
    return GaussianChannel(np.sqrt(eta) * eye, (1 - eta) * (2 * n_env + 1) * eye)


def replacement_channel(n, n_env):
    """The ``eta = 0`` attenuator: every input is replaced by thermal noise."""
    if n_env < 0:
        raise InvalidArgumentError(f"environment photon number must be >= 0, got {n_env}")
    return GaussianChannel(np.zeros((2 * n, 2 * n)), (2 * n_env + 1) * np.eye(2 * n))


def complementary_attenuator(n, eta, n_env):
    """Environment output of the attenuator's dilation.

    Per input mode the outputs are ``(E, E')``: ``E`` leaves the beam splitter
    as ``sqrt(eta) e - sqrt(1 - eta) a`` and ``E'`` is the untouched purifying
    partner of the thermal environment.  Outputs are interleaved
    ``(E1, E1', E2, E2', ...)``.
    """
    _check_transmissivity(eta, n_env)
    c = 2 * n_env + 1
    s = 2 * np.sqrt(n_env * (n_env + 1))
    sz = np.diag([1.0, -1.0])
    x1 = np.vstack([-np.sqrt(1 - eta) * np.eye(2), np.zeros((2, 2))])
    y1 = np.block([[eta * c * np.eye(2), np.sqrt(eta) * s * sz], [np.sqrt(eta) * s * sz, c * np.eye(2)]])
    return GaussianChannel(np.kron(np.eye(n), x1), np.kron(np.eye(n), y1))


def additive_noise(n, kappa):
    """Adds ``kappa`` photons of classical Gaussian noise to each mode."""
    if not np.isfinite(kappa) or kappa < 0:
        raise InvalidArgumentError(f"added noise must be >= 0, got {kappa}")
    return GaussianChannel(np.eye(2 * n), 2 * kappa * np.eye(2 * n))


def apply(c, s):
    if c.n_in != s.n_modes:
        raise DimensionError(f"channel takes {c.n_in} modes, state has {s.n_modes}")
    return GaussianState(c.X @ s.mean + c.d0, c.X @ s.cov @ c.X.T + c.Y)


def apply_on_subsystem(c, s, target_modes):
    """Apply ``c`` to ``target_modes`` of ``s`` and the identity elsewhere.

    ``target_modes[i]`` is fed to input ``i`` of the channel, and the output
    replaces it in place, so the channel must preserve the mode count.
    """
    targets = _check_modes(target_modes, s.n_modes)
    if len(targets) != c.n_in:
        raise DimensionError(f"channel takes {c.n_in} modes, {len(targets)} targeted")
    if c.n_out != c.n_in:
        raise DimensionError("in-place application needs n_out == n_in")
    idx = _quadrature_index(targets)
    dim = 2 * s.n_modes
    x = np.eye(dim)
    x[np.ix_(idx, idx)] = c.X
    y = np.zeros((dim, dim))
    y[np.ix_(idx, idx)] = c.Y
    d0 = np.zeros(dim)
    d0[idx] = c.d0
    return apply(GaussianChannel(x, y, d0), s)


def compose(outer, inner):
    """The channel ``outer o inner``."""
    if inner.n_out != outer.n_in:
        raise DimensionError(f"cannot feed {inner.n_out} modes into a {outer.n_in}-mode channel")
    return GaussianChannel(
        outer.X @ inner.X,
        outer.X @ inner.Y @ outer.X.T + outer.Y,
        outer.X @ inner.d0 + outer.d0,
    )
