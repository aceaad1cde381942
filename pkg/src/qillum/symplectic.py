"""Gaussian states in the covariance-matrix picture.

Conventions: quadratures are ordered ``(x1, p1, ..., xn, pn)`` with
``x = (a + a^dag)/sqrt(2)``, the covariance is the symmetrised second moment
``<{dr_i, dr_j}>`` so the vacuum has ``cov = I``, and the mean of ``x`` for a
coherent state is ``sqrt(2) Re(alpha)``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.stats import unitary_group

from .errors import DimensionError, InvalidArgumentError, PhysicalityError

PHYSICALITY_TOL = 1e-9


def omega(n):
    """Symplectic form, a direct sum of ``[[0, 1], [-1, 0]]`` blocks."""
    return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Mean vector and covariance matrix of an ``n``-mode Gaussian state.

    Symmetry and finiteness are enforced on construction; physicality is not,
    so that unphysical candidates can still be inspected with
    :func:`is_physical`.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        mean = np.array(self.mean, dtype=float).reshape(-1)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2 or cov.size == 0:
            raise DimensionError(f"covariance must be 2n x 2n, got {cov.shape}")
        if mean.shape != (cov.shape[0],):
            raise DimensionError(f"mean of length {mean.size} for a {cov.shape[0]}-dim covariance")
        if not (np.all(np.isfinite(cov)) and np.all(np.isfinite(mean))):
            raise InvalidArgumentError("non-finite entries in Gaussian state")
        scale = max(1.0, float(np.abs(cov).max()))
        if np.abs(cov - cov.T).max() > 1e-12 * scale:
            raise InvalidArgumentError("covariance matrix is not symmetric")
        cov = (cov + cov.T) / 2
        cov.setflags(write=False)
        mean.setflags(write=False)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "mean", mean)

    @property
    def n_modes(self):
        return self.cov.shape[0] // 2


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Williamson eigenvalues, sorted in descending order and clipped at 1."""

    values: np.ndarray

    def __len__(self):
        return len(self.values)


def _check_count(n):
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"mode count must be a positive integer, got {n}")
    return int(n)


def vacuum(n=1):
    n = _check_count(n)
    return GaussianState(np.zeros(2 * n), np.eye(2 * n))


def make_thermal(n, n_mean):
    """``n`` modes, each thermal with ``n_mean`` photons."""
    n = _check_count(n)
    if not np.isfinite(n_mean) or n_mean < 0:
        raise InvalidArgumentError(f"mean photon number must be >= 0, got {n_mean}")
    return GaussianState(np.zeros(2 * n), (2 * n_mean + 1) * np.eye(2 * n))


def make_coherent(amplitudes):
    alpha = np.atleast_1d(np.asarray(amplitudes, dtype=complex))
    if alpha.size == 0:
        raise InvalidArgumentError("at least one amplitude is required")
    if not np.all(np.isfinite(alpha)):
        raise InvalidArgumentError("non-finite coherent amplitude")
    mean = np.sqrt(2) * np.column_stack([alpha.real, alpha.imag]).reshape(-1)
    return GaussianState(mean, np.eye(2 * alpha.size))


def make_tmsv(energy):
    """Two-mode squeezed vacuum with ``energy`` mean photons in each mode.

    Mode 0 is the signal, mode 1 the idler.  The Fock amplitudes are
    ``sqrt(1 - z^2) z^k |k, k>`` with ``z = sqrt(E / (E + 1))``.
    """
    if not np.isfinite(energy) or energy < 0:
        raise InvalidArgumentError(f"energy must be >= 0, got {energy}")
    c = 2 * energy + 1
    s = 2 * np.sqrt(energy * (energy + 1))
    sz = np.diag([1.0, -1.0])
    cov = np.block([[c * np.eye(2), s * sz], [s * sz, c * np.eye(2)]])
    return GaussianState(np.zeros(4), cov)


def tensor(*states):
    """Tensor product; the modes of each factor follow those of the previous one."""
    if not states:
        raise InvalidArgumentError("tensor of nothing")
    dim = sum(s.cov.shape[0] for s in states)
    cov = np.zeros((dim, dim))
    pos = 0
    for s in states:
        k = s.cov.shape[0]
        cov[pos:pos + k, pos:pos + k] = s.cov
        pos += k
    return GaussianState(np.concatenate([s.mean for s in states]), cov)


def _quadrature_index(modes):
    modes = np.asarray(modes, dtype=int)
    return np.column_stack([2 * modes, 2 * modes + 1]).reshape(-1)


def _check_modes(modes, n, allow_empty=False):
    modes = [int(m) for m in np.atleast_1d(modes)]
    if not modes and not allow_empty:
        raise InvalidArgumentError("mode selection is empty")
    if len(set(modes)) != len(modes):
        raise InvalidArgumentError(f"repeated modes in {modes}")
    if modes and (min(modes) < 0 or max(modes) >= n):
        raise InvalidArgumentError(f"modes {modes} out of range for {n} modes")
    return modes


def partial_trace(s, keep):
    """Marginal on the modes ``keep``, in the order given."""
    keep = _check_modes(keep, s.n_modes)
    idx = _quadrature_index(keep)
    return GaussianState(s.mean[idx], s.cov[np.ix_(idx, idx)])


def min_uncertainty_eigenvalue(s):
    """Smallest eigenvalue of ``cov + i Omega``; negative means unphysical."""
    return float(np.linalg.eigvalsh(s.cov + 1j * omega(s.n_modes)).min())


def is_physical(s, tol=PHYSICALITY_TOL):
    return min_uncertainty_eigenvalue(s) >= -tol


def symplectic_eigenvalues(s):
    """Williamson spectrum of the covariance matrix.

    The eigenvalues of ``i Omega V`` come in pairs ``+-nu``.  With ``V = L L^T``
    they coincide with those of the Hermitian matrix ``i L^T Omega L``, which
    ``eigvalsh`` resolves to full precision even for nearly pure states.
    """
    if not is_physical(s):
        raise PhysicalityError(
            f"covariance violates the uncertainty relation "
            f"(min eigenvalue {min_uncertainty_eigenvalue(s):.3e})"
        )
    n = s.n_modes
    try:
        chol = np.linalg.cholesky(s.cov)
        ev = np.linalg.eigvalsh(1j * chol.T @ omega(n) @ chol)
    except np.linalg.LinAlgError:
        ev = np.linalg.eigvals(1j * omega(n) @ s.cov).real
    nu = np.sort(np.abs(ev))[::-1][::2]
    return SymplecticSpectrum(np.maximum(nu, 1.0))


def mode_photons(s):
    """Mean photon number of each mode."""
    d = np.diag(s.cov).reshape(-1, 2).sum(axis=1)
    m2 = (s.mean**2).reshape(-1, 2).sum(axis=1)
    return (d - 2) / 4 + m2 / 2


def mean_photons(s):
    """Total mean photon number ``(tr V - 2n)/4 + |d|^2/2``."""
    return float((np.trace(s.cov) - 2 * s.n_modes) / 4 + s.mean @ s.mean / 2)


# random probes


def random_passive(n, rng):
    """Haar-random passive (orthogonal and symplectic) transformation."""
    if n == 1:
        u = np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    else:
        u = unitary_group.rvs(n, random_state=rng)
    x, y = u.real, u.imag
    blocks = np.block([[x, -y], [y, x]])
    # xxpp -> interleaved
    order = np.empty(2 * n, dtype=int)
    order[0::2] = np.arange(n)
    order[1::2] = n + np.arange(n)
    return blocks[np.ix_(order, order)]


def _squeezer(r):
    return np.diag(np.exp(np.column_stack([r, -r]).reshape(-1)))


def _solve_scale(energy_at, target, what):
    """Bracket by doubling, then solve ``energy_at(t) = target`` for ``t >= 0``."""
    hi = 1.0
    while energy_at(hi) < target:
        hi *= 2
        if hi > 1e6:
            raise InvalidArgumentError(f"could not reach {what} energy {target}")
    # t = 0 is the vacuum; pin it so rounding cannot spoil the bracket
    def excess(t):
        return (energy_at(t) if t > 0 else 0.0) - target

    return brentq(excess, 0.0, hi, xtol=1e-15, rtol=1e-15, maxiter=500)


def random_gaussian(rng, n_modes, energy, signal_modes=None, mixed=False, displaced=None):
    """Random Gaussian state whose ``signal_modes`` carry ``energy`` photons in total.

    The state is ``O1 Z(t r) O2`` applied to a thermal state with occupations
    ``t N`` (``N = 0`` unless ``mixed``), displaced by ``t d``.  ``O1, O2`` are
    Haar-random passive maps and ``Z`` a per-mode squeezer; the common scale
    ``t`` is fixed by root finding so that the signal energy is hit exactly.
    """
    signal = list(range(n_modes)) if signal_modes is None else _check_modes(signal_modes, n_modes)
    if energy < 0:
        raise InvalidArgumentError("energy must be non-negative")
    if energy == 0:
        return vacuum(n_modes)
    o1 = random_passive(n_modes, rng)
    o2 = random_passive(n_modes, rng)
    r = rng.uniform(0.0, 1.5, n_modes)
    occ = rng.exponential(1.0, n_modes) if mixed else np.zeros(n_modes)
    if displaced is None:
        displaced = rng.random() < 0.5
    d = rng.normal(size=2 * n_modes) if displaced else np.zeros(2 * n_modes)
    idx = _quadrature_index(signal)

    def build(t):
        thermal = np.diag(np.repeat(1 + 2 * t * occ, 2))
        sym = o1 @ _squeezer(t * r) @ o2
        return sym @ thermal @ sym.T, t * d

    def signal_energy(t):
        cov, mean = build(t)
        return (np.trace(cov[np.ix_(idx, idx)]) - 2 * len(signal)) / 4 + mean[idx] @ mean[idx] / 2

    cov, mean = build(_solve_scale(signal_energy, energy, "signal"))
    return GaussianState(mean, cov)


def random_pure_probe(n_signal, energy, seed, n_memory=None):
    """Random pure Gaussian signal-memory probe.

    Signal modes come first.  The signal marginal carries ``energy`` photons
    per signal mode on average; ``n_memory`` defaults to ``n_signal``.
    """
    n_signal = _check_count(n_signal)
    n_memory = n_signal if n_memory is None else _check_count(n_memory)
    rng = np.random.default_rng(seed)
    return random_gaussian(rng, n_signal + n_memory, n_signal * energy, range(n_signal))
