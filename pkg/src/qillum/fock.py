"""Brute-force oracle on truncated Fock spaces.

States and channels are dense matrices; every quantity is recomputed
spectrally without touching the covariance-matrix formulas, so the two
routes can be compared against each other.

Channels are realised by their Stinespring dilation: the signal meets one
half of a two-mode squeezed environment on a beam splitter, and the
unwanted outputs are traced away.  The beam splitter conserves the total
photon number of the two modes it couples, so it is assembled from exact
per-sector blocks and the output cutoff grows to ``d_in + d_env - 1``.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import prod

import numpy as np
from scipy import linalg, sparse
from scipy.optimize import brentq
from scipy.sparse.csgraph import connected_components
from scipy.special import gammainc

from .errors import CutoffError, DimensionError, InvalidArgumentError

DEFICIT_TOL = 1e-8
SPECTRAL_FLOOR = 1e-14
SUPPORT_TOL = 1e-10
MAX_CUTOFF = 512
MAX_DIM = 4096

__all__ = [
    "FockOperator",
    "annihilation",
    "thermal_cutoff",
    "coherent_cutoff",
    "fock_vacuum",
    "fock_number",
    "fock_coherent",
    "fock_thermal",
    "fock_tmsv",
    "fock_tensor",
    "partial_trace_fock",
    "permute_modes",
    "resize_fock",
    "beam_splitter",
    "apply_attenuator_fock",
    "apply_complementary_fock",
    "entropy_fock",
    "relative_entropy_fock",
    "conditional_entropy_fock",
    "mean_photons_fock",
    "fock_moments",
    "random_density_matrix",
    "random_fock_probe",
    "exponent_with_memory_fock",
    "exponent_no_memory_fock",
    "lemma1_gap",
    "verify_lemma1",
    "verify_non_gaussian",
    "gaussian_crosscheck",
]


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Dense operator on a truncated multi-mode oscillator space.

    ``data`` is indexed in row-major order over ``mode_dims``: the first mode
    is the slowest-varying index.  ``deficit`` records how much probability
    the truncation discarded (``1 - trace`` for states built here).
    """

    data: np.ndarray
    mode_dims: tuple
    kind: str = "state"
    deficit: float = 0.0

    def __post_init__(self):
        dims = tuple(int(d) for d in np.atleast_1d(self.mode_dims))
        if not dims or min(dims) < 1:
            raise DimensionError(f"invalid mode dimensions {dims}")
        data = np.array(self.data, dtype=complex)
        dim = prod(dims)
        if data.shape != (dim, dim):
            raise DimensionError(f"data shape {data.shape} does not match mode dims {dims}")
        if self.kind not in ("state", "unitary", "generic"):
            raise InvalidArgumentError(f"unknown operator kind {self.kind!r}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "mode_dims", dims)
        object.__setattr__(self, "deficit", float(self.deficit))

    @property
    def dim(self):
        return self.data.shape[0]

    @property
    def n_modes(self):
        return len(self.mode_dims)

    @property
    def trace(self):
        return float(np.trace(self.data).real)

    def is_valid(self, tol=1e-10, deficit_tol=DEFICIT_TOL):
        """Check the invariants appropriate to ``kind``."""
        if self.kind == "unitary":
            eye = np.eye(self.dim)
            return bool(np.allclose(self.data @ self.data.conj().T, eye, atol=1e-8, rtol=0))
        if self.kind == "generic":
            return True
        if not np.allclose(self.data, self.data.conj().T, atol=tol, rtol=0):
            return False
        if np.linalg.eigvalsh(self.data).min() < -tol:
            return False
        tr = self.trace
        return 1.0 - deficit_tol <= tr <= 1.0 + tol


def annihilation(d):
    """Truncated annihilation operator on ``d`` Fock levels."""
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1)


def _embed(op, mode, dims):
    left = prod(dims[:mode])
    right = prod(dims[mode + 1:])
    return np.kron(np.kron(np.eye(left), op), np.eye(right))


def thermal_cutoff(n_mean, tol=DEFICIT_TOL):
    """Smallest cutoff whose discarded thermal tail is below ``tol``.

    The same rule serves two-mode squeezed vacua, whose Schmidt weights are
    the thermal distribution of either marginal.
    """
    if n_mean < 0:
        raise InvalidArgumentError("mean photon number must be non-negative")
    if n_mean == 0:
        return 2
    ratio = n_mean / (n_mean + 1.0)
    d = int(np.ceil(np.log(tol) / np.log(ratio)))
    while ratio**d >= tol:
        d += 1
    d = max(2, d)
    if d > MAX_CUTOFF:
        raise CutoffError(
            f"thermal occupation {n_mean:g} needs cutoff {d} > {MAX_CUTOFF}; "
            "reduce the photon number",
        )
    return d


def coherent_cutoff(alpha, tol=DEFICIT_TOL):
    lam = abs(alpha) ** 2
    d = 2
    while lam > 0 and gammainc(d, lam) >= tol:
        d += 1
        if d > MAX_CUTOFF:
            raise CutoffError(f"|alpha|^2 = {lam:g} needs cutoff above {MAX_CUTOFF}")
    return d


def _check_deficit(deficit, tol, suggested, what):
    if deficit > tol:
        raise CutoffError(
            f"{what}: truncation deficit {deficit:.3e} exceeds {tol:.1e}; "
            f"use cutoff >= {suggested}",
            suggested=suggested,
        )


def fock_vacuum(d=2, n_modes=1):
    dims = (d,) * n_modes
    data = np.zeros((prod(dims), prod(dims)))
    data[0, 0] = 1.0
    return FockOperator(data, dims)


def fock_number(k, d):
    if not 0 <= k < d:
        raise InvalidArgumentError(f"level {k} outside cutoff {d}")
    data = np.zeros((d, d))
    data[k, k] = 1.0
    return FockOperator(data, (d,))


def fock_coherent(alpha, d, tol=DEFICIT_TOL):
    """Truncated coherent state; amplitudes are not renormalised."""
    if d < 2:
        raise InvalidArgumentError("cutoff must be at least 2")
    alpha = complex(alpha)
    amp = np.empty(d, dtype=complex)
    amp[0] = np.exp(-abs(alpha) ** 2 / 2)
    for k in range(1, d):
        amp[k] = amp[k - 1] * alpha / np.sqrt(k)
    deficit = float(gammainc(d, abs(alpha) ** 2)) if alpha != 0 else 0.0
    if deficit > tol:
        _check_deficit(deficit, tol, coherent_cutoff(alpha, tol), "coherent state")
    return FockOperator(np.outer(amp, amp.conj()), (d,), deficit=deficit)


def fock_thermal(n_mean, d, tol=DEFICIT_TOL):
    if d < 2:
        raise InvalidArgumentError("cutoff must be at least 2")
    if n_mean < 0:
        raise InvalidArgumentError("mean photon number must be non-negative")
    ratio = n_mean / (n_mean + 1.0)
    probs = ratio ** np.arange(d) / (n_mean + 1.0)
    deficit = ratio**d
    if deficit > tol:
        _check_deficit(deficit, tol, thermal_cutoff(n_mean, tol), "thermal state")
    return FockOperator(np.diag(probs), (d,), deficit=deficit)


def _tmsv_amplitudes(n_mean, d):
    z2 = n_mean / (n_mean + 1.0)
    return np.sqrt(1.0 - z2) * np.sqrt(z2) ** np.arange(d)


def fock_tmsv(energy, d, tol=DEFICIT_TOL):
    """Two-mode squeezed vacuum with ``energy`` photons in each arm."""
    if d < 2:
        raise InvalidArgumentError("cutoff must be at least 2")
    if energy < 0:
        raise InvalidArgumentError("energy must be non-negative")
    psi = np.zeros(d * d)
    psi[np.arange(d) * (d + 1)] = _tmsv_amplitudes(energy, d)
    deficit = (energy / (energy + 1.0)) ** d
    if deficit > tol:
        _check_deficit(deficit, tol, thermal_cutoff(energy, tol), "two-mode squeezed vacuum")
    return FockOperator(np.outer(psi, psi), (d, d), deficit=deficit)


def fock_tensor(*ops):
    data = ops[0].data
    dims = list(ops[0].mode_dims)
    kept = 1.0 - ops[0].deficit
    for op in ops[1:]:
        data = np.kron(data, op.data)
        dims.extend(op.mode_dims)
        kept *= 1.0 - op.deficit
    return FockOperator(data, tuple(dims), kind=ops[0].kind, deficit=1.0 - kept)


def permute_modes(rho, order):
    """Reorder tensor factors so that new mode ``j`` is old mode ``order[j]``."""
    order = list(order)
    n = rho.n_modes
    if sorted(order) != list(range(n)):
        raise DimensionError(f"{order} is not a permutation of {n} modes")
    dims = rho.mode_dims
    t = rho.data.reshape(dims + dims).transpose(order + [n + i for i in order])
    new_dims = tuple(dims[i] for i in order)
    d = prod(new_dims)
    return FockOperator(t.reshape(d, d), new_dims, kind=rho.kind, deficit=rho.deficit)


def partial_trace_fock(rho, keep):
    keep = [int(k) for k in np.atleast_1d(keep)]
    n = rho.n_modes
    if not keep or len(set(keep)) != len(keep) or min(keep) < 0 or max(keep) >= n:
        raise DimensionError(f"invalid mode selection {keep} for {n} modes")
    dims = rho.mode_dims
    t = rho.data.reshape(dims + dims)
    current = list(range(n))
    for mode in sorted(set(range(n)) - set(keep), reverse=True):
        pos = current.index(mode)
        t = np.trace(t, axis1=pos, axis2=pos + len(current))
        current.pop(pos)
    order = [current.index(k) for k in keep]
    m = len(current)
    t = t.transpose(order + [m + i for i in order])
    new_dims = tuple(dims[k] for k in keep)
    d = prod(new_dims)
    return FockOperator(t.reshape(d, d), new_dims, deficit=rho.deficit)


def resize_fock(rho, dims):
    """Zero-pad or crop each mode to the cutoffs ``dims``.

    Cropping discards the weight above the new cutoffs; it is meant for
    states whose tails there are negligible.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != rho.n_modes:
        raise DimensionError(f"cannot resize {rho.mode_dims} to {dims}")
    common = tuple(slice(0, min(a, b)) for a, b in zip(dims, rho.mode_dims)) * 2
    t = np.zeros(dims + dims, dtype=complex)
    t[common] = rho.data.reshape(rho.mode_dims * 2)[common]
    d = prod(dims)
    data = t.reshape(d, d)
    deficit = rho.deficit
    if rho.kind == "state":
        deficit = max(deficit, 1.0 - float(np.trace(data).real))
    return FockOperator(data, dims, kind=rho.kind, deficit=deficit)


def _beam_splitter_angle(eta):
    if not 0.0 <= eta <= 1.0:
        raise InvalidArgumentError(f"transmissivity {eta} outside [0, 1]")
    return float(np.arccos(np.sqrt(eta)))


def _generator(d):
    a = annihilation(d)
    return np.kron(a.T, a) - np.kron(a, a.T)


def beam_splitter(eta, d):
    """Two-mode beam splitter exp(theta (a^dag b - a b^dag)), cos(theta) = sqrt(eta).

    In the Heisenberg picture the first output is ``sqrt(eta) a + sqrt(1-eta) b``
    and the second is ``sqrt(eta) b - sqrt(1-eta) a``.  Sectors with total photon
    number ``>= d`` are cut by the truncation and are not exact.
    """
    theta = _beam_splitter_angle(eta)
    u = linalg.expm(theta * _generator(d))
    return FockOperator(u, (d, d), kind="unitary")


def _sector_block(theta, n):
    # basis |k, n-k>, k = photons in the first mode
    k = np.arange(n)
    g = np.zeros((n + 1, n + 1))
    g[k + 1, k] = np.sqrt((k + 1) * (n - k))
    g[k, k + 1] = -np.sqrt((k + 1) * (n - k))
    return linalg.expm(theta * g)


@lru_cache(maxsize=16)
def _dilation(eta, n_env, d_in, d_env):
    """Sparse isometry |a> -> sum_k c_k U(|a>|k>_E) |k>_E'.

    Rows are indexed by (A_out, E_out, E') with cutoffs (dt, dt, d_env).
    """
    theta = _beam_splitter_angle(eta)
    amps = _tmsv_amplitudes(n_env, d_env)
    dt = d_in + d_env - 1
    rows, cols, vals = [], [], []
    for n in range(dt):
        a_in = np.arange(max(0, n - d_env + 1), min(n, d_in - 1) + 1)
        if a_in.size == 0:
            continue
        block = _sector_block(theta, n)[:, a_in]
        a_out = np.arange(n + 1)
        e_out = n - a_out
        for j, a in enumerate(a_in):
            k = n - a
            rows.append((a_out * dt + e_out) * d_env + k)
            cols.append(np.full(n + 1, a))
            vals.append(amps[k] * block[:, j])
    w = sparse.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dt * dt * d_env, d_in),
    )
    w.eliminate_zeros()
    return w


def _factor(data):
    """Sparse ``X`` with ``data = X X^dag`` (diagonal inputs stay sparse)."""
    d = data.shape[0]
    diag = np.diag(data).real
    if not np.any(data - np.diag(np.diag(data))):
        idx = np.nonzero(diag > 0)[0]
        return sparse.coo_matrix(
            (np.sqrt(diag[idx]), (idx, np.arange(idx.size))), shape=(d, idx.size)
        )
    w, v = np.linalg.eigh(data)
    keep = w > 1e-15 * max(w.max(), 0.0)
    return sparse.coo_matrix(v[:, keep] * np.sqrt(w[keep]))


def _dilate(rho, signal, eta, n_env, d_env, keep):
    if not 0 <= signal < rho.n_modes:
        raise DimensionError(f"signal mode {signal} out of range")
    if d_env is None:
        d_env = thermal_cutoff(n_env)
    order = [signal] + [i for i in range(rho.n_modes) if i != signal]
    moved = permute_modes(rho, order) if signal else rho
    d_in = moved.mode_dims[0]
    rest = moved.mode_dims[1:]
    d_m = prod(rest)
    dt = d_in + d_env - 1
    out_dim = dt * d_m if keep == "signal" else dt * d_env
    if out_dim > MAX_DIM:
        raise CutoffError(
            f"channel output dimension {out_dim} exceeds {MAX_DIM}; reduce photon numbers"
        )

    x = _factor(moved.data)
    r = x.shape[1]
    a, m = np.divmod(x.row, d_m)
    x = sparse.csr_matrix((x.data, (a, m * r + x.col)), shape=(d_in, d_m * r))
    out = (_dilation(float(eta), float(n_env), d_in, d_env) @ x).tocoo()

    ae, kp = np.divmod(out.row, d_env)
    a_out, e_out = np.divmod(ae, dt)
    m, i = np.divmod(out.col, r)
    if keep == "signal":
        kept = a_out * d_m + m
        traced = (e_out * d_env + kp) * r + i
        n_traced = dt * d_env * r
    else:
        kept = e_out * d_env + kp
        traced = (a_out * d_m + m) * r + i
        n_traced = dt * d_m * r
    z = sparse.csr_matrix((out.data, (kept, traced)), shape=(out_dim, n_traced))
    data = (z @ z.conj().T).toarray()
    data = (data + data.conj().T) / 2
    deficit = max(0.0, 1.0 - float(np.trace(data).real))

    if keep == "signal":
        res = FockOperator(data, (dt,) + rest, deficit=deficit)
        if signal:
            res = permute_modes(res, list(np.argsort(order)))
        return res
    return FockOperator(data, (dt, d_env), deficit=deficit)


def _check_channel_args(eta, n_env):
    if not 0.0 <= eta <= 1.0:
        raise InvalidArgumentError(f"transmissivity {eta} outside [0, 1]")
    if n_env < 0:
        raise InvalidArgumentError("environment photon number must be non-negative")


def apply_attenuator_fock(rho, eta, n_env, d_env=None, signal=0):
    """Thermal attenuator on mode ``signal``; other modes are left untouched.

    The signal cutoff of the output is ``d_in + d_env - 1`` so that no photon
    scattered in from the environment is lost.
    """
    _check_channel_args(eta, n_env)
    return _dilate(rho, signal, eta, n_env, d_env, "signal")


def apply_complementary_fock(rho, eta, n_env, d_env=None):
    """Complementary channel: the environment outputs ``(E, E')`` of the dilation.

    ``rho`` must be single-mode.
    """
    _check_channel_args(eta, n_env)
    if rho.n_modes != 1:
        raise DimensionError("complementary channel acts on a single-mode input")
    return _dilate(rho, 0, eta, n_env, d_env, "env")


def _block_eigh(data):
    """Eigen-decomposition that exploits an exactly block-diagonal pattern."""
    data = (data + data.conj().T) / 2
    n_comp, labels = connected_components(sparse.csr_matrix(data != 0), directed=False)
    if n_comp == 1:
        w, v = np.linalg.eigh(data)
        return [(np.arange(data.shape[0]), w, v)]
    blocks = []
    for c in range(n_comp):
        idx = np.nonzero(labels == c)[0]
        w, v = np.linalg.eigh(data[np.ix_(idx, idx)])
        blocks.append((idx, w, v))
    return blocks


def _entropy_of_eigs(w):
    w = w[w > SPECTRAL_FLOOR]
    return float(-np.sum(w * np.log(w)))


def entropy_fock(rho):
    """Von Neumann entropy in nats; eigenvalues below the floor count as zero."""
    return sum(_entropy_of_eigs(w) for _, w, _ in _block_eigh(rho.data))


def relative_entropy_fock(rho, sigma):
    """Tr[rho (ln rho - ln sigma)] in nats; ``inf`` when the support check fails."""
    if rho.mode_dims != sigma.mode_dims:
        raise DimensionError(f"mode dims differ: {rho.mode_dims} vs {sigma.mode_dims}")
    cross = 0.0
    outside = 0.0
    for idx, w, v in _block_eigh(sigma.data):
        sub = rho.data[np.ix_(idx, idx)]
        weights = np.einsum("ij,ik,kj->j", v.conj(), sub, v).real
        # eigh is accurate relative to the scale of each decoupled block
        inside = w > SPECTRAL_FLOOR * max(w.max(), 0.0)
        cross += float(np.dot(weights[inside], np.log(w[inside])))
        outside += float(np.clip(weights[~inside], 0.0, None).sum())
    if outside > SUPPORT_TOL:
        return np.inf
    return -entropy_fock(rho) - cross


def conditional_entropy_fock(rho, subsystem):
    subsystem = sorted(int(i) for i in np.atleast_1d(subsystem))
    rest = [i for i in range(rho.n_modes) if i not in subsystem]
    if not subsystem or not rest:
        raise DimensionError("conditioning needs a proper non-empty subsystem")
    return entropy_fock(rho) - entropy_fock(partial_trace_fock(rho, rest))


def mean_photons_fock(rho, mode=None):
    """Mean photon number of one mode, or of all modes when ``mode`` is None."""
    modes = range(rho.n_modes) if mode is None else [mode]
    total = 0.0
    for k in modes:
        marginal = partial_trace_fock(rho, [k])
        total += float(np.dot(np.arange(marginal.dim), np.diag(marginal.data).real))
    return total


def fock_moments(rho):
    """First and second quadrature moments, vacuum covariance = identity."""
    dims = rho.mode_dims
    ops = []
    for k, d in enumerate(dims):
        a = annihilation(d)
        ops.append(_embed((a + a.T) / np.sqrt(2), k, dims))
        ops.append(_embed(-1j * (a - a.T) / np.sqrt(2), k, dims))
    rd = rho.data
    mean = np.array([np.trace(rd @ r).real for r in ops])
    n = len(ops)
    cov = np.empty((n, n))
    for i in range(n):
        ri = rd @ ops[i]
        for j in range(i, n):
            val = np.trace(ri @ ops[j]).real  # Re Tr[rho r_i r_j] = half the anticommutator
            cov[i, j] = cov[j, i] = 2 * (val - mean[i] * mean[j])
    return mean, cov


def random_density_matrix(d, rng, rank=None):
    """Wishart-distributed density matrix of the given rank."""
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    return FockOperator(rho / np.trace(rho).real, (d,))


def random_fock_probe(rng, energy, signal_cutoff=4, memory_cutoff=4, n_components=3):
    """Non-Gaussian signal-memory state with signal mean photon number ``energy``.

    A mixture of Haar-random pure vectors; signal amplitudes are tilted by
    ``lam**n`` and each vector renormalised, with ``lam`` solved for the energy.
    """
    if not 0 <= energy < signal_cutoff - 1:
        raise InvalidArgumentError(f"energy {energy} unreachable with cutoff {signal_cutoff}")
    shape = (n_components, signal_cutoff, memory_cutoff)
    vecs = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    weights = rng.dirichlet(np.ones(n_components))
    levels = np.arange(signal_cutoff)

    def tilted(log_lam):
        v = vecs * np.exp(log_lam * levels)[None, :, None]
        return v / np.linalg.norm(v.reshape(n_components, -1), axis=1)[:, None, None]

    def excess(log_lam):
        pops = (np.abs(tilted(log_lam)) ** 2).sum(axis=2)
        return float(weights @ (pops @ levels)) - energy

    if energy == 0:
        v = np.zeros_like(vecs)
        v[:, 0, :] = vecs[:, 0, :]
        v /= np.linalg.norm(v.reshape(n_components, -1), axis=1)[:, None, None]
    else:
        v = tilted(brentq(excess, -60.0, 60.0, xtol=1e-14, rtol=1e-15))
    flat = v.reshape(n_components, -1)
    data = np.einsum("i,ij,ik->jk", weights, flat, flat.conj())
    return FockOperator(data, (signal_cutoff, memory_cutoff))


def exponent_with_memory_fock(rho, eta, n_env, signal=0, d_env=None):
    """S(rho_BM || omega_B x rho_M) with the attenuator on mode ``signal``."""
    if mean_photons_fock(rho, signal) <= 0:
        return 0.0
    out = apply_attenuator_fock(rho, eta, n_env, d_env, signal=signal)
    # the reference needs support on every output level the probe can reach
    dt = out.mode_dims[signal]
    omega = apply_attenuator_fock(fock_vacuum(2), eta, n_env, dt)
    omega = resize_fock(omega, (dt,))
    if rho.n_modes == 1:
        return relative_entropy_fock(out, omega)
    rest = [i for i in range(rho.n_modes) if i != signal]
    ref = fock_tensor(omega, partial_trace_fock(rho, rest))
    ref = permute_modes(ref, list(np.argsort([signal] + rest)))
    return relative_entropy_fock(out, ref)


def exponent_no_memory_fock(rho, eta, n_env, d_env=None):
    if rho.n_modes != 1:
        raise DimensionError("memoryless oracle exponent takes a single-mode probe")
    return exponent_with_memory_fock(rho, eta, n_env, d_env=d_env)


# cross-checks against the covariance-matrix formulas


def verify_lemma1(seed, eta, n_env, cutoff=12, samples=50, tol=1e-5):
    """Check S(F(rho)||F(sigma)) = S(F(sigma)) - S(F(rho)) for the complementary channel F.

    ``rho`` is a random density matrix on ``cutoff`` levels and ``sigma`` the
    thermal state with the same mean photon number; the deviation measures
    truncation error only.
    """
    from .optimality import VerificationReport, sample_seed

    if samples < 1:
        raise InvalidArgumentError("samples must be positive")
    d_env = thermal_cutoff(n_env)
    gaps, seeds, worst_terms = [], [], None
    for i in range(samples):
        s = sample_seed(seed, i)
        rho = random_density_matrix(cutoff, np.random.default_rng(s))
        gap, terms = lemma1_gap(rho, eta, n_env, d_env)
        if not gaps or gap > max(gaps):
            worst_terms = terms
        gaps.append(gap)
        seeds.append(s)
    worst = int(np.argmax(gaps))
    return VerificationReport(
        theorem="lemma1",
        samples=samples,
        max_violation=float(gaps[worst]),
        worst_case_seed=int(seeds[worst]),
        params={"eta": eta, "N_B": n_env, "cutoff": cutoff},
        slack=tol,
        passed=bool(gaps[worst] <= tol),
        details={"env_cutoff": d_env, "worst_terms": worst_terms},
    )


def lemma1_gap(rho, eta, n_env, d_env=None):
    """Absolute deviation from the identity for one single-mode input ``rho``."""
    d_env = thermal_cutoff(n_env) if d_env is None else d_env
    n_mean = mean_photons_fock(rho)
    d_sigma = max(rho.dim, thermal_cutoff(n_mean))
    sigma = fock_thermal(n_mean, d_sigma)
    out_sigma = apply_complementary_fock(sigma, eta, n_env, d_env)
    out_rho = resize_fock(apply_complementary_fock(rho, eta, n_env, d_env), out_sigma.mode_dims)
    lhs = relative_entropy_fock(out_rho, out_sigma)
    s_sigma = entropy_fock(out_sigma)
    s_rho = entropy_fock(out_rho)
    rhs = s_sigma - s_rho
    terms = {"relative_entropy": lhs, "entropy_sigma": s_sigma, "entropy_rho": s_rho, "n_mean": n_mean}
    return abs(lhs - rhs), terms


def verify_non_gaussian(p, samples=100, seed=0, slack=1e-6, signal_cutoff=4, memory_cutoff=4):
    """Random non-Gaussian signal-memory probes never beat the squeezed vacuum.

    Only single-signal-mode parameters are supported; exponents are computed
    entirely in the Fock representation.
    """
    from .optimality import VerificationReport, sample_seed, tmsv_exponent

    if p.n_signal != 1:
        raise InvalidArgumentError("the Fock spot check handles one signal mode")
    bound = tmsv_exponent(p)
    d_env = thermal_cutoff(p.N_B)
    gaps, seeds = [], []
    for i in range(samples):
        s = sample_seed(seed, i)
        rho = random_fock_probe(np.random.default_rng(s), p.E, signal_cutoff, memory_cutoff)
        gaps.append(exponent_with_memory_fock(rho, p.eta, p.N_B, d_env=d_env) - bound)
        seeds.append(s)
    worst = int(np.argmax(gaps))
    max_violation = max(0.0, float(gaps[worst]))
    return VerificationReport(
        theorem="non_gaussian",
        samples=samples,
        max_violation=max_violation,
        worst_case_seed=int(seeds[worst]),
        params={"eta": p.eta, "E": p.E, "N_B": p.N_B, "n_signal": 1},
        slack=slack,
        passed=max_violation <= slack,
        details={
            "tmsv_exponent": float(bound),
            "max_gap": float(gaps[worst]),
            "signal_cutoff": signal_cutoff,
            "memory_cutoff": memory_cutoff,
        },
    )


CROSSCHECK_QUANTITIES = ("entropy", "conditional_entropy", "exponent_with_memory", "exponent_no_memory")


def gaussian_crosscheck(quantity, eta=0.3, energy=0.2, n_env=0.5):
    """Evaluate one quantity by the Gaussian formulas and by the Fock oracle.

    ``entropy`` is that of a thermal state with ``energy`` photons; the
    conditional entropy and the memory exponent use the squeezed vacuum
    with signal energy ``energy``; the memoryless exponent uses the coherent
    state with ``|alpha|^2 = energy``.
    """
    from . import entropic
    from .channels import apply_on_subsystem, attenuator
    from .symplectic import make_coherent, make_thermal, make_tmsv

    if quantity not in CROSSCHECK_QUANTITIES:
        raise InvalidArgumentError(f"unknown quantity {quantity!r}; choose from {CROSSCHECK_QUANTITIES}")
    cutoffs = {}
    if quantity == "entropy":
        d = thermal_cutoff(energy)
        cutoffs["state"] = d
        gauss = entropic.entropy(make_thermal(1, energy))
        oracle = entropy_fock(fock_thermal(energy, d))
    else:
        d_env = thermal_cutoff(n_env)
        cutoffs["environment"] = d_env
        if quantity == "exponent_no_memory":
            alpha = np.sqrt(energy)
            d = coherent_cutoff(alpha)
            gauss = entropic.exponent_no_memory(make_coherent([alpha]), eta, n_env)
            oracle = exponent_no_memory_fock(fock_coherent(alpha, d), eta, n_env, d_env)
        else:
            d = thermal_cutoff(energy)
            probe = fock_tmsv(energy, d)
            if quantity == "exponent_with_memory":
                gauss = entropic.exponent_with_memory(make_tmsv(energy), [0], eta, n_env)
                oracle = exponent_with_memory_fock(probe, eta, n_env, d_env=d_env)
            else:
                out = apply_on_subsystem(attenuator(1, eta, n_env), make_tmsv(energy), [0])
                gauss = entropic.conditional_entropy(out, [0])
                oracle = conditional_entropy_fock(apply_attenuator_fock(probe, eta, n_env, d_env), [0])
        cutoffs["signal"] = d
    return {
        "quantity": quantity,
        "eta": eta,
        "E": energy,
        "N_B": n_env,
        "gaussian": float(gauss),
        "fock": float(oracle),
        "gap": float(abs(gauss - oracle)),
        "cutoffs": cutoffs,
    }
