"""Entropies of Gaussian states and the two illumination exponents (nats)."""

import math
from dataclasses import dataclass

import numpy as np

from .channels import apply, apply_on_subsystem, attenuator
from .errors import InvalidArgumentError
from .symplectic import _check_modes, mean_photons, partial_trace, symplectic_eigenvalues

PURE_CLIP = 1e-10


def g(n_mean):
    """Entropy of a thermal mode with ``n_mean`` photons, ``(N+1) ln(N+1) - N ln N``."""
    if n_mean < 0:
        raise InvalidArgumentError(f"g is defined for N >= 0, got {n_mean}")
    if n_mean == 0:
        return 0.0
    return n_mean * math.log1p(1.0 / n_mean) + math.log1p(n_mean)


def entropy(s):
    total = 0.0
    for nu in symplectic_eigenvalues(s).values:
        if nu > 1.0 + PURE_CLIP:
            total += g((nu - 1.0) / 2)
    return total


def conditional_entropy(s, subsystem_b):
    """``S(B|rest) = S(B rest) - S(rest)``."""
    b = _check_modes(subsystem_b, s.n_modes)
    rest = [i for i in range(s.n_modes) if i not in b]
    if not rest:
        raise InvalidArgumentError("conditioning system is empty")
    return entropy(s) - entropy(partial_trace(s, rest))


@dataclass(frozen=True)
class ThermalReference:
    """Product thermal state, ``-ln omega = a H + b I`` per mode."""

    n_modes: int
    n_mean: float

    def __post_init__(self):
        if self.n_mean < 0:
            raise InvalidArgumentError("reference photon number must be >= 0")

    @property
    def a(self):
        return math.log1p(1.0 / self.n_mean) if self.n_mean > 0 else math.inf

    @property
    def b(self):
        return math.log1p(self.n_mean)


def relative_entropy_vs_thermal(s, ref):
    """``S(s || ref) = -S(s) + a <H> + n b``; ``inf`` if ``ref`` is vacuum and ``s`` is not."""
    if s.n_modes != ref.n_modes:
        raise InvalidArgumentError(f"state has {s.n_modes} modes, reference {ref.n_modes}")
    photons = mean_photons(s)
    if ref.n_mean == 0:
        return 0.0 if photons <= 0 else math.inf
    return -entropy(s) + ref.a * photons + ref.n_modes * ref.b


def _check_illumination(eta, n_env):
    if not 0.0 < eta < 1.0:
        raise InvalidArgumentError(f"eta must lie in (0, 1), got {eta}")
    if not n_env > 0:
        raise InvalidArgumentError(f"background photon number must be > 0, got {n_env}")


def exponent_with_memory(probe, signal_modes, eta, n_env, per_mode=False):
    """Stein exponent ``S(rho_BM || omega_B x rho_M)`` with a quantum memory.

    The attenuator acts on ``signal_modes``; every other mode is memory.
    Returns nats in total, or per signal mode when ``per_mode``.
    """
    _check_illumination(eta, n_env)
    signal = _check_modes(signal_modes, probe.n_modes)
    n = len(signal)
    memory = [i for i in range(probe.n_modes) if i not in signal]
    if mean_photons(partial_trace(probe, signal)) <= 0:
        # a vacuum signal cannot be correlated with anything
        return 0.0
    out = apply_on_subsystem(attenuator(n, eta, n_env), probe, signal)
    ref = ThermalReference(n, (1 - eta) * n_env)
    s_b = partial_trace(out, signal)
    cond = entropy(out) - (entropy(partial_trace(out, memory)) if memory else 0.0)
    value = max(0.0, -cond + ref.a * mean_photons(s_b) + n * ref.b)
    return value / n if per_mode else value


def exponent_no_memory(probe, eta, n_env, per_mode=False):
    """Stein exponent ``S(Phi(rho_A) || omega_B)`` without a memory."""
    _check_illumination(eta, n_env)
    n = probe.n_modes
    if mean_photons(probe) <= 0:
        return 0.0
    out = apply(attenuator(n, eta, n_env), probe)
    value = max(0.0, relative_entropy_vs_thermal(out, ThermalReference(n, (1 - eta) * n_env)))
    return value / n if per_mode else value
