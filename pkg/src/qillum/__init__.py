"""Stein exponents of quantum illumination with Gaussian probes.

Gaussian states live in the covariance-matrix picture (:mod:`qillum.symplectic`),
channels act on moments (:mod:`qillum.channels`), entropies and exponents are
in :mod:`qillum.entropic`, benchmark probes and randomized optimality checks
in :mod:`qillum.optimality`, and :mod:`qillum.fock` recomputes everything by
brute force on truncated Fock spaces.
"""

from .channels import (
    GaussianChannel,
    additive_noise,
    apply,
    apply_on_subsystem,
    attenuator,
    complementary_attenuator,
    compose,
    identity_channel,
    replacement_channel,
)
from .entropic import (
    ThermalReference,
    conditional_entropy,
    entropy,
    exponent_no_memory,
    exponent_with_memory,
    g,
    relative_entropy_vs_thermal,
)
from .errors import CutoffError, DimensionError, InvalidArgumentError, PhysicalityError
from .optimality import (
    IlluminationParams,
    VerificationReport,
    advantage_db,
    coherent_exponent,
    modes_required,
    tmsv_exponent,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from .symplectic import (
    GaussianState,
    SymplecticSpectrum,
    is_physical,
    make_coherent,
    make_thermal,
    make_tmsv,
    mean_photons,
    mode_photons,
    partial_trace,
    random_pure_probe,
    symplectic_eigenvalues,
    tensor,
    vacuum,
)

__version__ = "0.1.0"
