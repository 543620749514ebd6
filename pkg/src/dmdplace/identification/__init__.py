"""
identification/__init__.py

Public API for data-driven identification.

DMD:
    - ShiftedSnapshots, DmdModel
    - build_shifted_snapshots, fit_dmd, reconstruct, energy_fraction, discrete_to_continuous
    - dominant_mode_shapes, tip_spectrum_comparison

Systems and Hankel matrices:
    - LtiSystem, random_stable_system
    - HankelSpec, markov_params, build_hankel_markov, build_output_hankel, choose_hankel_depth
    - observability_matrix, controllability_matrix, finite_gramians, gramian_sqrt
    - verify_spectrum_equivalence, run_equivalence_trials
"""

from .dmd import (
    DmdModel,
    ShiftedSnapshots,
    build_shifted_snapshots,
    discrete_to_continuous,
    dominant_mode_shapes,
    energy_fraction,
    fit_dmd,
    reconstruct,
    tip_spectrum_comparison,
)
from .systems import LtiSystem, random_stable_system
from .hankel import (
    EquivalenceReport,
    EquivalenceSummary,
    HankelSpec,
    build_hankel_markov,
    build_output_hankel,
    choose_hankel_depth,
    controllability_matrix,
    finite_gramians,
    gramian_sqrt,
    markov_params,
    observability_matrix,
    run_equivalence_trials,
    verify_spectrum_equivalence,
)

__all__ = [
    "DmdModel",
    "ShiftedSnapshots",
    "build_shifted_snapshots",
    "discrete_to_continuous",
    "dominant_mode_shapes",
    "energy_fraction",
    "fit_dmd",
    "reconstruct",
    "tip_spectrum_comparison",
    "LtiSystem",
    "random_stable_system",
    "EquivalenceReport",
    "EquivalenceSummary",
    "HankelSpec",
    "build_hankel_markov",
    "build_output_hankel",
    "choose_hankel_depth",
    "controllability_matrix",
    "finite_gramians",
    "gramian_sqrt",
    "markov_params",
    "observability_matrix",
    "run_equivalence_trials",
    "verify_spectrum_equivalence",
]
