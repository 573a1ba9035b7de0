"""
Bell-CHSH and Bell teleportation inequalities.

This package contains the CHSH maximum of a channel state and the
teleportation-inequality machinery with its tau(D) search.
"""

from .bell_chsh import ChshSettings, chsh_value, beta_max, beta_oracle, optimal_chsh_settings
from .tele_bell import (
    AssignmentClass,
    BivalentAssignment,
    TeleSettings,
    bivalent_observable,
    classify,
    contraction_X,
    contraction_X_oracle,
    tele_value,
    tele_value_contracted,
    inner_max_over_bob,
    tau_lower_bound,
    condition_bell,
    condition_class1,
    condition_class23,
    class_bound_values,
    threshold_check,
    zukowski_settings,
    fidelity_bound_settings,
)
from .tau_search import TauResult, TauOptimizer, tau_max

__all__ = [
    "ChshSettings",
    "chsh_value",
    "beta_max",
    "beta_oracle",
    "optimal_chsh_settings",
    "AssignmentClass",
    "BivalentAssignment",
    "TeleSettings",
    "bivalent_observable",
    "classify",
    "contraction_X",
    "contraction_X_oracle",
    "tele_value",
    "tele_value_contracted",
    "inner_max_over_bob",
    "tau_lower_bound",
    "condition_bell",
    "condition_class1",
    "condition_class23",
    "class_bound_values",
    "threshold_check",
    "zukowski_settings",
    "fidelity_bound_settings",
    "TauResult",
    "TauOptimizer",
    "tau_max",
]
