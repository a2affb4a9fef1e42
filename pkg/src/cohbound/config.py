"""Numeric tolerances and size caps shared by every module.

There is a single mutable ``config`` instance so that tolerance policy
lives in one place. Tests that need to tighten or loosen a knob mutate
it and restore it afterwards.
"""

from dataclasses import dataclass


@dataclass
class Config:
    # structural validation of states: hermiticity, trace, schmidt norm
    structural_tol: float = 1e-10
    # amplitude vectors further than this from unit norm are rejected
    # instead of renormalized
    norm_input_tol: float = 1e-6
    # coherences below this are treated as exactly zero (term dropping)
    zero_tol: float = 1e-12
    # slack granted when checking bound applicability conditions
    condition_tol: float = 1e-9
    # scalar inequality slacks may round this far below zero
    slack_tol: float = 1e-12
    # dense pure states up to 2^14 amplitudes
    pure_qubit_cap: int = 14
    # dense density matrices up to 2^10 x 2^10
    density_qubit_cap: int = 10
    # brute-force ordering search cap
    ordering_search_cap: int = 8


config = Config()
