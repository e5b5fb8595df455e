"""Minimal automata for the sets m*T + r, T the Thue-Morse set, in base 2^p."""

from tmstate.automata import Dfa, equivalent, isomorphic, minimize
from tmstate.classes import (
    build_minimal,
    complement_minimal,
    partition,
    state_complexity,
)
from tmstate.construction import build_projected
from tmstate.numeration import Params, Side, StateLabel, derive_params

__all__ = [
    "Dfa",
    "Params",
    "Side",
    "StateLabel",
    "build_minimal",
    "build_projected",
    "complement_minimal",
    "derive_params",
    "equivalent",
    "isomorphic",
    "minimize",
    "partition",
    "state_complexity",
]
