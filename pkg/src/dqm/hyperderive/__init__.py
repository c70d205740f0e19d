"""Hyperderivatives on K[E, g, h] through the Taylor homomorphism."""

from dqm.hyperderive.engine import TaylorEngine, engine_for, reset_engines, set_default_cache_dir
from dqm.hyperderive.operators import (
    EpsilonReport,
    HeckeCandidate,
    associated_coefficients,
    differential_exponent,
    dn,
    dn_many,
    dn_on_useries,
    hecke_candidates,
    partial_E,
    serre_partial,
    taylor_of,
)
from dqm.hyperderive.stages import StageState, stage_advance, stage_init, stages_for, taylor_h_E
from dqm.hyperderive.taylor import TaylorPoly, format_taylor

__all__ = [
    "TaylorPoly",
    "format_taylor",
    "TaylorEngine",
    "engine_for",
    "reset_engines",
    "set_default_cache_dir",
    "StageState",
    "stage_init",
    "stage_advance",
    "stages_for",
    "taylor_h_E",
    "dn",
    "dn_many",
    "taylor_of",
    "dn_on_useries",
    "serre_partial",
    "partial_E",
    "associated_coefficients",
    "differential_exponent",
    "EpsilonReport",
    "hecke_candidates",
    "HeckeCandidate",
]
