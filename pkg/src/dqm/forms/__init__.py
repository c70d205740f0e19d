"""The ring K[E, g, h] of quasi-modular forms, its families and u-expansions."""

from dqm.forms.families import SEQ_NAMES, delta, sequence
from dqm.forms.ops import NuResult, Unresolved, divides, evaluate, nu_infty, resultant_in_E
from dqm.forms.qmform import Grading, QMForm, grading_of

__all__ = [
    "QMForm",
    "Grading",
    "grading_of",
    "sequence",
    "delta",
    "SEQ_NAMES",
    "resultant_in_E",
    "divides",
    "evaluate",
    "nu_infty",
    "NuResult",
    "Unresolved",
]
