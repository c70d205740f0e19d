"""u-expansions: truncated series, the Carlitz module, Goss polynomials and
the expansions of the generators E, g, h."""

from dqm.useries.carlitz import AdditivePoly, carlitz_action, monic_polys, u_of_az
from dqm.useries.derivation import derive_series
from dqm.useries.eisenstein import BaseExpansions, ConsistencyError, base_expansions, cross_checks, eisenstein_gk
from dqm.useries.goss import GossTable, goss_polynomials
from dqm.useries.series import USeries

__all__ = [
    "USeries",
    "AdditivePoly",
    "carlitz_action",
    "u_of_az",
    "monic_polys",
    "GossTable",
    "goss_polynomials",
    "eisenstein_gk",
    "base_expansions",
    "cross_checks",
    "BaseExpansions",
    "ConsistencyError",
    "derive_series",
]
