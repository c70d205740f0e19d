"""Extremal forms, vanishing spectra and the experiments table."""

from dqm.extremal.search import (
    GradedBasis,
    SpectrumReport,
    basis,
    extremal_form,
    form_id,
    normalise,
    proportional,
    verify_multiplicity,
)
from dqm.extremal.table import COLUMNS, experiments_table, table_cell, table_csv, table_json

__all__ = [
    "GradedBasis",
    "SpectrumReport",
    "basis",
    "extremal_form",
    "normalise",
    "proportional",
    "verify_multiplicity",
    "form_id",
    "experiments_table",
    "table_cell",
    "table_csv",
    "table_json",
    "COLUMNS",
]
