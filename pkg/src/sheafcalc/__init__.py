"""Exact numerical calculus for rank-2 reflexive sheaves on smooth
projective threefolds with Picard-rank-one numerical data.

The package computes in exact rational arithmetic throughout: Chern-class
calculus and twisting, Euler characteristics by Riemann-Roch and by closed
forms, the curve/sheaf translation, c3 bounds and minimal-integer
thresholds, a provenance-tracking vanishing-inference engine, and
hypothesis-checked moduli smoothness reports.
"""

from .chow import (
    NumericalThreefold,
    binom_poly,
    chi_line_bundle,
    chi_structure_sheaf,
    h0_line_bundle,
    hypersurface,
)
from .errors import (
    InconsistentDataError,
    InternalCheckError,
    InvalidInputError,
    NoSuchSheafError,
    SheafCalcError,
)
from .euler import ChernInput, ExtLedger, chi_closed_form, chi_dual_formula, chi_rr, ext_constraints
from .bounds import (
    BoundReport,
    cy_genus_bound,
    p_threshold,
    quintic_h2_threshold,
    section_c3_bound,
    section_exists_rr,
    twist_derived_c3_bound,
    twisted_c3_bound,
)
from .moduli import (
    ModuliReport,
    all_reports,
    calabi_yau_moduli_report,
    ext2_vanishing_report,
    fano_moduli_report,
    fano_rational_curve_report,
    moduli_dimension,
    reflexive_moduli_report,
)
from .rational import Rat, as_rat, parse_rat, rat_str
from .serre import CurveData, GenusResult, c3_from_curve, genus_from_c3, sheaf_from_curve
from .sheaf import Rank2Sheaf
from .vanish import (
    ASSUMPTION_IDS,
    Assumption,
    Context,
    FactSet,
    Group,
    SheafExpr,
    infer,
    make_context,
    parse_assumption,
)

__version__ = "0.1.0"

__all__ = [
    "ASSUMPTION_IDS",
    "Assumption",
    "BoundReport",
    "ChernInput",
    "Context",
    "CurveData",
    "ExtLedger",
    "FactSet",
    "GenusResult",
    "Group",
    "InconsistentDataError",
    "InternalCheckError",
    "InvalidInputError",
    "ModuliReport",
    "NoSuchSheafError",
    "NumericalThreefold",
    "Rank2Sheaf",
    "Rat",
    "SheafCalcError",
    "SheafExpr",
    "all_reports",
    "as_rat",
    "binom_poly",
    "c3_from_curve",
    "calabi_yau_moduli_report",
    "chi_closed_form",
    "chi_dual_formula",
    "chi_line_bundle",
    "chi_rr",
    "chi_structure_sheaf",
    "cy_genus_bound",
    "ext2_vanishing_report",
    "ext_constraints",
    "fano_moduli_report",
    "fano_rational_curve_report",
    "genus_from_c3",
    "h0_line_bundle",
    "hypersurface",
    "infer",
    "make_context",
    "moduli_dimension",
    "p_threshold",
    "parse_assumption",
    "parse_rat",
    "quintic_h2_threshold",
    "rat_str",
    "reflexive_moduli_report",
    "section_c3_bound",
    "section_exists_rr",
    "sheaf_from_curve",
    "twist_derived_c3_bound",
    "twisted_c3_bound",
]
