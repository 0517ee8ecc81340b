"""Exact computation of flagged skew Grothendieck polynomials by three
independent routes: a Jacobi-Trudi determinant over one-row series, direct
free-fermion Fock-space evaluation, and set-valued tableau enumeration."""

from .algebra import Poly, Ring, SeriesWindow, determinant, gen_binomial
from .errors import InternalError, UsageError, WindowError
from .genfun import GVariant, g_series, jt_determinant, jt_entry
from .groth import MethodReport, OperatorProgram, build_program, compare, \
    flagged_groth_fermionic, g_n_fermionic
from .shapes import SkewFlagged, coincidence_condition, inversion_sets, \
    is_vexillary, shape_and_flag, tableau_excess_bound
from .tableaux import enumerate_fsvt, ssyt_polynomial, tableaux_polynomial

__version__ = "0.1.0"

__all__ = [
    "GVariant",
    "InternalError",
    "MethodReport",
    "OperatorProgram",
    "Poly",
    "Ring",
    "SeriesWindow",
    "SkewFlagged",
    "UsageError",
    "WindowError",
    "build_program",
    "coincidence_condition",
    "compare",
    "determinant",
    "enumerate_fsvt",
    "flagged_groth_fermionic",
    "g_n_fermionic",
    "g_series",
    "gen_binomial",
    "inversion_sets",
    "is_vexillary",
    "jt_determinant",
    "jt_entry",
    "shape_and_flag",
    "ssyt_polynomial",
    "tableau_excess_bound",
    "tableaux_polynomial",
]
