"""Super-regularized products over primes, prime ideals and closed points of curves."""

from .arith import PrecisionError, multiplicative_invariants, working_precision
from .dirichlet import DirichletCharacter, character_subsets, enumerate_characters
from .lfunctions import l_at_zero, l_taylor_at_zero, order_of_vanishing, principal_residue_b
from .numberfield import PRESETS as NUMBER_FIELDS, NumberFieldData, regprod_number_field
from .progressions import (
    ProgressionTarget,
    q_terms,
    r_coefficient,
    regprod_all_primes,
    regprod_progression,
)
from .report import RegProdReport, emit_report
from .series import TruncatedSeries

__version__ = "0.1.0"
