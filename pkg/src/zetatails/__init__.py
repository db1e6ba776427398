"""High precision multiple zeta values, partial sums and tail-sum series."""

from .index_core import (
    IndexStats,
    SignedIndex,
    canonical_text,
    index_from_text,
    is_admissible,
    make_index,
)
from .harmonic_sums import PartialSumTable, harmonic, mhs, mhs_stream, zeta_partial
from .precision import (
    PrecisionContext,
    Real,
    alt_zeta_tail,
    alt_zeta_value,
    polylog,
    zeta_tail,
    zeta_value,
)
from .algebra import ConstantAtom, LinComb, Term, normalize, star_expand, star_expand_signed, stuffle
from .mzv import EvalResult, InadmissibleIndexError, ToleranceNotMetError, lincomb_numeric, mzv_numeric
from .tails import (
    CATALOG,
    SequenceSpec,
    TailSeriesSpec,
    abel_residual,
    closed_form,
    finite_symmetry_residual,
    tail_cubic_numeric,
    tail_quadratic_numeric,
    verify_formula,
    weighted_series_numeric,
)
from .corpus import IdentityRecord, VerificationReport, parse_corpus, verify_corpus
from .cli import main as run_cli

__all__ = [
    "CATALOG",
    "ConstantAtom",
    "EvalResult",
    "IdentityRecord",
    "IndexStats",
    "InadmissibleIndexError",
    "LinComb",
    "PartialSumTable",
    "PrecisionContext",
    "Real",
    "SequenceSpec",
    "SignedIndex",
    "TailSeriesSpec",
    "Term",
    "ToleranceNotMetError",
    "VerificationReport",
    "abel_residual",
    "alt_zeta_tail",
    "alt_zeta_value",
    "canonical_text",
    "closed_form",
    "finite_symmetry_residual",
    "harmonic",
    "index_from_text",
    "is_admissible",
    "lincomb_numeric",
    "make_index",
    "mhs",
    "mhs_stream",
    "mzv_numeric",
    "normalize",
    "parse_corpus",
    "polylog",
    "run_cli",
    "star_expand",
    "star_expand_signed",
    "stuffle",
    "tail_cubic_numeric",
    "tail_quadratic_numeric",
    "verify_corpus",
    "verify_formula",
    "weighted_series_numeric",
    "zeta_partial",
    "zeta_tail",
    "zeta_value",
]

__version__ = "0.1.0"
