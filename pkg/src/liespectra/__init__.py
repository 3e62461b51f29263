"""Joint spectra and weight-space decompositions for matrix Lie algebras.

The public surface is re-exported here; the CLI lives in `liespectra.cli`
and the HTTP service factory in `liespectra.service`.
"""

from .errors import (
    InputError,
    LieSpectraError,
    ToleranceError,
    UnsupportedError,
    VerificationError,
)
from .numeric import (
    DEFAULT_TOL,
    Subspace,
    ToleranceProfile,
    collect_rank_diagnostics,
)
from .lierep import (
    Character,
    IdealFlag,
    LieRep,
    bracket,
    build_rep,
    canonical_flag,
    character_space,
    is_nilpotent,
    is_solvable,
    jordan_holder_flag,
    restrict_to_ideal,
    show_characters,
)
from .fixtures import FIXTURES, fixture_generators, fixture_names, fixture_rep
from .koszul import boundary_matrix, homology_dims, verify_complex
from .weights import CheckResult, WeightTable, verify_weight_properties, weight_table
from .spectra import (
    SpectrumReport,
    joint_spectrum,
    slodkowski,
    verify_main_theorems,
)
from .modops import dual_rep, tensor_rep, verify_module_ops
from .documents import InputDocument, ReportDocument, canonical_text, parse_input
from .runner import COMMANDS, run

__version__ = "0.1.0"

__all__ = [
    "LieSpectraError",
    "InputError",
    "UnsupportedError",
    "ToleranceError",
    "VerificationError",
    "ToleranceProfile",
    "DEFAULT_TOL",
    "Subspace",
    "collect_rank_diagnostics",
    "Character",
    "LieRep",
    "IdealFlag",
    "bracket",
    "build_rep",
    "canonical_flag",
    "jordan_holder_flag",
    "character_space",
    "restrict_to_ideal",
    "is_nilpotent",
    "is_solvable",
    "show_characters",
    "FIXTURES",
    "fixture_names",
    "fixture_generators",
    "fixture_rep",
    "boundary_matrix",
    "verify_complex",
    "homology_dims",
    "WeightTable",
    "CheckResult",
    "weight_table",
    "verify_weight_properties",
    "SpectrumReport",
    "joint_spectrum",
    "slodkowski",
    "verify_main_theorems",
    "dual_rep",
    "tensor_rep",
    "verify_module_ops",
    "InputDocument",
    "ReportDocument",
    "parse_input",
    "canonical_text",
    "COMMANDS",
    "run",
    "__version__",
]
