"""cagalg: exact Chevalley and creation/annihilation-generator algebra toolkit.

Constructs the classical and q-deformed presentations of the special linear
enveloping algebras in both generator systems, the conversion maps between
them, matrix / tensor-square / occupation-number representations, and an
exact verification engine for every relation set.  All arithmetic is exact
(big rationals and multivariate rational functions); zero tests are
structural, never tolerance-based.
"""

from .scalars import Rational, Scalar
from .freealg import (
    FreeAlgebra, GenKind, GenSymbol, NCPoly, TensorPoly,
    bracket, star, tensor,
)
from .presentations import (
    CartanMatrix, Presentation, cartan_matrix, cartan_sum,
    classical_cag, classical_chevalley, quantum_cag, quantum_chevalley,
    weight_of,
)
from .morphisms import (
    CoproductMap, GenMap, apply_genmap,
    cag_from_chevalley_classical, cag_from_chevalley_quantum,
    chevalley_from_cag_classical, chevalley_from_cag_quantum,
    coproduct_chevalley, coproduct_on_cag,
)
from .matrep import (
    Matrix, MatrixRep, defining_rep_classical, eval_poly, merge_reps,
    pullback_rep, tensor_square_rep, vector_rep_quantum,
)
from .fock import FockModule, FockState, apply_cag, fock_matrix_rep, fock_module
from .verify import (
    VerificationReport, check_identity, probe_21d_range, round_trip_check,
    verify_classical_limit, verify_named_consequences, verify_presentation,
)

__version__ = "0.1.0"
