"""Complex Hadamard matrices and the equiangular tight frames they give.

Exact constructions over roots of unity are certified in cyclotomic
integer arithmetic; parametric and design-induced matrices are verified
in floating point against explicit tolerances.
"""

__version__ = "0.1.0"

from ._accel import USE_NUMBA, backend_name
from .designs import (
    Design,
    induce_chm,
    induced_scalar,
    paley_design,
    skew_to_selfadjoint_chm,
    verify_design,
)
from .frames import (
    AnalysisMatrix,
    FrameParams,
    GramMatrix,
    SignatureMatrix,
    frame_dim,
    frame_vectors,
    gow_square_check,
    gram_matrix,
    hadamard_from_signature,
    negate,
    parseval_identity_check,
    sic_feasibility,
    signature_check,
    signature_from_hadamard,
    two_eigenvalue_check,
    verify_projection,
)
from .lift import (
    CatalogEntry,
    ParamGrid,
    block_lift,
    butson_seed,
    catalog,
    fourier,
    free_param_count,
    parametric_block_lift,
    pth_root_signature,
)
from .matrix import (
    ExactMatrix,
    HadamardCert,
    VerificationReport,
    certify_hadamard,
    dephase,
    gram_product,
    hermitian_eigen,
    is_hadamard,
    is_self_adjoint,
    tensor,
    to_complex,
)
from .scalar import (
    CycInt,
    RootOfUnity,
    UnitComplex,
    cyc_add,
    cyc_is_zero,
    cyc_mul,
    cyclotomic_poly,
    root_to_complex,
)
