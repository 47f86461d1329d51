"""Eigenvalues of dual Hermitian matrices and balance of dual unit gain graphs."""

from .dmat import DualMatrix, DualVector, dagger, dual_matmul, is_hermitian, mat_norm, vec_norm
from .errors import (
    ClusterPairingError,
    DisconnectedGraph,
    InconsistentSystem,
    InfinitesimalNotInvertible,
    NonImaginaryTranslation,
    NonUnitGain,
    NonUnitRotation,
    NotHermitian,
    RingMismatch,
)
from .gaingraph import (
    BalanceReport,
    ConfigScheme,
    Formation,
    UnitGainGraph,
    Violation,
    adjacency_laplacian,
    check_balance,
    cycle_spectrum_closed_form,
    gen_balanced_cycle,
    random_unit_dual,
    random_unit_dual_quaternion,
    spectral_compare,
    verify_reasonable,
)
from .ground import Ring
from .heig import GroundEigenDecomposition, complex_adjoint, eig_hermitian
from .ring import (
    DualNumber,
    DualScalar,
    Quaternion,
    dual_compare,
    dual_inv,
    dual_magnitude,
    dual_mul,
    make_rigid_motion,
)
from .smm import (
    DualEigenDecomposition,
    DualEigenPair,
    EigenCluster,
    charpoly_eval,
    cluster_eigenvalues,
    det_dual,
    dual_correction,
    smm_eig,
    supplement_matrix,
)

__version__ = "0.1.0"
