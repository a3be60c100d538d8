"""Tensorial entanglement monotones for two-qubit Schmidt states.

Pullback of the Fubini-Study tensor onto SU(2) x SU(2) orbits, inner products
on its tensor and symmetric powers, and quantum-estimation measurement counts.
"""
from .errors import BranchError, DomainError, EntangleTensorError, ResourceError, SingularPointError
from .estimation import (
    EstimationCurve,
    MeasureKind,
    invert_monotone_roots,
    measurement_at,
    measurements_closed,
    measurements_parametric,
    qfi_pure_fd,
    qfi_schmidt,
    sld_check,
)
from .monotones import (
    EtaSpectrum,
    MonotoneTable,
    epsilon_n,
    eta_spectrum,
    frobenius_inner,
    monotone_table,
    mu_n,
    sym_inner_bruteforce,
    sym_inner_closed,
    sym_reference_polynomial,
    tensor_power_inner_bruteforce,
)
from .permanent import permanent, permanent_naive, permanent_ryser
from .pullback import (
    OmegaBlocks,
    PullbackTensor,
    compute_pullback,
    decompose,
    eta_rank,
    fd_pullback_oracle,
    omega_blocks,
    schmidt_pullback,
)
from .qcore import (
    DensityOperator,
    GeneratorSet,
    PureState,
    density,
    expectation,
    kron,
    partial_trace,
    pauli_generators,
    schmidt_state,
)

__version__ = "0.1.0"
