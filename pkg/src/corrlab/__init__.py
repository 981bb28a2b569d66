"""Bloch-representation toolkit for qudit-qubit states.

Conditional entropy minimization under local qubit measurements,
correlation-ellipsoid geometry and quantum discord estimation.
"""

from .basis import OperatorBasis, make_basis
from .discord import (
    DiscordResult,
    discord_exact,
    discord_quadratic_form,
    discord_weak,
    mutual_info_quadratic,
    mutual_information,
    sector_scan,
    transition_zone,
)
from .entropies import (
    EntropicForm,
    concavity_ratio,
    entropy_from_spectrum,
    entropy_of,
    from_name,
    quadratic,
    quadratic_entropy_bloch,
    qubit_entropy,
    qubit_entropy_prime,
    qubit_entropy_second,
    tsallis,
    von_neumann,
)
from .errors import ApproximationError, ValidationError
from .geometry import (
    CorrelationEllipsoid,
    correlation_ellipsoid,
    fibonacci_sphere,
    sample_surface,
)
from .linalg import (
    generalized_sym_eigen3,
    hermitian_eigen,
    svd_tall,
)
from .measurement import (
    conditional_entropy,
    conditional_entropy_batch,
    entropy_decrease,
    marginal_entropy,
    measurement_equivalent,
    post_measurement,
    povm_conditional_entropy,
    random_rank_one_povm,
    validate_povm,
)
from .optimize import (
    OptimizationResult,
    aligned_axes_decrease,
    aligned_axes_max,
    hessian_general,
    hessian_two_qubit,
    minimize_oracle,
    minimize_quadratic,
    minimize_weak_correlation,
)
from .states import (
    BlochDecomposition,
    check_positive,
    decompose,
    qubit_marginal,
    qudit_marginal,
    random_state,
    random_unitary,
    reconstruct,
    schmidt_pure,
    trace_out_a,
    trace_out_b,
    x_state,
    x_state_entries,
)

__version__ = "0.1.0"
