"""qubitlab: qubit state space, two-valued spin statistics, Bell correlations,
CHSH/no-signalling boxes, and the quoin guessing game."""

from .bell import (
    BellKind,
    JointProbabilities,
    bell_density,
    bell_vector,
    closed_form_joint,
    conditional_average,
    invariance_check,
    joint_probabilities,
    measurement_operator,
    plane_direction,
)
from .boxes import (
    BehaviorBox,
    ChshResult,
    chsh_value,
    conservation_filter,
    deterministic_box,
    lhv_max_chsh,
    no_signalling_check,
    pr_box,
    quantum_box,
    tsirelson_scan,
)
from .errors import (
    ConditioningError,
    DimensionError,
    DomainError,
    HermiticityError,
    InvalidStateError,
    QubitLabError,
)
from .hilbert import (
    ATOL_EXACT,
    ATOL_SCAN,
    PauliCoefficients,
    commutator,
    pauli_decompose,
    tensor,
)
from .measure import (
    OutcomeSample,
    SGSetup,
    expected_outcome,
    projection_probabilities,
    sample_outcomes,
)
from .quoin import (
    ClassicalBitsStrategy,
    GameRecord,
    MonteCarloSummary,
    QuoinMechanics,
    QuoinStrategy,
    RandomStrategy,
    enumerate_riggings,
    flip_pair,
    monte_carlo,
    play_game,
    verify_parity_theorem,
)
from .qubit import (
    ClassicalBitState,
    QubitState,
    bloch_roundtrip,
    classical_pure_path,
    gbit_dimension,
    su2_rotate,
    su2_rotation,
)
from .spinops import (
    SpinOperatorTriple,
    construct_lx_from_lz,
    construct_ly_from_lz,
    verify_pauli_embedding,
)

__version__ = "0.1.0"
