"""Compile NMR pulse sequences to two-spin unitaries and study the CNOT family they produce."""

from .catalog import AuditRecord, CatalogEntry, audit_catalog, audit_entry, builtin_catalog, lookup
from .dynamics import (
    CouplingDelay,
    HamiltonianParams,
    StateVector,
    apply_operator,
    coupling_delay,
    hamiltonian_unitary,
)
from .errors import (
    CatalogLookupError,
    NmrCnotError,
    NotCnotLike,
    NotNormal,
    ParseError,
    SingularInput,
    TranscriptionError,
    ZeroCoupling,
)
from .linalg import (
    EIGEN_TOL,
    EXACT_TOL,
    EigenSystem,
    Operator4,
    PauliAxis,
    PauliString,
    eigen_decompose,
    equal_up_to_global_phase,
    exp_i_theta_pauli,
    pauli_string_matrix,
    tensor_product,
)
from .pulses import Pulse, PulseSequence, evaluate_sequence, parse_sequence, pulse_unitary
from .similarity import PropertyCheck, SimilarityReport, check_similarity, find_conjugator
from .synthesis import (
    AxisConstraint,
    GateClassification,
    SequenceTemplate,
    classify_cnot_like,
    enumerate_family,
    phase_classes,
    select_realizable,
)

__version__ = "0.1.0"
