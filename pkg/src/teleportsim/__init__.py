"""Seedable state-vector simulation and certification of Bell-pair
teleportation protocols with conditional Pauli corrections."""

from .qstate import (
    StateVector,
    SingleQubitGate,
    make_state,
    computational_basis_state,
    random_state,
    with_labels,
    tensor,
    apply_gate,
    reorder,
    fidelity,
    project_qubits,
    format_state_literal,
    parse_state_literal,
    StateFormatError,
)
from .bell import (
    BellState,
    BellOutcome,
    OutcomeBranch,
    bell_pair,
    measure_bell_branches,
    measure_bell_sample,
)
from .pauli import PauliFactor, PauliString, parse_pauli_tokens
from .teleport import (
    CorrectionTable,
    ProtocolTranscript,
    CertificationReport,
    teleport_one,
    teleport_two,
    teleport_n,
    teleport_branches,
    derive_corrections,
    certify_table,
    composed_table,
    reference_table,
    AmbiguousCorrectionError,
    NoCorrectionError,
)
from .harness import (
    Party,
    Role,
    ClassicalMessage,
    LocalityError,
    corrections_from_message,
    run_session,
    run_all_branches,
)
from .cli import CampaignConfig, CampaignReport, chi_square_uniform, load_state, run_campaign

__version__ = "0.1.0"

__all__ = [
    "StateVector",
    "SingleQubitGate",
    "make_state",
    "computational_basis_state",
    "random_state",
    "with_labels",
    "tensor",
    "apply_gate",
    "reorder",
    "fidelity",
    "project_qubits",
    "format_state_literal",
    "parse_state_literal",
    "StateFormatError",
    "BellState",
    "BellOutcome",
    "OutcomeBranch",
    "bell_pair",
    "measure_bell_branches",
    "measure_bell_sample",
    "PauliFactor",
    "PauliString",
    "parse_pauli_tokens",
    "CorrectionTable",
    "ProtocolTranscript",
    "CertificationReport",
    "teleport_one",
    "teleport_two",
    "teleport_n",
    "teleport_branches",
    "derive_corrections",
    "certify_table",
    "composed_table",
    "reference_table",
    "AmbiguousCorrectionError",
    "NoCorrectionError",
    "Party",
    "Role",
    "ClassicalMessage",
    "LocalityError",
    "corrections_from_message",
    "run_session",
    "run_all_branches",
    "CampaignConfig",
    "CampaignReport",
    "chi_square_uniform",
    "load_state",
    "run_campaign",
    "__version__",
]
