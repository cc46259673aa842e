"""Two-party protocol harness.

Both parties run in one process over a shared state vector, behind an
ownership-checked facade: the sender may only measure qubits it owns, the
receiver may only correct qubits it owns, and the receiver's corrections
are a pure function of the classical message bits. Nothing else crosses
the boundary, so erasing the sender's side after the message is emitted
cannot change the receiver's result.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .bell import BellOutcome, BellState, bell_pair, draw_branch, measure_bell_branches
from .pauli import PauliString
from .qstate import StateVector, tensor, with_labels
from .teleport import (
    MAX_PROTOCOL_WIDTH,
    MAX_TABLE_WIDTH,
    ProtocolTranscript,
    _finish,
    _measurement_pairs,
    composed_correction,
    protocol_labels,
    teleport_branches,
)


class Role(Enum):
    SENDER = "sender"
    RECEIVER = "receiver"


class LocalityError(RuntimeError):
    """A party acted on a qubit it does not own."""


@dataclass(frozen=True)
class Party:
    role: Role
    owned: frozenset[str]

    def check_owns(self, qubits: Sequence[str]) -> None:
        missing = set(qubits) - self.owned
        if missing:
            raise LocalityError(
                f"{self.role.value} does not own {sorted(missing)}"
            )

    def measure_pair(
        self, state: StateVector, pair: tuple[str, str], rng: np.random.Generator
    ):
        self.check_owns(pair)
        return draw_branch(measure_bell_branches(state, pair), rng)

    def apply_correction(self, state: StateVector, correction: PauliString) -> StateVector:
        self.check_owns(correction.qubits)
        return correction.apply(state)


@dataclass(frozen=True)
class ClassicalMessage:
    """The 2n bits the sender transmits, in measurement order."""

    bits: str

    def __post_init__(self):
        if len(self.bits) % 2 or set(self.bits) - {"0", "1"}:
            raise ValueError(f"message must be an even-length bit string, got {self.bits!r}")

    @property
    def n(self) -> int:
        return len(self.bits) // 2

    def decode(self) -> tuple[BellState, ...]:
        return tuple(
            BellState.from_bits(self.bits[i : i + 2]) for i in range(0, len(self.bits), 2)
        )


def corrections_from_message(
    message: ClassicalMessage | str,
    resource: BellState = BellState.PSI_MINUS,
) -> PauliString:
    """The receiver's correction, computed from the message bits alone."""
    msg = message if isinstance(message, ClassicalMessage) else ClassicalMessage(message)
    _, _, bs = protocol_labels(msg.n)
    return composed_correction(msg.decode(), bs, resource)


def run_session(
    xi: StateVector,
    n: int,
    seed,
    resource: BellState = BellState.PSI_MINUS,
) -> ProtocolTranscript:
    """One seeded end-to-end session between the two parties."""
    if xi.n_qubits != n:
        raise ValueError(f"input has {xi.n_qubits} qubits, session width is {n}")
    if not 1 <= n <= MAX_PROTOCOL_WIDTH:
        raise ValueError(f"session width must be 1..{MAX_PROTOCOL_WIDTH}, got {n}")
    if seed is None:
        raise ValueError("a seed is required; sessions have no ambient randomness")
    rng = np.random.default_rng(seed)

    xs, ans, bs = protocol_labels(n)
    sender = Party(Role.SENDER, frozenset(xs) | frozenset(ans))
    receiver = Party(Role.RECEIVER, frozenset(bs))

    state = with_labels(xi, xs)
    for i in range(n, 0, -1):
        state = tensor(state, bell_pair(resource, ans[i - 1], bs[i - 1]))

    outcomes: list[BellOutcome] = []
    prob = 1.0
    for pair in _measurement_pairs(n):
        branch = sender.measure_pair(state, pair, rng)
        outcomes.append(branch.outcome)
        prob *= branch.probability
        state = branch.remainder

    # The sender's register is fully consumed; only these bits cross over.
    message = ClassicalMessage("".join(o.bits for o in outcomes))

    correction = corrections_from_message(message, resource)
    receiver.check_owns(correction.qubits)
    transcript = _finish(xi, tuple(outcomes), prob, state, resource, table=None)
    assert transcript.corrections == correction  # pure function of the message
    return transcript


def run_all_branches(xi: StateVector, n: int) -> list[ProtocolTranscript]:
    """Exhaustive two-party run: one transcript per outcome sequence."""
    if xi.n_qubits != n:
        raise ValueError(f"input has {xi.n_qubits} qubits, requested width {n}")
    if not 1 <= n <= MAX_TABLE_WIDTH:
        raise ValueError(f"branch enumeration supports 1..{MAX_TABLE_WIDTH} qubits, got {n}")
    return teleport_branches(xi)
