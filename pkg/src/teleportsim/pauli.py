"""Pauli correction algebra: per-qubit factors, labeled products, tokens.

A correction is a product of single-qubit factors from {I, X, Z, ZX},
each attached to one qubit, together with a unit scalar phase. ZX means
"apply X, then Z". Factors on distinct qubits commute, so a PauliString
stores at most one factor per qubit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .qstate import (
    IDENTITY_GATE,
    X_GATE,
    Z_GATE,
    ZX_GATE,
    SingleQubitGate,
    StateVector,
    apply_gate,
    make_state,
)


class PauliFactor(Enum):
    I = "I"
    X = "X"
    Z = "Z"
    ZX = "ZX"

    @property
    def gate(self) -> SingleQubitGate:
        return _GATES[self]

    @property
    def matrix(self) -> np.ndarray:
        return _GATES[self].matrix

    @property
    def op_count(self) -> int:
        # ZX costs two elementary single-qubit operations, I costs none.
        return _OP_COUNTS[self]


_GATES = {
    PauliFactor.I: IDENTITY_GATE,
    PauliFactor.X: X_GATE,
    PauliFactor.Z: Z_GATE,
    PauliFactor.ZX: ZX_GATE,
}
_OP_COUNTS = {PauliFactor.I: 0, PauliFactor.X: 1, PauliFactor.Z: 1, PauliFactor.ZX: 2}
_PHASE_TOKENS = {"+1": 1, "-1": -1, "+i": 1j, "-i": -1j, "1": 1, "i": 1j}


def canonical_factor(matrix: np.ndarray) -> tuple[PauliFactor, complex]:
    """Write a 2x2 matrix as phase * factor with factor in {I, X, Z, ZX}."""
    m = np.asarray(matrix, dtype=complex)
    for f in PauliFactor:
        ref = f.matrix
        k = int(np.argmax(np.abs(ref)))
        c = m.flat[k] / ref.flat[k]
        if abs(abs(c) - 1) < 1e-9 and np.allclose(m, c * ref, atol=1e-9):
            return f, complex(c)
    raise ValueError("matrix is not a unit multiple of a correction factor")


@dataclass(frozen=True)
class PauliString:
    """Phase times a product of factors on distinct qubits.

    `factors` keeps only non-identity entries, in a stable order; the
    identity correction is the empty product.
    """

    factors: tuple[tuple[str, PauliFactor], ...] = ()
    phase: complex = field(default=1.0 + 0j)

    def __post_init__(self):
        qubits = [q for q, _ in self.factors]
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"repeated qubit in factors {self.factors}")
        if any(f is PauliFactor.I for _, f in self.factors):
            raise ValueError("identity factors must be omitted, not stored")

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[str, PauliFactor]], phase: complex = 1.0
    ) -> "PauliString":
        kept = tuple((q, f) for q, f in pairs if f is not PauliFactor.I)
        return cls(kept, complex(phase))

    @property
    def op_count(self) -> int:
        return sum(f.op_count for _, f in self.factors)

    @property
    def qubits(self) -> tuple[str, ...]:
        return tuple(q for q, _ in self.factors)

    def factor_for(self, qubit: str) -> PauliFactor:
        for q, f in self.factors:
            if q == qubit:
                return f
        return PauliFactor.I

    def apply(self, state: StateVector) -> StateVector:
        out = state
        for q, f in self.factors:
            out = apply_gate(out, f.gate, q)
        if self.phase != 1:
            out = make_state(out.qubits, out.amps * self.phase)
        return out

    def matrix(self, qubit_order: Sequence[str]) -> np.ndarray:
        """Full operator on the given qubit ordering (first qubit = MSB)."""
        out = np.array([[self.phase]], dtype=complex)
        for q in qubit_order:
            out = np.kron(out, self.factor_for(q).matrix)
        return out

    def tokens(self) -> str:
        parts = []
        if self.phase != 1:
            for tok, val in (("-1", -1), ("+i", 1j), ("-i", -1j)):
                if abs(self.phase - val) < 1e-9:
                    parts.append(tok)
                    break
            else:
                raise ValueError(f"phase {self.phase} has no token form")
        parts.extend(f"{f.value}@{q}" for q, f in self.factors)
        if not self.factors:
            parts.append("I")
        return " ".join(parts)


def parse_pauli_tokens(text: str) -> PauliString:
    """Parse tokens like 'Z@b1 X@b2'. Tokens apply right-to-left; repeated
    factors on one qubit are composed and canonicalized, with the resulting
    sign folded into the phase. A leading +1/-1/+i/-i token sets the phase."""
    phase = complex(1.0)
    mats: dict[str, np.ndarray] = {}
    order: list[str] = []
    for tok in text.split():
        if tok in _PHASE_TOKENS:
            phase *= _PHASE_TOKENS[tok]
            continue
        if tok == "I":
            continue
        name, _, qubit = tok.partition("@")
        if not qubit or name not in PauliFactor.__members__:
            raise ValueError(f"bad correction token {tok!r}")
        if qubit not in mats:
            mats[qubit] = np.eye(2, dtype=complex)
            order.append(qubit)
        # Written left-to-right, applied right-to-left: accumulate on the right.
        mats[qubit] = mats[qubit] @ PauliFactor[name].matrix
    pairs = []
    for q in order:
        f, c = canonical_factor(mats[q])
        phase *= c
        if f is not PauliFactor.I:
            pairs.append((q, f))
    return PauliString(tuple(pairs), phase)
