"""Teleportation engines, correction-table derivation, and certification.

The sender holds the input register (x1..xn) and one half (a_i) of each
Bell pair; the receiver holds the other halves (b_i). Pairs are measured
in descending index order, (x_n, a_n) first. Each outcome's 2-bit code is
appended to the classical message in measurement order, and the receiver
applies one correction factor per b-qubit.

Two independent routes produce correction tables:

* the engine composes the fixed single-pair rule per outcome, and
* derive_corrections brute-forces every branch remainder against an
  informationally complete fiducial set and solves for the unique factor
  string, never assuming the composition.

certify_table diffs any two tables row by row.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .bell import BellOutcome, BellState, bell_pair, draw_branch, measure_bell_branches
from .pauli import PauliFactor, PauliString, parse_pauli_tokens
from . import reference
from .qstate import (
    StateVector,
    computational_basis_state,
    fidelity,
    make_state,
    random_state,
    reorder,
    tensor,
    with_labels,
)

MAX_PROTOCOL_WIDTH = 5   # sampled runs: 3N qubits must fit the register cap
MAX_TABLE_WIDTH = 4      # exhaustive enumeration and table derivation
FIDELITY_TOL = 1e-12

# Single-pair rule for a psi- resource: a Bell outcome on (x, a) leaves
# V|u> on b, with V below; every V is its own inverse up to phase, so the
# correction reuses the same factor.
PSI_MINUS_FACTORS: Mapping[BellState, PauliFactor] = {
    BellState.PSI_MINUS: PauliFactor.I,
    BellState.PSI_PLUS: PauliFactor.Z,
    BellState.PHI_MINUS: PauliFactor.X,
    BellState.PHI_PLUS: PauliFactor.ZX,
}

VERDICT_MATCH = "match"
VERDICT_PHASE = "phase_only_mismatch"
VERDICT_OPERATOR = "operator_mismatch"


class NoCorrectionError(RuntimeError):
    """No factor string maps a branch remainder back to the input."""


class AmbiguousCorrectionError(RuntimeError):
    """Multiple factor strings fit; the fiducial set is not informationally
    complete."""


def protocol_labels(n: int) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    """Canonical register labels (x1..xn, a1..an, b1..bn)."""
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    ans = tuple(f"a{i}" for i in range(1, n + 1))
    bs = tuple(f"b{i}" for i in range(1, n + 1))
    return xs, ans, bs


def outcome_sequences(n: int) -> Iterator[tuple[BellState, ...]]:
    """All 4^n outcome sequences in canonical (code-ascending) order."""
    return itertools.product(BellState, repeat=n)


@dataclass(frozen=True)
class CorrectionTable:
    """Correction per outcome sequence, keyed in measurement order."""

    n: int
    resource: BellState
    targets: tuple[str, ...]
    entries: Mapping[tuple[BellState, ...], PauliString]

    def __post_init__(self):
        expected = set(outcome_sequences(self.n))
        if set(self.entries) != expected:
            raise ValueError(
                f"table needs all {4 ** self.n} outcome sequences, got {len(self.entries)}"
            )
        for seq, corr in self.entries.items():
            if corr.op_count > 2 * self.n:
                raise ValueError(
                    f"entry {seq} uses {corr.op_count} single-qubit operations, "
                    f"bound is {2 * self.n}"
                )
            if not set(corr.qubits) <= set(self.targets):
                raise ValueError(f"entry {seq} touches qubits outside {self.targets}")

    def entry(self, kinds: Sequence[BellState]) -> PauliString:
        return self.entries[tuple(kinds)]

    def to_text(self) -> str:
        """One row per outcome sequence: 2n-bit code, then tokens."""
        lines = []
        for seq in outcome_sequences(self.n):
            code = "".join(k.bits for k in seq)
            lines.append(f"{code} {self.entries[seq].tokens()}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, n: int, resource: BellState) -> "CorrectionTable":
        _, _, bs = protocol_labels(n)
        entries = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            code, _, toks = line.partition(" ")
            if len(code) != 2 * n or set(code) - {"0", "1"}:
                raise ValueError(f"bad outcome code {code!r} for width {n}")
            seq = tuple(BellState.from_bits(code[i : i + 2]) for i in range(0, 2 * n, 2))
            entries[seq] = parse_pauli_tokens(toks)
        return cls(n, resource, bs, entries)


@dataclass(frozen=True)
class ProtocolTranscript:
    """Record of one protocol execution (sampled or enumerated)."""

    n: int
    resource: BellState
    outcomes: tuple[BellOutcome, ...]
    message: str
    corrections: PauliString
    bell_pairs_consumed: int
    single_qubit_ops: int
    final_fidelity: float
    residual_phase: complex
    branch_probability: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "resource": self.resource.value,
            "outcomes": [
                {"state": o.state.value, "pair": list(o.pair), "bits": o.bits}
                for o in self.outcomes
            ],
            "message": self.message,
            "corrections": self.corrections.tokens(),
            "bell_pairs_consumed": self.bell_pairs_consumed,
            "single_qubit_ops": self.single_qubit_ops,
            "final_fidelity": self.final_fidelity,
            "residual_phase": {
                "re": self.residual_phase.real,
                "im": self.residual_phase.imag,
            },
            "branch_probability": self.branch_probability,
        }


@functools.lru_cache(maxsize=None)
def base_factor_map(resource: BellState) -> Mapping[BellState, PauliFactor]:
    """Outcome -> correction factor for a single pair of the given kind.

    The psi- rule is pinned; any other resource kind is re-derived from
    scratch by the width-1 oracle.
    """
    if resource is BellState.PSI_MINUS:
        return dict(PSI_MINUS_FACTORS)
    table = derive_corrections(1, resource)
    return {kind: table.entry((kind,)).factor_for("b1") for kind in BellState}


def composed_correction(
    kinds: Sequence[BellState], targets: Sequence[str], resource: BellState
) -> PauliString:
    """Engine-route correction: one base factor per pair, composed.

    `kinds` is in measurement order (pair n first), `targets` is (b1..bn).
    """
    m = base_factor_map(resource)
    n = len(kinds)
    return PauliString.from_pairs((targets[i], m[kinds[n - 1 - i]]) for i in range(n))


def composed_table(n: int, resource: BellState = BellState.PSI_MINUS) -> CorrectionTable:
    """The engine's full table for width n."""
    _, _, bs = protocol_labels(n)
    entries = {
        seq: composed_correction(seq, bs, resource) for seq in outcome_sequences(n)
    }
    return CorrectionTable(n, resource, bs, entries)


def reference_table(n: int) -> CorrectionTable:
    """The shipped fixture table (widths 1 and 2, psi- resource only)."""
    rows = {1: reference.SINGLE_QUBIT_ROWS, 2: reference.TWO_QUBIT_ROWS}.get(n)
    if rows is None:
        raise ValueError(f"no reference table for width {n}")
    _, _, bs = protocol_labels(n)
    entries = {seq: parse_pauli_tokens(toks) for seq, toks in rows.items()}
    return CorrectionTable(n, BellState.PSI_MINUS, bs, entries)


def _initial_joint(xi: StateVector, resource: BellState) -> StateVector:
    n = xi.n_qubits
    xs, ans, bs = protocol_labels(n)
    state = with_labels(xi, xs)
    for i in range(n, 0, -1):
        state = tensor(state, bell_pair(resource, ans[i - 1], bs[i - 1]))
    return state


def _measurement_pairs(n: int) -> list[tuple[str, str]]:
    xs, ans, _ = protocol_labels(n)
    return [(xs[i], ans[i]) for i in range(n - 1, -1, -1)]


def enumerate_protocol_branches(
    xi: StateVector, resource: BellState = BellState.PSI_MINUS
) -> list[tuple[tuple[BellOutcome, ...], float, StateVector]]:
    """All 4^n branches as (outcomes, probability, receiver state)."""
    n = xi.n_qubits
    if not 1 <= n <= MAX_TABLE_WIDTH:
        raise ValueError(f"branch enumeration supports 1..{MAX_TABLE_WIDTH} qubits, got {n}")
    pairs = _measurement_pairs(n)
    out: list[tuple[tuple[BellOutcome, ...], float, StateVector]] = []

    def walk(state: StateVector, prefix: tuple[BellOutcome, ...], prob: float) -> None:
        if len(prefix) == n:
            out.append((prefix, prob, state))
            return
        for branch in measure_bell_branches(state, pairs[len(prefix)]):
            if branch.impossible:
                # Bell-resource branches are exactly uniform; hitting this
                # would falsify the protocol, not the input.
                raise RuntimeError(f"impossible branch {branch.outcome} in protocol enumeration")
            walk(branch.remainder, prefix + (branch.outcome,), prob * branch.probability)

    walk(_initial_joint(xi, resource), (), 1.0)
    return out


def _finish(
    xi: StateVector,
    outcomes: tuple[BellOutcome, ...],
    prob: float,
    receiver: StateVector,
    resource: BellState,
    table: CorrectionTable | None,
) -> ProtocolTranscript:
    n = xi.n_qubits
    _, _, bs = protocol_labels(n)
    kinds = tuple(o.state for o in outcomes)
    corr = table.entry(kinds) if table is not None else composed_correction(kinds, bs, resource)
    final = reorder(corr.apply(receiver), bs)
    target = with_labels(xi, bs)
    fid = fidelity(target, final)
    overlap = complex(np.vdot(target.amps, final.amps))
    residual = overlap / abs(overlap) if abs(overlap) > 0 else complex(0)
    return ProtocolTranscript(
        n=n,
        resource=resource,
        outcomes=outcomes,
        message="".join(o.bits for o in outcomes),
        corrections=corr,
        bell_pairs_consumed=n,
        single_qubit_ops=corr.op_count,
        final_fidelity=fid,
        residual_phase=residual,
        branch_probability=prob,
    )


def teleport_branches(
    xi: StateVector,
    resource: BellState = BellState.PSI_MINUS,
    table: CorrectionTable | None = None,
) -> list[ProtocolTranscript]:
    """Run every outcome branch exhaustively; one transcript per branch.

    `table` overrides the engine's composed corrections, letting an
    independently derived table be exercised by the same machinery.
    """
    return [
        _finish(xi, outcomes, prob, receiver, resource, table)
        for outcomes, prob, receiver in enumerate_protocol_branches(xi, resource)
    ]


def _teleport_sampled(
    xi: StateVector, rng, resource: BellState, table: CorrectionTable | None = None
) -> ProtocolTranscript:
    n = xi.n_qubits
    if not 1 <= n <= MAX_PROTOCOL_WIDTH:
        raise ValueError(f"protocol supports 1..{MAX_PROTOCOL_WIDTH} qubits, got {n}")
    if rng is None:
        raise ValueError("a seeded random generator is required")
    rng = np.random.default_rng(rng)
    state = _initial_joint(xi, resource)
    outcomes: list[BellOutcome] = []
    prob = 1.0
    for pair in _measurement_pairs(n):
        branch = draw_branch(measure_bell_branches(state, pair), rng)
        outcomes.append(branch.outcome)
        prob *= branch.probability
        state = branch.remainder
    return _finish(xi, tuple(outcomes), prob, state, resource, table)


def teleport_one(
    u: StateVector, resource: BellState = BellState.PSI_MINUS, rng=None
) -> ProtocolTranscript:
    """Teleport a single-qubit state over one Bell pair, sampling the outcome."""
    if u.n_qubits != 1:
        raise ValueError(f"teleport_one needs a 1-qubit state, got {u.n_qubits} qubits")
    return _teleport_sampled(u, rng, resource)


def teleport_two(
    phi: StateVector, rng=None, resource: BellState = BellState.PSI_MINUS
) -> ProtocolTranscript:
    """Teleport a two-qubit state, possibly entangled, over two Bell pairs."""
    if phi.n_qubits != 2:
        raise ValueError(f"teleport_two needs a 2-qubit state, got {phi.n_qubits} qubits")
    return _teleport_sampled(phi, rng, resource)


def teleport_n(
    xi: StateVector, rng=None, resource: BellState = BellState.PSI_MINUS
) -> ProtocolTranscript:
    """Teleport an n-qubit state over n Bell pairs, sampling each outcome."""
    return _teleport_sampled(xi, rng, resource)


# --- derivation oracle ------------------------------------------------------


def _fiducial_states(xs: tuple[str, ...]) -> list[StateVector]:
    """Informationally complete inputs: every basis state plus the n-fold
    |+> and |+i> products. Sufficient to pin the correction uniquely."""
    n = len(xs)
    states = [computational_basis_state(xs, i) for i in range(2 ** n)]
    plus = np.array([1, 1], dtype=complex)
    plus_i = np.array([1, 1j], dtype=complex)
    for single in (plus, plus_i):
        a = np.array([1], dtype=complex)
        for _ in range(n):
            a = np.kron(a, single)
        states.append(make_state(xs, a))
    return states


def _solve_correction(
    targets: tuple[str, ...],
    inputs: np.ndarray,
    remainders: np.ndarray,
    tol: float = 1e-9,
) -> tuple[PauliFactor, ...]:
    """Find the unique factor string mapping every remainder to its input.

    `inputs` and `remainders` are stacked amplitude rows, one per fiducial
    state, both in (b1..bn) bit order. Exactly one of the 4^n candidates
    must achieve fidelity 1 on every row.
    """
    n = len(targets)
    candidates = list(itertools.product(PauliFactor, repeat=n))
    mats = []
    for combo in candidates:
        m = np.array([[1.0 + 0j]])
        for f in combo:
            m = np.kron(m, f.matrix)
        mats.append(m)
    stacked = np.stack(mats)                                  # (4^n, dim, dim)
    applied = np.einsum("cij,fj->cfi", stacked, remainders)   # (4^n, F, dim)
    overlap = np.einsum("fi,cfi->cf", inputs.conj(), applied)
    fid = np.abs(overlap) ** 2
    hits = np.flatnonzero(np.all(fid >= 1 - tol, axis=1))
    if len(hits) == 0:
        raise NoCorrectionError(
            "no factor string restores the input on this branch; "
            "the protocol invariant is violated"
        )
    if len(hits) > 1:
        named = [candidates[h] for h in hits]
        raise AmbiguousCorrectionError(
            f"{len(hits)} factor strings fit ({named}); fiducial set is incomplete"
        )
    return candidates[hits[0]]


def derive_corrections(
    n: int,
    resource: BellState = BellState.PSI_MINUS,
    *,
    validation_states: int = 100,
    validation_seed: int = 0x5EED,
) -> CorrectionTable:
    """Derive the width-n correction table by exhaustive enumeration.

    For every outcome sequence the branch remainders of an informationally
    complete fiducial set are computed, and the unique correction is solved
    for; ambiguity or absence raises. The finished table is then validated
    on `validation_states` random inputs across every branch.
    """
    if not 1 <= n <= MAX_TABLE_WIDTH:
        raise ValueError(f"table derivation supports 1..{MAX_TABLE_WIDTH} qubits, got {n}")
    xs, _, bs = protocol_labels(n)
    fiducials = _fiducial_states(xs)
    inputs = np.stack([f.amps for f in fiducials])
    remainders: dict[tuple[BellState, ...], list[np.ndarray]] = {
        seq: [] for seq in outcome_sequences(n)
    }
    for f in fiducials:
        for outcomes, _, receiver in enumerate_protocol_branches(f, resource):
            kinds = tuple(o.state for o in outcomes)
            remainders[kinds].append(reorder(receiver, bs).amps)
    entries = {}
    for seq, rows in remainders.items():
        combo = _solve_correction(bs, inputs, np.stack(rows))
        entries[seq] = PauliString.from_pairs(zip(bs, combo))
    table = CorrectionTable(n, resource, bs, entries)
    _validate_table(table, resource, validation_states, validation_seed)
    return table


def _validate_table(
    table: CorrectionTable, resource: BellState, n_states: int, seed: int
) -> None:
    rng = np.random.default_rng(seed)
    xs, _, _ = protocol_labels(table.n)
    for _ in range(n_states):
        xi = random_state(xs, rng)
        for t in teleport_branches(xi, resource, table=table):
            if t.final_fidelity < 1 - FIDELITY_TOL:
                raise NoCorrectionError(
                    f"derived table fails validation on branch {t.message}: "
                    f"fidelity {t.final_fidelity}"
                )


# --- certification ----------------------------------------------------------


@dataclass(frozen=True)
class CertificationRow:
    code: str
    outcomes: tuple[str, ...]
    derived: str
    reference: str
    verdict: str

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "outcomes": list(self.outcomes),
            "derived": self.derived,
            "reference": self.reference,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class CertificationReport:
    """Row-by-row comparison of a derived table against a reference."""

    n: int
    rows: tuple[CertificationRow, ...]
    counts: Mapping[str, int]

    @property
    def all_match(self) -> bool:
        return self.counts[VERDICT_PHASE] == 0 and self.counts[VERDICT_OPERATOR] == 0

    def disagreements(self) -> tuple[CertificationRow, ...]:
        return tuple(r for r in self.rows if r.verdict == VERDICT_OPERATOR)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rows": [r.to_dict() for r in self.rows],
            "counts": dict(self.counts),
            "all_match": self.all_match,
        }


def certify_table(derived: CorrectionTable, ref: CorrectionTable) -> CertificationReport:
    """Compare two tables entry by entry.

    match: identical factors and phase. phase_only_mismatch: identical
    factors, different unit phase (physically the same correction).
    operator_mismatch: different factors; the tables disagree about what
    the receiver must do.
    """
    if derived.n != ref.n:
        raise ValueError(f"width mismatch: {derived.n} vs {ref.n}")
    rows = []
    counts = {VERDICT_MATCH: 0, VERDICT_PHASE: 0, VERDICT_OPERATOR: 0}
    for seq in outcome_sequences(derived.n):
        d, r = derived.entries[seq], ref.entries[seq]
        if dict(d.factors) != dict(r.factors):
            verdict = VERDICT_OPERATOR
        elif abs(d.phase - r.phase) < 1e-9:
            verdict = VERDICT_MATCH
        else:
            verdict = VERDICT_PHASE
        counts[verdict] += 1
        rows.append(
            CertificationRow(
                code="".join(k.bits for k in seq),
                outcomes=tuple(k.value for k in seq),
                derived=d.tokens(),
                reference=r.tokens(),
                verdict=verdict,
            )
        )
    return CertificationReport(derived.n, tuple(rows), counts)
