"""Correction factor algebra and token serialization."""
from __future__ import annotations

import numpy as np
import pytest

from teleportsim import PauliFactor, PauliString, computational_basis_state, parse_pauli_tokens
from teleportsim.pauli import canonical_factor


def test_op_counts():
    assert PauliFactor.I.op_count == 0
    assert PauliFactor.X.op_count == 1
    assert PauliFactor.Z.op_count == 1
    assert PauliFactor.ZX.op_count == 2


def test_from_pairs_drops_identities():
    p = PauliString.from_pairs([("b1", PauliFactor.I), ("b2", PauliFactor.X)])
    assert p.factors == (("b2", PauliFactor.X),)
    assert p.factor_for("b1") is PauliFactor.I
    assert p.op_count == 1


def test_repeated_qubit_rejected():
    with pytest.raises(ValueError, match="repeated"):
        PauliString((("b1", PauliFactor.X), ("b1", PauliFactor.Z)))


def test_stored_identity_rejected():
    with pytest.raises(ValueError, match="identity"):
        PauliString((("b1", PauliFactor.I),))


def test_apply_zx():
    zero = computational_basis_state(("q",), 0)
    p = PauliString.from_pairs([("q", PauliFactor.ZX)])
    assert p.apply(zero).amplitude("1") == 1.0


def test_apply_phase_scales_amplitudes():
    zero = computational_basis_state(("q",), 0)
    p = PauliString(phase=-1)
    assert p.apply(zero).amplitude("0") == -1.0


def test_matrix_respects_qubit_order():
    p = PauliString.from_pairs([("b2", PauliFactor.X)])
    m = p.matrix(("b1", "b2"))
    expected = np.kron(np.eye(2), PauliFactor.X.matrix)
    assert np.array_equal(m, expected)


def test_tokens_identity_and_phase():
    assert PauliString().tokens() == "I"
    assert PauliString(phase=-1).tokens() == "-1 I"
    p = PauliString.from_pairs([("b1", PauliFactor.Z), ("b2", PauliFactor.X)])
    assert p.tokens() == "Z@b1 X@b2"


@pytest.mark.parametrize(
    "text", ["I", "Z@b1", "X@b1 Z@b2", "-1 ZX@b1", "Z@b1 X@b1 Z@b2 X@b2"]
)
def test_token_round_trip(text):
    p = parse_pauli_tokens(text)
    assert parse_pauli_tokens(p.tokens()) == p


def test_parse_composes_same_qubit_right_to_left():
    # "X@b1 Z@b1" means apply Z first, then X: the matrix X Z = -ZX.
    p = parse_pauli_tokens("X@b1 Z@b1")
    assert p.factor_for("b1") is PauliFactor.ZX
    assert p.phase == pytest.approx(-1)
    q = parse_pauli_tokens("Z@b1 X@b1")
    assert q.factor_for("b1") is PauliFactor.ZX
    assert q.phase == pytest.approx(1)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError, match="bad correction token"):
        parse_pauli_tokens("Y@b1")
    with pytest.raises(ValueError, match="bad correction token"):
        parse_pauli_tokens("Xb1")


def test_canonical_factor_recognizes_phased_matrices():
    f, c = canonical_factor(1j * PauliFactor.X.matrix)
    assert f is PauliFactor.X
    assert c == pytest.approx(1j)
    with pytest.raises(ValueError, match="not a unit multiple"):
        canonical_factor(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
