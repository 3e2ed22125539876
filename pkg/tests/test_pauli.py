"""Pauli algebra: canonical form, norms, and commutation vs. dense oracles."""

import numpy as np
import pytest

from conftest import op_matrix, pauli_matrix
from twirlkit.pauli import (
    HermitianOp,
    PauliTerm,
    canonicalize,
    commutes,
    dense,
    format_op,
    frobenius_norm,
    ops_close,
    parse_op,
)


def test_canonicalize_merges_duplicates():
    op = canonicalize(4, [PauliTerm("ZIII", 0.5), PauliTerm("ZIII", 0.5)])
    assert op.terms == (PauliTerm("ZIII", 1.0),)


def test_canonicalize_cancels_to_zero():
    op = canonicalize(4, [PauliTerm("ZIII", 0.5), PauliTerm("ZIII", -0.5)])
    assert op.is_zero()


def test_canonicalize_merge_and_sort():
    op = canonicalize(2, [PauliTerm("XY", 0.3), PauliTerm("IX", 0.2), PauliTerm("XY", 0.1)])
    assert op.terms == (PauliTerm("IX", 0.2), PauliTerm("XY", 0.4))


def test_canonicalize_idempotent():
    rng = np.random.default_rng(0)
    letters = ["IX", "ZZ", "YI", "XY", "IX"]
    op = canonicalize(2, [PauliTerm(l, float(c)) for l, c in zip(letters, rng.normal(size=5))])
    assert HermitianOp.from_terms(2, op.terms) == op


def test_rejects_bad_letters_and_coeffs():
    with pytest.raises(ValueError):
        PauliTerm("XQ", 1.0)
    with pytest.raises(ValueError):
        PauliTerm("XX", float("nan"))
    with pytest.raises(ValueError):
        canonicalize(3, [PauliTerm("XX", 1.0)])


def test_frobenius_norm_single_term():
    op = canonicalize(4, [PauliTerm("ZIII", 1.0)])
    assert frobenius_norm(op) == pytest.approx(4.0, abs=1e-12)
    assert np.linalg.norm(pauli_matrix("ZIII")) == pytest.approx(4.0)


def test_frobenius_norm_zero_op():
    assert frobenius_norm(HermitianOp.zero(3)) == 0.0


def test_frobenius_norm_twirl_difference():
    # G - T[G] for G = Z0/2 averaged over all qubit positions
    op = canonicalize(4, [
        PauliTerm("ZIII", 0.375), PauliTerm("IZII", -0.125),
        PauliTerm("IIZI", -0.125), PauliTerm("IIIZ", -0.125),
    ])
    expected = np.linalg.norm(op_matrix([(t.letters, t.coeff) for t in op.terms]))
    assert expected == pytest.approx(np.sqrt(3.0), abs=1e-12)
    assert frobenius_norm(op) == pytest.approx(np.sqrt(3.0), abs=1e-10)


def test_norm_matches_dense_for_random_ops():
    rng = np.random.default_rng(42)
    for _ in range(200):
        n = int(rng.integers(1, 5))
        k = int(rng.integers(1, 6))
        terms = [
            PauliTerm("".join(rng.choice(list("IXYZ"), size=n)), float(rng.normal()))
            for _ in range(k)
        ]
        op = canonicalize(n, terms)
        assert frobenius_norm(op) == pytest.approx(
            float(np.linalg.norm(dense(op))), abs=1e-10
        )


def test_commutes_examples():
    assert commutes(PauliTerm("XZ", 1.0), PauliTerm("ZX", 1.0))
    assert not commutes(PauliTerm("XYZ", 1.0), PauliTerm("YZX", 1.0))
    assert commutes(PauliTerm("XYZ", 1.0), PauliTerm("III", 1.0))


def test_commutes_matches_dense_commutator():
    rng = np.random.default_rng(7)
    for _ in range(500):
        n = int(rng.integers(1, 5))
        a = "".join(rng.choice(list("IXYZ"), size=n))
        b = "".join(rng.choice(list("IXYZ"), size=n))
        ma, mb = pauli_matrix(a), pauli_matrix(b)
        dense_commute = np.linalg.norm(ma @ mb - mb @ ma) < 1e-10
        assert commutes(PauliTerm(a, 1.0), PauliTerm(b, 1.0)) == dense_commute


def test_dense_is_hermitian_and_matches_oracle():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        terms = [
            PauliTerm("".join(rng.choice(list("IXYZ"), size=n)), float(rng.normal()))
            for _ in range(3)
        ]
        op = canonicalize(n, terms)
        m = dense(op)
        assert np.linalg.norm(m - m.conj().T) < 1e-12
        ref = op_matrix([(t.letters, t.coeff) for t in op.terms]) if op.terms else np.zeros_like(m)
        assert np.allclose(m, ref, atol=1e-12)


def test_dense_dimension_cap():
    with pytest.raises(ValueError):
        dense(HermitianOp.from_terms(11, [PauliTerm("I" * 11, 1.0)]))


def test_textual_roundtrip():
    op = canonicalize(3, [PauliTerm("XIZ", -0.25), PauliTerm("IYI", 0.125)])
    text = format_op(op)
    assert text == "0.125*IYI + -0.25*XIZ"
    assert parse_op(3, text) == op
    assert parse_op(2, "0").is_zero()


def test_ops_close():
    a = canonicalize(2, [PauliTerm("XX", 0.5)])
    b = canonicalize(2, [PauliTerm("XX", 0.5 + 5e-13)])
    assert ops_close(a, b)
    assert not ops_close(a, a.scaled(2.0))
