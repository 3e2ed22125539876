"""Shared independent oracles for the test suite.

Everything here is written directly from textbook definitions (explicit 2x2
constants, dense matrix algebra) so that library results are always checked
against a second code path.
"""

import numpy as np
import pytest

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}
P0 = np.array([[1, 0], [0, 0]], dtype=complex)
P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def pauli_matrix(letters: str) -> np.ndarray:
    """Dense matrix of a Pauli string; qubit 0 is the least significant bit."""
    m = np.ones((1, 1), dtype=complex)
    for ch in reversed(letters):
        m = np.kron(m, PAULI[ch])
    return m


def op_matrix(terms) -> np.ndarray:
    """Dense matrix of [(letters, coeff), ...]."""
    letters0 = terms[0][0]
    out = np.zeros((2 ** len(letters0),) * 2, dtype=complex)
    for letters, coeff in terms:
        out += coeff * pauli_matrix(letters)
    return out


def perm_matrix(mapping, n: int) -> np.ndarray:
    """Permutation unitary: bit at position i moves to position mapping[i]."""
    dim = 1 << n
    u = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        row = 0
        for b in range(n):
            if (col >> b) & 1:
                row |= 1 << mapping[b]
        u[row, col] = 1.0
    return u


def embed(gate: np.ndarray, qubits, n: int) -> np.ndarray:
    """Embed a 2^k x 2^k gate acting on the given qubits into n qubits."""
    k = len(qubits)
    dim = 1 << n
    u = np.zeros((dim, dim), dtype=complex)
    rest = [q for q in range(n) if q not in qubits]
    for col in range(dim):
        sub_in = 0
        for pos, q in enumerate(qubits):
            if (col >> q) & 1:
                sub_in |= 1 << (k - 1 - pos)  # first listed qubit = most significant
        base = col
        for q in qubits:
            base &= ~(1 << q)
        for sub_out in range(1 << k):
            amp = gate[sub_out, sub_in]
            if amp == 0:
                continue
            row = base
            for pos, q in enumerate(qubits):
                if (sub_out >> (k - 1 - pos)) & 1:
                    row |= 1 << q
            u[row, col] += amp
    return u


def rx_matrix(t):
    return np.cos(t / 2) * I2 - 1j * np.sin(t / 2) * X


def ry_matrix(t):
    return np.cos(t / 2) * I2 - 1j * np.sin(t / 2) * Y


def rz_matrix(t):
    return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])


CX_MAT = np.kron(P0, I2) + np.kron(P1, X)  # control = most significant
CZ_MAT = np.diag([1, 1, 1, -1]).astype(complex)
H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def crot_matrix(axis: str, t) -> np.ndarray:
    r = {"X": rx_matrix, "Y": ry_matrix, "Z": rz_matrix}[axis](t)
    return np.kron(P0, I2) + np.kron(P1, r)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    d = np.trace(b.conj().T @ a) / a.shape[0]
    if abs(d) < 1e-14:
        return False
    return np.linalg.norm(a - (d / abs(d)) * b) < tol


@pytest.fixture(scope="session")
def s4_subgroups():
    from twirlkit.permgroup import enumerate_subgroups

    return enumerate_subgroups(4)


@pytest.fixture(scope="session")
def s3_subgroups():
    from twirlkit.permgroup import enumerate_subgroups

    return enumerate_subgroups(3)
