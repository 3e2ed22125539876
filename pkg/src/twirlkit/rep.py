"""Permutation-unitary representations and their action on Pauli operators.

The unitary for a permutation sigma maps |b_0 ... b_{n-1}> to the basis state
whose bit at position sigma(i) is b_i, i.e. the qubit at position i moves to
position sigma(i).  Conjugation by such a unitary acts on Pauli strings purely
symbolically (letters move, no phase), which is what the twirl engine uses;
the dense path exists as a test oracle and for the encoding verifier.
"""

from __future__ import annotations

import numpy as np

from .pauli import HermitianOp, PauliTerm
from .permgroup import Permutation, Subgroup

_AXIS_GENERATOR = {
    "RX": np.array([[0, 1], [1, 0]], dtype=complex),
    "RY": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "RZ": np.array([[1, 0], [0, -1]], dtype=complex),
}


def perm_unitary_dense(sigma: Permutation) -> np.ndarray:
    """Dense 2^n x 2^n permutation matrix for sigma (n <= 10)."""
    n = sigma.n
    if n > 10:
        raise ValueError(f"dense form limited to n <= 10, got n={n}")
    dim = 1 << n
    rows = np.zeros(dim, dtype=np.int64)
    for i in range(dim):
        j = 0
        for b in range(n):
            if (i >> b) & 1:
                j |= 1 << sigma(b)
        rows[i] = j
    u = np.zeros((dim, dim), dtype=complex)
    u[rows, np.arange(dim)] = 1.0
    return u


def conjugate_pauli(sigma: Permutation, t: PauliTerm) -> PauliTerm:
    """U_sigma P U_sigma^dag: the letter at position i moves to sigma(i)."""
    if sigma.n != t.n:
        raise ValueError("size mismatch")
    letters = ["I"] * t.n
    for i, ch in enumerate(t.letters):
        letters[sigma(i)] = ch
    return PauliTerm("".join(letters), t.coeff)


def conjugate_op(sigma: Permutation, op: HermitianOp) -> HermitianOp:
    return HermitianOp.from_terms(op.n, [conjugate_pauli(sigma, t) for t in op.terms])


def _rotation(axis: str, angle: float) -> np.ndarray:
    g = _AXIS_GENERATOR[axis]
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * g


def angle_encoding_unitary(axis: str, x: np.ndarray) -> np.ndarray:
    """Tensor product of identical single-qubit rotations, one angle per qubit."""
    if axis not in _AXIS_GENERATOR:
        raise ValueError(f"unsupported encoding kind: {axis!r}")
    u = np.ones((1, 1), dtype=complex)
    for xi in reversed(x):
        u = np.kron(u, _rotation(axis, float(xi)))
    return u


def verify_induced_rep(
    n: int,
    subgroup: Subgroup,
    encoding: str = "RX",
    trials: int = 20,
    tol: float = 1e-10,
    seed: int = 0,
) -> bool:
    """Check U_init(phi(s, x)) == U_s U_init(x) U_s^dag for random data vectors.

    phi(s, x) permutes the entries of x by sigma: entry i lands at sigma(i).
    Holds for any rotation axis because the encoding is a tensor product of
    identical single-qubit factors.
    """
    if encoding not in _AXIS_GENERATOR:
        raise ValueError(f"unsupported encoding kind: {encoding!r}")
    if subgroup.n != n:
        raise ValueError("subgroup size does not match n")
    rng = np.random.default_rng(seed)
    units = {s: perm_unitary_dense(s) for s in subgroup.sorted_elements()}
    for _ in range(trials):
        x = rng.uniform(0.0, 2.0 * np.pi, size=n)
        u_x = angle_encoding_unitary(encoding, x)
        for s, u_s in units.items():
            phi_x = np.empty(n)
            for i in range(n):
                phi_x[s(i)] = x[i]
            lhs = angle_encoding_unitary(encoding, phi_x)
            rhs = u_s @ u_x @ u_s.conj().T
            if np.linalg.norm(lhs - rhs) >= tol:
                return False
    return True
