"""Dense statevector simulation for n <= 10 qubits.

Qubit k is the k-th least significant bit of the basis index.  All gate
kernels act on a batch of states at once (shape (M, 2^n)); the single-state
API wraps a batch of one.  Exact-exponential gates are applied through a
one-time eigendecomposition cached on the gate, then a phase multiply per
angle, so Monte Carlo sampling stays cheap.  Global phase is never tracked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .synth import Circuit, ExactGate, Instruction

_NORM_TOL = 1e-10


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def norm_error(self) -> float:
        return abs(float(np.sum(np.abs(self.amps) ** 2)) - 1.0)


def zero_state(n: int) -> StateVector:
    if n > 10:
        raise ValueError("simulator limited to n <= 10")
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0
    return StateVector(n, amps)


def _as_lookup(params) -> "_ParamLookup":
    return _ParamLookup(params)


class _ParamLookup:
    def __init__(self, params):
        self._params = params

    def __getitem__(self, symbol: int) -> float:
        try:
            if isinstance(self._params, Mapping):
                return float(self._params[symbol])
            return float(self._params[symbol])
        except (KeyError, IndexError):
            raise KeyError(f"parameter x{symbol} is not assigned") from None


def _axis(n: int, q: int) -> int:
    # batch axis 0, then qubit n-1 down to qubit 0
    return 1 + (n - 1 - q)


def _apply_rotation(amps: np.ndarray, n: int, kind: str, q: int, angles: np.ndarray) -> np.ndarray:
    m = amps.shape[0]
    moved = np.moveaxis(amps.reshape((m,) + (2,) * n), _axis(n, q), -1)
    shape = moved.shape
    flat = moved.reshape(m, -1, 2)
    a0, a1 = flat[:, :, 0], flat[:, :, 1]
    out = np.empty_like(flat)
    if kind == "RZ":
        phase = np.exp(-0.5j * angles)[:, None]
        out[:, :, 0] = phase * a0
        out[:, :, 1] = np.conj(phase) * a1
    else:
        c = np.cos(angles / 2)[:, None]
        s = np.sin(angles / 2)[:, None]
        if kind == "RX":
            out[:, :, 0] = c * a0 - 1j * s * a1
            out[:, :, 1] = -1j * s * a0 + c * a1
        elif kind == "RY":
            out[:, :, 0] = c * a0 - s * a1
            out[:, :, 1] = s * a0 + c * a1
        else:
            raise ValueError(f"unknown rotation kind: {kind!r}")
    return np.moveaxis(out.reshape(shape), -1, _axis(n, q)).reshape(m, -1)


def _apply_cx(amps: np.ndarray, n: int, control: int, target: int) -> np.ndarray:
    m = amps.shape[0]
    moved = np.moveaxis(
        amps.reshape((m,) + (2,) * n), (_axis(n, control), _axis(n, target)), (-2, -1)
    )
    shape = moved.shape
    flat = moved.reshape(m, -1, 2, 2).copy()
    flat[:, :, 1, 0], flat[:, :, 1, 1] = (
        flat[:, :, 1, 1].copy(),
        flat[:, :, 1, 0].copy(),
    )
    return np.moveaxis(
        flat.reshape(shape), (-2, -1), (_axis(n, control), _axis(n, target))
    ).reshape(m, -1)


def _apply_exact(amps: np.ndarray, gate: ExactGate, thetas: np.ndarray) -> np.ndarray:
    w, v = gate.eig()
    in_basis = amps @ v.conj()
    in_basis *= np.exp(-1j * np.outer(thetas, w))
    return in_basis @ v.T


def _op_sequence(c: Circuit, exact_gates: Sequence[ExactGate] | None = None):
    """Instructions and exact gates interleaved in program order."""
    exacts = c.exact_gates if exact_gates is None else list(exact_gates)
    by_pos: dict[int, list[ExactGate]] = {}
    for g in exacts:
        by_pos.setdefault(g.position, []).append(g)
    for idx in range(len(c.instructions) + 1):
        for g in by_pos.get(idx, []):
            yield ("exact", g)
        if idx < len(c.instructions):
            yield ("instr", c.instructions[idx])


def _instruction_angles(ins: Instruction, params_matrix: np.ndarray) -> np.ndarray:
    m = params_matrix.shape[0]
    if ins.symbol is None:
        return np.full(m, ins.scalar)
    return ins.scalar * params_matrix[:, ins.symbol]


def run_batch(c: Circuit, params_matrix: np.ndarray,
              exact_gates: Sequence[ExactGate] | None = None) -> np.ndarray:
    """Simulate the circuit for every parameter row; returns (M, 2^n) states."""
    params_matrix = np.asarray(params_matrix, dtype=float)
    if params_matrix.ndim != 2:
        raise ValueError("params_matrix must be 2-D (n_states, n_params)")
    m = params_matrix.shape[0]
    if params_matrix.shape[1] < c.n_params:
        raise KeyError(
            f"circuit uses {c.n_params} parameters, got {params_matrix.shape[1]}"
        )
    amps = np.zeros((m, 1 << c.n), dtype=complex)
    amps[:, 0] = 1.0
    for tag, op in _op_sequence(c, exact_gates):
        if tag == "instr":
            if op.kind == "CX":
                amps = _apply_cx(amps, c.n, op.qubits[0], op.qubits[1])
            else:
                amps = _apply_rotation(amps, c.n, op.kind, op.qubits[0],
                                       _instruction_angles(op, params_matrix))
        else:
            if op.symbol is None:
                thetas = np.full(m, op.fixed_angle)
            else:
                thetas = params_matrix[:, op.symbol]
            amps = _apply_exact(amps, op, thetas)
    return amps


def run(c: Circuit, params: Mapping[int, float] | Sequence[float] | None = None,
        exact_gates: Sequence[ExactGate] | None = None) -> StateVector:
    """Simulate one parameter assignment from |0...0>, checking norm per op."""
    lookup = _as_lookup(params if params is not None else [])
    amps = np.zeros((1, 1 << c.n), dtype=complex)
    amps[0, 0] = 1.0
    for tag, op in _op_sequence(c, exact_gates):
        if tag == "instr":
            if op.kind == "CX":
                amps = _apply_cx(amps, c.n, op.qubits[0], op.qubits[1])
            else:
                angle = op.scalar if op.symbol is None else op.scalar * lookup[op.symbol]
                amps = _apply_rotation(amps, c.n, op.kind, op.qubits[0], np.array([angle]))
        else:
            theta = op.fixed_angle if op.symbol is None else lookup[op.symbol]
            amps = _apply_exact(amps, op, np.array([float(theta)]))
        err = abs(float(np.sum(np.abs(amps) ** 2)) - 1.0)
        if err > _NORM_TOL:
            raise AssertionError(f"statevector norm drifted by {err:.2e}")
    return StateVector(c.n, amps[0])


def fidelity(a: StateVector, b: StateVector) -> float:
    if a.n != b.n:
        raise ValueError("size mismatch")
    return float(np.abs(np.vdot(a.amps, b.amps)) ** 2)


def fidelities_pairwise(states: np.ndarray) -> np.ndarray:
    """|<psi_2i | psi_2i+1>|^2 for consecutive disjoint pairs of rows."""
    even, odd = states[0::2], states[1::2]
    overlaps = np.sum(np.conj(even) * odd, axis=1)
    return np.clip(np.abs(overlaps) ** 2, 0.0, 1.0)


def purities(states: np.ndarray, n: int) -> np.ndarray:
    """Tr(rho_k^2) for every state row and every qubit k; shape (M, n)."""
    m = states.shape[0]
    out = np.empty((m, n))
    tensor = states.reshape((m,) + (2,) * n)
    for k in range(n):
        a = np.moveaxis(tensor, _axis(n, k) , 1).reshape(m, 2, -1)
        rho = a @ a.conj().transpose(0, 2, 1)
        out[:, k] = np.sum(np.abs(rho) ** 2, axis=(1, 2))
    return out


def purity(s: StateVector, k: int) -> float:
    if not 0 <= k < s.n:
        raise IndexError(f"qubit {k} out of range for n={s.n}")
    return float(purities(s.amps[None, :], s.n)[0, k])


def haar_random_states(n: int, m: int, seed: int = 0) -> np.ndarray:
    """m Haar-random pure states of n qubits, one per row."""
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(m, 1 << n)) + 1j * rng.normal(size=(m, 1 << n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def circuit_unitary(c: Circuit, params: Mapping[int, float] | Sequence[float] | None = None,
                    exact_gates: Sequence[ExactGate] | None = None) -> np.ndarray:
    """Dense unitary of the circuit at one parameter assignment (test oracle)."""
    dim = 1 << c.n
    lookup = _as_lookup(params if params is not None else [])
    basis = np.eye(dim, dtype=complex)
    amps = basis
    for tag, op in _op_sequence(c, exact_gates):
        if tag == "instr":
            if op.kind == "CX":
                amps = _apply_cx(amps, c.n, op.qubits[0], op.qubits[1])
            else:
                angle = op.scalar if op.symbol is None else op.scalar * lookup[op.symbol]
                amps = _apply_rotation(amps, c.n, op.kind, op.qubits[0],
                                       np.full(dim, angle))
        else:
            theta = op.fixed_angle if op.symbol is None else lookup[op.symbol]
            amps = _apply_exact(amps, op, np.full(dim, float(theta)))
    return amps.T
