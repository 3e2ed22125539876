"""Gate definitions and the registry of the 19 benchmark ansatz templates.

Gate convention: R_G(theta) = exp(-i * theta * G).  Rotation gates carry a
trainable symbol; the self-inverse gates H, CX, CZ are modeled as fixed-angle
exponentials with generator (I - V)/2 and theta = pi, which makes them
twirlable by the same machinery (the leftover global phase is irrelevant to
every metric downstream).

Template structures generalize the published four-qubit circuits to any
n >= 2: chains, bricks, rings, and all-to-all blocks scale with n.  The
four-qubit depth-1 instances are also shipped as data files (``data/``) in
the catalog text format; a test pins the generated templates to those files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Iterable

import numpy as np

from .pauli import HermitianOp

GATE_KINDS = ("RX", "RY", "RZ", "CRX", "CRY", "CRZ", "RZZ", "H", "CX", "CZ")
INVOLUTION_KINDS = ("H", "CX", "CZ")
ANSATZ_IDS = tuple(range(1, 20))

_INV_SQRT8 = 1.0 / (2.0 * math.sqrt(2.0))


@dataclass(frozen=True)
class GateDef:
    """One gate instance: kind, qubit positions, parameter, and generator.

    ``symbol`` is the trainable parameter index (angle = x_symbol), or None
    for fixed-angle gates, in which case ``fixed_angle`` holds theta.
    """

    kind: str
    qubits: tuple[int, ...]
    symbol: int | None
    fixed_angle: float | None
    generator: HermitianOp

    def param_text(self) -> str:
        if self.symbol is not None:
            return f"x{self.symbol}"
        if abs(self.fixed_angle - math.pi) < 1e-15:
            return "pi"
        return f"{self.fixed_angle:.12g}"


@dataclass(frozen=True)
class AnsatzTemplate:
    """A catalog circuit: ordered gates with symbols fresh per layer."""

    id: int | None
    n: int
    depth: int
    gates: tuple[GateDef, ...]

    @property
    def n_params(self) -> int:
        syms = [g.symbol for g in self.gates if g.symbol is not None]
        return max(syms) + 1 if syms else 0


def generator_of(kind: str, qubits: tuple[int, ...], n: int) -> HermitianOp:
    """Generator under R_G(theta) = exp(-i theta G) for the given gate kind."""
    if kind in ("RX", "RY", "RZ"):
        (q,) = qubits
        return HermitianOp.single(n, {q: kind[1]}, 0.5)
    if kind in ("CRX", "CRY", "CRZ"):
        c, t = qubits
        axis = kind[2]
        return HermitianOp.single(n, {t: axis}, 0.25) + HermitianOp.single(
            n, {c: "Z", t: axis}, -0.25
        )
    if kind == "RZZ":
        a, b = qubits
        return HermitianOp.single(n, {a: "Z", b: "Z"}, 0.5)
    if kind == "H":
        (q,) = qubits
        return (
            HermitianOp.single(n, {}, 0.5)
            + HermitianOp.single(n, {q: "X"}, -_INV_SQRT8)
            + HermitianOp.single(n, {q: "Z"}, -_INV_SQRT8)
        )
    if kind == "CX":
        c, t = qubits
        return (
            HermitianOp.single(n, {}, 0.25)
            + HermitianOp.single(n, {t: "X"}, -0.25)
            + HermitianOp.single(n, {c: "Z"}, -0.25)
            + HermitianOp.single(n, {c: "Z", t: "X"}, 0.25)
        )
    if kind == "CZ":
        c, t = qubits
        return (
            HermitianOp.single(n, {}, 0.25)
            + HermitianOp.single(n, {t: "Z"}, -0.25)
            + HermitianOp.single(n, {c: "Z"}, -0.25)
            + HermitianOp.single(n, {c: "Z", t: "Z"}, 0.25)
        )
    raise ValueError(f"unknown gate kind: {kind!r}")


def reference_unitary(kind: str, theta: float | None = None) -> np.ndarray:
    """Textbook matrix for a gate kind (2x2 or 4x4, control first)."""
    if kind in ("RX", "RY", "RZ"):
        g = {"X": np.array([[0, 1], [1, 0]], dtype=complex),
             "Y": np.array([[0, -1j], [1j, 0]]),
             "Z": np.diag([1.0 + 0j, -1.0])}[kind[1]]
        return np.cos(theta / 2) * np.eye(2) - 1j * np.sin(theta / 2) * g
    if kind in ("CRX", "CRY", "CRZ"):
        u = np.eye(4, dtype=complex)
        u[2:, 2:] = reference_unitary("R" + kind[2], theta)
        return u
    if kind == "RZZ":
        p = np.exp(-1j * theta / 2)
        return np.diag([p, p.conjugate(), p.conjugate(), p])
    if kind == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    if kind == "CX":
        u = np.eye(4, dtype=complex)
        u[2:, 2:] = np.array([[0, 1], [1, 0]])
        return u
    if kind == "CZ":
        return np.diag([1.0 + 0j, 1.0, 1.0, -1.0])
    raise ValueError(f"unknown gate kind: {kind!r}")


# --- template patterns -----------------------------------------------------
#
# Each pattern yields (kind, qubits, trainable) triples for one layer at a
# given qubit count.  Two-qubit tuples are (control, target).

def _rot_pairs(first: str, second: str, qubits: Iterable[int]):
    for q in qubits:
        yield (first, (q,), True)
        yield (second, (q,), True)


def _layer(kind: str, qubits: Iterable[int], trainable: bool = True):
    for q in qubits:
        yield (kind, (q,), trainable)


def _chain(n: int):
    # (n-1 -> n-2), ..., (1 -> 0)
    return [(k + 1, k) for k in range(n - 2, -1, -1)]


def _bricks_a(n: int):
    # (1 -> 0), (3 -> 2), ...
    return [(k + 1, k) for k in range(0, n - 1, 2)]


def _bricks_b(n: int):
    # (2 -> 1), (4 -> 3), ...
    return [(k + 1, k) for k in range(1, n - 1, 2)]


def _ring_a(n: int):
    # (n-1 -> 0), then (k -> k+1) for k descending
    return [(n - 1, 0)] + [(k, k + 1) for k in range(n - 2, -1, -1)]


def _ring_b(n: int):
    # (n-1 -> n-2), (0 -> n-1), then (k -> k-1) for k ascending
    return [(n - 1, n - 2), (0, n - 1)] + [(k, k - 1) for k in range(1, n - 1)]


def _all_to_all(n: int):
    return [(c, t) for c in range(n - 1, -1, -1) for t in range(n - 1, -1, -1) if t != c]


def _ctrl(kind: str, pairs, trainable: bool = True):
    for c, t in pairs:
        yield (kind, (c, t), trainable)


def _pattern(ansatz_id: int, n: int) -> list[tuple[str, tuple[int, ...], bool]]:
    q = range(n)
    inner = range(1, n - 1)
    if ansatz_id == 1:
        return [*_rot_pairs("RX", "RZ", q)]
    if ansatz_id == 2:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CX", _chain(n), False)]
    if ansatz_id == 3:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRZ", _chain(n))]
    if ansatz_id == 4:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRX", _chain(n))]
    if ansatz_id == 5:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRZ", _all_to_all(n)),
                *_rot_pairs("RX", "RZ", q)]
    if ansatz_id == 6:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRX", _all_to_all(n)),
                *_rot_pairs("RX", "RZ", q)]
    if ansatz_id == 7:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRZ", _bricks_a(n)),
                *_rot_pairs("RX", "RZ", q), *_ctrl("CRZ", _bricks_b(n))]
    if ansatz_id == 8:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRX", _bricks_a(n)),
                *_rot_pairs("RX", "RZ", q), *_ctrl("CRX", _bricks_b(n))]
    if ansatz_id == 9:
        return [*_layer("H", q, False), *_ctrl("CZ", _chain(n), False), *_layer("RX", q)]
    if ansatz_id == 10:
        return [*_layer("RY", q), *_ctrl("CZ", _ring_a(n), False), *_layer("RY", q)]
    if ansatz_id == 11:
        return [*_rot_pairs("RY", "RZ", q), *_ctrl("CX", _bricks_a(n), False),
                *_rot_pairs("RY", "RZ", inner), *_ctrl("CX", _bricks_b(n), False)]
    if ansatz_id == 12:
        return [*_rot_pairs("RY", "RZ", q), *_ctrl("CZ", _bricks_a(n), False),
                *_rot_pairs("RY", "RZ", inner), *_ctrl("CZ", _bricks_b(n), False)]
    if ansatz_id == 13:
        return [*_layer("RY", q), *_ctrl("CRZ", _ring_a(n)),
                *_layer("RY", q), *_ctrl("CRZ", _ring_b(n))]
    if ansatz_id == 14:
        return [*_layer("RY", q), *_ctrl("CRX", _ring_a(n)),
                *_layer("RY", q), *_ctrl("CRX", _ring_b(n))]
    if ansatz_id == 15:
        return [*_layer("RY", q), *_ctrl("CX", _ring_a(n), False),
                *_layer("RY", q), *_ctrl("CX", _ring_b(n), False)]
    if ansatz_id == 16:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRZ", _bricks_a(n)),
                *_ctrl("CRZ", _bricks_b(n))]
    if ansatz_id == 17:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRX", _bricks_a(n)),
                *_ctrl("CRX", _bricks_b(n))]
    if ansatz_id == 18:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRZ", _ring_a(n))]
    if ansatz_id == 19:
        return [*_rot_pairs("RX", "RZ", q), *_ctrl("CRX", _ring_a(n))]
    raise ValueError(f"unknown ansatz id: {ansatz_id}")


def build_ansatz(ansatz_id: int, n: int, depth: int) -> AnsatzTemplate:
    """Instantiate a catalog circuit; depth repeats the layer with fresh symbols."""
    if ansatz_id not in ANSATZ_IDS:
        raise ValueError(f"unknown ansatz id: {ansatz_id}")
    if n < 2:
        raise ValueError("need n >= 2")
    if depth < 1:
        raise ValueError("need depth >= 1")
    layer = _pattern(ansatz_id, n)
    gates = []
    symbol = 0
    for _ in range(depth):
        for kind, qubits, trainable in layer:
            if trainable:
                gates.append(GateDef(kind, qubits, symbol, None, generator_of(kind, qubits, n)))
                symbol += 1
            else:
                gates.append(GateDef(kind, qubits, None, math.pi, generator_of(kind, qubits, n)))
    return AnsatzTemplate(ansatz_id, n, depth, tuple(gates))


def custom_ansatz(n: int, gate_specs: Iterable[tuple[str, tuple[int, ...]]]) -> AnsatzTemplate:
    """Ad-hoc template from (kind, qubits) pairs, one fresh symbol per rotation."""
    gates = []
    symbol = 0
    for kind, qubits in gate_specs:
        if kind in INVOLUTION_KINDS:
            gates.append(GateDef(kind, tuple(qubits), None, math.pi, generator_of(kind, tuple(qubits), n)))
        else:
            gates.append(GateDef(kind, tuple(qubits), symbol, None, generator_of(kind, tuple(qubits), n)))
            symbol += 1
    return AnsatzTemplate(None, n, 1, tuple(gates))


# --- catalog text format ---------------------------------------------------


def format_template(t: AnsatzTemplate) -> str:
    lines = [f"ANSATZ {t.id if t.id is not None else 0}", f"QUBITS {t.n}"]
    for g in t.gates:
        qs = ",".join(str(q) for q in g.qubits)
        lines.append(f"GATE {g.kind} q={qs} param={g.param_text()}")
    return "\n".join(lines) + "\n"


def parse_template(text: str) -> AnsatzTemplate:
    ansatz_id: int | None = None
    n: int | None = None
    gates: list[GateDef] = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "ANSATZ":
            ansatz_id = int(fields[1]) or None
        elif fields[0] == "QUBITS":
            n = int(fields[1])
        elif fields[0] == "GATE":
            if n is None:
                raise ValueError(f"line {line_no}: GATE before QUBITS header")
            kind = fields[1]
            if kind not in GATE_KINDS:
                raise ValueError(f"line {line_no}: unknown gate kind {kind!r}")
            attrs = dict(f.split("=", 1) for f in fields[2:])
            qubits = tuple(int(x) for x in attrs["q"].split(","))
            if any(q >= n for q in qubits):
                raise ValueError(f"line {line_no}: qubit index out of range")
            param = attrs["param"]
            if param.startswith("x"):
                gates.append(GateDef(kind, qubits, int(param[1:]), None, generator_of(kind, qubits, n)))
            else:
                angle = math.pi if param == "pi" else float(param)
                gates.append(GateDef(kind, qubits, None, angle, generator_of(kind, qubits, n)))
        else:
            raise ValueError(f"line {line_no}: unrecognized directive {fields[0]!r}")
    if n is None:
        raise ValueError("missing QUBITS header")
    return AnsatzTemplate(ansatz_id, n, 1, tuple(gates))


def load_reference_template(ansatz_id: int) -> AnsatzTemplate:
    """The shipped four-qubit depth-1 transcription for one catalog circuit."""
    name = f"ansatz_{ansatz_id:02d}.txt"
    text = resources.files("twirlkit.data").joinpath(name).read_text(encoding="utf-8")
    return parse_template(text)
