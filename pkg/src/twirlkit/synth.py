"""Compilation of twirled generators into circuits over {RX, RY, RZ, CX}.

Product mode emits, per twirled gate and per Pauli term c*P, the standard
lowering: basis changes into Z (RY(-pi/2)/RY(pi/2) around X sites,
RX(pi/2)/RX(-pi/2) around Y sites), a CX ladder over the support rooted at
the highest support qubit, an RZ(2*c*theta) on the root, then the mirrored
ladder and reversed basis changes.  Identity terms only shift global phase
and are dropped.  A multi-term gate whose terms do not all commute cannot be
lowered this way and raises NonCommutingOrbit; exact mode instead tags every
gate for dense-exponential simulation and emits no instructions (circuit
cost metrics are then unavailable).

One special case: a self-inverse gate (H, CX) whose generator survives the
twirl unchanged is emitted in its native decomposition.  Without this, the
Hadamard generator (mutually non-commuting X and Z terms on one qubit) would
force exact fallback even for the identity twirl.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .pauli import HermitianOp, dense, ops_close
from .twirl import TwirledGate

ROTATION_KINDS = ("RX", "RY", "RZ")
_MERGE_TOL = 1e-12
_UNCHANGED_TOL = 1e-12


class NonCommutingOrbit(Exception):
    """Raised in product mode when a twirled orbit has non-commuting terms."""

    def __init__(self, gate_index: int, kind: str):
        super().__init__(
            f"gate {gate_index} ({kind}): twirled terms do not commute; "
            "product-form synthesis would change the unitary"
        )
        self.gate_index = gate_index
        self.kind = kind


@dataclass(frozen=True)
class Instruction:
    """One basis-gate instruction.

    Rotations carry angle = scalar * x_symbol, or angle = scalar when
    symbol is None.  CX carries no angle.
    """

    kind: str
    qubits: tuple[int, ...]
    scalar: float = 0.0
    symbol: int | None = None

    def angle(self, params) -> float:
        if self.symbol is None:
            return self.scalar
        return self.scalar * params[self.symbol]

    def dump(self) -> str:
        qs = ",".join(str(q) for q in self.qubits)
        if self.kind == "CX":
            return f"CX q={qs}"
        if self.symbol is not None:
            return f"{self.kind} q={qs} angle={self.scalar:.12g}*x{self.symbol}"
        return f"{self.kind} q={qs} angle={self.scalar:.12g}"


@dataclass
class ExactGate:
    """A gate applied as exp(-i * theta * G) through eigendecomposition."""

    generator: HermitianOp
    symbol: int | None
    fixed_angle: float | None
    position: int = 0  # applied before instructions[position]
    _eig: tuple | None = field(default=None, compare=False, repr=False)

    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        if self._eig is None:
            w, v = np.linalg.eigh(dense(self.generator))
            self._eig = (w, v)
        return self._eig

    def dump(self) -> str:
        from .pauli import format_op

        theta = f"x{self.symbol}" if self.symbol is not None else f"{self.fixed_angle:.12g}"
        return f"EXACT theta={theta} gen={format_op(self.generator)}"


@dataclass
class Circuit:
    """Instruction list plus any exact-exponential gates, in program order."""

    n: int
    instructions: list[Instruction] = field(default_factory=list)
    exact_gates: list[ExactGate] = field(default_factory=list)

    @property
    def n_params(self) -> int:
        syms = [i.symbol for i in self.instructions if i.symbol is not None]
        syms += [g.symbol for g in self.exact_gates if g.symbol is not None]
        return max(syms) + 1 if syms else 0

    def dump(self) -> str:
        lines = []
        by_pos: dict[int, list[ExactGate]] = {}
        for g in self.exact_gates:
            by_pos.setdefault(g.position, []).append(g)
        for idx in range(len(self.instructions) + 1):
            for g in by_pos.get(idx, []):
                lines.append(g.dump())
            if idx < len(self.instructions):
                lines.append(self.instructions[idx].dump())
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class CircuitMetrics:
    size: int
    depth: int
    two_qubit_count: int
    growth_ratio: float | None = None


_BASIS_CHANGE = {
    # letter -> (pre kind, pre angle); post is the same kind with flipped sign
    "X": ("RY", -math.pi / 2),
    "Y": ("RX", math.pi / 2),
}


def _lower_term(term, symbol: int | None, fixed_angle: float | None) -> list[Instruction]:
    support = [i for i, ch in enumerate(term.letters) if ch != "I"]
    if symbol is not None:
        scalar, sym = 2.0 * term.coeff, symbol
    else:
        scalar, sym = 2.0 * term.coeff * fixed_angle, None
    if len(support) == 1:
        q = support[0]
        return [Instruction("R" + term.letters[q], (q,), scalar, sym)]
    pre, post = [], []
    for q in support:
        ch = term.letters[q]
        if ch in _BASIS_CHANGE:
            kind, angle = _BASIS_CHANGE[ch]
            pre.append(Instruction(kind, (q,), angle, None))
            post.append(Instruction(kind, (q,), -angle, None))
    ladder = [Instruction("CX", (support[k], support[k + 1])) for k in range(len(support) - 1)]
    root = support[-1]
    return pre + ladder + [Instruction("RZ", (root,), scalar, sym)] + ladder[::-1] + post


def _native_involution(gate: TwirledGate) -> list[Instruction] | None:
    """Native emission for an H or CX whose generator the twirl left unchanged."""
    src = gate.source
    if src.fixed_angle is None or abs(src.fixed_angle - math.pi) > 1e-12:
        return None
    if not ops_close(gate.twirled_generator, src.generator, _UNCHANGED_TOL):
        return None
    if src.kind == "CX":
        return [Instruction("CX", src.qubits)]
    if src.kind == "H":
        (q,) = src.qubits
        return [
            Instruction("RZ", (q,), math.pi, None),
            Instruction("RY", (q,), math.pi / 2, None),
        ]
    return None


def synthesize(gates: Sequence[TwirledGate], mode: str = "product", n: int | None = None) -> Circuit:
    """Compile twirled gates into a Circuit.

    mode='product': per-term lowering; raises NonCommutingOrbit for orbits
    that cannot be factored.  mode='exact': every gate becomes an ExactGate.
    """
    if n is None:
        if not gates:
            raise ValueError("cannot infer qubit count from an empty gate list")
        n = gates[0].twirled_generator.n
    if mode not in ("product", "exact"):
        raise ValueError(f"unknown synthesis mode: {mode!r}")
    circ = Circuit(n)
    for idx, gate in enumerate(gates):
        if gate.twirled_generator.is_zero():
            continue
        if mode == "exact":
            circ.exact_gates.append(
                ExactGate(gate.twirled_generator, gate.symbol, gate.fixed_angle,
                          position=len(circ.instructions))
            )
            continue
        native = _native_involution(gate)
        if native is not None:
            circ.instructions.extend(native)
            continue
        terms = [t for t in gate.twirled_generator.terms if any(ch != "I" for ch in t.letters)]
        if not terms:
            continue  # identity-only generator: global phase
        if len(terms) > 1 and not gate.commuting:
            raise NonCommutingOrbit(idx, gate.source.kind)
        for term in terms:
            circ.instructions.extend(_lower_term(term, gate.symbol, gate.fixed_angle))
    return circ


def metrics_of(c: Circuit, baseline_size: int | None = None) -> CircuitMetrics:
    """Size, scheduling depth, CX count; instructions on disjoint qubits overlap."""
    frontier: dict[int, int] = {}
    depth = 0
    for ins in c.instructions:
        level = max((frontier.get(q, 0) for q in ins.qubits), default=0) + 1
        for q in ins.qubits:
            frontier[q] = level
        depth = max(depth, level)
    size = len(c.instructions)
    two_q = sum(1 for ins in c.instructions if ins.kind == "CX")
    ratio = None if baseline_size in (None, 0) else size / baseline_size
    return CircuitMetrics(size, depth, two_q, ratio)


def peephole(c: Circuit) -> Circuit:
    """Merge wire-adjacent same-kind, same-symbol rotations; drop zeroed ones.

    Two rotations merge only when no intervening instruction touches their
    qubit, so the circuit unitary is unchanged (up to global phase).
    """
    out: list[Instruction | None] = []
    last: dict[int, int] = {}

    def _backfill(q: int) -> None:
        for j in range(len(out) - 1, -1, -1):
            if out[j] is not None and q in out[j].qubits:
                last[q] = j
                return
        last.pop(q, None)

    for ins in c.instructions:
        if ins.kind in ROTATION_KINDS:
            q = ins.qubits[0]
            j = last.get(q)
            prev = out[j] if j is not None else None
            if (
                prev is not None
                and prev.kind == ins.kind
                and prev.qubits == ins.qubits
                and prev.symbol == ins.symbol
            ):
                merged = prev.scalar + ins.scalar
                if abs(merged) < _MERGE_TOL:
                    out[j] = None
                    _backfill(q)
                else:
                    out[j] = Instruction(ins.kind, ins.qubits, merged, ins.symbol)
                continue
        out.append(ins)
        for q in ins.qubits:
            last[q] = len(out) - 1
    kept = [ins for ins in out if ins is not None]
    if c.exact_gates:
        # Positions index into the instruction stream; peephole is only used
        # on product-mode circuits, where no exact gates exist.
        raise ValueError("peephole does not support circuits with exact gates")
    return Circuit(c.n, kept, [])
