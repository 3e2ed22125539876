"""Generator twirling over permutation subgroups.

The twirl of a generator G over a subgroup H is the average of the
conjugates U_s G U_s^dag over all s in H, computed term-by-term on Pauli
strings (orbit sums), never through dense matrices.  Orbit multiplicities are
accumulated as integers and divided by |H| once, so algebraically equal
twirls (e.g. over the order-12 subgroup vs. the full S_4 for 2-local
generators) come out bitwise identical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import AnsatzTemplate, GateDef
from .pauli import HermitianOp, PauliTerm, all_commute
from .permgroup import Subgroup


@dataclass(frozen=True)
class TwirledGate:
    """A source gate together with its subgroup-averaged generator."""

    source: GateDef
    twirled_generator: HermitianOp
    symbol: int | None
    fixed_angle: float | None
    commuting: bool


def twirl_generator(g: HermitianOp, sub: Subgroup) -> HermitianOp:
    """(1/|H|) * sum_s U_s G U_s^dag, canonicalized; idempotent."""
    if g.n != sub.n:
        raise ValueError(f"size mismatch: operator n={g.n}, subgroup n={sub.n}")
    counts: dict[tuple[int, str], int] = {}
    for s in sub.elements:
        for idx, term in enumerate(g.terms):
            letters = ["I"] * g.n
            for i, ch in enumerate(term.letters):
                letters[s(i)] = ch
            key = (idx, "".join(letters))
            counts[key] = counts.get(key, 0) + 1
    order = sub.order
    accum: dict[str, float] = {}
    for (idx, letters), mult in sorted(counts.items()):
        accum[letters] = accum.get(letters, 0.0) + g.terms[idx].coeff * mult
    return HermitianOp.from_terms(
        g.n, [PauliTerm(letters, total / order) for letters, total in accum.items()]
    )


def twirl_ansatz(a: AnsatzTemplate, sub: Subgroup) -> list[TwirledGate]:
    """Twirl every gate's generator, keeping parameter sharing and order."""
    if a.n != sub.n:
        raise ValueError(f"size mismatch: ansatz n={a.n}, subgroup n={sub.n}")
    out = []
    for gate in a.gates:
        tg = twirl_generator(gate.generator, sub)
        out.append(
            TwirledGate(
                source=gate,
                twirled_generator=tg,
                symbol=gate.symbol,
                fixed_angle=gate.fixed_angle,
                commuting=all_commute(tg.terms),
            )
        )
    return out
