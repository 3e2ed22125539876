"""Real-weighted Pauli-string algebra.

Operators are sums of Pauli strings with real coefficients, which keeps every
operator Hermitian by construction and makes the Frobenius norm an exact
coefficient formula.  Qubit 0 is the least significant bit of a basis-state
index, so the dense form of a letter string is the Kronecker product of the
letters in reverse order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ZERO_TOL = 1e-12
LETTERS = "IXYZ"

_PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliTerm:
    """One Pauli string with a real weight, e.g. 0.25 * 'ZIXZ'."""

    letters: str
    coeff: float

    def __post_init__(self) -> None:
        if any(ch not in LETTERS for ch in self.letters):
            raise ValueError(f"invalid Pauli letters: {self.letters!r}")
        if not math.isfinite(self.coeff):
            raise ValueError(f"non-finite coefficient: {self.coeff}")

    @property
    def n(self) -> int:
        return len(self.letters)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, ch in enumerate(self.letters) if ch != "I")


@dataclass(frozen=True)
class HermitianOp:
    """Canonical real Pauli sum: unique letter patterns, sorted, no zeros."""

    n: int
    terms: tuple[PauliTerm, ...]

    @staticmethod
    def from_terms(n: int, terms: Iterable[PauliTerm]) -> "HermitianOp":
        merged: dict[str, float] = {}
        for t in terms:
            if t.n != n:
                raise ValueError(f"term on {t.n} qubits in an n={n} operator")
            merged[t.letters] = merged.get(t.letters, 0.0) + t.coeff
        kept = tuple(
            PauliTerm(letters, coeff)
            for letters, coeff in sorted(merged.items())
            if abs(coeff) > ZERO_TOL
        )
        return HermitianOp(n, kept)

    @staticmethod
    def zero(n: int) -> "HermitianOp":
        return HermitianOp(n, ())

    @staticmethod
    def single(n: int, sites: dict[int, str], coeff: float) -> "HermitianOp":
        """One term placing the given letters at the given qubit positions."""
        letters = ["I"] * n
        for q, ch in sites.items():
            if not 0 <= q < n:
                raise ValueError(f"qubit {q} out of range for n={n}")
            letters[q] = ch
        return HermitianOp.from_terms(n, [PauliTerm("".join(letters), coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def scaled(self, factor: float) -> "HermitianOp":
        return HermitianOp.from_terms(self.n, [PauliTerm(t.letters, t.coeff * factor) for t in self.terms])

    def __add__(self, other: "HermitianOp") -> "HermitianOp":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return HermitianOp.from_terms(self.n, self.terms + other.terms)

    def __sub__(self, other: "HermitianOp") -> "HermitianOp":
        return self + other.scaled(-1.0)


def canonicalize(n: int, terms: Iterable[PauliTerm]) -> HermitianOp:
    """Merge duplicate letter patterns, drop near-zeros, sort terms."""
    return HermitianOp.from_terms(n, terms)


def frobenius_norm(op: HermitianOp) -> float:
    """sqrt(2^n * sum coeff^2); exact because Pauli strings are HS-orthogonal."""
    return math.sqrt(2.0**op.n * sum(t.coeff * t.coeff for t in op.terms))


def commutes(a: PauliTerm, b: PauliTerm) -> bool:
    """True iff the strings commute: an even number of anticommuting sites."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    clashes = sum(
        1 for x, y in zip(a.letters, b.letters) if x != "I" and y != "I" and x != y
    )
    return clashes % 2 == 0


def all_commute(terms: Sequence[PauliTerm]) -> bool:
    return all(
        commutes(terms[i], terms[j])
        for i in range(len(terms))
        for j in range(i + 1, len(terms))
    )


def dense_term(letters: str) -> np.ndarray:
    """Dense matrix of one Pauli string (little-endian qubit ordering)."""
    m = np.ones((1, 1), dtype=complex)
    for ch in reversed(letters):
        m = np.kron(m, _PAULI_1Q[ch])
    return m


def dense(op: HermitianOp) -> np.ndarray:
    """Kronecker-product expansion of the operator; n is capped at 10."""
    if op.n > 10:
        raise ValueError(f"dense form limited to n <= 10, got n={op.n}")
    dim = 2**op.n
    out = np.zeros((dim, dim), dtype=complex)
    for t in op.terms:
        out += t.coeff * dense_term(t.letters)
    return out


def format_op(op: HermitianOp) -> str:
    """Textual form '<coeff>*<letters>' joined by ' + '; '0' for the zero op."""
    if op.is_zero():
        return "0"
    return " + ".join(f"{t.coeff:.12g}*{t.letters}" for t in op.terms)


def parse_op(n: int, text: str) -> HermitianOp:
    text = text.strip()
    if text == "0":
        return HermitianOp.zero(n)
    terms = []
    for chunk in text.split(" + "):
        coeff_text, letters = chunk.split("*", 1)
        terms.append(PauliTerm(letters.strip(), float(coeff_text)))
    return HermitianOp.from_terms(n, terms)


def ops_close(a: HermitianOp, b: HermitianOp, tol: float = 1e-12) -> bool:
    """Coefficient-wise comparison of two canonical operators."""
    if a.n != b.n:
        return False
    ca = {t.letters: t.coeff for t in a.terms}
    cb = {t.letters: t.coeff for t in b.terms}
    keys = set(ca) | set(cb)
    return all(abs(ca.get(k, 0.0) - cb.get(k, 0.0)) <= tol for k in keys)
