"""Permutations of qubit positions and subgroups of symmetric groups.

Permutations use the one-line convention ``mapping[i] = sigma(i)``: the qubit
originally at position ``i`` moves to position ``sigma(i)``.  Subgroups are
stored extensionally (full element sets) so closure invariants can be checked
directly.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_ENUMERATE_N = 5
SAMPLE_ATTEMPTS = 10_000
# Closures larger than this are abandoned once the budget of expensive
# closures is spent (only relevant for n >= 8 where |S_n| explodes).
_GIANT_CLOSURE_CAP = 6_000
_GIANT_CLOSURE_BUDGET = 40


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0, ..., n-1}, stored in one-line notation."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.mapping}")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def one_line(self) -> str:
        return "".join(str(i) for i in self.mapping)

    @staticmethod
    def from_one_line(text: str) -> "Permutation":
        return Permutation(tuple(int(ch) for ch in text.strip()))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation i -> p(q(i))."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p.mapping[q.mapping[i]] for i in range(p.n)))


@dataclass(frozen=True)
class Subgroup:
    """A closed set of permutations acting on n qubit positions."""

    n: int
    elements: frozenset[Permutation]
    _id_cache: list = field(default_factory=list, compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def id(self) -> str:
        """Canonical key: sorted one-line notations joined with ';'."""
        if not self._id_cache:
            self._id_cache.append(";".join(sorted(p.one_line() for p in self.elements)))
        return self._id_cache[0]

    def sorted_elements(self) -> list[Permutation]:
        return sorted(self.elements, key=lambda p: p.mapping)

    def validate(self) -> None:
        ident = Permutation.identity(self.n)
        if ident not in self.elements:
            raise ValueError("subgroup misses the identity")
        for p in self.elements:
            if p.inverse() not in self.elements:
                raise ValueError(f"subgroup not closed under inverse at {p}")
        for p in self.elements:
            for q in self.elements:
                if compose(p, q) not in self.elements:
                    raise ValueError("subgroup not closed under composition")

    @staticmethod
    def trivial(n: int) -> "Subgroup":
        return Subgroup(n, frozenset({Permutation.identity(n)}))

    @staticmethod
    def full(n: int) -> "Subgroup":
        elems = frozenset(Permutation(p) for p in itertools.permutations(range(n)))
        return Subgroup(n, elems)

    @staticmethod
    def generated(gens: Iterable[Permutation]) -> "Subgroup":
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator")
        n = gens[0].n
        raw = _close([g.mapping for g in gens], n)
        return Subgroup(n, frozenset(Permutation(t) for t in raw))


def _close(
    gens: Sequence[tuple[int, ...]], n: int, cap: int | None = None
) -> frozenset[tuple[int, ...]] | None:
    """Close a generator set under composition (BFS over right products).

    Finite order makes inverses automatic.  Returns None when ``cap`` is
    exceeded (used to bound runaway closures while sampling).
    """
    ident = tuple(range(n))
    els = {ident}
    frontier = [ident]
    rng_idx = range(n)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple(x[g[i]] for i in rng_idx)
            if y not in els:
                if cap is not None and len(els) >= cap:
                    return None
                els.add(y)
                frontier.append(y)
    return frozenset(els)


def _cyclic_representatives(n: int) -> list[tuple[int, ...]]:
    """One generator per distinct cyclic subgroup of S_n."""
    seen: dict[frozenset, tuple[int, ...]] = {}
    for p in itertools.permutations(range(n)):
        sub = _close([p], n)
        if sub not in seen:
            seen[sub] = p
    return [seen[k] for k in sorted(seen, key=lambda s: (len(s), sorted(s)))]


def enumerate_subgroups(n: int) -> list[Subgroup]:
    """Every subgroup of S_n exactly once, sorted by (order, id).

    Strategy: seed with all cyclic subgroups, then repeatedly extend each
    known subgroup's generating set by one cyclic representative until no new
    subgroup appears.  Any subgroup is reached by adding generators one at a
    time, so the fixpoint is exhaustive.
    """
    if not 1 <= n <= MAX_ENUMERATE_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {MAX_ENUMERATE_N}, got {n}")
    reps = _cyclic_representatives(n)
    found: dict[frozenset, list[tuple[int, ...]]] = {}
    ident = tuple(range(n))
    found[frozenset({ident})] = []
    for r in reps:
        found.setdefault(_close([r], n), [r])
    changed = True
    while changed:
        changed = False
        for elems, gens in list(found.items()):
            for r in reps:
                if r in elems:
                    continue
                ext = _close(gens + [r], n)
                if ext not in found:
                    found[ext] = gens + [r]
                    changed = True
    subs = [Subgroup(n, frozenset(Permutation(t) for t in elems)) for elems in found]
    subs.sort(key=lambda s: (s.order, s.id))
    return subs


def sample_subgroups(n: int, max_per_order: int, seed: int) -> list[Subgroup]:
    """Randomly sampled subgroups of S_n, at most ``max_per_order`` per order.

    Closes random 1-3 element generator sets for a fixed attempt budget.
    Deterministic for a fixed seed.  No completeness guarantee: the contract
    is "at most max_per_order distinct subgroups per achievable order".
    """
    if not 3 <= n <= 9:
        raise ValueError(f"sampling supports 3 <= n <= 9, got {n}")
    if max_per_order < 1:
        raise ValueError("max_per_order must be >= 1")
    rng = random.Random(seed)
    buckets: dict[int, dict[frozenset, None]] = {}
    giant_budget = _GIANT_CLOSURE_BUDGET
    base = list(range(n))
    for _ in range(SAMPLE_ATTEMPTS):
        gens = []
        for _ in range(rng.randint(1, 3)):
            g = base[:]
            rng.shuffle(g)
            gens.append(tuple(g))
        cap = None if giant_budget > 0 else _GIANT_CLOSURE_CAP
        elems = _close(gens, n, cap=cap)
        if elems is None:
            continue
        if len(elems) > _GIANT_CLOSURE_CAP:
            giant_budget -= 1
        bucket = buckets.setdefault(len(elems), {})
        if elems not in bucket and len(bucket) < max_per_order:
            bucket[elems] = None
    subs = [
        Subgroup(n, frozenset(Permutation(t) for t in elems))
        for bucket in buckets.values()
        for elems in bucket
    ]
    subs.sort(key=lambda s: (s.order, s.id))
    return subs


def lagrange_ok(sub: Subgroup) -> bool:
    return math.factorial(sub.n) % sub.order == 0


# Cache file format: one subgroup per line,
#   order=<k>; elems=<one-line perms separated by '|'>


def write_groups_file(path: str, subs: Sequence[Subgroup]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in subs:
            elems = "|".join(p.one_line() for p in s.sorted_elements())
            fh.write(f"order={s.order}; elems={elems}\n")


def read_groups_file(path: str) -> list[Subgroup]:
    subs = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                order_part, elems_part = line.split(";", 1)
                order = int(order_part.split("=", 1)[1])
                elems_text = elems_part.split("=", 1)[1].strip()
                perms = [Permutation.from_one_line(t) for t in elems_text.split("|")]
            except (ValueError, IndexError) as exc:
                raise ValueError(f"{path}:{line_no}: malformed subgroup line") from exc
            if len(perms) != order:
                raise ValueError(f"{path}:{line_no}: order={order} but {len(perms)} elements")
            sub = Subgroup(perms[0].n, frozenset(perms))
            sub.validate()
            subs.append(sub)
    return subs
