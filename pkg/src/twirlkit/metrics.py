"""Generator-difference norms, expressibility, and entangling capability.

Expressibility is the KL divergence (natural log) between the sampled
fidelity histogram of a model and the Haar fidelity distribution
P(F) = (N-1)(1-F)^(N-2), N = 2^n.  Haar bin weights are exact CDF masses,
(1-F_lo)^(N-1) - (1-F_hi)^(N-1), not midpoint densities, to avoid
discretization bias in the steep right tail.  Entangling capability is the
Meyer-Wallach average Q = mean over samples of 2 * (1 - mean_k Tr(rho_k^2)).

Sampling is chunked, with one counter-derived RNG substream per chunk, so a
result depends only on (model, seed) and never on scheduling: histogram
counts are integers and float reductions happen in fixed chunk order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import AnsatzTemplate
from .pauli import frobenius_norm
from .permgroup import Subgroup
from .synth import Circuit
from .sim import fidelities_pairwise, purities, run_batch
from .twirl import twirl_ansatz

DEFAULT_BINS = 75
DEFAULT_PAIRS = 10_000
DEFAULT_ENT_SAMPLES = 10_000
_CHUNK = 1_000


@dataclass(frozen=True)
class FidelityHistogram:
    """Counts over equal-width fidelity bins on [0, 1]."""

    bins: int
    counts: tuple[int, ...]
    total: int

    @property
    def probabilities(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.total


@dataclass
class MetricsRecord:
    """One sweep cell: identification plus every metric value."""

    ansatz: int | None
    n: int
    depth: int
    subgroup_id: str
    subgroup_order: int
    seed: int
    status: str = "ok"
    norm_metric: float | None = None
    size: int | None = None
    depth_metric: int | None = None
    two_qubit_count: int | None = None
    growth_ratio: float | None = None
    expressibility_dkl: float | None = None
    entangling_q: float | None = None
    commuting_fraction: float | None = None


def haar_pdf(fidelity: float, n: int) -> float:
    """(N-1)(1-F)^(N-2) with N = 2^n."""
    if not 0.0 <= fidelity <= 1.0:
        raise ValueError("fidelity must lie in [0, 1]")
    big_n = 2**n
    return float((big_n - 1) * (1.0 - fidelity) ** (big_n - 2))


def haar_bin_masses(bins: int, n: int) -> np.ndarray:
    """Exact Haar probability mass of each bin: (1-lo)^(N-1) - (1-hi)^(N-1).

    Computed on the survival function directly; going through the CDF would
    round the tiny right-tail masses to zero.
    """
    big_n = 2**n
    edges = np.linspace(0.0, 1.0, bins + 1)
    survival = (1.0 - edges) ** (big_n - 1)
    return survival[:-1] - survival[1:]


def kl_vs_haar(hist: FidelityHistogram, n: int) -> float:
    """D_KL(P || Haar) in nats, with 0 * log 0 = 0."""
    p = hist.probabilities
    # Haar masses are strictly positive but can underflow for large n; the
    # clamp only bounds the (already enormous) divergence in that regime.
    q = np.maximum(haar_bin_masses(hist.bins, n), 1e-300)
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def _param_chunks(seed: int, stream: int, total: int, width: int):
    """Deterministic uniform-[0, 2pi) parameter blocks, independent of callers."""
    produced = 0
    chunk_idx = 0
    while produced < total:
        take = min(_CHUNK, total - produced)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, stream, chunk_idx)))
        yield rng.uniform(0.0, 2.0 * np.pi, size=(take, width))
        produced += take
        chunk_idx += 1


def fidelity_histogram(model: Circuit, n_pairs: int = DEFAULT_PAIRS,
                       bins: int = DEFAULT_BINS, seed: int = 0) -> FidelityHistogram:
    """Histogram of |<psi_theta | psi_phi>|^2 over disjoint fresh pairs."""
    width = model.n_params
    counts = np.zeros(bins, dtype=np.int64)
    for block in _param_chunks(seed, 0, 2 * n_pairs, width):
        states = run_batch(model, block)
        f = fidelities_pairwise(states)
        hist, _ = np.histogram(f, bins=bins, range=(0.0, 1.0))
        counts += hist
    return FidelityHistogram(bins, tuple(int(x) for x in counts), n_pairs)


def expressibility(model: Circuit, n_pairs: int = DEFAULT_PAIRS,
                   bins: int = DEFAULT_BINS, seed: int = 0) -> float:
    """KL divergence of the model's fidelity histogram from Haar; >= 0.

    Larger values mean a less expressible circuit.  Deterministic per seed.
    """
    hist = fidelity_histogram(model, n_pairs=n_pairs, bins=bins, seed=seed)
    return kl_vs_haar(hist, model.n)


def meyer_wallach_q(states: np.ndarray, n: int) -> np.ndarray:
    """Per-state Q = 2 * (1 - mean_k Tr(rho_k^2)); shape (M,)."""
    return 2.0 * (1.0 - purities(states, n).mean(axis=1))


def entangling_capability(model: Circuit, n_samples: int = DEFAULT_ENT_SAMPLES,
                          seed: int = 0) -> float:
    """Sampled Meyer-Wallach Q of the model; in [0, 1], deterministic per seed."""
    width = model.n_params
    total = 0.0
    for block in _param_chunks(seed, 1, n_samples, width):
        states = run_batch(model, block)
        total += float(np.sum(meyer_wallach_q(states, model.n)))
    return total / n_samples


def norm_metric(a: AnsatzTemplate, sub: Subgroup, mode: str = "matched") -> float:
    """Average Frobenius norm of the generator change under twirling.

    matched (default): mean over gates of ||G - T[G]||.  allpairs: the double
    average over all (G, T[G']) combinations.  Layer repetition duplicates
    the same gate multiset, so both are depth-invariant by construction.
    """
    if a.n != sub.n:
        raise ValueError("size mismatch between ansatz and subgroup")
    twirled = twirl_ansatz(a, sub)
    originals = [g.generator for g in a.gates]
    if mode == "matched":
        diffs = [frobenius_norm(g - t.twirled_generator) for g, t in zip(originals, twirled)]
        return float(np.mean(diffs))
    if mode == "allpairs":
        acc = 0.0
        for t in twirled:
            acc += float(np.mean([frobenius_norm(g - t.twirled_generator) for g in originals]))
        return acc / len(twirled)
    raise ValueError(f"unknown norm mode: {mode!r}")
