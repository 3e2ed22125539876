"""twirlkit: subgroup symmetrization of parameterized quantum circuits.

Twirls ansatz gate generators over subgroups of symmetric groups acting by
qubit permutation, synthesizes the results back into circuits, and measures
the effect: generator-difference norms, circuit cost, expressibility, and
entangling capability.
"""

from .catalog import AnsatzTemplate, GateDef, build_ansatz, custom_ansatz, generator_of
from .metrics import (
    MetricsRecord,
    entangling_capability,
    expressibility,
    haar_pdf,
    meyer_wallach_q,
    norm_metric,
)
from .pauli import HermitianOp, PauliTerm, commutes, dense, frobenius_norm
from .permgroup import Permutation, Subgroup, compose, enumerate_subgroups, sample_subgroups
from .pipeline import SweepConfig, report, run_sweep
from .rep import conjugate_pauli, perm_unitary_dense, verify_induced_rep
from .sim import StateVector, fidelity, haar_random_states, purity, run, run_batch
from .synth import Circuit, NonCommutingOrbit, metrics_of, peephole, synthesize
from .twirl import TwirledGate, twirl_ansatz, twirl_generator

__all__ = [
    "AnsatzTemplate", "Circuit", "GateDef", "HermitianOp", "MetricsRecord",
    "NonCommutingOrbit", "PauliTerm", "Permutation", "StateVector", "Subgroup",
    "SweepConfig", "TwirledGate", "build_ansatz", "commutes", "compose",
    "conjugate_pauli", "custom_ansatz", "dense", "entangling_capability",
    "enumerate_subgroups", "expressibility", "fidelity", "frobenius_norm",
    "generator_of", "haar_pdf", "haar_random_states", "metrics_of",
    "meyer_wallach_q", "norm_metric", "peephole", "perm_unitary_dense",
    "purity", "report", "run", "run_batch", "run_sweep", "sample_subgroups",
    "synthesize", "twirl_ansatz", "twirl_generator", "verify_induced_rep",
]

__version__ = "0.1.0"
