"""Noisy data generation: finite shots, depolarizing, drift, readout error.

Every random draw comes from a dedicated generator keyed by small integers
(seed, then context indices), so datasets are bit-identical regardless of
evaluation order or parallelism.  The measured object is always the
4-outcome distribution over two-qubit bitstrings (00, 01, 10, 11); the
subspace signal lives in outcomes 01/10 and depolarizing leaks weight onto
00/11.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .signal_model import exact_signal
from .su2 import FsimParams

__all__ = [
    "DriftModel",
    "ConfusionMatrix",
    "NoiseConfig",
    "InversionRejectedError",
    "stream",
    "sample_counts",
    "apply_depolarizing",
    "dem_fidelity",
    "gate_count",
    "apply_confusion",
    "invert_confusion",
    "confusion_sample_size",
    "simulate_noisy_circuit",
    "simulate_noisy_counts",
    "simulate_probability_batch",
]

INPUT_STATES = ("plus", "i")
_BETA = {"plus": 1.0 + 0.0j, "i": 1.0j}


class InversionRejectedError(ValueError):
    """Confusion matrix is not diagonally dominant enough to invert safely."""

    def __init__(self, kappa: float):
        self.kappa = kappa
        super().__init__(f"confusion matrix fails diagonal dominance (kappa={kappa})")


def stream(*key) -> np.random.Generator:
    """Independent generator keyed by a tuple of non-negative integers."""
    return np.random.default_rng(np.random.SeedSequence([int(k) for k in key]))


@dataclass(frozen=True)
class DriftModel:
    """Per-gate coherent angle uncertainty, uniform draws.

    At gate j of a depth-d circuit the half-widths are theta_frac * theta for
    the swap angle and phase_max * (j / d) for both phases, so the phase
    drift ramps up over the circuit.
    """

    theta_frac: float = 0.1
    phase_max: float = 0.3

    def half_widths(self, depth: int, theta: float):
        ramp = self.phase_max * np.arange(1, depth + 1) / depth
        return self.theta_frac * abs(theta), ramp


@dataclass(frozen=True)
class ConfusionMatrix:
    """Row-stochastic matrix R of readout conditional probabilities.

    R[i, j] = P(measured bitstring j | prepared bitstring i), rows ordered
    (00, 01, 10, 11).
    """

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        r = np.asarray(self.entries, dtype=float)
        if r.shape != (4, 4):
            raise ValueError("confusion matrix must be 4x4")
        if (r < -1e-15).any():
            raise ValueError("confusion matrix entries must be nonnegative")
        if np.abs(r.sum(axis=1) - 1.0).max() > 1e-12:
            raise ValueError("confusion matrix rows must sum to 1")
        object.__setattr__(self, "entries", r)

    @classmethod
    def uniform(cls, p_correct: float) -> "ConfusionMatrix":
        """Diagonal p_correct with errors spread evenly over the other outcomes."""
        off = (1.0 - p_correct) / 3.0
        return cls(np.full((4, 4), off) + np.eye(4) * (p_correct - off))

    @property
    def dominance(self) -> float:
        return float(min(2.0 * np.diag(self.entries) - 1.0))

    @property
    def kappa(self) -> float:
        m = self.dominance
        return math.inf if m <= 0.0 else 1.0 / m


@dataclass(frozen=True)
class NoiseConfig:
    """Full noise description of one experiment.

    exact=True disables every noise mechanism and sampling (the infinite-shot
    analytic limit); otherwise shots Bernoulli trials per circuit are drawn.
    """

    shots: int = 100_000
    depol_rate: float = 0.0
    drift: DriftModel | None = None
    confusion: ConfusionMatrix | None = None
    seed: int = 0
    exact: bool = False

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not 0.0 <= self.depol_rate < 1.0:
            raise ValueError("depol_rate must be in [0, 1)")

    def to_dict(self) -> dict:
        return {
            "shots": self.shots,
            "depol_rate": self.depol_rate,
            "drift": None
            if self.drift is None
            else {"theta_frac": self.drift.theta_frac, "phase_max": self.drift.phase_max},
            "confusion": None if self.confusion is None else [list(map(float, row)) for row in self.confusion.entries],
            "seed": self.seed,
            "exact": self.exact,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NoiseConfig":
        known = {"shots", "depol_rate", "drift", "confusion", "seed", "exact"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown noise keys: {sorted(unknown)}")
        drift = data.get("drift")
        confusion = data.get("confusion")
        return cls(
            shots=int(data.get("shots", 100_000)),
            depol_rate=float(data.get("depol_rate", 0.0)),
            drift=None if drift is None else DriftModel(**drift),
            confusion=None if confusion is None else ConfusionMatrix(np.array(confusion)),
            seed=int(data.get("seed", 0)),
            exact=bool(data.get("exact", False)),
        )


def sample_counts(p_true: float, shots: int, rng: np.random.Generator) -> int:
    """Binomial(shots, p_true) draw of the success count."""
    if not 0.0 <= p_true <= 1.0:
        raise ValueError("p_true must be a probability")
    return int(rng.binomial(shots, p_true))


def apply_depolarizing(p: float, alpha: float):
    """Measured probability alpha * p + (1 - alpha)/4 under circuit fidelity alpha."""
    return alpha * p + (1.0 - alpha) / 4.0


def dem_fidelity(depol_rate: float, n_gates: int) -> float:
    """Digital-error-model circuit fidelity (1 - r)^n_gates."""
    if not 0.0 <= depol_rate < 1.0:
        raise ValueError("depol_rate must be in [0, 1)")
    return float((1.0 - depol_rate) ** n_gates)


def gate_count(d: int, input_state: str) -> int:
    """Total gate count of a depth-d circuit: 2d+5 for the X input, 2d+6 for Y.

    The Y-input circuit spends one extra phase gate on state preparation;
    both conventions are exposed because the single-alpha model only matches
    the per-gate channel picture up to O(r).
    """
    if input_state not in INPUT_STATES:
        raise ValueError(f"input_state must be one of {INPUT_STATES}")
    return 2 * d + 5 + (1 if input_state == "i" else 0)


def apply_confusion(q4, confusion: ConfusionMatrix) -> np.ndarray:
    """Measured distribution R^T q for a prepared 4-outcome distribution q."""
    q4 = np.asarray(q4, dtype=float)
    return confusion.entries.T @ q4


def invert_confusion(q4_measured, confusion: ConfusionMatrix) -> np.ndarray:
    """Solve R^T p = q_measured; the corrected vector is not clipped to [0, 1].

    Clipping would bias the Fourier coefficients downstream, so small
    negative components are passed through as-is.
    """
    if confusion.dominance <= 0.0:
        raise InversionRejectedError(confusion.kappa)
    return np.linalg.solve(confusion.entries.T, np.asarray(q4_measured, dtype=float))


def confusion_sample_size(kappa: float, epsilon: float, alpha_conf: float, constant: float = 8.0) -> int:
    """Shots per preparation row guaranteeing || p - p_fs ||_2 <= epsilon w.p. 1 - alpha.

    ceil(C kappa^2 (kappa + eps)^2 ln(32/alpha) / eps^2); the default C = 8 is
    the conservative proof-backed constant and may be overridden.
    """
    if kappa < 1.0:
        raise ValueError("kappa must be >= 1")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if not 0.0 < alpha_conf < 1.0:
        raise ValueError("alpha_conf must be in (0, 1)")
    return math.ceil(constant * kappa**2 * (kappa + epsilon) ** 2 * math.log(32.0 / alpha_conf) / epsilon**2)


def _drifted_survival(d, omegas, params, drift, rngs, beta):
    """|<01| circuit |beta>|^2 with fresh per-gate drift per circuit."""
    nc = len(omegas)
    gates = np.empty((nc, d, 2, 2), dtype=complex)
    dth, ramp = drift.half_widths(d, params.theta)
    for i, rng in enumerate(rngs):
        u = rng.uniform(-1.0, 1.0, size=(d, 3))
        th = params.theta + dth * u[:, 0]
        ph = params.varphi + ramp * u[:, 1]
        ch = params.chi + ramp * u[:, 2]
        ct, st = np.cos(th), np.sin(th)
        gates[i, :, 0, 0] = np.exp(-1j * ph) * ct
        gates[i, :, 0, 1] = -1j * np.exp(1j * ch) * st
        gates[i, :, 1, 0] = -1j * np.exp(-1j * ch) * st
        gates[i, :, 1, 1] = np.exp(1j * ph) * ct
    zp = np.exp(1j * np.asarray(omegas, dtype=float))
    gates[:, :, 0, :] *= zp[:, None, None]
    gates[:, :, 1, :] *= np.conj(zp)[:, None, None]
    v = np.broadcast_to(np.eye(2, dtype=complex), (nc, 2, 2)).copy()
    for g in range(d):
        v = gates[:, g] @ v
    amp = (v[:, 0, 0] + beta * v[:, 0, 1]) / np.sqrt(2.0)
    return np.abs(amp) ** 2


def _measured_distributions(d, omegas, params, noise, input_state, rngs):
    """Exact 4-outcome distributions per circuit, before shot sampling."""
    if noise.drift is not None:
        p = _drifted_survival(d, omegas, params, noise.drift, rngs, _BETA[input_state])
    else:
        h = exact_signal(d, omegas, params)
        p = 0.5 + (np.conj(_BETA[input_state]) * h).real
    nc = len(p)
    alpha = dem_fidelity(noise.depol_rate, gate_count(d, input_state)) if noise.depol_rate > 0.0 else 1.0
    q4 = np.empty((nc, 4))
    q4[:, 0] = q4[:, 3] = (1.0 - alpha) / 4.0
    q4[:, 1] = alpha * p + (1.0 - alpha) / 4.0
    q4[:, 2] = alpha * (1.0 - p) + (1.0 - alpha) / 4.0
    if noise.confusion is not None:
        if noise.confusion.dominance <= 0.0:
            warnings.warn("confusion matrix is not diagonally dominant; downstream inversion will fail", stacklevel=3)
        q4 = q4 @ noise.confusion.entries
    return q4


def simulate_probability_batch(
    d: int,
    omegas,
    params: FsimParams,
    noise: NoiseConfig,
    input_state: str,
    *,
    point: int = 0,
    replicate: int = 0,
    circuit_ids=None,
    correct_readout: bool = True,
) -> np.ndarray:
    """Empirical |01> probabilities for a batch of circuits at angles omegas.

    One generator per circuit, keyed (seed, point, replicate, circuit_id); a
    circuit's drift draws precede its shot draw on its own stream.  With
    correct_readout the sampled 4-outcome frequencies are pushed through the
    inverse confusion matrix before the 01 component is returned.
    """
    if input_state not in INPUT_STATES:
        raise ValueError(f"input_state must be one of {INPUT_STATES}")
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    if noise.exact:
        h = exact_signal(d, omegas, params)
        return 0.5 + (np.conj(_BETA[input_state]) * h).real
    if circuit_ids is None:
        circuit_ids = np.arange(len(omegas))
    rngs = [stream(noise.seed, point, replicate, cid) for cid in circuit_ids]
    q4 = _measured_distributions(d, omegas, params, noise, input_state, rngs)
    freq = np.empty_like(q4)
    for i, rng in enumerate(rngs):
        freq[i] = rng.multinomial(noise.shots, q4[i] / q4[i].sum()) / noise.shots
    if correct_readout and noise.confusion is not None:
        freq = np.linalg.solve(noise.confusion.entries.T, freq.T).T
    return freq[:, 1]


def simulate_noisy_counts(
    d: int,
    omega: float,
    params: FsimParams,
    noise: NoiseConfig,
    input_state: str,
    *,
    point: int = 0,
    replicate: int = 0,
    circuit_id: int = 0,
) -> np.ndarray:
    """Raw 4-outcome counts of one noisy circuit execution."""
    if input_state not in INPUT_STATES:
        raise ValueError(f"input_state must be one of {INPUT_STATES}")
    rng = stream(noise.seed, point, replicate, circuit_id)
    q4 = _measured_distributions(d, np.array([float(omega)]), params, noise, input_state, [rng])[0]
    return rng.multinomial(noise.shots, q4 / q4.sum())


def simulate_noisy_circuit(
    d: int,
    omega: float,
    params: FsimParams,
    noise: NoiseConfig,
    input_state: str,
    *,
    point: int = 0,
    replicate: int = 0,
    circuit_id: int = 0,
) -> float:
    """Empirical |01> probability of one circuit (measured, no readout correction).

    exact=True configs return the analytic probability instead of sampling.
    Deterministic given (seed, point, replicate, circuit_id).
    """
    if noise.exact:
        h = complex(exact_signal(d, float(omega), params))
        return 0.5 + (np.conj(_BETA[input_state]) * h).real
    counts = simulate_noisy_counts(
        d, omega, params, noise, input_state, point=point, replicate=replicate, circuit_id=circuit_id
    )
    return counts[1] / noise.shots
