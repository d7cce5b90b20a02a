"""Fisher information and Cramer-Rao lower bounds for the calibration design.

The per-shot information of the 2(2d-1) binomial measurements is summed over
the modulation grid with weights 1/(p(1-p)); partial derivatives come from
central finite differences with Richardson extrapolation, cross-validated
against a second step size before any entry is accepted.  The pre-asymptotic
closed forms (valid for d*theta << 1) and a depth-scan with log-log slope
estimates expose the variance-scaling transition around d ~ 1/theta.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .signal_model import exact_signal, omega_grid
from .su2 import FsimParams

__all__ = [
    "FisherMatrix",
    "CrlbReport",
    "GradientValidationError",
    "SingularFisherError",
    "PARAM_NAMES",
    "fisher_matrix",
    "crlb",
    "preasymptotic_variances",
    "regime_flag",
    "transition_scan",
    "windowed_slopes",
]

PARAM_NAMES = ("theta", "varphi", "chi")

_PROB_CLIP = 1e-12
_VALIDATION_RTOL = 1e-6


class GradientValidationError(RuntimeError):
    """Finite-difference gradients disagreed across step sizes."""


class SingularFisherError(np.linalg.LinAlgError):
    """Fisher matrix is numerically singular; some direction is unbounded."""

    def __init__(self, direction: np.ndarray):
        self.direction = direction
        weights = ", ".join(f"{n}={w:+.3f}" for n, w in zip(PARAM_NAMES, direction))
        super().__init__(f"unbounded direction ({weights})")


@dataclass(frozen=True)
class FisherMatrix:
    """3x3 information matrix over (theta, varphi, chi) for M shots per circuit."""

    entries: np.ndarray = field(repr=False)
    depth: int
    shots: int
    clamped_points: int = 0

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (3, 3):
            raise ValueError("Fisher matrix must be 3x3")
        object.__setattr__(self, "entries", e)


@dataclass(frozen=True)
class CrlbReport:
    """diag(I^{-1}) next to the pre-asymptotic closed forms."""

    crlb_theta: float
    crlb_varphi: float
    crlb_chi: float
    preasymptotic_theta: float
    preasymptotic_varphi: float
    preasymptotic_chi: float
    regime_flag: str


def _probabilities(d: int, omegas: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Stacked (p_X, p_Y) over the grid at parameter vector xi."""
    h = exact_signal(d, omegas, FsimParams(*xi))
    return np.concatenate([0.5 + h.real, 0.5 + h.imag])


def _fd_step(d: int, value: float) -> float:
    # Truncation of the central difference grows like (2 d h)^2; shrink the
    # step with depth so the Richardson pair keeps agreeing to 1e-6.
    return min(1e-6, 1e-3 / d) * max(1.0, abs(value))


def gradient_grid(d: int, params: FsimParams) -> np.ndarray:
    """(3, 2(2d-1)) array of dp/dxi over the grid, Richardson-extrapolated.

    Raises GradientValidationError unless the half-step estimate agrees with
    the extrapolated one to 1e-6 in vector norm.
    """
    omegas = omega_grid(d)
    xi = np.array([params.theta, params.varphi, params.chi])
    grads = np.empty((3, 2 * len(omegas)))
    for k in range(3):
        h = _fd_step(d, xi[k])

        def shifted(delta, k=k):
            z = xi.copy()
            z[k] += delta
            return _probabilities(d, omegas, z)

        coarse = (shifted(h) - shifted(-h)) / (2.0 * h)
        fine = (shifted(h / 2.0) - shifted(-h / 2.0)) / h
        extrap = (4.0 * fine - coarse) / 3.0
        scale = np.linalg.norm(extrap)
        # Absolute allowance at the difference-quotient rounding-noise level,
        # so near-zero gradients (e.g. every phase row as theta -> 0) are not
        # rejected by a purely relative gate.
        noise_floor = 100.0 * np.finfo(float).eps / h * np.sqrt(extrap.size)
        if np.linalg.norm(fine - extrap) > _VALIDATION_RTOL * scale + noise_floor:
            raise GradientValidationError(
                f"step sizes disagree for {PARAM_NAMES[k]} at d={d}: "
                f"{np.linalg.norm(fine - extrap):.3e} vs scale {scale:.3e}"
            )
        grads[k] = extrap
    return grads


def fisher_matrix(d: int, params: FsimParams, m_shots: int) -> FisherMatrix:
    """I_kk' = M sum_j dp/dxi_k dp/dxi_k' / (p (1 - p)) over both input states."""
    omegas = omega_grid(d)
    grads = gradient_grid(d, params)
    p = _probabilities(d, omegas, np.array([params.theta, params.varphi, params.chi]))
    clamped = int(((p < _PROB_CLIP) | (p > 1.0 - _PROB_CLIP)).sum())
    p = np.clip(p, _PROB_CLIP, 1.0 - _PROB_CLIP)
    weights = 1.0 / (p * (1.0 - p))
    entries = m_shots * (grads * weights) @ grads.T
    entries = 0.5 * (entries + entries.T)
    return FisherMatrix(entries=entries, depth=d, shots=m_shots, clamped_points=clamped)


def preasymptotic_variances(d: int, theta: float, m_shots: int):
    """Closed-form optimal variances for d*theta << 1.

    Var(theta) = 1/(4Md(2d-1)), Var(varphi) = 3/(4Md(2d-1)(d^2-1) theta^2),
    Var(chi) = (4d^2-1)/((d^2-1) 4Md(2d-1) theta^2).
    """
    base = 1.0 / (4.0 * m_shots * d * (2 * d - 1))
    return (
        base,
        3.0 * base / ((d * d - 1) * theta * theta),
        base * (4.0 * d * d - 1) / ((d * d - 1) * theta * theta),
    )


def regime_flag(d: int, theta: float) -> str:
    """Artifact convention: pre-asymptotic below d*theta = 0.1, asymptotic above 3."""
    dt = d * abs(theta)
    if dt < 0.1:
        return "pre-asymptotic"
    if dt > 3.0:
        return "asymptotic"
    return "transition"


def _inverse_diagonal(entries: np.ndarray) -> np.ndarray:
    # Precondition by the diagonal so the phase block's wide dynamic range
    # does not poison the 3x3 inversion.
    diag = np.diag(entries)
    if (diag <= 0.0).any():
        k = int(np.argmin(diag))
        raise SingularFisherError(np.eye(3)[k])
    s = 1.0 / np.sqrt(diag)
    scaled = entries * s[:, None] * s[None, :]
    vals, vecs = np.linalg.eigh(scaled)
    if vals[0] <= 1e-13 * vals[-1]:
        raise SingularFisherError(vecs[:, 0] * s)
    return np.diag(np.linalg.inv(scaled)) * s * s


def crlb(d: int, params: FsimParams, m_shots: int) -> CrlbReport:
    """Exact CRLB diagonal plus the pre-asymptotic closed forms and regime flag."""
    if d < 2:
        raise ValueError("the closed forms need depth >= 2")
    info = fisher_matrix(d, params, m_shots)
    diag = _inverse_diagonal(info.entries)
    pre = preasymptotic_variances(d, params.theta, m_shots)
    return CrlbReport(
        crlb_theta=float(diag[0]),
        crlb_varphi=float(diag[1]),
        crlb_chi=float(diag[2]),
        preasymptotic_theta=pre[0],
        preasymptotic_varphi=pre[1],
        preasymptotic_chi=pre[2],
        regime_flag=regime_flag(d, params.theta),
    )


def windowed_slopes(depths, values, half_window: int = 2) -> np.ndarray:
    """Per-point log-log slope via least squares over +-half_window neighbors."""
    x = np.log(np.asarray(depths, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    n = len(x)
    out = np.empty(n)
    for i in range(n):
        lo, hi = max(0, i - half_window), min(n, i + half_window + 1)
        out[i] = np.polyfit(x[lo:hi], y[lo:hi], 1)[0]
    return out


def transition_scan(
    theta: float,
    m_shots: int,
    depth_grid,
    varphi: float = np.pi / 16,
    chi: float = 5 * np.pi / 32,
) -> list[dict]:
    """CRLB table over an ascending depth grid with windowed slope estimates.

    Rows carry (d, crlb_theta, crlb_varphi, crlb_chi, slope_theta,
    slope_varphi, slope_chi, the closed forms and the regime flag); the
    slopes of crlb_varphi cross from about -4 to -3 near d = 1/theta.
    """
    depths = [int(d) for d in depth_grid]
    if depths != sorted(depths):
        raise ValueError("depth grid must be ascending")
    reports = [crlb(d, FsimParams(theta, varphi, chi), m_shots) for d in depths]
    cols = {
        "crlb_theta": [r.crlb_theta for r in reports],
        "crlb_varphi": [r.crlb_varphi for r in reports],
        "crlb_chi": [r.crlb_chi for r in reports],
    }
    slopes = {name: windowed_slopes(depths, vals) for name, vals in cols.items()}
    rows = []
    for i, (d, rep) in enumerate(zip(depths, reports)):
        rows.append(
            {
                "d": d,
                "crlb_theta": rep.crlb_theta,
                "crlb_varphi": rep.crlb_varphi,
                "crlb_chi": rep.crlb_chi,
                "slope_theta": float(slopes["crlb_theta"][i]),
                "slope_varphi": float(slopes["crlb_varphi"][i]),
                "slope_chi": float(slopes["crlb_chi"][i]),
                "preasymptotic_theta": rep.preasymptotic_theta,
                "preasymptotic_varphi": rep.preasymptotic_varphi,
                "preasymptotic_chi": rep.preasymptotic_chi,
                "regime_flag": rep.regime_flag,
            }
        )
    return rows
