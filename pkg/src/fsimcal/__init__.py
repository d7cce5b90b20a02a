"""Fourier-space calibration of FsimGate angles from periodic circuits.

Simulates the phase-modulated periodic calibration circuit exactly on the
single-excitation subspace, generates noisy measurement data (finite shots,
depolarizing, coherent drift, readout confusion), infers the gate angles
from the DFT of the reconstructed signal, and benchmarks the estimators
against Fisher-information lower bounds.
"""

from .estimators import (
    DegenerateCoefficientError,
    EstimateReport,
    FidelityCollapseError,
    PeakFitResult,
    estimate_alpha_corrected,
    fourier_estimate,
    peak_fit,
    sequential_phase_diffs,
    theta_pd_estimate,
    wpa_solve,
    wpa_weights,
)
from .fisher import CrlbReport, FisherMatrix, crlb, fisher_matrix, preasymptotic_variances, transition_scan
from .harness import (
    ConfusionCheckConfig,
    ExperimentConfig,
    PeakFitConfig,
    RunRecord,
    emit_figure_data,
    run_alpha_scan,
    run_calibration,
    run_confusion_check,
    run_crlb_scan,
    run_mode,
    run_replicate,
    run_sweep,
)
from .noise import (
    ConfusionMatrix,
    DriftModel,
    InversionRejectedError,
    NoiseConfig,
    apply_confusion,
    apply_depolarizing,
    confusion_sample_size,
    dem_fidelity,
    gate_count,
    invert_confusion,
    sample_counts,
    simulate_noisy_circuit,
    simulate_noisy_counts,
    simulate_probability_batch,
)
from .signal_model import (
    CircuitSpec,
    FourierSpectrum,
    GridMismatchError,
    RegimeViolationError,
    SignalSample,
    amplitude_profile,
    approx_coefficients,
    dft_spectrum,
    exact_probabilities,
    exact_signal,
    omega_grid,
    snr_leading_order,
    snr_lower_bound,
    spectrum_from_h,
)
from .su2 import (
    FsimParams,
    PolyPair,
    closed_form_pq,
    fsim_subspace_unitary,
    periodic_unitary_product,
    pq_values,
    qsp_unitary,
    special_point_pq,
)

__version__ = "0.1.0"
