"""Entanglement and separability criteria for two- and three-mode Gaussian states.

Three-mode states use the fixed mode naming (A, A', B) = (0, 1, 2).  A 1x2
splitting is judged by the sign of the invariant combination
``sigma = i3 - i2 + i1 - 1`` of the partially transposed matrix: negative
means entangled.  Two-mode states are judged by the lower symplectic
eigenvalue ``mu`` of the partial transpose: below 1 means entangled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    GaussianState,
    _as_even_square,
    char_poly_invariants,
    partial_transpose,
    reduce_modes,
)
from .errors import ComplexEigenvalueError, DimensionMismatchError, NotBisymmetricError
from .ops import MeasurementSpec, condition_on_measurement, mode_permutation

#: Verdicts within this band of the threshold are reported as boundary cases.
BOUNDARY_TOL = 1e-12
#: Tolerated asymmetry under exchange of the two unmeasured modes.
BISYMMETRY_TOL = 1e-8

MODE_NAMES = ("A", "A'", "B")
SPLITTING_LABELS = ("A|(A'B)", "A'|(AB)", "B|(AA')")
PAIR_LABELS = ("A-A'", "A-B", "A'-B")
PAIR_MODES = ((0, 1), (0, 2), (1, 2))

CLASS_FULLY_INSEPARABLE = "fully-inseparable"
CLASS_ONE_MODE_BISEPARABLE = "one-mode-biseparable"
CLASS_TWO_MODE_BISEPARABLE = "two-mode-biseparable"
CLASS_PPT_ALL = "ppt-all-splittings"


@dataclass
class SplittingVerdict:
    """Invariant test value and verdict for one 1x2 splitting."""

    splitting: str
    sigma: float

    @property
    def entangled(self) -> bool:
        return self.sigma < -BOUNDARY_TOL

    @property
    def boundary(self) -> bool:
        return abs(self.sigma) <= BOUNDARY_TOL

    def to_json_dict(self) -> dict:
        return {
            "splitting": self.splitting,
            "sigma": self.sigma,
            "entangled": self.entangled,
            "boundary": self.boundary,
        }


@dataclass
class EntanglementMetrics:
    """Partial-transpose metrics of a two-mode state.

    ``mu`` is the lower symplectic eigenvalue of the partial transpose,
    ``delta_tilde`` the invariant ``det A + det B - 2 det C`` it derives
    from, and ``ppt_condition_value`` the equivalent determinant-form test
    value ``det cm - delta_tilde + 1`` (negative iff entangled).
    """

    mu: float
    log_negativity: float
    delta_tilde: float
    ppt_condition_value: float

    @property
    def entangled(self) -> bool:
        return self.mu < 1.0 - BOUNDARY_TOL

    @property
    def boundary(self) -> bool:
        return abs(self.mu - 1.0) <= BOUNDARY_TOL

    def to_json_dict(self) -> dict:
        return {
            "mu": self.mu,
            "log_negativity": self.log_negativity,
            "delta_tilde": self.delta_tilde,
            "ppt_condition_value": self.ppt_condition_value,
            "entangled": self.entangled,
        }


@dataclass
class SeparabilityReport:
    """Splitting verdicts, pairwise metrics, and the resulting class label.

    ``ppt-all-splittings`` deliberately does not distinguish three-mode
    biseparable from fully separable states; the invariant tests carry no
    such discriminator.
    """

    verdicts: tuple[SplittingVerdict, ...]
    pairwise: tuple[tuple[str, EntanglementMetrics], ...]
    class_label: str
    separable_splitting: str | None = None
    entangled_splitting: str | None = None

    def to_json_dict(self) -> dict:
        out = {
            "verdicts": [v.to_json_dict() for v in self.verdicts],
            "pairwise": [{"pair": label, **m.to_json_dict()} for label, m in self.pairwise],
            "class": self.class_label,
        }
        if self.separable_splitting is not None:
            out["separable_splitting"] = self.separable_splitting
        if self.entangled_splitting is not None:
            out["entangled_splitting"] = self.entangled_splitting
        return out


def splitting_sigma(cm: np.ndarray, mode: int) -> SplittingVerdict:
    """Invariant separability test of one mode against the remaining pair."""
    cm = _as_even_square(cm, "cm")
    if cm.shape != (6, 6):
        raise DimensionMismatchError(f"expected a 3-mode (6x6) matrix, got {cm.shape}")
    i1, i2, i3 = char_poly_invariants(partial_transpose(cm, mode))
    return SplittingVerdict(SPLITTING_LABELS[mode], i3 - i2 + i1 - 1.0)


def two_mode_metrics(cm: np.ndarray) -> EntanglementMetrics:
    """Partial-transpose entanglement metrics of a two-mode state.

    Raises:
        ComplexEigenvalueError: the discriminant ``delta_tilde^2 - 4 det cm``
            is negative beyond tolerance, i.e. the partial transpose has no
            real symplectic spectrum (unphysical input).
    """
    cm = _as_even_square(cm, "cm")
    if cm.shape != (4, 4):
        raise DimensionMismatchError(f"expected a 2-mode (4x4) matrix, got {cm.shape}")
    det = np.linalg.det
    delta_tilde = float(det(cm[:2, :2]) + det(cm[2:, 2:]) - 2.0 * det(cm[:2, 2:]))
    det_cm = float(det(cm))
    disc = delta_tilde**2 - 4.0 * det_cm
    if disc < -1e-9:
        raise ComplexEigenvalueError(f"discriminant {disc:.3e} is negative: unphysical input")
    mu_sq = 0.5 * (delta_tilde - np.sqrt(max(disc, 0.0)))
    if mu_sq < -1e-9:
        raise ComplexEigenvalueError(f"squared eigenvalue {mu_sq:.3e} is negative: unphysical input")
    mu = float(np.sqrt(max(mu_sq, 0.0)))
    return EntanglementMetrics(
        mu=mu,
        log_negativity=log_negativity(mu),
        delta_tilde=delta_tilde,
        ppt_condition_value=det_cm - delta_tilde + 1.0,
    )


def log_negativity(mu: float) -> float:
    """Logarithmic negativity ``max(0, -log2 mu)`` of a PT lower eigenvalue."""
    if mu < 0:
        raise ValueError(f"mu must be nonnegative, got {mu}")
    if mu == 0:
        return float("inf")
    return max(0.0, float(-np.log2(mu)))


def classify_three_mode(cm: np.ndarray) -> SeparabilityReport:
    """Full separability report of a three-mode state.

    Runs the invariant test on all three 1x2 splittings and the
    partial-transpose metrics on all three two-mode reductions, then maps
    the number of entangled splittings to the class label (3: fully
    inseparable, 2: one-mode biseparable, 1: two-mode biseparable,
    0: PPT across all splittings).
    """
    cm = _as_even_square(cm, "cm")
    if cm.shape != (6, 6):
        raise DimensionMismatchError(f"expected a 3-mode (6x6) matrix, got {cm.shape}")
    verdicts = tuple(splitting_sigma(cm, mode) for mode in range(3))
    pairwise = tuple(
        (label, two_mode_metrics(reduce_modes(cm, modes)))
        for label, modes in zip(PAIR_LABELS, PAIR_MODES)
    )
    entangled = [v for v in verdicts if v.entangled]
    separable = [v for v in verdicts if not v.entangled]
    if len(entangled) == 3:
        return SeparabilityReport(verdicts, pairwise, CLASS_FULLY_INSEPARABLE)
    if len(entangled) == 2:
        return SeparabilityReport(
            verdicts, pairwise, CLASS_ONE_MODE_BISEPARABLE,
            separable_splitting=separable[0].splitting,
        )
    if len(entangled) == 1:
        return SeparabilityReport(
            verdicts, pairwise, CLASS_TWO_MODE_BISEPARABLE,
            entangled_splitting=entangled[0].splitting,
        )
    return SeparabilityReport(verdicts, pairwise, CLASS_PPT_ALL)


def _check_bisymmetric(cm: np.ndarray, unmeasured: tuple[int, int]) -> None:
    perm = list(range(3))
    perm[unmeasured[0]], perm[unmeasured[1]] = perm[unmeasured[1]], perm[unmeasured[0]]
    s = mode_permutation(3, perm).matrix
    dev = np.abs(s @ cm @ s.T - cm).max()
    if dev > BISYMMETRY_TOL:
        raise NotBisymmetricError(
            f"state deviates by {dev:.3e} under exchange of modes "
            f"{unmeasured[0]} and {unmeasured[1]}"
        )


def localizable_mu(cm: np.ndarray, measured_mode: int) -> float:
    """PT lower eigenvalue left between two exchange-symmetric modes after
    homodyne detection of the position quadrature on the third.

    Position homodyne is the optimal Gaussian measurement for bisymmetric
    states, so the input must be symmetric under exchange of the two
    unmeasured modes (otherwise :class:`NotBisymmetricError`).
    """
    cm = _as_even_square(cm, "cm")
    if cm.shape != (6, 6):
        raise DimensionMismatchError(f"expected a 3-mode (6x6) matrix, got {cm.shape}")
    unmeasured = tuple(m for m in range(3) if m != measured_mode)
    _check_bisymmetric(cm, unmeasured)
    conditioned = condition_on_measurement(
        GaussianState(cm), MeasurementSpec.homodyne_x(measured_mode)
    )
    return two_mode_metrics(conditioned.cm).mu


def measurement_scan_oracle(
    cm: np.ndarray,
    measured_mode: int,
    n_theta: int = 64,
    n_t: int = 64,
    t_decades: float = 6.0,
) -> float:
    """Minimum conditioned ``mu`` over a grid of Gaussian measurement seeds.

    Seeds are ``R(theta) diag(t, 1/t) R(theta)^T`` with theta uniform on
    [0, pi) and t log-spaced over ``[10^-t_decades, 10^t_decades]``, which
    brackets both homodyne limits.  Used as a brute-force check that no
    scanned Gaussian measurement beats the homodyne-x route.
    """
    cm = _as_even_square(cm, "cm")
    state = GaussianState(cm)
    best = np.inf
    for theta in np.linspace(0.0, np.pi, n_theta, endpoint=False):
        rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        for t in np.logspace(-t_decades, t_decades, n_t):
            seed = rot @ np.diag([t, 1.0 / t]) @ rot.T
            spec = MeasurementSpec.general_gaussian(measured_mode, seed)
            mu = two_mode_metrics(condition_on_measurement(state, spec).cm).mu
            if mu < best:
                best = mu
    return float(best)
