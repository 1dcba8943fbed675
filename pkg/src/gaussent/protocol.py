"""Closed forms for the three-mode entanglement-sharing protocol.

The protocol has two dimensionless knobs: squeezing ``r`` and noise
``epsilon``.  A correlated-displacement preparation leaves Alice and Bob
with a separable two-mode state; Alice splits her mode on a balanced beam
splitter (mode order (A, A', B)); Bob finally superimposes his mode with
whichever of A, A' he receives.  Every covariance matrix and threshold of
that story has a closed form here, and each one is cross-checked against
the generic transform pipeline and root finders in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GaussianState
from .errors import DomainError, NumericalFailureError
from .ops import embed_vacuum
from .separability import SeparabilityReport, classify_three_mode, localizable_mu, two_mode_metrics

_SQRT2 = np.sqrt(2.0)
_C8 = 8.0 * _SQRT2  # recurring constant in the pair-entanglement threshold

STAGE_INITIAL = "initial"
STAGE_SHARED = "shared"
STAGE_FINAL_VIA_APRIME = "final-via-A'"
STAGE_FINAL_VIA_A = "final-via-A"
STAGES = (STAGE_INITIAL, STAGE_SHARED, STAGE_FINAL_VIA_APRIME, STAGE_FINAL_VIA_A)

ROUTE_VIA_APRIME = "via-A'"
ROUTE_VIA_A = "via-A"


@dataclass(frozen=True)
class ProtocolParams:
    """Squeezing and noise parameters, both dimensionless and nonnegative."""

    r: float
    epsilon: float

    def __post_init__(self):
        if self.r < 0 or self.epsilon < 0:
            raise ValueError(f"r and epsilon must be nonnegative, got r={self.r}, epsilon={self.epsilon}")


@dataclass
class BlockSet:
    """The four diagonal 2x2 blocks the shared three-mode matrix is built from."""

    alpha: np.ndarray
    beta: np.ndarray
    tau: np.ndarray
    delta: np.ndarray


@dataclass
class ThresholdReport:
    """All squeezing thresholds at one noise value."""

    epsilon: float
    r_l: float
    r_e: float
    r_m: float
    gap: float
    p: float
    q: float

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "r_l": self.r_l,
            "r_e": self.r_e,
            "r_m": self.r_m,
            "gap": self.gap,
            "p": self.p,
            "q": self.q,
        }


@dataclass
class StageState:
    """A protocol stage: its three-mode state plus the separability report."""

    stage: str
    state: GaussianState
    report: SeparabilityReport


def initial_cm(params: ProtocolParams) -> GaussianState:
    """Two-mode state shared by Alice and Bob after the correlated displacement.

    The off-diagonal block is diag(exp(-2r) - 1, 0); its determinant vanishes,
    so the state is separable for every parameter choice.
    """
    r, eps = params.r, params.epsilon
    em = np.exp(-2.0 * r)
    cm = np.array([
        [1.0 + em * (np.exp(2.0 * eps) - 1.0), 0.0, em - 1.0, 0.0],
        [0.0, np.exp(2.0 * r), 0.0, 0.0],
        [em - 1.0, 0.0, 2.0 - em, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
    return GaussianState(cm)


def shared_blocks(params: ProtocolParams) -> BlockSet:
    r, eps = params.r, params.epsilon
    em, ep = np.exp(-2.0 * r), np.exp(2.0 * r)
    noise = np.exp(2.0 * eps) - 1.0
    return BlockSet(
        alpha=np.diag([2.0 + em * noise, ep + 1.0]) / 2.0,
        beta=np.diag([2.0 - em, 1.0]),
        tau=np.diag([em - 1.0, 0.0]) / _SQRT2,
        delta=np.diag([em * noise, ep - 1.0]) / 2.0,
    )


def shared_cm(params: ProtocolParams) -> tuple[GaussianState, BlockSet]:
    """Three-mode state after Alice splits her mode with a vacuum ancilla.

    Equals the transform pipeline (vacuum embedding at slot A', then the
    'plus' beam splitter on (A, A')) applied to :func:`initial_cm`.
    """
    b = shared_blocks(params)
    cm = np.block([
        [b.alpha, b.delta, b.tau],
        [b.delta, b.alpha, b.tau],
        [b.tau, b.tau, b.beta],
    ])
    return GaussianState(cm), b


def final_cm(params: ProtocolParams, route: str = ROUTE_VIA_APRIME) -> GaussianState:
    """Three-mode state after Bob's beam splitter.

    ``via-A'``: Bob superimposes the received mode A' with B ('plus'
    splitter on (B, A')).  ``via-A``: Bob mixes the received mode A with B
    ('minus' splitter on (A, B)).
    """
    b = shared_blocks(params)
    al, be, ta, de = b.alpha, b.beta, b.tau, b.delta
    if route == ROUTE_VIA_APRIME:
        cm = np.block([
            [al, (ta - de) / _SQRT2, (ta + de) / _SQRT2],
            [(ta - de) / _SQRT2, (al + be - 2.0 * ta) / 2.0, (be - al) / 2.0],
            [(ta + de) / _SQRT2, (be - al) / 2.0, (al + be + 2.0 * ta) / 2.0],
        ])
    elif route == ROUTE_VIA_A:
        cm = np.block([
            [(al + be - 2.0 * ta) / 2.0, (de - ta) / _SQRT2, (al - be) / 2.0],
            [(de - ta) / _SQRT2, al, (de + ta) / _SQRT2],
            [(al - be) / 2.0, (de + ta) / _SQRT2, (al + be + 2.0 * ta) / 2.0],
        ])
    else:
        raise ValueError(f"route must be {ROUTE_VIA_APRIME!r} or {ROUTE_VIA_A!r}, got {route!r}")
    return GaussianState(cm)


def reduced_pair_cm(params: ProtocolParams) -> np.ndarray:
    """Two-mode matrix of the finally entangled pair (A with B, or A' with B).

    Both final routes reduce to the same matrix.
    """
    b = shared_blocks(params)
    off = (b.delta + b.tau) / _SQRT2
    corner = (b.alpha + b.beta + 2.0 * b.tau) / 2.0
    return np.block([[b.alpha, off], [off, corner]])


def threshold_r_e(epsilon: float) -> float:
    """Squeezing above which Bob's beam splitter entangles the reduced pair.

    Evaluated with exp(2 epsilon) factored out of the square root so large
    noise values cannot overflow.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be nonnegative, got {epsilon}")
    em = np.exp(-2.0 * epsilon)
    u = 11.0 + (_C8 - 13.0) * em
    return epsilon + 0.5 * np.log((u + np.sqrt(u * u + 4.0 * (_C8 - 1.0) * em)) / (2.0 * (_C8 - 1.0)))


def threshold_r_m(epsilon: float) -> float:
    """Squeezing above which a Gaussian measurement on B can localize entanglement."""
    if epsilon < 0:
        raise ValueError(f"epsilon must be nonnegative, got {epsilon}")
    return epsilon + 0.5 * np.log1p(np.sqrt(1.0 - np.exp(-2.0 * epsilon)))


def cubic_pq(epsilon: float) -> tuple[float, float]:
    """Depressed-cubic coefficients behind the branch point of :func:`mu_m`.

    ``p`` is negative for every epsilon >= 0, so the trigonometric root is
    always real.
    """
    e2 = np.exp(2.0 * epsilon)
    return 1.0 / 6.0 - e2, 5.0 / 54.0 + e2 / 6.0


def threshold_r_l(epsilon: float) -> float:
    """Squeezing at which the two branches of :func:`mu_m` meet."""
    if epsilon < 0:
        raise ValueError(f"epsilon must be nonnegative, got {epsilon}")
    p, q = cubic_pq(epsilon)
    # -(q/2) sqrt(-27/p^3) written so p^3 is never formed (overflows early)
    arg = -(q / 2.0) * np.sqrt(27.0) * (-p) ** -1.5
    if abs(arg) > 1.0:
        if abs(arg) > 1.0 + 1e-12:
            raise DomainError(f"arccos argument {arg!r} outside [-1, 1]")
        arg = np.clip(arg, -1.0, 1.0)
    root = 2.0 * np.sqrt(-p / 3.0) * np.cos(np.arccos(arg) / 3.0)
    return 0.5 * np.log(1.0 / 3.0 + root)


def mu_m(params: ProtocolParams) -> float:
    """Minimal conditioned PT eigenvalue over all Gaussian measurements on B.

    Piecewise: ``exp(r)`` below the branch squeezing, otherwise the square
    root of the conditional position variance left after homodyne detection
    of x_B.
    """
    r, eps = params.r, params.epsilon
    if r < threshold_r_l(eps):
        return float(np.exp(r))
    em = np.exp(-2.0 * r)
    return float(np.sqrt(1.0 + em * (np.exp(2.0 * eps) - 1.0) - (em - 1.0) ** 2 / (2.0 - em)))


def _bisect_root(f, lo: float, hi: float, xtol: float = 1e-10) -> float:
    """Plain bisection on a bracketing interval, terminating at width xtol."""
    flo = f(lo)
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


_NOISE_FLOOR = 1e-7  # mu - 1 loses half precision where its discriminant degenerates


def _threshold_root(f, r_max: float = 5.0, xtol: float = 1e-10) -> float:
    """Locate where f crosses from positive to negative on [0, r_max].

    The protocol's mu curves all satisfy f(0) = 0 exactly (the unsqueezed
    state sits on the separability boundary), rise for small r, and cross
    down once at the threshold, so the bracket is the last sign change on a
    log-augmented scan grid.  Grid values must clear a small noise floor to
    count as positive; curves that never do resolve to a threshold of 0.
    """
    grid = np.concatenate(([0.0], np.logspace(-9.0, np.log10(r_max), 120)))
    vals = [f(r) for r in grid]
    for k in reversed(range(len(grid) - 1)):
        if vals[k] > _NOISE_FLOOR and vals[k + 1] <= 0.0:
            return _bisect_root(f, grid[k], grid[k + 1], xtol)
    if vals[-1] > _NOISE_FLOOR:
        raise NumericalFailureError(f"no threshold crossing found on [0, {r_max}]")
    return 0.0


def numeric_threshold_r_e(epsilon: float, r_max: float = 5.0) -> float:
    """Bisection root of mu(reduced pair) - 1 in r; verifies :func:`threshold_r_e`."""
    def f(r):
        return two_mode_metrics(reduced_pair_cm(ProtocolParams(r, epsilon))).mu - 1.0
    return _threshold_root(f, r_max)


def numeric_threshold_r_m(epsilon: float, r_max: float = 5.0) -> float:
    """Bisection root of the homodyne-conditioned mu - 1; verifies :func:`threshold_r_m`."""
    def f(r):
        state, _ = shared_cm(ProtocolParams(r, epsilon))
        return localizable_mu(state.cm, 2) - 1.0
    return _threshold_root(f, r_max)


def threshold_report(epsilon: float) -> ThresholdReport:
    p, q = cubic_pq(epsilon)
    r_e = threshold_r_e(epsilon)
    r_m = threshold_r_m(epsilon)
    return ThresholdReport(
        epsilon=float(epsilon),
        r_l=float(threshold_r_l(epsilon)),
        r_e=float(r_e),
        r_m=float(r_m),
        gap=float(r_m - r_e),
        p=float(p),
        q=float(q),
    )


def gap_profile(epsilons) -> list[ThresholdReport]:
    """Threshold reports over a grid of noise values."""
    return [threshold_report(float(e)) for e in np.asarray(epsilons, dtype=float)]


def stage_state(params: ProtocolParams, stage: str) -> StageState:
    """Three-mode state and separability report at one protocol stage.

    The initial stage is represented as the fully separable three-mode
    product of the two-mode initial state with the vacuum ancilla A'.
    """
    if stage == STAGE_INITIAL:
        state = embed_vacuum(initial_cm(params), 1)
    elif stage == STAGE_SHARED:
        state, _ = shared_cm(params)
    elif stage == STAGE_FINAL_VIA_APRIME:
        state = final_cm(params, ROUTE_VIA_APRIME)
    elif stage == STAGE_FINAL_VIA_A:
        state = final_cm(params, ROUTE_VIA_A)
    else:
        raise ValueError(f"stage must be one of {STAGES}, got {stage!r}")
    return StageState(stage, state, classify_three_mode(state.cm))
