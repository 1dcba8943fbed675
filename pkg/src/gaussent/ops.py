"""Symplectic building blocks, Gaussian measurement conditioning, and sampling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .core import GaussianState, TAU_PSD, _as_even_square, _check_modes, symplectic_form
from .errors import (
    BadCountError,
    BadModeIndexError,
    DimensionMismatchError,
    NotSymplecticError,
    SingularConditioningError,
    UnphysicalError,
)

if TYPE_CHECKING:  # pragma: no cover
    from .protocol import ProtocolParams

#: Tolerated violation of S Omega S^T = Omega at construction.
TAU_SYMPLECTIC = 1e-10
#: Singular values below this are treated as zero in homodyne conditioning.
HOMODYNE_SV_CUTOFF = 1e-12


@dataclass
class SymplecticTransform:
    """A 2n x 2n matrix preserving the symplectic form, checked at construction."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = _as_even_square(self.matrix, "symplectic matrix")
        omega = symplectic_form(self.n_modes)
        dev = np.abs(self.matrix @ omega @ self.matrix.T - omega).max()
        if dev > TAU_SYMPLECTIC:
            raise NotSymplecticError(f"S Omega S^T deviates from Omega by {dev:.3e}")

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


def beam_splitter(n_modes: int, i: int, j: int, variant: str = "plus") -> SymplecticTransform:
    """Balanced (50:50) beam splitter between modes ``i`` and ``j``.

    On the ordered pair ``(i, j)`` the transform acts, per quadrature, as

    * ``plus``:  ``(1/sqrt(2)) [[1, 1], [1, -1]]``  (mode i takes the sum),
    * ``minus``: ``(1/sqrt(2)) [[1, -1], [1, 1]]``  (mode i takes the difference),

    and as the identity elsewhere.  Both variants are orthogonal and
    symplectic.
    """
    _check_modes([i, j], n_modes)
    if variant not in ("plus", "minus"):
        raise ValueError(f"variant must be 'plus' or 'minus', got {variant!r}")
    c = 1.0 / np.sqrt(2.0)
    eye2 = np.eye(2)
    s = np.eye(2 * n_modes)
    si, sj = slice(2 * i, 2 * i + 2), slice(2 * j, 2 * j + 2)
    if variant == "plus":
        s[si, si], s[si, sj] = c * eye2, c * eye2
        s[sj, si], s[sj, sj] = c * eye2, -c * eye2
    else:
        s[si, si], s[si, sj] = c * eye2, -c * eye2
        s[sj, si], s[sj, sj] = c * eye2, c * eye2
    return SymplecticTransform(s)


def mode_permutation(n_modes: int, perm: Sequence[int]) -> SymplecticTransform:
    """Symplectic transform relabeling modes so that new mode k is old mode perm[k]."""
    perm = _check_modes(list(perm), n_modes)
    if len(perm) != n_modes:
        raise BadModeIndexError(f"permutation must list all {n_modes} modes, got {perm}")
    s = np.zeros((2 * n_modes, 2 * n_modes))
    for new, old in enumerate(perm):
        s[2 * new, 2 * old] = 1.0
        s[2 * new + 1, 2 * old + 1] = 1.0
    return SymplecticTransform(s)


def embed_vacuum(state: GaussianState, position: int) -> GaussianState:
    """Direct-sum a vacuum mode into the state at the given mode slot."""
    n = state.n_modes
    if not 0 <= position <= n:
        raise BadModeIndexError(f"position {position} out of range for inserting into {n} modes")
    old_slots = [k if k < position else k + 1 for k in range(n)]
    idx = [q for m in old_slots for q in (2 * m, 2 * m + 1)]
    cm = np.eye(2 * (n + 1))
    cm[np.ix_(idx, idx)] = state.cm
    d = np.zeros(2 * (n + 1))
    d[idx] = state.displacement
    return GaussianState(cm, d)


@dataclass
class MeasurementSpec:
    """A Gaussian measurement on one mode.

    ``kind`` is one of ``homodyne-x``, ``homodyne-p`` or ``general-gaussian``.
    For the general case ``seed_cm`` is the 2x2 covariance matrix of the
    Gaussian state the detector projects onto; homodyne-x is its
    ``diag(t, 1/t), t -> 0`` limit (vanishing position variance) and
    homodyne-p the ``t -> inf`` limit.
    """

    mode: int
    kind: str
    seed_cm: np.ndarray | None = None

    KINDS = ("homodyne-x", "homodyne-p", "general-gaussian")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"kind must be one of {self.KINDS}, got {self.kind!r}")
        if self.kind == "general-gaussian":
            if self.seed_cm is None:
                raise ValueError("general-gaussian measurement needs a seed_cm")
            seed = np.asarray(self.seed_cm, dtype=float)
            if seed.shape != (2, 2):
                raise DimensionMismatchError(f"seed_cm must be 2x2, got {seed.shape}")
            if np.abs(seed - seed.T).max() > 1e-10:
                raise UnphysicalError("seed_cm is not symmetric")
            # the determinant of a strongly squeezed seed carries an absolute
            # float error of order eps * |seed|^2, so the bound scales with it
            det = float(np.linalg.det(seed))
            tol = TAU_PSD * max(1.0, float(np.abs(seed).max()) ** 2)
            if det < 1.0 - tol or seed[0, 0] <= 0:
                raise UnphysicalError(f"seed_cm is unphysical (det {det:.6g} < 1)")
            self.seed_cm = seed
        elif self.seed_cm is not None:
            raise ValueError(f"seed_cm is only meaningful for general-gaussian, not {self.kind}")

    @classmethod
    def homodyne_x(cls, mode: int) -> "MeasurementSpec":
        return cls(mode, "homodyne-x")

    @classmethod
    def homodyne_p(cls, mode: int) -> "MeasurementSpec":
        return cls(mode, "homodyne-p")

    @classmethod
    def general_gaussian(cls, mode: int, seed_cm: np.ndarray) -> "MeasurementSpec":
        return cls(mode, "general-gaussian", seed_cm)


def _masked_pinv(b: np.ndarray, projector: np.ndarray) -> np.ndarray:
    """Pi (Pi B Pi)^+ Pi with an absolute singular-value cutoff."""
    pbp = projector @ b @ projector
    u, sv, vt = np.linalg.svd(pbp)
    inv = np.where(sv > HOMODYNE_SV_CUTOFF, 1.0 / np.where(sv > HOMODYNE_SV_CUTOFF, sv, 1.0), 0.0)
    return projector @ (vt.T @ np.diag(inv) @ u.T) @ projector


def condition_on_measurement(state: GaussianState, spec: MeasurementSpec) -> GaussianState:
    """Condition a state on a Gaussian measurement of one mode.

    With the covariance matrix partitioned around the measured mode into
    kept block A, measured block B and correlation block C, the conditional
    matrix is ``A - C M C^T`` where M is ``(B + seed)^{-1}`` for a general
    Gaussian measurement and the projected pseudo-inverse of B for homodyne
    detection.  The result does not depend on the measurement outcome, so
    the kept displacement entries are returned unchanged (outcome-averaged
    analysis).
    """
    n = state.n_modes
    mode = _check_modes(spec.mode, n)[0]
    if n < 2:
        raise DimensionMismatchError("conditioning needs at least two modes")
    keep = [m for m in range(n) if m != mode]
    ki = [q for m in keep for q in (2 * m, 2 * m + 1)]
    mi = [2 * mode, 2 * mode + 1]
    a = state.cm[np.ix_(ki, ki)]
    c = state.cm[np.ix_(ki, mi)]
    b = state.cm[np.ix_(mi, mi)]
    if spec.kind == "general-gaussian":
        total = b + spec.seed_cm
        cond = np.linalg.cond(total)
        if not np.isfinite(cond) or cond > 1e13:
            raise SingularConditioningError(
                f"measured block plus seed is numerically singular (cond {cond:.3e})"
            )
        m = np.linalg.inv(total)
    else:
        projector = np.diag([1.0, 0.0]) if spec.kind == "homodyne-x" else np.diag([0.0, 1.0])
        m = _masked_pinv(b, projector)
    # symmetrize only the correction so an uncorrelated mode (C = 0) leaves
    # the kept block bitwise untouched
    correction = c @ m @ c.T
    return GaussianState(a - 0.5 * (correction + correction.T), state.displacement[ki])


@dataclass
class SampleBatch:
    """Empirical second moments from a correlated-displacement preparation run.

    ``empirical_cm`` uses the same normalization as the analytic matrices
    (entry = 2 x sample covariance) and is symmetric by construction but not
    necessarily physical.
    """

    count: int
    seed: int
    empirical_cm: np.ndarray
    empirical_mean: np.ndarray
    analytic_cm: np.ndarray

    @property
    def max_abs_dev(self) -> float:
        return float(np.abs(self.empirical_cm - self.analytic_cm).max())

    def to_json_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "empirical_cm": self.empirical_cm.tolist(),
            "empirical_mean": self.empirical_mean.tolist(),
            "analytic_cm": self.analytic_cm.tolist(),
            "max_abs_dev": self.max_abs_dev,
        }


def _preparation_cm(r: float, epsilon: float) -> np.ndarray:
    """Second moments predicted by the preparation model below."""
    em = np.exp(-2.0 * r)
    v_disp = (1.0 - em) / 2.0
    cm = np.diag([np.exp(-2.0 * (r - epsilon)), np.exp(2.0 * r), 1.0, 1.0])
    spread = np.array([1.0, 0.0, -1.0, 0.0])
    return cm + 2.0 * v_disp * np.outer(spread, spread)


def sample_preparation(params: "ProtocolParams", count: int, seed: int) -> SampleBatch:
    """Monte Carlo run of the correlated-displacement preparation.

    Mode A starts in a squeezed state with covariance
    ``diag(exp(-2(r - eps)), exp(2r))`` (physical for all r, eps >= 0 since
    its determinant is exp(2 eps) >= 1), mode B in vacuum.  A classical
    displacement ``xbar`` of variance ``(1 - exp(-2r))/2`` is added to x_A
    and subtracted from x_B.  Sampling uses ``numpy.random.default_rng``
    (PCG64), so results are reproducible bit-for-bit given (seed, count).
    """
    if count < 2:
        raise BadCountError(f"count must be at least 2, got {count}")
    r, epsilon = params.r, params.epsilon
    rng = np.random.default_rng(seed)
    x_a = rng.normal(0.0, np.sqrt(np.exp(-2.0 * (r - epsilon)) / 2.0), count)
    p_a = rng.normal(0.0, np.sqrt(np.exp(2.0 * r) / 2.0), count)
    x_b = rng.normal(0.0, np.sqrt(0.5), count)
    p_b = rng.normal(0.0, np.sqrt(0.5), count)
    xbar = rng.normal(0.0, np.sqrt((1.0 - np.exp(-2.0 * r)) / 2.0), count)
    samples = np.stack([x_a + xbar, p_a, x_b - xbar, p_b])
    empirical_cm = 2.0 * np.cov(samples)
    return SampleBatch(
        count=int(count),
        seed=int(seed),
        empirical_cm=0.5 * (empirical_cm + empirical_cm.T),
        empirical_mean=samples.mean(axis=1),
        analytic_cm=_preparation_cm(r, epsilon),
    )
