"""Principal component analysis of coupling measures and the two selection procedures.

Covariance uses the 1/n divisor and columns are centered but not scaled,
unless ``standardize=True`` is passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateDataError, DimensionError, InsufficientDataError, NumericError, ValidationError
from .metrics import MEASURE_NAMES, MetricsTable

MAX_SWEEPS = 50
CONVERGENCE_TOL = 1e-12
SYMMETRY_TOL = 1e-9
NEGATIVE_EIGEN_TOL = 1e-9
# magnitudes this close to the maximum count as a tie (for sign and argmax choices)
TIE_TOL = 1e-12


def _as_matrix(X) -> np.ndarray:
    A = np.asarray(X, dtype=float)
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix contains non-finite entries")
    return A


def column_means(X) -> np.ndarray:
    return _as_matrix(X).mean(axis=0)


def center(X) -> np.ndarray:
    A = _as_matrix(X)
    return A - A.mean(axis=0)


def covariance(Xc) -> np.ndarray:
    """R = (1/n) Xc^T Xc for an already centered n x m matrix."""
    A = _as_matrix(Xc)
    R = A.T @ A / A.shape[0]
    return (R + R.T) / 2


def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings covering every (p, q) once, each round made of disjoint pairs."""
    players = list(range(m if m % 2 == 0 else m + 1))
    size = len(players)
    rounds = []
    others = players[1:]
    for r in range(size - 1):
        order = [players[0], *others[r:], *others[:r]]
        pairs = [
            (min(order[i], order[size - 1 - i]), max(order[i], order[size - 1 - i]))
            for i in range(size // 2)
        ]
        pairs = [(p, q) for p, q in pairs if q < m]
        if pairs:
            rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
    return rounds


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    mags = np.abs(v)
    top = int(np.flatnonzero(mags >= mags.max() - TIE_TOL)[0])
    return -v if v[top] < 0 else v


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # row k pairs with eigenvalues[k]
    sweeps: int


def eigen_symmetric(R, tol: float = CONVERGENCE_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Full eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Each round of a sweep applies a set of disjoint rotations at once
    (round-robin ordering); disjoint rotations commute, so this is the same
    iteration as the sequential cyclic method in a different pair order.
    """
    A = _as_matrix(R).copy()
    m = A.shape[0]
    if A.shape[1] != m:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    scale = float(np.linalg.norm(A))
    if float(np.linalg.norm(A - A.T)) > SYMMETRY_TOL * max(1.0, scale):
        raise ValidationError("matrix is not symmetric")
    A = (A + A.T) / 2
    V = np.eye(m)
    rounds = _round_robin(m)
    threshold = tol * scale

    sweeps = 0
    while True:
        off = float(np.sqrt(2.0 * np.sum(np.triu(A, 1) ** 2)))
        if off <= threshold:
            break
        if sweeps == max_sweeps:
            raise NumericError(f"Jacobi iteration did not converge in {max_sweeps} sweeps (off-norm {off:.3e})")
        sweeps += 1
        for P, Q in rounds:
            apq = A[P, Q]
            active = apq != 0.0
            if not active.any():
                continue
            # tan of the rotation angle, written without dividing by apq
            h = A[Q, Q] - A[P, P]
            sign = np.where(h >= 0, 1.0, -1.0)
            denom = np.abs(h) + np.hypot(h, 2.0 * apq)
            t = sign * 2.0 * apq / np.where(active, denom, 1.0)
            c = 1.0 / np.hypot(t, 1.0)
            s = t * c

            colp, colq = A[:, P], A[:, Q]
            A[:, P], A[:, Q] = c * colp - s * colq, s * colp + c * colq
            rowp, rowq = A[P, :], A[Q, :]
            A[P, :], A[Q, :] = c[:, None] * rowp - s[:, None] * rowq, s[:, None] * rowp + c[:, None] * rowq
            A[P, Q] = np.where(active, 0.0, A[P, Q])
            A[Q, P] = A[P, Q]
            vp, vq = V[:, P], V[:, Q]
            V[:, P], V[:, Q] = c * vp - s * vq, s * vp + c * vq

    values = np.diag(A).copy()
    order = np.argsort(-values, kind="stable")
    vectors = np.array([_canonical_sign(V[:, k]) for k in order]).reshape(m, m)
    return EigenDecomposition(values[order], vectors, sweeps)


def clamp_eigenvalues(eigenvalues: Sequence[float]) -> np.ndarray:
    """Zero out round-off negatives; reject genuinely negative spectra."""
    lam = np.asarray(eigenvalues, dtype=float)
    top = max(float(lam.max(initial=0.0)), 0.0)
    if np.any(lam < -NEGATIVE_EIGEN_TOL * max(top, 1e-300)) and top > 0:
        raise NumericError("negative eigenvalue in a covariance spectrum")
    return np.where(lam < 0, 0.0, lam)


def retained_variance(eigenvalues: Sequence[float], d: int) -> float:
    """Share of total variance kept by the first ``d`` eigenvalues (taken in the given order)."""
    lam = clamp_eigenvalues(eigenvalues)
    if not 1 <= d <= lam.size:
        raise DimensionError(f"component count {d} outside 1..{lam.size}")
    total = float(lam.sum())
    if total <= 0:
        raise DegenerateDataError("total variance is zero")
    return float(lam[:d].sum() / total)


@dataclass(frozen=True)
class PcaResult:
    labels: tuple[str, ...]
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # rows are principal components
    column_means: np.ndarray
    retained_variance: np.ndarray  # entry d-1 is the share kept by d components
    covariance: np.ndarray
    standardized: bool = False
    divisor: str = "n"

    def components_for(self, target: float) -> int:
        """Smallest component count whose retained variance reaches ``target``."""
        hits = np.flatnonzero(self.retained_variance >= target - 1e-12)
        return int(hits[0]) + 1 if hits.size else len(self.labels)


def pca(X, labels: Sequence[str] | None = None, *, standardize: bool = False) -> PcaResult:
    A = _as_matrix(X)
    n, m = A.shape
    if n < 2:
        raise InsufficientDataError(f"PCA needs at least 2 observations, got {n}")
    labels = tuple(labels) if labels is not None else tuple(f"x{j + 1}" for j in range(m))
    if len(labels) != m:
        raise DimensionError(f"{len(labels)} labels for {m} columns")
    means = column_means(A)
    Xc = center(A)
    if standardize:
        sd = np.sqrt((Xc**2).mean(axis=0))
        Xc = np.divide(Xc, sd, out=np.zeros_like(Xc), where=sd > 0)
    R = covariance(Xc)
    eig = eigen_symmetric(R)
    lam = clamp_eigenvalues(eig.eigenvalues)
    total = float(lam.sum())
    if total <= 0:
        raise DegenerateDataError("all observations are identical; there is no variance to analyze")
    return PcaResult(
        labels=labels,
        eigenvalues=lam,
        eigenvectors=eig.eigenvectors,
        column_means=means,
        retained_variance=np.cumsum(lam) / total,
        covariance=R,
        standardized=standardize,
    )


# ---------------------------------------------------------------------------
# selection


@dataclass(frozen=True)
class SelectionReport:
    mode: str  # "MostSignificantMeasure" | "LessResponsiveClass"
    chosen_label: str
    component_count: int
    loadings: dict[str, list[float]]
    rationale: list[tuple[str, float]]
    fallback: bool = False
    pca: PcaResult | None = field(default=None, compare=False)


def dominant_label(vector: Sequence[float], labels: Sequence[str]) -> str:
    """Label of the largest-magnitude loading; ties go to the earliest label."""
    mags = np.abs(np.asarray(vector, dtype=float))
    return labels[int(np.flatnonzero(mags >= mags.max() - TIE_TOL)[0])]


def all_negative(components, labels: Sequence[str]) -> list[str]:
    """Labels whose loading is strictly negative in every given component."""
    C = np.atleast_2d(np.asarray(components, dtype=float))
    return [lab for j, lab in enumerate(labels) if np.all(C[:, j] < 0)]


def _loadings(result: PcaResult, d: int) -> dict[str, list[float]]:
    return {lab: [float(result.eigenvectors[k, j]) for k in range(d)] for j, lab in enumerate(result.labels)}


def most_significant_measure(
    table: MetricsTable, *, components: int = 1, standardize: bool = False
) -> SelectionReport:
    if len(table.rows) < 2:
        raise InsufficientDataError("need at least 2 classes to compare measures")
    result = pca(table.to_matrix(), table.measure_names, standardize=standardize)
    first = result.eigenvectors[0]
    chosen = dominant_label(first, result.labels)
    ranked = sorted(
        ((lab, float(abs(first[j]))) for j, lab in enumerate(result.labels)),
        key=lambda item: -item[1],
    )
    d = max(1, min(components, len(result.labels)))
    return SelectionReport("MostSignificantMeasure", chosen, d, _loadings(result, d), ranked, pca=result)


def less_responsive_class(
    table: MetricsTable,
    variance_target: float = 0.95,
    *,
    max_components: int = 3,
    components: int | None = None,
    standardize: bool = False,
) -> SelectionReport:
    """Pick the class whose loadings are negative on all leading components.

    PCA runs on the measure-by-class matrix (classes are the variables).
    Among all-negative candidates the class with the lowest class coupling
    wins, ties by name. With no candidate, the lowest-coupling class overall
    is returned and ``fallback`` is set.
    """
    if len(table.rows) < 2:
        raise InsufficientDataError("need at least 2 classes to choose among")
    labels = tuple(table.class_names)
    result = pca(table.to_matrix().T, labels, standardize=standardize)
    if components is not None:
        d = components
    else:
        d = min(result.components_for(variance_target), max_components)
    d = max(1, min(d, len(labels)))

    coupling = {r.class_name: r.class_coupling for r in table.rows}
    candidates = all_negative(result.eigenvectors[:d], labels)
    fallback = not candidates
    pool = candidates or list(labels)
    pool.sort(key=lambda name: (coupling[name], name))
    return SelectionReport(
        "LessResponsiveClass",
        pool[0],
        d,
        _loadings(result, d),
        [(name, float(coupling[name])) for name in pool],
        fallback=fallback,
        pca=result,
    )


__all__ = [
    "MEASURE_NAMES",
    "EigenDecomposition",
    "PcaResult",
    "SelectionReport",
    "all_negative",
    "center",
    "clamp_eigenvalues",
    "column_means",
    "covariance",
    "dominant_label",
    "eigen_symmetric",
    "less_responsive_class",
    "most_significant_measure",
    "pca",
    "retained_variance",
]
