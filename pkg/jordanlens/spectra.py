"""Closed-form eigenpairs of the six operators built from two orthogonal projections."""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.optimize

from jordanlens.models import EigenPair, FivePartDecomposition, JordanFrame, OperatorKind, ProjectorPair

logger = logging.getLogger(__name__)

# Scalar action on (M∩N, M∩N⊥, M⊥∩N, M⊥∩N⊥). Each part is invariant under P and Q,
# which act there as 0 or 1, so every combination acts as a scalar.
DEGENERATE_VALUES: Dict[OperatorKind, Tuple[float, float, float, float]] = {
    OperatorKind.SUM: (2.0, 1.0, 1.0, 0.0),
    OperatorKind.DIFF: (0.0, 1.0, -1.0, 0.0),
    OperatorKind.PQ: (1.0, 0.0, 0.0, 0.0),
    OperatorKind.QP: (1.0, 0.0, 0.0, 0.0),
    OperatorKind.ANTICOMM: (2.0, 0.0, 0.0, 0.0),
    OperatorKind.COMM: (0.0, 0.0, 0.0, 0.0),
}


def build_operator(kind: OperatorKind, pair: ProjectorPair) -> np.ndarray:
    P, Q = pair.P, pair.Q
    kind = OperatorKind(kind)
    if kind == OperatorKind.SUM:
        return P + Q
    if kind == OperatorKind.DIFF:
        return P - Q
    if kind == OperatorKind.PQ:
        return P @ Q
    if kind == OperatorKind.QP:
        return Q @ P
    if kind == OperatorKind.ANTICOMM:
        return P @ Q + Q @ P
    return P @ Q - Q @ P


def _plane_pairs(kind: OperatorKind, frame: JordanFrame) -> List[EigenPair]:
    lam, mu, theta = frame.lam, frame.mu, frame.theta
    u, v, s, t = frame.u, frame.v, frame.s, frame.t
    if kind == OperatorKind.SUM:
        return [EigenPair(1 + lam, u + v), EigenPair(1 - lam, u - v)]
    if kind == OperatorKind.DIFF:
        return [EigenPair(mu, u - ((1 - mu) / lam) * v), EigenPair(-mu, u - ((1 + mu) / lam) * v)]
    if kind == OperatorKind.PQ:
        return [EigenPair(lam ** 2, u), EigenPair(0.0, t)]
    if kind == OperatorKind.QP:
        return [EigenPair(lam ** 2, v), EigenPair(0.0, s)]
    if kind == OperatorKind.ANTICOMM:
        return [EigenPair(lam ** 2 + lam, u + v), EigenPair(lam ** 2 - lam, u - v)]
    return [
        EigenPair(1j * lam * mu, u - np.exp(-1j * theta) * v),
        EigenPair(-1j * lam * mu, u - np.exp(1j * theta) * v),
    ]


def analytic_eigenpairs(
    kind: OperatorKind,
    frames: Sequence[JordanFrame],
    five: FivePartDecomposition,
) -> List[EigenPair]:
    """A complete eigensystem of C^n: two pairs per Jordan plane plus the degenerate parts.

    Eigenvectors are left unnormalised.
    """
    kind = OperatorKind(kind)
    pairs = []
    for frame in frames:
        pairs.extend(_plane_pairs(kind, frame))

    parts = (five.mn, five.mn_perp, five.m_perp_n, five.both_perp)
    for value, part in zip(DEGENERATE_VALUES[kind], parts):
        pairs.extend(EigenPair(value, part.basis[:, j]) for j in range(part.dim))
    logger.debug("%s: %d eigenpairs from %d frames", kind.value, len(pairs), len(frames))
    return pairs


def sorted_spectrum(values) -> np.ndarray:
    """Sort by real part, then imaginary part"""
    values = np.asarray(values, dtype=complex)
    return values[np.lexsort((values.imag, values.real))]


def numerical_spectrum(operator: np.ndarray) -> np.ndarray:
    """Eigenvalues from the general dense eigensolver, sorted"""
    return sorted_spectrum(scipy.linalg.eigvals(operator))


def spectrum_deviation(pairs: Sequence[EigenPair], operator: np.ndarray) -> float:
    """Largest gap between the analytic and the numerical eigenvalue multisets.

    The two lists are matched by minimum-cost assignment.
    """
    analytic = np.array([pair.value for pair in pairs], dtype=complex)
    numerical = scipy.linalg.eigvals(operator)
    if len(analytic) != len(numerical):
        return float("inf")
    if not len(analytic):
        return 0.0
    cost = np.abs(analytic[:, None] - numerical[None, :])
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def max_residual(pairs: Sequence[EigenPair], operator: np.ndarray) -> float:
    return max((pair.residual(operator) for pair in pairs), default=0.0)
