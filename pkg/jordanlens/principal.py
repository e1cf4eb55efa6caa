"""Principal angles, principal vectors and Jordan frames of a pair of subspaces."""

import logging
from typing import List, Tuple

import numpy as np
import scipy.linalg
import scipy.optimize

from jordanlens.config import DEFAULT_TOL
from jordanlens.exceptions import InputError
from jordanlens.models import AngleDecomposition, JordanFrame, Subspace
from jordanlens.schemas import ClauseCheck, ComplementAngleReport
from jordanlens.subspace import (
    check_same_ambient,
    complement,
    cross_svd,
    five_part_decompose,
    inner,
    projector,
)

logger = logging.getLogger(__name__)

ORACLE_MAX_DIM = 3
# grid evaluations allowed per maximisation step before falling back to a coarser grid
ORACLE_GRID_LIMIT = 400_000


def classify(angles: np.ndarray, tol: float) -> Tuple[int, int, int]:
    """Counts of (zero, interior, right) angles: zero if cos ≥ 1 − tol, right if cos ≤ tol"""
    cosines = np.cos(angles)
    n_zero = int(np.sum(cosines >= 1 - tol))
    n_right = int(np.sum(cosines <= tol))
    # interior angles that only just escaped being classified zero or right
    near = ((cosines < 1 - tol) & (cosines >= 1 - 10 * tol)) | ((cosines > tol) & (cosines <= 10 * tol))
    if np.any(near):
        logger.warning("%d angle(s) within 10*tol of a classification threshold (tol=%g)", int(near.sum()), tol)
    return n_zero, len(angles) - n_zero - n_right, n_right


def _rephase(u: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Make ⟨u_k, v_k⟩ real non-negative, then rotate each pair so u_k's largest entry is positive"""
    u, v = u.copy(), v.copy()
    for k in range(u.shape[1]):
        overlap = inner(u[:, k], v[:, k])
        if abs(overlap) > 0:
            v[:, k] *= overlap / abs(overlap)
        pivot = u[np.argmax(np.abs(u[:, k])), k]
        if abs(pivot) > 0:
            phase = np.conj(pivot) / abs(pivot)
            u[:, k] *= phase
            v[:, k] *= phase
    return u, v


def principal_angles(M: Subspace, N: Subspace, tol: float = DEFAULT_TOL) -> AngleDecomposition:
    n = check_same_ambient(M, N)
    q = min(M.dim, N.dim)
    if q == 0:
        empty = np.zeros((n, 0), dtype=complex)
        return AngleDecomposition(np.zeros(0), empty, empty, 0, 0, 0, tol)

    y, cosines, z = cross_svd(M, N)
    u = M.basis @ y[:, :q]
    v = N.basis @ z[:, :q]
    cosines = np.clip(cosines[:q], 0.0, 1.0)
    angles = np.arccos(cosines)

    # arccos loses half the digits near 1, so small angles come from sines
    n_small = int(np.sum(cosines ** 2 >= 0.5))
    if n_small:
        residual = v[:, :n_small] - M.basis @ (M.basis.conj().T @ v[:, :n_small])
        sines = np.clip(scipy.linalg.svdvals(residual)[::-1], 0.0, 1.0)
        angles[:n_small] = np.arcsin(sines)

    u, v = _rephase(u, v)
    n_zero, n_interior, n_right = classify(angles, tol)
    logger.debug("principal angles q=%d zero=%d interior=%d right=%d", q, n_zero, n_interior, n_right)
    return AngleDecomposition(angles, u, v, n_zero, n_interior, n_right, tol)


def projection_action_residuals(dec: AngleDecomposition, M: Subspace, N: Subspace) -> Tuple[np.ndarray, np.ndarray]:
    """‖P_M v_j − cosθ_j u_j‖ and ‖P_N u_j − cosθ_j v_j‖ for every j"""
    cosines = np.cos(dec.angles)
    left = projector(M) @ dec.v_vectors - dec.u_vectors * cosines
    right = projector(N) @ dec.u_vectors - dec.v_vectors * cosines
    return np.linalg.norm(left, axis=0), np.linalg.norm(right, axis=0)


def _unit_coefficients(params: np.ndarray, m: int) -> np.ndarray:
    """Unit vectors of C^m (modulo global phase) from 2m − 2 real parameters, one column per row of params"""
    params = np.atleast_2d(params)
    if m == 1:
        return np.ones((1, params.shape[0]), dtype=complex)
    if m == 2:
        alpha, phi = params[:, 0], params[:, 1]
        return np.vstack([np.cos(alpha), np.exp(1j * phi) * np.sin(alpha)])
    alpha, beta, phi1, phi2 = params.T
    return np.vstack([
        np.cos(alpha) + 0j,
        np.exp(1j * phi1) * np.sin(alpha) * np.cos(beta),
        np.exp(1j * phi2) * np.sin(alpha) * np.sin(beta),
    ])


def _parameter_grid(m: int, grid: int) -> np.ndarray:
    n_params = 2 * m - 2
    steps = min(grid, int(ORACLE_GRID_LIMIT ** (1 / n_params)))
    polar = np.linspace(0, np.pi / 2, steps)
    azimuth = np.linspace(0, 2 * np.pi, steps, endpoint=False)
    axes = [polar, azimuth] if m == 2 else [polar, polar, azimuth, azimuth]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([axis.ravel() for axis in mesh])


def _max_overlap(basis_m: np.ndarray, basis_n: np.ndarray, grid: int) -> Tuple[float, np.ndarray, np.ndarray]:
    """sup ‖P_N u‖ over unit u in span(basis_m), by grid search then Nelder–Mead polish"""
    m = basis_m.shape[1]
    gram = basis_n.conj().T @ basis_m

    def overlap(params):
        return np.linalg.norm(gram @ _unit_coefficients(params, m), axis=0)

    if m == 1:
        best = np.zeros(0)
    else:
        candidates = _parameter_grid(m, grid)
        best = candidates[np.argmax(overlap(candidates))]
        polished = scipy.optimize.minimize(lambda x: -overlap(x)[0], best, method="Nelder-Mead",
                                           options={"xatol": 1e-10, "fatol": 1e-14})
        if -polished.fun >= overlap(best)[0]:
            best = polished.x

    u = basis_m @ _unit_coefficients(best, m)[:, 0]
    projected = basis_n @ (basis_n.conj().T @ u)
    value = float(np.linalg.norm(projected))
    v = projected / value if value > 0 else basis_n[:, 0]
    return min(value, 1.0), u, v


def _deflate(basis: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(basis) ∩ vector⊥"""
    coefficients = basis.conj().T @ vector
    full, _, _ = scipy.linalg.svd(coefficients.reshape(-1, 1), full_matrices=True)
    return basis @ full[:, 1:]


def greedy_angle_oracle(M: Subspace, N: Subspace, grid: int = 360) -> List[float]:
    """Principal angles straight from the recursive sup definition.

    Step i maximises |⟨u, v⟩| over unit u ∈ M_i, v ∈ N_i, then removes the
    maximisers from both subspaces. Desk-scale only.
    """
    check_same_ambient(M, N)
    if M.dim > ORACLE_MAX_DIM or N.dim > ORACLE_MAX_DIM:
        raise InputError(f"The greedy oracle handles subspaces of dimension <= {ORACLE_MAX_DIM}")
    if grid < 2:
        raise InputError("Grid size must be at least 2")

    basis_m, basis_n = M.basis, N.basis
    angles = []
    for _ in range(min(M.dim, N.dim)):
        value, u, v = _max_overlap(basis_m, basis_n, grid)
        angles.append(float(np.arccos(value)))
        basis_m, basis_n = _deflate(basis_m, u), _deflate(basis_n, v)
    return angles


def _normalize(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x)


def jordan_frames(dec: AngleDecomposition, M: Subspace, N: Subspace) -> List[JordanFrame]:
    check_same_ambient(M, N)
    frames = []
    window = dec.interior_slice
    for theta, u, v in zip(dec.interior_angles, dec.u_vectors[:, window].T, dec.v_vectors[:, window].T):
        s = _normalize(v - inner(v, u) * u)
        t = _normalize(s - inner(s, v) * v)
        if inner(s, t).real < 0:
            t = -t
        frames.append(JordanFrame(theta=float(theta), u=u, v=v, s=s, t=t))
    return frames


def frame_identity_deviation(frame: JordanFrame) -> float:
    """Largest violation among the four-vector identities of one frame"""
    lam, mu = frame.lam, frame.mu
    deviations = [
        abs(inner(frame.u, frame.v) - lam),
        abs(inner(frame.s, frame.t) - lam),
        abs(inner(frame.s, frame.v) - mu),
        abs(inner(frame.u, frame.t) + mu),
        abs(inner(frame.u, frame.s)),
        abs(inner(frame.v, frame.t)),
        np.linalg.norm(frame.u - (lam / mu) * frame.s + (1 / mu) * frame.t),
    ]
    deviations += [abs(np.linalg.norm(x) - 1) for x in (frame.u, frame.v, frame.s, frame.t)]
    return float(max(deviations))


def _max_abs(values) -> float:
    values = np.asarray(values, dtype=float)
    return float(np.max(np.abs(values))) if values.size else 0.0


def complement_angle_relation(M: Subspace, N: Subspace, tol: float = DEFAULT_TOL) -> ComplementAngleReport:
    """Check how the angles of (M, N) line up with those of (M⊥, N⊥)"""
    if M.dim < N.dim:
        M, N = N, M
    five = five_part_decompose(M, N, tol)
    theta = principal_angles(M, N, tol).angles
    eta = principal_angles(complement(M), complement(N), tol).angles
    a, b, c, d, r = five.counts

    zero_part = np.concatenate([theta[:a], eta[:b]])
    shared_theta, shared_eta = theta[a:a + r], eta[b:b + r]
    right_part = np.concatenate([theta[a + r:], eta[b + r:]])

    def clause(name, deviation, aligned=True):
        return ClauseCheck(name=name, passed=aligned and deviation <= tol, max_deviation=deviation)

    clauses = [
        clause("leading_zeros", _max_abs(zero_part), len(theta[:a]) == a and len(eta[:b]) == b),
        clause("shared_interior", _max_abs(shared_theta - shared_eta) if len(shared_theta) == len(shared_eta) else float("inf"),
               len(shared_theta) == len(shared_eta) == r),
        clause("trailing_right_angles", _max_abs(right_part - np.pi / 2),
               len(theta) - a - r == len(eta) - b - r == min(c, d)),
    ]
    return ComplementAngleReport(
        theta=theta.tolist(), eta=eta.tolist(), a=a, b=b, c=c, d=d, r=r, clauses=clauses,
    )
