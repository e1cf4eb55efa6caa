"""Construction, intersection and five-part decomposition of subspaces of C^n."""

import logging
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from jordanlens.config import DEFAULT_TOL
from jordanlens.exceptions import DimensionMismatchError, InputError, PreconditionError
from jordanlens.models import FivePartDecomposition, ProjectorPair, Subspace

logger = logging.getLogger(__name__)

MAX_CLASSIFICATION_TOL = 0.1


def inner(x: np.ndarray, y: np.ndarray) -> complex:
    """⟨x, y⟩ = Σ x_i conj(y_i), linear in the first argument"""
    return complex(np.vdot(y, x))


def fix_column_phases(basis: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real and positive"""
    basis = np.array(basis, dtype=complex, copy=True)
    for j in range(basis.shape[1]):
        pivot = basis[np.argmax(np.abs(basis[:, j])), j]
        if abs(pivot) > 0:
            basis[:, j] *= np.conj(pivot) / abs(pivot)
    return basis


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, np.zeros((n, 0), dtype=complex))


def check_same_ambient(*subspaces: Subspace) -> int:
    dims = [s.ambient_dim for s in subspaces]
    if len(set(dims)) != 1:
        raise DimensionMismatchError(*dims)
    return dims[0]


def check_tolerance(tol: float) -> None:
    if not 0 < tol < MAX_CLASSIFICATION_TOL:
        raise InputError(f"Tolerance must lie in (0, {MAX_CLASSIFICATION_TOL}), got {tol}")


def orthonormalize(raw_columns, tol: float = DEFAULT_TOL) -> Subspace:
    raw = np.asarray(raw_columns, dtype=complex)
    if raw.ndim == 1:
        raw = raw.reshape(-1, 1)
    if raw.ndim != 2 or raw.shape[0] < 1:
        raise InputError(f"Expected an n x k matrix with n >= 1, got shape {raw.shape}")
    if tol <= 0:
        raise InputError("Rank tolerance must be positive")
    if not np.all(np.isfinite(raw)):
        raise InputError("Input columns contain non-finite entries")

    n, k = raw.shape
    if k == 0:
        return zero_subspace(n)

    u, s, _ = scipy.linalg.svd(raw, full_matrices=False)
    if s[0] == 0:
        return zero_subspace(n)
    rank = int(np.sum(s > tol * s[0]))
    return Subspace(n, fix_column_phases(u[:, :rank]))


def projector(S: Subspace) -> np.ndarray:
    return S.basis @ S.basis.conj().T


def projector_pair(M: Subspace, N: Subspace) -> ProjectorPair:
    check_same_ambient(M, N)
    return ProjectorPair(P=projector(M), Q=projector(N), source_M=M, source_N=N)


def complement(S: Subspace) -> Subspace:
    n = S.ambient_dim
    if S.is_zero:
        return Subspace(n, np.eye(n, dtype=complex))
    if S.dim == n:
        return zero_subspace(n)
    # full SVD: trailing left singular vectors span the complement
    u, _, _ = scipy.linalg.svd(S.basis, full_matrices=True)
    return Subspace(n, fix_column_phases(u[:, S.dim:]))


def subspace_distance(S1: Subspace, S2: Subspace) -> float:
    """Gap ‖P_S1 − P_S2‖₂"""
    check_same_ambient(S1, S2)
    return float(np.linalg.norm(projector(S1) - projector(S2), 2))


def cross_svd(M: Subspace, N: Subspace) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD of B_M* B_N: (Y, cosines, Z) with B_M* B_N = Y diag(cosines) Z*"""
    check_same_ambient(M, N)
    p, q = M.dim, N.dim
    if p == 0 or q == 0:
        return np.eye(p, dtype=complex), np.zeros(0), np.eye(q, dtype=complex)
    y, s, zh = scipy.linalg.svd(M.basis.conj().T @ N.basis, full_matrices=True)
    return y, s, zh.conj().T


def intersect(S1: Subspace, S2: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    n = check_same_ambient(S1, S2)
    y, cosines, _ = cross_svd(S1, S2)
    k = int(np.sum(cosines >= 1 - tol))
    if k == 0:
        return zero_subspace(n)
    return Subspace(n, fix_column_phases(S1.basis @ y[:, :k]))


def _right_angle_parts(M: Subspace, N: Subspace, tol: float) -> Tuple[Subspace, Subspace]:
    """M∩N⊥ and M⊥∩N from the singular directions with cosine ≤ tol (plus the null directions)"""
    n = M.ambient_dim
    y, cosines, z = cross_svd(M, N)
    small = np.flatnonzero(cosines <= tol)
    left = np.concatenate([small, np.arange(len(cosines), M.dim)]).astype(int)
    right = np.concatenate([small, np.arange(len(cosines), N.dim)]).astype(int)
    mn_perp = Subspace(n, fix_column_phases(M.basis @ y[:, left])) if len(left) else zero_subspace(n)
    m_perp_n = Subspace(n, fix_column_phases(N.basis @ z[:, right])) if len(right) else zero_subspace(n)
    return mn_perp, m_perp_n


def _stack(parts: Iterable[Subspace], n: int) -> np.ndarray:
    bases = [part.basis for part in parts if not part.is_zero]
    return np.column_stack(bases) if bases else np.zeros((n, 0), dtype=complex)


def five_part_decompose(M: Subspace, N: Subspace, tol: float = DEFAULT_TOL) -> FivePartDecomposition:
    n = check_same_ambient(M, N)
    check_tolerance(tol)

    mn = intersect(M, N, tol)
    mn_perp, m_perp_n = _right_angle_parts(M, N, tol)
    both_perp = intersect(complement(M), complement(N), tol)

    known = _stack([mn, mn_perp, m_perp_n, both_perp], n)
    r_part = complement(orthonormalize(known)) if known.shape[1] else Subspace(n, np.eye(n, dtype=complex))

    decomposition = FivePartDecomposition(mn, mn_perp, m_perp_n, both_perp, r_part)
    a, b, c, d, r = decomposition.counts
    logger.debug("five-part counts a=%d b=%d c=%d d=%d dim R=%d (n=%d)", a, b, c, d, r_part.dim, n)

    if r_part.dim % 2 or a + c + r != M.dim or a + d + r != N.dim:
        logger.warning("inconsistent five-part ledger at tol=%g", tol)
        raise PreconditionError(
            f"Tolerance-ambiguous classification at tol={tol}: "
            f"a={a}, b={b}, c={c}, d={d}, dim R={r_part.dim} for dim M={M.dim}, dim N={N.dim}"
        )
    return decomposition


def is_generic_position(M: Subspace, N: Subspace, tol: float = DEFAULT_TOL) -> bool:
    return five_part_decompose(M, N, tol).is_generic


def is_generalized_generic(M: Subspace, N: Subspace, tol: float = DEFAULT_TOL) -> bool:
    return five_part_decompose(M, N, tol).is_generalized_generic


def random_unitary(n: int, seed: Optional[int] = 0) -> np.ndarray:
    """Haar unitary from the QR factorisation of a seeded complex Gaussian matrix"""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = scipy.linalg.qr(z)
    diagonal = np.diag(r)
    phases = np.where(np.abs(diagonal) > 0, diagonal / np.abs(diagonal), 1)
    return q * phases


def synthesize_pair(
    angles: Sequence[float] = (),
    a: int = 0,
    b: int = 0,
    c: int = 0,
    d: int = 0,
    seed: Optional[int] = 0,
) -> Tuple[Subspace, Subspace]:
    """Build a pair with prescribed five-part counts and interior principal angles.

    The canonical pair is laid out block by block (a shared axes, b axes in
    neither, c axes only in M, d axes only in N, then one plane per angle) and
    conjugated by a seeded random unitary.
    """
    angles = [float(theta) for theta in angles]
    for theta in angles:
        if not 0 < theta < np.pi / 2:
            raise InputError(f"Interior angles must lie in (0, π/2), got {theta}")
    if min(a, b, c, d) < 0:
        raise InputError("Block counts a, b, c, d must be non-negative")
    n = a + b + c + d + 2 * len(angles)
    if n == 0:
        raise InputError("Requested pair lives in a zero-dimensional space")

    identity = np.eye(n, dtype=complex)
    m_columns = [identity[:, i] for i in range(a)]
    n_columns = [identity[:, i] for i in range(a)]
    offset = a + b
    m_columns += [identity[:, offset + i] for i in range(c)]
    offset += c
    n_columns += [identity[:, offset + i] for i in range(d)]
    offset += d
    for k, theta in enumerate(angles):
        x, y = identity[:, offset + 2 * k], identity[:, offset + 2 * k + 1]
        m_columns.append(x)
        n_columns.append(np.cos(theta) * x + np.sin(theta) * y)

    unitary = random_unitary(n, seed)

    def conjugated(columns):
        if not columns:
            return zero_subspace(n)
        return Subspace(n, unitary @ np.column_stack(columns))

    logger.debug("synthesized pair n=%d a=%d b=%d c=%d d=%d angles=%s", n, a, b, c, d, angles)
    return conjugated(m_columns), conjugated(n_columns)
