"""Numerical ranges of P+Q and PQ in closed form, plus a support-function oracle.

W(A) = {⟨Ax, x⟩ : ‖x‖ = 1}. Regions are carried as counterclockwise convex
polygons (``ConvexRegion``); ellipses are sampled on their boundary.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg

from jordanlens.config import DEFAULT_SAMPLES, DEFAULT_TOL
from jordanlens.exceptions import InputError, PreconditionError
from jordanlens.models import AngleDecomposition, ConvexRegion, EllipticDisk, JordanFrame, PlaneCanonicalForm, ProjectorPair, Subspace
from jordanlens.principal import jordan_frames, principal_angles
from jordanlens.schemas import BoundingBox, Interval, NormIdentityReport
from jordanlens.subspace import check_same_ambient, complement, five_part_decompose

logger = logging.getLogger(__name__)

HULL_TOL = 1e-12


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def _drop_close(vertices: List[complex], atol: float) -> List[complex]:
    kept = [vertices[0]]
    for z in vertices[1:]:
        if abs(z - kept[-1]) > atol:
            kept.append(z)
    while len(kept) > 1 and abs(kept[-1] - kept[0]) <= atol:
        kept.pop()
    return kept


def convex_hull(points, tol: float = HULL_TOL) -> np.ndarray:
    """Andrew's monotone chain; collinear points are dropped. Returns CCW vertices."""
    pts = np.unique(np.ravel(np.asarray(points, dtype=complex)))
    if pts.size == 0:
        raise InputError("Cannot take the hull of an empty point set")
    if not np.all(np.isfinite(pts)):
        raise InputError("Hull points must be finite")
    if pts.size == 1:
        return pts

    pts = [complex(z) for z in pts]
    lower: List[complex] = []
    for z in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], z) <= tol:
            lower.pop()
        lower.append(z)
    upper: List[complex] = []
    for z in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], z) <= tol:
            upper.pop()
        upper.append(z)
    return np.array(_drop_close(lower[:-1] + upper[:-1], tol), dtype=complex)


def region_from_points(samples, **generators) -> ConvexRegion:
    return ConvexRegion(vertices=convex_hull(samples), **generators)


def disk_region(disk: EllipticDisk, samples: int = DEFAULT_SAMPLES) -> ConvexRegion:
    return region_from_points(disk.boundary(samples), disks=(disk,))


def operator_norm_identities(pair: ProjectorPair, dec: AngleDecomposition) -> NormIdentityReport:
    """‖P+Q‖ = 1 + ‖PQ‖ and ‖PQ‖ = cos θ₁"""
    norm_sum = float(scipy.linalg.norm(pair.P + pair.Q, 2))
    norm_product = float(scipy.linalg.norm(pair.P @ pair.Q, 2))
    cos_dixmier = float(np.cos(dec.dixmier_angle)) if dec.q else 0.0
    return NormIdentityReport(
        norm_sum=norm_sum,
        norm_product=norm_product,
        cos_dixmier=cos_dixmier,
        sum_deviation=abs(norm_sum - (1 + norm_product)),
        product_deviation=abs(norm_product - cos_dixmier),
        combined_deviation=abs(norm_sum - (1 + cos_dixmier)),
    )


def sum_range(M: Subspace, N: Subspace, tol: float = DEFAULT_TOL) -> Interval:
    """W(P_M + P_N) = [2 sin²(η₁/2), 2 cos²(θ₁/2)], θ₁ and η₁ the Dixmier angles of (M,N) and (M⊥,N⊥)"""
    check_same_ambient(M, N)
    theta = principal_angles(M, N, tol).dixmier_angle
    if theta is None:
        raise PreconditionError("Dixmier angle of (M, N) is undefined: M or N is the zero subspace")
    eta = principal_angles(complement(M), complement(N), tol).dixmier_angle
    if eta is None:
        raise PreconditionError("Dixmier angle of (M⊥, N⊥) is undefined: M or N is the whole space")
    return Interval(lo=2 * np.sin(eta / 2) ** 2, hi=2 * np.cos(theta / 2) ** 2)


def offdiag_ellipse(a: float, b: float) -> EllipticDisk:
    """W([[0, a], [b, 0]]): centred at 0 with semi-axes (a+b)/2 and |a−b|/2, foci ±√(ab)"""
    if a < 0 or b < 0:
        raise InputError(f"Off-diagonal entries must be non-negative, got a={a}, b={b}")
    return EllipticDisk(center=0, semi_major=(a + b) / 2, semi_minor=abs(a - b) / 2)


def product_disks(frames: Sequence[JordanFrame]) -> List[EllipticDisk]:
    """W(PQ restricted to each Jordan plane): centre λ²/2, semi-axes λ/2 and λμ/2, foci 0 and λ²"""
    return [
        EllipticDisk(center=frame.lam ** 2 / 2, semi_major=frame.lam / 2, semi_minor=frame.lam * frame.mu / 2)
        for frame in frames
    ]


def product_range(
    M: Subspace,
    N: Subspace,
    samples_per_disk: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
) -> ConvexRegion:
    """W(PQ) as the hull of the plane disks, the point 1 when M∩N ≠ {0}, and 0 when PQ has a kernel part"""
    check_same_ambient(M, N)
    if M.is_zero and N.is_zero:
        raise InputError("Both subspaces are zero; the product range would be empty")
    if samples_per_disk < 3:
        raise InputError("Need at least 3 samples per disk")

    five = five_part_decompose(M, N, tol)
    disks = product_disks(jordan_frames(principal_angles(M, N, tol), M, N))

    points = [disk.boundary(samples_per_disk) for disk in disks]
    has_one = five.a > 0
    # for r > 0, 0 is a focus of every disk
    has_zero = five.b + five.c + five.d > 0
    segments, extra = [], []
    if has_one and has_zero:
        segments.append((0j, 1 + 0j))
    elif has_one:
        extra.append(1 + 0j)
    elif has_zero:
        extra.append(0j)
    if has_one:
        points.append(np.ones(1, dtype=complex))
    if has_zero:
        points.append(np.zeros(1, dtype=complex))

    logger.debug("product range from %d disks, %d segments, %d points", len(disks), len(segments), len(extra))
    return region_from_points(np.concatenate(points), disks=tuple(disks), segments=tuple(segments), points=tuple(extra))


def support_oracle(A, num_angles: int = DEFAULT_SAMPLES, workers: Optional[int] = None) -> ConvexRegion:
    """Inner polygon of W(A) from top eigenvectors of the rotated Hermitian parts.

    Boundary points are collected in angle order whatever the number of workers.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise InputError(f"Expected a non-empty square matrix, got shape {A.shape}")
    if num_angles < 3:
        raise InputError("Need at least 3 support directions")

    def boundary_point(j: int) -> complex:
        rotated = np.exp(2j * np.pi * j / num_angles) * A
        _, vectors = scipy.linalg.eigh((rotated + rotated.conj().T) / 2)
        x = vectors[:, -1]
        return complex(np.vdot(x, A @ x))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(boundary_point, range(num_angles)))
    else:
        points = [boundary_point(j) for j in range(num_angles)]
    return region_from_points(points)


def _distance_to_region(z: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    """Distance from each point of z to the filled convex polygon"""
    z = np.asarray(z, dtype=complex).reshape(-1, 1)
    if len(vertices) == 1:
        return np.abs(z[:, 0] - vertices[0])
    start = vertices.reshape(1, -1)
    edge = np.roll(vertices, -1).reshape(1, -1) - start
    offset = z - start
    t = np.clip((offset * edge.conj()).real / np.abs(edge) ** 2, 0.0, 1.0)
    distance = np.abs(offset - t * edge).min(axis=1)
    if len(vertices) >= 3:
        cross = edge.real * offset.imag - edge.imag * offset.real
        distance[np.all(cross >= -HULL_TOL, axis=1)] = 0.0
    return distance


def hausdorff_distance(R1: ConvexRegion, R2: ConvexRegion) -> float:
    """Symmetric Hausdorff distance; for convex sets the extremes sit at vertices"""
    if len(R1.vertices) == 0 or len(R2.vertices) == 0:
        raise InputError("Hausdorff distance needs two non-empty regions")
    return float(max(
        _distance_to_region(R1.vertices, R2.vertices).max(),
        _distance_to_region(R2.vertices, R1.vertices).max(),
    ))


def hermitian_bounding_box(A) -> BoundingBox:
    """W(A) lies in W(Re A) + i W(Im A)"""
    A = np.asarray(A, dtype=complex)
    real_part = scipy.linalg.eigvalsh((A + A.conj().T) / 2)
    imag_part = scipy.linalg.eigvalsh((A - A.conj().T) / 2j)
    return BoundingBox(re_lo=real_part[0], re_hi=real_part[-1], im_lo=imag_part[0], im_hi=imag_part[-1])


def numerical_radius(region: ConvexRegion) -> float:
    return float(np.abs(region.vertices).max())


def plane_canonical_form(frame: JordanFrame, pair: ProjectorPair) -> PlaneCanonicalForm:
    """Basis W of one Jordan plane with W*(PQ − λ²/2)W = [[0, λ(1+μ)/2], [λ(1−μ)/2, 0]]"""
    lam, mu = frame.lam, frame.mu
    basis = np.column_stack([
        (frame.u - frame.t) / np.sqrt(2 + 2 * mu),
        (frame.u + frame.t) / np.sqrt(2 - 2 * mu),
    ])
    shift = lam ** 2 / 2
    matrix = basis.conj().T @ (pair.P @ pair.Q) @ basis - shift * np.eye(2)
    return PlaneCanonicalForm(basis=basis, matrix=matrix, shift=shift,
                              offdiag=(lam * (1 + mu) / 2, lam * (1 - mu) / 2))
