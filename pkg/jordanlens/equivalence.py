"""Unitary equivalence of subspace pairs and the swap unitary of a generic pair."""

import logging
from typing import Tuple

import numpy as np

from jordanlens.config import DEFAULT_TOL
from jordanlens.exceptions import PreconditionError
from jordanlens.models import Subspace
from jordanlens.principal import jordan_frames, principal_angles
from jordanlens.schemas import DimensionCheck, EquivalenceReport
from jordanlens.subspace import check_same_ambient, complement, five_part_decompose

logger = logging.getLogger(__name__)

Pair = Tuple[Subspace, Subspace]


def complement_pair(M: Subspace, N: Subspace) -> Pair:
    return complement(M), complement(N)


def decide_equivalent(pair1: Pair, pair2: Pair, tol: float = DEFAULT_TOL) -> EquivalenceReport:
    """Jordan's criterion: equal five-part dimensions and equal principal angles"""
    check_same_ambient(*pair1, *pair2)
    first = five_part_decompose(*pair1, tol=tol)
    second = five_part_decompose(*pair2, tol=tol)

    dims = [
        ("a", first.a, second.a),
        ("c", first.c, second.c),
        ("d", first.d, second.d),
        ("b", first.b, second.b),
        ("dim_R", first.r_part.dim, second.r_part.dim),
    ]
    dim_checks = [DimensionCheck(name=name, first=x, second=y, passed=x == y) for name, x, y in dims]

    angles1 = principal_angles(*pair1, tol=tol).angles
    angles2 = principal_angles(*pair2, tol=tol).angles
    if len(angles1) != len(angles2):
        deviation = float("inf")
    elif len(angles1) == 0:
        deviation = 0.0
    else:
        deviation = float(np.max(np.abs(np.sort(angles1) - np.sort(angles2))))

    equivalent = all(check.passed for check in dim_checks) and deviation <= tol
    logger.debug("equivalence verdict=%s angle deviation=%g", equivalent, deviation)
    return EquivalenceReport(equivalent=equivalent, dim_checks=dim_checks, angle_deviation=deviation, tol=tol)


def build_swap_unitary(M: Subspace, N: Subspace, tol: float = DEFAULT_TOL) -> np.ndarray:
    """U = Σ_k cscθ_k (t_k s_k* − s_k t_k*), which maps M onto M⊥ and N onto N⊥"""
    n = check_same_ambient(M, N)
    five = five_part_decompose(M, N, tol)
    if not five.is_generic:
        nonzero = ", ".join(f"{name}={value}" for name, value in zip("abcd", five.counts) if value)
        raise PreconditionError(f"The swap unitary needs a pair in generic position; found {nonzero}")

    frames = jordan_frames(principal_angles(M, N, tol), M, N)
    unitary = np.zeros((n, n), dtype=complex)
    for frame in frames:
        unitary += (np.outer(frame.t, frame.s.conj()) - np.outer(frame.s, frame.t.conj())) / frame.mu
    return unitary
