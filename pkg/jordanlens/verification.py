import logging
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg

from jordanlens.config import DEFAULT_SAMPLES, DEFAULT_TOL
from jordanlens.equivalence import build_swap_unitary, complement_pair, decide_equivalent
from jordanlens.models import OperatorKind, Subspace
from jordanlens.numrange import (
    hausdorff_distance,
    hermitian_bounding_box,
    operator_norm_identities,
    product_range,
    sum_range,
    support_oracle,
)
from jordanlens.principal import (
    complement_angle_relation,
    frame_identity_deviation,
    jordan_frames,
    principal_angles,
    projection_action_residuals,
)
from jordanlens.schemas import CheckResult, VerificationReport
from jordanlens.spectra import analytic_eigenpairs, build_operator, max_residual, spectrum_deviation
from jordanlens.subspace import (
    complement,
    five_part_decompose,
    inner,
    intersect,
    projector,
    projector_pair,
    synthesize_pair,
)

logger = logging.getLogger(__name__)

Profile = Tuple[Tuple[float, ...], int, int, int, int]

BIORTHOGONALITY_TOL = 1e-10
FRAME_TOL = 1e-10
PROJECTOR_TOL = 1e-11
UNITARY_TOL = 1e-10
RANGE_MAPPING_TOL = 1e-9
NORM_TOL = 1e-10
SUM_RANGE_TOL = 1e-10
RESIDUAL_TOL = 1e-9
SPECTRUM_TOL = 1e-8
COMPLEMENT_ANGLE_TOL = 1e-9
PRODUCT_RANGE_TOL = 2e-3
CONJUGATION_TOL = 1e-9
ANGLE_MARGIN = 0.05


def random_profile(rng: np.random.Generator, max_dim: int = 12) -> Profile:
    """Block counts in {0,1,2} and up to three interior angles, within max_dim"""
    while True:
        a, b, c, d = (int(x) for x in rng.integers(0, 3, size=4))
        n_angles = int(rng.integers(0, 4))
        if 0 < a + b + c + d + 2 * n_angles <= max_dim:
            break
    angles = tuple(sorted(float(x) for x in rng.uniform(ANGLE_MARGIN, np.pi / 2 - ANGLE_MARGIN, size=n_angles)))
    return angles, a, b, c, d


def random_corpus(count: int, seed: int = 0, max_dim: int = 12) -> List[Tuple[Profile, Subspace, Subspace]]:
    rng = np.random.default_rng(seed)
    corpus = []
    for i in range(count):
        profile = random_profile(rng, max_dim)
        M, N = synthesize_pair(*profile, seed=seed * 100_003 + i)
        corpus.append((profile, M, N))
    return corpus


def _check(name: str, value: float, threshold: float, detail: Optional[str] = None) -> CheckResult:
    value = float(value)
    return CheckResult(name=name, value=value, threshold=threshold,
                       passed=bool(np.isfinite(value) and value <= threshold), detail=detail)


def _flag(name: str, ok: bool, detail: Optional[str] = None) -> CheckResult:
    return CheckResult(name=name, value=0.0 if ok else 1.0, threshold=0.0, passed=bool(ok), detail=detail)


class InvariantSuite:
    def __init__(self, tol: float = DEFAULT_TOL, samples: int = DEFAULT_SAMPLES, workers: int = 1):
        self.tol = tol
        self.samples = samples
        self.workers = workers

    def check_projectors(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        checks = []
        identity = np.eye(M.ambient_dim)
        for label, S in (("M", M), ("N", N)):
            P = projector(S)
            checks.append(_check(f"projector_idempotent_{label}", scipy.linalg.norm(P @ P - P, 2), PROJECTOR_TOL))
            checks.append(_check(f"projector_hermitian_{label}", scipy.linalg.norm(P - P.conj().T, 2), 1e-12))
            checks.append(_check(f"complement_sum_{label}",
                                 scipy.linalg.norm(P + projector(complement(S)) - identity, 2), PROJECTOR_TOL))
        return checks

    def check_decomposition(self, M: Subspace, N: Subspace, expected: Optional[Profile] = None) -> List[CheckResult]:
        five = five_part_decompose(M, N, self.tol)
        a, b, c, d, r = five.counts
        n = M.ambient_dim
        ledger = (a + c + r == M.dim and a + d + r == N.dim
                  and b + d + r == n - M.dim and b + c + r == n - N.dim)
        checks = [_flag("dimension_ledger", ledger, f"a={a} b={b} c={c} d={d} r={r}")]
        if expected is not None:
            angles, *counts = expected
            checks.append(_flag("recovers_requested_counts", tuple(counts) + (len(angles),) == (a, b, c, d, r)))

        dec = principal_angles(M, N, self.tol)
        checks.append(_flag("intersection_matches_zero_angles", intersect(M, N, self.tol).dim == dec.n_zero))
        checks.append(_flag("dixmier_zero_iff_intersection", (dec.q > 0 and dec.n_zero > 0) == (a > 0)))
        return checks

    def check_angles(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        dec = principal_angles(M, N, self.tol)
        gram = dec.u_vectors.conj().T @ dec.v_vectors
        biorthogonality = np.abs(gram - np.diag(np.cos(dec.angles))).max() if dec.q else 0.0
        left, right = projection_action_residuals(dec, M, N)
        action = max(left.max(initial=0.0), right.max(initial=0.0))
        orthonormal = max(
            np.abs(dec.u_vectors.conj().T @ dec.u_vectors - np.eye(dec.q)).max(initial=0.0),
            np.abs(dec.v_vectors.conj().T @ dec.v_vectors - np.eye(dec.q)).max(initial=0.0),
        )
        return [
            _check("biorthogonality", biorthogonality, BIORTHOGONALITY_TOL),
            _check("projection_action", action, BIORTHOGONALITY_TOL),
            _check("principal_vectors_orthonormal", orthonormal, BIORTHOGONALITY_TOL),
            _flag("angles_ascending", bool(np.all(np.diff(dec.angles) >= 0))),
        ]

    def check_frames(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        dec = principal_angles(M, N, self.tol)
        frames = jordan_frames(dec, M, N)
        identities = max((frame_identity_deviation(frame) for frame in frames), default=0.0)
        cross = 0.0
        for i, first in enumerate(frames):
            for j, second in enumerate(frames):
                if i != j:
                    cross = max(cross, abs(inner(first.u, second.v)), abs(inner(first.s, second.t)),
                                abs(inner(first.s, second.v)), abs(inner(first.u, second.t)))
        checks = [_check("frame_identities", identities, FRAME_TOL), _check("frame_cross_orthogonality", cross, FRAME_TOL)]

        five = five_part_decompose(M, N, self.tol)
        if five.is_generic and frames:
            bases = {name: np.column_stack([getattr(frame, name) for frame in frames]) for name in "uvst"}
            targets = {"u": M, "v": N, "s": complement(M), "t": complement(N)}
            deviation = max(
                scipy.linalg.norm(bases[name] @ bases[name].conj().T - projector(targets[name]), 2) for name in "uvst"
            )
            checks.append(_check("four_bases_reconstruct_projectors", deviation, 1e-9))
        return checks

    def check_swap_unitary(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        if not five_part_decompose(M, N, self.tol).is_generic:
            return []
        U = build_swap_unitary(M, N, self.tol)
        identity = np.eye(M.ambient_dim)
        M_perp, N_perp = complement_pair(M, N)
        mapped_M, mapped_N = U @ M.basis, U @ N.basis
        mapping = max(
            scipy.linalg.norm(projector(M_perp) @ mapped_M - mapped_M, 2),
            scipy.linalg.norm(projector(N_perp) @ mapped_N - mapped_N, 2),
        )
        report = decide_equivalent((M, N), (M_perp, N_perp), self.tol)
        return [
            _check("swap_unitary_unitary", scipy.linalg.norm(U.conj().T @ U - identity, 2), UNITARY_TOL),
            _check("swap_unitary_skew_hermitian", scipy.linalg.norm(U + U.conj().T, 2), UNITARY_TOL),
            _check("swap_unitary_square_is_minus_identity", scipy.linalg.norm(U @ U + identity, 2), RANGE_MAPPING_TOL),
            _check("swap_unitary_range_mapping", mapping, RANGE_MAPPING_TOL),
            _flag("complements_equivalent", report.equivalent, f"angle deviation {report.angle_deviation:.3g}"),
        ]

    def check_complement_angles(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        report = complement_angle_relation(M, N, self.tol)
        return [
            CheckResult(name=f"complement_angles_{clause.name}", value=clause.max_deviation,
                        threshold=COMPLEMENT_ANGLE_TOL, passed=clause.passed and clause.max_deviation <= COMPLEMENT_ANGLE_TOL)
            for clause in report.clauses
        ]

    def check_norms(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        report = operator_norm_identities(projector_pair(M, N), principal_angles(M, N, self.tol))
        checks = [_check("norm_product_identity", report.product_deviation, NORM_TOL)]
        # ‖P+Q‖ = 1 + ‖PQ‖ needs a nonzero projection
        if not (M.is_zero and N.is_zero):
            checks.insert(0, _check("norm_sum_identity", report.sum_deviation, NORM_TOL))
        return checks

    def check_sum_range(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        n = M.ambient_dim
        if M.is_zero or N.is_zero or M.dim == n or N.dim == n:
            return []
        interval = sum_range(M, N, self.tol)
        pair = projector_pair(M, N)
        eigenvalues = scipy.linalg.eigvalsh(pair.P + pair.Q)
        deviation = max(abs(interval.lo - eigenvalues[0]), abs(interval.hi - eigenvalues[-1]))
        return [_check("sum_range_matches_eigenvalues", deviation, SUM_RANGE_TOL)]

    def check_spectra(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        five = five_part_decompose(M, N, self.tol)
        frames = jordan_frames(principal_angles(M, N, self.tol), M, N)
        pair = projector_pair(M, N)
        checks = []
        for kind in OperatorKind:
            operator = build_operator(kind, pair)
            pairs = analytic_eigenpairs(kind, frames, five)
            checks.append(_check(f"eigenpair_residuals_{kind.value}", max_residual(pairs, operator), RESIDUAL_TOL))
            checks.append(_check(f"eigenvalue_multiset_{kind.value}", spectrum_deviation(pairs, operator), SPECTRUM_TOL))
        return checks

    def check_product_range(self, M: Subspace, N: Subspace) -> List[CheckResult]:
        if M.is_zero and N.is_zero:
            return []
        region = product_range(M, N, self.samples, self.tol)
        PQ = build_operator(OperatorKind.PQ, projector_pair(M, N))
        oracle = support_oracle(PQ, self.samples, workers=self.workers)
        box = hermitian_bounding_box(PQ)
        conjugates = region.vertices.conj()
        symmetry = float(max(
            np.abs(conjugates[:, None] - region.vertices[None, :]).min(axis=1).max(),
            0.0,
        ))
        return [
            _check("product_range_vs_oracle", hausdorff_distance(region, oracle), PRODUCT_RANGE_TOL),
            _flag("product_range_convex", region.is_convex()),
            _flag("product_range_in_bounding_box", all(box.contains(z) for z in region.vertices)),
            _check("product_range_conjugation_symmetric", symmetry, CONJUGATION_TOL),
        ]

    def run(self, M: Subspace, N: Subspace, expected: Optional[Profile] = None) -> VerificationReport:
        checks = (
            self.check_projectors(M, N)
            + self.check_decomposition(M, N, expected)
            + self.check_angles(M, N)
            + self.check_frames(M, N)
            + self.check_swap_unitary(M, N)
            + self.check_complement_angles(M, N)
            + self.check_norms(M, N)
            + self.check_sum_range(M, N)
            + self.check_spectra(M, N)
            + self.check_product_range(M, N)
        )
        report = VerificationReport(pairs_checked=1, checks=checks)
        logger.info("verified pair (dim M=%d, dim N=%d): %d checks, %d failures",
                    M.dim, N.dim, len(checks), len(report.failures))
        return report

    def run_corpus(self, count: int, seed: int = 0, max_dim: int = 12) -> VerificationReport:
        """Worst value of every check over a seeded corpus of synthesized pairs"""
        worst = {}
        for profile, M, N in random_corpus(count, seed, max_dim):
            for check in self.run(M, N, expected=profile).checks:
                current = worst.get(check.name)
                if current is None or (current.passed and not check.passed) or (
                    current.passed == check.passed and check.value > current.value
                ):
                    worst[check.name] = check.model_copy(update={"detail": f"profile={profile}"})
        return VerificationReport(pairs_checked=count, checks=list(worst.values()))
