import numpy as np
import pytest

from jordanlens.equivalence import build_swap_unitary, complement_pair, decide_equivalent
from jordanlens.exceptions import DimensionMismatchError, PreconditionError
from jordanlens.models import Subspace
from jordanlens.subspace import projector, random_unitary, synthesize_pair
from tests.conftest import line


def rotate(S: Subspace, U: np.ndarray) -> Subspace:
    return Subspace(S.ambient_dim, U @ S.basis)


class TestDecideEquivalent:

    def test_pair_is_equivalent_to_itself(self):
        M, N = synthesize_pair([0.4, 1.0], a=1, c=2, seed=1)
        report = decide_equivalent((M, N), (M, N))
        assert report.equivalent
        assert report.angle_deviation <= 1e-12

    def test_unitary_image_is_equivalent(self):
        M, N = synthesize_pair([0.4, 1.0], a=1, b=1, d=1, seed=1)
        U = random_unitary(M.ambient_dim, seed=99)
        assert decide_equivalent((M, N), (rotate(M, U), rotate(N, U))).equivalent

    def test_different_angles_are_not_equivalent(self):
        first = synthesize_pair([0.4], a=1, seed=1)
        second = synthesize_pair([0.5], a=1, seed=1)
        report = decide_equivalent(first, second)
        assert not report.equivalent
        assert all(check.passed for check in report.dim_checks)
        assert report.angle_deviation == pytest.approx(0.1, abs=1e-10)

    def test_dimension_mismatch_is_reported_by_name(self):
        first = synthesize_pair([0.4], a=1, b=1, seed=1)
        second = synthesize_pair([0.4], c=1, d=1, seed=1)
        report = decide_equivalent(first, second)
        assert not report.equivalent
        failed = {check.name for check in report.dim_checks if not check.passed}
        assert failed == {"a", "b", "c", "d"}

    def test_angle_lists_of_different_length(self):
        first = synthesize_pair([0.4], a=1, b=1, seed=1)
        second = synthesize_pair([0.4], b=1, c=1, seed=1)
        report = decide_equivalent(first, second)
        assert not report.equivalent
        assert report.angle_deviation == float("inf")
        assert report.model_dump(mode="json")["angle_deviation"] is None

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            decide_equivalent((line(2, 1), line(2, 1, 1)), (line(3, 1), line(3, 1, 1)))


class TestSwapUnitary:

    def setup_method(self):
        self.M, self.N = synthesize_pair([0.2, 0.7, 1.3], seed=21)
        self.U = build_swap_unitary(self.M, self.N)
        self.identity = np.eye(self.M.ambient_dim)

    def test_unitary_and_skew_hermitian(self):
        assert np.linalg.norm(self.U.conj().T @ self.U - self.identity, 2) <= 1e-10
        assert np.linalg.norm(self.U + self.U.conj().T, 2) <= 1e-10
        assert np.linalg.norm(self.U @ self.U + self.identity, 2) <= 1e-9

    def test_maps_subspaces_onto_complements(self):
        M_perp, N_perp = complement_pair(self.M, self.N)
        for S, target in ((self.M, M_perp), (self.N, N_perp)):
            image = self.U @ S.basis
            assert np.linalg.norm(projector(target) @ image - image, 2) <= 1e-9

    def test_complement_pair_is_equivalent(self):
        assert decide_equivalent((self.M, self.N), complement_pair(self.M, self.N)).equivalent

    def test_third_lines(self, third_pair):
        M, N = third_pair
        U = build_swap_unitary(M, N)
        u, v = np.array([1, 0]), np.array([0.5, np.sqrt(3) / 2])
        s, t = np.array([0, 1]), np.array([-np.sqrt(3) / 2, 0.5])
        assert U @ u == pytest.approx(s, abs=1e-12)
        assert U @ v == pytest.approx(t, abs=1e-12)
        assert U @ s == pytest.approx(-u, abs=1e-12)

    @pytest.mark.parametrize("pair_seed", range(100))
    def test_generic_corpus(self, pair_seed):
        rng = np.random.default_rng(pair_seed)
        angles = sorted(rng.uniform(0.05, np.pi / 2 - 0.05, size=int(rng.integers(1, 5))))
        M, N = synthesize_pair(angles, seed=pair_seed)
        U = build_swap_unitary(M, N)
        n = M.ambient_dim
        assert np.linalg.norm(U.conj().T @ U - np.eye(n), 2) <= 1e-10
        assert np.linalg.norm(U + U.conj().T, 2) <= 1e-10
        image = U @ M.basis
        M_perp, _ = complement_pair(M, N)
        assert np.linalg.norm(projector(M_perp) @ image - image, 2) <= 1e-9

    def test_non_generic_pair_is_rejected(self):
        M, N = synthesize_pair([0.5], a=1, d=2, seed=0)
        with pytest.raises(PreconditionError) as exc_info:
            build_swap_unitary(M, N)
        assert "a=1" in str(exc_info.value)
        assert "d=2" in str(exc_info.value)
