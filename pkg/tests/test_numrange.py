import numpy as np
import pytest
import scipy.linalg

from jordanlens.exceptions import InputError, PreconditionError
from jordanlens.models import ConvexRegion, EllipticDisk, OperatorKind, Subspace
from jordanlens.numrange import (
    convex_hull,
    disk_region,
    hausdorff_distance,
    hermitian_bounding_box,
    numerical_radius,
    offdiag_ellipse,
    operator_norm_identities,
    plane_canonical_form,
    product_disks,
    product_range,
    region_from_points,
    sum_range,
    support_oracle,
)
from jordanlens.principal import jordan_frames, principal_angles
from jordanlens.spectra import analytic_eigenpairs, build_operator
from jordanlens.subspace import five_part_decompose, orthonormalize, projector_pair, synthesize_pair, zero_subspace
from tests.conftest import line

SQRT3_2 = np.sqrt(3) / 2


def square(shift: complex = 0) -> ConvexRegion:
    return ConvexRegion(vertices=np.array([0, 1, 1 + 1j, 1j]) + shift)


class TestConvexHull:

    def test_square_with_interior_and_collinear_points(self):
        points = [0, 1, 1 + 1j, 1j, 0.5 + 0.5j, 0.5, 1 + 0.5j]
        hull = convex_hull(points)
        assert len(hull) == 4
        assert set(np.round(hull, 12)) == {0, 1, 1 + 1j, 1j}
        assert ConvexRegion(hull).is_convex()

    def test_counterclockwise_orientation(self):
        hull = convex_hull([0, 1, 1j])
        signed_area = sum((a.conjugate() * b).imag for a, b in zip(hull, np.roll(hull, -1))) / 2
        assert signed_area > 0

    def test_degenerate_inputs(self):
        assert list(convex_hull([2 + 1j, 2 + 1j])) == [2 + 1j]
        assert len(convex_hull([0, 0.5, 1])) == 2

    def test_rejects_empty_and_non_finite(self):
        with pytest.raises(InputError):
            convex_hull([])
        with pytest.raises(InputError):
            convex_hull([0, np.inf])


class TestNormIdentities:

    @pytest.mark.parametrize("M,N,norm_product,norm_sum", [
        (line(2, 1), line(2, 0.5, SQRT3_2), 0.5, 1.5),
        (line(2, 1), line(2, 1), 1.0, 2.0),
        (line(2, 1), line(2, 0, 1), 0.0, 1.0),
    ])
    def test_examples(self, M, N, norm_product, norm_sum):
        report = operator_norm_identities(projector_pair(M, N), principal_angles(M, N))
        assert report.norm_product == pytest.approx(norm_product, abs=1e-12)
        assert report.norm_sum == pytest.approx(norm_sum, abs=1e-12)
        assert report.max_deviation <= 1e-10

    @pytest.mark.parametrize("pair_seed", range(8))
    def test_synthesized_pairs(self, pair_seed):
        M, N = synthesize_pair([0.3, 1.2], a=pair_seed % 2, b=1, c=pair_seed % 3, seed=pair_seed)
        report = operator_norm_identities(projector_pair(M, N), principal_angles(M, N))
        assert report.sum_deviation <= 1e-10
        assert report.product_deviation <= 1e-10


class TestSumRange:

    def test_third_lines(self, third_pair):
        interval = sum_range(*third_pair)
        assert (interval.lo, interval.hi) == pytest.approx((0.5, 1.5), abs=1e-12)
        assert interval.radius == pytest.approx(1.5)

    def test_equal_proper_subspaces(self):
        M = orthonormalize(np.eye(3)[:, :2])
        interval = sum_range(M, M)
        assert (interval.lo, interval.hi) == pytest.approx((0.0, 2.0), abs=1e-12)

    def test_orthogonal_spanning_pair(self):
        interval = sum_range(line(2, 1), line(2, 0, 1))
        assert (interval.lo, interval.hi) == pytest.approx((1.0, 1.0), abs=1e-12)

    @pytest.mark.parametrize("pair_seed", range(10))
    def test_matches_hermitian_eigenvalues(self, pair_seed):
        rng = np.random.default_rng(pair_seed)
        a, b, c, d = (int(x) for x in rng.integers(0, 3, size=4))
        M, N = synthesize_pair([0.4, 1.1], a, b, c, d, seed=pair_seed)
        pair = projector_pair(M, N)
        eigenvalues = scipy.linalg.eigvalsh(pair.P + pair.Q)
        interval = sum_range(M, N)
        assert interval.lo == pytest.approx(eigenvalues[0], abs=1e-10)
        assert interval.hi == pytest.approx(eigenvalues[-1], abs=1e-10)

    def test_zero_subspace_is_rejected(self):
        with pytest.raises(PreconditionError):
            sum_range(zero_subspace(2), line(2, 1))

    def test_full_space_is_rejected(self):
        with pytest.raises(PreconditionError):
            sum_range(Subspace(2, np.eye(2)), line(2, 1))


class TestOffdiagEllipse:

    def test_two_one_ellipse(self):
        disk = offdiag_ellipse(2, 1)
        assert disk.center == 0
        assert (disk.semi_major, disk.semi_minor) == (1.5, 0.5)
        assert disk.foci == pytest.approx((-np.sqrt(2), np.sqrt(2)))

    def test_against_oracle(self):
        oracle = support_oracle(np.array([[0, 2], [1, 0]]), 720)
        assert hausdorff_distance(disk_region(offdiag_ellipse(2, 1), 720), oracle) <= 1e-3
        re_lo, re_hi, im_lo, im_hi = oracle.bounds
        assert (re_hi, im_hi) == pytest.approx((1.5, 0.5), abs=1e-4)

    @pytest.mark.parametrize("pair_seed", range(20))
    def test_random_parameters_against_oracle(self, pair_seed):
        rng = np.random.default_rng(pair_seed)
        a = rng.uniform(0.1, 3)
        b = rng.uniform(0, a)
        oracle = support_oracle(np.array([[0, a], [b, 0]]), 720)
        assert hausdorff_distance(disk_region(offdiag_ellipse(a, b), 720), oracle) <= 1e-3

    def test_degenerate_shapes(self):
        circle = offdiag_ellipse(1, 0)
        assert circle.semi_major == circle.semi_minor == 0.5
        segment = offdiag_ellipse(1, 1)
        assert segment.semi_minor == 0
        assert segment.contains(0.9) and not segment.contains(0.5j)

    def test_negative_input(self):
        with pytest.raises(InputError):
            offdiag_ellipse(-1, 0.5)


class TestProductRange:

    def test_third_disk(self, third_pair):
        frames = jordan_frames(principal_angles(*third_pair), *third_pair)
        (disk,) = product_disks(frames)
        assert disk.center == pytest.approx(0.125)
        assert disk.semi_major == pytest.approx(0.25)
        assert disk.semi_minor == pytest.approx(0.2165, abs=1e-4)
        assert disk.foci == pytest.approx((0, 0.25), abs=1e-12)

    def test_two_frames(self):
        M, N = synthesize_pair([np.pi / 6, np.pi / 3], seed=0)
        disks = product_disks(jordan_frames(principal_angles(M, N), M, N))
        assert [disk.center.real for disk in disks] == pytest.approx([0.375, 0.125])

    def test_single_disk_matches_oracle(self, third_pair):
        region = product_range(*third_pair, 720)
        PQ = build_operator(OperatorKind.PQ, projector_pair(*third_pair))
        assert hausdorff_distance(region, support_oracle(PQ, 720)) <= 2e-3
        assert region.bounds[1] == pytest.approx(0.375, abs=1e-9)

    def test_shared_line_gives_unit_segment(self):
        region = product_range(line(2, 1), line(2, 1))
        assert region.segments == ((0, 1),)
        assert sorted(region.vertices.real) == pytest.approx([0, 1])

    def test_whole_space_is_the_point_one(self):
        M, N = synthesize_pair([], a=2)
        region = product_range(M, N, 90)
        assert region.segments == ()
        assert region.points == (1,)
        assert len(region.vertices) == 1
        assert abs(region.vertices[0] - 1) <= 1e-12
        PQ = build_operator(OperatorKind.PQ, projector_pair(M, N))
        assert hausdorff_distance(region, support_oracle(PQ, 90)) <= 1e-12

    def test_intersection_without_kernel_adds_only_one(self):
        M, N = synthesize_pair([0.6], a=1, seed=2)
        region = product_range(M, N, 720)
        assert region.segments == ()
        assert region.points == (1,)
        PQ = build_operator(OperatorKind.PQ, projector_pair(M, N))
        assert hausdorff_distance(region, support_oracle(PQ, 720)) <= 2e-3

    def test_segment_and_disk_in_c4(self):
        M, N = synthesize_pair([np.pi / 3], a=1, b=1, seed=3)
        region = product_range(M, N, 720)
        PQ = build_operator(OperatorKind.PQ, projector_pair(M, N))
        assert hausdorff_distance(region, support_oracle(PQ, 720)) <= 2e-3
        re_lo, re_hi, im_lo, im_hi = region.bounds
        assert re_hi == pytest.approx(1.0, abs=1e-12)
        assert im_hi == pytest.approx(0.5 * SQRT3_2 / 2, abs=1e-5)

    @pytest.mark.parametrize("pair_seed", range(24))
    def test_corpus_against_oracle(self, pair_seed):
        rng = np.random.default_rng(100 + pair_seed)
        angles = sorted(rng.uniform(0.05, np.pi / 2 - 0.05, size=int(rng.integers(1, 4))))
        a = 1 + pair_seed % 2 if pair_seed < 12 else 0
        b, c, d = (int(x) for x in rng.integers(0, 2, size=3))
        M, N = synthesize_pair(angles, a, b, c, d, seed=pair_seed)
        region = product_range(M, N, 720)
        PQ = build_operator(OperatorKind.PQ, projector_pair(M, N))
        assert hausdorff_distance(region, support_oracle(PQ, 720)) <= 2e-3
        assert region.is_convex()

    def test_bounding_box_and_conjugation_symmetry(self):
        M, N = synthesize_pair([0.3, 0.9, 1.3], b=1, c=1, seed=5)
        region = product_range(M, N)
        box = hermitian_bounding_box(build_operator(OperatorKind.PQ, projector_pair(M, N)))
        assert all(box.contains(z) for z in region.vertices)
        conjugates = region.vertices.conj()
        assert np.abs(conjugates[:, None] - region.vertices[None, :]).min(axis=1).max() <= 1e-9

    def test_foci_are_eigenvalues(self):
        M, N = synthesize_pair([0.4, 1.0], c=1, seed=2)
        five = five_part_decompose(M, N)
        frames = jordan_frames(principal_angles(M, N), M, N)
        eigenvalues = [pair.value for pair in analytic_eigenpairs(OperatorKind.PQ, frames, five)]
        for disk in product_disks(frames):
            for focus in disk.foci:
                assert min(abs(focus - value) for value in eigenvalues) <= 1e-12

    def test_both_zero_is_rejected(self):
        with pytest.raises(InputError):
            product_range(zero_subspace(2), zero_subspace(2))

    def test_plane_canonical_form_links_disk_and_offdiag(self, third_pair):
        frame = jordan_frames(principal_angles(*third_pair), *third_pair)[0]
        form = plane_canonical_form(frame, projector_pair(*third_pair))
        a, b = form.offdiag
        expected = np.array([[0, a], [b, 0]])
        assert np.abs(form.matrix - expected).max() <= 1e-12
        assert np.abs(form.basis.conj().T @ form.basis - np.eye(2)).max() <= 1e-12
        disk = offdiag_ellipse(a, b)
        (product_disk,) = product_disks([frame])
        assert disk.semi_major == pytest.approx(product_disk.semi_major)
        assert disk.semi_minor == pytest.approx(product_disk.semi_minor)


class TestSupportOracle:

    def test_identity_is_a_point(self):
        region = support_oracle(np.eye(2), 36)
        assert len(region.vertices) == 1
        assert region.vertices[0] == pytest.approx(1)

    def test_diagonal_is_a_segment(self):
        region = support_oracle(np.diag([0.0, 1.0]), 36)
        assert sorted(region.vertices.real) == pytest.approx([0, 1], abs=1e-12)

    def test_workers_do_not_change_the_result(self):
        A = np.random.default_rng(0).standard_normal((5, 5))
        sequential = support_oracle(A, 120)
        threaded = support_oracle(A, 120, workers=4)
        assert np.array_equal(sequential.vertices, threaded.vertices)

    def test_affine_law(self):
        rng = np.random.default_rng(1)
        A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        image = support_oracle(2 * A + np.eye(4), 720)
        mapped = region_from_points(2 * support_oracle(A, 720).vertices + 1)
        assert hausdorff_distance(image, mapped) <= 2e-3

    def test_adjoint_conjugates_the_range(self):
        rng = np.random.default_rng(2)
        A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        adjoint = support_oracle(A.conj().T, 720)
        conjugated = region_from_points(support_oracle(A, 720).vertices.conj())
        assert hausdorff_distance(adjoint, conjugated) <= 2e-3

    def test_rejects_non_square(self):
        with pytest.raises(InputError):
            support_oracle(np.zeros((2, 3)))


class TestHausdorff:

    def test_identical_regions(self):
        assert hausdorff_distance(square(), square()) == 0

    def test_shifted_square(self):
        assert hausdorff_distance(square(), square(0.1)) == pytest.approx(0.1)

    def test_sampled_circles(self):
        circle = EllipticDisk(0, 1, 1)
        fine, coarse = disk_region(circle, 720), disk_region(circle, 90)
        assert hausdorff_distance(fine, coarse) <= 1 - np.cos(np.pi / 90) + 1e-12

    def test_numerical_radius(self):
        assert numerical_radius(square()) == pytest.approx(np.sqrt(2))
