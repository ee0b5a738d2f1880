import numpy as np
import pytest

from pibounds import (
    DegradationMap,
    canonicalize,
    degrade,
    load_joint,
    pushforward,
    random_degradation,
    random_joint,
)
from pibounds.errors import (
    EmptyMatrix,
    NegativeMass,
    NotNormalized,
    NotSurjective,
    ShapeMismatch,
)

from conftest import seeded_joints


class TestLoadJoint:
    def test_uniform_marginals(self):
        joint = load_joint([[0.25, 0.25], [0.25, 0.25]])
        np.testing.assert_allclose(joint.row_marginal.values, [0.5, 0.5])
        np.testing.assert_allclose(joint.col_marginal.values, [0.5, 0.5])

    def test_hand_checked_marginals(self):
        joint = load_joint([[0.4, 0.1], [0.2, 0.3]])
        np.testing.assert_allclose(joint.row_marginal.values, [0.5, 0.5])
        np.testing.assert_allclose(joint.col_marginal.values, [0.6, 0.4])

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            load_joint([[0.6, 0.6]])

    def test_negative_rejected(self):
        with pytest.raises(NegativeMass):
            load_joint([[0.5, -0.1], [0.3, 0.3]])

    def test_dust_clamped_and_renormalized(self):
        joint = load_joint([[0.5, -1e-12], [0.25, 0.25]])
        assert joint.matrix.min() == 0.0
        assert abs(joint.matrix.sum() - 1.0) < 1e-15

    def test_empty(self):
        with pytest.raises(EmptyMatrix):
            load_joint([[]])
        with pytest.raises(EmptyMatrix):
            load_joint([[0.5, 0.5], [0.5]])


class TestCanonicalize:
    def test_two_row_swap(self):
        joint = load_joint([[0.1, 0.1], [0.4, 0.4]])
        sorted_joint, row_perm, _ = canonicalize(joint)
        np.testing.assert_allclose(sorted_joint.row_marginal.values, [0.8, 0.2])
        assert list(row_perm) == [1, 0]

    def test_sorted_input_is_identity(self):
        joint = load_joint([[0.4, 0.3], [0.2, 0.1]])
        sorted_joint, row_perm, col_perm = canonicalize(joint)
        assert list(row_perm) == [0, 1]
        assert list(col_perm) == [0, 1]
        np.testing.assert_array_equal(sorted_joint.matrix, joint.matrix)

    def test_stable_ties(self):
        # row masses (0.3, 0.3, 0.4): the 0.4 row leads, ties keep order
        joint = load_joint([[0.3, 0.0], [0.15, 0.15], [0.2, 0.2]])
        _, row_perm, _ = canonicalize(joint)
        assert list(row_perm) == [2, 0, 1]

    def test_idempotent_bit_for_bit(self):
        for _, joint in seeded_joints(20, seed=7):
            once, _, _ = canonicalize(joint)
            twice, _, _ = canonicalize(once)
            assert np.array_equal(once.matrix, twice.matrix)

    def test_labels_map_back(self):
        joint = load_joint([[0.05, 0.05], [0.5, 0.4]])
        sorted_joint, row_perm, col_perm = canonicalize(joint)
        np.testing.assert_array_equal(
            sorted_joint.matrix, joint.matrix[np.ix_(row_perm, col_perm)]
        )


class TestDegrade:
    def test_identity(self):
        joint = load_joint([[0.4, 0.1], [0.2, 0.3]])
        out = degrade(joint, DegradationMap(np.eye(2)))
        np.testing.assert_allclose(out.matrix, joint.matrix)

    def test_total_collapse(self):
        joint = load_joint([[0.4, 0.1], [0.2, 0.3]])
        out = degrade(joint, DegradationMap(np.ones((1, 2))))
        assert out.shape == (1, 2)
        np.testing.assert_allclose(out.matrix[0], joint.col_marginal.values)

    def test_marginal_is_map_times_px(self):
        joint = random_joint(3, 3, seed=11)
        dmap = random_degradation(2, 3, seed=12)
        out = degrade(joint, dmap)
        np.testing.assert_allclose(
            out.row_marginal.values,
            dmap.matrix @ joint.row_marginal.values,
            atol=1e-12,
        )

    def test_marginal_identity_across_instances(self):
        for i, joint in seeded_joints(30, seed=21):
            dmap = random_degradation(2 + i % 4, joint.m, seed=1000 + i)
            out = degrade(joint, dmap)
            np.testing.assert_allclose(
                out.row_marginal.values,
                dmap.matrix @ joint.row_marginal.values,
                atol=1e-12,
            )

    def test_shape_mismatch(self):
        joint = load_joint([[0.4, 0.1], [0.2, 0.3]])
        with pytest.raises(ShapeMismatch):
            degrade(joint, DegradationMap(np.eye(3)))


class TestPushforward:
    def test_identity(self):
        joint = load_joint([[0.4, 0.1], [0.2, 0.3]])
        out = pushforward(joint, [0, 1])
        np.testing.assert_allclose(out.matrix, joint.matrix)

    def test_constant_function(self):
        joint = random_joint(4, 3, seed=5)
        out = pushforward(joint, [0, 0, 0, 0], num_classes=1)
        assert out.shape == (1, 3)
        np.testing.assert_allclose(out.matrix[0], joint.col_marginal.values)

    def test_merge_first_two_rows(self):
        joint = random_joint(3, 2, seed=6)
        out = pushforward(joint, [0, 0, 1])
        np.testing.assert_allclose(out.matrix[0], joint.matrix[:2].sum(axis=0))
        np.testing.assert_allclose(out.matrix[1], joint.matrix[2])

    def test_column_marginal_preserved(self):
        for i, joint in seeded_joints(30, seed=31):
            assignment = np.arange(joint.m) % max(1, joint.m - 1)
            out = pushforward(joint, assignment)
            np.testing.assert_allclose(
                out.col_marginal.values, joint.col_marginal.values, atol=1e-12
            )

    def test_not_surjective(self):
        joint = load_joint([[0.4, 0.1], [0.2, 0.3]])
        with pytest.raises(NotSurjective):
            pushforward(joint, [0, 0], num_classes=2)
        with pytest.raises(NotSurjective):
            pushforward(joint, [0, 2], num_classes=2)


class TestRandomJoint:
    def test_deterministic(self):
        a = random_joint(3, 4, seed=99)
        b = random_joint(3, 4, seed=99)
        assert np.array_equal(a.matrix, b.matrix)

    def test_valid_and_positive(self):
        joint = random_joint(2, 2, seed=1)
        assert joint.matrix.min() > 0.0
        assert abs(joint.matrix.sum() - 1.0) < 1e-12

    def test_monte_carlo_mean(self):
        # 1000 draws at 4x4: each cell averages 1/16 within 0.01
        total = np.zeros((4, 4))
        for i in range(1000):
            total += random_joint(4, 4, seed=i).matrix
        np.testing.assert_allclose(total / 1000, np.full((4, 4), 1 / 16), atol=0.01)
