import numpy as np
import pytest

from nvee.types import ShapeBounds
from nvee.harness.instances import random_instance, random_lengths


class TestRandomInstances:
    """
    Instance generator
    Target: src/nvee/harness/instances.py
    """

    def test_tc_instance_001_deterministic(self):
        """TC-INSTANCE-001: 同じシードからは同じインスタンス"""
        assert random_instance(11) == random_instance(11)

    @pytest.mark.parametrize("seed", range(8))
    def test_tc_instance_002_respects_bounds(self, seed):
        """TC-INSTANCE-002: 枝数・枝長・バー数・重みが上限内"""
        bounds = ShapeBounds(max_branches=2, max_length=3, max_bars=2)

        instance = random_instance(seed, bounds)

        lengths = instance.poset.shape.branch_lengths
        assert 1 <= len(lengths) <= 2
        assert max(lengths) <= 3
        assert len(instance.left.bars) <= 2
        assert len(instance.right.bars) <= 2
        w = instance.poset.weight
        assert (w.a, w.b) in bounds.weights

    def test_tc_instance_003_fixed_lengths(self):
        """TC-INSTANCE-003: 枝長を固定できる"""
        instance = random_instance(0, ShapeBounds(lengths=(2, 1)), fields=(3,))

        assert instance.poset.shape.branch_lengths == (2, 1)
        assert instance.fields == (3,)

    def test_tc_instance_004_asymmetric_lengths(self):
        """TC-INSTANCE-004: asymmetric なら最長枝は一意"""
        bounds = ShapeBounds(min_branches=2, max_branches=3, max_length=2)

        for seed in range(30):
            lengths = random_lengths(np.random.default_rng(seed), bounds)
            assert lengths.count(max(lengths)) == 1
            assert max(lengths) <= 2
