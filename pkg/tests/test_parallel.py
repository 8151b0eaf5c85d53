import numpy as np
import pytest

from sboxeval import (
    fwht_fused,
    fwht_parallel,
    generate_sbox,
    partition_columns,
    spectrum_allocations,
)
from sboxeval.memory import MemoryBudgetError


class TestPartition:
    def test_fifteen_columns_eight_workers(self):
        part = partition_columns(15, 8)
        assert [b - a for a, b in part.ranges] == [2, 2, 2, 2, 2, 2, 2, 1]

    def test_single_worker(self):
        part = partition_columns(7, 1)
        assert part.ranges == ((1, 8),)

    def test_more_workers_than_columns(self):
        part = partition_columns(3, 8)
        assert part.ranges == ((1, 2), (2, 3), (3, 4))
        assert part.worker_count == 8

    @pytest.mark.parametrize("columns", [1, 2, 63, 255, 1023])
    @pytest.mark.parametrize("workers", [1, 3, 7, 16])
    def test_partition_properties(self, columns, workers):
        part = partition_columns(columns, workers)
        ranges = part.ranges
        assert len(ranges) <= workers
        assert ranges[0][0] == 1
        assert ranges[-1][1] == columns + 1
        sizes = [b - a for a, b in ranges]
        assert all(size >= 1 for size in sizes)
        assert max(sizes) - min(sizes) <= 1
        for prev, cur in zip(ranges, ranges[1:]):
            assert cur[0] == prev[1]  # contiguous, disjoint, ordered

    def test_rejects_degenerate_inputs(self):
        with pytest.raises(ValueError):
            partition_columns(0, 4)
        with pytest.raises(ValueError):
            partition_columns(15, 0)


class TestParallelTransform:
    def test_single_worker_equals_fused(self):
        s = generate_sbox(6, 6, seed=9, bijective=True)
        spec_f, cm_f = fwht_fused(s, mode="retain")
        spec_p, cm_p = fwht_parallel(s, workers=1, mode="retain")
        assert np.array_equal(spec_f.rows, spec_p.rows)
        assert np.array_equal(cm_f.values, cm_p.values)

    @pytest.mark.parametrize("workers", [2, 3, 4, 7, 12])
    def test_worker_count_invariance_retain(self, workers):
        s = generate_sbox(8, 8, seed=9)
        ref_spec, ref_cm = fwht_parallel(s, workers=1, mode="retain")
        spec, cm = fwht_parallel(s, workers=workers, mode="retain")
        assert np.array_equal(spec.rows, ref_spec.rows)
        assert np.array_equal(cm.values, ref_cm.values)

    @pytest.mark.parametrize("workers", [1, 2, 5])
    def test_stream_matches_retain(self, workers):
        s = generate_sbox(7, 7, seed=31)
        spec, cm_stream = fwht_parallel(s, workers=workers, mode="stream")
        assert spec is None
        _, cm_retain = fwht_fused(s, mode="retain")
        assert np.array_equal(cm_stream.values, cm_retain.values)

    def test_stream_buffer_accounting(self):
        # each worker owns exactly one column buffer
        s = generate_sbox(10, 10, seed=12)
        spectrum_allocations.reset_peak()
        fwht_parallel(s, workers=4, mode="stream")
        assert spectrum_allocations.peak_bytes <= 4 * (1 << 10) * 4
        assert spectrum_allocations.current_bytes == 0

    def test_default_worker_count_used(self):
        s = generate_sbox(5, 5, seed=2)
        _, cm_default = fwht_parallel(s)  # workers=None -> hardware count
        _, cm_one = fwht_parallel(s, workers=1)
        assert np.array_equal(cm_default.values, cm_one.values)

    def test_rejects_bad_arguments(self):
        s = generate_sbox(4, 4, seed=1)
        with pytest.raises(ValueError):
            fwht_parallel(s, workers=0)
        with pytest.raises(ValueError):
            fwht_parallel(s, mode="drop")

    def test_budget_error_propagates_from_workers(self):
        s = generate_sbox(8, 8, seed=4)
        with pytest.raises(MemoryBudgetError):
            fwht_parallel(s, workers=2, mode="retain", max_bytes=4096)
