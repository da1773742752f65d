import numpy as np
import pytest

from dendrifield.analysis import BenchReport, BenchRow, bench_ladder, bench_rung, working_set_values
from dendrifield.config import parse_config
from dendrifield.errors import ValidationError


@pytest.fixture
def bench_setup():
    return parse_config('bench_ladder').to_setup()


def make_row(algorithm, n_x, n_xi, flops):
    return BenchRow(algorithm=algorithm, n_x=n_x, n_xi=n_xi, flops_init=0, flops_per_step=flops,
                    linear_solves=0, ffts=0, wall_time_per_step=0.0,
                    working_set=working_set_values(algorithm, n_x, n_xi))


class TestWorkingSet:

    def test_values(self):
        assert working_set_values('fft', 32, 32) == 4 * 1024 + 7 * 32 + 3 * 32
        assert working_set_values('vector', 32, 32) == 7 * 1024 + 2 * 32 + 2 * 32
        assert working_set_values('direct', 8, 8) == working_set_values('vector', 8, 8)

    def test_memory_ratio(self):
        ratio = working_set_values('vector', 32, 32) / working_set_values('fft', 32, 32)
        assert 1.6 <= ratio <= 1.8

    def test_unknown_algorithm(self):
        with pytest.raises(ValidationError, match="Unknown algorithm"):
            working_set_values('cuda', 8, 8)


class TestBenchReport:

    def test_exponent_and_ratios(self):
        report = BenchReport([make_row('vector', n, n, 2 * n ** 4) for n in (8, 16, 32)])
        np.testing.assert_allclose(report.doubling_ratios('vector'), [16.0, 16.0])
        assert report.scaling_exponent('vector') == pytest.approx(4.0)
        assert report.scaling_exponent('vector', axis='n') == pytest.approx(2.0)
        assert np.isnan(report.scaling_exponent('fft'))

    def test_memory_ratio_uses_largest_vector_rung(self):
        report = BenchReport([make_row('fft', 512, 33, 1), make_row('vector', 32, 32, 1)])
        assert report.memory_ratio() == pytest.approx(7296 / 4416)


class TestBenchLadder:

    def test_matrix_form_doubling(self, bench_setup):
        report = bench_ladder(bench_setup, [(64, 33), (128, 33), (256, 33), (512, 33)],
                              algorithms=('fft', 'compact'), steps=2)
        for algorithm in ('fft', 'compact'):
            ratios = report.doubling_ratios(algorithm)
            assert len(ratios) == 3
            assert np.all((ratios >= 1.9) & (ratios <= 2.3))

    def test_vector_form_doubling(self, bench_setup):
        report = bench_ladder(bench_setup, [(8, 8), (16, 16), (32, 32)], algorithms=('vector',),
                              steps=2)
        ratios = report.doubling_ratios('vector')
        assert np.all((ratios >= 14.0) & (ratios <= 18.0))
        assert 1.6 <= report.memory_ratio() <= 1.8

    def test_vector_cap_skips_large_rungs(self, bench_setup):
        report = bench_ladder(bench_setup, [(8, 8), (128, 33)], algorithms=('fft', 'vector'),
                              steps=1, vector_cap=100)
        assert [(row.algorithm, row.n_x) for row in report.rows] == [
            ('fft', 8), ('vector', 8), ('fft', 128)
        ]

    def test_counters_recorded(self, bench_setup):
        row = bench_rung(bench_setup.replace(n_t=3), 'fft')
        assert row.ffts == 6
        assert row.linear_solves == 3 * bench_setup.grid.n_x
        assert row.flops_init > 0
        assert row.wall_time_per_step >= 0.0

    def test_unknown_algorithm(self, bench_setup):
        with pytest.raises(ValidationError, match="Unknown algorithm"):
            bench_rung(bench_setup, 'gpu')
