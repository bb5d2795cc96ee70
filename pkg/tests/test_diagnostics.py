"""
Тесты проверок неравенств на трассах и чтения CSV трасс
"""

import math

import numpy as np
import pandas as pd
import pytest

from poem_zo.bench.io import write_csv
from poem_zo.config.constants import TRACE_COLUMNS
from poem_zo.diagnostics import (
    BoundReport,
    DiagnosticsError,
    TraceSchemaError,
    binomial_upper,
    check_dog_tau,
    check_estimate_norm,
    check_gprime_dominates,
    check_mu_noise_bound,
    check_noise_event,
    check_regret_bound,
    proposition1_bound,
    proposition3_bound,
    radius_exceedance_rate,
    read_schema_version,
    read_trace_csv,
    violation_rate,
)
from poem_zo.optimizers import poem_run, poem_unbounded_run, projected_sgd_fixed, tpbco_schedule
from poem_zo.problems import LinearProblem
from poem_zo.sampling import RngStream


class TestDogTau:
    """Тесты нижней оценки для τ"""

    def test_constant_sequence(self):
        report = check_dog_tau([1.0, 1.0, 1.0, 1.0])
        assert report.lhs[0] == 3.0
        assert report.rhs[0] == pytest.approx(2.0 / math.e)
        assert report.rhs[0] == pytest.approx(0.7358, abs=1e-4)
        assert report.relation == "ge"
        assert not report.violated

    def test_geometric_sequence(self):
        """[1, 2, 4, 8]: max(1/2, 3/4, 7/8) = 0.875, правая часть отрицательна"""
        report = check_dog_tau([1.0, 2.0, 4.0, 8.0])
        assert report.lhs[0] == pytest.approx(0.875)
        assert report.rhs[0] < 0
        assert not report.violated

    def test_random_monotone_sequences(self):
        """10³ случайных неубывающих последовательностей без нарушений"""
        rng = RngStream(100)
        for _ in range(1000):
            length = int(rng.integers(50)) + 2
            increments = rng.random(length) * (rng.random(length) < 0.3) * 10.0 ** rng.integers(4)
            sequence = 1e-3 + np.cumsum(increments)
            assert not check_dog_tau(sequence).violated

    @pytest.mark.parametrize("sequence", [[1.0], [1.0, 0.5], [0.0, 1.0]])
    def test_invalid(self, sequence):
        with pytest.raises(DiagnosticsError):
            check_dog_tau(sequence)


class TestPathwiseChecks:
    """Тесты детерминированных проверок на трассах"""

    def test_mu_noise_first_ratio(self, synthetic_problem):
        """При t = 1 отношение левой и правой частей равно 1/2"""
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 20, RngStream(1)).trace
        report = check_mu_noise_bound(trace, synthetic_problem.lipschitz_bound, 10)
        assert report.ratios[0] == pytest.approx(0.5, rel=1e-12)
        assert not report.violated

    def test_mu_noise_accepts_frame(self, synthetic_problem):
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 20, RngStream(1)).trace
        report = check_mu_noise_bound(trace.to_frame(), synthetic_problem.lipschitz_bound, 10)
        assert len(report.t) == 20

    def test_mu_noise_rejects_other_schedules(self, synthetic_problem):
        schedule = tpbco_schedule(2.0, 1.1, 20, 10)
        trace = projected_sgd_fixed(synthetic_problem, np.zeros(10), schedule, 20, RngStream(2), algorithm="tpbco").trace
        with pytest.raises(DiagnosticsError):
            check_mu_noise_bound(trace, 1.1, 10)
        with pytest.raises(DiagnosticsError):
            check_mu_noise_bound(trace.to_frame(), 1.1, 10)

    def test_thinned_trace_rejected(self, synthetic_problem):
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 20, RngStream(3), stride=5).trace
        with pytest.raises(DiagnosticsError):
            check_mu_noise_bound(trace, 1.1, 10)

    def test_regret_needs_history(self, synthetic_problem):
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 20, RngStream(4)).trace
        with pytest.raises(DiagnosticsError):
            check_regret_bound(trace, synthetic_problem.minimizer)

    def test_regret_bound_holds(self, synthetic_problem):
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 300, RngStream(5), record_history=True).trace
        report = check_regret_bound(trace, synthetic_problem.minimizer)
        assert len(report.t) == 300
        assert not report.violated, report.summary_line()

    def test_regret_bad_gradient_history(self, synthetic_problem):
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 10, RngStream(6), record_history=True).trace
        with pytest.raises(DiagnosticsError):
            check_regret_bound(trace, synthetic_problem.minimizer, g_history=np.zeros((5, 10)))

    def test_estimate_norm(self):
        report = check_estimate_norm([0.5, 1.0, 2.5], 1.0, 2)
        assert list(report.violations) == [False, False, True]

    def test_gprime_requires_column(self, synthetic_problem):
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 10, RngStream(7)).trace
        with pytest.raises(DiagnosticsError):
            check_gprime_dominates(trace)

    def test_gprime_dominates(self, unbounded_synthetic):
        trace = poem_unbounded_run(unbounded_synthetic, np.zeros(5), 0.5, 100, 0.1, 1.1, RngStream(8)).trace
        assert not check_gprime_dominates(trace).violated


class TestProbabilisticBounds:
    """Тесты вероятностных оценок как частоты нарушений по сидам"""

    def test_noise_event_linear(self):
        problem = LinearProblem([0.6, -0.8, 0.0, 0.0], noise_level=0.1)
        delta = 0.2
        reports = []
        for seed in range(20):
            trace = poem_run(problem, np.zeros(4), 0.01, 200, RngStream(seed), record_history=True).trace
            report = check_noise_event(
                trace, problem.minimizer, problem.smoothed_gradient, problem.lipschitz_bound, 4, delta
            )
            assert report.skipped == []
            reports.append(report)
        assert violation_rate(reports) <= binomial_upper(delta, len(reports))

    def test_proposition1_rate(self, synthetic_problem):
        delta = 0.2
        reports = [
            proposition1_bound(
                poem_run(synthetic_problem, np.zeros(10), 0.01, 300, RngStream(seed)).trace,
                synthetic_problem.minimizer,
                delta,
                synthetic_problem.lipschitz_bound,
                10,
                synthetic_problem.optimum_value,
            )
            for seed in range(30)
        ]
        assert violation_rate(reports) <= binomial_upper(delta, len(reports))

    def test_proposition3_rate(self, unbounded_synthetic):
        delta = 0.2
        reports = [
            proposition3_bound(
                poem_unbounded_run(unbounded_synthetic, np.zeros(5), 0.5, 200, delta, 1.1, RngStream(seed)).trace,
                unbounded_synthetic.minimizer,
                delta,
                unbounded_synthetic.lipschitz_bound,
                5,
                unbounded_synthetic.optimum_value,
            )
            for seed in range(30)
        ]
        assert violation_rate(reports) <= binomial_upper(delta, len(reports))

    def test_proposition3_requires_gprime(self, synthetic_problem):
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 20, RngStream(1)).trace
        with pytest.raises(DiagnosticsError):
            proposition3_bound(trace, synthetic_problem.minimizer, 0.1, 1.1, 10, 0.0)

    def test_proposition1_requires_optimum(self, synthetic_problem):
        trace = poem_run(synthetic_problem, np.zeros(10), 0.01, 20, RngStream(1)).trace
        with pytest.raises(DiagnosticsError):
            proposition1_bound(trace, synthetic_problem.minimizer, 0.1, 1.1, 10, None)


class TestReports:
    """Тесты BoundReport и частотных помощников"""

    def test_relations(self):
        le = BoundReport("le", [1, 2], [1.0, 3.0], [2.0, 2.0])
        ge = BoundReport("ge", [1, 2], [1.0, 3.0], [2.0, 2.0], relation="ge")
        assert list(le.violations) == [False, True]
        assert list(ge.violations) == [True, False]
        assert le.worst_ratio == pytest.approx(1.5)
        assert ge.worst_ratio == pytest.approx(2.0)

    def test_slack(self):
        report = BoundReport("eq", [1], [1.0 + 1e-12], [1.0])
        assert not report.violated

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            BoundReport("bad", [1, 2], [1.0], [1.0, 2.0])

    def test_to_csv(self, tmp_path):
        report = BoundReport("regret", [1, 2], [0.5, 0.75], [1.0, 1.0], skipped=[3])
        path = report.to_csv(tmp_path / "report.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "t,lhs,rhs,ratio,violated"
        assert len(lines) == 4
        assert lines[-1].startswith("# regret: rows=2 worst_ratio=0.75")
        assert lines[-1].endswith("violated=false skipped=1")

    def test_helpers(self):
        assert binomial_upper(0.1, 100) == pytest.approx(0.19)
        assert radius_exceedance_rate([1.0, 2.0, 4.0, 3.5], 1.0) == 0.5
        with pytest.raises(ValueError):
            violation_rate([])
        with pytest.raises(ValueError):
            binomial_upper(0.1, 0)


class TestTraceSchema:
    """Тесты чтения CSV трасс"""

    def test_roundtrip_header(self, synthetic_problem, tmp_path):
        frame = poem_run(synthetic_problem, np.zeros(10), 0.01, 10, RngStream(1)).trace.to_frame()
        path = write_csv(frame, tmp_path / "trace.csv")
        assert read_schema_version(path) == 1
        loaded = read_trace_csv(path)
        assert list(loaded.columns) == list(frame.columns)
        for column in ("eta", "mu", "rbar", "G", "r", "f_xbar", "f_xt"):
            np.testing.assert_array_equal(loaded[column].to_numpy(), frame[column].to_numpy())

    def test_roundtrip_bit_exact(self, tmp_path):
        """%.17g и чтение без потерь: значения совпадают побитно"""
        values = RngStream(5).random(500) * 10.0 ** RngStream(6).integers(12, size=500).astype(float) / 1e6
        frame = pd.DataFrame({name: values for name in TRACE_COLUMNS})
        path = write_csv(frame, tmp_path / "trace.csv")
        loaded = read_trace_csv(path)
        assert np.array_equal(loaded["eta"].to_numpy(), values)
        assert np.array_equal(loaded["G"].to_numpy(), values)

    def test_wrong_version(self, tmp_path):
        path = tmp_path / "trace.csv"
        path.write_text("# poem_zo-trace v2\nt,szo_calls\n0,2\n", encoding="utf-8")
        with pytest.raises(TraceSchemaError):
            read_trace_csv(path)

    def test_missing_header(self, tmp_path):
        path = tmp_path / "trace.csv"
        path.write_text("t,szo_calls\n0,2\n", encoding="utf-8")
        with pytest.raises(TraceSchemaError):
            read_trace_csv(path)

    def test_missing_columns(self, tmp_path):
        path = tmp_path / "trace.csv"
        path.write_text("# poem_zo-trace v1\nt,szo_calls\n0,2\n", encoding="utf-8")
        with pytest.raises(TraceSchemaError):
            read_trace_csv(path)
