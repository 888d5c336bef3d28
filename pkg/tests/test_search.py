import math
import os

import numpy as np
import pytest
from pydantic import ValidationError

from symmetria.errors import BadParam
from symmetria.geometry import regular_polygon
from symmetria.options import AnnealConfig, MeasureOptions
from symmetria.search import SearchResult, anneal, anneal_seeds, merge_results, perturb, regular_start

QUICK = MeasureOptions(angle_samples=48, offset_tolerance=1e-7, refine_brackets=1, refine_rounds=20)


@pytest.fixture
def config():
    return AnnealConfig(n_vertices=5, iterations=12, seed=4, measure_opts=QUICK, final_opts=QUICK)


class TestPerturb:
    def test_zero_step_is_identity(self, hexagon, rng):
        assert perturb(hexagon, 0.0, rng) is hexagon

    def test_keeps_vertex_count(self, rng):
        P = regular_polygon(7)
        for _ in range(20):
            P = perturb(P, 0.05, rng)
            assert len(P) == 7

    def test_reproducible(self, hexagon):
        a = perturb(hexagon, 0.1, np.random.default_rng(9))
        b = perturb(hexagon, 0.1, np.random.default_rng(9))
        assert a == b


class TestAnneal:
    def test_trace_is_monotone(self, config):
        res = anneal(config)
        values = [v for _, v in res.trace]
        assert res.trace[0][0] == 0
        assert res.trace[-1][0] == config.iterations
        assert all(b <= a for a, b in zip(values, values[1:]))
        assert len(res.best_polygon) == 5
        assert res.seed == 4

    def test_reproducible(self, config):
        assert anneal(config).best_value == anneal(config).best_value

    def test_start_polygon_must_match(self, config, hexagon):
        with pytest.raises(BadParam):
            anneal(config, start=hexagon)

    def test_explicit_start(self, config):
        res = anneal(config.model_copy(update={'iterations': 0}), start=regular_start(5))
        assert res.best_value == pytest.approx(1.0, abs=1e-4)
        assert res.accepted == 0

    def test_report(self, config):
        res = anneal(config)
        data = res.to_dict()
        assert set(data) == {'best_polygon', 'best_value', 'trace', 'accepted', 'config'}
        assert len(data['best_polygon']['vertices']) == 5
        assert data['config']['seed'] == 4
        assert list(res.trace_frame().columns) == ['iteration', 'best_value']


class TestSeeds:
    def test_results_in_seed_order(self, config):
        results = anneal_seeds(config.model_copy(update={'iterations': 4}), [3, 1, 2])
        assert [r.seed for r in results] == [3, 1, 2]

    def test_merge_prefers_value_then_seed(self, config, hexagon):
        def result(value, seed):
            return SearchResult(hexagon, value, ((0, value),), config.model_copy(update={'seed': seed}))

        assert merge_results([result(0.9, 1), result(0.85, 7), result(0.85, 2)]).seed == 2

    def test_merge_needs_results(self):
        with pytest.raises(BadParam):
            merge_results([])


@pytest.mark.parametrize('field, value', [('cooling_rate', 1.0), ('n_vertices', 2), ('seed', -1),
                                          ('initial_temperature', 0.0)])
def test_config_validation(field, value):
    with pytest.raises(ValidationError):
        AnnealConfig(**{field: value})



@pytest.mark.slow
def test_quadrilateral_sweep_finds_low_axiality():
    floor = 2.0 / 41.0 * (10.0 + 3.0 * math.sqrt(2.0))
    results = anneal_seeds(AnnealConfig(n_vertices=4, iterations=20000), range(8), workers=os.cpu_count() or 1)
    values = [r.best_value for r in results]
    assert min(values) <= 0.82
    assert all(v >= floor - 1e-6 for v in values)
