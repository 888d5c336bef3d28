"""
Simulated-annealing search for convex polygons of low axiality.

Each chain perturbs one vertex at a time, accepts by the Metropolis rule on
the axiality value (minimizing) under a geometric cooling schedule, and
tracks the best polygon seen. Chains are independent; several seeds merge by
smallest value with the seed breaking ties.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
import pandas as pd

from symmetria.errors import BadParam, DegenerateInput, PerturbFailed
from symmetria.geometry import aspect_ratio, diameter, normalize_polygon, regular_polygon
from symmetria.measures import axiality
from symmetria.options import AnnealConfig

logger = logging.getLogger(__name__)

_MAX_TRIES = 32
_MAX_ASPECT = 1e6
_TRACE_POINTS = 100


@dataclass(frozen=True)
class SearchResult:
    best_polygon: object
    best_value: float
    trace: tuple
    config_echo: AnnealConfig
    accepted: int = 0

    @property
    def seed(self):
        return self.config_echo.seed

    def trace_frame(self):
        return pd.DataFrame(list(self.trace), columns=['iteration', 'best_value'])

    def to_dict(self):
        return {
            'best_polygon': {'vertices': self.best_polygon.to_list()},
            'best_value': self.best_value,
            'trace': [[i, v] for i, v in self.trace],
            'accepted': self.accepted,
            'config': self.config_echo.model_dump(),
        }


def regular_start(n):
    return regular_polygon(n)


def perturb(P, step, rng):
    """Move one random vertex by a Gaussian of scale step·diameter, keeping the vertex count."""
    if step == 0:
        return P
    n = len(P)
    sigma = step * diameter(P)
    verts = [(v.x, v.y) for v in P.vertices]
    for _ in range(_MAX_TRIES):
        i = int(rng.integers(n))
        dx, dy = rng.normal(0.0, sigma, 2)
        moved = list(verts)
        moved[i] = (verts[i][0] + dx, verts[i][1] + dy)
        try:
            Q = normalize_polygon(moved)
        except DegenerateInput:
            continue
        if len(Q) == n and aspect_ratio(Q) <= _MAX_ASPECT:
            return Q
    raise PerturbFailed(f'no convex {n}-gon after {_MAX_TRIES} perturbations')


def anneal(cfg, start=None):
    if start is None:
        start = regular_start(cfg.n_vertices)
    elif len(start) != cfg.n_vertices:
        raise BadParam(f'start polygon has {len(start)} vertices, config asks for {cfg.n_vertices}')

    rng = np.random.default_rng(cfg.seed)
    current, current_value = start, axiality(start, cfg.measure_opts).value
    best, best_value = current, current_value
    trace = [(0, best_value)]
    every = max(1, cfg.iterations // _TRACE_POINTS)
    temperature = cfg.initial_temperature
    accepted = 0

    for k in range(1, cfg.iterations + 1):
        candidate = perturb(current, cfg.step_scale, rng)
        value = axiality(candidate, cfg.measure_opts).value
        delta = value - current_value
        if delta <= 0.0 or rng.random() < math.exp(-delta / temperature):
            current, current_value = candidate, value
            accepted += 1
            if value < best_value:
                best, best_value = candidate, value
        temperature *= cfg.cooling_rate
        if k % every == 0 or k == cfg.iterations:
            trace.append((k, best_value))
            logger.debug('seed %d iteration %d: best %.9f, T = %.3g', cfg.seed, k, best_value, temperature)

    final = axiality(best, cfg.final_opts)
    logger.info('seed %d: best axiality %.12g after %d iterations (%d accepted)',
                cfg.seed, final.value, cfg.iterations, accepted)
    return SearchResult(best, final.value, tuple(trace), cfg, accepted)


def _anneal_job(args):
    cfg, start = args
    return anneal(cfg, start)


def anneal_seeds(cfg, seeds, start=None, workers=1):
    """One chain per seed, results in seed order."""
    configs = [cfg.model_copy(update={'seed': s}) for s in seeds]
    if workers <= 1 or len(configs) < 2:
        return [anneal(c, start) for c in configs]
    with ProcessPoolExecutor(max_workers=min(workers, len(configs))) as pool:
        return list(pool.map(_anneal_job, [(c, start) for c in configs]))


def merge_results(results):
    if not results:
        raise BadParam('no search results to merge')
    return min(results, key=lambda r: (r.best_value, r.seed))
