"""
Evaluator and sampling search for the folding-symmetry program.

The program bounds half the folding symmetry λ of a body around an inscribed
axially regular hexagon of unit area. It is bilinear, so it is evaluated in
floating point. The search maps points of a unit cube onto points that meet
every constraint by construction and minimizes the implied λ; the result is
an upper bound on the program's optimum, never a proof of its value.
"""
import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from symmetria.errors import BadParam

logger = logging.getLogger(__name__)

Variant = Literal['standard', 'obtuse']
VARIANTS = ('standard', 'obtuse')
T_CAP = (6.0 - 3.0 * math.sqrt(2.0)) / 4.0
CERTIFIED_FLOOR = 0.18803
RESIDUAL_TOLERANCE = 1e-9

_CUBE_DIM = 15
_DESCENT_SIGMA = (0.1, 0.03, 0.01, 0.003)


class FoldingProgramPoint(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(alias='lambda')
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    t: float
    u: float
    m1: float
    m2: float
    v1: float
    v2: float
    alpha: float
    beta: float
    phiB: float
    phiE: float
    k1: float
    k2: float
    y1: float
    y2: float


def _above(value, floor):
    return max(0.0, floor - value)


def _within(value, lo, hi):
    return max(0.0, lo - value, value - hi)


def folding_program_residuals(x, variant='standard'):
    """[(constraint name, amount of violation)] for every constraint, 0 when satisfied."""
    if variant not in VARIANTS:
        raise BadParam(f'unknown program variant {variant!r}')
    u = x.u
    scaled = (1.0 + x.t) * x.lam
    out = [(f'{name}_range', _within(getattr(x, name), 0.0, 0.5)) for name in ('a', 'b', 'c', 'd', 'e', 'f', 'u')]
    out += [
        ('alpha_range', _within(x.alpha, u + 1.0, 2.0 * u + 1.5)),
        ('beta_range', _within(x.beta, 2.0 * u - 1.5, u - 1.0)),
    ]
    out += [(f'{name}_range', _within(getattr(x, name), -0.5, 0.5)) for name in ('v1', 'v2', 'm1', 'm2')]
    out += [(f'{name}_range', _within(getattr(x, name), 0.0, 1.0)) for name in ('phiB', 'phiE', 'k1', 'k2')]
    out += [(f'{name}_range', _within(getattr(x, name), 0.5, 1.0)) for name in ('y1', 'y2')]
    out += [
        ('total_outside_area', abs(x.t - (x.a + x.b + x.c + x.d + x.e + x.f))),
        ('total_outside_cap', _above(T_CAP, x.t)),
        ('right_side_area', _above(x.a + x.f, (x.alpha - u - 1.0) / 3.0)),
        ('left_side_area', _above(x.c + x.d, (-x.beta + u - 1.0) / 3.0)),
        ('top_cap_upper', _above((1.0 - (1.0 - x.phiB) ** 2) / 6.0, x.b)),
        ('bottom_cap_upper', _above((1.0 - (1.0 - x.phiE) ** 2) / 6.0, x.e)),
        ('top_cap_lower', _above(x.b, x.phiB / 6.0)),
        ('bottom_cap_lower', _above(x.e, x.phiE / 6.0)),
        ('right_corner_area', _above(x.a, x.k1 * (2.0 * u + 1.0) / 12.0)),
    ]
    if variant == 'standard':
        out.append(('left_corner_area', _above(x.d, x.k2 * (1.0 - 2.0 * u) / 12.0)))
    else:
        out.append(('left_corner_area', _above(x.c, x.k2 * (1.0 - 2.0 * u) / 12.0)))
    out += [
        ('top_peak_right', _above(1.0 - 2.0 * x.m1, x.phiB * (1.0 + 2.0 * u))),
        ('top_peak_left', _above(2.0 * x.m1 + 1.0, x.phiB * (1.0 - 2.0 * u))),
        ('bottom_peak_right', _above(1.0 - 2.0 * x.m2, x.phiE * (1.0 + 2.0 * u))),
        ('bottom_peak_left', _above(2.0 * x.m2 + 1.0, x.phiE * (1.0 - 2.0 * u))),
        ('top_slope', _above((1.0 - 2.0 * x.m1) * (1.0 - x.k1), x.phiB * (2.0 * u + 1.0))),
    ]
    if variant == 'standard':
        out.append(('bottom_slope', _above((1.0 + 2.0 * x.m2) * (1.0 - x.k2), x.phiE * (1.0 - 2.0 * u))))
    else:
        out.append(('bottom_slope', _above((1.0 + 2.0 * x.m1) * (1.0 - x.k2), x.phiB * (1.0 - 2.0 * u))))
    v1 = max((2.0 * x.m1 + 1.0) / 4.0, (2.0 * x.m2 + 1.0) / 4.0, (2.0 * x.alpha - 1.0) / 4.0)
    v2 = min((2.0 * x.m1 - 1.0) / 4.0, (2.0 * x.m2 - 1.0) / 4.0, (2.0 * x.beta + 1.0) / 4.0)
    if variant == 'standard':
        y1, y2 = max(x.k1, 0.5), max(x.k2, 0.5)
    else:
        y1, y2 = max(x.k1, x.k2, 0.5), 0.5
    out += [
        ('right_fold_line', abs(x.v1 - v1)),
        ('left_fold_line', abs(x.v2 - v2)),
        ('top_fold_line', abs(x.y1 - y1)),
        ('bottom_fold_line', abs(x.y2 - y2)),
        ('right_fold', _above(scaled, 0.5 - 2.0 / 3.0 * x.v1 + u / 3.0 + x.a + x.f)),
        ('left_fold', _above(scaled, 0.5 + 2.0 / 3.0 * x.v2 - u / 3.0 + x.c + x.d)),
        ('top_fold', _above(scaled, x.b + (1.0 - x.y1) * (3.0 - x.y1) / 6.0)),
        ('bottom_fold', _above(scaled, x.e + (1.0 - x.y2) * (3.0 - x.y2) / 6.0)),
    ]
    return out


def max_residual(x, variant='standard'):
    return max(r for _, r in folding_program_residuals(x, variant))


# ── sampling ──

def _ratio(num, den):
    return np.divide(num, den, out=np.zeros_like(num), where=den > 0.0)


def _map_cube(z, variant):
    """
    Map rows of the unit cube onto program points meeting every constraint.

    Returns (columns dict, feasible mask). Rows whose area lower bounds already
    exceed the total-area cap are infeasible and masked out.
    """
    z = np.clip(z, 0.0, 1.0)
    u = 0.5 * z[:, 0]
    phiB, phiE = z[:, 1], z[:, 2]

    lo = 0.5 * (phiB * (1.0 - 2.0 * u) - 1.0)
    m1 = lo + z[:, 3] * (0.5 * (1.0 - phiB * (1.0 + 2.0 * u)) - lo)
    lo = 0.5 * (phiE * (1.0 - 2.0 * u) - 1.0)
    m2 = lo + z[:, 4] * (0.5 * (1.0 - phiE * (1.0 + 2.0 * u)) - lo)

    k1 = z[:, 5] * np.clip(1.0 - _ratio(phiB * (2.0 * u + 1.0), 1.0 - 2.0 * m1), 0.0, 1.0)
    if variant == 'standard':
        k2_max = 1.0 - _ratio(phiE * (1.0 - 2.0 * u), 1.0 + 2.0 * m2)
    else:
        k2_max = 1.0 - _ratio(phiB * (1.0 - 2.0 * u), 1.0 + 2.0 * m1)
    k2 = z[:, 6] * np.clip(k2_max, 0.0, 1.0)

    # v1 ≤ 1/2 caps alpha at 3/2
    alpha = (u + 1.0) + z[:, 7] * (1.5 - (u + 1.0))
    beta = (2.0 * u - 1.5) + z[:, 8] * ((u - 1.0) - (2.0 * u - 1.5))

    b = phiB / 6.0
    e = phiE / 6.0
    a = k1 * (2.0 * u + 1.0) / 12.0
    corner = k2 * (1.0 - 2.0 * u) / 12.0
    c = corner if variant == 'obtuse' else np.zeros_like(u)
    d = np.zeros_like(u) if variant == 'obtuse' else corner
    f = np.maximum(0.0, (alpha - u - 1.0) / 3.0 - a)
    d = d + np.maximum(0.0, (u - 1.0 - beta) / 3.0 - c - d)

    slack = T_CAP - (a + b + c + d + e + f)
    feasible = slack >= 0.0
    rem = np.maximum(slack, 0.0)
    caps = {
        'a': 0.5 - a, 'b': (1.0 - (1.0 - phiB) ** 2) / 6.0 - b, 'c': 0.5 - c,
        'd': 0.5 - d, 'e': (1.0 - (1.0 - phiE) ** 2) / 6.0 - e, 'f': 0.5 - f,
    }
    areas = {'a': a, 'b': b, 'c': c, 'd': d, 'e': e, 'f': f}
    for col, name in enumerate(('a', 'b', 'c', 'd', 'e', 'f'), start=9):
        extra = np.minimum(z[:, col] * rem, np.maximum(caps[name], 0.0))
        areas[name] = areas[name] + extra
        rem = rem - extra

    t = sum(areas.values())
    v1 = np.maximum.reduce([(2.0 * m1 + 1.0) / 4.0, (2.0 * m2 + 1.0) / 4.0, (2.0 * alpha - 1.0) / 4.0])
    v2 = np.minimum.reduce([(2.0 * m1 - 1.0) / 4.0, (2.0 * m2 - 1.0) / 4.0, (2.0 * beta + 1.0) / 4.0])
    if variant == 'standard':
        y1, y2 = np.maximum(k1, 0.5), np.maximum(k2, 0.5)
    else:
        y1, y2 = np.maximum.reduce([k1, k2, np.full_like(k1, 0.5)]), np.full_like(k1, 0.5)

    fold = np.maximum.reduce([
        0.5 - 2.0 / 3.0 * v1 + u / 3.0 + areas['a'] + areas['f'],
        0.5 + 2.0 / 3.0 * v2 - u / 3.0 + areas['c'] + areas['d'],
        areas['b'] + (1.0 - y1) * (3.0 - y1) / 6.0,
        areas['e'] + (1.0 - y2) * (3.0 - y2) / 6.0,
    ])
    cols = dict(areas, lam=fold / (1.0 + t), t=t, u=u, m1=m1, m2=m2, v1=v1, v2=v2, alpha=alpha,
                beta=beta, phiB=phiB, phiE=phiE, k1=k1, k2=k2, y1=y1, y2=y2)
    return cols, feasible


def _point(cols, i):
    return FoldingProgramPoint(**{k: float(v[i]) for k, v in cols.items()})


@dataclass(frozen=True)
class FoldingSearchResult:
    lam: float
    point: FoldingProgramPoint
    variant: str
    evaluations: int
    shard: int

    def to_dict(self):
        return {
            'lambda': self.lam,
            'variant': self.variant,
            'evaluations': self.evaluations,
            'shard': self.shard,
            'point': self.point.model_dump(by_alias=True),
            'max_residual': max_residual(self.point, self.variant),
        }


def _objective(z, variant):
    cols, feasible = _map_cube(z, variant)
    return np.where(feasible, cols['lam'], np.inf)


def _search_shard(budget, rng, variant):
    """Random sampling for half the budget, Gaussian descent in cube coordinates for the rest."""
    n_random = max(1, budget // 2)
    z = rng.random((n_random, _CUBE_DIM))
    lam = _objective(z, variant)
    i = int(np.argmin(lam))
    best_z, best_lam = z[i], float(lam[i])
    used = n_random

    remaining = budget - n_random
    batch = 64
    rounds = remaining // batch
    for r in range(rounds):
        sigma = _DESCENT_SIGMA[min(len(_DESCENT_SIGMA) - 1, 4 * r // max(rounds, 1))]
        trial = np.clip(best_z + sigma * rng.standard_normal((batch, _CUBE_DIM)), 0.0, 1.0)
        lam = _objective(trial, variant)
        j = int(np.argmin(lam))
        if lam[j] < best_lam:
            best_z, best_lam = trial[j], float(lam[j])
        used += batch
    return best_z, best_lam, used


def folding_program_search(budget, seed, variants=VARIANTS, shards=1):
    """
    Smallest λ found over points that satisfy both the fold constraints and
    the box constraints of the program, with its witness point.

    The budget is split over shards and variants; each shard draws from its
    own child of the seed sequence, and ties merge on (λ, shard index).
    """
    if budget < 1:
        raise BadParam(f'budget must be at least 1, got {budget}')
    if shards < 1:
        raise BadParam(f'shards must be at least 1, got {shards}')
    for v in variants:
        if v not in VARIANTS:
            raise BadParam(f'unknown program variant {v!r}')

    jobs = [(s, v) for s in range(shards) for v in variants]
    children = np.random.SeedSequence(seed).spawn(len(jobs))
    share, extra = divmod(budget, len(jobs))
    best = None
    evaluations = 0
    for n, (shard, variant) in enumerate(jobs):
        rng = np.random.default_rng(children[n])
        z, lam, used = _search_shard(max(1, share + (1 if n < extra else 0)), rng, variant)
        evaluations += used
        logger.debug('shard %d %s: λ = %.9f after %d samples', shard, variant, lam, used)
        if math.isfinite(lam) and (best is None or (lam, shard) < (best[0], best[1])):
            cols, _ = _map_cube(z[None, :], variant)
            best = (lam, shard, variant, _point(cols, 0))

    if best is None:
        raise BadParam('no feasible sample; increase the budget')
    lam, shard, variant, point = best
    logger.info('folding program search: λ = %.9f (%s, shard %d, %d samples)', lam, variant, shard, evaluations)
    return FoldingSearchResult(lam, point, variant, evaluations, shard)
