"""
Golden-section search for the maximum of a unimodal function on an interval.
"""
import math
from typing import NamedTuple

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


class GoldenResult(NamedTuple):
    x: float
    value: float
    evaluations: int
    width: float  # final bracket width


def golden_max(f, a, b, tol=1e-10, max_iter=200):
    """
    Maximize f on [a, b] assuming a single local maximum (plateaus allowed).

    Stops when the bracket is narrower than tol or after max_iter shrinks.
    Returns the best sampled point, which is never worse than any point
    the search evaluated.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return GoldenResult(x, f(x), 1, h)

    steps = min(max_iter, int(math.ceil(math.log(tol / h) / math.log(INV_PHI))))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    evaluations = 2
    best_x, best_y = (c, yc) if yc >= yd else (d, yd)

    for _ in range(max(steps - 1, 0)):
        h *= INV_PHI
        if yc > yd:
            b, d, yd = d, c, yc
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
            trial, value = c, yc
        else:
            a, c, yc = c, d, yd
            d = a + INV_PHI * h
            yd = f(d)
            trial, value = d, yd
        evaluations += 1
        if value > best_y:
            best_x, best_y = trial, value

    return GoldenResult(best_x, best_y, evaluations, b - a)
