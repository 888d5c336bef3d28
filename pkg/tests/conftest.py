import json

import numpy as np
import pytest
from hypothesis import strategies as st

from symmetria.errors import DegenerateInput
from symmetria.geometry import normalize_polygon, regular_polygon
from symmetria.options import MeasureOptions


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run acceptance-scale sweeps')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def square():
    return normalize_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def triangle():
    return normalize_polygon([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def hexagon():
    return regular_polygon(6)


@pytest.fixture
def fast_opts():
    return MeasureOptions(angle_samples=180, offset_tolerance=1e-9, refine_brackets=3, refine_rounds=40)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def polygon_file(tmp_path):
    def write(points, name='polygon.json'):
        path = tmp_path / name
        path.write_text(json.dumps({'vertices': [list(p) for p in points]}))
        return path
    return write


def _try_polygon(points):
    try:
        return normalize_polygon(points)
    except DegenerateInput:
        return None


point_clouds = st.lists(
    st.tuples(st.floats(-10, 10, allow_nan=False), st.floats(-10, 10, allow_nan=False)),
    min_size=3, max_size=12,
)

# convex polygons with some room in both directions, so relative tolerances stay meaningful
convex_polygons = point_clouds.map(_try_polygon).filter(
    lambda P: P is not None and P.area > 1e-2 and len(P) >= 3
)
