"""
Polygon files: {"vertices": [[x, y], ...]}.
Reading normalizes the vertex list and logs every change it made.
"""
import json
import logging
from pathlib import Path
from typing import List, Tuple

from pydantic import BaseModel

from symmetria.geometry import normalize_polygon

logger = logging.getLogger(__name__)


class PolygonFile(BaseModel):
    vertices: List[Tuple[float, float]]


def _is_rotation(seq, cycle):
    if len(seq) != len(cycle):
        return False
    doubled = cycle + cycle
    return any(doubled[i:i + len(seq)] == seq for i in range(len(cycle)))


def polygon_from_points(points, source='input'):
    points = [tuple(p) for p in points]
    P = normalize_polygon(points)
    kept = [(v.x, v.y) for v in P.vertices]
    dropped = [p for p in points if p not in kept]
    if dropped:
        logger.warning('%s: dropped %d duplicate, collinear or interior point(s): %s', source, len(dropped), dropped)
    survivors = [p for p in points if p in kept]
    unique = list(dict.fromkeys(survivors))
    if not _is_rotation(unique, kept):
        logger.warning('%s: vertices reordered counterclockwise', source)
    return P


def read_polygon(path):
    path = Path(path)
    data = PolygonFile.model_validate_json(path.read_text())
    return polygon_from_points(data.vertices, source=path.name)


def polygon_document(P):
    return {'vertices': P.to_list()}


def write_polygon(P, path):
    Path(path).write_text(json.dumps(polygon_document(P), indent=2) + '\n')
    logger.info('wrote %d-gon to %s', len(P), path)
