"""
SVG 1.1 drawings of a polygon with its optimal mirror line (or center) and
the overlap region.

Element ids: body, mirror-line, overlap. For central symmetry mirror-line is
a small circle at the center.
"""
import logging
import math

logger = logging.getLogger(__name__)

BODY_STROKE = '#1f3b73'
OVERLAP_FILL = '#9ecae1'
OVERLAP_OPACITY = 0.6
MIRROR_STROKE = '#d62728'

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(px).0f" height="%(px).0f" viewBox="%(x0)f %(y0)f %(size)f %(size)f" version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<g transform="scale(1,-1)">
"""

POSTAMBLE = """\
</g></svg>
"""


class SVG:
    """Collects shapes in model coordinates; the y axis points up."""

    def __init__(self):
        self.min_x = self.max_x = self.min_y = self.max_y = None
        self.commands = []

    def require(self, x, y):
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    @property
    def span(self):
        return max(self.max_x - self.min_x, self.max_y - self.min_y) or 1.0

    def polygon(self, ident, points, style):
        for x, y in points:
            self.require(x, y)
        self.commands.append('<polygon id="%s" points="%s" style="%s"/>' % (
            ident, ' '.join('%f,%f' % (x, y) for x, y in points), style))

    def segment(self, ident, a, b, style):
        self.commands.append('<line id="%s" x1="%f" y1="%f" x2="%f" y2="%f" style="%s"/>' % (
            ident, a[0], a[1], b[0], b[1], style))

    def circle(self, ident, center, radius, style):
        self.commands.append('<circle id="%s" cx="%f" cy="%f" r="%f" style="%s"/>' % (
            ident, center[0], center[1], radius, style))

    def render(self, px=480):
        pad = 0.1 * self.span
        size = self.span + 2 * pad
        # scale(1,-1) flips y, so the view box sits over the negated y range
        x0, y0 = self.min_x - pad, -(self.max_y + pad)
        return PREAMBLE % locals() + ''.join(c + '\n' for c in self.commands) + POSTAMBLE

    def save(self, filename, px=480):
        with open(filename, 'w') as f:
            f.write(self.render(px))


def _clipped_line(line, box, pad):
    """Endpoints of the mirror line across the padded drawing box."""
    nx, ny = math.cos(line.theta), math.sin(line.theta)
    (x0, y0), (x1, y1) = box
    cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    # foot of the perpendicular from the box centre, then run along the line direction
    s = line.d - (cx * nx + cy * ny)
    fx, fy = cx + s * nx, cy + s * ny
    half = 0.5 * math.hypot(x1 - x0, y1 - y0) + pad
    return (fx - half * ny, fy + half * nx), (fx + half * ny, fy - half * nx)


def report_svg(P, report):
    """SVG text for polygon P and a SymmetryReport on it."""
    svg = SVG()
    for v in P.vertices:
        svg.require(v.x, v.y)
    span = svg.span
    width = 0.006 * span
    svg.polygon('body', [(v.x, v.y) for v in P.vertices], f'fill:none;stroke:{BODY_STROKE};stroke-width:{1.5 * width:g}')
    if report.overlap_region:
        svg.polygon('overlap', list(report.overlap_region),
                    f'fill:{OVERLAP_FILL};fill-opacity:{OVERLAP_OPACITY};stroke:none')
    else:
        svg.commands.append('<polygon id="overlap" points="" style="fill:none;stroke:none"/>')
    style = f'fill:none;stroke:{MIRROR_STROKE};stroke-width:{width:g};stroke-dasharray:{4 * width:g},{2 * width:g}'
    if report.center is not None:
        svg.circle('mirror-line', report.center, 0.02 * span, style)
    elif report.line is not None:
        a, b = _clipped_line(report.line, ((svg.min_x, svg.min_y), (svg.max_x, svg.max_y)), 0.05 * span)
        svg.segment('mirror-line', a, b, style)
    logger.debug('svg with %d elements', len(svg.commands))
    return svg


def write_report_svg(P, report, path):
    report_svg(P, report).save(path)
    logger.info('wrote %s', path)
