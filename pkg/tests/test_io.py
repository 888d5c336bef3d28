import json
import logging
import xml.etree.ElementTree as ET

import openpyxl
import pandas as pd
import pytest
from pydantic import ValidationError

from symmetria.errors import DegenerateInput
from symmetria.export import HEADER_COLOR, export_table
from symmetria.geometry import regular_polygon
from symmetria.measures import measure
from symmetria.polygon_io import polygon_document, polygon_from_points, read_polygon, write_polygon
from symmetria.render import BODY_STROKE, MIRROR_STROKE, report_svg, write_report_svg

SVG_NS = '{http://www.w3.org/2000/svg}'


class TestPolygonFiles:
    def test_round_trip(self, tmp_path, hexagon):
        path = tmp_path / 'hex.json'
        write_polygon(hexagon, path)
        assert read_polygon(path) == hexagon
        assert json.loads(path.read_text()) == polygon_document(hexagon)

    def test_logs_dropped_points(self, polygon_file, caplog):
        path = polygon_file([(0, 0), (1, 0), (1, 0), (0.5, 0), (1, 1), (0, 1), (0.5, 0.5)])
        with caplog.at_level(logging.WARNING, logger='symmetria.polygon_io'):
            P = read_polygon(path)
        assert len(P) == 4
        assert 'dropped 2' in caplog.text

    def test_logs_reordering(self, caplog):
        with caplog.at_level(logging.WARNING, logger='symmetria.polygon_io'):
            polygon_from_points([(0, 0), (0, 1), (1, 1), (1, 0)])
        assert 'reordered' in caplog.text

    def test_quiet_for_clean_input(self, caplog):
        with caplog.at_level(logging.WARNING, logger='symmetria.polygon_io'):
            polygon_from_points([(1, 0), (1, 1), (0, 1), (0, 0)])
        assert caplog.text == ''

    def test_malformed_document(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('{"points": [[0, 0]]}')
        with pytest.raises(ValidationError):
            read_polygon(path)

    def test_degenerate_document(self, polygon_file):
        with pytest.raises(DegenerateInput):
            read_polygon(polygon_file([(0, 0), (1, 1), (2, 2)]))


class TestSvg:
    @pytest.mark.parametrize('name', ['axiality', 'central', 'folding'])
    def test_element_ids(self, name, fast_opts, tmp_path):
        P = regular_polygon(5)
        report = measure(name, P, fast_opts)
        path = tmp_path / f'{name}.svg'
        write_report_svg(P, report, path)
        root = ET.parse(path).getroot()
        assert root.tag == f'{SVG_NS}svg'
        assert root.get('version') == '1.1'
        ids = sorted(el.get('id') for el in root.iter() if el.get('id'))
        assert ids == ['body', 'mirror-line', 'overlap']
        mirror = next(el for el in root.iter() if el.get('id') == 'mirror-line')
        assert mirror.tag == (f'{SVG_NS}circle' if name == 'central' else f'{SVG_NS}line')
        assert MIRROR_STROKE in mirror.get('style')

    def test_body_style(self, square, fast_opts):
        text = report_svg(square, measure('axiality', square, fast_opts)).render()
        assert f'stroke:{BODY_STROKE}' in text
        assert 'viewBox' in text


class TestExport:
    def test_styled_workbook(self, tmp_path):
        frame = pd.DataFrame({'n': [2, 3], 'bound': [0.25, 1 / 3], 'flag': [False, True]})
        path = tmp_path / 'table.xlsx'
        export_table(frame, path, 'Bounds', 'unit test')
        ws = openpyxl.load_workbook(path).active
        assert ws['A1'].value == 'Bounds'
        assert ws['A2'].value == 'Source: unit test'
        assert [ws.cell(row=4, column=c).value for c in range(1, 4)] == ['n', 'bound', 'flag']
        assert ws['A4'].fill.start_color.rgb.endswith(HEADER_COLOR)
        assert ws['A4'].font.bold
        assert ws['B6'].value == pytest.approx(1 / 3)
        assert ws['C6'].value is True
        assert ws.max_row == 6
