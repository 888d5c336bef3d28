import json
from pathlib import Path

import openpyxl
import pytest

from app import CommandReport, run
from symmetria import __version__
from symmetria.certificates import AXIAL_BOUND


def _report(capsys, argv, code=0):
    assert run(['--json'] + argv) == code
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def square_file(polygon_file):
    return polygon_file([(0, 0), (1, 0), (1, 1), (0, 1)], 'square.json')


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setenv('SYMMETRIA_THREADS', '1')


def test_measure_square(capsys, square_file):
    out = _report(capsys, ['measure', 'axiality', '--polygon', str(square_file), '--angles', '90'])
    assert out['command'] == 'measure axiality'
    assert out['result']['value'] == pytest.approx(1.0, abs=1e-8)
    assert out['version'] == __version__
    assert set(out) == {'command', 'inputs_echo', 'result', 'wall_time', 'version'}


def test_measure_writes_svg(capsys, square_file, tmp_path):
    svg = tmp_path / 'out.svg'
    _report(capsys, ['measure', 'central', '--polygon', str(square_file), '--svg', str(svg)])
    assert 'id="mirror-line"' in svg.read_text()


def test_family_round_trip(capsys, tmp_path):
    path = tmp_path / 'quad.json'
    out = _report(capsys, ['family', 'quad', '--eps', '0.1', '--out', str(path)])
    assert out['result']['area'] == pytest.approx(0.0585786437627, abs=1e-12)
    again = _report(capsys, ['measure', 'folding', '--polygon', str(path), '--angles', '60'])
    assert again['result']['body_area'] == pytest.approx(out['result']['area'])
    written = json.loads(path.read_text())['vertices']
    assert written == [pytest.approx(v, abs=1e-11) for v in out['result']['polygon']['vertices']]


def test_family_parallelogram(capsys):
    out = _report(capsys, ['family', 'parallelogram', '--d1', '0.3', '--h', '0.4'])
    assert out['result']['folding_closed_form'] == pytest.approx(0.7)


def test_certify_axial_bound(capsys):
    out = _report(capsys, ['certify', 'theorem-1-1'])
    result = out['result']
    assert result['status'] == 'exact'
    assert result['value']['p'] == '20/41'
    assert result['value']['q'] == '6/41'
    assert result['decimal'] == pytest.approx(float(AXIAL_BOUND), abs=1e-11)
    assert result['decimal'] == pytest.approx(0.694763, abs=1e-6)


def test_alias(capsys):
    assert _report(capsys, ['certify', 'axiality-bound'])['result']['status'] == 'exact'


def test_json_flag_after_subcommand(capsys, square_file):
    argv = ['measure', 'axiality', '--polygon', str(square_file), '--angles', '60', '--json']
    assert run(argv) == 0
    out = json.loads(capsys.readouterr().out)
    assert out['command'] == 'measure axiality'
    assert out['result']['value'] == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize('argv', [
    ['certify', 'theorem-1-1', '--json'],
    ['family', 'quad', '--eps', '0.1', '--json'],
    ['bounds', 'table', '--n-max', '3', '--json'],
])
def test_json_flag_on_nested_commands(capsys, argv):
    assert run(argv) == 0
    assert json.loads(capsys.readouterr().out)['version'] == __version__


def test_verify_overlap_formulas(capsys):
    out = _report(capsys, ['verify', 'overlap-formulas', '--eps', '0.01', '--samples', '3'])
    assert len(out['result']['rows']) == 6
    assert out['result']['worst_difference'] <= 1e-5
    assert all(row['valid'] for row in out['result']['rows'])


def test_plain_text_output(capsys):
    assert run(['certify', 'theorem-1-1']) == 0
    text = capsys.readouterr().out
    assert 'status: exact' in text
    assert '20/41 + 6/41√2' in text


def test_bounds_table(capsys, tmp_path):
    xlsx = tmp_path / 'bounds.xlsx'
    out = _report(capsys, ['bounds', 'table', '--n-max', '12', '--xlsx', str(xlsx)])
    rows = {row['n']: row for row in out['result']['rows']}
    assert rows[11]['separation'] is True
    assert rows[10]['separation'] is False
    assert openpyxl.load_workbook(xlsx).active['A1'].value == 'Symmetry bounds'


def test_program_constraints(capsys, tmp_path):
    point = tmp_path / 'point.json'
    point.write_text(json.dumps(dict(
        {'lambda': 0.3}, a=0, b=0, c=0, d=0, e=0, f=0, t=0, u=0, m1=0, m2=0, v1=0.25, v2=-0.25,
        alpha=1, beta=-1, phiB=0, phiE=0, k1=0, k2=0, y1=0.5, y2=0.5,
    )))
    out = _report(capsys, ['verify', 'program-constraints', '--point', str(point)])
    assert out['result']['feasible'] is False
    assert set(out['result']['violated']) == {'right_fold', 'left_fold'}


def test_folding_search(capsys):
    out = _report(capsys, ['certify', 'folding-search', '--budget', '2000', '--seed', '1'])
    assert out['result']['lambda'] >= 0.18803 - 1e-6


def test_inscribe_rect(capsys, square_file):
    out = _report(capsys, ['inscribe-rect', '--polygon', str(square_file), '--area', '0.5'])
    assert out['result']['area_ratio'] == pytest.approx(0.5)
    assert out['result']['cap_areas'] == pytest.approx([0.125] * 4, abs=1e-9)


def test_computation_error(capsys, polygon_file):
    triangle = polygon_file([(0, 0), (1, 0), (0, 1)], 'tri.json')
    assert run(['inscribe-rect', '--polygon', str(triangle), '--area', '0.1']) == 3
    assert 'error: NotCentrallySymmetric:' in capsys.readouterr().err


def test_error_report_in_json(capsys, polygon_file):
    triangle = polygon_file([(0, 0), (1, 0), (0, 1)], 'tri.json')
    out = _report(capsys, ['inscribe-rect', '--polygon', str(triangle), '--area', '0.1'], code=3)
    assert out['result']['error'] == 'NotCentrallySymmetric'


@pytest.mark.parametrize('argv', [
    [],
    ['measure', 'radial', '--polygon', 'x.json'],
    ['certify', 'folding-search', '--budget', '10'],
    ['search', '--vertices', '4', '--iters', '3'],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_invalid_options_are_usage_errors(capsys, square_file):
    assert run(['measure', 'axiality', '--polygon', str(square_file), '--angles', '0']) == 2


def test_bad_thread_setting(capsys, square_file, monkeypatch):
    monkeypatch.setenv('SYMMETRIA_THREADS', 'many')
    assert run(['measure', 'axiality', '--polygon', str(square_file)]) == 2


def test_search(capsys, tmp_path):
    out_file = tmp_path / 'search.json'
    out = _report(capsys, ['search', '--vertices', '4', '--iters', '2', '--seeds', '0', '1',
                           '--out', str(out_file)])
    assert [s['seed'] for s in out['result']['per_seed']] == [0, 1]
    assert json.loads(out_file.read_text())['best_value'] == out['result']['best_value']


def test_report_json_is_sorted():
    report = CommandReport(command='x', inputs_echo={'b': 1, 'a': 2}, result={'z': 0.1234567890123456}, wall_time=0.5)
    text = report.to_json()
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text)['result']['z'] == 0.123456789012


def test_report_matches_golden_file(capsys):
    golden = json.loads((Path(__file__).parent / 'golden' / 'family_quad.json').read_text())
    out = _report(capsys, ['family', 'quad', '--eps', '0.1'])
    assert out.pop('version') == __version__
    assert isinstance(out.pop('wall_time'), float)
    assert out == golden


def test_certificate_report_schema(capsys):
    result = _report(capsys, ['certify', 'theorem-1-1'])['result']
    assert set(result) == {'value', 't_star', 'cases', 'checks', 'status', 'decimal', 'closed_form', 'transcript'}
    assert set(result['cases']) == {'case1', 'case2', 'case3', 'case4'}
    assert all(set(check) == {'name', 'ok', 'detail'} for check in result['checks'])
