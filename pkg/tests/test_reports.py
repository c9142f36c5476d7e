import io
import json

import pandas as pd
import pytest

from conjectures import FEntry
from models import CONJECTURE_SCAN, CheckResult, Status
from reports import (
    F_TABLE_COLUMNS,
    REPORT_COLUMNS,
    render_f_table,
    render_report,
    summary_line,
    write_f_table,
    write_report,
    write_runs,
)


@pytest.fixture
def rows():
    return [
        CheckResult('thm2.1', {'s': 1, 'p': 5}, Status.PASS, branch='zero'),
        CheckResult('cor2.2', {'p': 7}, Status.FAIL, 'LHS - RHS = q (mod [7]^2)'),
        CheckResult('cor2.2', {'p': 3}, Status.SKIPPED, 'p must be a prime >= 3'),
    ]


@pytest.fixture
def entry():
    return FEntry(3, 2, 1, -2, -1, published=-2, matches=True, checked_s=[0, 1])


class TestSummary:

    def test_empty(self):
        assert summary_line([]) == 'PASS 0 / FAIL 0 / SKIP 0'

    def test_counts(self, rows):
        assert summary_line(rows) == 'PASS 1 / FAIL 1 / SKIP 1'

    def test_empty_report(self):
        text = render_report([])
        assert text.endswith('PASS 0 / FAIL 0 / SKIP 0\n')
        assert text.startswith('no checks')


class TestJson:

    def test_single_pass_row(self):
        text = render_report([CheckResult('cor2.2', {'p': 3}, Status.PASS)], 'json')
        assert json.loads(text) == [
            {'id': 'cor2.2', 'params': {'p': 3}, 'status': 'pass', 'witness': None, 'elapsed_ms': None},
        ]

    def test_sorted_by_id_and_params(self, rows):
        data = json.loads(render_report(rows, 'json'))
        assert [(d['id'], d['params']) for d in data] == [
            ('cor2.2', {'p': 3}), ('cor2.2', {'p': 7}), ('thm2.1', {'p': 5, 's': 1}),
        ]

    def test_timings(self):
        row = CheckResult('cor2.2', {'p': 3}, Status.PASS, elapsed_s=0.0125)
        assert json.loads(render_report([row], 'json', timings=True))[0]['elapsed_ms'] == 12.5

    def test_notes_join_the_witness(self):
        row = CheckResult('conj7.3', {'p': 5}, Status.PASS, notes=['every summand vanishes modulo [p]^2'])
        assert json.loads(render_report([row], 'json'))[0]['witness'] == 'every summand vanishes modulo [p]^2'


class TestCsv:

    def test_columns(self, rows):
        frame = pd.read_csv(io.StringIO(render_report(rows, 'csv')))
        assert list(frame.columns) == REPORT_COLUMNS
        assert json.loads(frame['params'][0]) == {'p': 3}
        assert list(frame['status']) == ['skipped-precondition', 'fail', 'pass']


class TestText:

    def test_summary_is_last(self, rows):
        lines = render_report(rows).rstrip('\n').split('\n')
        assert lines[-1] == 'PASS 1 / FAIL 1 / SKIP 1'
        assert 'p=5, s=1' in lines[3]

    def test_flagged_conjectures(self):
        row = CheckResult('conj7.5', {'p': 5}, Status.FAIL, 'no', kind=CONJECTURE_SCAN)
        assert 'flagged, not fatal): conj7.5' in render_report([row])

    def test_downstream_listing(self, rows):
        text = render_report(rows, affected={'cor2.2': ['int1.2', 'int1.3']})
        assert '  cor2.2: int1.2, int1.3' in text

    def test_unknown_format(self, rows):
        with pytest.raises(ValueError):
            render_report(rows, 'xml')


class TestWriters:

    def test_to_file(self, rows, tmp_path):
        path = tmp_path / 'report.json'
        text = write_report(rows, 'json', str(path))
        assert path.read_text(encoding='utf-8') == text

    def test_to_stdout(self, rows, capsys):
        write_report(rows, 'text', '-')
        assert capsys.readouterr().out.endswith('PASS 1 / FAIL 1 / SKIP 1\n')

    def test_no_runs(self, capsys):
        write_runs([])
        assert capsys.readouterr().out == 'no stored runs\n'


class TestFTable:

    def test_csv(self, entry):
        frame = pd.read_csv(io.StringIO(render_f_table([entry], 'csv')))
        assert list(frame.columns) == F_TABLE_COLUMNS + ['note']
        assert frame.loc[0, 'f'] == -2
        assert frame.loc[0, 'checked_s'] == '0 1'

    def test_json(self, entry):
        data = json.loads(render_f_table([entry], 'json'))
        assert data[0]['matches'] == 'yes'
        assert data[0]['sign'] == -1

    def test_unsolved_entry(self):
        text = render_f_table([FEntry(5, 3, 3, None, 0, note='skipped: m divides r')])
        assert 'skipped: m divides r' in text

    def test_empty(self, capsys):
        write_f_table([])
        assert capsys.readouterr().out == 'no entries\n'
