"""
Report writers: JSON, CSV and plain-text tables of check results and of
the exponent table.
"""

import json
import logging
import sys
from typing import Iterable, Optional

import pandas as pd

from models import CONJECTURE_SCAN, CheckResult, Status
from utils import row_key

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ['id', 'params', 'status', 'witness', 'elapsed_ms']
F_TABLE_COLUMNS = ['p', 'm', 'r', 'f', 'sign', 'published', 'matches', 'checked_s']


def summary_line(results: Iterable[CheckResult]) -> str:
    results = list(results)
    counts = {status: sum(1 for r in results if r.status is status) for status in Status}
    return f"PASS {counts[Status.PASS]} / FAIL {counts[Status.FAIL]} / SKIP {counts[Status.SKIPPED]}"


def _rows(results, timings):
    rows = []
    for result in sorted(results, key=row_key):
        witness = result.witness
        if result.notes:
            witness = "; ".join(([witness] if witness else []) + result.notes)
        rows.append({
            'id': result.id,
            'params': dict(sorted(result.params.items())),
            'status': result.status.value,
            'witness': witness,
            'elapsed_ms': round(result.elapsed_s * 1000, 3) if timings else None,
        })
    return rows


def _render_params(params):
    return ', '.join(f"{k}={v}" for k, v in params.items())


def render_report(results: Iterable[CheckResult], fmt: str = 'text', timings: bool = False,
                  affected: Optional[dict] = None) -> str:
    results = list(results)
    rows = _rows(results, timings)
    if fmt == 'json':
        return json.dumps(rows, indent=2) + '\n'
    if fmt == 'csv':
        frame = pd.DataFrame(rows, columns=REPORT_COLUMNS)
        frame['params'] = [json.dumps(p, separators=(',', ':')) for p in frame['params']]
        return frame.to_csv(index=False, lineterminator='\n')
    if fmt != 'text':
        raise ValueError(f"unknown report format {fmt!r}")

    lines = []
    if rows:
        columns = REPORT_COLUMNS if timings else REPORT_COLUMNS[:-1]
        frame = pd.DataFrame(rows, columns=REPORT_COLUMNS)[columns]
        frame['params'] = [_render_params(p) for p in frame['params']]
        frame['witness'] = frame['witness'].fillna('')
        lines.append(frame.to_string(index=False))
    else:
        lines.append('no checks')
    flagged = sorted({r.id for r in results if r.kind == CONJECTURE_SCAN and r.failed})
    if flagged:
        lines.append('')
        lines.append(f"conjecture scans with failures (flagged, not fatal): {', '.join(flagged)}")
    if affected:
        lines.append('')
        lines.append('statements downstream of failures:')
        for check_id, downstream in sorted(affected.items()):
            lines.append(f"  {check_id}: {', '.join(downstream)}")
    lines.append('')
    lines.append(summary_line(results))
    return '\n'.join(lines) + '\n'


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    logger.info(f"Report written to {path}")


def write_report(results: Iterable[CheckResult], fmt: str = 'text', path: Optional[str] = None,
                 timings: bool = False, affected: Optional[dict] = None) -> str:
    """
    Write a report of check results

    Args:
        results: rows to write; sorted by (id, params) here
        fmt: 'text', 'json' or 'csv'
        path: output file; None or '-' for stdout
        timings: fill elapsed_ms, otherwise it stays empty
        affected: failed id -> downstream ids, listed in text reports

    Returns:
        str: the rendered report
    """
    text = render_report(results, fmt, timings, affected)
    _emit(text, path)
    return text


def _f_rows(entries):
    rows = []
    for e in sorted(entries, key=lambda e: e.key()):
        rows.append({
            'p': e.p, 'm': e.m, 'r': e.r, 'f': e.f, 'sign': e.sign or None,
            'published': e.published,
            'matches': None if e.matches is None else ('yes' if e.matches else 'no'),
            'checked_s': ' '.join(map(str, e.checked_s)),
            'note': e.note,
        })
    return rows


def render_f_table(entries, fmt: str = 'text') -> str:
    rows = _f_rows(entries)
    if fmt == 'json':
        return json.dumps(rows, indent=2) + '\n'
    frame = pd.DataFrame(rows, columns=F_TABLE_COLUMNS + ['note'])
    for column in ('f', 'sign', 'published'):
        frame[column] = frame[column].astype('Int64')
    if fmt == 'csv':
        return frame.to_csv(index=False, lineterminator='\n')
    if fmt != 'text':
        raise ValueError(f"unknown report format {fmt!r}")
    if frame.empty:
        return 'no entries\n'
    return frame.astype(object).fillna('').to_string(index=False) + '\n'


def write_f_table(entries, fmt: str = 'text', path: Optional[str] = None) -> str:
    """Write exponent-table rows with columns p, m, r, f, sign, published, matches, checked_s"""
    text = render_f_table(entries, fmt)
    _emit(text, path)
    return text


def write_runs(runs: list[dict], fmt: str = 'text', path: Optional[str] = None) -> str:
    """Write the stored-run listing produced by storage.load_runs"""
    frame = pd.DataFrame(runs)
    if fmt == 'json':
        text = json.dumps(runs, indent=2) + '\n'
    elif fmt == 'csv':
        text = frame.to_csv(index=False, lineterminator='\n')
    elif fmt == 'text':
        text = (frame.to_string(index=False) if runs else 'no stored runs') + '\n'
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    _emit(text, path)
    return text
