"""
Run store: persists verification runs, their rows and exponent tables
through SQLAlchemy. Any URL SQLAlchemy accepts works; SQLite is the usual
choice.
"""

import logging
from typing import Iterable, Optional

from sqlalchemy import create_engine, select
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import Session

from models import CONJECTURE_SCAN, Base, CheckRecord, CheckResult, FTableRecord, Status, VerificationRun

logger = logging.getLogger(__name__)

_engines = {}


def get_engine(url: str):
    if url not in _engines:
        _engines[url] = create_engine(url)
        Base.metadata.create_all(_engines[url])
        logger.debug(f"Opened run store {url}")
    return _engines[url]


def save_run(url: str, command: str, results: Iterable[CheckResult], exit_code: int,
             profile: Optional[str] = None, threads: Optional[int] = None, f_entries=()) -> int:
    """
    Persist one run

    Returns:
        int: id of the stored run
    """
    results = list(results)
    run = VerificationRun(
        command=command,
        profile=profile,
        threads=threads,
        passed=sum(1 for r in results if r.status is Status.PASS),
        failed=sum(1 for r in results if r.status is Status.FAIL and r.kind != CONJECTURE_SCAN),
        skipped=sum(1 for r in results if r.status is Status.SKIPPED),
        flagged_conjectures=sum(1 for r in results if r.status is Status.FAIL and r.kind == CONJECTURE_SCAN),
        exit_code=exit_code,
    )
    for r in results:
        run.checks.append(CheckRecord(
            check_id=r.id,
            params=dict(sorted(r.params.items())),
            status=r.status.value,
            witness=r.witness,
            elapsed_ms=r.elapsed_s * 1000,
            kind=r.kind,
            branch=r.branch,
        ))
    for e in f_entries:
        run.f_entries.append(FTableRecord(
            p=e.p, m=e.m, r=e.r, f=e.f, sign=e.sign, published=e.published,
            matches=None if e.matches is None else ('yes' if e.matches else 'no'),
            checked_s=' '.join(map(str, e.checked_s)),
        ))
    try:
        with Session(get_engine(url)) as session:
            session.add(run)
            session.commit()
            run_id = run.id
    except SQLAlchemyError as e:
        logger.error(f"Error storing run: {str(e)}")
        raise
    logger.info(f"Stored run {run_id} ({len(results)} rows)")
    return run_id


def load_runs(url: str, limit: Optional[int] = None) -> list[dict]:
    """Stored runs, newest first"""
    with Session(get_engine(url)) as session:
        query = select(VerificationRun).order_by(VerificationRun.id.desc())
        if limit:
            query = query.limit(limit)
        runs = session.scalars(query).all()
        return [{
            'id': run.id,
            'command': run.command,
            'profile': run.profile,
            'passed': run.passed,
            'failed': run.failed,
            'skipped': run.skipped,
            'flagged_conjectures': run.flagged_conjectures,
            'exit_code': run.exit_code,
            'created_at': run.created_at.isoformat(timespec='seconds') if run.created_at else None,
        } for run in runs]


def load_checks(url: str, run_id: int) -> list[dict]:
    with Session(get_engine(url)) as session:
        query = select(CheckRecord).where(CheckRecord.run_id == run_id).order_by(CheckRecord.id)
        return [{
            'id': c.check_id,
            'params': c.params,
            'status': c.status,
            'witness': c.witness,
        } for c in session.scalars(query)]
