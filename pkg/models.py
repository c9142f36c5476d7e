from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Optional

from sqlalchemy import JSON, Column, DateTime, Float, ForeignKey, Integer, String, Text
from sqlalchemy.orm import DeclarativeBase, relationship

THEOREM = "theorem"
CONJECTURE_SCAN = "conjecture-scan"


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped-precondition"


@dataclass
class CheckResult:
    """One row of a report: a check id at one parameter tuple"""

    id: str
    params: dict[str, Any]
    status: Status
    witness: Optional[str] = None
    elapsed_s: float = 0.0
    kind: str = THEOREM
    branch: Optional[str] = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    def sort_key(self) -> tuple:
        return (self.id, tuple(sorted(self.params.items())))


class Base(DeclarativeBase):
    pass


class VerificationRun(Base):
    __tablename__ = 'verification_runs'

    id = Column(Integer, primary_key=True)
    command = Column(String(50), nullable=False)
    profile = Column(String(50))
    threads = Column(Integer)

    # Outcome counters
    passed = Column(Integer, default=0)
    failed = Column(Integer, default=0)
    skipped = Column(Integer, default=0)
    flagged_conjectures = Column(Integer, default=0)
    exit_code = Column(Integer)

    created_at = Column(DateTime, default=datetime.utcnow)

    checks = relationship('CheckRecord', backref='run', lazy=True, cascade='all, delete-orphan')
    f_entries = relationship('FTableRecord', backref='run', lazy=True, cascade='all, delete-orphan')


class CheckRecord(Base):
    __tablename__ = 'check_records'

    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey('verification_runs.id'), nullable=False)

    check_id = Column(String(50), nullable=False, index=True)
    params = Column(JSON)
    status = Column(String(30), nullable=False)
    witness = Column(Text)  # rendered residue or failure message
    elapsed_ms = Column(Float)
    kind = Column(String(30), default=THEOREM)
    branch = Column(String(30))


class FTableRecord(Base):
    __tablename__ = 'f_table_records'

    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey('verification_runs.id'), nullable=False)

    p = Column(Integer, nullable=False)
    m = Column(Integer, nullable=False)
    r = Column(Integer, nullable=False)
    f = Column(Integer)  # NULL when no exponent exists
    sign = Column(Integer)
    published = Column(Integer)
    matches = Column(String(10))
    checked_s = Column(String(255))
