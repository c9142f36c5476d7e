import logging
import multiprocessing as mp
from collections import defaultdict

from config import RunConfig
from conjectures import (
    PUBLISHED_PAIRS,
    SCAN_IDS,
    annotate_scan,
    check_f_recurrence,
    check_f_symmetry,
    entry_result,
    f_entry,
)
from classical import INTEGER
from displays import IDENTITY, Q_CONGRUENCE
from models import CONJECTURE_SCAN, Status
from proof_graph import affected_by, execution_order
from storage import save_run
from utils import row_key
from verifier import (
    enumerate_cases,
    expand_ids,
    family_of,
    has_classical_counterpart,
    ids_of,
    is_conjecture,
    q_to_one_consistency,
    run_case,
)

CASE = 'case'
Q_TO_ONE = 'q->1'
F_ENTRY = 'f-entry'

IDENTITY_GROUP = 'identity'
QCONG_GROUP = 'qcong'
INTCONG_GROUP = 'intcong'
CONJECTURE_GROUP = 'conjectures'

COMMAND_GROUPS = {
    'verify-identity': [IDENTITY_GROUP],
    'verify-qcong': [QCONG_GROUP],
    'verify-intcong': [INTCONG_GROUP],
    'conjectures': [CONJECTURE_GROUP],
    'all': [IDENTITY_GROUP, QCONG_GROUP, INTCONG_GROUP, CONJECTURE_GROUP],
}

BATCH_SIZE = 200


def _run_task(task):
    kind, payload = task
    if kind == CASE:
        return run_case(payload)
    if kind == Q_TO_ONE:
        check_id, p, bounds = payload
        return q_to_one_consistency(check_id, p, bounds=bounds)
    if kind == F_ENTRY:
        return f_entry(*payload)
    raise ValueError(f"unknown task kind {kind!r}")


def _task_id(task):
    kind, payload = task
    if kind == CASE:
        return payload.check_id
    if kind == Q_TO_ONE:
        return payload[0]
    return 'conj7.7'


class VerificationPipeline:
    """6-stage verification pipeline"""

    def __init__(self, run_config: RunConfig):
        self.config = run_config
        self.logger = logging.getLogger(__name__)
        self.f_entries = []
        self.affected = {}
        self.results = {
            'planned': 0,
            'passed': 0,
            'failed': 0,
            'skipped': 0,
            'flagged_conjectures': 0,
        }

    def run(self, command):
        """Run every check group of a command and return the sorted rows"""
        self.logger.info(f"Starting verification: {command}")

        try:
            # Stage 1: Plan
            tasks = self._stage_1_plan(COMMAND_GROUPS[command])

            # Stage 2: Order by proof dependencies
            tasks = self._stage_2_order(tasks)

            # Stage 3: Execute
            outputs = self._stage_3_execute(tasks)

            # Stage 4: Collect
            rows = self._stage_4_collect(outputs)

            # Stage 5: Annotate
            self._stage_5_annotate(rows)

            self.logger.info(f"Verification completed: {self.results}")
            return rows

        except Exception as e:
            self.logger.error(f"Error in verification: {str(e)}")
            raise

    def exit_code(self, rows):
        """1 when a theorem, lemma or integer row fails; conjecture rows never fail the run"""
        return 1 if any(r.failed and r.kind != CONJECTURE_SCAN for r in rows) else 0

    def _selected(self, family, conjectures=False):
        wanted = expand_ids(self.config.ids) if self.config.ids else ids_of(family)
        return [i for i in wanted if family_of(i) == family and is_conjecture(i) == conjectures]

    def _bounds(self):
        bounds = {'primes': self.config.primes, 'm_max': self.config.m_max}
        if self.config.r_max is not None:
            bounds['r_max'] = self.config.r_max
        if self.config.s_max is not None:
            bounds['s_max'] = self.config.s_max
        return bounds

    def _stage_1_plan(self, groups):
        """Stage 1: Enumerate the cases of every selected check"""
        self.logger.info("Stage 1: Planning checks")
        tasks = []

        if IDENTITY_GROUP in groups:
            for check_id in self._selected(IDENTITY):
                bounds = {'n_max': self.config.n_max_for(check_id)}
                tasks.extend((CASE, c) for c in enumerate_cases(check_id, bounds, include_excluded=True))

        if QCONG_GROUP in groups:
            bounds = self._bounds()
            for check_id in self._selected(Q_CONGRUENCE):
                tasks.extend((CASE, c) for c in enumerate_cases(check_id, bounds, include_excluded=True))
                if has_classical_counterpart(check_id):
                    for p in self.config.primes:
                        if p <= self.config.q_to_one_prime_max:
                            tasks.append((Q_TO_ONE, (check_id, p, bounds)))

        if INTCONG_GROUP in groups:
            if self.config.int_primes:
                bounds = {'primes': self.config.int_primes}
            else:
                bounds = {'prime_max': self.config.prime_max}
            if self.config.s_max is not None:
                bounds['s_max'] = self.config.s_max
            for check_id in self._selected(INTEGER):
                tasks.extend((CASE, c) for c in enumerate_cases(check_id, bounds, include_excluded=True))

        if CONJECTURE_GROUP in groups:
            tasks.extend(self._plan_conjectures())

        self.results['planned'] = len(tasks)
        self.logger.info(f"Planned {len(tasks)} tasks")
        return tasks

    def _plan_conjectures(self):
        tasks = []
        scan_ids = [i for i in SCAN_IDS if not self.config.ids or i in self.config.ids]
        for check_id in scan_ids:
            if family_of(check_id) == IDENTITY:
                bounds = {'n_max': self.config.n_max_for(check_id)}
            else:
                bounds = {'primes': self.config.conjecture_primes, 'm_max': self.config.conjecture_m_max}
                if self.config.s_max is not None:
                    bounds['s_max'] = self.config.s_max
            tasks.extend((CASE, c) for c in enumerate_cases(check_id, bounds, include_excluded=True))
        if not self.config.ids or 'conj7.7' in self.config.ids:
            tasks.extend(self._plan_f_table())
        return tasks

    def _plan_f_table(self):
        if self.config.pairs:
            grid = {p: self.config.pairs for p in self.config.conjecture_primes}
        else:
            grid = PUBLISHED_PAIRS
        tuples = sorted({(p, m, r) for p, pairs in grid.items() for m, rs in pairs for r in rs})
        return [(F_ENTRY, (p, m, r, self.config.f_s_range)) for p, m, r in tuples]

    def _stage_2_order(self, tasks):
        """Stage 2: Run prerequisites before the statements that use them"""
        self.logger.info("Stage 2: Ordering by proof dependencies")
        by_id = defaultdict(list)
        for task in tasks:
            by_id[_task_id(task)].append(task)
        ordered = []
        for check_id in execution_order(by_id):
            ordered.extend(by_id[check_id])
        return ordered

    def _stage_3_execute(self, tasks):
        """Stage 3: Execute tasks in a worker pool, or in-process with one thread"""
        threads = self.config.threads
        self.logger.info(f"Stage 3: Executing {len(tasks)} tasks with {threads} worker(s)")
        outputs = []
        if threads > 1 and len(tasks) > 1:
            with mp.Pool(threads) as pool:
                for i in range(0, len(tasks), BATCH_SIZE):
                    outputs.extend(pool.map(_run_task, tasks[i:i + BATCH_SIZE]))
                    self._log_batch(i, len(tasks))
        else:
            for i in range(0, len(tasks), BATCH_SIZE):
                outputs.extend(_run_task(t) for t in tasks[i:i + BATCH_SIZE])
                self._log_batch(i, len(tasks))
        return outputs

    def _log_batch(self, start, total):
        batches = (total + BATCH_SIZE - 1) // BATCH_SIZE
        self.logger.info(f"Processed batch {start // BATCH_SIZE + 1} of {batches}")

    def _stage_4_collect(self, outputs):
        """Stage 4: Separate exponent entries, add property rows, sort by (id, params)"""
        self.logger.info("Stage 4: Collecting results")
        rows = []
        for output in outputs:
            if hasattr(output, 'status'):
                rows.append(output)
            else:
                self.f_entries.append(output)
        if self.f_entries:
            self.f_entries.sort(key=lambda e: e.key())
            rows.extend(entry_result(e) for e in self.f_entries)
            rows.append(check_f_symmetry(self.f_entries))
            rows.append(check_f_recurrence(self.f_entries))
        annotate_scan(rows)
        rows.sort(key=row_key)

        for row in rows:
            if row.status is Status.PASS:
                self.results['passed'] += 1
            elif row.status is Status.SKIPPED:
                self.results['skipped'] += 1
            elif row.kind == CONJECTURE_SCAN:
                self.results['flagged_conjectures'] += 1
                self.logger.warning(f"Conjecture row fails: {row.id} {row.params}: {row.witness}")
            else:
                self.results['failed'] += 1
                self.logger.error(f"Check fails: {row.id} {row.params}: {row.witness}")
        return rows

    def _stage_5_annotate(self, rows):
        """Stage 5: List statements downstream of failing theorem rows"""
        self.logger.info("Stage 5: Annotating downstream failures")
        failed = {r.id for r in rows if r.failed and r.kind != CONJECTURE_SCAN}
        self.affected = affected_by(failed)
        for check_id, downstream in self.affected.items():
            self.logger.warning(f"{check_id} fails; used in {', '.join(downstream)}")

    def persist(self, command, rows, exit_code):
        """Stage 6: Store the run when a store URL is configured"""
        if not self.config.store:
            return None
        self.logger.info("Stage 6: Persisting run")
        try:
            return save_run(self.config.store, command, rows, exit_code, self.config.profile,
                            self.config.threads, self.f_entries)
        except Exception as e:
            self.logger.error(f"Error persisting run: {str(e)}")
            raise
