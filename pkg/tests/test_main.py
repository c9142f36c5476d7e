import json

import pytest

from main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, main, make_run_config

QUICK = ['--threads', '1']


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


class TestUsage:

    @pytest.mark.parametrize('argv', [
        [],
        ['bogus'],
        ['verify-qcong', '--threads', '0'],
        ['verify-qcong', '--format', 'xml'],
        ['verify-qcong', '--s-max', '-1'],
        ['verify-qcong', '--primes', '4'],
        ['verify-qcong', '--primes', '2,3'],
        ['verify-qcong', '--primes', 'three'],
        ['verify-qcong', '--ids', 'thm9.9'],
        ['verify-qcong', '--profile', 'nightly'],
        ['f-table', '--pairs', '2'],
    ])
    def test_usage_errors(self, argv):
        assert main(argv) == EXIT_USAGE

    def test_help(self, capsys):
        assert main(['--help']) == EXIT_OK
        assert 'verify-qcong' in capsys.readouterr().out

    def test_bad_thread_variable(self, monkeypatch):
        monkeypatch.setenv('QCLAB_THREADS', 'many')
        assert main(['verify-qcong', '--ids', 'cor2.2']) == EXIT_USAGE

    def test_unwritable_output(self, tmp_path):
        target = tmp_path / 'missing' / 'report.txt'
        argv = ['verify-qcong', '--ids', 'cor2.2', '--primes', '3', '-o', str(target)] + QUICK
        assert main(argv) == EXIT_USAGE


class TestRunConfig:

    def test_primes_feed_every_group(self):
        args = build_parser().parse_args(['all', '--primes', '5,3', '--profile', 'testing'])
        config = make_run_config(args)
        assert config.primes == [3, 5]
        assert config.int_primes == [3, 5]
        assert config.conjecture_primes == [3, 5]

    def test_profile_defaults(self):
        config = make_run_config(build_parser().parse_args(['verify-intcong', '--profile', 'testing']))
        assert config.prime_max == 13
        assert config.int_primes == []

    def test_thread_variable(self, monkeypatch):
        monkeypatch.setenv('QCLAB_THREADS', '3')
        config = make_run_config(build_parser().parse_args(['all']))
        assert config.threads == 3


class TestCommands:

    def test_cubic_sum(self, capsys):
        argv = ['verify-qcong', '--ids', 'cor2.2', '--primes', '3,5,7', '--format', 'json'] + QUICK
        assert main(argv) == EXIT_OK
        data = _json_out(capsys)
        assert [d['id'] for d in data] == ['cor2.2'] * 3 + ['cor2.2/q->1'] * 3
        assert [d['params']['p'] for d in data] == [3, 5, 7, 3, 5, 7]
        assert {d['status'] for d in data} == {'pass'}

    def test_text_report(self, capsys):
        assert main(['verify-qcong', '--ids', 'cor2.2', '--primes', '3'] + QUICK) == EXIT_OK
        assert capsys.readouterr().out.endswith('PASS 2 / FAIL 0 / SKIP 0\n')

    def test_integer_congruences(self, capsys):
        argv = ['verify-intcong', '--ids', 'int1.3', '--primes', '3,5,13', '--format', 'csv'] + QUICK
        assert main(argv) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == 'id,params,status,witness,elapsed_ms'
        assert len(lines) == 4

    def test_failure_exit_code(self, monkeypatch):
        import pipeline
        from models import CheckResult, Status

        monkeypatch.setattr(pipeline, 'run_case',
                            lambda case: CheckResult(case.check_id, dict(case.params), Status.FAIL, 'forced'))
        assert main(['verify-intcong', '--ids', 'int1.3', '--primes', '5'] + QUICK) == EXIT_FAILURE

    def test_report_file(self, tmp_path):
        target = tmp_path / 'report.json'
        argv = ['verify-identity', '--ids', 'thm2.5', '--n-max', '1', '--format', 'json', '-o', str(target)] + QUICK
        assert main(argv) == EXIT_OK
        assert len(json.loads(target.read_text(encoding='utf-8'))) == 3

    def test_exponent_table(self, capsys):
        argv = ['f-table', '--primes', '3', '--pairs', '2:1,3', '--format', 'csv', '--profile', 'testing'] + QUICK
        assert main(argv) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == 'p,m,r,f,sign,published,matches,checked_s,note'
        assert lines[1].startswith('3,2,1,-2,-1,-2,yes,')

    def test_resolve(self, capsys):
        argv = ['resolve', '--ids', 'cor2.8', '--primes', '5,7', '--format', 'json'] + QUICK
        assert main(argv) == EXIT_OK
        statuses = {d['id']: d['status'] for d in _json_out(capsys)}
        assert statuses == {'cor2.8@printed': 'fail', 'cor2.8@registered': 'pass'}


class TestHistory:

    def test_needs_a_store(self):
        assert main(['history']) == EXIT_USAGE

    def test_lists_stored_runs(self, tmp_path, capsys):
        url = f"sqlite:///{tmp_path / 'runs.db'}"
        argv = ['verify-identity', '--ids', 'thm2.5', '--n-max', '1', '--store', url] + QUICK
        assert main(argv) == EXIT_OK
        capsys.readouterr()
        assert main(['history', '--store', url, '--format', 'json']) == EXIT_OK
        [run] = _json_out(capsys)
        assert run['command'] == 'verify-identity'
        assert run['passed'] == 3
        assert run['exit_code'] == 0

    def test_store_from_environment(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv('QCLAB_DATABASE_URL', f"sqlite:///{tmp_path / 'env.db'}")
        assert main(['history']) == EXIT_OK
        assert capsys.readouterr().out == 'no stored runs\n'
