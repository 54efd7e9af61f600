import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

from straus import ed1, ed2, report, xform
from straus.cli import build_parser, config_from_args, main
from straus.exceptions import BudgetExceededException, DomainException
from straus.lattice import HitBoxSummary


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_usage(test, *argv):
    err = io.StringIO()
    with redirect_stderr(err), test.assertRaises(SystemExit) as raised:
        main(list(argv))
    return raised.exception.code


def denominators(text):
    return {tuple(json.loads(line)[k] for k in 'abc') for line in text.splitlines()}


class TestReport(unittest.TestCase):

    def test_a_golden_rows(self):
        rows = report.golden_rows(1, 2521)
        self.assertEqual(len(rows), 6)
        self.assertEqual(rows[3][6], '13851')
        self.assertEqual(len(report.golden_rows(2, 3529)), 8)
        with self.assertRaises(DomainException):
            report.golden_rows(3, 2521)
        with self.assertRaises(DomainException):
            report.golden_rows(1, 3529)

    def test_b_table_1(self):
        rows = report.table_1_rows(ed1.enumerate_ed1(2521, 83))
        self.assertEqual(rows, list(report.golden_rows(1, 2521)))

    def test_c_table_2(self):
        for P in (2521, 3529):
            rows = report.table_2_rows(ed2.enumerate_ed2(P, ed2.default_delta_max(P)))
            self.assertEqual(rows, list(report.golden_rows(2, P)))

    def test_d_roundtrip_rows(self):
        triple = ed2.triple_from(1, 1, 10, 29)
        rows = report.roundtrip_rows(xform.roundtrip_report(29, [triple]))
        self.assertEqual(rows[0], ('29', '10', '29', '290', '3', '10', '13', '5', '10', '130', 'c', 'OK', 'minimal', ''))
        self.assertEqual(rows[1][-4:], ('', 'FAIL', 'canonical', 'congruence_failure'))
        self.assertEqual(len(rows[0]), len(report.ROUNDTRIP_HEADER))

    def test_e_small_rows(self):
        self.assertEqual(report.hitbox_rows(HitBoxSummary(10, 7, 3, 0, 0)), [('10', '7', '3', '0', '0')])
        stream = io.StringIO()
        report.write_csv(stream, ('x', 'y'), [('1', '2'), ('3', '4,5')])
        self.assertEqual(stream.getvalue(), 'x,y\n1,2\n3,"4,5"\n')

    def test_f_open_output(self):
        out = io.StringIO()
        with redirect_stdout(out):
            with report.open_output('-') as stream:
                stream.write('hello\n')
        self.assertEqual(out.getvalue(), 'hello\n')
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'out.txt')
            with report.open_output(path) as stream:
                stream.write('saved\n')
            with open(path, encoding='utf-8') as saved:
                self.assertEqual(saved.read(), 'saved\n')


class TestCli(unittest.TestCase):

    def test_a_parser(self):
        args = build_parser().parse_args(['solve', '13', '--budget', '100', '--alpha', '1', '--alpha', '2'])
        config = config_from_args(args, environ={})
        self.assertEqual((config.budget, config.alphas), (100, (1, 2)))
        config = config_from_args(args, environ={'ESD_BUDGET': '9'})
        self.assertEqual(config.budget, 9)
        args = build_parser().parse_args(['--workers', '2', 'sweep', '5', '7'])
        self.assertEqual(config_from_args(args, environ={}).workers, 2)

    def test_b_usage_errors(self):
        self.assertEqual(run_usage(self, 'solve', 'x'), 64)
        self.assertEqual(run_usage(self, 'solve', '-7'), 64)
        self.assertEqual(run_usage(self, 'fly', '7'), 64)
        self.assertEqual(run_usage(self, 'solve', '7', '--budget', '0'), 64)
        self.assertEqual(run_usage(self, 'table', '3', '29'), 64)
        self.assertEqual(run_usage(self, 'solve', '7', '--strategy', 'guess'), 64)

    def test_c_solve(self):
        code, out, err = run('solve', '7')
        self.assertEqual(code, 0)
        records = [json.loads(line) for line in out.splitlines()]
        self.assertEqual([(r['a'], r['b'], r['c']) for r in records], [('2', '28', '28'), ('2', '21', '42')])
        self.assertIn('P=7 SOLVED(2)', err)
        code, out, err = run('solve', '4')
        self.assertEqual((code, out), (64, ''))
        self.assertIn('not a prime', err)

    def test_d_solve_formats(self):
        code, out, _ = run('solve', '2521', '--format', 'csv')
        lines = out.splitlines()
        self.assertEqual(lines[0], ','.join(report.RECORD_HEADER))
        self.assertTrue(lines[1].startswith('2521,644,30252,1217643,ED2,ed2,'))
        code, out, _ = run('solve', '2521', '--timing', '--stop-after', '1')
        self.assertIn('elapsed', json.loads(out))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'records.jsonl')
            code, out, _ = run('solve', '7', '--out', path)
            self.assertEqual((code, out), (0, ''))
            with open(path, encoding='utf-8') as saved:
                self.assertEqual(len(saved.read().splitlines()), 2)

    def test_e_solve_exit_codes(self):
        code, _, err = run('solve', '13', '--strategy', 'explicit')
        self.assertEqual(code, 3)
        self.assertIn('EXHAUSTED', err)
        error = BudgetExceededException('out of steps', 99)
        with mock.patch('straus.ed1.enumerate_ed1', side_effect=error):
            code, _, err = run('solve', '13', '--strategy', 'ed1')
        self.assertEqual(code, 4)
        self.assertIn('BUDGET', err)
        with mock.patch.dict(os.environ, {'ESD_BUDGET': 'many'}):
            self.assertEqual(run('solve', '13')[0], 64)

    def test_f_sweep(self):
        code, out, err = run('sweep', '2', '30')
        self.assertEqual(code, 0)
        self.assertIn('primes=10 solved=10', err)
        self.assertEqual({json.loads(line)['p'] for line in out.splitlines()},
                         {'2', '3', '5', '7', '11', '13', '17', '19', '23', '29'})
        code, _, err = run('sweep', '5', '13', '--strategy', 'explicit')
        self.assertEqual(code, 3)
        self.assertIn('exhausted=[5, 13]', err)

    def test_g_tables(self):
        code, out, _ = run('table', '1', '2521', '--golden')
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], ','.join(report.TABLE_1_HEADER))
        self.assertTrue(out.startswith('#,gamma,A,B,C,'))
        self.assertEqual(len(out.splitlines()), 7)
        self.assertEqual(run('table', '2', '3529', '--golden')[0], 0)
        self.assertEqual(run('table', '2', '2521', '--golden')[0], 0)
        code, out, _ = run('table', '2', '2521')
        self.assertTrue(out.startswith('#,alpha,bprime,cprime,'))
        code, _, err = run('table', '1', '2521', '--golden', '--gamma-max', '40')
        self.assertEqual(code, 2)
        self.assertIn('differs', err)
        self.assertEqual(run('table', 'roundtrip', '29', '--golden')[0], 64)
        self.assertEqual(run('table', '1', '15')[0], 64)
        self.assertEqual(run('table', '2', '13', '--golden')[0], 64)
        code, out, _ = run('table', 'roundtrip', '29', '--delta-max', '1')
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[1].split(',')[-4:], ['c', 'OK', 'minimal', ''])

    def test_h_verify(self):
        good = '{"p":"7","a":"2","b":"21","c":"42"}'
        bad = '{"p":"7","a":"2","b":"28","c":"29"}'
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'records.jsonl')
            with open(path, 'w', encoding='utf-8') as stream:
                stream.write('\n'.join([good, '', 'junk', bad]) + '\n')
            code, out, err = run('verify', path)
            self.assertEqual(code, 2)
            self.assertEqual(json.loads(out), {'records': '3', 'failures': '2'})
            self.assertIn('line 3:', err)
            self.assertIn('line 4: identity', err)
            with open(path, 'w', encoding='utf-8') as stream:
                stream.write(good + '\n')
            self.assertEqual(run('verify', path)[0], 0)
            self.assertEqual(run('verify', os.path.join(tmp, 'missing.jsonl'))[0], 64)

    def test_i_density_and_hitbox(self):
        code, out, _ = run('density', '--moduli', '3', '3', '3', '--T', '30')
        self.assertEqual((code, out.splitlines()[1]), (0, '30,1000,1000,0'))
        code, out, _ = run('density', '--moduli', '3', '3', '3', '--residues', '1', '1', '1', '--T', '31')
        self.assertEqual(out.splitlines()[1].split(',')[:2], ['31', '1331'])
        self.assertEqual(run('density', '--moduli', '3', '--residues', '5', '--T', '3')[0], 64)
        code, out, _ = run('hitbox', '--trials', '200', '--g-max', '30')
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[1].split(',')[0], '200')
        self.assertTrue(out.splitlines()[1].endswith(',0,0'))

    def test_j_convolve(self):
        code, out, _ = run('convolve', '29', '1', '1', '10')
        data = json.loads(out)
        self.assertEqual((code, data['y'], data['p2'], data['reason']), (0, '3', '13', None))
        self.assertEqual((data['quad']['a'], data['quad']['b'], data['quad']['c']), ('5', '10', '130'))
        code, out, _ = run('convolve', '29', '1', '1', '10', '--policy', '39')
        self.assertEqual(json.loads(out)['reason'], 'P2_not_prime')
        self.assertEqual(run('convolve', '29', '1', '1', '11')[0], 2)
        self.assertEqual(run('convolve', '29', '1', '1', '10', '--policy', 'largest')[0], 64)
        code, out, _ = run('convolve', '29', '1', '1', '10', '--format', 'csv')
        self.assertEqual(out.splitlines()[0], ','.join(report.ROUNDTRIP_HEADER))

    def test_k_anticonvolve(self):
        code, out, _ = run('anticonvolve', '13', '3', '10', '2', '50', '--m', '5', '--o', '7')
        data = json.loads(out)
        self.assertEqual((code, data['a_residue'], data['modulus'], data['d']), (0, '4', '35', '12'))
        self.assertEqual(data['violations'], ['gcd(u, v) = 1', '0 < c < min(m, o)'])
        self.assertFalse(data['canonical'])
        self.assertIsNone(data['triple'])
        self.assertEqual(run('anticonvolve', '13', '3', '10', '2', '50', '--m', '5', '--o', '7', '--strict')[0], 64)
        self.assertEqual(run('anticonvolve', '13', '3', '10', '3', '50', '--m', '5', '--o', '7')[0], 2)

    def test_l_searches(self):
        code, out, _ = run('direct', '5', '--alpha', '1')
        first = json.loads(out.splitlines()[0])
        self.assertEqual((code, first['a'], first['b'], first['c'], first['method']), (0, '2', '5', '10', 'DIRECT'))
        code, complete, _ = run('direct', '29', '--complete')
        code, back, _ = run('back', '29')
        self.assertEqual(denominators(complete), denominators(back))
        self.assertTrue(denominators(back))
        code, out, _ = run('back', '29', '8', '--alpha', '1')
        self.assertEqual({json.loads(line)['a'] for line in out.splitlines()}, {'8'})
        self.assertEqual(run('back', '29', '100')[0], 64)
        self.assertEqual(run('back', '29', '8', '--scan', 'bounded', '--alpha', '1')[0], 0)
        self.assertEqual(run('direct', '9')[0], 64)

    def test_m_enumerations(self):
        code, out, _ = run('ed1', '13', '--gamma-max', '30')
        self.assertEqual(code, 0)
        self.assertEqual([json.loads(line)['a'] for line in out.splitlines()], ['4', '5', '4'])
        code, out, _ = run('ed2', '29', '--delta-max', '10')
        self.assertEqual([json.loads(line)['a'] for line in out.splitlines()], ['10', '8', '8'])
        code, out, _ = run('ed2', '29', '--delta-max', '3', '--counters')
        lines = out.splitlines()
        self.assertEqual(lines[0], 'delta,status,hits,S,U')
        self.assertEqual([line.split(',')[:2] for line in lines[1:]],
                         [['1', 'hit'], ['2', 'no-factor-pair'], ['3', 'no-factor-pair']])
        self.assertEqual(run('ed1', '21')[0], 64)


if __name__ == '__main__':
    unittest.main()
