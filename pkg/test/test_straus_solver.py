import io
import json
import logging
import unittest
from unittest import mock

from sympy import primerange

from straus import SolveConfig, Solver, decomp, ed2, solver
from straus.exceptions import (BudgetExceededException, DomainException,
                               RecordFormatException, VerificationException)
from straus.records import ResultRecord, parse_record, read_records, write_records
from straus.strategies import Strategies
from straus.tags import Method, Status, Strategy


class TestSolveConfig(unittest.TestCase):

    def test_a_defaults(self):
        config = SolveConfig()
        self.assertEqual(config.strategies, Strategy.DEFAULT)
        self.assertEqual((config.stop_after, config.workers, config.fmt), (2, 1, 'jsonl'))
        self.assertEqual(config.delta_max_for(2521), 1728)
        self.assertEqual(config.gamma_max_for(2521), 47)
        self.assertEqual(SolveConfig(delta_max=10).delta_max_for(2521), 10)

    def test_b_from_env(self):
        self.assertEqual(SolveConfig.from_env({'ESD_BUDGET': '7'}, budget=100).budget, 7)
        self.assertEqual(SolveConfig.from_env({}, budget=100).budget, 100)
        self.assertEqual(SolveConfig.from_env({'ESD_BUDGET': ''}).budget, SolveConfig().budget)
        with self.assertRaises(DomainException):
            SolveConfig.from_env({'ESD_BUDGET': 'lots'})
        with self.assertRaises(DomainException):
            SolveConfig.from_env({}, colour='red')

    def test_c_validation(self):
        for bad in ({'stop_after': 0}, {'budget': 0}, {'strategies': ('magic',)}, {'strategies': ()},
                    {'alphas': ()}, {'fmt': 'xml'}, {'delta_max': 0}, {'P_range': (1, 10)}):
            with self.assertRaises(DomainException, msg=bad):
                SolveConfig(**bad)

    def test_d_replace(self):
        config = SolveConfig()
        changed = config.replace(workers=3)
        self.assertEqual((config.workers, changed.workers), (1, 3))
        with self.assertRaises(DomainException):
            config.replace(workers=0)


class TestResultRecord(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.d = decomp.verified(7, 2, 28, 28, Method.EXPLICIT_3MOD4, {'k': 1})
        cls.record = ResultRecord(cls.d, Strategy.EXPLICIT, 0.5, {'delta_max': 64})

    def test_a_properties(self):
        self.assertEqual(self.record.P, 7)
        self.assertEqual(self.record.denominators, (2, 28, 28))
        self.assertEqual(self.record.method, Method.EXPLICIT_3MOD4)
        self.assertEqual(self.record.strategy, Strategy.EXPLICIT)
        self.assertEqual(self.record.elapsed, 0.5)
        self.assertIn('P="7"', repr(self.record))

    def test_b_to_dict(self):
        data = self.record.to_dict()
        self.assertEqual((data['p'], data['a'], data['b'], data['c']), ('7', '2', '28', '28'))
        self.assertEqual(data['params'], {'k': '1'})
        self.assertEqual(data['diagnostics'], {'delta_max': '64'})
        self.assertNotIn('elapsed', data)
        self.assertEqual(self.record.to_dict(timing=True)['elapsed'], '0.500000')
        self.assertNotIn(' ', self.record.to_json())

    def test_c_from_json(self):
        self.assertEqual(ResultRecord.from_json(self.record.to_json()), self.record)
        with self.assertRaises(VerificationException):
            ResultRecord.from_json('{"p":"7","a":"2","b":"28","c":"29"}')
        with self.assertRaises(RecordFormatException):
            ResultRecord.from_json('{"p":"7"}')

    def test_d_parse_record(self):
        parsed = parse_record('{"p":"7","a":"2","b":"21","c":"42"}')
        self.assertEqual((parsed['p'], parsed['a'], parsed['b'], parsed['c']), (7, 2, 21, 42))
        self.assertEqual((parsed['method'], parsed['params'], parsed['strategy']), ('', {}, ''))
        for text in ('not json', '[]', '{"p":"7","a":"2","b":"21"}', '{"p":7,"a":"2","b":"21","c":"42"}',
                     '{"p":"7","a":"-2","b":"21","c":"42"}', '{"p":"7","a":"2","b":"21","c":"42","params":[]}'):
            with self.assertRaises(RecordFormatException, msg=text):
                parse_record(text)

    def test_e_read_write(self):
        stream = io.StringIO()
        self.assertEqual(write_records([self.record, self.record], stream), 2)
        lines = ['\n'] + stream.getvalue().splitlines() + ['junk']
        parsed = list(read_records(lines))
        self.assertEqual([number for number, _ in parsed], [2, 3, 4])
        self.assertEqual(parsed[0][1]['c'], 28)
        self.assertIsInstance(parsed[2][1], RecordFormatException)


class TestSolver(unittest.TestCase):

    def test_a_solve_3mod4(self):
        outcome = Solver().solve(7)
        self.assertEqual(outcome.status, Status.SOLVED)
        self.assertEqual([r.denominators for r in outcome.records], [(2, 28, 28), (2, 21, 42)])
        self.assertEqual({r.strategy for r in outcome.records}, {Strategy.EXPLICIT})

    def test_b_solve_1mod4(self):
        outcome = Solver().solve(2521)
        self.assertEqual([r.denominators for r in outcome.records], [(644, 30252, 1217643), (638, 55462, 804199)])
        self.assertEqual(outcome.records[0].strategy, Strategy.ED2)
        self.assertEqual(outcome.bounds[Strategy.ED2]['delta_max'], 1728)
        self.assertNotIn(Strategy.DIRECT, outcome.bounds)

    def test_c_solve_small(self):
        outcome = Solver().solve(2)
        self.assertEqual((outcome.status, outcome.solved), (Status.SOLVED, 1))
        self.assertEqual(Solver().solve(3).solved, 1)
        with self.assertRaises(DomainException):
            Solver().solve(4)
        with self.assertRaises(DomainException):
            Solver().solve()
        self.assertEqual(Solver(SolveConfig(P=13)).solve().P, 13)

    def test_d_strategy_order(self):
        outcome = Solver(SolveConfig(strategies=(Strategy.BACK, Strategy.ED2), stop_after=3)).solve(2521)
        self.assertEqual(outcome.solved, 3)
        self.assertEqual([r.denominators for r in outcome.records],
                         [(636, 70588, 5611746), (644, 30252, 1217643), (638, 55462, 804199)])
        self.assertEqual([r.strategy for r in outcome.records], [Strategy.BACK, Strategy.BACK, Strategy.ED2])
        self.assertEqual(outcome.records[0].method, Method.BACK)
        keys = [r.decomposition.key for r in outcome.records]
        self.assertEqual(len(keys), len(set(keys)))

    def test_e_exhausted(self):
        with self.assertLogs('straus.solver', level='WARNING'):
            outcome = Solver(SolveConfig(strategies=(Strategy.EXPLICIT,))).solve(13)
        self.assertEqual((outcome.status, outcome.records), (Status.EXHAUSTED, []))

    def test_f_budget(self):
        error = BudgetExceededException('out of steps', 1234567, {}, (1234567,))
        with mock.patch('straus.ed1.enumerate_ed1', side_effect=error):
            with self.assertLogs('straus.strategies', level='WARNING'):
                outcome = Solver(SolveConfig(strategies=(Strategy.ED1,))).solve(13)
        self.assertEqual(outcome.status, Status.BUDGET)
        self.assertEqual(outcome.bounds[Strategy.ED1]['budget_exceeded'], 'out of steps')

    def test_g_dev_logging(self):
        with self.assertLogs('straus.solver', level='DEBUG') as logs:
            Solver(dev=True).solve(7)
        self.assertTrue(any("'explicit'" in line for line in logs.output))

    def test_h_sweep(self):
        summary = Solver().sweep(5, 100)
        primes = [int(P) for P in primerange(5, 101)]
        self.assertEqual([o.P for o in summary.outcomes], primes)
        self.assertEqual((summary.exhausted, summary.budget), ([], []))
        self.assertEqual(summary.solved, primes)
        for record in summary.records:
            self.assertTrue(decomp.verify(*record.decomposition.key).ok)
        self.assertEqual(Solver().sweep(90, 96).outcomes, [])
        with self.assertRaises(DomainException):
            Solver().sweep(1, 10)
        with self.assertRaises(DomainException):
            Solver().sweep()
        self.assertEqual(len(Solver(SolveConfig(P_range=(2, 11))).sweep().outcomes), 5)

    def test_i_sweep_workers(self):
        sequential = Solver().sweep(5, 200)
        parallel = Solver(SolveConfig(workers=2)).sweep(5, 200)
        self.assertEqual([o.P for o in parallel.outcomes], [o.P for o in sequential.outcomes])
        self.assertEqual([r.to_json() for r in parallel.records], [r.to_json() for r in sequential.records])

    def test_j_dev_logging_is_scoped(self):
        package_logger = logging.getLogger('straus')
        previous = package_logger.level
        Solver(dev=True).solve(7)
        self.assertEqual(package_logger.level, previous)
        with self.assertLogs('straus.solver', level='DEBUG') as logs:
            solver._solve_one((SolveConfig(), 7, True))
        self.assertTrue(any("'explicit'" in line for line in logs.output))
        self.assertEqual(package_logger.level, previous)


class TestStrategies(unittest.TestCase):

    def test_a_execute(self):
        strategies = Strategies()
        outcome = strategies.execute(Strategy.DIRECT, 5, 1)
        self.assertEqual(len(outcome.decompositions), 1)
        self.assertGreaterEqual(outcome.elapsed, 0)
        self.assertEqual(strategies.execute(Strategy.ED1, 3).decompositions, [])
        self.assertEqual(strategies.execute(Strategy.EXPLICIT, 13).decompositions, [])
        with self.assertRaises(DomainException):
            strategies.execute('guess', 13)

    def test_b_limits(self):
        self.assertEqual([d.A for d in Strategies(SolveConfig(alphas=(1,))).execute(Strategy.BACK, 2521).decompositions], [644])
        strategies = Strategies(SolveConfig(alphas=(1, 2)))
        self.assertEqual([d.A for d in strategies.execute(Strategy.BACK, 2521, 1).decompositions], [636])
        self.assertEqual([d.A for d in strategies.execute(Strategy.BACK, 2521).decompositions], [636, 644])
        outcome = strategies.execute(Strategy.ED2, 2521)
        self.assertEqual([d.A for d in outcome.decompositions], [644, 638, 636])
        self.assertEqual(json.loads(json.dumps(outcome.diagnostics)), {'delta_max': 1728})

    def test_c_known_keys_do_not_count(self):
        strategies = Strategies()
        first = strategies.execute(Strategy.ED2, 2521, 1).decompositions[0]
        self.assertEqual(first.key, (2521, 644, 30252, 1217643))
        outcome = strategies.execute(Strategy.ED2, 2521, 1, known={first.key})
        self.assertEqual([d.denominators for d in outcome.decompositions], [(638, 55462, 804199)])
        back = strategies.execute(Strategy.BACK, 2521, 1, known={(2521, 636, 70588, 5611746)})
        self.assertEqual([d.A for d in back.decompositions], [644])
        sweep = ed2.sweep_delta(2521, 100, 2, skip={first.key})
        self.assertEqual([t.delta for t in sweep.triples], [11, 98])
        self.assertEqual((sweep.diagnostics[8].delta, sweep.diagnostics[8].hits), (9, 1))


if __name__ == '__main__':
    unittest.main()
