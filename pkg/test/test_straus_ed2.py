import unittest
from fractions import Fraction
from unittest import mock

from sympy import primerange

from straus import arith, ed2
from straus.exceptions import BudgetExceededException, DomainException
from straus.tags import Check, DeltaStatus, Method

def raw_scan(P, delta_max):
    """(delta, b, c) of the solutions A <= bP <= cP with delta = bc/A <= delta_max, read off 4/P = 1/A + 1/(bP) + 1/(cP)."""
    keys = set()
    for A in range(P // 4 + 1, 3 * P // 4 + 1):
        m = 4 * A - P
        for b in range(A // m + 1, 2 * A // m + 1):
            den = m * b - A
            if (A * b) % den:
                continue
            c = A * b // den
            if c < b or A > b * P or (b * c) % A or b * c // A > delta_max:
                continue
            if Fraction(4, P) == Fraction(1, A) + Fraction(1, b * P) + Fraction(1, c * P):
                keys.add((b * c // A, b, c))
    return keys

class TestEd2(unittest.TestCase):

    def test_a_split_delta(self):
        self.assertEqual(ed2.split_delta(9), (1, 3))
        self.assertEqual(ed2.split_delta(98), (2, 7))
        self.assertEqual(ed2.split_delta(650), (26, 5))
        self.assertEqual(ed2.split_delta(1), (1, 1))
        with self.assertRaises(DomainException):
            ed2.split_delta(0)

    def test_b_small_primes(self):
        triples = ed2.enumerate_ed2(29, 10)
        self.assertEqual([t.delta for t in triples], [1, 4, 9])
        self.assertEqual([t.decomposition.key for t in triples],
                         [(29, 10, 29, 290), (29, 8, 116, 232), (29, 8, 87, 696)])
        triples = ed2.enumerate_ed2(53, 10)
        self.assertEqual([t.delta for t in triples], [1, 7, 9])
        self.assertEqual([t.decomposition.denominators for t in triples],
                         [(18, 53, 954), (14, 371, 742), (14, 318, 1113)])
        self.assertEqual(ed2.enumerate_ed2(5, 1)[0].decomposition.key, (5, 2, 5, 10))

    def test_c_split_example(self):
        t = ed2.enumerate_ed2(29, 10)[1]
        self.assertEqual((t.alpha, t.dprime, t.b, t.c), (1, 2, 4, 8))
        self.assertEqual((t.bprime, t.cprime), (2, 4))
        self.assertFalse(t.primitive)

    def test_d_table_2521(self):
        triples = ed2.enumerate_ed2(2521, 300)
        self.assertEqual([t.delta for t in triples], [9, 11, 98])
        first = triples[0]
        self.assertEqual((first.b, first.c, first.X, first.Y, first.N), (12, 483, 47, 1931, 90757))
        self.assertEqual((first.alpha, first.dprime, first.g, first.bprime, first.cprime), (1, 3, 3, 4, 161))
        self.assertEqual(first.decomposition.denominators, (644, 30252, 1217643))
        self.assertEqual(first.X * first.Y, first.N)
        self.assertEqual((triples[1].b, triples[1].c), (22, 319))
        self.assertEqual((triples[2].b, triples[2].c, triples[2].A), (28, 2226, 636))
        self.assertEqual(triples[0].decomposition.method, Method.ED2)

    def test_e_table_3529(self):
        triples = ed2.enumerate_ed2(3529, 650)
        self.assertEqual([t.delta for t in triples], [1, 4, 20, 50, 117, 169, 272, 650])
        self.assertEqual(triples[0].decomposition.denominators, (930, 17645, 656394))
        by_delta = {t.delta: t for t in triples}
        self.assertEqual((by_delta[20].b, by_delta[20].c), (10, 1810))
        self.assertEqual(by_delta[117].c, 663)
        self.assertEqual((by_delta[272].bprime, by_delta[272].cprime), (2, 26))
        self.assertFalse(by_delta[272].primitive)
        for t in triples:
            self.assertEqual(t.X * t.Y, t.N)

    def test_f_sweep_stops(self):
        result = ed2.sweep_delta(29, 10, 1)
        self.assertEqual([t.decomposition.key for t in result.triples], [(29, 10, 29, 290)])
        self.assertTrue(result.stopped_early)
        result = ed2.sweep_delta(29, 10)
        self.assertEqual([(t.b, t.c) for t in result.triples], [(1, 10), (4, 8)])
        self.assertEqual(result.diagnostics[1].status, DeltaStatus.NO_FACTOR_PAIR)
        with self.assertRaises(DomainException):
            ed2.sweep_delta(29, 0)

    def test_g_sweep_skips_budget(self):
        factorize = arith.factorize

        def limited(n, *args, **kwargs):
            if n == 2:
                raise BudgetExceededException('spent', 2)
            return factorize(n, *args, **kwargs)

        with mock.patch('straus.arith.factorize', side_effect=limited):
            with self.assertLogs('straus.ed2', level='WARNING'):
                result = ed2.sweep_delta(29, 10, None)
        self.assertEqual(result.budget_exceeded, [2])
        self.assertEqual([t.delta for t in result.triples], [1, 4, 9])

    def test_h_counters(self):
        counters = ed2.progression_counters(29, 4)
        self.assertEqual((counters.X, counters.S, counters.U), (5, 5, 2))
        result = ed2.sweep_delta(29, 4, None, counters=True)
        self.assertEqual(result.diagnostics[3].counters, counters)

    def test_i_rejections(self):
        self.assertEqual(ed2.triple_from(9, 12, 484, 2521).check, Check.ED2_RELATION)
        self.assertEqual(ed2.triple_from(9, 483, 12, 2521).check, Check.ORDERING)
        self.assertEqual(ed2.triple_from(4, 1, 39, 29).check, Check.DIVISIBILITY)
        self.assertEqual(ed2.triple_from(9, 12, 483, 2521, alpha=9, dprime=1).check, Check.SPLIT)
        self.assertEqual(ed2.triple_from(0, 12, 483, 2521).check, Check.POSITIVE)

    def test_j_tk(self):
        pair = ed2.tk_parameterize(29, 1, 2)
        self.assertEqual((pair.D, pair.delta, pair.a), (1, 30, 59))
        self.assertIsNone(ed2.tk_parameterize(29, 2, 2))
        self.assertEqual([(p.t, p.k) for p in ed2.enumerate_tk(29, 2, 2)], [(1, 2), (2, 1)])
        with self.assertRaises(DomainException):
            ed2.tk_parameterize(29, 1, 1)

    def test_k_normalize_pair(self):
        pair = ed2.normalize_pair(12, 483, 1)
        self.assertEqual((pair.d, pair.dprime, pair.bprime, pair.cprime, pair.coprime), (3, 3, 4, 161, True))
        pair = ed2.normalize_pair(4, 8, 1)
        self.assertEqual((pair.bprime, pair.cprime, pair.coprime), (1, 2, True))
        with self.assertRaises(DomainException):
            ed2.normalize_pair(6, 9, 2)

    def test_l_default_delta_max(self):
        self.assertEqual(ed2.default_delta_max(5), 64)
        self.assertEqual(ed2.default_delta_max(29), 125)
        self.assertEqual(ed2.default_delta_max(2521), 1728)

    def test_m_matches_raw_scan(self):
        for P in primerange(5, 300):
            found = {(t.delta, t.b, t.c) for t in ed2.enumerate_ed2(P, 60)}
            self.assertEqual(found, raw_scan(P, 60), P)

    def test_n_tk_invariants(self):
        count = 0
        for P in primerange(5, 400):
            for pair in ed2.enumerate_tk(P, 12, 12):
                count += 1
                self.assertEqual(pair.a % pair.delta, (-1) % pair.delta, pair)
                self.assertEqual((P + pair.delta) % pair.a, 0, pair)
                self.assertEqual(P + pair.delta, pair.t * pair.a)
        self.assertGreater(count, 100)

if __name__ == '__main__':
    unittest.main()
