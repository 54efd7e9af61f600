import os
import random
import unittest

from sympy import divisors as sympy_divisors
from sympy import primerange

import test_straus_ed1
import test_straus_ed2
from straus import Solver, appd, decomp, ed1, ed2, lattice
from straus.tags import Profile

SLOW = unittest.skipUnless(os.environ.get('STRAUS_SLOW'), 'set STRAUS_SLOW=1 for the long runs')


@SLOW
class TestAcceptance(unittest.TestCase):

    def test_a_coverage_below_10000(self):
        summary = Solver().sweep(2, 10000)
        self.assertEqual((summary.exhausted, summary.budget), ([], []))
        for outcome in summary.outcomes:
            for record in outcome.records:
                d = decomp.verify(*record.decomposition.key)
                self.assertTrue(d.ok, record)
                self.assertNotEqual(d.profile.kind, Profile.INVALID)
                self.assertEqual(decomp.classify_multiplicity(d).kind, d.profile.kind)

    def test_b_direct_equals_back(self):
        for P in primerange(5, 500):
            P = int(P)
            for alpha in (1, 2, 3):
                direct = {hit.decomposition.key for hit in appd.direct_search(P, alpha, None, None)}
                low, high = appd.window(P)
                back = set()
                for A in range(low, high + 1):
                    if A % alpha == 0:
                        back.update(hit.decomposition.key for hit in appd.back_search(P, alpha, A))
                self.assertEqual(direct, back, (P, alpha))

    def test_c_ed2_matches_raw_scan(self):
        for P in primerange(5, 301):
            found = {(t.delta, t.b, t.c) for t in ed2.enumerate_ed2(int(P), 50)}
            self.assertEqual(found, test_straus_ed2.raw_scan(int(P), 50), P)

    def test_d_ed1_matches_raw_scan(self):
        for P in primerange(5, 201):
            if P % 4 != 1:
                continue
            found = {q.decomposition.key for q in ed1.enumerate_ed1(int(P), 60)}
            self.assertEqual(found, test_straus_ed1.raw_scan(int(P), 60), P)

    def test_e_quadratic_roots(self):
        rng = random.Random(4)
        for M in range(1, 10001):
            for d in sympy_divisors(M):
                if d * d <= M:
                    self.assertEqual(appd.quadratic_roots(d + M // d, M), (M // d, d))
            S = rng.randint(1, 2 * M + 1)
            roots = appd.quadratic_roots(S, M)
            if roots is not None:
                self.assertEqual((sum(roots), roots[0] * roots[1]), (S, M))

    def test_f_density(self):
        rng = random.Random(100)
        for _ in range(100):
            k = rng.randint(1, 3)
            moduli = tuple(rng.randint(1, 30) for _ in range(k))
            lat = lattice.AffineLattice(moduli, tuple(rng.randrange(m) for m in moduli))
            rows = lattice.density_experiment(lat, [rng.randint(1, 200) for _ in range(5)])
            self.assertEqual(len(rows), 5)

    def test_g_hit_box(self):
        for seed in range(5):
            summary = lattice.hit_box_trials(1000, 200, seed=seed)
            self.assertEqual((summary.failures, summary.misses), (0, 0))


if __name__ == '__main__':
    unittest.main()
