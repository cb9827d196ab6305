import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ternary_cyclic.cosets import coset, coset_leaders, coset_size_predicted, same_coset


class TestCoset:
    def test_zero(self):
        for m in range(1, 6):
            c = coset(0, m)
            assert c.members == (0,) and c.size == 1

    def test_orbit_of_one(self):
        assert coset(1, 4).members == (1, 3, 9, 27)

    def test_short_orbit(self):
        c = coset(50, 4)
        assert c.size == 2 and set(c.members) == {50, 70}
        assert c.leader == 50

    def test_reduces_mod_n(self):
        assert coset(81, 4) == coset(1, 4)

    def test_bad_m(self):
        with pytest.raises(ValueError):
            coset(1, 0)

    @pytest.mark.parametrize("m", range(1, 9))
    def test_partition_and_size_divides_m(self, m):
        n = 3**m - 1
        seen = []
        for lead in coset_leaders(m):
            c = coset(lead, m)
            assert c.leader == lead == min(c.members)
            assert m % c.size == 0
            orbit = [lead * 3**r % n for r in range(c.size)]
            assert len(set(orbit)) == c.size and set(orbit) == set(c.members)
            seen.extend(c.members)
        assert sorted(seen) == list(range(n))


class TestSameCoset:
    def test_examples(self):
        for m in range(2, 8):
            assert same_coset(1, 3, m)
        assert not same_coset(3362, 82, 8)
        assert not any(same_coset(50, 10 * 3**i, 4) for i in range(4))

    @given(st.integers(1, 6), st.data())
    def test_equivalence_relation(self, m, data):
        n = 3**m - 1
        a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
        assert same_coset(a, a, m)
        assert same_coset(a, b, m) == same_coset(b, a, m)
        if same_coset(a, b, m) and same_coset(b, c, m):
            assert same_coset(a, c, m)
        assert same_coset(a, a * 3, m)


class TestPrediction:
    def test_examples(self):
        for m in (3, 5, 7):
            for k in range(1, m):
                assert coset_size_predicted(3**k + 1, m)[0] == m
        for m in (4, 6, 8):
            assert coset_size_predicted(3 ** (m // 2) + 1, m) == (m // 2, "3^k+1")
        assert coset_size_predicted(2, 4) == (4, "gcd")

    def test_unknown(self):
        # 40 = n/2 has a coset of size 1 and no rule claims it
        assert coset_size_predicted(40, 4) is None
        assert coset_size_predicted(0, 4) is None

    @pytest.mark.parametrize("m", range(1, 9))
    def test_predictions_exhaustive(self, m):
        n = 3**m - 1
        hits = 0
        for e in range(1, n):
            pred = coset_size_predicted(e, m)
            if pred is not None:
                hits += 1
                assert pred[0] == coset(e, m).size, (e, m, pred)
        assert hits > 0


def test_random_members_share_leader():
    rng = random.Random(5)
    for _ in range(200):
        m = rng.randint(2, 10)
        j = rng.randrange(3**m - 1)
        c = coset(j, m)
        assert all(coset(x, m).leader == c.leader for x in c.members)
