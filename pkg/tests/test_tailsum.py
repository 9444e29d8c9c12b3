import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from baireshift.automata import full_space
from baireshift.engine import ConstraintSet, baire_witness
from baireshift.tailsum import (
    InvalidOpenSet,
    NotZeroAdherent,
    NoWindow,
    WindowRecord,
    challenge_from_open_set,
    corollary_demo,
    find_window,
    hits_in_U,
    open_set,
    tail_sum,
    window,
)
from baireshift.words import BINARY, extends, up
from oracles import random_up_word, truncated_tail

HALF = Fraction(1, 2)


def test_tail_sum_examples():
    assert tail_sum(up([1, 1], [0]), 3) == 0
    assert all(tail_sum(up([], [0]), n) == 0 for n in range(5))
    assert all(tail_sum(up([], [1]), n) == Fraction(2, 2**n) for n in range(20))
    g = up([], [1, 0])
    assert [tail_sum(g, n) for n in range(3)] == [Fraction(4, 3), Fraction(1, 3), Fraction(1, 3)]


def test_tail_sum_against_truncation():
    rng = random.Random(1)
    for _ in range(100):
        g = random_up_word(rng, 2)
        n, K = rng.randrange(10), 60
        t = tail_sum(g, n)
        s = truncated_tail(g, n, K)
        assert s <= t <= s + Fraction(2, 2**K)


@given(st.lists(st.integers(0, 1), max_size=6), st.lists(st.integers(0, 1), min_size=1, max_size=5),
       st.integers(0, 30))
def test_tail_sum_recurrence_and_bounds(prefix, period, n):
    g = up(prefix, period)
    t = tail_sum(g, n)
    assert t == Fraction(g[n], 2**n) + tail_sum(g, n + 1)
    assert 0 <= t <= Fraction(2, 2**n)
    assert (t == Fraction(2, 2**n)) == (tail_sum(g, n) == tail_sum(up([], [1]), n) and
                                       all(g[k] == 1 for k in range(n, n + len(prefix) + len(period) + 1)))


@given(st.lists(st.integers(0, 1), min_size=1, max_size=5), st.integers(0, 20))
def test_tail_sum_scaling(period, n):
    g = up([], period)
    p = len(g.period)
    assert tail_sum(g, n + p) == tail_sum(g, n) / 2**p


def test_open_set_validation():
    with pytest.raises(InvalidOpenSet):
        open_set([(0, 2)], 1)
    with pytest.raises(InvalidOpenSet):
        open_set([(0, HALF), (Fraction(1, 4), 1)], 1)
    with pytest.raises(InvalidOpenSet):
        open_set([(0, 1)], 0)
    U = open_set([(Fraction(1, 3), HALF), (0, Fraction(1, 8))], 1)
    assert U.zero_adherent and U.intervals[0][0] == 0


def test_hits_in_U_examples():
    U = open_set([(0, HALF)], 1)
    th = hits_in_U(up([], [1, 0]), U, 4)
    assert th.hits == (1, 2, 3, 4) and th.infinitely_often
    assert th.values == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 12), Fraction(1, 12))

    th = hits_in_U(up([], [0]), U, 20)
    assert th.hits == () and not th.infinitely_often

    th = hits_in_U(up([], [1]), open_set([(Fraction(1, 5), Fraction(1, 4))], 1), 128)
    # t_n = 2^(1-n) never lands strictly inside (1/5, 1/4)
    assert th.hits == () and not th.infinitely_often
    th = hits_in_U(up([], [1]), open_set([(Fraction(1, 5), Fraction(3, 10))], 1), 128)
    assert th.hits == (3,) and not th.infinitely_often


def test_hits_in_U_decision_vs_enumeration():
    rng = random.Random(2)
    sets = [
        open_set([(0, HALF)], 1),
        open_set([(Fraction(1, 7), Fraction(1, 3))], 1),
        open_set([(0, Fraction(1, 100)), (Fraction(1, 5), Fraction(2, 5))], 1),
        open_set([(Fraction(1, 1000), Fraction(2, 1))], 2),
    ]
    for _ in range(60):
        g = random_up_word(rng, 2)
        for U in sets:
            th = hits_in_U(g, U, 128)
            late = [n for n in th.hits if n > 64]
            assert th.infinitely_often == bool(late)


def test_find_window_examples():
    rec = find_window(3, open_set([(0, HALF)], 1), 4)
    assert rec.word == (1,)
    assert rec.window == (Fraction(1, 8), Fraction(1, 4))
    # exhaustive shortlex oracle over words of length <= 3 at i = 0, U = (0, 1)
    U = open_set([(0, 1)], 1)
    import itertools
    first = next(w for L in range(4) for w in itertools.product(range(2), repeat=L)
                 if 0 < window(0, w)[0] and window(0, w)[1] < 1)
    assert find_window(0, U, 3).word == first == (0, 0, 1)
    with pytest.raises(NoWindow):
        find_window(0, U, 2)
    with pytest.raises(NoWindow):
        find_window(10, open_set([(Fraction(1, 5), Fraction(1, 4))], 1), 12)


def test_find_window_shortlex_random():
    import itertools
    rng = random.Random(5)
    for _ in range(40):
        a = Fraction(rng.randrange(0, 50), 100)
        b = a + Fraction(rng.randrange(1, 40), 100)
        U = open_set([(a, b)], 2)
        i = rng.randrange(3)
        expected = None
        for L in range(7):
            for w in itertools.product(range(2), repeat=L):
                lo, hi = window(i, w)
                if a < lo and hi < b:
                    expected = w
                    break
            if expected is not None:
                break
        if expected is None:
            with pytest.raises(NoWindow):
                find_window(i, U, 6)
        else:
            assert find_window(i, U, 6).word == expected


def test_window_soundness_random_suffixes():
    rng = random.Random(3)
    U = open_set([(0, Fraction(1, 3)), (Fraction(1, 2), Fraction(3, 4))], 1)
    f, cert = challenge_from_open_set(U, [0, 1, 2, 4, 7], 8)
    assert cert.valid()
    for r in cert.records:
        for _ in range(30):
            suffix = [rng.randrange(2) for _ in range(32)]
            pre = [rng.randrange(2) for _ in range(r.index)]
            g = up(pre + list(r.word) + suffix, [rng.randrange(2)])
            assert extends(g, r.index, r.word)
            t = tail_sum(g, r.index)
            assert r.interval[0] < t < r.interval[1]


def test_challenge_from_open_set_errors():
    with pytest.raises(NotZeroAdherent):
        challenge_from_open_set(open_set([(Fraction(1, 5), Fraction(1, 4))], 1), [3], 8)
    with pytest.raises(NoWindow):
        challenge_from_open_set(open_set([(0, HALF), (Fraction(3, 5), Fraction(2, 3))], 1), [0], 1)


def test_certificate_tamper_detected():
    U = open_set([(0, HALF)], 1)
    _, cert = challenge_from_open_set(U, (2, 4), 16)
    r = cert.records[0]
    eps = Fraction(1, 2**40)
    for k in (0, 1):
        for d in (eps, -eps):
            win = list(r.window)
            win[k] += d
            assert not WindowRecord(r.index, r.word, tuple(win), r.interval).valid()


def test_open_set_pipeline():
    U = open_set([(0, HALF)], 1)
    f, cert = challenge_from_open_set(U, (2, 4), 16)
    assert cert.valid() and f.tail == (2, 4) and f[2] == (0, 1)
    bw = baire_witness(f, ConstraintSet(full_space(BINARY), ()), pad=0)
    th = hits_in_U(bw.word, U, 64)
    assert th.infinitely_often
    assert all(i in th.hits for i in bw.consumed)


def test_corollary_demo():
    d = corollary_demo(open_set([(0, HALF)], 1), 2, 4)
    assert d["infinitely_often"] and d["infinitely_many_ones"] and d["certificate_valid"]
    assert not d["missing"]
    small = open_set([(0, Fraction(1, 32))], 1)
    d = corollary_demo(small, 8, 1)
    assert d["certificate_valid"] and d["infinitely_often"]
    with pytest.raises(NotZeroAdherent):
        corollary_demo(open_set([(Fraction(1, 5), Fraction(1, 4))], 1), 0, 1)
