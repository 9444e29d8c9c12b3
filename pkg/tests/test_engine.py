import itertools
import random

import pytest

from baireshift import automata as au
from baireshift.challenges import hit_set, schedule
from baireshift.engine import (
    ConstraintSet,
    InvalidConstraint,
    NoChallengeBeyond,
    NotNowhereDense,
    ScheduleTooSparse,
    baire_witness,
    build_defeating_challenge,
    challenge_from_evader,
    defeating_challenge,
    dense_extension,
    normalize_presentation,
    verify_defeat,
)
from baireshift.game import run_star_game
from baireshift.words import BINARY, extends, up
from corpus import (
    ALT,
    EMPTY,
    FULL,
    NO_11,
    ONES,
    ZEROS,
    cyl,
    presentation_corpus,
    random_nwd_layers,
    zeros_from,
)
from oracles import all_up_words, random_up_word, simulate_contains

SMALL_WORDS = list(all_up_words(2, 6))


def test_normalize_examples():
    P = normalize_presentation([ZEROS, ONES])
    assert au.equivalent(P.layers[0], ZEROS)
    assert au.equivalent(P.layers[1], au.union(ZEROS, ONES))
    assert P.layer(7) is P.layers[1]
    with pytest.raises(NotNowhereDense) as exc:
        normalize_presentation([FULL])
    assert exc.value.layer == 0 and exc.value.witness == ()


def test_normalize_random_triples():
    for seed in range(5):
        layers = random_nwd_layers(seed, 3)
        try:
            P = normalize_presentation(layers)
        except NotNowhereDense:
            continue
        for j, Y in enumerate(P.layers):
            assert au.is_nowhere_dense(Y).nowhere_dense
            if j:
                assert au.subset_of(P.layers[j - 1], Y)


def assert_star_star(P, f, horizon):
    """Every small UP-word taking f(i) at i lies outside Y_i (simulation oracle)."""
    for i in f.indices(horizon):
        Y = P.layer(i)
        for w in SMALL_WORDS:
            if extends(w, i, f[i]):
                assert not simulate_contains(Y, w), (i, w)


def test_defeat_zeros_from_i():
    P = normalize_presentation([zeros_from(0), zeros_from(1), zeros_from(2)])
    f = build_defeating_challenge(P, 12)
    assert f.entries == {0: (1,), 1: (1,), 2: (1,)}
    assert f.tail == (2, 1)
    assert all(f[i] == (1,) for i in range(40))
    assert_star_star(P, f, 12)
    # depth-12 words carrying the 1 at position i already leave Y_i
    for i in range(12):
        Y = au.prune(P.layer(i))
        for x in itertools.product(range(2), repeat=12):
            if x[i] == 1:
                assert Y.run(x) is None


def test_defeat_singleton_and_empty():
    f = build_defeating_challenge(normalize_presentation([ZEROS]), 16)
    assert f.entries == {0: (1,)} and f.tail == (0, 1)
    assert_star_star(normalize_presentation([ZEROS]), f, 16)
    f = build_defeating_challenge(normalize_presentation([EMPTY]), 16)
    assert f.entries == {0: ()} and f.tail == (0, 1)


def test_defeat_period_two_tail():
    # shifts of {(01)^w} alternate, so the schedule closes with period 2
    P = normalize_presentation([ALT])
    f = build_defeating_challenge(P, 16)
    assert f.tail == (0, 2)
    assert f.entries == {0: (1,), 1: (0,)}
    assert_star_star(P, f, 16)


def test_defeat_short_horizon_stays_finite():
    P = normalize_presentation([zeros_from(0), zeros_from(1), zeros_from(2)])
    f = build_defeating_challenge(P, 1)
    assert f.is_finite and list(f.entries) == [0, 1]


def test_defeat_challenge_misses_shifted_layers():
    for P in presentation_corpus():
        dc = defeating_challenge(P, 16)
        for i, u in dc.schedule.entries.items():
            assert au.equivalent(dc.images[i], au.shift_image_n(P.layer(i), i))
            assert au.is_empty(au.intersection(au.cylinder_automaton(u, BINARY), dc.images[i]))


def test_verify_defeat_examples():
    P = normalize_presentation([ZEROS])
    f = build_defeating_challenge(P, 16)
    r = verify_defeat(P, f, up([], [0]), 16)
    assert r.passed and r.records == () and r.in_union
    r = verify_defeat(P, f, up([], [0, 1]), 16)
    assert r.passed and [x.index for x in r.records] == list(range(1, 17, 2))
    assert all(x.ok for x in r.records)


def test_verify_defeat_flags_a_bad_schedule():
    P = normalize_presentation([ZEROS])
    bogus = schedule({0: [0]}, tail=(0, 1))
    r = verify_defeat(P, bogus, up([], [0]), 8)
    assert not r.passed
    assert not r.tail_ok


def test_verify_defeat_random():
    rng = random.Random(3)
    corpus = presentation_corpus()
    for _ in range(100):
        P = rng.choice(corpus)
        f = build_defeating_challenge(P, 16)
        assert verify_defeat(P, f, random_up_word(rng, 2), 16).passed


def test_dense_extension_examples():
    f = schedule({5: [1, 1, 0]})
    u = dense_extension((0, 1), 3, f, 0)
    assert u == (0, 1, 0, 0, 0, 1, 1, 0)
    # every depth-10 continuation takes f(5) at 5
    for tail in itertools.product(range(2), repeat=10 - len(u)):
        x = u + tail
        assert x[5:8] == (1, 1, 0)
    assert dense_extension((), 0, schedule({1: [1]}), 0) == (0, 1)
    with pytest.raises(NoChallengeBeyond):
        dense_extension((1,), 0, schedule({0: [1]}), 0)


def test_baire_witness_examples():
    f = schedule({0: [1]}, tail=(0, 1))
    bw = baire_witness(f, ConstraintSet(cyl(1), (1,)), pad=1)
    assert bw.word == up([], [1])
    assert bw.hits.indices == tuple(range(bw.hits.horizon + 1))
    assert (bw.hits.certificate.start, bw.hits.certificate.stride) == (0, 1)

    f = schedule({0: [0, 1], 3: [1, 1]})
    bw = baire_witness(f, ConstraintSet(FULL, ()), pad=0)
    assert bw.word == up([0, 1, 0, 1, 1], [0])
    assert hit_set(bw.word, f, 8).indices == (0, 3)
    assert bw.consumed == (0, 3)

    f = schedule({0: [1]}, tail=(0, 1))
    C = ConstraintSet(cyl(0, 0), (0, 0))
    bw = baire_witness(f, C, pad=0)
    assert bw.word == up([0, 0], [1])
    assert au.contains(C.automaton, bw.word) and bw.hits.infinite


def test_baire_witness_errors():
    with pytest.raises(ScheduleTooSparse):
        baire_witness(schedule({0: [1]}), ConstraintSet(cyl(0, 0), (0, 0)))
    with pytest.raises(InvalidConstraint):
        ConstraintSet(NO_11, (0,))


def test_baire_witness_long_words_use_wider_stride():
    f = schedule({0: [1, 1, 1]}, tail=(0, 2))
    bw = baire_witness(f, ConstraintSet(FULL, ()))
    assert bw.consumed == (0, 4, 8)
    assert bw.hits.infinite
    c = bw.hits.certificate
    for m in range(3):
        assert extends(bw.word, c.start + m * c.stride, (1, 1, 1))


def test_challenge_from_evader():
    g = up([], [7], None)
    f = challenge_from_evader(g)
    assert all(f[i] == (7,) for i in range(20))
    f = challenge_from_evader(up([], [0, 1]))
    assert f.entries == {0: (0,), 1: (1,)} and f.tail == (0, 2)
    rng = random.Random(4)
    for _ in range(50):
        g = random_up_word(rng, 3)
        f = challenge_from_evader(g)
        w = random_up_word(rng, 3)
        agree = sum(1 for n in range(33) if w[n] == g[n])
        assert len(hit_set(w, f, 32)) == agree


def test_game_defeating_challenger_wins():
    P = normalize_presentation([zeros_from(0), zeros_from(1), zeros_from(2)])
    t = run_star_game(lambda: build_defeating_challenge(P, 16), lambda f: up([0, 1], [0]), P, 16)
    assert t["member"] and t["outcome"] == "finite" and not t["responder_wins"]
    assert t["defeat"]["verdict"] == "pass"


def test_game_constraint_responder_wins():
    C = ConstraintSet(cyl(0, 0), (0, 0))
    f = schedule({1: [1], 2: [0, 0, 0]}, tail=(1, 2))
    t = run_star_game(lambda: f, lambda f: baire_witness(f, C).word, C, 32)
    assert t["member"] and t["responder_wins"] and t["outcome"] == "certified"
    f2 = schedule({0: [0, 1], 3: [1, 1]})
    t = run_star_game(lambda: f2, lambda f: baire_witness(f, ConstraintSet(FULL, ())).word, None, 8)
    assert t["outcome"] == "all_scheduled" and t["responder_wins"]


def test_game_evader_trivial_win():
    g = up([1], [0, 1])
    t = run_star_game(lambda: challenge_from_evader(g), lambda f: g, None, 16)
    assert t["hits"]["indices"] == list(range(17)) and t["outcome"] == "certified"


def test_game_is_deterministic():
    P = normalize_presentation([ZEROS])
    run = lambda: run_star_game(lambda: build_defeating_challenge(P, 8), lambda f: up([], [0, 1]), P, 8)
    assert run() == run()
