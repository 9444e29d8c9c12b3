"""Exact tail sums of binary words and challenges aimed at open sets of (0, eps).

The tail sum of a binary word ``g`` at ``n`` is ``t_n = sum_{k>=n} g(k)/2^k``.
If the shift of ``g`` at ``i`` starts with ``w`` then ``t_i`` lies in the
closed dyadic window ``2^(1-i) * [val(w), val(w) + 2^-len(w)]`` where
``val(w) = sum_j w[j] 2^-(j+1)``.  Every comparison is done on
:class:`fractions.Fraction`; no float ever reaches a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from baireshift.challenges import ChallengeSchedule
from baireshift.errors import AlphabetMismatch, BaireError
from baireshift.words import BINARY, UPWord, Word, word_at


class InvalidOpenSet(BaireError):
    pass


class NotZeroAdherent(BaireError):
    pass


class NoWindow(BaireError):
    def __init__(self, index: int, near_miss=None):
        msg = f"no dyadic window fits inside U at index {index}"
        if near_miss is not None:
            word, lo, hi = near_miss
            msg += f" (closest: {list(word)} -> [{lo}, {hi}])"
        super().__init__(msg)
        self.index = index
        self.near_miss = near_miss


def _binary(g: UPWord):
    if g.alphabet != BINARY:
        raise AlphabetMismatch("tail sums need a binary word")


def val01(w: Sequence[int]) -> Fraction:
    return sum((Fraction(s, 2 ** (j + 1)) for j, s in enumerate(w)), Fraction(0))


def tail_sum(g: UPWord, n: int) -> Fraction:
    _binary(g)
    if n < 0:
        raise ValueError(f"negative index {n}")
    m = max(n, len(g.prefix))
    head = sum((Fraction(word_at(g, k), 2**k) for k in range(n, m)), Fraction(0))
    p = len(g.period)
    block = tuple(word_at(g, m + j) for j in range(p))
    # sum_{k>=m} = 2^(1-m) val(block) / (1 - 2^-p)
    rest = Fraction(2, 2**m) * val01(block) / (1 - Fraction(1, 2**p))
    return head + rest


def window(i: int, w: Sequence[int]) -> tuple[Fraction, Fraction]:
    scale = Fraction(2, 2**i)
    lo = val01(w)
    return scale * lo, scale * (lo + Fraction(1, 2 ** len(w)))


@dataclass(frozen=True)
class OpenSet1D:
    """A finite union of disjoint open rational intervals inside (0, epsilon)."""

    intervals: tuple[tuple[Fraction, Fraction], ...]
    epsilon: Fraction

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        if eps <= 0:
            raise InvalidOpenSet("epsilon must be positive")
        ivs = tuple(sorted((Fraction(lo), Fraction(hi)) for lo, hi in self.intervals))
        for lo, hi in ivs:
            if not 0 <= lo < hi <= eps:
                raise InvalidOpenSet(f"interval ({lo}, {hi}) is not inside (0, {eps})")
        for (_, h1), (l2, _) in zip(ivs, ivs[1:]):
            if l2 < h1:
                raise InvalidOpenSet("intervals overlap")
        object.__setattr__(self, "intervals", ivs)
        object.__setattr__(self, "epsilon", eps)

    @property
    def zero_adherent(self) -> bool:
        return any(lo == 0 for lo, _ in self.intervals)

    def __contains__(self, x: Fraction) -> bool:
        return any(lo < x < hi for lo, hi in self.intervals)

    def interval_of(self, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction] | None:
        """The interval containing the closed range [a, b], if any."""
        for lo, hi in self.intervals:
            if lo < a and b < hi:
                return lo, hi
        return None


def open_set(intervals, epsilon) -> OpenSet1D:
    return OpenSet1D(tuple((Fraction(lo), Fraction(hi)) for lo, hi in intervals), Fraction(epsilon))


@dataclass(frozen=True)
class TailHits:
    hits: tuple[int, ...]
    values: tuple[Fraction, ...]
    infinitely_often: bool


def hits_in_U(g: UPWord, U: OpenSet1D, horizon: int) -> TailHits:
    """Indices ``n <= horizon`` with ``t_n`` in ``U``, plus the infinitely-often verdict.

    Past the preperiod each residue class mod ``p`` is a ray ``t * 2^(-p m)``.
    A ray with ``t > 0`` falls into an interval ``(0, h)`` for good and meets
    an interval bounded away from 0 finitely often; a zero ray never enters
    ``U``.  So hits are infinite iff ``U`` touches 0 and the period has a 1.
    """
    _binary(g)
    t = tail_sum(g, horizon + 1)
    values = [Fraction(0)] * (horizon + 1)
    for n in range(horizon, -1, -1):
        t = Fraction(word_at(g, n), 2**n) + t
        values[n] = t
    hits = tuple(n for n in range(horizon + 1) if values[n] in U)
    inf = U.zero_adherent and 1 in g.period
    return TailHits(hits, tuple(values[n] for n in hits), inf)


@dataclass(frozen=True)
class WindowRecord:
    index: int
    word: Word
    window: tuple[Fraction, Fraction]
    interval: tuple[Fraction, Fraction]

    def valid(self) -> bool:
        lo, hi = self.window
        return (lo, hi) == window(self.index, self.word) and self.interval[0] < lo and hi < self.interval[1]


@dataclass(frozen=True)
class WindowCertificate:
    records: tuple[WindowRecord, ...]
    # With a periodic index set the tail record covers every later index too:
    # moving right only shrinks a window towards 0 inside an interval (0, h).
    tail: tuple[int, int] | None = None

    def valid(self) -> bool:
        if not all(r.valid() for r in self.records):
            return False
        if self.tail is not None:
            return all(r.interval[0] == 0 for r in self.records if r.index >= self.tail[0])
        return True


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def find_window(i: int, U: OpenSet1D, depth: int, zero_only: bool = False) -> WindowRecord:
    """Shortest-lex binary word of length <= depth whose window at ``i`` sits inside ``U``.

    Words of length L correspond to the windows ``2^(1-i)[k, k+1] / 2^L``,
    listed in lexicographic order by k, so for each interval the least
    admissible k is computed directly instead of enumerating words.
    """
    intervals = [iv for iv in U.intervals if iv[0] == 0] if zero_only else list(U.intervals)
    near = None
    for L in range(depth + 1):
        unit = Fraction(2, 2 ** (i + L))
        best = None
        for lo, hi in intervals:
            k = _floor(lo / unit) + 1  # least k with k*unit > lo
            if k + 1 > 2**L:
                continue
            cand = (k, lo, hi)
            if (k + 1) * unit < hi:
                if best is None or k < best[0]:
                    best = cand
            elif L == depth and near is None:
                near = (tuple(int(b) for b in format(k, f"0{L}b")) if L else (), k * unit, (k + 1) * unit)
        if best is not None:
            k, lo, hi = best
            word = tuple(int(b) for b in format(k, f"0{L}b")) if L else ()
            rec = WindowRecord(i, word, window(i, word), (lo, hi))
            assert rec.valid()
            return rec
    raise NoWindow(i, near)


def challenge_from_open_set(U: OpenSet1D, J, depth: int) -> tuple[ChallengeSchedule, WindowCertificate]:
    """Challenges whose takers have tail sums inside ``U``.

    ``J`` is either a list of indices or a ``(start, period)`` pair meaning
    ``{start + m*period}``.  For the periodic case one word serves the whole
    progression, so its window is taken inside an interval touching 0.
    """
    if not U.zero_adherent:
        raise NotZeroAdherent("U must have an interval starting at 0")
    if isinstance(J, tuple) and len(J) == 2 and not isinstance(J[0], (list, tuple)):
        start, period = J
        if start < 0 or period < 1:
            raise ValueError(f"bad index progression {J}")
        rec = find_window(start, U, depth, zero_only=True)
        f = ChallengeSchedule({start: rec.word}, BINARY, (start, period))
        return f, WindowCertificate((rec,), (start, period))
    records = tuple(find_window(i, U, depth) for i in sorted(set(J)))
    f = ChallengeSchedule({r.index: r.word for r in records}, BINARY)
    return f, WindowCertificate(records)


def corollary_demo(U: OpenSet1D, start: int, period: int, depth: int = 32, horizon: int | None = None) -> dict:
    """Binary word with infinitely many ones whose tail sums visit ``U`` infinitely often.

    If a continuous function stayed away from 0 on ``U``, its values along
    these tail sums could not tend to 0, so ``U`` touching 0 is exactly what
    a limit-at-0 argument has to rule out.
    """
    from baireshift import formats
    from baireshift.automata import full_space
    from baireshift.engine import ConstraintSet, baire_witness

    if not U.zero_adherent:
        raise NotZeroAdherent("U must have an interval starting at 0")
    f, cert = challenge_from_open_set(U, (start, period), depth)
    # Windows inside an open interval never contain 0, so every challenge
    # word has a 1 and each consumed block contributes one.
    assert all(1 in r.word for r in cert.records)
    bw = baire_witness(f, ConstraintSet(full_space(BINARY), ()), pad=0)
    if horizon is None:
        horizon = bw.consumed[-1] + len(bw.word.period)
    th = hits_in_U(bw.word, U, horizon)
    missing = [i for i in bw.consumed if i <= horizon and i not in th.hits]
    return {
        "schedule": formats.schedule_to_json(f),
        "certificate": formats.window_cert_to_json(cert),
        "certificate_valid": cert.valid(),
        "word": formats.word_to_json(bw.word),
        "consumed": list(bw.consumed),
        "tail_hits": list(th.hits),
        "missing": missing,
        "infinitely_many_ones": 1 in bw.word.period,
        "infinitely_often": th.infinitely_often,
    }
