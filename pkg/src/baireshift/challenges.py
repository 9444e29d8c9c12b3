"""Challenge schedules f: J -> X^* and the hit sets they induce on a word."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterator, Mapping, Sequence

from baireshift.errors import BaireError
from baireshift.words import Alphabet, UPWord, Word, extends


class InvalidSchedule(BaireError):
    pass


@dataclass(frozen=True)
class ChallengeSchedule:
    """A finitely presented challenge function.

    ``entries`` maps indices to challenge words.  With ``tail=(start, p)``
    the domain continues periodically: for ``i >= start`` the index is in
    the domain iff ``start + (i - start) % p`` is, and carries the same
    word.  Entries must then list exactly one period block at
    ``[start, start + p)`` and nothing beyond it.
    """

    entries: Mapping[int, Word]
    alphabet: Alphabet
    tail: tuple[int, int] | None = None

    def __post_init__(self):
        clean = {}
        for i, u in sorted(self.entries.items()):
            if not isinstance(i, int) or i < 0:
                raise InvalidSchedule(f"bad index {i!r}")
            clean[i] = self.alphabet.check(u)
        object.__setattr__(self, "entries", clean)
        if self.tail is not None:
            start, p = self.tail
            if start < 0 or p < 1:
                raise InvalidSchedule(f"bad periodic tail {self.tail}")
            if any(i >= start + p for i in clean):
                raise InvalidSchedule("entries beyond the first period block are not allowed")
            if not any(start <= i < start + p for i in clean):
                raise InvalidSchedule("periodic tail has an empty period block")
            object.__setattr__(self, "tail", (start, p))

    def __contains__(self, i: int) -> bool:
        return self.get(i) is not None

    def __getitem__(self, i: int) -> Word:
        u = self.get(i)
        if u is None:
            raise KeyError(i)
        return u

    def get(self, i: int) -> Word | None:
        if self.tail is not None:
            start, p = self.tail
            if i >= start:
                i = start + (i - start) % p
        return self.entries.get(i)

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    def indices(self, upto: int) -> Iterator[int]:
        """Domain indices in ``[0, upto]``, ascending."""
        if self.tail is None:
            yield from (i for i in self.entries if i <= upto)
            return
        start, p = self.tail
        yield from (i for i in self.entries if i < start and i <= upto)
        block = [i for i in self.entries if i >= start]
        base = 0
        while True:
            for j in block:
                if j + base > upto:
                    return
                yield j + base
            base += p

    def next_index(self, lo: int) -> int | None:
        """Least domain index ``>= lo``, or None."""
        for i in self.entries:
            if i >= lo and (self.tail is None or i < self.tail[0]):
                return i
        if self.tail is None:
            return None
        start, p = self.tail
        lo = max(lo, start)
        base = lo - start - (lo - start) % p
        for m in (0, p):
            for j in sorted(self.entries):
                if j >= start and j + base + m >= lo:
                    return j + base + m
        return None  # pragma: no cover - non-empty period block always answers

    def max_word_length(self) -> int:
        return max((len(u) for u in self.entries.values()), default=0)


@dataclass(frozen=True)
class PeriodicHit:
    """Certificate that ``start + m*stride`` is a hit for every ``m >= 0``."""

    start: int
    stride: int


@dataclass(frozen=True)
class HitSet:
    indices: tuple[int, ...]
    horizon: int
    certificate: PeriodicHit | None = None

    @property
    def infinite(self) -> bool:
        return self.certificate is not None

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def __len__(self):
        return len(self.indices)


def hit_set(w: UPWord, f: ChallengeSchedule, horizon: int) -> HitSet:
    """Indices ``i <= horizon`` of ``f``'s domain where ``w`` extends ``f(i)``.

    When ``f`` is eventually periodic a certificate is searched for: past
    both preperiods the pair (shifted word, challenge) repeats with stride
    ``lcm(|period(w)|, p)``, so one hit there is a hit forever, and
    scanning a single stride decides whether hits are infinite.
    """
    if horizon < 0:
        raise ValueError(f"negative horizon {horizon}")
    hits = tuple(i for i in f.indices(horizon) if extends(w, i, f[i]))
    cert = None
    if f.tail is not None:
        start, p = f.tail
        stride = lcm(len(w.period), p)
        lo = max(len(w.prefix), start)
        for i in f.indices(lo + stride - 1):
            if i >= lo and extends(w, i, f[i]):
                cert = PeriodicHit(i, stride)
                break
    return HitSet(hits, horizon, cert)


def schedule(entries: Mapping[int, Sequence[int]], k: int | None = 2,
             tail: tuple[int, int] | None = None) -> ChallengeSchedule:
    return ChallengeSchedule({i: tuple(u) for i, u in entries.items()}, Alphabet(k), tail)
