"""Alphabets, finite words and ultimately periodic omega-words.

Finite words are plain tuples of non-negative integers.  An
:class:`UPWord` stores ``prefix . period^omega`` and is always kept in
canonical form (primitive period, shortest prefix), so two presentations
of the same omega-word compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from baireshift.errors import InvalidSymbol

Word = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Either ``{0, ..., size-1}`` or, when ``size`` is None, all naturals."""

    size: int | None

    def __post_init__(self):
        if self.size is not None and self.size < 1:
            raise InvalidSymbol(f"finite alphabet needs at least one symbol, got {self.size}")

    @classmethod
    def finite(cls, k: int) -> Alphabet:
        return cls(k)

    @classmethod
    def naturals(cls) -> Alphabet:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def symbols(self) -> range:
        if self.size is None:
            raise InvalidSymbol("the naturals alphabet cannot be enumerated")
        return range(self.size)

    def check(self, word: Iterable[int]) -> Word:
        """Return ``word`` as a tuple, raising InvalidSymbol on a bad symbol."""
        out = tuple(word)
        for s in out:
            if not isinstance(s, int) or isinstance(s, bool) or s < 0:
                raise InvalidSymbol(f"symbol {s!r} is not a non-negative integer")
            if self.size is not None and s >= self.size:
                raise InvalidSymbol(f"symbol {s} outside alphabet of size {self.size}")
        return out

    def to_json(self):
        return "naturals" if self.size is None else self.size

    @classmethod
    def from_json(cls, value) -> Alphabet:
        if value == "naturals":
            return cls.naturals()
        if isinstance(value, int) and not isinstance(value, bool):
            return cls.finite(value)
        raise InvalidSymbol(f"bad alphabet {value!r}")


BINARY = Alphabet(2)
NATURALS = Alphabet(None)


def primitive_root(period: Sequence[int]) -> Word:
    period = tuple(period)
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


def canonical_form(prefix: Sequence[int], period: Sequence[int]) -> tuple[Word, Word]:
    if not period:
        raise InvalidSymbol("period must be non-empty")
    prefix = tuple(prefix)
    period = primitive_root(period)
    # Roll the period backwards while the prefix ends with the symbol
    # that would precede it anyway.
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = (period[-1],) + period[:-1]
    return prefix, period


@dataclass(frozen=True)
class UPWord:
    """The omega-word ``prefix . period . period . ...`` in canonical form."""

    prefix: Word
    period: Word
    alphabet: Alphabet = BINARY

    def __post_init__(self):
        prefix = self.alphabet.check(self.prefix)
        period = self.alphabet.check(self.period)
        prefix, period = canonical_form(prefix, period)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def __getitem__(self, n: int) -> int:
        return word_at(self, n)

    def take(self, n: int) -> Word:
        return tuple(word_at(self, k) for k in range(n))

    def __str__(self):
        head = "".join(f"{s}," for s in self.prefix)
        return f"{head}({','.join(map(str, self.period))})^w"


def up(prefix: Sequence[int], period: Sequence[int], k: int | None = 2) -> UPWord:
    """Shorthand constructor; ``k=None`` selects the naturals alphabet."""
    return UPWord(tuple(prefix), tuple(period), Alphabet(k))


def canonicalize(w: UPWord) -> UPWord:
    # UPWord canonicalizes on construction; this rebuilds from raw fields so
    # it is also usable on hand-made presentations.
    prefix, period = canonical_form(w.prefix, w.period)
    return UPWord(prefix, period, w.alphabet)


def word_at(w: UPWord, n: int) -> int:
    if n < 0:
        raise IndexError(f"negative index {n}")
    if n < len(w.prefix):
        return w.prefix[n]
    return w.period[(n - len(w.prefix)) % len(w.period)]


def shift(w: UPWord, i: int) -> UPWord:
    """Drop the first ``i`` symbols of ``w``."""
    if i < 0:
        raise IndexError(f"negative shift {i}")
    if i <= len(w.prefix):
        return UPWord(w.prefix[i:], w.period, w.alphabet)
    r = (i - len(w.prefix)) % len(w.period)
    return UPWord((), w.period[r:] + w.period[:r], w.alphabet)


def prepend(u: Sequence[int], w: UPWord) -> UPWord:
    return UPWord(tuple(u) + w.prefix, w.period, w.alphabet)


def extends(w: UPWord, i: int, u: Sequence[int]) -> bool:
    """True iff the shift of ``w`` at ``i`` starts with the finite word ``u``."""
    return all(word_at(w, i + m) == s for m, s in enumerate(u))


def same_word(a: UPWord, b: UPWord) -> bool:
    """Brute-force equality check by comparing enough leading symbols."""
    n = 2 * (len(a.prefix) + len(a.period) + len(b.prefix) + len(b.period))
    return a.take(n) == b.take(n)
