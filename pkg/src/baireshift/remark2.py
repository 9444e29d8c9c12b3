"""The padded-repetition set over the naturals.

A word belongs to the set when it splits into blocks
``a, <psi(a) arbitrary symbols>, a``.  The set is closed and nowhere dense,
yet a responder can take any finite batch of challenges inside it by
choosing an opener whose filler region swallows them.  Over a finite
alphabet this is impossible for first category sets, so the construction
shows where finiteness of X is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from baireshift.challenges import ChallengeSchedule, hit_set
from baireshift.errors import BaireError
from baireshift.words import NATURALS, UPWord, Word


class OverlappingChallenges(BaireError):
    pass


class UnreachablePosition(BaireError):
    pass


@dataclass(frozen=True)
class PsiFunction:
    name: str
    rule: Callable[[int], int]
    # Least opener whose filler region has at least n positions, or None.
    least_opener: Callable[[int], int | None]

    def __call__(self, a: int) -> int:
        return self.rule(a)


IDENTITY = PsiFunction("identity", lambda a: a, lambda n: n)
DOUBLE = PsiFunction("double", lambda a: 2 * a, lambda n: (n + 1) // 2)


def psi_table(table: Mapping[int, int]) -> PsiFunction:
    """A user-supplied psi; symbols outside the table are treated as psi = 0."""
    table = dict(table)

    def least(n):
        ok = [a for a, v in table.items() if v >= n]
        if n <= 0:
            ok.append(0)
        return min(ok, default=None)

    return PsiFunction("table", lambda a: table.get(a, 0), least)


PSI = {"identity": IDENTITY, "double": DOUBLE}


def remark2_membership(prefix: Sequence[int], psi: PsiFunction) -> bool:
    """True iff ``prefix`` can be continued to a member of the set.

    Every completed block must close with its opener; an unfinished last
    block is always consistent.
    """
    pos = 0
    n = len(prefix)
    while pos < n:
        a = prefix[pos]
        close = pos + psi(a) + 1
        if close >= n:
            return True
        if prefix[close] != a:
            return False
        pos = close + 1
    return True


def remark2_contains(w: UPWord, psi: PsiFunction) -> bool:
    """Exact membership of an ultimately periodic word.

    Blocks are parsed until one starts inside the periodic part at a
    period offset seen before; from then on the parse repeats.
    """
    pos = 0
    seen = set()
    P, p = len(w.prefix), len(w.period)
    while True:
        if pos >= P:
            off = (pos - P) % p
            if off in seen:
                return True
            seen.add(off)
        a = w[pos]
        close = pos + psi(a) + 1
        if w[close] != a:
            return False
        pos = close + 1


def _requirements(f: ChallengeSchedule) -> dict[int, int]:
    req: dict[int, int] = {}
    for i, u in f.entries.items():
        for m, s in enumerate(u):
            if req.setdefault(i + m, s) != s:
                raise OverlappingChallenges(
                    f"challenges force both {req[i + m]} and {s} at position {i + m}")
    return req


def remark2_responder(f: ChallengeSchedule, psi: PsiFunction = IDENTITY) -> UPWord:
    """A member of the set that takes every challenge of the finite schedule ``f``.

    Blocks are laid left to right.  A block whose opener position is not
    prescribed gets an opener large enough that its fillers cover every
    remaining prescribed position (with one spare filler before the
    closer), which finishes the job.  A prescribed opener forces its block;
    if such a forced closer clashes with a prescription, no member of the
    set takes all challenges and UnreachablePosition is raised.
    """
    if not f.is_finite:
        raise BaireError("remark2_responder needs a finite schedule")
    req = _requirements(f)
    out: list[int] = []
    while any(p >= len(out) for p in req):
        pos = len(out)
        if pos in req:
            a = req[pos]
        else:
            need = max(req) - pos + 1
            a = psi.least_opener(need)
            if a is None:
                raise UnreachablePosition(f"psi has no opener with at least {need} fillers")
        close = pos + psi(a) + 1
        if req.get(close, a) != a:
            raise UnreachablePosition(
                f"opener {a} at {pos} forces {a} at {close}, but a challenge needs {req[close]}")
        out.append(a)
        out.extend(req.get(p, 0) for p in range(pos + 1, close))
        out.append(a)
    tail = (0,) * (psi(0) + 2)
    word = UPWord(tuple(out), tail, NATURALS)
    assert remark2_contains(word, psi)
    return word


def takes_all(w: UPWord, f: ChallengeSchedule) -> bool:
    hits = hit_set(w, f, max(f.entries, default=0))
    return set(hits.indices) == set(f.entries)
