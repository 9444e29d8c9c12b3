"""Closed subsets of X^omega presented by deterministic safety automata.

An omega-word belongs to the denoted set iff every state on its run,
including the initial one, is live.  All constructions here stay
deterministic: the nondeterminism introduced by projections and unions
is removed on the spot by subset construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from baireshift.errors import AlphabetMismatch, BaireError
from baireshift.words import Alphabet, UPWord, Word


class MalformedAutomaton(BaireError):
    pass


class HasInteriorError(BaireError):
    """Raised when an avoiding word is requested for a set with interior."""

    def __init__(self, witness: Word):
        super().__init__(f"set contains the cylinder of {list(witness)}")
        self.witness = witness


@dataclass(frozen=True)
class SafetyAutomaton:
    alphabet: Alphabet
    initial: int
    delta: tuple[tuple[int, ...], ...]
    live: frozenset[int]

    def __post_init__(self):
        if not self.alphabet.is_finite:
            raise MalformedAutomaton("safety automata need a finite alphabet")
        delta = tuple(tuple(row) for row in self.delta)
        n, k = len(delta), self.alphabet.size
        if n == 0:
            raise MalformedAutomaton("automaton has no states")
        for q, row in enumerate(delta):
            if len(row) != k:
                raise MalformedAutomaton(f"state {q} has {len(row)} transitions, expected {k}")
            for t in row:
                if not isinstance(t, int) or not 0 <= t < n:
                    raise MalformedAutomaton(f"state {q} has transition to invalid state {t!r}")
        if not 0 <= self.initial < n:
            raise MalformedAutomaton(f"initial state {self.initial} out of range")
        live = frozenset(self.live)
        if any(not 0 <= q < n for q in live):
            raise MalformedAutomaton("live set mentions an unknown state")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "live", live)

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @property
    def k(self) -> int:
        return self.alphabet.size

    def step(self, q: int, a: int) -> int:
        return self.delta[q][a]

    def run(self, u: Sequence[int], q: int | None = None) -> int | None:
        """State after reading ``u``, or None if the run touches a dead state."""
        q = self.initial if q is None else q
        if q not in self.live:
            return None
        for a in u:
            q = self.delta[q][a]
            if q not in self.live:
                return None
        return q

    def __contains__(self, w: UPWord) -> bool:
        return contains(self, w)


@dataclass(frozen=True)
class NwdCertificate:
    nowhere_dense: bool
    witness: Word | None = None

    @property
    def verdict(self) -> str:
        return "nowhere_dense" if self.nowhere_dense else "has_interior"


def _check_alphabet(a: Alphabet, b: Alphabet):
    if a != b:
        raise AlphabetMismatch(f"alphabet {a.to_json()} does not match {b.to_json()}")


def _explore(alphabet: Alphabet, start: Hashable, succ: Callable, is_live: Callable) -> SafetyAutomaton:
    """Build the reachable part of an implicit automaton, numbering states in BFS order."""
    index = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        s = queue.popleft()
        row = []
        for a in alphabet.symbols():
            t = succ(s, a)
            if t not in index:
                index[t] = len(order)
                order.append(t)
                queue.append(t)
            row.append(index[t])
        rows.append(tuple(row))
    live = frozenset(i for i, s in enumerate(order) if is_live(s))
    return SafetyAutomaton(alphabet, 0, tuple(rows), live)


def prune(A: SafetyAutomaton) -> SafetyAutomaton:
    """Kill every live state that has no infinite live run.

    Keeps the state numbering; only the live set shrinks to the greatest
    fixpoint ``V = {q live : some successor of q is in V}``.
    """
    alive = set(A.live)
    changed = True
    while changed:
        changed = False
        for q in list(alive):
            if not any(t in alive for t in A.delta[q]):
                alive.discard(q)
                changed = True
    if alive == A.live:
        return A
    return SafetyAutomaton(A.alphabet, A.initial, A.delta, frozenset(alive))


def trim(A: SafetyAutomaton) -> SafetyAutomaton:
    """Prune, drop unreachable states, merge dead states into one sink, renumber by BFS."""
    A = prune(A)
    sink = "dead"

    def succ(q, a):
        if q == sink:
            return sink
        t = A.delta[q][a]
        return t if t in A.live else sink

    start = A.initial if A.initial in A.live else sink
    return _explore(A.alphabet, start, succ, lambda q: q != sink)


def contains(A: SafetyAutomaton, w: UPWord) -> bool:
    _check_alphabet(A.alphabet, w.alphabet)
    q = A.run(w.prefix)
    if q is None:
        return False
    seen = set()
    pos = 0
    p = len(w.period)
    # (state, period position) repeats within n * p steps; after that the run cycles.
    while (q, pos) not in seen:
        seen.add((q, pos))
        q = A.delta[q][w.period[pos]]
        if q not in A.live:
            return False
        pos = (pos + 1) % p
    return True


def is_empty(A: SafetyAutomaton) -> bool:
    return A.initial not in prune(A).live


def full_states(A: SafetyAutomaton) -> frozenset[int]:
    """States whose residual language is all of X^omega."""
    A = prune(A)
    full = set(A.live)
    changed = True
    while changed:
        changed = False
        for q in list(full):
            if any(t not in full for t in A.delta[q]):
                full.discard(q)
                changed = True
    return frozenset(full)


def _shortlex_search(A: SafetyAutomaton, goal: Callable[[int, int], bool]) -> Word | None:
    """Shortest-lex word ``u.a`` with the run of ``u`` live and ``goal(q, a)``.

    BFS over live states, expanding symbols in increasing order, discovers
    each state through its shortest-lex access word.
    """
    if A.initial not in A.live:
        return None
    access = {A.initial: ()}
    queue = deque([A.initial])
    while queue:
        q = queue.popleft()
        for a in A.alphabet.symbols():
            if goal(q, a):
                return access[q] + (a,)
            t = A.delta[q][a]
            if t in A.live and t not in access:
                access[t] = access[q] + (a,)
                queue.append(t)
    return None


def is_nowhere_dense(A: SafetyAutomaton) -> NwdCertificate:
    A = prune(A)
    full = full_states(A)
    if A.initial in full:
        return NwdCertificate(False, ())
    witness = _shortlex_search(A, lambda q, a: A.delta[q][a] in full)
    if witness is None:
        return NwdCertificate(True)
    return NwdCertificate(False, witness)


def avoiding_word(A: SafetyAutomaton) -> Word:
    """Shortest-lex word whose cylinder misses the set (empty word for the empty set)."""
    A = prune(A)
    if A.initial not in A.live:
        return ()
    cert = is_nowhere_dense(A)
    if not cert.nowhere_dense:
        raise HasInteriorError(cert.witness)
    u = _shortlex_search(A, lambda q, a: A.delta[q][a] not in A.live)
    assert u is not None, "nowhere dense non-empty set must have an escaping word"
    return u


def intersection(A: SafetyAutomaton, B: SafetyAutomaton) -> SafetyAutomaton:
    _check_alphabet(A.alphabet, B.alphabet)
    raw = _explore(
        A.alphabet,
        (A.initial, B.initial),
        lambda s, a: (A.delta[s[0]][a], B.delta[s[1]][a]),
        lambda s: s[0] in A.live and s[1] in B.live,
    )
    return trim(raw)


def union(A: SafetyAutomaton, B: SafetyAutomaton) -> SafetyAutomaton:
    _check_alphabet(A.alphabet, B.alphabet)
    # A component that has died stays dead (None) so that a word must
    # survive in one automaton for its whole run.
    def enter(M, q):
        return q if q in M.live else None

    def succ(s, a):
        p, q = s
        return (
            None if p is None else enter(A, A.delta[p][a]),
            None if q is None else enter(B, B.delta[q][a]),
        )

    raw = _explore(
        A.alphabet,
        (enter(A, A.initial), enter(B, B.initial)),
        succ,
        lambda s: s != (None, None),
    )
    return trim(raw)


def shift_image(A: SafetyAutomaton) -> SafetyAutomaton:
    """Automaton for ``{a[1:] : a in A}``.

    A subset state is the set of live states the projected run may be in;
    after pruning, a non-empty subset always has an infinite continuation,
    so by Koenig's lemma "never empty" is exactly membership.
    """
    A = prune(A)
    if A.initial not in A.live:
        return trim(A)

    def post(S, a):
        return frozenset(t for t in (A.delta[q][a] for q in S) if t in A.live)

    start = frozenset(t for t in A.delta[A.initial] if t in A.live)
    return trim(_explore(A.alphabet, start, post, bool))


def shift_image_n(A: SafetyAutomaton, i: int) -> SafetyAutomaton:
    if i < 0:
        raise ValueError(f"negative shift {i}")
    for _ in range(i):
        A = shift_image(A)
    return A


def cylinder_automaton(u: Sequence[int], alphabet: Alphabet) -> SafetyAutomaton:
    """States 0..|u| track progress through ``u``; state |u|+1 is the dead sink."""
    u = alphabet.check(u)
    n = len(u)
    dead = n + 1
    rows = []
    for j in range(n):
        rows.append(tuple(j + 1 if a == u[j] else dead for a in alphabet.symbols()))
    rows.append(tuple(n for _ in alphabet.symbols()))
    rows.append(tuple(dead for _ in alphabet.symbols()))
    return SafetyAutomaton(alphabet, 0, tuple(rows), frozenset(range(n + 1)))


def full_space(alphabet: Alphabet) -> SafetyAutomaton:
    return SafetyAutomaton(alphabet, 0, (tuple(0 for _ in alphabet.symbols()),), frozenset({0}))


def empty_set(alphabet: Alphabet) -> SafetyAutomaton:
    return SafetyAutomaton(alphabet, 0, (tuple(0 for _ in alphabet.symbols()),), frozenset())


def singleton_constant(a: int, alphabet: Alphabet) -> SafetyAutomaton:
    """The one-point set ``{a^omega}``."""
    rows = (tuple(0 if b == a else 1 for b in alphabet.symbols()), tuple(1 for _ in alphabet.symbols()))
    return SafetyAutomaton(alphabet, 0, rows, frozenset({0}))


def equivalent(A: SafetyAutomaton, B: SafetyAutomaton) -> bool:
    """Language equality via the product of the pruned automata."""
    _check_alphabet(A.alphabet, B.alphabet)
    A, B = prune(A), prune(B)
    start = (A.initial, B.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in A.live) != (q in B.live):
            return False
        if p not in A.live:
            continue
        for a in A.alphabet.symbols():
            t = (A.delta[p][a], B.delta[q][a])
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return True


def subset_of(A: SafetyAutomaton, B: SafetyAutomaton) -> bool:
    return equivalent(intersection(A, B), A)
