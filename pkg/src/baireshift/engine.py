"""Defeating challenges against meager presentations and Baire witnesses.

Two pipelines live here:

* ``build_defeating_challenge`` picks, for every index ``i``, a word whose
  cylinder misses ``shift^i(Y_i)``.  Any word that takes the challenge at
  ``i`` therefore lies outside ``Y_i``, and a member of the union can only
  take finitely many of them.
* ``baire_witness`` walks the dense open sets ``S_k(f)`` inside a cylinder
  of the constraint set, producing an ultimately periodic point that takes
  every challenge it consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Sequence

from baireshift import automata
from baireshift.automata import SafetyAutomaton, full_states, is_nowhere_dense, prune
from baireshift.challenges import ChallengeSchedule, HitSet, PeriodicHit, hit_set
from baireshift.errors import AlphabetMismatch, BaireError
from baireshift.words import Alphabet, UPWord, Word, word_at


class NotNowhereDense(BaireError):
    def __init__(self, layer: int, witness: Word):
        super().__init__(f"cumulative layer {layer} contains the cylinder of {list(witness)}")
        self.layer = layer
        self.witness = witness


class NoChallengeBeyond(BaireError):
    def __init__(self, k: int):
        super().__init__(f"schedule has no usable index beyond {k}")
        self.k = k


class ScheduleTooSparse(BaireError):
    pass


class ConstraintViolation(BaireError):
    pass


class InvalidConstraint(BaireError):
    pass


@dataclass(frozen=True)
class MeagerPresentation:
    """Increasing closed nowhere dense layers; ``Y_i`` is the last layer for large ``i``."""

    layers: tuple[SafetyAutomaton, ...]

    @property
    def alphabet(self) -> Alphabet:
        return self.layers[0].alphabet

    @property
    def top(self) -> SafetyAutomaton:
        return self.layers[-1]

    def layer(self, i: int) -> SafetyAutomaton:
        return self.layers[min(i, len(self.layers) - 1)]


def normalize_presentation(layers: Sequence[SafetyAutomaton]) -> MeagerPresentation:
    if not layers:
        raise BaireError("a presentation needs at least one layer")
    alphabet = layers[0].alphabet
    out = []
    acc = None
    for j, layer in enumerate(layers):
        if layer.alphabet != alphabet:
            raise AlphabetMismatch(f"layer {j} uses a different alphabet")
        acc = automata.trim(layer) if acc is None else automata.union(acc, layer)
        cert = is_nowhere_dense(acc)
        if not cert.nowhere_dense:
            raise NotNowhereDense(j, cert.witness)
        out.append(acc)
    return MeagerPresentation(tuple(out))


@dataclass(frozen=True)
class DefeatingChallenge:
    schedule: ChallengeSchedule
    # shift^i(Y_i) for every explicit entry, kept for certification
    images: dict[int, SafetyAutomaton] = field(repr=False)


def defeating_challenge(P: MeagerPresentation, horizon: int) -> DefeatingChallenge:
    """Like :func:`build_defeating_challenge` but also returns the shifted layers."""
    if horizon < 0:
        raise ValueError(f"negative horizon {horizon}")
    top = len(P.layers) - 1
    entries: dict[int, Word] = {}
    images: dict[int, SafetyAutomaton] = {}
    seen: dict[SafetyAutomaton, int] = {}
    tail = None
    image = None
    for i in range(horizon + 1):
        if i <= top:
            image = automata.shift_image_n(P.layer(i), i)
        else:
            image = automata.shift_image(image)
        # From the top layer on, image_{i+1} depends only on image_i, so a
        # repeated automaton closes the schedule into a periodic tail.
        if i >= top:
            key = automata.trim(image)
            if key in seen:
                j = seen[key]
                tail = (j, i - j)
                break
            seen[key] = i
        try:
            entries[i] = automata.avoiding_word(image)
        except automata.HasInteriorError as exc:  # pragma: no cover - excluded by normalization
            raise AssertionError(f"shifted layer {i} has interior; presentation not normalized") from exc
        images[i] = image
    return DefeatingChallenge(ChallengeSchedule(entries, P.alphabet, tail), images)


def build_defeating_challenge(P: MeagerPresentation, horizon: int) -> ChallengeSchedule:
    return defeating_challenge(P, horizon).schedule


@dataclass(frozen=True)
class DefeatRecord:
    index: int
    word: Word
    in_layer: bool

    @property
    def ok(self) -> bool:
        return not self.in_layer


@dataclass(frozen=True)
class DefeatReport:
    records: tuple[DefeatRecord, ...]
    hits: HitSet
    in_union: bool
    # A member of the union must not carry an infinite-hit certificate.
    tail_ok: bool

    @property
    def passed(self) -> bool:
        return self.tail_ok and all(r.ok for r in self.records)


def verify_defeat(P: MeagerPresentation, f: ChallengeSchedule, w: UPWord, horizon: int) -> DefeatReport:
    if f.alphabet != P.alphabet or w.alphabet != P.alphabet:
        raise AlphabetMismatch("presentation, schedule and word must share an alphabet")
    hits = hit_set(w, f, horizon)
    records = tuple(DefeatRecord(i, f[i], automata.contains(P.layer(i), w)) for i in hits.indices)
    in_union = automata.contains(P.top, w)
    return DefeatReport(records, hits, in_union, not (in_union and hits.infinite))


@dataclass(frozen=True)
class ConstraintSet:
    """A closed set together with a word whose cylinder lies inside it."""

    automaton: SafetyAutomaton
    witness: Word

    def __post_init__(self):
        w = self.automaton.alphabet.check(self.witness)
        object.__setattr__(self, "witness", w)
        q = prune(self.automaton).run(w)
        if q is None or q not in full_states(self.automaton):
            raise InvalidConstraint(f"cylinder of {list(w)} is not inside the constraint set")

    @property
    def alphabet(self) -> Alphabet:
        return self.automaton.alphabet


def dense_extension(w: Sequence[int], k: int, f: ChallengeSchedule, pad: int = 0) -> Word:
    """Extend ``w`` so that every continuation takes some challenge at an index ``> k``.

    Picks the least domain index ``i > k`` with ``i >= len(w)``, pads with
    ``pad`` up to ``i`` and appends ``f(i)``.
    """
    w = tuple(w)
    i = f.next_index(max(k + 1, len(w)))
    if i is None:
        raise NoChallengeBeyond(k)
    return w + (pad,) * (i - len(w)) + f[i]


@dataclass(frozen=True)
class BaireWitness:
    word: UPWord
    hits: HitSet
    consumed: tuple[int, ...]


def tail_stride(f: ChallengeSchedule) -> int:
    """Block length used for the periodic part of a witness."""
    _, p = f.tail
    m = f.max_word_length()
    return p if m <= p else p * ceil((m + 1) / p)


def baire_witness(f: ChallengeSchedule, C: ConstraintSet, pad: int = 0) -> BaireWitness:
    if f.alphabet != C.alphabet:
        raise AlphabetMismatch("schedule and constraint use different alphabets")
    (pad,) = C.alphabet.check((pad,))
    w = C.witness
    consumed = []
    last = -1
    while True:
        i = f.next_index(max(last + 1, len(w)))
        if i is None or (f.tail is not None and i >= f.tail[0]):
            break
        w = dense_extension(w, last, f, pad)
        consumed.append(i)
        last = i

    if f.tail is None:
        if not consumed:
            raise ScheduleTooSparse(
                f"no scheduled index at or beyond the witness length {len(C.witness)}")
        word = UPWord(w, (pad,), C.alphabet)
        horizon = max(consumed[-1], len(word.prefix)) + 1
    else:
        # Start the periodic part at the first tail index we can still reach;
        # a stride that is a multiple of p keeps f constant along it.
        j = i
        stride = tail_stride(f)
        u = f[j]
        block = u + (pad,) * (stride - len(u))
        word = UPWord(w + (pad,) * (j - len(w)), block, C.alphabet)
        consumed.extend(j + m * stride for m in range(3))
        horizon = consumed[-1] + len(block)

    hits = hit_set(word, f, horizon)
    if not automata.contains(C.automaton, word):  # pragma: no cover - word extends the witness
        raise ConstraintViolation(f"constructed word {word} escaped the constraint set")
    missing = [i for i in consumed if i not in hits]
    if missing or (f.tail is not None and not hits.infinite):  # pragma: no cover
        raise AssertionError(f"witness missed consumed indices {missing}")
    return BaireWitness(word, hits, tuple(consumed))


def challenge_from_evader(g: UPWord) -> ChallengeSchedule:
    """Single-symbol challenges copying ``g``: taking one means agreeing with ``g`` there."""
    start, p = len(g.prefix), len(g.period)
    entries = {i: (word_at(g, i),) for i in range(start + p)}
    return ChallengeSchedule(entries, g.alphabet, (start, p))
