"""Executable Baire-category toolkit for shift-extension challenges over X^omega."""

from baireshift.words import Alphabet, UPWord, canonicalize, extends, shift, word_at
from baireshift.challenges import ChallengeSchedule, HitSet, PeriodicHit, hit_set
from baireshift.automata import SafetyAutomaton, NwdCertificate

__all__ = [
    "Alphabet",
    "UPWord",
    "canonicalize",
    "extends",
    "shift",
    "word_at",
    "ChallengeSchedule",
    "HitSet",
    "PeriodicHit",
    "hit_set",
    "SafetyAutomaton",
    "NwdCertificate",
]

__version__ = "0.1.0"
