"""Challenger/responder harness for the shift-extension game.

The challenger produces a schedule, the responder answers with a point,
and the transcript records which challenges the point takes.  "Infinitely
many" is reported as ``certified`` when a periodic-hit certificate exists;
for finite schedules the best we can say is ``all_scheduled`` within the
horizon, and the transcript labels it so.
"""

from __future__ import annotations

from typing import Callable

from baireshift import automata
from baireshift.challenges import ChallengeSchedule, hit_set
from baireshift.engine import ConstraintSet, MeagerPresentation, verify_defeat
from baireshift.words import UPWord

Challenger = Callable[[], ChallengeSchedule]
Responder = Callable[[ChallengeSchedule], UPWord]


def run_star_game(challenger: Challenger, responder: Responder, context=None, horizon: int = 32) -> dict:
    from baireshift import formats

    f = challenger()
    w = responder(f)
    hits = hit_set(w, f, horizon)
    scheduled = list(f.indices(horizon))
    if hits.infinite:
        outcome, responder_wins = "certified", True
    elif f.is_finite and scheduled and set(hits.indices) == set(scheduled):
        outcome, responder_wins = "all_scheduled", True
    else:
        outcome, responder_wins = "finite", False

    transcript = {
        "schedule": formats.schedule_to_json(f),
        "word": formats.word_to_json(w),
        "hits": formats.hits_to_json(hits),
        "outcome": outcome,
        "responder_wins": responder_wins,
    }
    if isinstance(context, MeagerPresentation):
        report = verify_defeat(context, f, w, horizon)
        transcript["member"] = report.in_union
        transcript["defeat"] = formats.report_to_json(report)
    elif isinstance(context, ConstraintSet):
        transcript["member"] = automata.contains(context.automaton, w)
    return transcript
