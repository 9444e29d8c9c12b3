"""JSON encodings for every artifact the command line reads or writes.

Encoders build dicts in a fixed key order so that ``dumps`` output is
byte-stable.  Loaders accept the bare object or the wrapper emitted by a
command (``{"schedule": ...}``, ``{"word": ...}``) so outputs can be fed
straight back in.
"""

from __future__ import annotations

import json
from fractions import Fraction

from baireshift.automata import SafetyAutomaton
from baireshift.challenges import ChallengeSchedule, HitSet
from baireshift.engine import ConstraintSet, DefeatReport, MeagerPresentation, normalize_presentation
from baireshift.errors import BaireError
from baireshift.tailsum import OpenSet1D, WindowCertificate
from baireshift.words import Alphabet, UPWord


class FormatError(BaireError):
    pass


def _render(obj, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f"{pad}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return json.dumps(obj)
        return "[\n" + ",\n".join(pad + _render(x, depth + 1) for x in obj) + "\n" + end + "]"
    return json.dumps(obj)


def dumps(obj) -> str:
    """Indented JSON with scalar lists kept on one line, newline-terminated."""
    return _render(obj, 0) + "\n"


def _require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing key {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(f"key {key!r} has the wrong type")
    return value


def _int_list(value, what):
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise FormatError(f"{what} must be a list of integers")
    return tuple(value)


def _unwrap(obj, key):
    if isinstance(obj, dict) and key in obj and isinstance(obj[key], dict):
        return obj[key]
    return obj


# words

def word_to_json(w: UPWord) -> dict:
    return {"prefix": list(w.prefix), "period": list(w.period)}


def word_from_json(obj, alphabet: Alphabet | None = None) -> UPWord:
    obj = _unwrap(obj, "word")
    prefix = _int_list(_require(obj, "prefix"), "prefix")
    period = _int_list(_require(obj, "period"), "period")
    if "alphabet" in obj:
        alphabet = Alphabet.from_json(obj["alphabet"])
    if alphabet is None:
        raise FormatError("word file needs an alphabet")
    return UPWord(prefix, period, alphabet)


# schedules

def schedule_to_json(f: ChallengeSchedule) -> dict:
    return {
        "alphabet": f.alphabet.to_json(),
        "entries": [{"i": i, "word": list(u)} for i, u in f.entries.items()],
        "tail": None if f.tail is None else {"start": f.tail[0], "period": f.tail[1]},
    }


def schedule_from_json(obj) -> ChallengeSchedule:
    obj = _unwrap(obj, "schedule")
    alphabet = Alphabet.from_json(_require(obj, "alphabet"))
    entries = {}
    for e in _require(obj, "entries", list):
        i = _require(e, "i", int)
        if i in entries:
            raise FormatError(f"duplicate entry for index {i}")
        entries[i] = _int_list(_require(e, "word"), "challenge word")
    tail = obj.get("tail")
    if tail is not None:
        tail = (_require(tail, "start", int), _require(tail, "period", int))
    return ChallengeSchedule(entries, alphabet, tail)


def hits_to_json(h: HitSet) -> dict:
    cert = h.certificate
    return {
        "horizon": h.horizon,
        "indices": list(h.indices),
        "certificate": None if cert is None else {"start": cert.start, "stride": cert.stride},
    }


# automata

def automaton_to_json(A: SafetyAutomaton) -> dict:
    return {
        "alphabet": A.k,
        "states": A.n_states,
        "initial": A.initial,
        "live": sorted(A.live),
        "delta": [list(row) for row in A.delta],
    }


def automaton_from_json(obj) -> SafetyAutomaton:
    k = _require(obj, "alphabet", int)
    n = _require(obj, "states", int)
    delta = _require(obj, "delta", list)
    if len(delta) != n:
        raise FormatError(f"delta has {len(delta)} rows for {n} states")
    rows = tuple(_int_list(row, "delta row") for row in delta)
    live = _int_list(_require(obj, "live"), "live")
    return SafetyAutomaton(Alphabet.finite(k), _require(obj, "initial", int), rows, frozenset(live))


def presentation_from_json(obj) -> MeagerPresentation:
    layers = _require(obj, "layers", list)
    return normalize_presentation([automaton_from_json(a) for a in layers])


def presentation_to_json(P: MeagerPresentation) -> dict:
    return {"layers": [automaton_to_json(A) for A in P.layers]}


def constraint_from_json(obj) -> ConstraintSet:
    return ConstraintSet(automaton_from_json(_require(obj, "automaton")),
                         _int_list(_require(obj, "witness"), "witness"))


def constraint_to_json(C: ConstraintSet) -> dict:
    return {"automaton": automaton_to_json(C.automaton), "witness": list(C.witness)}


def report_to_json(r: DefeatReport) -> dict:
    return {
        "verdict": "pass" if r.passed else "fail",
        "records": [{"i": x.index, "word": list(x.word), "not_in_layer": x.ok} for x in r.records],
        "hits": hits_to_json(r.hits),
        "in_union": r.in_union,
        "tail_ok": r.tail_ok,
    }


# rationals and open sets

def frac_to_json(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def frac_from_json(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str) or "." in s or "e" in s.lower():
        raise FormatError(f"rational {s!r} must be an integer or a 'p/q' string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {s!r}") from exc


def open_set_from_json(obj) -> OpenSet1D:
    eps = frac_from_json(_require(obj, "epsilon"))
    ivs = []
    for iv in _require(obj, "intervals", list):
        if not isinstance(iv, list) or len(iv) != 2:
            raise FormatError("each interval must be a [lo, hi] pair")
        ivs.append((frac_from_json(iv[0]), frac_from_json(iv[1])))
    return OpenSet1D(tuple(ivs), eps)


def open_set_to_json(U: OpenSet1D) -> dict:
    return {
        "epsilon": frac_to_json(U.epsilon),
        "intervals": [[frac_to_json(lo), frac_to_json(hi)] for lo, hi in U.intervals],
    }


def window_cert_to_json(c: WindowCertificate) -> dict:
    return {
        "records": [
            {
                "i": r.index,
                "word": list(r.word),
                "window": [frac_to_json(r.window[0]), frac_to_json(r.window[1])],
                "interval": [frac_to_json(r.interval[0]), frac_to_json(r.interval[1])],
            }
            for r in c.records
        ],
        "tail": None if c.tail is None else {"start": c.tail[0], "period": c.tail[1]},
    }
