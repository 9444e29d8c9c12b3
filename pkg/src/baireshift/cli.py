"""Command line entry point.

Exit status: 0 when the verdict passes or the construction succeeds, 1 when
a mathematical verdict fails, 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from baireshift import automata, formats
from baireshift.engine import baire_witness, defeating_challenge, verify_defeat
from baireshift.errors import BaireError
from baireshift.remark2 import PSI, remark2_contains, remark2_responder
from baireshift.challenges import hit_set
from baireshift.tailsum import corollary_demo, hits_in_U
from baireshift.words import BINARY

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _emit(obj, out=None):
    text = formats.dumps(obj)
    sys.stdout.write(text)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_nwd(args):
    A = formats.automaton_from_json(_load(args.automaton))
    cert = automata.is_nowhere_dense(A)
    obj = {"verdict": cert.verdict}
    if not cert.nowhere_dense:
        obj["witness"] = list(cert.witness)
    _emit(obj)
    return EXIT_OK if cert.nowhere_dense else EXIT_FAIL


def cmd_defeat(args):
    P = formats.presentation_from_json(_load(args.presentation))
    dc = defeating_challenge(P, args.horizon)
    f = dc.schedule
    cert = []
    for i, u in f.entries.items():
        hit = automata.intersection(automata.cylinder_automaton(u, f.alphabet), dc.images[i])
        cert.append({"i": i, "word": list(u), "disjoint": automata.is_empty(hit)})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(formats.dumps(formats.schedule_to_json(f)))
    _emit({"schedule": formats.schedule_to_json(f), "certificate": cert})
    return EXIT_OK if all(c["disjoint"] for c in cert) else EXIT_FAIL


def cmd_witness(args):
    f = formats.schedule_from_json(_load(args.schedule))
    C = formats.constraint_from_json(_load(args.constraint))
    bw = baire_witness(f, C, args.pad)
    _emit({
        "word": formats.word_to_json(bw.word),
        "consumed": list(bw.consumed),
        "hits": formats.hits_to_json(bw.hits),
        "in_constraint": automata.contains(C.automaton, bw.word),
    }, args.out)
    return EXIT_OK


def cmd_verify(args):
    P = formats.presentation_from_json(_load(args.presentation))
    f = formats.schedule_from_json(_load(args.schedule))
    w = formats.word_from_json(_load(args.word), P.alphabet)
    report = verify_defeat(P, f, w, args.horizon)
    _emit(formats.report_to_json(report))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_tailsum(args):
    w = formats.word_from_json(_load(args.word), BINARY)
    U = formats.open_set_from_json(_load(args.open_set))
    th = hits_in_U(w, U, args.horizon)
    _emit({
        "hits": list(th.hits),
        "values": [formats.frac_to_json(v) for v in th.values],
        "infinitely_often": th.infinitely_often,
    })
    return EXIT_OK


def cmd_corollary(args):
    U = formats.open_set_from_json(_load(args.open_set))
    demo = corollary_demo(U, args.start, args.period, depth=args.depth)
    _emit(demo)
    ok = demo["certificate_valid"] and demo["infinitely_often"] and not demo["missing"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_remark2(args):
    f = formats.schedule_from_json(_load(args.schedule))
    if f.alphabet.is_finite:
        raise UsageError("remark2 expects a schedule over the naturals alphabet")
    psi = PSI[args.psi]
    w = remark2_responder(f, psi)
    hits = hit_set(w, f, max(f.entries, default=0))
    consistent = remark2_contains(w, psi)
    takes_all = set(hits.indices) == set(f.entries)
    _emit({
        "word": formats.word_to_json(w),
        "consistent": consistent,
        "hits": list(hits.indices),
        "takes_all": takes_all,
    })
    return EXIT_OK if consistent and takes_all else EXIT_FAIL


def _nonneg(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {s}")
    return v


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="baireshift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nwd", help="decide nowhere density of an automaton-presented closed set")
    p.add_argument("automaton")
    p.set_defaults(func=cmd_nwd)

    p = sub.add_parser("defeat", help="build the defeating challenge for a meager presentation")
    p.add_argument("presentation")
    p.add_argument("--horizon", type=_nonneg, default=16)
    p.add_argument("-o", "--out", help="also write the bare schedule to this file")
    p.set_defaults(func=cmd_defeat)

    p = sub.add_parser("witness", help="build a point of the constraint set taking the challenges")
    p.add_argument("schedule")
    p.add_argument("constraint")
    p.add_argument("--pad", type=_nonneg, default=0)
    p.add_argument("-o", "--out", help="also write the output to this file")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="check that a word takes no challenge from inside its layer")
    p.add_argument("presentation")
    p.add_argument("schedule")
    p.add_argument("word")
    p.add_argument("--horizon", type=_nonneg, default=16)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tailsum", help="tail sums of a binary word falling into an open set")
    p.add_argument("word")
    p.add_argument("open_set")
    p.add_argument("--horizon", type=_nonneg, default=16)
    p.set_defaults(func=cmd_tailsum)

    p = sub.add_parser("corollary", help="binary word whose tail sums visit U infinitely often")
    p.add_argument("open_set")
    p.add_argument("--start", type=_nonneg, default=0)
    p.add_argument("--period", type=_positive, default=1)
    p.add_argument("--depth", type=_nonneg, default=32)
    p.set_defaults(func=cmd_corollary)

    p = sub.add_parser("remark2", help="respond to a naturals schedule inside the padded-repetition set")
    p.add_argument("schedule")
    p.add_argument("--psi", choices=sorted(PSI), default="identity")
    p.set_defaults(func=cmd_remark2)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, BaireError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
