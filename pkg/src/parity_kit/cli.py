"""Command-line front end with JSON output.

Subcommands: parse, invariants, classes, surface, moves, fuzz,
enumerate, corpus.  Every emitted object carries "schema": 1; output is
deterministic (sorted keys, no timestamps).  Exit codes: 0 success,
1 parse error, 2 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import diagrams as _dg
from . import invariants as _inv
from . import moves as _mv
from . import oracle as _or
from . import parity as _pt
from . import surface as _sf
from .diagrams import Flavor, ParityKitError

SCHEMA = 1


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit(obj: dict, pretty: bool) -> None:
    obj = {"schema": SCHEMA, **obj}
    if pretty:
        text = json.dumps(obj, indent=2, sort_keys=True)
    else:
        text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    sys.stdout.write(text + "\n")


def _guess_flavor(code: str) -> str:
    if "O" in code or "U" in code:
        return "virtual"
    if ">" in code or "<" in code:
        return "flat"
    return "free"


def _input_codes(args) -> list:
    codes = []
    for item in args.codes:
        if item == "-":
            for line in sys.stdin:
                line = line.strip()
                if line and not line.startswith("#"):
                    codes.append(line)
        else:
            codes.append(item)
    return codes


def _parse_all(args) -> list:
    out = []
    for code in _input_codes(args):
        flavor = args.flavor or _guess_flavor(code)
        try:
            out.append(_dg.parse_gauss_code(code, flavor))
        except ParityKitError as exc:
            raise _CliError("parse error: %s" % exc, 1)
    return out


def _h_json(group) -> dict:
    return {"rank": group.rank, "torsion": list(group.torsion)}


def cmd_parse(args) -> int:
    for d in _parse_all(args):
        _emit(
            {
                "code": _dg.serialize(d),
                "flavor": d.flavor.value,
                "n": d.n,
                "basepoint": d.basepoint,
            },
            args.pretty,
        )
    return 0


def cmd_invariants(args) -> int:
    for d in _parse_all(args):
        obj = {"code": _dg.serialize(d), "flavor": d.flavor.value}
        obj["l_odd"] = _inv.l_odd(d)
        ls_inv, ls_ni = _inv.og_linking_multisets(d)
        obj["ls_inv"] = ls_inv
        obj["ls_ni"] = ls_ni
        if d.flavor is not Flavor.FREE:
            obj["writhe"] = _inv.writhe(d)
            hp = _pt.homological_parity(d)
            obj["ls_signed"] = _inv.linking_multiset_signed(d, hp)
            obj["H"] = _h_json(hp.group)
        _emit(obj, args.pretty)
    return 0


def cmd_classes(args) -> int:
    for d in _parse_all(args):
        try:
            classes = _pt.classify_chords(d)
        except _pt.ConsistencyError as exc:
            raise _CliError("consistency failure: %s" % exc, 2)
        rows = []
        for lab in d.labels():
            cls = classes[lab]
            rows.append(
                {
                    "chord": lab,
                    "gp": _pt.gaussian_parity(d, lab),
                    "class": cls.value,
                    "z4": cls.z4,
                    "labeling_canonical": False,
                }
            )
        _emit({"code": _dg.serialize(d), "chords": rows}, args.pretty)
    return 0


def cmd_surface(args) -> int:
    for d in _parse_all(args):
        if d.flavor is Flavor.FREE:
            raise _CliError("parse error: surface needs a flat or virtual code", 1)
        data = _sf.trace_faces(d)
        pres = _sf.presentation(d)
        hp = _pt.homological_parity(d)
        obj = {
            "code": _dg.serialize(d),
            "genus": data.genus,
            "faces": [[[c, e] for c, e in f.corners] for f in data.faces],
            "pi_presentation": {
                "generators": list(pres.generators),
                "relators": [[[c, e] for c, e in rel] for rel in pres.relators],
            },
            "H": _h_json(hp.group),
            "parities": {lab: list(hp.values[lab]) for lab in d.labels()},
        }
        if d.basepoint is not None:
            words = _sf.homotopical_parity_words(d)
            obj["words"] = {lab: [[c, e] for c, e in words[lab]] for lab in words}
        _emit(obj, args.pretty)
    return 0


def cmd_moves(args) -> int:
    for d in _parse_all(args):
        obj = {"code": _dg.serialize(d)}
        if args.apply is not None:
            try:
                move = _mv.parse_move(args.apply)
            except ParityKitError as exc:
                raise _CliError("parse error: %s" % exc, 1)
            try:
                rec = _mv.apply(d, move)
            except ParityKitError as exc:
                raise _CliError("inapplicable move: %s" % exc, 1)
            obj["move"] = move.text()
            obj["target"] = _dg.serialize(rec.target)
            obj["correspondence"] = dict(sorted(rec.correspondence.items()))
            obj["created"] = sorted(rec.created)
            obj["removed"] = sorted(rec.removed)
        else:
            obj["moves"] = [m.text() for m in _mv.enumerate_moves(d)]
        _emit(obj, args.pretty)
    return 0


def cmd_enumerate(args) -> int:
    try:
        stream = _or.enumerate_diagrams(args.chords, args.flavor or "free")
    except ParityKitError as exc:
        raise _CliError("parse error: %s" % exc, 1)
    count = 0
    for d in stream:
        count += 1
        _emit({"code": _dg.serialize(d), "flavor": d.flavor.value}, args.pretty)
    _emit({"count": count}, args.pretty)
    return 0


def _fuzz_one(task):
    code, flavor, steps, seed = task
    d = _dg.parse_gauss_code(code, flavor)
    rng = random.Random(seed)
    failures = []
    chain = _mv.random_walk(d, steps, rng)
    end = chain[-1].target if chain else d
    parities = (
        ("gaussian", "og")
        if d.flavor is Flavor.FREE
        else ("gaussian", "og", "index", "homological")
    )
    for pname in parities:
        failures.extend(
            "%s | %s | %s" % (_dg.serialize(end), pname, line)
            for line in _or.verify_parity_axioms(end, pname, include_adds=False)
        )
    shadow = end if end.flavor is Flavor.FREE else _dg.project(end, Flavor.FREE)
    failures.extend(
        "%s | classes | %s" % (_dg.serialize(end), line)
        for line in _or.verify_class_consistency(shadow)
    )
    return len(chain), failures


def cmd_fuzz(args) -> int:
    seed = args.rng_seed
    if seed is None:
        seed = int(os.environ.get("PARITY_KIT_SEED", "0"))
    rng = random.Random(seed)
    flavor = args.flavor or "free"
    pool = [
        _dg.serialize(d) for d in _or.enumerate_diagrams(min(args.chords, 3), flavor)
    ]
    tasks = []
    for i in range(args.seeds):
        tasks.append((rng.choice(pool), flavor, args.len, rng.randrange(2**32)))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool_exec:
            results = list(pool_exec.map(_fuzz_one, tasks))
    else:
        results = [_fuzz_one(t) for t in tasks]
    moves = sum(r[0] for r in results)
    failures = [line for r in results for line in r[1]]
    _emit(
        {
            "seeds": args.seeds,
            "moves": moves,
            "rng_seed": seed,
            "failures": failures,
        },
        args.pretty,
    )
    return 2 if failures else 0


def cmd_corpus(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as handle:
            entries = _dg.load_corpus(handle)
    except OSError as exc:
        raise _CliError("parse error: %s" % exc, 1)
    except ParityKitError as exc:
        raise _CliError("parse error: %s" % exc, 1)
    for entry in entries:
        round_trip = _dg.serialize(entry.diagram)
        if round_trip != entry.code:
            raise _CliError(
                "consistency failure: corpus round trip changed %r" % entry.name, 2
            )
        _emit(
            {
                "name": entry.name,
                "flavor": entry.flavor.value,
                "code": entry.code,
                "n": entry.diagram.n,
                "l_odd": _inv.l_odd(entry.diagram),
            },
            args.pretty,
        )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parity-kit",
        description="Parity functors and derived invariants of chord diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, codes=True):
        p.add_argument(
            "--flavor",
            choices=("free", "flat", "virtual"),
            help="decoration flavor (default: guessed from the code)",
        )
        p.add_argument(
            "--pretty", action="store_true", help="indented JSON output"
        )
        if codes:
            p.add_argument(
                "codes", nargs="+", help="Gauss codes, or - to read stdin"
            )

    p = sub.add_parser("parse", help="parse codes and echo normalized form")
    common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("invariants", help="derived invariants per diagram")
    common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classes", help="oriented Gaussian chord classes")
    common(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("surface", help="Carter surface, presentation, homology")
    common(p)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("moves", help="list or apply Reidemeister moves")
    common(p)
    p.add_argument("--list", action="store_true", help="list move sites (default)")
    p.add_argument("--apply", metavar="MOVE", help="apply one move by its text form")
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("fuzz", help="random-walk axiom fuzzing")
    common(p, codes=False)
    p.add_argument("--seeds", type=int, default=20, help="number of walks")
    p.add_argument("--len", type=int, default=10, help="walk length")
    p.add_argument("--chords", type=int, default=3, help="seed diagram size")
    p.add_argument(
        "--rng-seed",
        type=int,
        default=None,
        help="random seed (default: $PARITY_KIT_SEED or 0)",
    )
    p.add_argument(
        "--jobs", type=int, default=os.cpu_count() or 1, help="worker processes"
    )
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("enumerate", help="list all diagrams of a given size")
    common(p, codes=False)
    p.add_argument("--chords", type=int, required=True, help="number of chords")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("corpus", help="batch-process a corpus file")
    p.add_argument("--pretty", action="store_true", help="indented JSON output")
    p.add_argument("file", help="corpus file (name<TAB>flavor<TAB>code)")
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        sys.stderr.write("%s\n" % exc)
        return exc.code
    except ParityKitError as exc:
        sys.stderr.write("parse error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
