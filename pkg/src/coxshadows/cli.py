"""Command line front end: compute, verify, benchmark, render.

Four subcommands.  ``shadow`` prints one shadow (or one per direction) as
JSON, ``verify`` replays the oracle suites as JSON lines and exits with
the failure count, ``bench`` times the algorithms against each other as
CSV, and ``render`` writes a rank-2 scene as SVG.

Output is deterministic for fixed arguments except for the timing
fields, which are wall-clock measurements.
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time

from . import kernels, oracles, render, shadows
from .coxeter import (
    datum_from_tag,
    element_from_word,
    length,
    reduced_word,
)
from .errors import CoxshadowsError
from .orientations import (
    AlcoveOrientation,
    Direction,
    TrivialOrientation,
    WeylChamberOrientation,
    orientation_from_tag,
)

BRAID_CHECK_CAP = 10


def _parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    if "," in text:
        return tuple(int(p) for p in text.split(","))
    return tuple(int(c) for c in text)


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- shadow ------------------------------------------------------------------


def _word_level_safe(ori, x) -> str | None:
    """Reason the element-level call must be refused, if any.

    Element shadows are only well defined when every reduced word gives
    the same set.  Trivial, chamber and base-alcove orientations always
    have that property; anything else is probed directly when the element
    is short enough and refused otherwise.
    """
    if isinstance(ori, (TrivialOrientation, WeylChamberOrientation)):
        return None
    if isinstance(ori, AlcoveOrientation) and ori.alcove.is_identity():
        return None
    if length(x) > BRAID_CHECK_CAP:
        return ("cannot certify braid invariance for this orientation at "
                f"length {length(x)}; pass --word to pick a reduced word")
    if not shadows.is_braid_invariant(ori, x):
        return ("this orientation gives different shadows for different "
                "reduced words; pass --word to pick one")
    return None


def cmd_shadow(args) -> int:
    datum = datum_from_tag(args.type)
    if (args.word is None) == (args.element is None):
        return _fail("pass exactly one of --word or --element")
    letters = _parse_word(args.word if args.word is not None else args.element)
    x = element_from_word(datum, letters)

    if args.algorithm == "R":
        if args.orient is not None:
            return _fail("algorithm R computes every direction at once; "
                         "it takes no --orient")
        if not datum.affine:
            return _fail("algorithm R runs on affine types")
        per_dir = shadows.shadow_R(
            x, backend=args.backend,
            word=letters if args.word is not None else None)
        out = {"directions": {
            "".join(map(str, reduced_word(d.label))) or "e": sh.to_json()
            for d, sh in per_dir.items()}}
        print(_dumps(out))
        return 0

    if args.algorithm in ("L", "partial"):
        if not datum.affine:
            return _fail(f"algorithm {args.algorithm} runs on affine types")
        ori = orientation_from_tag(datum, args.orient or "dir:")
        if not isinstance(ori, WeylChamberOrientation):
            return _fail(f"algorithm {args.algorithm} needs a chamber "
                         "orientation (a 'dir:<word>' tag)")
        if args.algorithm == "L":
            sh = shadows.shadow_L(
                x, ori.direction, backend=args.backend,
                word=letters if args.word is not None else None)
        else:
            a = element_from_word(
                datum.spherical_datum, _parse_word(args.local_dir))
            sh = shadows.partial_shadow(x, ori.direction, a,
                                        backend=args.backend)
        print(_dumps(sh.to_json()))
        return 0

    # naive sweep, optionally fold-bounded
    ori = orientation_from_tag(datum, args.orient or "+")
    if args.element is not None:
        reason = _word_level_safe(ori, x)
        if reason:
            return _fail(reason)
        letters = reduced_word(x)
    sh = shadows.shadow_naive(letters, ori, max_folds=args.max_folds,
                              backend=args.backend)
    print(_dumps(sh.to_json()))
    return 0


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    failures = 0
    total = 0
    for tag in args.types.split(","):
        datum = datum_from_tag(tag.strip())
        for rep in oracles.run_suite(args.suite, datum,
                                     max_length=args.max_length):
            total += 1
            failures += 0 if rep.passed else 1
            print(rep.to_json())
    print(f"{args.suite}: {total} reports, {failures} failures",
          file=sys.stderr)
    return min(failures, 125)


# -- bench ---------------------------------------------------------------------


def _parse_lengths(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(p) for p in text.split(",")]


def staircase_word(datum, target: int) -> tuple[int, ...]:
    """Deterministic reduced word of any length: always append the
    smallest generator that goes up."""
    x = datum.identity
    out = []
    while len(out) < target:
        for s in datum.gens:
            y = x * datum.generator(s)
            if length(y) > length(x):
                x = y
                out.append(s)
                break
        else:
            raise CoxshadowsError(f"no element of length {target} in {datum.tag}")
    return tuple(out)


def _bench_once(datum, algorithm, word, direction, backend):
    top = datum.spherical_datum.w0_length
    t0 = time.perf_counter()
    if algorithm == "L":
        sh = shadows.shadow_L(element_from_word(datum, word), direction,
                              backend=backend, word=word)
        size, ops = len(sh), sh.request.get("states", 0)
    elif algorithm == "R":
        per_dir = shadows.shadow_R(element_from_word(datum, word),
                                   backend=backend, word=word)
        union = set()
        for sh in per_dir.values():
            union |= sh.elements
        size, ops = len(union), sum(
            sh.request.get("states", 0) for sh in per_dir.values())
    elif algorithm == "naive":
        ori = WeylChamberOrientation(datum, direction)
        sh = shadows.shadow_naive(word, ori, backend=backend)
        size, ops = len(sh), sh.request.get("leaves", 0)
    elif algorithm == "naive_bounded":
        ori = WeylChamberOrientation(datum, direction)
        sh = shadows.shadow_naive(word, ori, max_folds=top, backend=backend)
        size, ops = len(sh), sh.request.get("leaves", 0)
    else:
        raise CoxshadowsError(f"unknown algorithm {algorithm!r}")
    return (time.perf_counter() - t0) * 1000.0, size, ops


def cmd_bench(args) -> int:
    datum = datum_from_tag(args.type)
    if not datum.affine:
        return _fail("bench runs on affine types")
    lengths = _parse_lengths(args.lengths)
    algorithms = [a.strip() for a in args.algorithms.split(",")]
    backends = [k.strip() for k in args.kernels.split(",")]
    direction = Direction.from_element(datum, datum.spherical_datum.identity)

    writer = csv.writer(sys.stdout)
    writer.writerow(["algorithm", "kernel", "length", "median_ms",
                     "size", "ops"])
    for algorithm in algorithms:
        cap = (shadows.NAIVE_CAP if algorithm == "naive"
               else shadows.NAIVE_CAP_BOUNDED if algorithm == "naive_bounded"
               else None)
        for backend in backends:
            for n in lengths:
                if cap is not None and n > cap:
                    print(f"# skip {algorithm} at length {n}: over the "
                          f"cap {cap}", file=sys.stderr)
                    continue
                word = staircase_word(datum, n)
                times = []
                size = ops = 0
                for _ in range(args.repeats):
                    ms, size, ops = _bench_once(
                        datum, algorithm, word, direction, backend)
                    times.append(ms)
                writer.writerow([
                    algorithm, kernels.active_backend(backend), n,
                    f"{statistics.median(times):.3f}", size, ops])
    return 0


# -- render ----------------------------------------------------------------------


def cmd_render(args) -> int:
    datum = datum_from_tag(args.type)
    x = element_from_word(datum, _parse_word(args.element))
    direction = Direction.from_word(datum, _parse_word(args.dir))
    scene, _ = render.render_svg(x, direction, radius=args.radius,
                                 out_path=args.out)
    print(_dumps({
        "out": args.out,
        "type": datum.tag,
        "element": "".join(map(str, reduced_word(x))) or "e",
        "direction": "".join(map(str, reduced_word(direction.label))) or "e",
        "full": len(scene.full),
        "regular": len(scene.regular),
        "grid": len(scene.grid),
    }))
    return 0


# -- wiring ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="coxshadows",
        description="shadows of folded galleries in finite and affine "
                    "Weyl groups")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("shadow", help="compute one shadow as JSON")
    ps.add_argument("--type", required=True, help="group tag, e.g. A2~ or B2")
    ps.add_argument("--word", help="letters of a (not necessarily reduced) "
                                   "word, e.g. 012 or 0,1,2")
    ps.add_argument("--element", help="letters of a word naming an element; "
                                      "a reduced word is chosen internally")
    ps.add_argument("--orient", help="+, -, id-alcove, dir:<word>, "
                                     "table:<file.json>")
    ps.add_argument("--algorithm", default="naive",
                    choices=("naive", "L", "R", "partial"))
    ps.add_argument("--local-dir", default="",
                    help="chamber word for --algorithm partial")
    ps.add_argument("--max-folds", type=int, default=None,
                    help="fold budget for the naive sweep")
    ps.add_argument("--backend", default=None,
                    choices=kernels.BACKENDS)
    ps.set_defaults(func=cmd_shadow)

    pv = sub.add_parser("verify", help="replay an oracle suite as JSONL")
    pv.add_argument("--suite", required=True, choices=sorted(oracles.SUITES))
    pv.add_argument("--max-length", type=int, default=4)
    pv.add_argument("--types", default="A2~",
                    help="comma separated group tags")
    pv.set_defaults(func=cmd_verify)

    pb = sub.add_parser("bench", help="time the algorithms, CSV to stdout")
    pb.add_argument("--type", default="A2~")
    pb.add_argument("--lengths", default="4..12",
                    help="either lo..hi or a comma list")
    pb.add_argument("--algorithms", default="L,R,naive_bounded")
    pb.add_argument("--kernels", default="numba",
                    help="comma separated backends to time")
    pb.add_argument("--repeats", type=int, default=3)
    pb.set_defaults(func=cmd_bench)

    pr = sub.add_parser("render", help="write a rank-2 scene as SVG")
    pr.add_argument("--type", required=True)
    pr.add_argument("--element", required=True)
    pr.add_argument("--dir", default="", help="spherical word of the "
                                              "direction for the dark layer")
    pr.add_argument("--radius", type=float, default=2.6)
    pr.add_argument("--out", required=True)
    pr.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CoxshadowsError as exc:
        return _fail(str(exc))
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
