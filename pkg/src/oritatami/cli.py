"""Command-line entry point.

Exit codes: 0 success or verdict reached, 1 usage error, 2 validation error,
3 inconclusive certificate.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import certifier, embedding, folding, formats, horizon, lsystem, render
from .lattice import Isometry, LatticePoint
from .presets import PRESETS
from .system import SystemValidationError

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3

log = logging.getLogger("oritatami")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def _read(loader, path: str):
    try:
        return loader(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like A..B, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError(f"window {text} must satisfy 1 <= A <= B")
    return lo, hi


def _levels(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"levels must be comma-separated integers, got {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("levels must be positive")
    return out


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


# ---- commands ---------------------------------------------------------------

def cmd_fold(args) -> int:
    system = _read(formats.load_os_file, args.os_file)
    result = folding.fold(system, args.max_beads, args.tie_mode)
    conf = result.configuration
    print(f"status: {result.status}")
    print(f"seed-beads: {result.seed_length}")
    print(f"transcript-beads: {result.transcript_beads}")
    print(f"bonds: {len(conf.bonds)}")
    print(f"energy: {conf.energy()}")
    if result.step is not None:
        print(f"stopped-at-bead: {result.step}")
    for c in result.tie:
        print(f"tied: position {c.position.x} {c.position.y} partners {list(c.partners)} energy {c.energy}")
    if args.trace:
        for st in result.trace:
            print(f"step {st.index} t {st.transcript_index} bead {st.bead} at {st.position.x} {st.position.y} "
                  f"bonds {list(st.partners)} lookahead-energy {st.lookahead_energy} energy {st.energy}")
    if args.dump:
        _write(args.dump, formats.emit_conformation(conf))
    if args.svg:
        _write(args.svg, render.svg_document(conf=conf))
    if args.ascii:
        sys.stdout.write(render.ascii_conformation(conf))
    return EXIT_OK


def _curve(spec) -> lsystem.Curve:
    return lsystem.interpret_turtle(lsystem.expand(spec.system, spec.iterations), spec.turtle)


def cmd_lsystem(args) -> int:
    spec = _read(formats.load_curve_spec, args.curve_spec)
    s = lsystem.expand(spec.system, spec.iterations)
    if args.print_string:
        print(s)
    if args.stats or not args.print_string:
        curve = lsystem.interpret_turtle(s, spec.turtle)
        turns = "".join(ch for ch in s if ch in spec.turtle.turns)
        end = curve.vertices[-1]
        period = lsystem.min_period(turns, args.max_period) if turns else None
        print(f"lsystem: {spec.name}")
        print(f"iterations: {spec.iterations}")
        print(f"length: {len(s)}")
        print(f"segments: {len(curve.vertices) - 1}")
        print(f"endpoint: {end.x} {end.y}")
        print(f"self-avoiding: {str(curve.is_self_avoiding()).lower()}")
        print(f"turn-period: {period if period is not None else 'none'} (max {args.max_period})")
    return EXIT_OK


def cmd_embed(args) -> int:
    spec = _read(formats.load_curve_spec, args.curve_spec)
    curve = _curve(spec)
    seq = embedding.embed_curve(curve, embedding.ShapeParams(spec.d, spec.l), check=False)
    problems = embedding.validate_shape_sequence(seq)
    print(f"construction: {seq.construction}")
    print(f"params: {spec.d} {spec.l}")
    print(f"point-shapes: {seq.n_points}")
    print(f"segment-shapes: {seq.n_segments}")
    print(f"point-shape-size: {len(seq.point_shape(0).points)}")
    if seq.n_segments:
        print(f"segment-shape-size: {len(seq.segment_shape(0).points)}")
    for p in problems:
        print(f"invalid: {p}", file=sys.stderr)
    if args.dump:
        _write(args.dump, formats.emit_shapes(seq))
    if args.svg:
        _write(args.svg, render.svg_document(shapes=seq))
    if args.ascii:
        sys.stdout.write(render.ascii_shapes(seq))
    return EXIT_INVALID if problems else EXIT_OK


def cmd_verify(args) -> int:
    system = _read(formats.load_os_file, args.os_file)
    spec = _read(formats.load_curve_spec, args.curve_spec)
    seq = embedding.embed_curve(_curve(spec), embedding.ShapeParams(spec.d, spec.l))
    g = Isometry(args.rotation, args.reflect, LatticePoint(*args.shift))
    if g != Isometry(0, False, LatticePoint(0, 0)):
        seq = seq.transformed(g)
    result = folding.fold(system, args.max_beads, args.tie_mode)
    print(f"fold-status: {result.status}")
    witness = embedding.verify_drawing(result, seq)
    if witness.ok:
        print("drawing: yes")
        print("cut-indices: " + " ".join(map(str, witness.indices)))
        print("beads-per-shape: " + " ".join(map(str, witness.counts)))
        for kind in (embedding.POINT, embedding.SEGMENT):
            print(f"constant-{kind}-counts: {str(witness.constant_counts(kind)).lower()}")
        return EXIT_OK
    v = witness.violation
    print("drawing: no")
    print(f"first-violation: bead {v.bead}: {v.reason}")
    return EXIT_INVALID


def cmd_horizons(args) -> int:
    system = _read(formats.load_os_file, args.os_file)
    result = folding.fold(system, args.max_beads, args.tie_mode)
    conf = result.configuration
    s = result.seed_length
    first: dict = {}
    repeats = []
    for st in result.trace:
        h = horizon.extract_horizon(conf, st.index, system.delay, system.arity, system.transcript, s)
        print(f"step {st.index} phase {h.phase if h.phase is not None else '-'} key {h.canonical_key}")
        if h.canonical_key in first:
            repeats.append((first[h.canonical_key], st.index, h.phase))
        else:
            first[h.canonical_key] = st.index
    for i, j, phase in repeats:
        print(f"repeat {i} {j} phase {phase if phase is not None else '-'}")
    print(f"status: {result.status}")
    print(f"distinct-horizons: {len(first)}")
    return EXIT_OK


def cmd_certify(args) -> int:
    spec = _read(formats.load_curve_spec, args.curve_spec)
    if spec.delays is None:
        raise UsageError(f"{args.curve_spec}: no delay bounds for a custom curve; add 'delay-bound' lines")
    missing = [n for n in args.levels if n not in spec.delays.bounds]
    if missing:
        raise UsageError(f"{args.curve_spec}: no delay bound for level(s) {missing}")
    report = certifier.certify_curve(spec, args.p_o, args.p_pl, levels=args.levels, window=args.window,
                                     expansion_depth=args.expansion_depth,
                                     check_stability=not args.no_stability_check, reach=args.reach)
    sys.stdout.write(report.to_text())
    if args.region is not None:
        i, n = args.region
        seq = certifier.build_sequence(spec, report.expansion_depth)
        region = certifier.horizon_region(i, n, seq, spec.delays)
        _write(args.region_out, formats.emit_region(i, n, region.region))
    return EXIT_OK if report.all_delays == certifier.HOLDS else EXIT_INCONCLUSIVE


def cmd_preset(args) -> int:
    sys.stdout.write(PRESETS[args.name])
    return EXIT_OK


# ---- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oritatami", description="Oritatami folding, fractal-curve embeddings and impossibility checks.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fold_opts(q, need_max=True):
        q.add_argument("--max-beads", type=_positive, required=need_max, help="transcript beads to stabilize")
        q.add_argument("--tie-mode", choices=folding.TIE_MODES, default="conformation",
                       help="what counts as a tie (default: conformation)")

    q = sub.add_parser("fold", help="fold a system")
    q.add_argument("os_file")
    fold_opts(q)
    q.add_argument("--trace", action="store_true", help="print every stabilization")
    q.add_argument("--dump", metavar="OUT", help="write the conformation dump")
    q.add_argument("--svg", metavar="OUT", help="write an SVG picture")
    q.add_argument("--ascii", action="store_true", help="print a text picture")
    q.set_defaults(func=cmd_fold)

    q = sub.add_parser("lsystem", help="expand a curve spec")
    q.add_argument("curve_spec")
    q.add_argument("--print-string", action="store_true")
    q.add_argument("--stats", action="store_true")
    q.add_argument("--max-period", type=_positive, default=100)
    q.set_defaults(func=cmd_lsystem)

    q = sub.add_parser("embed", help="build and check the shape sequence of a curve")
    q.add_argument("curve_spec")
    q.add_argument("--dump", metavar="OUT")
    q.add_argument("--svg", metavar="OUT")
    q.add_argument("--ascii", action="store_true")
    q.set_defaults(func=cmd_embed)

    q = sub.add_parser("verify", help="check whether a fold draws a curve")
    q.add_argument("os_file")
    q.add_argument("curve_spec")
    fold_opts(q)
    q.add_argument("--shift", type=int, nargs=2, default=(0, 0), metavar=("X", "Y"),
                   help="translate the shape sequence")
    q.add_argument("--rotation", type=int, default=0, choices=range(6), help="rotate shapes by k * 60 degrees")
    q.add_argument("--reflect", action="store_true", help="mirror shapes before rotating")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("horizons", help="canonical horizon per step and repeats")
    q.add_argument("os_file")
    fold_opts(q)
    q.set_defaults(func=cmd_horizons)

    q = sub.add_parser("certify", help="dependency depth and pigeonhole verdicts")
    q.add_argument("curve_spec")
    q.add_argument("--p-o", type=_positive, required=True, help="period of the system")
    q.add_argument("--p-pl", type=_positive, required=True, help="beads per point-shape plus segment-shape")
    q.add_argument("--levels", type=_levels, default=[1])
    q.add_argument("--window", type=_window, default=(10, 2000))
    q.add_argument("--expansion-depth", type=int, default=None)
    q.add_argument("--reach", choices=certifier.REACH_MODES, default="point",
                   help="count only point-shapes (default) or any shape when finding r_i")
    q.add_argument("--no-stability-check", action="store_true", help="skip the one-deeper expansion check")
    q.add_argument("--region", type=int, nargs=2, metavar=("I", "N"), help="also dump E(I, N)")
    q.add_argument("--region-out", default="region.txt", metavar="OUT")
    q.set_defaults(func=cmd_certify)

    q = sub.add_parser("preset", help="print a bundled input file")
    q.add_argument("name", choices=sorted(PRESETS))
    q.set_defaults(func=cmd_preset)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"oritatami: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (formats.FormatError, SystemValidationError, embedding.EmbeddingError) as e:
        print(f"oritatami: {e}", file=sys.stderr)
        return EXIT_INVALID
    except certifier.BoundaryError as e:
        print(f"oritatami: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
