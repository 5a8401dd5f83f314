"""Line-based text formats: systems, curve specs, conformation and shape dumps.

Every file starts with ``format-version 1``. Blank lines and ``#`` comments
are ignored. Parse errors name the source and line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certifier import KOCH_DELAYS, MINKOWSKI_DELAYS, CurveSpec, DelayBoundFamily
from .embedding import POINT, SEGMENT, Shape, ShapeParams, ShapeSequence
from .lattice import LatticePoint
from .lsystem import KOCH, KOCH_TURTLE, MINKOWSKI, MINKOWSKI_TURTLE, LSystem, TurtleSemantics, normalize
from .system import Configuration, OritatamiSystem, Ruleset, SystemValidationError, Transcript, validate_system

FORMAT_VERSION = 1


class FormatError(ValueError):
    def __init__(self, source: str, line: int | None, message: str):
        self.source = source
        self.line = line
        self.message = message
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class _Line:
    number: int
    directive: str
    args: list


def _lines(text: str, source: str) -> list[_Line]:
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            words = body.split()
            out.append(_Line(n, words[0], words[1:]))
    if not out or out[0].directive != "format-version":
        first = out[0].number if out else None
        raise FormatError(source, first, "missing 'format-version 1' header")
    head = out[0]
    if head.args != [str(FORMAT_VERSION)]:
        raise FormatError(source, head.number, f"unsupported format version {' '.join(head.args) or '(none)'}")
    return out[1:]


def _int(tok: str, source: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(source, line, f"malformed {what} {tok!r}: expected an integer") from None


def _arity(ln: _Line, n: int, source: str):
    if len(ln.args) != n:
        raise FormatError(source, ln.number, f"'{ln.directive}' takes {n} argument(s), got {len(ln.args)}")


def _once(seen: dict, ln: _Line, source: str):
    if ln.directive in seen:
        raise FormatError(source, ln.number, f"duplicate '{ln.directive}' (first on line {seen[ln.directive]})")
    seen[ln.directive] = ln.number


# ---- oritatami system -------------------------------------------------------

def parse_os_file(text: str, source: str = "<os>") -> OritatamiSystem:
    alphabet = None
    delay = arity = None
    rules: list[tuple[str, str]] = []
    transcript = None
    seed: list[tuple[LatticePoint, str]] = []
    seed_bonds: list[tuple[int, int]] = []
    seen: dict = {}
    where: dict = {}
    for ln in _lines(text, source):
        d = ln.directive
        if d == "alphabet":
            _once(seen, ln, source)
            if not ln.args:
                raise FormatError(source, ln.number, "empty alphabet")
            alphabet = tuple(ln.args)
        elif d in ("delay", "arity"):
            _once(seen, ln, source)
            _arity(ln, 1, source)
            value = _int(ln.args[0], source, ln.number, d)
            if d == "delay":
                delay = value
            else:
                arity = value
        elif d == "rule":
            _arity(ln, 2, source)
            rules.append((ln.args[0], ln.args[1]))
            where.setdefault(("rule", ln.args[0]), ln.number)
            where.setdefault(("rule", ln.args[1]), ln.number)
        elif d == "transcript":
            _once(seen, ln, source)
            if not ln.args or ln.args[0] not in ("cyclic", "finite"):
                raise FormatError(source, ln.number, "transcript must be 'cyclic' or 'finite' followed by symbols")
            if len(ln.args) < 2:
                raise FormatError(source, ln.number, "transcript has no beads")
            transcript = Transcript(ln.args[0], tuple(ln.args[1:]))
            for s in ln.args[1:]:
                where.setdefault(("transcript", s), ln.number)
        elif d == "seed":
            _arity(ln, 3, source)
            x = _int(ln.args[0], source, ln.number, "coordinate")
            y = _int(ln.args[1], source, ln.number, "coordinate")
            seed.append((LatticePoint(x, y), ln.args[2]))
            where.setdefault(("seed", ln.args[2]), ln.number)
        elif d == "seedbond":
            _arity(ln, 2, source)
            i = _int(ln.args[0], source, ln.number, "seed index")
            j = _int(ln.args[1], source, ln.number, "seed index")
            if not (0 <= i < len(seed) and 0 <= j < len(seed)):
                raise FormatError(source, ln.number, f"seedbond {i} {j} refers to a seed bead not yet declared")
            seed_bonds.append((i, j))
        else:
            raise FormatError(source, ln.number, f"unknown directive {d!r}")
        if alphabet is not None:
            known = set(alphabet)
            bad = [(k, s) for k, s in where if s not in known]
            if bad:
                kind, s = bad[0]
                raise FormatError(source, where[bad[0]], f"{kind} symbol {s!r} not in alphabet")
    for name, value in (("alphabet", alphabet), ("delay", delay), ("arity", arity), ("transcript", transcript)):
        if value is None:
            raise FormatError(source, None, f"missing '{name}' directive")
    if not seed:
        raise FormatError(source, None, "missing 'seed' directive")
    conf = Configuration(tuple(p for p, _ in seed), tuple(b for _, b in seed),
                         frozenset(tuple(sorted(b)) for b in seed_bonds))
    system = OritatamiSystem(alphabet, transcript, Ruleset.from_pairs(rules), delay, arity, conf)
    problems = validate_system(system)
    if problems:
        raise FormatError(source, None, "invalid system: " + "; ".join(problems))
    return system


def emit_os_file(system: OritatamiSystem) -> str:
    lines = [f"format-version {FORMAT_VERSION}", "alphabet " + " ".join(system.alphabet),
             f"delay {system.delay}", f"arity {system.arity}"]
    lines += [f"rule {a} {b}" for a, b in system.ruleset.sorted_pairs()]
    lines.append(f"transcript {system.transcript.kind} " + " ".join(system.transcript.beads))
    lines += [f"seed {p.x} {p.y} {b}" for p, b in zip(system.seed.path, system.seed.beads)]
    lines += [f"seedbond {i} {j}" for i, j in sorted(system.seed.bonds)]
    return "\n".join(lines) + "\n"


def load_os_file(path: str) -> OritatamiSystem:
    with open(path, encoding="utf-8") as f:
        return parse_os_file(f.read(), path)


# ---- curve specification ----------------------------------------------------

_BUILTIN = {
    "koch": (KOCH, KOCH_TURTLE, KOCH_DELAYS),
    "minkowski": (MINKOWSKI, MINKOWSKI_TURTLE, MINKOWSKI_DELAYS),
}
_CUSTOM_ONLY = ("axiom", "rule", "angle-left", "angle-right", "lattice")


def parse_curve_spec(text: str, source: str = "<curve>") -> CurveSpec:
    kind = None
    axiom = None
    rules: dict = {}
    angles: dict = {}
    lattice = None
    iterations, d, l = 0, 2, 3
    bounds: dict = {}
    seen: dict = {}
    custom_lines: dict = {}
    for ln in _lines(text, source):
        k = ln.directive
        if k == "lsystem":
            _once(seen, ln, source)
            _arity(ln, 1, source)
            if ln.args[0] not in ("koch", "minkowski", "custom"):
                raise FormatError(source, ln.number, f"unknown lsystem {ln.args[0]!r}")
            kind = ln.args[0]
        elif k == "axiom":
            _once(seen, ln, source)
            _arity(ln, 1, source)
            axiom = normalize(ln.args[0])
            custom_lines.setdefault(k, ln.number)
        elif k == "rule":
            _arity(ln, 2, source)
            if len(ln.args[0]) != 1:
                raise FormatError(source, ln.number, f"rule variable must be one symbol, got {ln.args[0]!r}")
            if ln.args[0] in rules:
                raise FormatError(source, ln.number, f"second rule for {ln.args[0]!r}")
            rules[ln.args[0]] = normalize(ln.args[1])
            custom_lines.setdefault(k, ln.number)
        elif k in ("angle-left", "angle-right"):
            _once(seen, ln, source)
            _arity(ln, 1, source)
            angles[k] = _int(ln.args[0], source, ln.number, "angle")
            custom_lines.setdefault(k, ln.number)
        elif k == "lattice":
            _once(seen, ln, source)
            _arity(ln, 1, source)
            if ln.args[0] not in ("triangular", "rhombus"):
                raise FormatError(source, ln.number, f"unknown lattice {ln.args[0]!r}")
            lattice = ln.args[0]
            custom_lines.setdefault(k, ln.number)
        elif k in ("iterations", "shape-d", "shape-l"):
            _once(seen, ln, source)
            _arity(ln, 1, source)
            v = _int(ln.args[0], source, ln.number, k)
            if v < (0 if k == "iterations" else 1):
                raise FormatError(source, ln.number, f"{k} out of range: {v}")
            if k == "iterations":
                iterations = v
            elif k == "shape-d":
                d = v
            else:
                l = v
        elif k == "delay-bound":
            _arity(ln, 4, source)
            n, c0, cd, cl = (_int(t, source, ln.number, "delay-bound field") for t in ln.args)
            bounds[n] = (c0, cd, cl)
        else:
            raise FormatError(source, ln.number, f"unknown directive {k!r}")
    if kind is None:
        raise FormatError(source, None, "missing 'lsystem' directive")
    if kind in _BUILTIN:
        if custom_lines:
            name, line = min(custom_lines.items(), key=lambda kv: kv[1])
            raise FormatError(source, line, f"'{name}' cannot override the built-in {kind} system")
        system, turtle, family = _BUILTIN[kind]
    else:
        for name, value in (("axiom", axiom), ("lattice", lattice)):
            if value is None:
                raise FormatError(source, None, f"custom lsystem needs '{name}'")
        for name in ("angle-left", "angle-right"):
            if name not in angles:
                raise FormatError(source, None, f"custom lsystem needs '{name}'")
        variables = set(rules) | {c for c in axiom + "".join(rules.values()) if c.isalpha()}
        constants = {c for c in axiom + "".join(rules.values())} - variables
        try:
            system = LSystem(variables, constants, axiom, rules)
            turtle = TurtleSemantics.from_angles(lattice, angles["angle-left"], angles["angle-right"],
                                                 moves=tuple(sorted(variables)))
        except ValueError as e:
            raise FormatError(source, custom_lines.get("axiom"), str(e)) from None
        family = None
    if bounds:
        try:
            family = DelayBoundFamily(kind, {**(family.bounds if family else {}), **bounds})
        except ValueError as e:
            raise FormatError(source, None, str(e)) from None
    try:
        ShapeParams(d, l)
    except ValueError as e:
        raise FormatError(source, None, str(e)) from None
    return CurveSpec(kind, system, turtle, iterations, d, l, family)


def emit_curve_spec(spec: CurveSpec) -> str:
    lines = [f"format-version {FORMAT_VERSION}", f"lsystem {spec.name}"]
    builtin = _BUILTIN.get(spec.name)
    if builtin is None:
        lines.append(f"axiom {spec.system.axiom}")
        lines += [f"rule {v} {r}" for v, r in sorted(spec.system.rules.items())]
        unit = 60 if spec.turtle.lattice == "triangular" else 90
        turns = spec.turtle.turns
        left = max(turns, key=lambda s: turns[s])
        right = min(turns, key=lambda s: turns[s])
        lines += [f"angle-left {turns[left] * unit}", f"angle-right {-turns[right] * unit}",
                  f"lattice {spec.turtle.lattice}"]
    lines += [f"iterations {spec.iterations}", f"shape-d {spec.d}", f"shape-l {spec.l}"]
    if spec.delays is not None and (builtin is None or spec.delays != builtin[2]):
        lines += [f"delay-bound {n} {c0} {cd} {cl}" for n, (c0, cd, cl) in sorted(spec.delays.bounds.items())]
    return "\n".join(lines) + "\n"


def load_curve_spec(path: str) -> CurveSpec:
    with open(path, encoding="utf-8") as f:
        return parse_curve_spec(f.read(), path)


# ---- conformation dump ------------------------------------------------------

def emit_conformation(conf: Configuration) -> str:
    lines = [f"format-version {FORMAT_VERSION}"]
    lines += [f"bead {k} {p.x} {p.y} {b}" for k, (p, b) in enumerate(zip(conf.path, conf.beads))]
    lines += [f"bond {i} {j}" for i, j in sorted(conf.bonds)]
    return "\n".join(lines) + "\n"


def parse_conformation(text: str, source: str = "<dump>") -> Configuration:
    beads: list = []
    bonds: list = []
    for ln in _lines(text, source):
        if ln.directive == "bead":
            _arity(ln, 4, source)
            k = _int(ln.args[0], source, ln.number, "bead index")
            if k != len(beads):
                raise FormatError(source, ln.number, f"bead index {k} out of order, expected {len(beads)}")
            x = _int(ln.args[1], source, ln.number, "coordinate")
            y = _int(ln.args[2], source, ln.number, "coordinate")
            beads.append((LatticePoint(x, y), ln.args[3]))
        elif ln.directive == "bond":
            _arity(ln, 2, source)
            i = _int(ln.args[0], source, ln.number, "bead index")
            j = _int(ln.args[1], source, ln.number, "bead index")
            bonds.append((min(i, j), max(i, j), ln.number))
        else:
            raise FormatError(source, ln.number, f"unknown directive {ln.directive!r}")
    for i, j, n in bonds:
        if i < 0 or j >= len(beads):
            raise FormatError(source, n, f"bond {i} {j} refers to a missing bead")
    return Configuration(tuple(p for p, _ in beads), tuple(b for _, b in beads),
                         frozenset((i, j) for i, j, _ in bonds))


# ---- shape dump -------------------------------------------------------------

def emit_shapes(seq: ShapeSequence) -> str:
    lines = [f"format-version {FORMAT_VERSION}", f"construction {seq.construction}",
             f"params {seq.params.d} {seq.params.l}"]
    for s in seq.shapes:
        lines += [f"shape {s.index} {s.kind} {p.x} {p.y}" for p in sorted(s.points)]
    return "\n".join(lines) + "\n"


def parse_shapes(text: str, source: str = "<shapes>") -> ShapeSequence:
    construction = "custom"
    params = None
    points: dict = {}
    kinds: dict = {}
    for ln in _lines(text, source):
        if ln.directive == "construction":
            _arity(ln, 1, source)
            construction = ln.args[0]
        elif ln.directive == "params":
            _arity(ln, 2, source)
            try:
                params = ShapeParams(*(_int(t, source, ln.number, "shape parameter") for t in ln.args))
            except ValueError as e:
                raise FormatError(source, ln.number, str(e)) from None
        elif ln.directive == "shape":
            _arity(ln, 4, source)
            k = _int(ln.args[0], source, ln.number, "shape index")
            kind = ln.args[1]
            if kind not in (POINT, SEGMENT):
                raise FormatError(source, ln.number, f"unknown shape kind {kind!r}")
            if kinds.setdefault(k, kind) != kind:
                raise FormatError(source, ln.number, f"shape {k} declared as both {kinds[k]} and {kind}")
            x = _int(ln.args[2], source, ln.number, "coordinate")
            y = _int(ln.args[3], source, ln.number, "coordinate")
            points.setdefault(k, set()).add(LatticePoint(x, y))
        else:
            raise FormatError(source, ln.number, f"unknown directive {ln.directive!r}")
    if params is None:
        raise FormatError(source, None, "missing 'params' directive")
    if sorted(points) != list(range(len(points))):
        raise FormatError(source, None, "shape indices are not contiguous from 0")
    shapes = tuple(Shape(kinds[k], frozenset(points[k]), k) for k in range(len(points)))
    return ShapeSequence(shapes, params, None, construction)


def emit_region(i: int, level: int, region) -> str:
    """Dump of one ``E(i, n)`` region, for rendering."""
    lines = [f"format-version {FORMAT_VERSION}", f"region {i} {level}"]
    lines += [f"point {p.x} {p.y}" for p in sorted(region)]
    return "\n".join(lines) + "\n"


__all__ = [
    "FORMAT_VERSION", "FormatError", "SystemValidationError",
    "parse_os_file", "emit_os_file", "load_os_file",
    "parse_curve_spec", "emit_curve_spec", "load_curve_spec",
    "parse_conformation", "emit_conformation",
    "parse_shapes", "emit_shapes", "emit_region",
]
