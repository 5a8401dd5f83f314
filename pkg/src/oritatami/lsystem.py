"""Deterministic L-systems and their turtle interpretation on lattices."""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import DIRECTIONS, LatticePoint

# A typographic minus is accepted wherever '-' is.
_MINUS_ALIASES = str.maketrans({"−": "-", "–": "-"})


def normalize(s: str) -> str:
    return s.translate(_MINUS_ALIASES)


@dataclass(frozen=True)
class LSystem:
    """A D0L system: at most one production per variable, no randomness."""

    variables: frozenset
    constants: frozenset
    axiom: str
    rules: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "variables", frozenset(self.variables))
        object.__setattr__(self, "constants", frozenset(self.constants))
        object.__setattr__(self, "axiom", normalize(self.axiom))
        object.__setattr__(self, "rules", {k: normalize(v) for k, v in self.rules.items()})
        if self.variables & self.constants:
            raise ValueError(f"symbols are both variable and constant: {sorted(self.variables & self.constants)}")
        alphabet = self.variables | self.constants
        for where, text in [("axiom", self.axiom)] + [(f"rule {k}", v) for k, v in self.rules.items()]:
            unknown = set(text) - alphabet
            if unknown:
                raise ValueError(f"{where} uses unknown symbols {sorted(unknown)}")
        extra = set(self.rules) - self.variables
        if extra:
            raise ValueError(f"rules given for non-variables {sorted(extra)}")


def expand(g: LSystem, n: int, start: str | None = None) -> str:
    """Apply ``n`` rounds of parallel rewriting to the axiom (or ``start``)."""
    if n < 0:
        raise ValueError(f"iteration count must be >= 0, got {n}")
    s = g.axiom if start is None else normalize(start)
    table = str.maketrans(g.rules)
    for _ in range(n):
        s = s.translate(table)
    return s


KOCH = LSystem({"F"}, {"+", "-"}, "F", {"F": "F+F-F+F"})
MINKOWSKI = LSystem({"F"}, {"+", "-"}, "F", {"F": "F+F-F-FF+F+F-F"})

RHOMBUS_DIRECTIONS: tuple[LatticePoint, ...] = (
    LatticePoint(1, 0),
    LatticePoint(0, 1),
    LatticePoint(-1, 0),
    LatticePoint(0, -1),
)

LATTICES = {"triangular": DIRECTIONS, "rhombus": RHOMBUS_DIRECTIONS}
_TURN_UNIT = {"triangular": 60, "rhombus": 90}


@dataclass(frozen=True)
class TurtleSemantics:
    """Symbol actions: a move of one unit, a turn by whole lattice steps, or nothing.

    ``turns`` maps a symbol to a signed number of counter-clockwise
    direction steps (60 degrees on the triangular lattice, 90 on the rhombus
    lattice).
    """

    lattice: str
    moves: frozenset
    turns: dict
    noops: frozenset = frozenset()

    def __post_init__(self):
        if self.lattice not in LATTICES:
            raise ValueError(f"unknown lattice {self.lattice!r}")
        object.__setattr__(self, "moves", frozenset(self.moves))
        object.__setattr__(self, "noops", frozenset(self.noops))
        clash = (self.moves & set(self.turns)) | (self.moves & self.noops) | (self.noops & set(self.turns))
        if clash:
            raise ValueError(f"symbols with more than one action: {sorted(clash)}")

    @classmethod
    def from_angles(cls, lattice: str, left_degrees: int, right_degrees: int,
                    moves=("F",), left="+", right="-", noops=()) -> "TurtleSemantics":
        unit = _TURN_UNIT.get(lattice)
        if unit is None:
            raise ValueError(f"unknown lattice {lattice!r}")
        for deg in (left_degrees, right_degrees):
            if deg % unit:
                raise ValueError(f"turn of {deg} degrees is not a multiple of {unit} on the {lattice} lattice")
        return cls(lattice, frozenset(moves), {left: left_degrees // unit, right: -(right_degrees // unit)},
                   frozenset(noops))

    @property
    def directions(self) -> tuple[LatticePoint, ...]:
        return LATTICES[self.lattice]

    def symbols(self) -> set:
        return set(self.moves) | set(self.turns) | set(self.noops)


KOCH_TURTLE = TurtleSemantics.from_angles("triangular", 60, 120)
MINKOWSKI_TURTLE = TurtleSemantics.from_angles("rhombus", 90, 90)


@dataclass(frozen=True)
class Curve:
    """Vertices visited by a turtle, on the lattice named by ``lattice``."""

    vertices: tuple[LatticePoint, ...]
    turn_string: str
    lattice: str

    @property
    def segments(self) -> list[tuple[LatticePoint, LatticePoint]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def directions(self) -> list[int]:
        """Direction index of every segment."""
        dirs = LATTICES[self.lattice]
        return [dirs.index(LatticePoint(b.x - a.x, b.y - a.y)) for a, b in self.segments]

    def is_self_avoiding(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)


def interpret_turtle(s: str, sem: TurtleSemantics, start=(0, 0), heading: int = 0) -> Curve:
    s = normalize(s)
    unknown = set(s) - sem.symbols()
    if unknown:
        raise ValueError(f"no turtle action for symbols {sorted(unknown)}")
    dirs = sem.directions
    k = len(dirs)
    x, y = start
    h = heading % k
    vertices = [LatticePoint(x, y)]
    for ch in s:
        if ch in sem.moves:
            dx, dy = dirs[h]
            x, y = x + dx, y + dy
            vertices.append(LatticePoint(x, y))
        elif ch in sem.turns:
            h = (h + sem.turns[ch]) % k
    return Curve(tuple(vertices), s, sem.lattice)


def min_period(s: str, max_p: int) -> int | None:
    """Smallest ``p <= max_p`` with ``s[i] == s[i + p]`` wherever both exist.

    This is a period of the given finite string only; an infinite string that
    starts with ``s`` need not have it.
    """
    if max_p < 1:
        raise ValueError("max_p must be >= 1")
    n = len(s)
    if n == 0:
        return 1
    # prefix function: longest proper border of every prefix
    pi = [0] * n
    for i in range(1, n):
        k = pi[i - 1]
        while k and s[i] != s[k]:
            k = pi[k - 1]
        if s[i] == s[k]:
            k += 1
        pi[i] = k
    p = n - pi[-1]
    return p if p <= max_p else None
