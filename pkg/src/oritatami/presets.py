"""Ready-made inputs."""

from __future__ import annotations

from .formats import parse_os_file
from .system import OritatamiSystem

# Seed found by exhaustive search over short seeds: from the first bead on,
# every stabilization is forced and the fold repeats every six beads.
GLIDER_OS = """\
format-version 1
# glider: delay 3, arity 4, rule (a, A), transcript (A A A a a a) repeated
alphabet a A
delay 3
arity 4
rule a A
transcript cyclic A A A a a a
seed 0 0 a
seed 1 0 a
seed 0 1 A
seed 1 1 a
"""

PRESETS = {"glider": GLIDER_OS}


def glider() -> OritatamiSystem:
    return parse_os_file(GLIDER_OS, "<glider>")
