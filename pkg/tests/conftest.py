import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oritatami.lattice import LatticePoint  # noqa: E402
from oritatami.system import Configuration, OritatamiSystem, Ruleset, Transcript  # noqa: E402


def build_system(spec: dict) -> OritatamiSystem:
    seed = Configuration(tuple(LatticePoint(*p) for p in spec["seed"]), tuple(spec["seed_beads"]),
                         frozenset(tuple(sorted(b)) for b in spec["seed_bonds"]))
    kind = Transcript.cyclic if spec["cyclic"] else Transcript.finite
    return OritatamiSystem(tuple(spec["alphabet"]), kind(spec["transcript"]), Ruleset.from_pairs(spec["rules"]),
                           spec["delay"], spec["arity"], seed)


@pytest.fixture
def glider_system():
    from oritatami.presets import glider

    return glider()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
