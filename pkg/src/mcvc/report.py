from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ._rational import format_rational


@dataclass
class SolveReport:
    """Outcome of one solver run.

    ``phases`` holds one ``(improving_swaps, swap_bound)`` pair per local-search
    phase; ``estimate`` is the truncated-edge objective used by the one-pass
    edge-arrival streaming solver.
    """

    algorithm: str
    solution: tuple[int, ...]
    value: Fraction
    potential_value: Fraction | None = None
    swap_count: int = 0
    guessed_vertices: list[int] = field(default_factory=list)
    epsilon: Fraction | None = None
    alpha2: Fraction | None = None
    explored: int = 0
    phases: list[tuple[int, int]] = field(default_factory=list)
    estimate: Fraction | None = None

    def fields(self) -> dict[str, str]:
        def fmt(x):
            if x is None:
                return ""
            if isinstance(x, Fraction):
                return format_rational(x)
            return str(x)

        return {
            "algorithm": self.algorithm,
            "solution": " ".join(map(str, self.solution)),
            "value": fmt(self.value),
            "potential_value": fmt(self.potential_value),
            "swap_count": str(self.swap_count),
            "guessed_vertices": " ".join(map(str, self.guessed_vertices)),
            "epsilon": fmt(self.epsilon),
            "alpha2": fmt(self.alpha2),
            "explored": str(self.explored),
            "max_phase_swaps": str(max((s for s, _ in self.phases), default=0)),
            "phases": str(len(self.phases)),
            "estimate": fmt(self.estimate),
        }
