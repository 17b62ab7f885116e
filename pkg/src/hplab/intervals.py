"""Real-interval geometry for the cut E = [-1, 1] and the spectral set F."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import DomainError


@dataclass(frozen=True)
class Interval:
    """Closed real interval [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self):
        if not (float(self.a) < float(self.b)):
            raise DomainError(f"interval endpoints must satisfy a < b, got [{self.a}, {self.b}]")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def halfwidth(self) -> float:
        return 0.5 * (self.b - self.a)

    @property
    def length(self) -> float:
        return self.b - self.a

    def contains(self, x, tol: float = 0.0) -> bool:
        """True if the real number x lies in [a - tol, b + tol]."""
        x = float(x)
        return self.a - tol <= x <= self.b + tol


@dataclass(frozen=True)
class IntervalUnion:
    """Finite disjoint union of closed intervals, sorted by left endpoint."""

    components: Tuple[Interval, ...]

    def __init__(self, components: Iterable[Interval]):
        comps = tuple(sorted(components, key=lambda iv: iv.a))
        if not comps:
            raise DomainError("interval union must have at least one component")
        for left, right in zip(comps, comps[1:]):
            if left.b >= right.a:
                raise DomainError(
                    f"interval components must be pairwise disjoint: "
                    f"[{left.a}, {left.b}] meets [{right.a}, {right.b}]"
                )
        object.__setattr__(self, "components", comps)

    @property
    def hull(self) -> Interval:
        return Interval(self.components[0].a, self.components[-1].b)

    @property
    def total_length(self) -> float:
        return sum(c.length for c in self.components)

    def contains(self, x, tol: float = 0.0) -> bool:
        return any(c.contains(x, tol) for c in self.components)

    def gaps(self) -> Tuple[Interval, ...]:
        """Open gaps between consecutive components."""
        return tuple(
            Interval(left.b, right.a)
            for left, right in zip(self.components, self.components[1:])
        )

    def validate_right_of_cut(self) -> None:
        """Check the hull is disjoint from [-1, 1] and lies to its right."""
        if self.hull.a <= 1.0:
            raise DomainError(
                f"spectral set must lie strictly to the right of [-1, 1]; "
                f"hull starts at {self.hull.a}"
            )


E_CUT = Interval(-1.0, 1.0)


def as_interval_union(F) -> IntervalUnion:
    """Accept an Interval, an IntervalUnion, or a list of (a, b) pairs."""
    if isinstance(F, IntervalUnion):
        return F
    if isinstance(F, Interval):
        return IntervalUnion((F,))
    return IntervalUnion(tuple(Interval(float(a), float(b)) for a, b in F))
