"""Trapezoidal membership functions learned from possibility degrees.

A function is the quadruple (gamma, alpha, beta, delta): membership is 1 on
the nucleus [alpha, beta], 0 outside the support [gamma, delta], and linear
on the two ramps. Each side keeps its own observation counter so repeated
adjustments behave as an exact running average of the ratings routed to
that side.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import DomainError


def _check_degree(value: float, what: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{what} must be in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class Trapezoid:
    """Immutable membership function; ``adjust`` returns a new value.

    ``left_count`` counts the observations folded into (gamma, alpha) and
    ``right_count`` those folded into (beta, delta); the constructing
    observation counts once on each side.
    """

    gamma: float
    alpha: float
    beta: float
    delta: float
    left_count: int = 1
    right_count: int = 1

    def __post_init__(self) -> None:
        for name in ("gamma", "alpha", "beta", "delta"):
            _check_degree(getattr(self, name), name)
        if not self.gamma <= self.alpha <= self.beta <= self.delta:
            raise DomainError(
                "trapezoid stones must satisfy gamma <= alpha <= beta <= delta, "
                f"got ({self.gamma}, {self.alpha}, {self.beta}, {self.delta})"
            )
        if self.left_count < 1 or self.right_count < 1:
            raise DomainError("observation counters must be >= 1")

    @property
    def midpoint(self) -> float:
        """Average of the nucleus, the pivot that routes adjustments."""
        return (self.alpha + self.beta) / 2.0

    def adjust(self, theta: float) -> "Trapezoid":
        """Fold one possibility degree into the function.

        Exactly one side moves: ratings at or below the nucleus average
        pull (gamma, alpha) left-ward, ratings above it pull (beta, delta)
        right-ward. Each stone moves to the running average of its side's
        observations.

        In exact arithmetic the stone ordering is preserved automatically;
        in floats a moved stone can land one ulp past its fixed neighbour
        (e.g. beta rounding just below alpha), so each result is clamped
        against the stone it must not cross.
        """
        theta = _check_degree(theta, "theta")
        m = self.midpoint  # routed on the value before any update
        if theta <= m:
            n = self.left_count
            alpha = min((n * self.alpha + theta) / (n + 1), self.beta)
            gamma = min((n * self.gamma + theta) / (n + 1), alpha)
            return replace(self, gamma=gamma, alpha=alpha, left_count=n + 1)
        n = self.right_count
        beta = max((n * self.beta + theta) / (n + 1), self.alpha)
        delta = max((n * self.delta + theta) / (n + 1), beta)
        return replace(self, beta=beta, delta=delta, right_count=n + 1)

    def evaluate(self, x: float) -> float:
        """Membership degree of ``x``: the trapezoid's height at that point."""
        x = _check_degree(x, "x")
        if x < self.gamma or x > self.delta:
            return 0.0
        if self.alpha <= x <= self.beta:
            return 1.0
        if x < self.alpha:
            return (x - self.gamma) / (self.alpha - self.gamma)
        return (self.delta - x) / (self.delta - self.beta)

    def sample(self, n: int) -> list[tuple[float, float]]:
        """Evaluate on ``n`` evenly spaced points of [0, 1] plus the vertices.

        The four vertex points (gamma, 0), (alpha, 1), (beta, 1), (delta, 0)
        are merged in so a polyline through the result draws the exact shape.
        """
        if n < 2:
            raise DomainError(f"need at least 2 sample points, got {n}")
        points = {(i / (n - 1), self.evaluate(i / (n - 1))) for i in range(n)}
        points.update(
            [(self.gamma, 0.0), (self.alpha, 1.0), (self.beta, 1.0), (self.delta, 0.0)]
        )
        # Vertical edges of degenerate trapezoids order bottom-up on the
        # rising side and top-down on the falling side.
        m = self.midpoint
        return sorted(points, key=lambda p: (p[0], p[1] if p[0] <= m else -p[1]))


def construct(theta: float) -> Trapezoid:
    """Build the departure membership function from a single degree.

    The nucleus collapses to the rated value (alpha = beta = theta); the
    support spans [0, 2*theta] for low ratings and [2*theta - 1, 1] for high
    ones, the two branches agreeing at theta = 0.5.
    """
    theta = _check_degree(theta, "theta")
    return Trapezoid(
        gamma=max(0.0, 2.0 * theta - 1.0),
        alpha=theta,
        beta=theta,
        delta=min(1.0, 2.0 * theta),
    )
