"""Affine congestion games with perception-parameterized costs.

Every quantity here is an exact :class:`~fractions.Fraction`. A resource has
cost ``c_e(x) = a_e x + b_e``; a player perceives the other users of a resource
to the extent ``rho`` and the designer aggregates with ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .rational import RationalLike, as_fraction

Profile = tuple[int, ...]
Strategy = tuple[int, ...]


class GameError(ValueError):
    """Invalid game, profile or parameter."""


@dataclass(frozen=True)
class Resource:
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.a < 0 or self.b < 0:
            raise GameError(f"resource coefficients must be non-negative, got a={self.a}, b={self.b}")

    def cost(self, load: RationalLike) -> Fraction:
        return self.a * load + self.b


@dataclass(frozen=True)
class PerceptionParams:
    rho: Fraction
    sigma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", as_fraction(self.rho))
        object.__setattr__(self, "sigma", as_fraction(self.sigma))
        if self.rho < 0 or self.sigma < 0:
            raise GameError("rho and sigma must be non-negative")


@dataclass(frozen=True)
class Game:
    """Players ``0..n-1``; ``strategies[i]`` lists player i's resource subsets."""

    n: int
    resources: tuple[Resource, ...]
    strategies: tuple[tuple[Strategy, ...], ...]
    _profile_count: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        resources = tuple(r if isinstance(r, Resource) else Resource(*r) for r in self.resources)
        object.__setattr__(self, "resources", resources)
        if self.n < 1:
            raise GameError("a game needs at least one player")
        if len(self.strategies) != self.n:
            raise GameError(f"expected strategy sets for {self.n} players, got {len(self.strategies)}")
        m = len(resources)
        normalized = []
        for i, strats in enumerate(self.strategies):
            if len(strats) == 0:
                raise GameError(f"player {i} has an empty strategy set")
            row = []
            for s in strats:
                s = tuple(s)
                if len(set(s)) != len(s):
                    raise GameError(f"player {i}: strategy {s} repeats a resource")
                if any(not (0 <= e < m) for e in s):
                    raise GameError(f"player {i}: strategy {s} references an unknown resource")
                row.append(tuple(sorted(s)))
            normalized.append(tuple(row))
        object.__setattr__(self, "strategies", tuple(normalized))
        count = 1
        for strats in normalized:
            count *= len(strats)
        object.__setattr__(self, "_profile_count", count)

    @property
    def m(self) -> int:
        return len(self.resources)

    @property
    def profile_count(self) -> int:
        return self._profile_count

    def is_symmetric(self) -> bool:
        return all(s == self.strategies[0] for s in self.strategies)

    def scaled(self, factor: RationalLike) -> "Game":
        """Same game with every ``(a_e, b_e)`` multiplied by ``factor > 0``."""
        factor = as_fraction(factor)
        if factor <= 0:
            raise GameError("scale factor must be positive")
        res = tuple(Resource(r.a * factor, r.b * factor) for r in self.resources)
        return Game(self.n, res, self.strategies)

    def check_profile(self, profile: Sequence[int]) -> Profile:
        profile = tuple(int(c) for c in profile)
        if len(profile) != self.n:
            raise GameError(f"profile has {len(profile)} entries for {self.n} players")
        for i, c in enumerate(profile):
            if not 0 <= c < len(self.strategies[i]):
                raise GameError(f"player {i}: strategy index {c} out of range")
        return profile

    def chosen(self, profile: Profile, i: int) -> Strategy:
        return self.strategies[i][profile[i]]


def load_vector(game: Game, profile: Sequence[int]) -> list[int]:
    profile = game.check_profile(profile)
    x = [0] * game.m
    for i, c in enumerate(profile):
        for e in game.strategies[i][c]:
            x[e] += 1
    return x


def _perceived_resource_cost(r: Resource, load: int, rho: Fraction) -> Fraction:
    return r.a * (1 + rho * (load - 1)) + r.b


def perceived_cost(game: Game, profile: Sequence[int], i: int, rho: RationalLike) -> Fraction:
    """``C_i^rho(s) = sum_{e in s_i} a_e[1 + rho(x_e - 1)] + b_e``."""
    rho = as_fraction(rho)
    x = load_vector(game, profile)
    return sum(
        (_perceived_resource_cost(game.resources[e], x[e], rho) for e in game.chosen(tuple(profile), i)),
        Fraction(0),
    )


def all_perceived_costs(game: Game, profile: Sequence[int], rho: RationalLike) -> list[Fraction]:
    rho = as_fraction(rho)
    profile = game.check_profile(profile)
    x = load_vector(game, profile)
    per_res = [_perceived_resource_cost(r, x[e], rho) for e, r in enumerate(game.resources)]
    return [sum((per_res[e] for e in game.chosen(profile, i)), Fraction(0)) for i in range(game.n)]


def social_cost(game: Game, profile: Sequence[int], sigma: RationalLike) -> Fraction:
    """``C^sigma(s) = sum_e x_e (a_e[1 + sigma(x_e - 1)] + b_e)``; unused resources cost 0."""
    sigma = as_fraction(sigma)
    x = load_vector(game, profile)
    total = Fraction(0)
    for r, load in zip(game.resources, x):
        if load:
            total += load * _perceived_resource_cost(r, load, sigma)
    return total


def potential(game: Game, profile: Sequence[int], rho: RationalLike) -> Fraction:
    """Exact potential of ``C^rho``; equals Rosenthal's potential at ``rho = 1``."""
    rho = as_fraction(rho)
    x = load_vector(game, profile)
    total = Fraction(0)
    for r, load in zip(game.resources, x):
        total += r.a * Fraction(load * (load + 1), 2) + r.b * load
        total += (rho - 1) * r.a * Fraction((load - 1) * load, 2)
    return total


def rosenthal_potential(game: Game, profile: Sequence[int]) -> Fraction:
    x = load_vector(game, profile)
    return sum(
        (r.cost(k) for r, load in zip(game.resources, x) for k in range(1, load + 1)),
        Fraction(0),
    )


def altruistic_cost(game: Game, profile: Sequence[int], i: int, rho: RationalLike) -> Fraction:
    """``(2 - rho) * classical player cost + (rho - 1) * classical social cost``.

    Classical means ``c_e(x_e)`` evaluated at the true load.
    """
    rho = as_fraction(rho)
    if not 1 <= rho <= 2:
        raise GameError(f"altruistic cost is defined for 1 <= rho <= 2, got {rho}")
    return (2 - rho) * perceived_cost(game, profile, i, 1) + (rho - 1) * social_cost(game, profile, 1)


def tax_cost(game: Game, profile: Sequence[int], i: int, rho: RationalLike) -> Fraction:
    """Classical cost plus the constant tax ``(1 - rho)/rho * a_e``, with offsets scaled by ``1/rho``."""
    rho = as_fraction(rho)
    if rho <= 0:
        raise GameError("tax cost requires rho > 0")
    x = load_vector(game, profile)
    total = Fraction(0)
    for e in game.chosen(tuple(profile), i):
        r = game.resources[e]
        total += r.a * x[e] + r.b / rho + (1 - rho) / rho * r.a
    return total


def deviate(profile: Sequence[int], i: int, choice: int) -> Profile:
    p = list(profile)
    p[i] = choice
    return tuple(p)
