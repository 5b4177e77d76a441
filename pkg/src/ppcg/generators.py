"""Builders for the lower-bound instances.

Each builder returns a :class:`ConstructionOutput` holding the game, the
designated equilibrium, the comparison profile and closed-form predictions of
their social costs as functions of ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .game import Game, GameError, Profile, Resource
from .network import Arc, NetworkGame, enumerate_paths, profile_from_paths
from .rational import RationalLike, as_fraction

DEFAULT_EPS = Fraction(1, 1000)


@dataclass(frozen=True)
class ConstructionOutput:
    name: str
    params: dict
    game: Game | NetworkGame
    designated_ne: Profile | tuple[tuple[int, ...], ...]
    comparison: Profile | tuple[tuple[int, ...], ...]
    predicted_ne_cost: Callable[[Fraction], Fraction]
    predicted_comparison_cost: Callable[[Fraction], Fraction]
    rho: Fraction

    @property
    def is_network(self) -> bool:
        return isinstance(self.game, NetworkGame)

    def profiles_for(self, game: Game | None = None) -> tuple[Profile, Profile]:
        """Designated and comparison profiles as strategy indices.

        For network constructions the paths are looked up in ``game``'s
        (compiled) strategy list.
        """
        if not self.is_network:
            return self.designated_ne, self.comparison
        paths = game.strategies[0] if game is not None else enumerate_paths(self.game)
        return profile_from_paths(paths, self.designated_ne), profile_from_paths(paths, self.comparison)


def gen_poa_general(n: int, rho: RationalLike) -> ConstructionOutput:
    """Cyclic instance on ``h_0..h_{n-1}`` (cost x) and ``g_0..g_{n-1}`` (cost rho x).

    Player i chooses ``{h_i, g_i}`` or ``{h_{i+1}, g_{i-1}, g_{i+1}}``.
    Resource ``h_i`` has index ``i``, ``g_i`` has index ``n + i``.
    """
    if n < 3:
        raise GameError("poa_general needs n >= 3")
    rho = as_fraction(rho)
    resources = tuple([Resource(1, 0)] * n + [Resource(rho, 0)] * n)
    h = lambda i: i % n  # noqa: E731
    g = lambda i: n + i % n  # noqa: E731
    strategies = tuple(((h(i), g(i)), (h(i + 1), g(i - 1), g(i + 1))) for i in range(n))
    game = Game(n, resources, strategies)
    return ConstructionOutput(
        name="poa_general",
        params={"n": n, "rho": rho},
        game=game,
        designated_ne=(1,) * n,
        comparison=(0,) * n,
        predicted_ne_cost=lambda sigma: (1 + 2 * rho * (1 + as_fraction(sigma))) * n,
        predicted_comparison_cost=lambda sigma: (1 + rho) * n,
        rho=rho,
    )


def gen_poa_network(n: int, rho: RationalLike) -> ConstructionOutput:
    """Layered network with n principal rows and zero-cost diagonal arcs.

    Row ``i`` has nodes ``(i, 0..2n-3)``. Layer 0 is ``s -> (i, 0)`` and layer
    ``2n-2`` is ``(i, 2n-3) -> t``, both costing ``(1 + rho) x``; the inner
    layer ``l`` runs ``(i, l-1) -> (i, l)`` and costs ``rho x`` for odd ``l``,
    ``x`` for even ``l``. Diagonal arcs ``(i, 2k+1) -> (i-1 mod n, 2k)`` cost 0.
    For ``n = 2`` there is no inner node range beyond one arc per row.
    """
    if n < 2:
        raise GameError("poa_network needs n >= 2")
    rho = as_fraction(rho)
    width = 2 * n - 2  # nodes per row
    source, sink = 0, 1

    def node(i: int, j: int) -> int:
        return 2 + (i % n) * width + j

    arcs: list[Arc] = []
    principal: dict[tuple[int, int], int] = {}  # (row, layer) -> arc index
    diagonal: dict[tuple[int, int], int] = {}  # (row, k) -> arc index
    edge_cost = Resource(1 + rho, 0)
    for i in range(n):
        principal[i, 0] = len(arcs)
        arcs.append(Arc(source, node(i, 0), edge_cost))
        for layer in range(1, 2 * n - 2):
            cost = Resource(rho, 0) if layer % 2 else Resource(1, 0)
            principal[i, layer] = len(arcs)
            arcs.append(Arc(node(i, layer - 1), node(i, layer), cost))
        principal[i, 2 * n - 2] = len(arcs)
        arcs.append(Arc(node(i, width - 1), sink, edge_cost))
    for i in range(n):
        for k in range(n - 1):
            diagonal[i, k] = len(arcs)
            arcs.append(Arc(node(i, 2 * k + 1), node(i - 1, 2 * k), Resource(0, 0)))
    net = NetworkGame(2 + n * width, tuple(arcs), source, sink, n)

    def shifting_path(k: int) -> tuple[int, ...]:
        # start on row k; every odd layer is used on the current row, then repeated
        # one row down after the diagonal arc
        row = k
        used = [principal[row, 0]]
        for j in range(n - 1):
            layer = 2 * j + 1
            used.append(principal[row, layer])
            used.append(diagonal[row, j])
            row = (row - 1) % n
            used.append(principal[row, layer])
            if layer + 1 < 2 * n - 2:
                used.append(principal[row, layer + 1])
        used.append(principal[row, 2 * n - 2])
        return tuple(sorted(used))

    designated = tuple(shifting_path(k) for k in range(n))
    comparison = tuple(tuple(sorted(principal[i, layer] for layer in range(2 * n - 1))) for i in range(n))
    return ConstructionOutput(
        name="poa_network",
        params={"n": n, "rho": rho},
        game=net,
        designated_ne=designated,
        comparison=comparison,
        predicted_ne_cost=lambda sigma: n * ((1 + 2 * rho * (1 + as_fraction(sigma))) * n - 2 * rho * as_fraction(sigma)),
        predicted_comparison_cost=lambda sigma: n * ((1 + rho) * n + rho),
        rho=rho,
    )


def gen_pos_general(n1: int, n2: int, rho: RationalLike, eps: RationalLike = DEFAULT_EPS) -> ConstructionOutput:
    """Two-group instance where every group-1 player has a strictly dominant ``A_i``.

    Resources: ``alpha_0..alpha_{n1-1}`` (slope ``alpha``), then ``beta_ij`` for
    ordered pairs ``i != j`` (slope 1/2), then ``gamma`` (slope 1).
    ``A_i = {beta_ij : j != i} + {gamma}``, ``P_i = {alpha_i} + {beta_ji : j != i}``,
    group-2 players only have ``D = {gamma}``.
    """
    if n1 < 2 or n2 < 0:
        raise GameError("pos_general needs n1 >= 2 and n2 >= 0")
    rho, eps = as_fraction(rho), as_fraction(eps)
    if eps <= 0:
        raise GameError("eps must be positive")
    half = Fraction(1, 2)
    alpha = rho * (Fraction(n1, 2) + n2 - half) + 1 + eps
    pairs = [(i, j) for i in range(n1) for j in range(n1) if i != j]
    beta_idx = {pair: n1 + k for k, pair in enumerate(pairs)}
    gamma = n1 + len(pairs)
    resources = tuple([Resource(alpha, 0)] * n1 + [Resource(half, 0)] * len(pairs) + [Resource(1, 0)])
    strategies = []
    for i in range(n1):
        a_i = tuple(beta_idx[i, j] for j in range(n1) if j != i) + (gamma,)
        p_i = (i,) + tuple(beta_idx[j, i] for j in range(n1) if j != i)
        strategies.append((a_i, p_i))
    strategies += [((gamma,),)] * n2
    game = Game(n1 + n2, resources, tuple(strategies))
    n = n1 + n2

    def ne_cost(sigma):
        sigma = as_fraction(sigma)
        return n1 * (1 + sigma * (n - 1) + half * (n1 - 1)) + n2 * (1 + sigma * (n - 1))

    def comparison_cost(sigma):
        sigma = as_fraction(sigma)
        return n1 * (alpha + half * (n1 - 1)) + n2 * (1 + sigma * (n2 - 1))

    return ConstructionOutput(
        name="pos_general",
        params={"n1": n1, "n2": n2, "rho": rho, "eps": eps},
        game=game,
        designated_ne=(0,) * n,
        comparison=(1,) * n1 + (0,) * n2,
        predicted_ne_cost=ne_cost,
        predicted_comparison_cost=comparison_cost,
        rho=rho,
    )


def gen_two_player_tight(rho: RationalLike) -> ConstructionOutput:
    """Four resources (x, x, rho x, rho x); players pick ``{0} | {1,3}`` and ``{1} | {0,2}``."""
    rho = as_fraction(rho)
    if rho < 0:
        raise GameError("rho must be non-negative")
    resources = (Resource(1, 0), Resource(1, 0), Resource(rho, 0), Resource(rho, 0))
    game = Game(2, resources, (((0,), (1, 3)), ((1,), (0, 2))))
    return ConstructionOutput(
        name="two_player_tight",
        params={"rho": rho},
        game=game,
        designated_ne=(1, 1),
        comparison=(0, 0),
        predicted_ne_cost=lambda sigma: 2 * (1 + rho),
        predicted_comparison_cost=lambda sigma: Fraction(2),
        rho=rho,
    )


def gen_singleton_pos(n: int, i: int, eps: RationalLike = DEFAULT_EPS) -> ConstructionOutput:
    """Symmetric singleton game for ``rho = i/(n-1)``.

    Resource 0 costs ``x``; resources ``1..n-i/2`` cost ``(1 + i + eps) x``.
    """
    if i % 2 or not 1 <= i <= n - 1:
        raise GameError("singleton_pos needs an even i with 1 <= i <= n-1")
    eps = as_fraction(eps)
    if eps <= 0:
        raise GameError("eps must be positive")
    rho = Fraction(i, n - 1)
    others = n - i // 2
    resources = (Resource(1, 0),) + tuple(Resource(1 + i + eps, 0) for _ in range(others))
    strategies = tuple(tuple((e,) for e in range(others + 1)) for _ in range(n))
    game = Game(n, resources, strategies)
    comparison = (0,) * (i // 2) + tuple(range(1, others + 1))

    def comparison_cost(sigma):
        # every loaded "other" resource carries one player; resource 0 carries i/2
        sigma = as_fraction(sigma)
        k = i // 2
        on_zero = k * (1 + sigma * (k - 1)) if k else Fraction(0)
        return on_zero + others * (1 + i + eps)

    return ConstructionOutput(
        name="singleton_pos",
        params={"n": n, "i": i, "eps": eps},
        game=game,
        designated_ne=(0,) * n,
        comparison=comparison,
        predicted_ne_cost=lambda sigma: n * (1 + as_fraction(sigma) * (n - 1)),
        predicted_comparison_cost=comparison_cost,
        rho=rho,
    )


CONSTRUCTIONS = {
    "poa_general": gen_poa_general,
    "poa_network": gen_poa_network,
    "pos_general": gen_pos_general,
    "two_player_tight": gen_two_player_tight,
    "singleton_pos": gen_singleton_pos,
}
