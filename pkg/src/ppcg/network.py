"""Symmetric network congestion games, unit-path flows and Fotakis' minimality test."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .game import Game, GameError, Resource, Strategy
from .rational import RationalLike, as_fraction

DEFAULT_PATH_CAP = 10**5

Flow = tuple[int, ...]


class NetworkError(GameError):
    pass


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    resource: Resource


@dataclass(frozen=True)
class NetworkGame:
    nodes: int
    arcs: tuple[Arc, ...]
    source: int
    sink: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if self.source == self.sink:
            raise NetworkError("source and sink must differ")
        for v in (self.source, self.sink):
            if not 0 <= v < self.nodes:
                raise NetworkError(f"node {v} out of range")
        for k, arc in enumerate(self.arcs):
            if not (0 <= arc.tail < self.nodes and 0 <= arc.head < self.nodes):
                raise NetworkError(f"arc {k} has an endpoint outside 0..{self.nodes - 1}")
        if self.n < 1:
            raise NetworkError("need at least one player")

    def out_arcs(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.nodes)]
        for k, arc in enumerate(self.arcs):
            adj[arc.tail].append((k, arc.head))
        return adj


def enumerate_paths(net: NetworkGame, cap: int = DEFAULT_PATH_CAP) -> list[Strategy]:
    """All simple source-sink paths as sorted arc-index tuples, in lexicographic order."""
    adj = net.out_arcs()
    paths: list[Strategy] = []
    on_path = [False] * net.nodes
    stack_arcs: list[int] = []

    def dfs(v: int) -> None:
        if v == net.sink:
            paths.append(tuple(sorted(stack_arcs)))
            if len(paths) > cap:
                raise NetworkError(f"more than {cap} simple paths")
            return
        on_path[v] = True
        for k, w in adj[v]:
            if not on_path[w]:
                stack_arcs.append(k)
                dfs(w)
                stack_arcs.pop()
        on_path[v] = False

    dfs(net.source)
    if not paths:
        raise NetworkError("no path from source to sink")
    paths.sort()
    return paths


def to_congestion_game(net: NetworkGame, cap: int = DEFAULT_PATH_CAP) -> Game:
    """Symmetric game over arcs; every player's strategy set is the path list.

    Strategy ``k`` of the result is ``enumerate_paths(net)[k]``.
    """
    paths = enumerate_paths(net, cap)
    return Game(net.n, tuple(a.resource for a in net.arcs), tuple(tuple(paths) for _ in range(net.n)))


def profile_from_paths(paths: Sequence[Strategy], chosen: Sequence[Sequence[int]]) -> tuple[int, ...]:
    index = {p: k for k, p in enumerate(paths)}
    try:
        return tuple(index[tuple(sorted(c))] for c in chosen)
    except KeyError as exc:
        raise NetworkError(f"{sorted(exc.args[0])} is not a simple source-sink path") from None


def flow_of(net: NetworkGame, chosen_paths: Sequence[Sequence[int]]) -> Flow:
    f = [0] * len(net.arcs)
    for path in chosen_paths:
        for k in path:
            f[k] += 1
    return tuple(f)


def check_flow(net: NetworkGame, f: Sequence[int]) -> None:
    """Raise unless ``f`` is a non-negative integer flow of value n with acyclic support."""
    if len(f) != len(net.arcs):
        raise NetworkError("flow length does not match arc count")
    if any(int(v) != v or v < 0 for v in f):
        raise NetworkError("flow values must be non-negative integers")
    excess = [0] * net.nodes
    for k, arc in enumerate(net.arcs):
        excess[arc.tail] += f[k]
        excess[arc.head] -= f[k]
    for v in range(net.nodes):
        want = net.n if v == net.source else -net.n if v == net.sink else 0
        if excess[v] != want:
            raise NetworkError(f"flow conservation violated at node {v}")
    # Kahn's algorithm on the support
    indeg = [0] * net.nodes
    adj: list[list[int]] = [[] for _ in range(net.nodes)]
    for k, arc in enumerate(net.arcs):
        if f[k]:
            adj[arc.tail].append(arc.head)
            indeg[arc.head] += 1
    queue = deque(v for v in range(net.nodes) if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if seen != net.nodes:
        raise NetworkError("flow support contains a directed cycle")


def feasible_flows(net: NetworkGame, cap: int = DEFAULT_PATH_CAP) -> list[Flow]:
    """Distinct arc-load vectors of all multisets of n simple paths, sorted."""
    paths = enumerate_paths(net, cap)
    flows = {flow_of(net, combo) for combo in itertools.combinations_with_replacement(paths, net.n)}
    return sorted(flows)


def _d(r: Resource, x: int, rho: Fraction) -> Fraction:
    return r.a * (1 + rho * (x - 1)) + r.b


def fotakis_gap(net: NetworkGame, f: Sequence[int], g: Sequence[int], rho: RationalLike) -> Fraction:
    """``sum_{f>g} (f-g) d(f) - sum_{f<g} (g-f) d(f+1)`` with ``d(x) = a(1 + rho(x-1)) + b``."""
    rho = as_fraction(rho)
    total = Fraction(0)
    for arc, fe, ge in zip(net.arcs, f, g):
        if fe > ge:
            total += (fe - ge) * _d(arc.resource, fe, rho)
        elif fe < ge:
            total -= (ge - fe) * _d(arc.resource, fe + 1, rho)
    return total


def fotakis_condition(
    net: NetworkGame,
    f: Sequence[int],
    rho: RationalLike,
    cap: int = DEFAULT_PATH_CAP,
    comparison: Sequence[Flow] | None = None,
) -> bool:
    """True iff the acyclic flow ``f`` satisfies the gap condition against every feasible flow.

    ``comparison`` may pass a precomputed ``feasible_flows(net)`` when many
    flows of one network are tested.
    """
    f = tuple(f)
    check_flow(net, f)
    flows = feasible_flows(net, cap) if comparison is None else comparison
    return all(fotakis_gap(net, f, g, rho) <= 0 for g in flows)


def flow_social_cost(net: NetworkGame, f: Sequence[int], sigma: RationalLike) -> Fraction:
    sigma = as_fraction(sigma)
    return sum(
        (x * _d(arc.resource, x, sigma) for arc, x in zip(net.arcs, f) if x),
        Fraction(0),
    )


def flow_potential(net: NetworkGame, f: Sequence[int], rho: RationalLike) -> Fraction:
    rho = as_fraction(rho)
    return sum(
        (_d(arc.resource, k, rho) for arc, x in zip(net.arcs, f) for k in range(1, x + 1)),
        Fraction(0),
    )
