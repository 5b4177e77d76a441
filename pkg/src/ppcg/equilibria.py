"""Brute-force equilibria, optima and PoA/PoS over the full profile space."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from . import _kernels
from .game import (
    Game,
    GameError,
    Profile,
    all_perceived_costs,
    deviate,
    load_vector,
    perceived_cost,
    potential,
    social_cost,
)
from .rational import INF, RationalLike, as_fraction

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
# below this many profiles the numba JIT warm-up costs more than it saves
SMALL_SCAN = 1 << 12

CostFn = Callable[[Game, Profile, int], Fraction]


class BudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"profile space has {count} profiles, budget is {budget}")
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class EnumerationBudget:
    max_profiles: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_profiles <= 0:
            raise ValueError("budget must be positive")

    def check(self, game: Game) -> None:
        if game.profile_count > self.max_profiles:
            raise BudgetExceeded(game.profile_count, self.max_profiles)


def _budget(budget: int | EnumerationBudget | None) -> EnumerationBudget:
    if budget is None:
        return EnumerationBudget()
    if isinstance(budget, EnumerationBudget):
        return budget
    return EnumerationBudget(int(budget))


@dataclass(frozen=True)
class RatioResult:
    """Exact ratio (or ``inf``) with the profiles realising numerator and denominator."""

    value: Fraction | float
    numerator_profile: Profile
    denominator_profile: Profile

    def __float__(self) -> float:
        return float(self.value)


@dataclass
class ProfileScan:
    """Everything one pass over the profile space yields (costs unscaled, exact)."""

    total: int
    opt_profile: Profile
    opt_cost: Fraction
    ne_count: int
    worst_ne: Profile | None
    worst_ne_cost: Fraction | None
    best_ne: Profile | None
    best_ne_cost: Fraction | None
    potential_argmin: Profile
    potential_min: Fraction
    ne_profiles: list[Profile] | None = field(default=None)


def decode_profile(game: Game, index: int) -> Profile:
    out = [0] * game.n
    for i in range(game.n - 1, -1, -1):
        k = len(game.strategies[i])
        out[i] = index % k
        index //= k
    return tuple(out)


def encode_profile(game: Game, profile: Sequence[int]) -> int:
    index = 0
    for i, c in enumerate(profile):
        index = index * len(game.strategies[i]) + c
    return index


def all_profiles(game: Game) -> Iterator[Profile]:
    """Profiles in lexicographic order."""
    return itertools.product(*(range(len(s)) for s in game.strategies))


# --- exact single-profile predicates -------------------------------------------------


def is_nash_under(game: Game, profile: Sequence[int], cost: CostFn) -> bool:
    """No player has a strictly cheaper unilateral deviation under ``cost``."""
    profile = game.check_profile(profile)
    for i in range(game.n):
        current = cost(game, profile, i)
        for d in range(len(game.strategies[i])):
            if d != profile[i] and cost(game, deviate(profile, i, d), i) < current:
                return False
    return True


def _deviation_costs(game: Game, profile: Profile, i: int, rho: Fraction, x: list[int]) -> Iterator[Fraction]:
    mine = set(game.chosen(profile, i))
    for d, strat in enumerate(game.strategies[i]):
        if d == profile[i]:
            continue
        total = Fraction(0)
        for e in strat:
            load = x[e] if e in mine else x[e] + 1
            r = game.resources[e]
            total += r.a * (1 + rho * (load - 1)) + r.b
        yield total


def is_nash(game: Game, profile: Sequence[int], rho: RationalLike) -> bool:
    rho = as_fraction(rho)
    profile = game.check_profile(profile)
    x = load_vector(game, profile)
    costs = all_perceived_costs(game, profile, rho)
    for i in range(game.n):
        if any(c < costs[i] for c in _deviation_costs(game, profile, i, rho, x)):
            return False
    return True


def is_approx_nash(game: Game, profile: Sequence[int], lam: RationalLike) -> bool:
    """``C_i^1(s) <= lam * C_i^1(s_i', s_-i)`` for every player and deviation."""
    lam = as_fraction(lam)
    if lam < 1:
        raise GameError(f"approximation factor must be >= 1, got {lam}")
    profile = game.check_profile(profile)
    x = load_vector(game, profile)
    costs = all_perceived_costs(game, profile, 1)
    for i in range(game.n):
        if any(costs[i] > lam * c for c in _deviation_costs(game, profile, i, Fraction(1), x)):
            return False
    return True


# --- full scans ----------------------------------------------------------------------


def _scan_exact(game: Game, rho: Fraction, sigma: Fraction, collect_ne: bool) -> ProfileScan:
    opt = best = worst = pmin = None
    ne_count = 0
    ne_profiles: list[Profile] = [] if collect_ne else None
    for profile in all_profiles(game):
        sc = social_cost(game, profile, sigma)
        pot = potential(game, profile, rho)
        if opt is None or sc < opt[1]:
            opt = (profile, sc)
        if pmin is None or pot < pmin[1]:
            pmin = (profile, pot)
        if is_nash(game, profile, rho):
            ne_count += 1
            if collect_ne:
                ne_profiles.append(profile)
            if worst is None or sc > worst[1]:
                worst = (profile, sc)
            if best is None or sc < best[1]:
                best = (profile, sc)
    return ProfileScan(
        total=game.profile_count,
        opt_profile=opt[0],
        opt_cost=opt[1],
        ne_count=ne_count,
        worst_ne=worst[0] if worst else None,
        worst_ne_cost=worst[1] if worst else None,
        best_ne=best[0] if best else None,
        best_ne_cost=best[1] if best else None,
        potential_argmin=pmin[0],
        potential_min=pmin[1],
        ne_profiles=ne_profiles,
    )


def _scan_integer(
    game: Game,
    packed: _kernels.Packed,
    collect_ne: bool,
    backend: str,
    chunk_size: int | None,
    workers: int,
) -> ProfileScan:
    kernel = _kernels.get_scan_chunk(backend)
    if chunk_size is None:
        chunk_size = 1 << 18 if backend == "numba" else 1 << 14
    bounds = [(s, min(s + chunk_size, packed.total)) for s in range(0, packed.total, chunk_size)]
    args = (packed.radix, packed.offset, packed.incidence, packed.A, packed.B, packed.p, packed.q, packed.r, packed.t)

    def run(span):
        start, stop = span
        sc, pot, ne = kernel(start, stop, *args)
        o = int(np.argmin(sc))
        pm = int(np.argmin(pot))
        part = {
            "opt": (int(sc[o]), start + o),
            "pot": (int(pot[pm]), start + pm),
            "ne_count": int(ne.sum()),
            "worst": None,
            "best": None,
            "ne_idx": None,
        }
        if part["ne_count"]:
            idx = np.flatnonzero(ne)
            ne_sc = sc[idx]
            hi, lo = int(np.argmax(ne_sc)), int(np.argmin(ne_sc))
            part["worst"] = (int(ne_sc[hi]), start + int(idx[hi]))
            part["best"] = (int(ne_sc[lo]), start + int(idx[lo]))
            if collect_ne:
                part["ne_idx"] = idx + start
        return part

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]

    # reductions in chunk order; strict comparisons keep the lexicographically first witness
    opt = pot = worst = best = None
    ne_count = 0
    ne_idx = []
    for part in parts:
        if opt is None or part["opt"][0] < opt[0]:
            opt = part["opt"]
        if pot is None or part["pot"][0] < pot[0]:
            pot = part["pot"]
        ne_count += part["ne_count"]
        if part["worst"] is not None and (worst is None or part["worst"][0] > worst[0]):
            worst = part["worst"]
        if part["best"] is not None and (best is None or part["best"][0] < best[0]):
            best = part["best"]
        if part["ne_idx"] is not None:
            ne_idx.append(part["ne_idx"])

    sc_scale = packed.D * packed.t
    pot_scale = 2 * packed.D * packed.q
    ne_profiles = None
    if collect_ne:
        flat = np.concatenate(ne_idx) if ne_idx else np.empty(0, dtype=np.int64)
        ne_profiles = [decode_profile(game, int(k)) for k in flat]
    return ProfileScan(
        total=packed.total,
        opt_profile=decode_profile(game, opt[1]),
        opt_cost=Fraction(opt[0], sc_scale),
        ne_count=ne_count,
        worst_ne=decode_profile(game, worst[1]) if worst else None,
        worst_ne_cost=Fraction(worst[0], sc_scale) if worst else None,
        best_ne=decode_profile(game, best[1]) if best else None,
        best_ne_cost=Fraction(best[0], sc_scale) if best else None,
        potential_argmin=decode_profile(game, pot[1]),
        potential_min=Fraction(pot[0], pot_scale),
        ne_profiles=ne_profiles,
    )


def scan_profiles(
    game: Game,
    rho: RationalLike,
    sigma: RationalLike = 1,
    budget: int | EnumerationBudget | None = None,
    *,
    collect_ne: bool = False,
    backend: str | None = None,
    chunk_size: int | None = None,
    workers: int = 1,
) -> ProfileScan:
    """One exhaustive pass computing optimum, NE extremes and potential minimum.

    ``backend`` is ``"numba"``, ``"numpy"`` or ``"python"`` (exact Fractions);
    it defaults to the ``PPCG_KERNEL`` selection, with numpy standing in for
    numba on small profile spaces. Integer backends fall back to
    the exact path when scaled costs could overflow int64.
    """
    rho, sigma = as_fraction(rho), as_fraction(sigma)
    if rho < 0 or sigma < 0:
        raise GameError("rho and sigma must be non-negative")
    _budget(budget).check(game)
    if backend is None:
        backend = _kernels.BACKEND
        if backend == "numba" and game.profile_count < SMALL_SCAN:
            backend = "numpy"
    if backend != "python":
        packed = _kernels.pack(game, rho, sigma)
        if packed is not None:
            return _scan_integer(game, packed, collect_ne, backend, chunk_size, workers)
        log.info("scaled costs exceed int64 range; using exact rational scan")
    return _scan_exact(game, rho, sigma, collect_ne)


def enumerate_nash(game: Game, rho: RationalLike, budget=None, **kw) -> list[Profile]:
    """All pure Nash equilibria under ``C^rho``, lexicographically ordered."""
    return scan_profiles(game, rho, 1, budget, collect_ne=True, **kw).ne_profiles


def nash_set_under(game: Game, cost: CostFn, budget=None) -> list[Profile]:
    """Exact NE set for an arbitrary per-player cost function (slow path)."""
    _budget(budget).check(game)
    return [s for s in all_profiles(game) if is_nash_under(game, s, cost)]


def social_optimum(game: Game, sigma: RationalLike, budget=None, **kw) -> tuple[Profile, Fraction]:
    scan = scan_profiles(game, 1, sigma, budget, **kw)
    return scan.opt_profile, scan.opt_cost


def _ratio(num: Fraction, den: Fraction) -> Fraction | float:
    if den == 0:
        return Fraction(1) if num == 0 else INF
    return num / den


def price_of_anarchy(game: Game, rho, sigma, budget=None, **kw) -> RatioResult:
    scan = scan_profiles(game, rho, sigma, budget, **kw)
    if scan.worst_ne is None:  # cannot happen: the potential minimizer is always an NE
        raise RuntimeError("no Nash equilibrium found")
    return RatioResult(_ratio(scan.worst_ne_cost, scan.opt_cost), scan.worst_ne, scan.opt_profile)


def price_of_stability(game: Game, rho, sigma, budget=None, **kw) -> RatioResult:
    scan = scan_profiles(game, rho, sigma, budget, **kw)
    if scan.best_ne is None:
        raise RuntimeError("no Nash equilibrium found")
    return RatioResult(_ratio(scan.best_ne_cost, scan.opt_cost), scan.best_ne, scan.opt_profile)


def ratios_from_scan(scan: ProfileScan) -> tuple[RatioResult, RatioResult]:
    return (
        RatioResult(_ratio(scan.worst_ne_cost, scan.opt_cost), scan.worst_ne, scan.opt_profile),
        RatioResult(_ratio(scan.best_ne_cost, scan.opt_cost), scan.best_ne, scan.opt_profile),
    )


def potential_minimizer(game: Game, rho: RationalLike, budget=None, **kw) -> Profile:
    return scan_profiles(game, rho, 1, budget, **kw).potential_argmin


# --- best-response dynamics ----------------------------------------------------------


def best_response_path(game: Game, start: Sequence[int], rho: RationalLike) -> Iterator[Profile]:
    """Yield ``start`` and every profile reached by strict best responses.

    Pivot: the lowest-index player with an improving move switches to its
    lowest-index cheapest strategy.
    """
    rho = as_fraction(rho)
    profile = game.check_profile(start)
    yield profile
    while True:
        moved = False
        for i in range(game.n):
            current = perceived_cost(game, profile, i, rho)
            best_d, best_c = profile[i], current
            for d in range(len(game.strategies[i])):
                c = perceived_cost(game, deviate(profile, i, d), i, rho)
                if c < best_c:
                    best_d, best_c = d, c
            if best_d != profile[i]:
                profile = deviate(profile, i, best_d)
                moved = True
                yield profile
                break
        if not moved:
            return


def best_response_dynamics(game: Game, start: Sequence[int], rho: RationalLike, max_steps: int = 10**6) -> Profile:
    """Run best responses to a pure NE; more than ``max_steps`` moves signals a bug."""
    last = None
    for steps, profile in enumerate(best_response_path(game, start, rho)):
        if steps > max_steps:
            raise RuntimeError(f"best-response dynamics exceeded {max_steps} steps")
        last = profile
    return last
