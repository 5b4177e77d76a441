"""Closed-form PoA/PoS bounds, their proof auxiliaries and finite-n ratio formulas.

This is the only module working in binary64; the square roots make the values
irrational. Comparisons against these values use ``TOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rational import RationalLike, as_fraction

TOL = 1e-12


@dataclass(frozen=True)
class BoundValue:
    value: float
    region_ok: bool
    region_label: str


def _nonneg(*values):
    out = [as_fraction(v) for v in values]
    if any(v < 0 for v in out):
        raise ValueError("parameters must be non-negative")
    return out


def a_star(sigma) -> float:
    sigma = float(sigma)
    return 1 + sigma + math.sqrt(sigma * (sigma + 2))


def b_star(sigma) -> float:
    sigma = float(sigma)
    return 1 + sigma + math.sqrt(sigma * (sigma + 0.5))


def g_ratio(a, sigma) -> float:
    """Limit of ``-f2/f1`` along the ray ``x = a y``."""
    a, sigma = float(a), float(sigma)
    return sigma * (a * a - 1) / ((1 + sigma) * a * a - (2 * sigma + 1) * a + 2 * sigma * (sigma + 1))


h1 = g_ratio


def h2(a, sigma) -> float:
    """``-f2/f1`` on the line ``y = 2``, ``x = 2a``."""
    a, sigma = float(a), float(sigma)
    return sigma * (2 * a * a - 3 * a + 1) / (2 * (1 + sigma) * a * a - (5 * sigma + 4) * a + 2 * (1 + sigma) ** 2)


def h_sigma(sigma) -> float:
    """Smallest rho for which the smoothness argument goes through (given Delta >= 0)."""
    if float(sigma) <= 0:
        raise ValueError("h(sigma) needs sigma > 0")
    return g_ratio(a_star(sigma), sigma)


def delta_sigma(sigma) -> float:
    if float(sigma) < 0.5:
        raise ValueError("Delta(sigma) is defined for sigma >= 1/2")
    return h1(a_star(sigma), sigma) - h2(b_star(sigma), sigma)


def delta_sigma_array(sigmas: np.ndarray) -> np.ndarray:
    s = np.asarray(sigmas, dtype=np.float64)
    a = 1 + s + np.sqrt(s * (s + 2))
    b = 1 + s + np.sqrt(s * (s + 0.5))
    g1 = s * (a * a - 1) / ((1 + s) * a * a - (2 * s + 1) * a + 2 * s * (s + 1))
    g2 = s * (2 * b * b - 3 * b + 1) / (2 * (1 + s) * b * b - (5 * s + 4) * b + 2 * (1 + s) ** 2)
    return g1 - g2


def poa_upper_bound(rho: RationalLike, sigma: RationalLike) -> BoundValue:
    rho, sigma = _nonneg(rho, sigma)
    r, s = float(rho), float(sigma)
    value = max(r + 1, (2 * r * (1 + s) + 1) / (r + 1))
    if Fraction(1, 2) <= sigma <= rho <= 2 * sigma:
        return BoundValue(value, True, "smoothness: 1/2 <= sigma <= rho <= 2 sigma")
    if sigma == 1 and h_sigma(1) <= r and rho <= 2:
        return BoundValue(value, True, "smoothness: sigma = 1, h(1) <= rho <= 2")
    if 1 <= 2 * sigma <= rho:
        return BoundValue(value, True, "rho + 1: 1 <= 2 sigma <= rho")
    return BoundValue(value, False, "no proven bound for these parameters")


def pos_lower_rho(sigma) -> float:
    s = float(sigma)
    return 2 * s / (1 + s + math.sqrt(s * (s + 2)))


def pos_upper_bound(rho: RationalLike, sigma: RationalLike) -> BoundValue:
    rho, sigma = _nonneg(rho, sigma)
    if sigma <= 0:
        raise ValueError("PoS bound needs sigma > 0")
    r, s = float(rho), float(sigma)
    root = math.sqrt(s * (s + 2))
    value = (root + s) / (root + r - s)
    ok = pos_lower_rho(s) <= r + TOL and rho <= 2 * sigma
    label = "potential minimizer: 2 sigma/(1+sigma+sqrt(sigma(sigma+2))) <= rho <= 2 sigma" if ok else "outside proven range"
    return BoundValue(value, ok, label)


def network_pos_bound(rho: RationalLike) -> BoundValue:
    """PoS of linear symmetric network games at sigma = 1."""
    rho = as_fraction(rho)
    if rho <= 0:
        raise ValueError("network PoS bound needs rho > 0")
    r = float(rho)
    if rho <= 1:
        return BoundValue(4 / (r * (4 - r)), True, "0 < rho <= 1")
    if rho <= 2:
        return BoundValue(4 / (2 + r), True, "1 <= rho <= 2")
    return BoundValue((2 + r) / 4, True, "rho >= 2")


def generalized_affine_pos(sigma) -> float:
    """``1 + sqrt(sigma/(sigma+2))``, the diagonal PoS bound for sigma >= 1/4."""
    s = float(sigma)
    return 1 + math.sqrt(s / (s + 2))


# --- finite-n ratios of the constructions --------------------------------------------


def pos_limit_ratio(a, rho, sigma) -> float:
    """Large-n ratio of the two-group PoS instance with ``n2 = a n1``."""
    a, r, s = float(a), float(rho), float(sigma)
    return (2 * s * (1 + a) ** 2 + 1) / (r * (1 + 2 * a) + 1 + 2 * s * a * a)


def pos_optimal_mix(sigma) -> float:
    s = float(sigma)
    return -0.5 + math.sqrt(0.25 + 1 / (2 * s))


def finite_ratio(kind: str, **params) -> Fraction:
    """Exact NE/comparison cost ratio of a construction at finite size."""
    get = lambda k, default=None: as_fraction(params[k]) if k in params else default  # noqa: E731
    if kind == "poa_general":
        rho, sigma = get("rho"), get("sigma", Fraction(1))
        return (1 + 2 * rho * (1 + sigma)) / (1 + rho)
    if kind == "poa_network":
        n, rho, sigma = int(params["n"]), get("rho"), get("sigma", Fraction(1))
        return (n * ((1 + 2 * rho * (1 + sigma)) * n - 2 * rho * sigma)) / (n * ((1 + rho) * n + rho))
    if kind == "pos_general":
        n1, n2 = int(params["n1"]), int(params["n2"])
        rho, sigma, eps = get("rho"), get("sigma", Fraction(1)), get("eps", Fraction(0))
        half = Fraction(1, 2)
        num = n1 * (1 + sigma * (n1 + n2 - 1) + half * (n1 - 1)) + n2 * (1 + sigma * (n1 + n2 - 1))
        den = n1 * (rho * (Fraction(n1 + 1, 2) + n2 - 1) + 1 + eps + half * (n1 - 1)) + n2 * (1 + sigma * (n2 - 1))
        return num / den
    if kind == "two_player_tight":
        return 1 + get("rho")
    if kind == "singleton_pos":
        n, i, eps = int(params["n"]), int(params["i"]), get("eps", Fraction(0))
        k = Fraction(i, 2)
        return Fraction(n * n) / (k * k + (n - k) * (1 + i + eps))
    raise ValueError(f"unknown construction {kind!r}")
