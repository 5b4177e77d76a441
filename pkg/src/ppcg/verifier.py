"""Exhaustive integer-grid checks of the per-resource inequalities behind the bounds.

Every inequality is written as ``slack(x, y) >= 0`` and evaluated exactly in
rationals at all ``0 <= x, y <= N``. Inequalities containing
``sqrt(sigma(sigma+2))`` are evaluated at both ends of a rational enclosure of
the root and must hold at the worse end, so a pass is never optimistic.
A pass on a finite grid is evidence, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .bounds import delta_sigma_array, h_sigma
from .rational import RationalLike, as_fraction, sqrt_bounds

DELTA_TOL = 1e-9


@dataclass
class VerificationReport:
    name: str
    params: dict
    holds: bool
    witness: dict | None = None
    region_ok: bool = True
    notes: list[str] = field(default_factory=list)
    excluded: list[tuple[int, int]] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        return enc(
            {
                "name": self.name,
                "params": self.params,
                "holds": self.holds,
                "witness": self.witness,
                "region_ok": self.region_ok,
                "notes": self.notes,
                "excluded": self.excluded,
                **self.extra,
            }
        )


@dataclass(frozen=True)
class _Inequality:
    # slack(x, y) -> (lhs, rhs); the inequality reads lhs <= rhs
    sides: Callable[[int, int], tuple[Fraction, Fraction]]
    domain: Callable[[int, int], bool] = lambda x, y: True
    excluded: tuple[tuple[int, int], ...] = ()


def _smoothness(rho, sigma, _ctx):
    alpha = (2 * rho * (1 + sigma) + 1) / (1 + 2 * sigma)
    beta = (1 + rho) / (1 + 2 * sigma)

    def sides(x, y):
        lhs = (1 + rho * x) * y - rho * (x - 1) * x - x
        rhs = -beta * (1 + sigma * (x - 1)) * x + alpha * (1 + sigma * (y - 1)) * y
        return lhs, rhs

    return [_Inequality(sides)]


def _two_sigma(rho, sigma, _ctx):
    def sides(x, y):
        lhs = (1 + rho * x) * y - rho * (x - 1) * x - x
        rhs = -(1 + sigma * (x - 1)) * x + (1 + rho) * (1 + sigma * (y - 1)) * y
        return lhs, rhs

    return [_Inequality(sides)]


def _f1_nonneg(rho, sigma, _ctx):
    def sides(x, y):
        f1 = 2 * y * (y - 1) * sigma**2 + (x * x + 2 * y * y - 2 * x * y - x) * sigma + (x * x - x * y + 2 * (y - x))
        return Fraction(0), f1

    return [_Inequality(sides, excluded=((1, 0),))]


def _pos_core(rho, sigma, ctx):
    # one inequality per end of the root enclosure
    out = []
    for root in ctx["root"]:
        k = root + sigma

        def sides(x, y, k=k):
            rhs = (Fraction(2 * x - 2 * y + 1, 2)) ** 2 - Fraction(1, 4) + 2 * sigma * x * (x - 1)
            rhs += k * (y * (y - 1) - x * (x - 1))
            return Fraction(0), rhs

        out.append(_Inequality(sides))
    return out


def _pos_proof(rho, sigma, ctx):
    if rho <= 0:
        raise ValueError("pos_proof needs rho > 0")
    out = []
    for K in ctx["K"]:
        delta = (K - 1) / rho
        gamma = ((rho - 1) * K + 1) / (2 * rho)

        def sides(x, y, K=K, delta=delta, gamma=gamma):
            # x = load at the potential minimizer, y = load at the optimum
            lhs = gamma * (rho * y * y + (2 - rho) * y - rho * x * x - (2 - rho) * x)
            lhs += delta * ((1 + rho * x) * y - x * (1 + rho * (x - 1)))
            rhs = K * y * (1 + sigma * (y - 1)) - x * (1 + sigma * (x - 1))
            return lhs, rhs

        out.append(_Inequality(sides))
    return out


def _network_h(rho):
    return 1 - rho + rho * rho / 4


def _network_pos_a(rho, sigma, _ctx):
    # branch x < y of the flow inequality with h = 1 - rho + rho^2/4, g = 1
    h = _network_h(rho)

    def sides(x, y):
        lhs = (x - 1) * (rho * y + (sigma - rho) * x) + (1 + rho) * y - rho * x
        rhs = h * x * (1 + sigma * (x - 1)) + y * (1 + sigma * (y - 1))
        return lhs, rhs

    return [_Inequality(sides, domain=lambda x, y: x < y)]


def _network_pos_b(rho, sigma, _ctx):
    # branch x >= y; on the diagonal both branches coincide
    h = _network_h(rho)

    def sides(x, y):
        lhs = (x - 1) * (rho * y + (sigma - rho) * x) + y
        rhs = h * x * (1 + sigma * (x - 1)) + y * (1 + sigma * (y - 1))
        return lhs, rhs

    return [_Inequality(sides, domain=lambda x, y: x >= y)]


def _sqrt_enclosure(sigma: Fraction) -> tuple[Fraction, Fraction]:
    return sqrt_bounds(sigma * (sigma + 2), scale_digits=20)


def _k_enclosure(rho: Fraction, sigma: Fraction) -> tuple[Fraction, Fraction]:
    lo, hi = _sqrt_enclosure(sigma)
    ks = [(r + sigma) / (r + rho - sigma) for r in (lo, hi)]
    return min(ks), max(ks)


def _regions(name: str, rho: Fraction, sigma: Fraction) -> tuple[bool, str]:
    if name == "smoothness":
        ok = Fraction(1, 2) <= sigma <= rho <= 2 * sigma or (sigma == 1 and h_sigma(1) <= float(rho) and rho <= 2)
        return ok, "proven for 1/2 <= sigma <= rho <= 2 sigma, and sigma = 1 with h(1) <= rho <= 2"
    if name == "two_sigma":
        return 1 <= 2 * sigma <= rho, "stated for 1 <= 2 sigma <= rho"
    if name == "f1_nonneg":
        return sigma >= Fraction(1, 2), "stated for sigma >= 1/2, (x, y) != (1, 0)"
    if name == "pos_core":
        return sigma >= 0, "stated for all sigma >= 0"
    if name == "pos_proof":
        lo = 2 * sigma / (1 + sigma + _sqrt_enclosure(sigma)[1]) if sigma > 0 else Fraction(0)
        return sigma > 0 and lo <= rho <= 2 * sigma, "stated for 2 sigma/(1+sigma+sqrt(sigma(sigma+2))) <= rho <= 2 sigma"
    if name in ("network_pos_a", "network_pos_b"):
        return 0 < rho <= 1 and sigma == 1, "stated for 0 < rho <= 1, sigma = 1"
    raise KeyError(name)


INEQUALITIES = {
    "smoothness": _smoothness,
    "f1_nonneg": _f1_nonneg,
    "pos_core": _pos_core,
    "two_sigma": _two_sigma,
    "pos_proof": _pos_proof,
    "network_pos_a": _network_pos_a,
    "network_pos_b": _network_pos_b,
}


def verify(name: str, rho: RationalLike = 1, sigma: RationalLike = 1, N: int = 100) -> VerificationReport:
    """Check the named inequality on ``0 <= x, y <= N`` (row-major: x outer, y inner)."""
    if name not in INEQUALITIES:
        raise KeyError(f"unknown inequality {name!r}; choose from {sorted(INEQUALITIES)}")
    if N < 1:
        raise ValueError("grid bound must be >= 1")
    rho, sigma = as_fraction(rho), as_fraction(sigma)
    ctx = {}
    if name == "pos_core":
        ctx["root"] = _sqrt_enclosure(sigma)
    if name == "pos_proof":
        ctx["K"] = _k_enclosure(rho, sigma)
    ineqs = INEQUALITIES[name](rho, sigma, ctx)
    region_ok, region_label = _regions(name, rho, sigma)
    report = VerificationReport(
        name=name,
        params={"rho": rho, "sigma": sigma, "N": N},
        holds=True,
        region_ok=region_ok,
        notes=[region_label, f"grid check on 0..{N}; evidence, not proof"],
        excluded=list(ineqs[0].excluded),
    )
    if name == "pos_proof":
        K_hi = ctx["K"][1]
        report.extra = {
            "K_upper": K_hi,
            "K_float": float(K_hi),
            "gamma_nonneg": ((rho - 1) * K_hi + 1) / (2 * rho) >= 0,
            "delta_nonneg": (K_hi - 1) / rho >= 0,
        }
    for x in range(N + 1):
        for y in range(N + 1):
            for ineq in ineqs:
                if (x, y) in ineq.excluded or not ineq.domain(x, y):
                    continue
                lhs, rhs = ineq.sides(x, y)
                if lhs > rhs:
                    report.holds = False
                    report.witness = {"x": x, "y": y, "lhs": lhs, "rhs": rhs}
                    return report
    return report


def delta_sweep(sigma_lo: float, sigma_hi: float, step: float, tol: float = DELTA_TOL) -> VerificationReport:
    """Evaluate Delta(sigma) on ``sigma_lo, sigma_lo + step, ..., <= sigma_hi``."""
    if not (0.5 <= sigma_lo < sigma_hi) or step <= 0:
        raise ValueError("need 1/2 <= sigma_lo < sigma_hi and step > 0")
    count = int(np.floor((sigma_hi - sigma_lo) / step + 1e-9)) + 1
    sigmas = sigma_lo + step * np.arange(count)
    values = delta_sigma_array(sigmas)
    k = int(np.argmin(values))
    holds = bool(values[k] >= -tol)
    report = VerificationReport(
        name="delta_sweep",
        params={"sigma_lo": sigma_lo, "sigma_hi": sigma_hi, "step": step, "points": count},
        holds=holds,
        notes=[f"Delta evaluated in binary64, tolerance {tol:g}"],
        extra={"min_delta": float(values[k]), "argmin_sigma": float(sigmas[k])},
    )
    if not holds:
        report.witness = {"sigma": float(sigmas[k]), "delta": float(values[k])}
    report.extra["_grid"] = (sigmas, values)
    return report
