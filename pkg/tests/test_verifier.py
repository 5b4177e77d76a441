import math
import random
from fractions import Fraction as F

import pytest

import _oracle
from ppcg.bounds import poa_upper_bound, pos_upper_bound
from ppcg.equilibria import price_of_anarchy, price_of_stability
from ppcg.generators import gen_poa_general, gen_pos_general, gen_singleton_pos, gen_two_player_tight
from ppcg.verifier import INEQUALITIES, delta_sweep, verify


def straight_line(name, rho, sigma, x, y):
    """Each inequality written out once more, in float, as ``rhs - lhs``."""
    r, s = float(rho), float(sigma)
    if name == "smoothness":
        al = (2 * r * (1 + s) + 1) / (1 + 2 * s)
        be = (1 + r) / (1 + 2 * s)
        return (-be * (1 + s * (x - 1)) * x + al * (1 + s * (y - 1)) * y) - ((1 + r * x) * y - r * (x - 1) * x - x)
    if name == "two_sigma":
        return (-(1 + s * (x - 1)) * x + (1 + r) * (1 + s * (y - 1)) * y) - ((1 + r * x) * y - r * (x - 1) * x - x)
    if name == "f1_nonneg":
        return 2 * y * (y - 1) * s * s + (x * x + 2 * y * y - 2 * x * y - x) * s + (x * x - x * y + 2 * (y - x))
    if name == "pos_core":
        k = math.sqrt(s * (s + 2)) + s
        return (x - y + 0.5) ** 2 - 0.25 + 2 * s * x * (x - 1) + k * (y * (y - 1) - x * (x - 1))
    raise KeyError(name)


class TestVerify:
    @pytest.mark.parametrize("rho,sigma", [(1, 1), (F(1, 2), F(1, 2)), (1, F(1, 2)), ("0.63", 1), (2, 1)])
    def test_smoothness_holds(self, rho, sigma):
        rep = verify("smoothness", rho, sigma, 50)
        assert rep.holds and rep.witness is None

    def test_smoothness_fails(self):
        rep = verify("smoothness", 1, "0.4", 2)
        assert not rep.holds
        assert (rep.witness["x"], rep.witness["y"]) == (1, 0)
        assert rep.witness["lhs"] > rep.witness["rhs"]
        assert not rep.region_ok

    def test_pos_core(self):
        assert verify("pos_core", 0, 1, 200).holds

    def test_f1(self):
        rep = verify("f1_nonneg", 0, F(1, 2), 100)
        assert rep.holds
        assert rep.excluded == [(1, 0)]
        # the excluded pair really is negative
        assert straight_line("f1_nonneg", 0, 0.5, 1, 0) < 0

    def test_f1_fails_below_half(self):
        rep = verify("f1_nonneg", 0, F(1, 10), 30)
        assert not rep.holds

    def test_two_sigma(self):
        assert verify("two_sigma", 2, 1).holds

    def test_pos_proof(self):
        rep = verify("pos_proof", 1, 1, 100)
        assert rep.holds
        assert rep.extra["gamma_nonneg"] and rep.extra["delta_nonneg"]
        assert rep.extra["K_float"] == pytest.approx((math.sqrt(3) + 1) / math.sqrt(3), abs=1e-15)
        assert rep.extra["K_upper"] >= F((math.sqrt(3) + 1) / math.sqrt(3)) - F(1, 10**15)

    def test_pos_proof_needs_positive_rho(self):
        with pytest.raises(ValueError):
            verify("pos_proof", 0, 1)

    def test_network(self):
        assert verify("network_pos_a", F(1, 2), 1, 100).holds
        assert verify("network_pos_b", F(1, 2), 1, 100).holds
        assert not verify("network_pos_a", 2, 1, 5).region_ok

    def test_unknown_and_bad_grid(self):
        with pytest.raises(KeyError):
            verify("nope")
        with pytest.raises(ValueError):
            verify("smoothness", 1, 1, 0)

    def test_report_json(self):
        data = verify("smoothness", 1, "0.4", 3).to_json()
        assert data["witness"] == {"x": 1, "y": 0, "lhs": "-1", "rhs": "-10/9"}
        assert data["params"]["sigma"] == "2/5"


class TestWitnesses:
    def test_witness_reevaluation(self):
        rng = random.Random(1)
        found = 0
        for _ in range(200):
            name = rng.choice(["smoothness", "two_sigma", "f1_nonneg", "pos_core"])
            rho = F(rng.randint(0, 40), rng.randint(1, 8))
            sigma = F(rng.randint(0, 20), rng.randint(1, 8))
            rep = verify(name, rho, sigma, 12)
            if rep.holds:
                continue
            found += 1
            w = rep.witness
            assert straight_line(name, rho, sigma, w["x"], w["y"]) < 1e-9
            assert w["lhs"] > w["rhs"]
        assert found > 10

    def test_smoothness_corner_iff_rho_above_two_sigma(self):
        # restricted to rho (1+sigma) >= sigma, where the x = 0 row holds
        rng = random.Random(2)
        for _ in range(100):
            sigma = F(rng.randint(1, 30), rng.randint(1, 10))
            lo = sigma / (1 + sigma)
            rho = lo + F(rng.randint(0, 60), rng.randint(1, 10))
            rep = verify("smoothness", rho, sigma, 3)
            corner = rep.witness is not None and (rep.witness["x"], rep.witness["y"]) == (1, 0)
            assert corner == (rho > 2 * sigma)


class TestConsistency:
    def test_smoothness_implies_poa_bound(self):
        instances = [
            gen_poa_general(3, 1),
            gen_poa_general(4, F(3, 2)),
            gen_two_player_tight(1),
            gen_singleton_pos(5, 2),
            gen_pos_general(2, 1, 1),
        ]
        for rho, sigma in [(1, 1), (F(3, 2), 1), (F(3, 4), F(1, 2)), (F(1, 2), 2), (2, F(3, 2))]:
            if not verify("smoothness", rho, sigma, 60).holds:
                continue
            bound = poa_upper_bound(rho, sigma).value
            for con in instances:
                assert float(price_of_anarchy(con.game, rho, sigma).value) <= bound + 1e-9

    def test_pos_proof_implies_pos_bound(self):
        rng = random.Random(6)
        pairs = [(1, 1), (F(1, 2), F(1, 2)), (F(3, 4), F(1, 2)), (F(3, 2), 1)]
        for rho, sigma in pairs:
            rep = verify("pos_proof", rho, sigma, 60)
            if not (rep.holds and rep.extra["gamma_nonneg"] and rep.extra["delta_nonneg"]):
                continue
            bound = pos_upper_bound(rho, sigma).value
            for _ in range(40):
                game = _oracle.random_game(rng, max_profiles=300)
                assert float(price_of_stability(game, rho, sigma).value) <= bound + 1e-9


class TestDeltaSweep:
    def test_coarse(self):
        rep = delta_sweep(0.5, 2, 1e-3)
        assert rep.holds
        assert rep.extra["min_delta"] >= -1e-9

    def test_tiny_range(self):
        rep = delta_sweep(0.5, 0.5 + 1e-6, 1)
        assert rep.holds and rep.params["points"] == 1

    def test_argmin_stable_under_refinement(self):
        a = delta_sweep(0.5, 2, 1e-3)
        b = delta_sweep(0.5, 2, 1e-4)
        assert a.extra["argmin_sigma"] == pytest.approx(b.extra["argmin_sigma"], abs=1e-3)
        assert a.extra["min_delta"] == pytest.approx(b.extra["min_delta"], abs=1e-6)

    def test_invalid(self):
        with pytest.raises(ValueError):
            delta_sweep(0.4, 2, 0.1)
        with pytest.raises(ValueError):
            delta_sweep(1, 0.5, 0.1)
        with pytest.raises(ValueError):
            delta_sweep(0.5, 1, 0)


def test_registry():
    assert set(INEQUALITIES) == {
        "smoothness",
        "f1_nonneg",
        "pos_core",
        "two_sigma",
        "pos_proof",
        "network_pos_a",
        "network_pos_b",
    }
