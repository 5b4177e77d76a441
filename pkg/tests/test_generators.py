from fractions import Fraction as F

import pytest

from ppcg.bounds import finite_ratio, pos_upper_bound
from ppcg.equilibria import enumerate_nash, is_nash, price_of_anarchy, scan_profiles
from ppcg.game import GameError, perceived_cost, social_cost
from ppcg.generators import (
    CONSTRUCTIONS,
    gen_poa_general,
    gen_poa_network,
    gen_pos_general,
    gen_singleton_pos,
    gen_two_player_tight,
)
from ppcg.network import enumerate_paths, to_congestion_game

RHOS = [F(0), F(1, 2), F(5, 8), 1, F(3, 2), 2, 3]
SIGMAS = [F(0), F(1, 2), 1, 2]


def audit(con, sigmas=SIGMAS):
    game = to_congestion_game(con.game) if con.is_network else con.game
    ne, cmp_ = con.profiles_for(game)
    assert is_nash(game, ne, con.rho)
    for sigma in sigmas:
        assert social_cost(game, ne, sigma) == con.predicted_ne_cost(sigma)
        assert social_cost(game, cmp_, sigma) == con.predicted_comparison_cost(sigma)
    return game, ne, cmp_


class TestPoaGeneral:
    def test_shape(self):
        con = gen_poa_general(3, 1)
        assert con.game.m == 6
        assert con.game.strategies[0] == ((0, 3), (1, 4, 5))

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("rho", RHOS)
    def test_audit(self, n, rho):
        audit(gen_poa_general(n, rho))

    def test_costs(self):
        con = gen_poa_general(3, 1)
        assert con.predicted_ne_cost(1) == 15
        assert con.predicted_comparison_cost(1) == 6

    @pytest.mark.parametrize("rho", RHOS)
    def test_player_cost(self, rho):
        for n in (3, 4, 6):
            con = gen_poa_general(n, rho)
            for i in range(n):
                assert perceived_cost(con.game, con.designated_ne, i, rho) == 2 * rho**2 + 2 * rho + 1

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_brute_force_poa(self, n):
        assert price_of_anarchy(gen_poa_general(n, 1).game, 1, 1).value == F(5, 2)

    def test_small_n(self):
        with pytest.raises(GameError):
            gen_poa_general(2, 1)


class TestPoaNetwork:
    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("rho", RHOS)
    def test_audit(self, n, rho):
        audit(gen_poa_network(n, rho))

    def test_costs(self):
        con = gen_poa_network(3, 1)
        assert con.predicted_comparison_cost(1) == 21
        assert con.predicted_ne_cost(1) == 39

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_structure(self, n):
        net = gen_poa_network(n, 1).game
        zero = [a for a in net.arcs if a.resource.a == 0 and a.resource.b == 0]
        assert len(zero) == n * (n - 1)
        assert len(net.arcs) - len(zero) == n * (2 * n - 1)
        for path in gen_poa_network(n, 1).comparison:
            assert len(path) == 2 * n - 1

    def test_designated_paths_are_paths(self):
        con = gen_poa_network(4, F(1, 2))
        paths = set(enumerate_paths(con.game))
        assert all(p in paths for p in con.designated_ne)

    def test_small_n(self):
        with pytest.raises(GameError):
            gen_poa_network(1, 1)


class TestPosGeneral:
    @pytest.mark.parametrize("n1,n2", [(2, 0), (2, 1), (3, 2), (4, 1)])
    def test_audit(self, n1, n2):
        audit(gen_pos_general(n1, n2, 1))

    @pytest.mark.parametrize("n1,n2", [(2, 1), (3, 2), (4, 0)])
    def test_resource_count(self, n1, n2):
        assert gen_pos_general(n1, n2, 1).game.m == 1 + n1 + n1 * (n1 - 1)

    @pytest.mark.parametrize("n1,n2,rho", [(2, 1, 1), (3, 2, F(1, 2)), (3, 1, 2)])
    def test_unique_ne(self, n1, n2, rho):
        con = gen_pos_general(n1, n2, rho)
        assert enumerate_nash(con.game, rho) == [con.designated_ne]

    def test_indifference_without_bump(self):
        # with eps -> 0, a player switching P -> A while k-1 others play A is exactly indifferent
        n1, n2, rho = 3, 2, F(3, 4)
        eps = F(1, 10**9)
        con = gen_pos_general(n1, n2, rho, eps)
        for k in range(1, n1 + 1):
            prof_a = (0,) * k + (1,) * (n1 - k) + (0,) * n2
            prof_p = (0,) * (k - 1) + (1,) * (n1 - k + 1) + (0,) * n2
            diff = perceived_cost(con.game, prof_p, k - 1, rho) - perceived_cost(con.game, prof_a, k - 1, rho)
            assert 0 < diff <= eps

    def test_bad_params(self):
        with pytest.raises(GameError):
            gen_pos_general(1, 1, 1)
        with pytest.raises(GameError):
            gen_pos_general(2, 1, 1, eps=0)


class TestTwoPlayerTight:
    @pytest.mark.parametrize("rho", RHOS)
    def test_audit(self, rho):
        audit(gen_two_player_tight(rho))

    @pytest.mark.parametrize("rho", [2, 3, 4])
    def test_poa(self, rho):
        assert price_of_anarchy(gen_two_player_tight(rho).game, rho, 1).value == rho + 1

    def test_rho_zero(self):
        con = gen_two_player_tight(0)
        assert con.predicted_ne_cost(1) / con.predicted_comparison_cost(1) == 1
        # with load-blind players every profile is stable, including the two-resource ones
        assert price_of_anarchy(con.game, 0, 1).value == 2

    def test_rho_one(self):
        assert gen_two_player_tight(1).predicted_ne_cost(1) == 4


class TestSingletonPos:
    def test_shape(self):
        con = gen_singleton_pos(5, 2)
        assert con.game.m == 5
        assert con.rho == F(1, 2)

    @pytest.mark.parametrize("n,i", [(3, 2), (5, 2), (5, 4), (6, 4)])
    def test_audit(self, n, i):
        game, ne, _ = audit(gen_singleton_pos(n, i), sigmas=[1])
        assert social_cost(game, ne, 1) == n * n

    def test_comparison_cost(self):
        assert gen_singleton_pos(5, 2).predicted_comparison_cost(1) == 1 + 4 * (3 + F(1, 1000))

    @pytest.mark.parametrize("n,i", [(5, 2), (5, 4), (4, 2)])
    def test_unique_ne(self, n, i):
        con = gen_singleton_pos(n, i)
        scan = scan_profiles(con.game, con.rho, 1, collect_ne=True)
        assert scan.ne_profiles == [(0,) * n]

    def test_bad_params(self):
        for n, i in [(5, 3), (5, 0), (5, 6)]:
            with pytest.raises(GameError):
                gen_singleton_pos(n, i)


def test_registry():
    assert set(CONSTRUCTIONS) == {"poa_general", "poa_network", "pos_general", "two_player_tight", "singleton_pos"}


@pytest.mark.parametrize("rho", [F(1, 2), F(1), F(2)])
def test_network_ratio_trend(rho):
    seq = [finite_ratio("poa_network", n=n, rho=rho) for n in range(2, 40)]
    assert all(b > a for a, b in zip(seq, seq[1:]))
    assert seq[-1] < (1 + 4 * rho) / (1 + rho)


def test_pos_general_ratio_trend():
    seq = [finite_ratio("pos_general", n1=2 * k, n2=k, rho=1) for k in range(1, 30)]
    assert all(b > a for a, b in zip(seq, seq[1:]))
    assert float(seq[-1]) < pos_upper_bound(1, 1).value
