"""Colored graphs: bubbles, faces, jackets, and the two degree formulas."""
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from chromaplex import colored_graph as cg
from chromaplex.models import sample_quartic_model, sample_uniform_model
from chromaplex.perm import Permutation
from chromaplex.predictions import harmonic, harmonic_var


def melon(D):
    return cg.build(D, 1, [Permutation.identity(1)] * (D + 1))


def rng_for(seed=0):
    return np.random.default_rng(seed)


class TestBuild:
    def test_melon_is_connected_two_vertex(self):
        G = melon(3)
        assert G.n_vertices == 2
        assert cg.is_connected(G)

    def test_identical_permutations_give_disjoint_pairs(self):
        G = cg.build(1, 3, [Permutation.identity(3)] * 2)
        assert cg.component_count(G) == 3

    def test_mismatched_sizes_rejected(self):
        with pytest.raises(ValueError):
            cg.build(2, 3, [Permutation.identity(3), Permutation.identity(3),
                            Permutation.identity(2)])
        with pytest.raises(ValueError):
            cg.build(2, 3, [Permutation.identity(3)] * 2)

    def test_serialization_round_trip(self):
        G = sample_uniform_model(3, 7, rng_for(1))
        text = cg.to_text(G)
        H = cg.from_text(text)
        assert H == G
        assert cg.to_text(H) == text

    def test_serialization_header(self):
        text = cg.to_text(melon(3))
        assert text.splitlines()[0] == "3 1"


class TestBubbles:
    def test_melon_full_colors_single_bubble(self):
        out = cg.bubbles(melon(3), range(4))
        assert len(out) == 1
        assert out[0].black_vertices == (1,) and out[0].white_vertices == (1,)

    def test_melon_two_colors_single_face(self):
        assert len(cg.bubbles(melon(3), (1, 2))) == 1

    def test_empty_colors_gives_vertices(self):
        G = sample_uniform_model(2, 4, rng_for(2))
        out = cg.bubbles(G, ())
        assert len(out) == 8
        assert sum(len(b.black_vertices) + len(b.white_vertices) for b in out) == 8

    def test_invalid_color_rejected(self):
        with pytest.raises(ValueError):
            cg.bubbles(melon(2), (0, 3))

    def test_bubble_black_white_balance(self):
        G = sample_uniform_model(3, 9, rng_for(3))
        for colors in [(0,), (1, 3), (0, 1, 2)]:
            for b in cg.bubbles(G, colors):
                assert len(b.black_vertices) == len(b.white_vertices) >= 1

    def test_hat_i_bubbles_partition_vertices(self):
        G = sample_uniform_model(3, 8, rng_for(4))
        for i in range(4):
            out = cg.bubbles(G, [c for c in range(4) if c != i])
            blacks = sorted(v for b in out for v in b.black_vertices)
            whites = sorted(v for b in out for v in b.white_vertices)
            assert blacks == list(range(1, 9)) and whites == list(range(1, 9))

    def test_canonical_order(self):
        G = sample_uniform_model(2, 6, rng_for(5))
        out = cg.bubbles(G, (0, 1))
        mins = [b.black_vertices[0] for b in out]
        assert mins == sorted(mins)


class TestCensus:
    def test_melon_census(self):
        assert cg.bubble_census(melon(3)) == {0: 2, 1: 4, 2: 6, 3: 4, 4: 1}

    def test_d2_identity_pairs(self):
        G = cg.build(2, 2, [Permutation.identity(2)] * 3)
        census = cg.bubble_census(G)
        assert census[2] == 6  # three color pairs, two 2-cycles each
        assert census[3] == 2  # two disjoint melons

    def test_b0_b1_bk_identities(self):
        for seed in range(5):
            G = sample_uniform_model(3, 11, rng_for(seed))
            census = cg.bubble_census(G)
            assert census[0] == 22
            assert census[1] == 4 * 11
            assert census[4] == cg.component_count(G)

    def test_d1_census(self):
        G = cg.build(1, 3, [Permutation.identity(3)] * 2)
        assert cg.bubble_census(G) == {0: 6, 1: 6, 2: 3}

    def test_b2_fast_path_matches_union_find(self):
        # permutation products vs the generic component count
        for seed in range(1000):
            G = sample_uniform_model(3, 6, rng_for(seed))
            fast = sum(
                cg.face_count(G, i, j) for i, j in itertools.combinations(range(4), 2)
            )
            slow = sum(
                len(cg.bubbles(G, (i, j)))
                for i, j in itertools.combinations(range(4), 2)
            )
            assert fast == slow


class TestJackets:
    def test_melon_any_jacket_four_faces(self):
        G = melon(3)
        for spec in cg.all_jackets(3):
            assert cg.jacket_faces(G, spec) == 4

    def test_d2_jacket_equals_b2(self):
        for seed in range(20):
            G = sample_uniform_model(2, 5, rng_for(seed))
            b2 = cg.bubble_census(G)[2]
            for spec in cg.all_jackets(2):
                assert cg.jacket_faces(G, spec) == b2

    def test_jacket_count_is_d_factorial(self):
        assert len(list(cg.all_jackets(3))) == 6
        assert len(list(cg.all_jackets(4))) == 24

    def test_invalid_successor_map_rejected(self):
        with pytest.raises(ValueError):
            cg.JacketSpec(tau=(1, 0, 3, 2))  # two 2-cycles
        with pytest.raises(ValueError):
            cg.JacketSpec(tau=(1, 1, 2, 0))

    def test_jacket_face_sum_identity(self):
        # sum of F over all D! jackets = 2 (D-1)! b_2
        for seed in range(20):
            G = sample_uniform_model(3, 7, rng_for(seed))
            b2 = cg.bubble_census(G)[2]
            total = sum(cg.jacket_faces(G, spec) for spec in cg.all_jackets(3))
            assert total == 2 * math.factorial(2) * b2

    def test_parity_forced_even_on_every_jacket(self):
        # (D+1)p - F is even for every tuple and every color cycle: the
        # product of the signs of the adjacent-pair products is +1
        for seed in range(30):
            G = sample_uniform_model(3, 6, rng_for(seed))
            for spec in cg.all_jackets(3):
                F = cg.jacket_faces(G, spec)
                assert (4 * 6 - F) % 2 == 0

    def test_mean_jacket_faces_uniform_model(self):
        # each adjacent-pair product is uniform, so E[F] = (D+1) H_p
        rng = rng_for(6)
        D, p, n_draws = 3, 500, 1000
        spec = cg.canonical_jacket(D)
        vals = np.array(
            [cg.jacket_faces(sample_uniform_model(D, p, rng), spec)
             for _ in range(n_draws)],
            dtype=float,
        )
        target = (D + 1) * float(harmonic(p))
        se = math.sqrt((D + 1) * float(harmonic_var(p)) / n_draws)
        assert abs(vals.mean() - target) < 4 * se


class TestDegree:
    def test_melon_degree_zero_both_ways(self):
        for D in (2, 3, 4):
            G = melon(D)
            assert cg.gurau_degree_via_faces(G) == 0
            assert cg.gurau_degree_via_jackets(G) == 0

    def test_formula_root(self):
        # b_2 = D(D-1)p/2 + D forces degree zero
        G = melon(3)
        b2 = cg.bubble_census(G)[2]
        assert b2 == 3 * 2 * 1 // 2 + 3

    def test_d1_rejected(self):
        G = cg.build(1, 2, [Permutation.identity(2)] * 2)
        with pytest.raises(ValueError):
            cg.gurau_degree_via_faces(G)
        with pytest.raises(ValueError):
            cg.gurau_degree_via_jackets(G)

    def test_disconnected_rejected_by_jackets_not_faces(self):
        G = cg.build(2, 2, [Permutation.identity(2)] * 3)
        cg.gurau_degree_via_faces(G)  # formal evaluation allowed
        with pytest.raises(ValueError):
            cg.gurau_degree_via_jackets(G)

    @pytest.mark.parametrize("model", ["uniform", "quartic"])
    def test_degree_formulas_agree_on_connected(self, model):
        rng = rng_for(7)
        done = 0
        while done < 100:
            if model == "uniform":
                G = sample_uniform_model(3, 10, rng)
            else:
                G, _ = sample_quartic_model(3, 5, rng)
            if not cg.is_connected(G):
                continue
            done += 1
            via_f = cg.gurau_degree_via_faces(G)
            via_j = cg.gurau_degree_via_jackets(G)
            assert via_f == via_j
            # non-negative multiple of (D-1)!/2
            step = Fraction(math.factorial(2), 2)
            assert via_f >= 0 and (via_f / step).denominator == 1

    def test_degree_formulas_agree_at_d4(self):
        rng = rng_for(8)
        step = Fraction(math.factorial(3), 2)
        done = 0
        while done < 20:
            G = sample_uniform_model(4, 8, rng)
            if not cg.is_connected(G):
                continue
            done += 1
            via_f = cg.gurau_degree_via_faces(G)
            assert via_f == cg.gurau_degree_via_jackets(G)
            assert via_f >= 0 and (via_f / step).denominator == 1
