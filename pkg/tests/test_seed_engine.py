"""Seed mutation: exchange relations, involutivity, Laurent phenomenon."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterflow.algebra import RatFunc, SemifieldTag, xvar, yvar
from clusterflow.matrices import ExchangeMatrix, a2_matrix, somos4_matrix
from clusterflow.seeds import CommutationError, Seed, apply_word, mutate_many, mutate_seed
from clusterflow.verify import bounded_word, random_skew_matrix


def rat_x(i, e=1):
    return RatFunc.variable(xvar(i), e)


def rat_y(i, e=1):
    return RatFunc.variable(yvar(i), e)


def expand(v):
    return v.expand() if hasattr(v, "expand") else v


class TestExchangeRelation:
    def test_a2_first_mutation_trivial(self):
        seed = mutate_seed(Seed.initial(a2_matrix(), SemifieldTag.TRIVIAL), 0)
        # b_{10} = -1 so x0' = (1 + x1) / x0
        assert expand(seed.x[0]) == (RatFunc.one() + rat_x(1)) / rat_x(0)
        assert expand(seed.x[1]) == rat_x(1)

    def test_somos_first_mutation_trivial(self):
        seed = mutate_seed(Seed.initial(somos4_matrix(), SemifieldTag.TRIVIAL), 0)
        want = (rat_x(1) * rat_x(3) + rat_x(2) ** 2) / rat_x(0)
        assert expand(seed.x[0]) == want

    def test_a2_y_mutation_universal(self):
        seed = mutate_seed(Seed.initial(a2_matrix(), SemifieldTag.UNIVERSAL), 0)
        assert expand(seed.y[0]) == rat_y(0, -1)
        # b_{01} = 1 > 0: y1' = y1 y0 (1 + y0)^{-1}
        assert expand(seed.y[1]) == rat_y(1) * rat_y(0) / (RatFunc.one() + rat_y(0))

    def test_a2_x_mutation_universal_has_coefficient(self):
        seed = mutate_seed(Seed.initial(a2_matrix(), SemifieldTag.UNIVERSAL), 0)
        # b_{10} = -1: x0' = (y0 + x1) / ((1 + y0) x0)
        want = (rat_y(0) + rat_x(1)) / ((RatFunc.one() + rat_y(0)) * rat_x(0))
        assert expand(seed.x[0]) == want

    def test_matrix_mutation_rule(self):
        B = somos4_matrix()
        Bm = B.mutate(0)
        # entries touching k flip sign; the rest gain sgn(b_ik)[b_ik b_kj]_+
        for j in range(1, 4):
            assert Bm.entry(0, j) == -B.entry(0, j)
        for i in range(1, 4):
            for j in range(1, 4):
                bik, bkj = B.entry(i, 0), B.entry(0, j)
                bump = (1 if bik > 0 else -1) * max(bik * bkj, 0)
                assert Bm.entry(i, j) == B.entry(i, j) + bump
        assert Bm.mutate(0).to_dense() == B.to_dense()


class TestInvolutivity:
    @given(st.integers(0, 10_000), st.integers(2, 4))
    @settings(max_examples=15, deadline=None)
    def test_double_mutation_is_identity(self, rng_seed, n):
        rng = random.Random(rng_seed)
        B = random_skew_matrix(rng, n)
        word = bounded_word(rng, B, 3)
        seed = apply_word(Seed.initial(B, SemifieldTag.UNIVERSAL, factored=True), word)
        for k in B.indices:
            back = mutate_seed(mutate_seed(seed, k), k)
            assert back.matrix == seed.matrix
            assert all(back.x[i] == seed.x[i] for i in B.indices)
            assert all(back.y[i] == seed.y[i] for i in B.indices)


class TestLaurent:
    @given(st.integers(0, 10_000))
    @settings(max_examples=10, deadline=None)
    def test_cluster_variables_are_laurent(self, rng_seed):
        rng = random.Random(rng_seed)
        B = random_skew_matrix(rng, 3)
        word = bounded_word(rng, B, 4)
        seed = apply_word(Seed.initial(B, SemifieldTag.TRIVIAL, factored=True), word)
        for i in B.indices:
            assert expand(seed.x[i]).den.is_one()


class TestCompositeMutation:
    def test_commuting_pair(self):
        # indices 0 and 3 are non-adjacent in the a2 + a2 direct sum
        dense = [
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, -1, 0],
        ]
        B = ExchangeMatrix.from_dense(dense)
        seed = Seed.initial(B, SemifieldTag.UNIVERSAL)
        both = mutate_many(seed, [0, 2])
        seq = mutate_seed(mutate_seed(seed, 0), 2)
        assert both.matrix == seq.matrix
        assert all(expand(both.x[i]) == expand(seq.x[i]) for i in B.indices)

    def test_adjacent_pair_rejected(self):
        seed = Seed.initial(a2_matrix(), SemifieldTag.UNIVERSAL)
        with pytest.raises(CommutationError):
            mutate_many(seed, [0, 1])


class TestSemifields:
    def test_tropical_y_stay_monomial(self):
        seed = Seed.initial(a2_matrix(), SemifieldTag.TROPICAL, factored=False)
        for k in (0, 1, 0, 1, 0):
            seed = mutate_seed(seed, k)
            # tropical coefficients are Laurent monomials in the initial y
            for i in seed.matrix.indices:
                assert seed.y[i].to_laurent().is_monomial()

    def test_trivial_matches_universal_at_y_one_up_to_constant(self):
        # setting all y to 1 turns each semifield sum 1 (+) y into 2 instead
        # of 1, so the universal value differs from the trivial one by a
        # positive rational constant only
        word = (0, 1, 0)
        triv = apply_word(Seed.initial(a2_matrix(), SemifieldTag.TRIVIAL), word)
        univ = apply_word(Seed.initial(a2_matrix(), SemifieldTag.UNIVERSAL), word)
        ones = {yvar(i): RatFunc.one() for i in (0, 1)}
        for i in (0, 1):
            ratio = expand(univ.x[i]).substitute(ones) / expand(triv.x[i])
            assert ratio.is_constant() and ratio.constant_value() > 0
