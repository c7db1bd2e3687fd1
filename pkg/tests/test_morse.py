import pytest

from todatopo import (
    IncidenceError,
    betti_one,
    build_chain_complex,
    cartan_matrix,
    conjectured_betti,
    generate_weyl_group,
    homology_of,
    incidence,
    index,
    is_abelian_unstable,
    is_transversal,
    label,
    morse_complex,
    morse_smale_edges,
    poincare_polynomial,
    principal_graph,
    toda_graph,
)
from todatopo.errors import ConfigError, CorruptComplexError
from todatopo.morse import stable_set, unstable_set


def s_word(W, i, j):
    """Consecutive product s_i s_(i+-1) ... s_j."""
    stepdir = 1 if j >= i else -1
    return W.from_word(range(i, j + stepdir, stepdir))


class TestLabels:
    def test_a5_worked_example(self):
        W = generate_weyl_group(cartan_matrix("A", 5))
        w = W.from_word([2, 1, 4, 3])
        assert label(w) == "0*0**"
        assert index(w) == 3

    def test_identity_all_stars(self, W_A3):
        assert label(W_A3.identity) == "***"
        assert index(W_A3.identity) == 3

    def test_longest_all_zeros(self, W_A3):
        assert label(W_A3.longest_element) == "000"
        assert index(W_A3.longest_element) == 0

    @pytest.mark.parametrize("fix", ["W_A2", "W_A3", "W_B2", "W_G2"])
    def test_unstable_stable_partition(self, fix, request):
        W = request.getfixturevalue(fix)
        full = frozenset(range(1, W.rank + 1))
        for w in W:
            assert unstable_set(w) | stable_set(w) == full
            assert not unstable_set(w) & stable_set(w)

    @pytest.mark.parametrize("fix", ["W_A2", "W_A3", "W_B3"])
    def test_index_counts_symmetric(self, fix, request):
        W = request.getfixturevalue(fix)
        counts = [0] * (W.rank + 1)
        for w in W:
            counts[index(w)] += 1
        assert counts == counts[::-1]


class TestTodaGraph:
    def test_a1(self, W_A1):
        g = toda_graph(W_A1)
        assert len(g.vertices) == 2
        assert len(g.edges) == 1
        a, b, i = g.edges[0]
        assert a is W_A1.identity and i == 1 and b.length == 1

    def test_a2_edge_count(self, W_A2):
        assert len(toda_graph(W_A2).edges) == 2 * 6 // 2

    @pytest.mark.parametrize("fix", ["W_A3", "W_B2", "W_G2"])
    def test_edge_count_formula_and_regularity(self, fix, request):
        W = request.getfixturevalue(fix)
        g = toda_graph(W)
        assert len(g.edges) == W.rank * len(W) // 2
        degree = {w: 0 for w in W}
        for a, b, _ in g.edges:
            assert a.length < b.length
            degree[a] += 1
            degree[b] += 1
        assert all(d == W.rank for d in degree.values())


class TestTransversality:
    def test_self_pairs_a2(self, W_A2):
        for a in W_A2:
            assert is_transversal(a, a)

    def test_e_to_s1_a2(self, W_A2):
        assert is_transversal(W_A2.identity, W_A2.simple_reflection(1))

    @pytest.mark.parametrize("fix", ["W_A2", "W_A3"])
    def test_index_increase_never_transversal(self, fix, request):
        W = request.getfixturevalue(fix)
        for a in W:
            for b in W:
                if index(a) < index(b):
                    assert not is_transversal(a, b)


class TestIncidence:
    @pytest.mark.parametrize("l", [2, 3, 4])
    def test_closed_form_first_family(self, l):
        W = generate_weyl_group(cartan_matrix("A", l))
        e = W.identity
        for i in range(1, l + 1):
            got = incidence(e, s_word(W, i, 1))
            assert got == 2 * (-1) ** (i + 1) * (1 - (i == l))

    @pytest.mark.parametrize("l", [1, 2, 3, 4])
    def test_closed_form_mirror_family(self, l):
        W = generate_weyl_group(cartan_matrix("A", l))
        e = W.identity
        for i in range(1, l + 1):
            got = incidence(e, s_word(W, l - i + 1, l))
            assert got == 2 * (-1) ** (i + 1) * (1 - (i == l))

    def test_flip_interpretation_fails_closed_form(self, W_A2):
        # the retained alternate sigma reading kills the top incidence;
        # this is why the value reading is the shipped default
        got = incidence(W_A2.identity, W_A2.simple_reflection(1), interpretation="flip")
        assert got == 0

    def test_values_in_allowed_set(self, W_A3):
        for e in morse_smale_edges(W_A3):
            assert e.incidence in (-2, 0, 2)

    def test_precondition_errors(self, W_A2):
        with pytest.raises(IncidenceError):
            incidence(W_A2.identity, W_A2.longest_element)  # index gap 2
        with pytest.raises(IncidenceError):
            incidence(W_A2.simple_reflection(1), W_A2.identity)  # index increases
        with pytest.raises(ConfigError):
            incidence(W_A2.identity, W_A2.simple_reflection(1), interpretation="bogus")


class TestMorseComplex:
    def test_a1(self, W_A1):
        cx = morse_complex(W_A1)
        assert cx.ranks() == (1, 1)
        assert cx.boundary(1).is_zero()
        assert [g.free_rank for g in homology_of(cx)] == [1, 1]

    def test_a2_boundary_and_gold_homology(self, W_A2):
        cx = morse_complex(W_A2)
        assert cx.ranks() == (1, 4, 1)
        col = [v for (_, _), v in sorted(cx.boundary(2).entries.items())]
        assert sorted(col) == [2, 2]
        assert cx.boundary(1).is_zero()
        groups = homology_of(cx)
        assert [(g.free_rank, g.torsion) for g in groups] == [(1, ()), (3, (2,)), (0, ())]

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_square_zero_and_matches_cellular(self, l):
        W = generate_weyl_group(cartan_matrix("A", l))
        mcx = morse_complex(W)
        mcx.validate()
        assert homology_of(mcx) == homology_of(build_chain_complex(W))

    def test_a3_h1_rank(self, W_A3):
        groups = homology_of(morse_complex(W_A3))
        assert groups[1].free_rank == 6

    def test_a4_edge_set_is_not_a_complex(self, W_A4):
        # beyond rank 3 the transversality conditions no longer pin down a
        # consistent boundary; the failure is reported, not hidden
        with pytest.raises(CorruptComplexError):
            morse_complex(W_A4)


class TestAbelianUnstable:
    def test_examples(self, W_A2):
        assert not is_abelian_unstable(W_A2.identity)
        assert is_abelian_unstable(W_A2.longest_element)
        assert is_abelian_unstable(W_A2.simple_reflection(1))

    def test_matches_nonadjacency(self, W_A3):
        C = W_A3.cartan
        for w in W_A3:
            u = sorted(unstable_set(w))
            expect = all(C.entry(i, j) == 0 for i in u for j in u if i != j)
            assert is_abelian_unstable(w) == expect


class TestPrincipalGraph:
    def test_l3_components(self):
        pg = principal_graph(3)
        assert len(pg.seeds) == 6
        dims = sorted(pg.seed_cube_dim(s) for s in pg.seeds)
        assert dims == [0, 0, 0, 1, 1, 2]

    def test_l1_single_vertex(self):
        pg = principal_graph(1)
        assert len(pg.seeds) == 1
        assert pg.counts() == (1,)

    def test_l2_counts(self):
        pg = principal_graph(2)
        assert len(pg.seeds) == 3
        assert pg.counts() == (4, 1)  # four grade-1 cells, one grade-2

    def test_seed_labels(self):
        pg = principal_graph(3)
        assert pg.seed_label((0, 0)) == "***"
        assert pg.seed_label((1, 0)) == "0**"
        assert pg.seed_label((1, 1)) == "0*0"

    @pytest.mark.parametrize("l", range(1, 7))
    def test_counts_match_polynomial(self, l):
        assert principal_graph(l).counts() == poincare_polynomial(l)

    @pytest.mark.parametrize("l", range(1, 7))
    def test_square_zero(self, l):
        pg = principal_graph(l)
        for k in range(2, l + 1):
            assert pg.boundary_matrix(k - 1).matmul(pg.boundary_matrix(k)).is_zero()

    def test_grade_one_cells_are_cycles(self):
        pg = principal_graph(4)
        for cell in pg.cells_of_grade(1):
            assert pg.boundary_coefficients(cell) == []


class TestBettiFormulas:
    def test_poincare_small(self):
        assert poincare_polynomial(2) == (4, 1)  # q + 4
        assert poincare_polynomial(3) == (11, 6, 1)  # q^2 + 6q + 11

    @pytest.mark.parametrize("l", range(1, 7))
    def test_constant_term(self, l):
        assert poincare_polynomial(l)[0] == 2 ** (l + 1) - (l + 2)

    @pytest.mark.parametrize("l,val", [(1, 1), (2, 3), (3, 6), (4, 10), (5, 15), (6, 21)])
    def test_betti_one(self, l, val):
        assert betti_one(l) == val

    @pytest.mark.parametrize("l", range(1, 7))
    def test_conjecture_reduces_to_betti_one(self, l):
        assert conjectured_betti(l, 1) == l * (l + 1) // 2

    def test_k_beyond_half(self):
        assert conjectured_betti(2, 2) == 0
        assert conjectured_betti(3, 3) == 0
        assert conjectured_betti(5, 4) == 0

    def test_a3_second_betti_matches_cellular(self, W_A3):
        groups = homology_of(build_chain_complex(W_A3))
        assert conjectured_betti(3, 2) == groups[2].free_rank

    def test_a2_second_betti_matches_cellular(self, W_A2):
        groups = homology_of(build_chain_complex(W_A2))
        assert conjectured_betti(2, 2) == groups[2].free_rank

    @pytest.mark.parametrize("fix,l", [("W_A2", 2), ("W_A3", 3), ("W_A4", 4)])
    def test_whisker_counts_against_enumeration(self, fix, l, request):
        from todatopo.morse import _count_exact_ascent_set

        W = request.getfixturevalue(fix)
        from collections import Counter

        by_set = Counter(tuple(sorted(unstable_set(w))) for w in W)
        for T, count in by_set.items():
            assert _count_exact_ascent_set(l, T) == count
