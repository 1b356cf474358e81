"""Graph core: containment, coloring, partitions, canonical forms."""

import math
import random
from itertools import combinations, permutations

import pytest

from graphlimitlab import (
    BudgetError,
    ForbiddenFamily,
    SimpleGraph,
    ValidationError,
    all_pairs,
    automorphism_count,
    canonical_form,
    canonical_key,
    chromatic_number,
    coloring_number,
    contains_subgraph,
    crs_member,
    graph_from_mask,
    is_family_free,
    isomorphic,
)
from graphlimitlab.graphs import PartKind


def brute_contains(G, F):
    """Oracle: exhaustive injective map search."""
    if F.n > G.n:
        return False
    for images in permutations(range(G.n), F.n):
        if all(G.has_edge(images[a], images[b]) for a, b in F.edges):
            return True
    return False


def random_graph(n, p, rng):
    return SimpleGraph.from_edges(
        n, [e for e in combinations(range(n), 2) if rng.random() < p]
    )


class TestSimpleGraph:
    def test_validation(self):
        with pytest.raises(ValidationError):
            SimpleGraph(2, frozenset({(0, 0)}))
        with pytest.raises(ValidationError):
            SimpleGraph(2, frozenset({(0, 2)}))
        with pytest.raises(ValidationError):
            SimpleGraph(-1, frozenset())

    def test_from_edges_normalizes(self):
        G = SimpleGraph.from_edges(3, [(2, 0), (0, 2), (1, 2)])
        assert G.edges == frozenset({(0, 2), (1, 2)})

    def test_constructors(self):
        assert SimpleGraph.complete(4).edge_count == 6
        assert SimpleGraph.cycle(5).edge_count == 5
        assert SimpleGraph.path(4).edge_count == 3
        assert SimpleGraph.petersen().degrees() == [3] * 10


class TestContainment:
    def test_c4_has_no_triangle(self):
        assert not contains_subgraph(SimpleGraph.cycle(4), SimpleGraph.complete(3))

    def test_k3_contains_itself(self):
        assert contains_subgraph(SimpleGraph.complete(3), SimpleGraph.complete(3))

    def test_c5_contains_p4(self):
        C5, P4 = SimpleGraph.cycle(5), SimpleGraph.path(4)
        assert brute_contains(C5, P4)  # oracle agrees
        assert contains_subgraph(C5, P4)

    def test_against_bruteforce_on_random_pairs(self):
        rng = random.Random(99)
        for _ in range(150):
            G = random_graph(rng.randint(1, 7), rng.random(), rng)
            F = random_graph(rng.randint(1, 4), rng.random(), rng)
            assert contains_subgraph(G, F) == brute_contains(G, F)

    def test_monotone_under_edge_addition(self):
        rng = random.Random(5)
        for _ in range(100):
            G = random_graph(8, 0.3, rng)
            F = random_graph(rng.randint(2, 4), 0.6, rng)
            if not contains_subgraph(G, F):
                continue
            extra = [e for e in combinations(range(8), 2) if e not in G.edges]
            if extra:
                G2 = SimpleGraph(8, G.edges | {extra[0]})
                assert contains_subgraph(G2, F)

    def test_empty_pattern_always_contained(self):
        assert contains_subgraph(SimpleGraph.empty(3), SimpleGraph.empty(0))
        assert contains_subgraph(SimpleGraph.empty(3), SimpleGraph.empty(3))
        assert not contains_subgraph(SimpleGraph.empty(3), SimpleGraph.empty(4))


class TestFamilies:
    def test_empty_family_frees_everything(self):
        fam = ForbiddenFamily()
        assert is_family_free(SimpleGraph.complete(5), fam)
        assert coloring_number(fam) == math.inf

    def test_k4_not_triangle_free(self):
        fam = ForbiddenFamily([SimpleGraph.complete(3)])
        assert not is_family_free(SimpleGraph.complete(4), fam)

    def test_petersen_triangle_free(self):
        fam = ForbiddenFamily([SimpleGraph.complete(3)])
        assert is_family_free(SimpleGraph.petersen(), fam)

    def test_members_deduplicated_up_to_isomorphism(self):
        K3 = SimpleGraph.complete(3)
        relabeled = SimpleGraph.from_edges(3, [(1, 2), (0, 2), (0, 1)])
        fam = ForbiddenFamily([K3, relabeled, SimpleGraph.cycle(3)])
        assert len(fam) == 1

    def test_closed_under_edge_deletion(self):
        fam = ForbiddenFamily([SimpleGraph.complete(3), SimpleGraph.cycle(5)])
        rng = random.Random(17)
        found = 0
        while found < 40:
            G = random_graph(7, rng.random(), rng)
            if not is_family_free(G, fam) or not G.edges:
                continue
            found += 1
            for e in G.edges:
                assert is_family_free(SimpleGraph(7, G.edges - {e}), fam)

    def test_coloring_number(self):
        assert coloring_number(ForbiddenFamily([SimpleGraph.complete(3)])) == 3
        fam = ForbiddenFamily([SimpleGraph.cycle(5), SimpleGraph.complete(4)])
        assert coloring_number(fam) == 3


class TestChromaticNumber:
    def test_known_values(self):
        assert chromatic_number(SimpleGraph.complete(4)) == 4
        assert chromatic_number(SimpleGraph.empty(5)) == 1
        assert chromatic_number(SimpleGraph.empty(0)) == 0
        assert chromatic_number(SimpleGraph.petersen()) == 3
        assert chromatic_number(SimpleGraph.complete_bipartite(3, 4)) == 2

    def test_c5_needs_three_colors(self):
        C5 = SimpleGraph.cycle(5)
        # oracle: no proper 2-coloring exists, some 3-coloring does
        def proper(coloring):
            return all(coloring[i] != coloring[j] for i, j in C5.edges)
        two = any(proper([(m >> v) & 1 for v in range(5)]) for m in range(32))
        three = any(
            proper([(m // 3 ** v) % 3 for v in range(5)]) for m in range(3 ** 5)
        )
        assert not two and three
        assert chromatic_number(C5) == 3

    def test_against_bruteforce(self):
        rng = random.Random(31)

        def brute_chi(G):
            if G.n == 0:
                return 0
            for k in range(1, G.n + 1):
                for m in range(k ** G.n):
                    coloring = [(m // k ** v) % k for v in range(G.n)]
                    if all(coloring[i] != coloring[j] for i, j in G.edges):
                        return k
            return G.n

        for _ in range(60):
            G = random_graph(rng.randint(1, 6), rng.random(), rng)
            assert chromatic_number(G) == brute_chi(G)

    def test_budget(self):
        with pytest.raises(BudgetError):
            chromatic_number(SimpleGraph.empty(17))


class TestCrsMember:
    def test_bipartite_in_c20(self):
        G = SimpleGraph.complete_bipartite(3, 3)
        witness = crs_member(G, 2, 0)
        assert witness is not None and witness.verify(G, 2, 0)

    def test_k5_is_one_clique(self):
        G = SimpleGraph.complete(5)
        witness = crs_member(G, 1, 1)
        assert witness is not None and witness.verify(G, 1, 1)
        assert all(kind is PartKind.CLIQUE for _, kind in witness.assignment.values())

    def test_c5_not_in_c21(self):
        C5 = SimpleGraph.cycle(5)
        # oracle: all 2^5 assignments to (clique, independent) fail
        for mask in range(32):
            clique = [v for v in range(5) if mask >> v & 1]
            independent = [v for v in range(5) if not mask >> v & 1]
            ok = all(C5.has_edge(a, b) for a, b in combinations(clique, 2))
            ok = ok and not any(
                C5.has_edge(a, b) for a, b in combinations(independent, 2)
            )
            assert not ok
        assert crs_member(C5, 2, 1) is None

    def test_c_r0_equals_r_colorability(self):
        rng = random.Random(23)
        for _ in range(50):
            G = random_graph(rng.randint(1, 8), rng.random(), rng)
            chi = chromatic_number(G)
            for r in range(1, 5):
                assert (crs_member(G, r, 0) is not None) == (chi <= r)

    def test_validation_and_budget(self):
        with pytest.raises(ValidationError):
            crs_member(SimpleGraph.empty(2), 0, 0)
        with pytest.raises(ValidationError):
            crs_member(SimpleGraph.empty(2), 2, 3)
        with pytest.raises(BudgetError):
            crs_member(SimpleGraph.empty(15), 2, 0)


class TestCanonicalForm:
    def test_invariant_under_relabeling(self):
        for G in (SimpleGraph.path(4), SimpleGraph.cycle(5),
                  SimpleGraph.complete_bipartite(2, 3)):
            keys = {
                canonical_key(G.relabeled(list(p)))
                for p in permutations(range(G.n))
            }
            assert len(keys) == 1

    def test_distinguishes_nonisomorphic(self):
        assert canonical_key(SimpleGraph.complete(3)) != canonical_key(
            SimpleGraph.path(3))
        assert not isomorphic(SimpleGraph.cycle(6),
                              SimpleGraph.complete_bipartite(3, 3))
        assert isomorphic(SimpleGraph.cycle(4),
                          SimpleGraph.complete_bipartite(2, 2))

    def test_automorphism_counts(self):
        def brute_aut(G):
            count = 0
            for p in permutations(range(G.n)):
                if all(
                    G.has_edge(p[i], p[j]) == G.has_edge(i, j)
                    for i, j in combinations(range(G.n), 2)
                ):
                    count += 1
            return count

        assert automorphism_count(SimpleGraph.cycle(5)) == 10
        assert brute_aut(SimpleGraph.cycle(5)) == 10
        for G in (SimpleGraph.empty(5), SimpleGraph.complete(4),
                  SimpleGraph.path(5), SimpleGraph.complete_bipartite(3, 3),
                  SimpleGraph.cycle(7)):
            assert automorphism_count(G) == brute_aut(G)
        assert automorphism_count(SimpleGraph.petersen()) == 120

    def test_canonical_form_returns_both(self):
        edges, aut = canonical_form(SimpleGraph.cycle(5))
        assert len(edges) == 5 and aut == 10

    def test_orbit_stabilizer_partition_of_labeled_graphs(self):
        # sum of orbit sizes n!/|Aut| over all classes covers every graph
        for n in range(1, 6):
            pairs = all_pairs(n)
            classes = {}
            for mask in range(1 << len(pairs)):
                G = graph_from_mask(n, mask, pairs)
                classes.setdefault(canonical_key(G), G)
            total = sum(
                math.factorial(n) // automorphism_count(G)
                for G in classes.values()
            )
            assert total == 2 ** (n * (n - 1) // 2)

    def test_budget(self):
        with pytest.raises(BudgetError):
            canonical_key(SimpleGraph.empty(13))
