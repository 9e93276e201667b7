"""Shared brute-force references and generators for the test suite.

Everything here recomputes results from first principles with no shortcuts,
so package code can be checked against an implementation too simple to be
wrong.
"""

from __future__ import annotations

import itertools
import random

from zng.hypergraph import RPartiteHypergraph


def naive_count(H: RPartiteHypergraph, s_list: tuple[int, ...]) -> int:
    """All-subsets ordered pattern counter; no neighborhood tricks."""
    edge_set = set(H.edges)
    total = 0
    for subsets in itertools.product(
        *(
            itertools.combinations(range(m), s)
            for m, s in zip(H.part_sizes, s_list)
        )
    ):
        if all(e in edge_set for e in itertools.product(*subsets)):
            total += 1
    return total


def random_graph(
    rng: random.Random, part_sizes: tuple[int, ...], density: float
) -> RPartiteHypergraph:
    """Each potential edge kept independently with the given probability."""
    edges = [
        cell
        for cell in itertools.product(*(range(m) for m in part_sizes))
        if rng.random() < density
    ]
    return RPartiteHypergraph(part_sizes, edges)


def check_field_axioms(field) -> None:
    """Exhaustive commutative-field axioms via integer index tables.

    Builds q x q add/mul tables indexed by element position, then checks
    associativity, commutativity, distributivity, identities, and inverses
    over every triple with plain list lookups.
    """
    elems = field.elements()
    q = len(elems)
    index = {e: i for i, e in enumerate(elems)}
    add = [[index[field.add(a, b)] for b in elems] for a in elems]
    mul = [[index[field.mul(a, b)] for b in elems] for a in elems]
    zero = index[field.zero]
    one = index[field.one]
    assert zero != one
    rng = range(q)
    for a in rng:
        assert add[a][zero] == a
        assert mul[a][one] == a
        assert mul[a][zero] == zero
        for b in rng:
            assert add[a][b] == add[b][a]
            assert mul[a][b] == mul[b][a]
    # additive and multiplicative inverses exist and match the methods
    for a in elems:
        assert field.add(a, field.neg(a)) == field.zero
        if a != field.zero:
            assert field.mul(a, field.inv(a)) == field.one
    for a in rng:
        row_a_add = add[a]
        row_a_mul = mul[a]
        for b in rng:
            ab_add = row_a_add[b]
            ab_mul = row_a_mul[b]
            add_b = add[b]
            mul_b = mul[b]
            for c in rng:
                assert add[ab_add][c] == row_a_add[add_b[c]]
                assert mul[ab_mul][c] == row_a_mul[mul_b[c]]
                assert row_a_mul[add_b[c]] == add[ab_mul][mul[a][c]]
