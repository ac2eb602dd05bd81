import random

import pytest
from hypothesis import given, strategies as st

from oracles import abelian_invariants_oracle, determinantal_invariant_factors, naive_invariant_factors

from luttinger.abelian import AbelianInvariants, IntMatrix, abelianization, relation_matrix, smith_normal_form
from luttinger.blocks import B_TEXT, C_TEXT
from luttinger.presentation import Presentation


def mul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def check_snf(rows, ncols):
    m = IntMatrix.from_rows(rows, ncols)
    d, u, v = smith_normal_form(m)
    assert mul(mul(u.to_rows(), rows), v.to_rows()) == d.to_rows() if rows else True
    assert abs(u.determinant()) == 1 and abs(v.determinant()) == 1
    assert d.is_diagonal()
    diag = d.diagonal()
    assert all(x >= 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]) if a) and all(
        b == 0 for a, b in zip(diag, diag[1:]) if a == 0
    )
    return diag


def test_zero_matrix():
    d, u, v = smith_normal_form(IntMatrix.zeros(2, 2))
    assert d.to_rows() == [[0, 0], [0, 0]]
    assert u == IntMatrix.identity(2) and v == IntMatrix.identity(2)


@pytest.mark.parametrize("rows, diag", [([[2, 4], [6, 8]], [2, 4]), ([[2, 0], [0, 3]], [1, 6])])
def test_small_examples(rows, diag):
    assert check_snf(rows, 2) == diag
    assert naive_invariant_factors(rows) == diag == determinantal_invariant_factors(rows)


def test_big_entries_stay_exact():
    rows = [[10**30, 3], [7, 10**25 + 1]]
    diag = check_snf(rows, 2)
    assert diag == determinantal_invariant_factors(rows)


def test_random_matrices_against_oracles():
    rng = random.Random(7)
    for _ in range(300):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        diag = check_snf(rows, c)
        assert diag == naive_invariant_factors(rows)


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
def test_snf_properties(rows):
    diag = check_snf(rows, len(rows[0]))
    assert diag == determinantal_invariant_factors(rows)


def test_abelianization_of_C_and_B():
    assert abelianization(Presentation.parse(C_TEXT)) == AbelianInvariants(3)
    assert abelianization(Presentation.parse(B_TEXT)) == AbelianInvariants(4)


def test_free_groups_have_no_relations():
    for n in range(5):
        assert abelianization(Presentation(tuple(f"g{i}" for i in range(n)))) == AbelianInvariants(n)


def test_abelianization_matches_oracle_on_relation_matrix():
    p = Presentation.parse("< a, b, c | a^4 b^2, b^6, [a,c] c^3 a^2 >")
    rows = relation_matrix(p).to_rows()
    rank, torsion = abelian_invariants_oracle(rows, p.rank)
    ab = abelianization(p)
    assert (ab.free_rank, list(ab.torsion)) == (rank, torsion)


@pytest.mark.parametrize(
    "text, ab",
    [("Z^2", AbelianInvariants(2)), ("Z/6", AbelianInvariants(0, (6,))), ("Z ⊕ Z/2 ⊕ Z/4", AbelianInvariants(1, (2, 4)))],
)
def test_text_and_json_forms(text, ab):
    assert AbelianInvariants.parse(text) == ab
    assert str(ab) == text
    assert AbelianInvariants.from_json(ab.to_json()) == ab


def test_json_shape():
    assert AbelianInvariants(2).to_json() == {"free_rank": 2, "torsion": []}


def test_from_orders_merges_coprime_parts():
    assert AbelianInvariants.from_orders([2, 3]) == AbelianInvariants(0, (6,))
    assert AbelianInvariants.parse("Z/2 + Z/3") == AbelianInvariants(0, (6,))
