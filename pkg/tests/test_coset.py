import pytest

from coset_corpus import CORPUS
from oracles import closure_order, evaluate, identity_perm

from luttinger.blocks import build_Q
from luttinger.coset import EnumerationResult, todd_coxeter
from luttinger.manifold import closed_pi1
from luttinger.presentation import Presentation


def oracle_order(text, perms):
    """Order of the permutation group, after checking the images satisfy every relator."""
    p = Presentation.parse(text)
    ident = identity_perm(len(perms[0]))
    for r in p.relators:
        assert evaluate(r.letters, perms, ident) == ident, f"{text}: images break {p.format_word(r)}"
    return closure_order(perms)


def table_group_order(res: EnumerationResult, ngens: int) -> int:
    """Order of the group generated by the table's regular action."""
    perms = []
    for g in range(ngens):
        fwd = tuple(row[2 * g] for row in res.table)
        back = tuple(row[2 * g + 1] for row in res.table)
        assert sorted(fwd) == list(range(len(fwd)))
        assert all(back[fwd[c]] == c for c in range(len(fwd)))
        perms.append(fwd)
    return closure_order(perms) if perms else 1


def test_corpus_size():
    assert len(CORPUS) == 20


@pytest.mark.parametrize("text, perms, order", CORPUS, ids=[c[0] for c in CORPUS])
def test_corpus_against_cayley_oracle(text, perms, order):
    assert oracle_order(text, perms) == order
    p = Presentation.parse(text)
    res = todd_coxeter(p, 1000, check=True)
    assert res == todd_coxeter(p, 1000)
    assert res.finite and res.order == order
    assert table_group_order(res, p.rank) == order


@pytest.mark.parametrize("text, perms, order", CORPUS[:8], ids=[c[0] for c in CORPUS[:8]])
def test_result_independent_of_cap(text, perms, order):
    p = Presentation.parse(text)
    res = todd_coxeter(p, 50_000)
    for cap in (res.work, res.work + 1, 10 * res.work):
        again = todd_coxeter(p, cap)
        assert again.order == order and again.work == res.work


def test_examples():
    assert str(todd_coxeter(Presentation.parse("< a | a^5 >"), 100)) == "Finite(5)"
    assert todd_coxeter(Presentation.parse("< a, b | a^2, b^2, (a*b)^3 >"), 1000).order == 6
    q = closed_pi1(build_Q(1, 1, 1))
    assert todd_coxeter(q, 10_000).order == 1


def test_infinite_groups_exceed():
    for text in ("< a | >", "< a, b | [a,b] >", "< t, s | [t,s], t^2 >"):
        res = todd_coxeter(Presentation.parse(text), 200)
        assert not res.finite and str(res) == "Exceeded(200)"
        assert res.to_json() == {"outcome": "exceeded", "cap": 200}


def test_json_form():
    res = todd_coxeter(Presentation.parse("< a, b | a^2, b^2, (a*b)^3 >"), 1000)
    assert res.to_json() == {"outcome": "finite", "order": 6, "work": res.work}


def test_bad_cap():
    with pytest.raises(ValueError):
        todd_coxeter(Presentation.parse("< a | a^2 >"), 0)


def test_env_default(monkeypatch):
    monkeypatch.setenv("LUTTINGER_MAX_COSETS", "50")
    res = todd_coxeter(Presentation.parse("< a | a^100 >"))
    assert res.cap == 50 and not res.finite
