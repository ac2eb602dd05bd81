from hypothesis import HealthCheck, given, settings, strategies as st

from luttinger.abelian import abelianization
from luttinger.blocks import build_R
from luttinger.homs import count_homomorphisms
from luttinger.manifold import closed_pi1
from luttinger.presentation import Presentation
from luttinger.tietze import Effort, identity_certificate, tietze_simplify, word_trivial_under
from luttinger.words import free_reduce


def test_eliminates_killed_generator():
    p = Presentation.parse("< x, t | [t,x], x >")
    target, cert = tietze_simplify(p)
    assert target == Presentation.parse("< t | >")
    assert [target.format_word(w) for w in cert.generator_images] == ["1", "t"]
    assert cert.replay()


def test_R_simplifies_to_commuting_pair():
    target, cert = tietze_simplify(closed_pi1(build_R()))
    assert target == Presentation.parse("< t, s | [t,s] >")
    assert cert.replay()


def test_meridians_trivial_in_R_complement():
    r = build_R()
    _, cert = tietze_simplify(r.complement)
    assert word_trivial_under(cert, r.word("[x1,t]"))
    assert word_trivial_under(cert, r.word("[x2,s]"))


def test_trivial_under_simple_elimination():
    p = Presentation.parse("< x, t | x >")
    _, cert = tietze_simplify(p)
    assert word_trivial_under(cert, p.word("[x,t]"))


def test_identity_certificate_is_inconclusive_on_generators():
    p = Presentation.parse("< t, s | [t,s] >")
    cert = identity_certificate(p)
    assert cert.replay()
    assert not word_trivial_under(cert, p.word("t"))


def test_compose_chains_certificates():
    p = Presentation.parse("< a, b, c | a*b^-1, b*c^-1, c^5 >")
    mid, first = tietze_simplify(p, Effort(max_passes=1))
    _, second = tietze_simplify(mid)
    both = first.compose(second)
    assert both.source == p and both.target == second.target
    assert both.replay()
    assert both.target.rank == 1


def test_budget_exhaustion_is_flagged_not_raised():
    p = Presentation.parse("< a, b, c, d | a*b^-1, b*c^-1, c*d^-1, d^7 >")
    target, cert = tietze_simplify(p, Effort(max_passes=1))
    assert cert.exhausted
    assert cert.replay()
    assert target.rank < p.rank


def test_deterministic():
    p = closed_pi1(build_R())
    assert tietze_simplify(p)[0] == tietze_simplify(p)[0]


presentations = st.integers(1, 4).flatmap(
    lambda n: st.lists(
        st.lists(st.tuples(st.integers(0, n - 1), st.sampled_from([1, -1])), max_size=7), max_size=4
    ).map(lambda rels: Presentation(tuple("abcd"[:n]), tuple(free_reduce(r, n) for r in rels)))
)


@settings(max_examples=150, suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(presentations)
def test_simplification_preserves_invariants(p):
    target, cert = tietze_simplify(p)
    assert cert.replay()
    assert abelianization(target) == abelianization(p)
    for g in ("S3", "S4"):
        assert count_homomorphisms(target, g) == count_homomorphisms(p, g)
