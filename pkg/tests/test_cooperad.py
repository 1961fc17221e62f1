import random
from fractions import Fraction

import pytest

from ramops.cooperad import (
    cooperad_axiom_check,
    tensor_multiply,
    tensor_normal_form,
    theta,
    theta_intertwines_differentials,
    theta_relation_kill,
)
from ramops.graphalg import (
    AlgebraElement,
    R_PRESENTATION,
    algebra_basis,
    enumerate_graph_monomials,
    monomial_bidegree,
)
from ramops.labels import STAR, standard_labels

P = R_PRESENTATION


def el(labels, items, mode="forest"):
    return AlgebraElement.from_words(labels, P, items, mode)


def tkey(a=(), b=()):
    return (tuple(a), tuple(b))


def test_theta_worked_table():
    # the six products of one a and one b on three points, split {1} | {2,3}
    I, J = (1,), (2, 3)
    a_star = tkey(a=[(1, STAR)])
    b_star = tkey(b=[(1, STAR)])
    unit = tkey()
    cases = [
        ((("a", 1, 2), ("b", 2, 3)), {(a_star, tkey(b=[(2, 3)])): Fraction(1)}),
        ((("a", 2, 3), ("b", 3, 1)), {(b_star, tkey(a=[(2, 3)])): Fraction(-1)}),
        ((("a", 3, 1), ("b", 1, 2)), {}),
        ((("b", 1, 2), ("a", 2, 3)), {(b_star, tkey(a=[(2, 3)])): Fraction(1)}),
        ((("b", 2, 3), ("a", 3, 1)), {(a_star, tkey(b=[(2, 3)])): Fraction(-1)}),
        ((("b", 3, 1), ("a", 1, 2)), {}),
    ]
    for word, expected in cases:
        x = el((1, 2, 3), [(1, word)])
        assert theta(P, I, J, x).terms == expected, word


def test_theta_on_unit_and_single_edges():
    I, J = (1, 2), (3, 4)
    one = AlgebraElement.unit((1, 2, 3, 4), P)
    out = theta(P, I, J, one)
    assert out.terms == {(tkey(), tkey()): Fraction(1)}
    both_left = el((1, 2, 3, 4), [(1, (("a", 1, 2),))])
    assert theta(P, I, J, both_left).terms == {(tkey(a=[(1, 2)]), tkey()): Fraction(1)}
    both_right = el((1, 2, 3, 4), [(1, (("b", 3, 4),))])
    assert theta(P, I, J, both_right).terms == {(tkey(), tkey(b=[(3, 4)])): Fraction(1)}
    straddle = el((1, 2, 3, 4), [(1, (("a", 2, 3),))])
    assert theta(P, I, J, straddle).terms == {(tkey(a=[(2, STAR)]), tkey()): Fraction(1)}


def test_theta_rejects_bad_splits():
    x = AlgebraElement.unit((1, 2, 3), P)
    with pytest.raises(ValueError):
        theta(P, (1, 2), (2, 3), x)
    with pytest.raises(ValueError):
        theta(P, (1,), (2,), x)


def test_theta_is_algebra_morphism():
    rng = random.Random(53)
    labels = standard_labels(4)
    I, J = (1, 3), (2, 4)
    monos = enumerate_graph_monomials(P, labels, "forest")
    comp_left = algebra_basis(P, (1, 3, STAR), "forest")
    comp_right = algebra_basis(P, (2, 4), "forest")
    from ramops.graphalg import element_multiply

    for _ in range(40):
        x = AlgebraElement(labels, P, {rng.choice(monos): Fraction(1)})
        y = AlgebraElement(labels, P, {rng.choice(monos): Fraction(1)})
        lhs = theta(P, I, J, element_multiply(x, y))
        raw = tensor_multiply(theta(P, I, J, x, normalize=False), theta(P, I, J, y, normalize=False))
        rhs = tensor_normal_form(raw, comp_left, comp_right)
        assert lhs.terms == rhs.terms


def test_theta_respects_bidegree():
    labels = standard_labels(4)
    I, J = (1, 2), (3, 4)
    for m in enumerate_graph_monomials(P, labels, "forest"):
        x = AlgebraElement(labels, P, {m: Fraction(1)})
        h, w = monomial_bidegree(m, P)
        for (ml, mr), _ in theta(P, I, J, x).terms.items():
            hl, wl = monomial_bidegree(ml, P)
            hr, wr = monomial_bidegree(mr, P)
            assert (hl + hr, wl + wr) == (h, w)


def test_theta_kills_all_relations_small_splits():
    for labels, I, J in (
        ((1, 2, 3), (1,), (2, 3)),
        ((1, 2, 3), (1, 2), (3,)),
        ((1, 2, 3, 4), (1, 2), (3, 4)),
        ((1, 2, 3, 4), (1,), (2, 3, 4)),
        ((1, 2, 3, 4), (1, 2, 3), (4,)),
    ):
        for v in theta_relation_kill(P, I, J):
            assert v["pass"], v


def test_theta_kills_the_twelve_term_relation_split_two_two():
    # the worked case: both b-ends in I, the tail pair in J
    words = []
    from ramops.graphalg import relation_words

    for inst in relation_words(P, "bab_sum", (1, 2, 3, 4)):
        words.append(inst)
    x = el((1, 2, 3, 4), words[0], mode="full")
    out = theta(P, (1, 2), (3, 4), x)
    assert out.is_zero()


def test_cooperad_axioms_on_generator_case():
    # a generator with one end in I and one in K maps to a [i,*] (x) 1 (x) 1
    I, J, K = (1,), (2,), (3,)
    verdicts = cooperad_axiom_check(P, I, J, K)
    assert all(v["pass"] for v in verdicts)
    x = el((1, 2, 3), [(1, (("a", 1, 3),))])
    first = theta(P, (1, 2), K, x, place="#")
    ((pair, c),) = list(first.terms.items())
    assert c == 1 and pair == (tkey(a=[(1, "#")]), tkey())
    second = theta(P, I, (2, "#"), AlgebraElement((1, 2, "#"), P, {pair[0]: Fraction(1)}), place=STAR)
    ((pair2, c2),) = list(second.terms.items())
    assert c2 == 1 and pair2 == (tkey(a=[(1, STAR)]), tkey())


def test_cooperad_axioms_all_splits_of_four():
    labels = standard_labels(4)
    splits = []
    for mask in range(3**4):
        blocks = ([], [], [])
        m = mask
        for item in labels:
            blocks[m % 3].append(item)
            m //= 3
        if all(blocks):
            splits.append(tuple(tuple(b) for b in blocks))
    rng = random.Random(9)
    for I, J, K in rng.sample(splits, 6):
        for v in cooperad_axiom_check(P, I, J, K):
            assert v["pass"], (I, J, K, v)


def test_theta_intertwines_both_differentials():
    for labels, I, J in (
        ((1, 2, 3), (1,), (2, 3)),
        ((1, 2, 3, 4), (1, 3), (2, 4)),
    ):
        for v in theta_intertwines_differentials(P, I, J):
            assert v["pass"], v
