from __future__ import annotations

import random

import pytest

from braidtower.permcore import EnumerationOverflow, Perm, PermGroup, PermParseError, centralizer, conjugacy_classes


def P(text: str, n: int) -> Perm:
    return Perm.parse(text, n)


def test_parse_images():
    assert P("(1 2 3)(4 5)", 5).images == (1, 2, 0, 4, 3)


def test_identity_prints_empty_cycle():
    assert P("()", 4).is_identity()
    assert str(Perm.identity(4)) == "()"


def test_print_round_trip():
    p = P("(1 4 9 8 5)(3 6 7)", 9)
    assert str(p) == "(1 4 9 8 5)(3 6 7)"
    assert P(str(p), 9) == p


def test_print_sorted_by_least_point():
    assert str(P("(4 5)(3 1 2)", 5)) == "(1 2 3)(4 5)"


@pytest.mark.parametrize("bad", ["(1 2 2)", "(1 6)", "(1 2", "1 2)", "(1 x)"])
def test_parse_errors(bad):
    with pytest.raises(PermParseError):
        P(bad, 5)


def test_multiplication_is_left_to_right():
    assert P("(1 2)", 3) * P("(2 3)", 3) == P("(1 3 2)", 3)


def test_inverse_and_order():
    p = P("(1 2 3)", 5)
    assert (p * p.inverse()).is_identity()
    assert (p * p * p).is_identity()
    assert p.order() == 3


def test_a5_order():
    assert PermGroup([P("(1 2 3 4 5)", 5), P("(1 2 3)", 5)]).order() == 60


def test_absolute_branch_cycles_generate_a9():
    gens = [P("(2 1 4)(3 7 8)(5 6 9)", 9), P("(4 5)(3 9)(1 2)(8 6)", 9), P("(1 4 9 8 5)(3 6 7)", 9)]
    assert PermGroup(gens).order() == 181440


def test_inner_branch_cycles_generate_wreath_product():
    gens = [
        P("(1 13 2)(3 7 17)(4 11 10)(5 15 9)(6 18 14)(8 12 16)", 18),
        P("(1 11)(2 10)(3 9)(4 14)(5 13)(6 17)(7 16)(8 15)(12 18)", 18),
        P("(2 11)(1 4 18 8 5)(10 13 9 17 14)(3 15 16)(12 6 7)", 18),
    ]
    assert PermGroup(gens).order() == 2**9 * 181440


def test_schreier_sims_matches_enumeration():
    rng = random.Random(1)
    for _ in range(30):
        gens = []
        for _ in range(rng.randint(1, 3)):
            pts = list(range(7))
            rng.shuffle(pts)
            gens.append(Perm(pts))
        G = PermGroup(gens)
        assert G.order() == len(G.elements())


def test_enumeration_cap():
    G = PermGroup([P("(1 2 3 4 5 6 7 8)", 8), P("(1 2)", 8)])
    with pytest.raises(EnumerationOverflow) as err:
        G.elements(cap=100)
    assert err.value.partial_bound >= 100


def test_a5_classes_and_centralizer():
    A5 = PermGroup([P("(1 2 3 4 5)", 5), P("(1 2 3)", 5)]).elements()
    assert sorted(len(c) for c in conjugacy_classes(A5)) == [1, 12, 12, 15, 20]
    assert len(centralizer(A5, P("(1 2 3 4 5)", 5))) == 5
    assert len(centralizer(A5, Perm.identity(5))) == 60
