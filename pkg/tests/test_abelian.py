import itertools
import random

import pytest

from pdds.abelian import (
    AbelianGroup,
    Homomorphism,
    check_bijection,
    enumerate_abelian_groups,
    kernel_member,
    molnar_k_set,
    phi_eval,
    smith_quotient,
    torus_periods,
)


def test_group_arithmetic_exhaustive_z2xz4():
    g = AbelianGroup((2, 4))
    assert g.order == 8 and g.rank == 2
    els = list(g.elements())
    assert len(els) == 8 and len(set(els)) == 8
    for a in els:
        assert g.add(a, g.neg(a)) == g.identity()
        assert g.element_from_rank(g.element_rank(a)) == a
        for b in els:
            assert g.add(a, b) == g.add(b, a)
    # ranks enumerate 0..7 in the same order as elements()
    assert [g.element_rank(a) for a in els] == list(range(8))


def test_scale_matches_repeated_addition():
    g = AbelianGroup((6,))
    x = (5,)
    acc = g.identity()
    for k in range(1, 20):
        acc = g.add(acc, x)
        assert g.scale(k, x) == acc
    assert g.scale(-1, x) == g.neg(x)
    assert g.scale(0, x) == g.identity()


def test_element_order():
    g = AbelianGroup((12,))
    assert g.element_order((1,)) == 12
    assert g.element_order((8,)) == 3
    assert g.element_order((0,)) == 1
    h = AbelianGroup((2, 4))
    assert h.element_order((1, 2)) == 2
    assert h.element_order((1, 1)) == 4


def test_canonical_invariant_factors():
    assert AbelianGroup((6, 4)).canonical() == AbelianGroup((2, 12))
    assert AbelianGroup((3, 2)).canonical() == AbelianGroup((6,))
    assert AbelianGroup((1, 5, 1)).canonical() == AbelianGroup((5,))
    # same multiset of primary components, different presentations
    a = AbelianGroup((8, 9, 5))
    b = AbelianGroup((5, 9, 8))
    assert a.canonical() == b.canonical() == AbelianGroup((360,))


def test_str_form():
    assert str(AbelianGroup((2, 4))) == "Z2 x Z4"
    assert str(AbelianGroup((38,))) == "Z38"


def test_enumerate_abelian_groups():
    assert [g.moduli for g in enumerate_abelian_groups(9)] == [(9,), (3, 3)]
    assert [g.moduli for g in enumerate_abelian_groups(12)] == [(12,), (2, 6)]
    assert len(enumerate_abelian_groups(5)) == 1
    assert len(enumerate_abelian_groups(16)) == 5
    # counts are multiplicative over prime powers
    assert len(enumerate_abelian_groups(72)) == 6   # 8 -> 3 partitions, 9 -> 2
    for g in enumerate_abelian_groups(72):
        assert g.order == 72


def test_homomorphism_eval_and_kernel():
    g = AbelianGroup((13,))
    hom = Homomorphism(g, ((1,), (5,)))
    assert phi_eval(hom, (0, 0)) == (0,)
    assert phi_eval(hom, (3, 2)) == (0,)
    assert phi_eval(hom, (-2, 3)) == (0,)
    assert phi_eval(hom, (1, 1)) == (6,)
    assert kernel_member(hom, (3, 2))
    assert not kernel_member(hom, (1, 0))


def test_homomorphism_json_round_trip():
    hom = Homomorphism(AbelianGroup((2, 4, 4)), ((1, 3, 3), (0, 1, 0), (0, 0, 1)))
    again = Homomorphism.from_json(hom.to_json())
    assert again == hom


def test_check_bijection_ok_on_lee_ball():
    # radius-2 Lee ball (13 cells) against Z13 with generator images 1, 5
    ball = sorted({(x, y) for x in range(-2, 3) for y in range(-2, 3)
                   if abs(x) + abs(y) <= 2})
    hom = Homomorphism(AbelianGroup((13,)), ((1,), (5,)))
    res = check_bijection(hom, ball)
    assert res.ok and res.status == "ok"


def test_check_bijection_collision_and_missing():
    hom = Homomorphism(AbelianGroup((4,)), ((1,),))
    collision = check_bijection(hom, [(0,), (4,), (1,), (2,)])
    assert not collision.ok
    assert collision.status == "collision"
    assert collision.collision == ((0,), (4,))
    short = check_bijection(hom, [(0,), (1,), (2,)])
    assert short.status == "not_surjective"
    assert short.missing == (3,)


def test_torus_periods():
    hom = Homomorphism(AbelianGroup((13,)), ((1,), (5,)))
    assert torus_periods(hom) == (13, 13)
    hom2 = Homomorphism(AbelianGroup((2, 4, 4)), ((1, 3, 3), (0, 1, 0), (0, 0, 1)))
    assert torus_periods(hom2) == (4, 4, 4)
    hom3 = Homomorphism(AbelianGroup((12,)), ((2,), (3,)))
    assert torus_periods(hom3) == (6, 4)


def test_molnar_k_set_cyclic():
    g = AbelianGroup((9,))
    k = molnar_k_set(g)
    assert k == ((1,), (2,), (3,), (4,))
    # one element of each +/- pair, never both
    chosen = set(k)
    for x in chosen:
        assert g.neg(x) not in chosen or g.neg(x) == x


def test_molnar_k_set_noncyclic_and_errors():
    g = AbelianGroup((3, 3))
    k = molnar_k_set(g)
    assert len(k) == 4
    seen = set(k) | {g.neg(x) for x in k}
    assert len(seen) == 8 and g.identity() not in seen
    with pytest.raises(ValueError):
        molnar_k_set(AbelianGroup((8,)))


def test_smith_quotient_pins():
    assert smith_quotient([(3, 2), (-2, 3)]) == AbelianGroup((13,))
    assert smith_quotient([(13, 0), (3, 2)]) == AbelianGroup((26,))
    assert smith_quotient([(2, 0), (0, 2)]) == AbelianGroup((2, 2))
    assert smith_quotient([(1, 0), (0, 7)]) == AbelianGroup((7,))


def test_smith_quotient_unimodular_invariance():
    rng = random.Random(4242)
    base = [(3, 2), (-2, 3)]
    for _ in range(60):
        rows = [list(r) for r in base]
        for _ in range(6):
            op = rng.randrange(3)
            i, j = rng.sample(range(2), 2)
            if op == 0:
                c = rng.randint(-2, 2)
                rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
            elif op == 1:
                rows[i], rows[j] = rows[j], rows[i]
            else:
                rows[i] = [-a for a in rows[i]]
        assert smith_quotient([tuple(r) for r in rows]) == AbelianGroup((13,))


def test_smith_quotient_singular():
    with pytest.raises(ValueError):
        smith_quotient([(1, 2), (2, 4)])


def test_smith_quotient_order_equals_abs_determinant():
    rng = random.Random(31337)
    for _ in range(80):
        m = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det == 0:
            continue
        q = smith_quotient([tuple(r) for r in m])
        assert q.order == abs(det)
