from fractions import Fraction

import pytest

from qtoledo.mgnclasses import (
    H2Class,
    canonical_class,
    canonical_separating_label,
    class_from_json,
    delta_total,
    elliptic_pullback,
    intersect,
    psi_sum,
    reduce_class,
    separating_labels,
    uniformization_check,
)

F = Fraction


def test_separating_labels():
    assert separating_labels(0, 4) == [("delta", 0, (1, 2)), ("delta", 0, (1, 3)), ("delta", 0, (1, 4))]
    assert separating_labels(1, 1) == []
    assert ("delta", 1, ()) in separating_labels(2, 1)
    assert len(separating_labels(0, 5)) == 10


def test_canonical_label_identifies_complements():
    a = canonical_separating_label(2, 0, 1, ())
    b = canonical_separating_label(2, 0, 1, ())
    assert a == b
    assert canonical_separating_label(1, 2, 1, ()) == canonical_separating_label(1, 2, 0, (1, 2))
    with pytest.raises(ValueError):
        canonical_separating_label(1, 2, 0, (1,))


def test_invalid_label_rejected():
    with pytest.raises(ValueError):
        H2Class(1, 1, {("delta", 1, ()): F(1)})


def test_linear_structure():
    x = H2Class(1, 2, {("psi", 1): F(1, 2)})
    y = H2Class(1, 2, {("psi", 1): F(1, 2), ("delta_irr",): F(3)})
    assert (x + y).coefficient("psi", 1) == 1
    assert (x - x).is_zero()
    assert x.scale(4).coefficient("psi", 1) == 2


def test_kappa_basis_round_trip():
    x = H2Class(2, 1, {("kappa1_tilde",): F(5), ("psi", 1): F(1)})
    y = x.in_kappa_basis()
    assert y.coefficient("kappa1") == 5 and y.coefficient("psi", 1) == -4
    assert y.in_kappa_tilde_basis() == x


def test_canonical_class_values():
    # level 1 reduces to (13/12) kt - (11/12) delta + psi
    k1 = canonical_class(1, 2, 1)
    assert k1.coefficient("kappa1_tilde") == F(13, 12)
    assert k1.coefficient("delta_irr") == F(-11, 12)
    # the level-5 twist shifts every boundary coefficient by 4/5
    k5 = canonical_class(5, 2, 1)
    diff = k5 - k1
    assert diff.coefficient("delta_irr") == F(4, 5)
    assert diff.coefficient("delta", 1, ()) == F(4, 5)
    assert diff.coefficient("psi", 1) == 0
    # large level: boundary coefficient approaches 1/12
    k_large = canonical_class(12000, 2, 1)
    assert abs(k_large.coefficient("delta_irr") - F(1, 12)) == F(1, 12000)


def test_canonical_class_0_5():
    reduced = reduce_class(canonical_class(5, 0, 5))
    assert reduced.coefficient("psi_total") == F(1, 5)


def test_elliptic_pullback_values():
    assert reduce_class(elliptic_pullback(1, 2)).coeffs == {
        ("delta_irr",): F(1, 20),
        canonical_separating_label(1, 2, 1, ()): F(3, 5),
    }
    e13 = reduce_class(elliptic_pullback(1, 3))
    assert e13.coefficient("delta_irr") == F(2, 15)
    assert e13.coeffs[canonical_separating_label(1, 3, 1, ())] == F(8, 5)
    for i in (1, 2, 3):
        assert e13.coeffs[canonical_separating_label(1, 3, 1, (i,))] == F(4, 5)
    e21 = reduce_class(elliptic_pullback(2, 1))
    assert e21.coefficient("psi", 1) == 1
    assert e21.coefficient("delta_irr") == F(1, 10)
    assert e21.coeffs[canonical_separating_label(2, 1, 1, ())] == F(6, 5)
    with pytest.raises(ValueError):
        elliptic_pullback(2, 0)


def test_reduce_is_linear_and_idempotent():
    x = canonical_class(5, 1, 2)
    y = H2Class(1, 2, {("psi", 1): F(1), ("psi", 2): F(2)})
    rx, ry = reduce_class(x), reduce_class(y)
    assert reduce_class(x + y) == rx + ry
    assert reduce_class(rx) == rx
    assert reduce_class(reduce_class(y)) == reduce_class(y)


def test_reduce_0_5_relation_consistency():
    # expanding kappa1 via kappa1 = delta/2 and delta = (2/3) psi agree
    kappa = H2Class(0, 5, {("kappa1",): F(1)})
    via_delta = delta_total(0, 5).scale(F(1, 2))
    assert reduce_class(kappa) == reduce_class(via_delta)
    psi = psi_sum(0, 5)
    assert reduce_class(delta_total(0, 5)) == reduce_class(psi.scale(F(2, 3)))


def test_reduce_1_1():
    cls = H2Class(1, 1, {("kappa1",): F(1)})
    assert reduce_class(cls).coefficient("psi", 1) == 1
    assert reduce_class(H2Class(1, 1, {("delta_irr",): F(1)})).coefficient("psi", 1) == 12
    assert reduce_class(H2Class(1, 1, {("kappa1_tilde",): F(7)})).is_zero()


def test_reduce_unsupported():
    with pytest.raises(ValueError):
        reduce_class(H2Class(3, 2, {("psi", 1): F(1)}))


def test_intersections():
    psi = psi_sum(0, 5)
    assert intersect(psi, psi) == 45
    tail = H2Class(1, 2, {canonical_separating_label(1, 2, 1, ()): F(1)})
    irr = H2Class(1, 2, {("delta_irr",): F(1)})
    assert intersect(tail, tail) == F(-1, 24)
    assert intersect(tail, irr) == F(1, 2)
    assert intersect(irr, irr) == 0
    with pytest.raises(ValueError):
        intersect(psi_sum(1, 3), psi_sum(1, 3))


def test_json_round_trip():
    cls = H2Class(1, 2, {("psi", 1): F(2, 3), ("delta_irr",): F(-1, 5),
                         canonical_separating_label(1, 2, 1, ()): F(7)})
    assert class_from_json(cls.to_json()) == cls


@pytest.mark.parametrize("case", [(0, 5), (1, 2), (1, 3), (2, 1)])
def test_uniformization_checks(case):
    report = uniformization_check(case)
    assert report["passed"], report["checks"]
