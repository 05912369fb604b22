import pytest
from hypothesis import given, settings, strategies as st

from recplane.fields import PrimeField, RationalField
from recplane.groebner import (
    eliminate,
    groebner_ideal,
    ideal_equal,
    is_groebner,
    normal_form,
)
from recplane.polynomials import PolyRing, RingError

Q = RationalField()
F2 = PrimeField(2)


def t_ring(field, m):
    return PolyRing(field, tuple(f"t{i}" for i in range(m, 0, -1)))


def test_normal_form_divisibility():
    r = t_ring(Q, 2)
    assert normal_form(r.parse("t1*t2"), [r.parse("t1")]).is_zero()


def test_normal_form_single_reduction():
    r = PolyRing(Q, ("t1", "t2"))  # t1 greatest, so t1 - t2 rewrites t1 -> t2
    assert normal_form(r.parse("t1 + t2"), [r.parse("t1 - t2")]) == r.parse("2*t2")


def test_normal_form_empty_basis():
    r = t_ring(Q, 2)
    p = r.parse("t1 + t2")
    assert normal_form(p, []) == p


def test_groebner_monomial_ideal():
    r = t_ring(Q, 2)
    basis = groebner_ideal([r.parse("t1"), r.parse("t2")])
    assert basis == [r.parse("t1"), r.parse("t2")]


def test_groebner_linear_ideal_single_representative():
    r = t_ring(Q, 3)
    basis = groebner_ideal([r.parse("t1 - t2"), r.parse("t2 - t3")])
    reps = {str(normal_form(r.variable(v), basis)) for v in ("t1", "t2", "t3")}
    assert len(reps) == 1


def test_triangle_generator_is_its_own_groebner_basis():
    r = t_ring(F2, 3)
    gen = r.parse("t1*t2 + t1*t3 + t2*t3")
    assert is_groebner([gen])
    assert groebner_ideal([gen]) == [gen]


def test_eliminate_no_constraint():
    r = PolyRing(Q, ("x1", "t1"))
    assert eliminate([r.parse("x1 - t1")], {"x1"}) == []


def test_eliminate_equal_inverses():
    r = PolyRing(Q, ("x1", "t2", "t1"))
    out = eliminate([r.parse("x1*t1 - 1"), r.parse("x1*t2 - 1")], {"x1"})
    sub = PolyRing(Q, ("t2", "t1"))
    assert out == [sub.parse("t2 - t1")]


def test_eliminate_requires_greatest_variables():
    r = PolyRing(Q, ("x1", "t1"))
    with pytest.raises(RingError):
        eliminate([r.parse("x1*t1 - 1")], {"t1"})


def test_ideal_equal_unit_multiple():
    r = t_ring(Q, 1)
    assert ideal_equal([r.parse("t1")], [r.parse("2*t1")])


def test_ideal_equal_strict_containment():
    r = t_ring(Q, 1)
    assert not ideal_equal([r.parse("t1")], [r.parse("t1^2")])


def test_buchberger_postcondition():
    r = t_ring(Q, 3)
    basis = groebner_ideal(
        [r.parse("t1*t2 - t3"), r.parse("t2*t3 - t1"), r.parse("t1*t3 - t2")]
    )
    assert is_groebner(basis)


poly_data = st.lists(
    st.tuples(st.integers(-3, 3), st.tuples(*[st.integers(0, 2)] * 3)),
    max_size=5,
)


def _poly(r, data):
    d = {}
    for c, e in data:
        m = r.mono({f"t{i + 1}": x for i, x in enumerate(e) if x})
        d[m] = r.field.add(d.get(m, r.field.zero), r.field.from_int(c))
    return r.poly(d)


@settings(max_examples=40, deadline=None)
@given(poly_data, poly_data, poly_data)
def test_normal_form_additive_property(da, db, dbasis):
    r = t_ring(Q, 3)
    f, g = _poly(r, da), _poly(r, db)
    basis = [b for b in [_poly(r, dbasis)] if not b.is_zero()]
    lhs = normal_form(f + g, basis)
    rhs = normal_form(normal_form(f, basis) + normal_form(g, basis), basis)
    assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(poly_data, poly_data)
def test_groebner_membership_of_combinations(da, db):
    r = t_ring(F2, 3)
    a, b = _poly(r, da), _poly(r, db)
    gens = [g for g in (a, b) if not g.is_zero()]
    if not gens:
        return
    basis = groebner_ideal(gens)
    assert is_groebner(basis)
    combo = a * b + sum(gens[1:], gens[0])
    if combo.is_zero():
        return
    assert normal_form(combo, basis).is_zero()
