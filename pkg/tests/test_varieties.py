import random

import pytest

from kcorr.errors import (FieldMismatch, InvalidArity, NotWellDefined,
                          UnknownVariable)
from kcorr.exactalg import PrimeField, QQ, buchberger
from kcorr.varieties import (compose_maps, gm_power, identity_map,
                             make_morphism, make_variety, point, product,
                             product_morphism, split_projections, torus_arity)


@pytest.fixture
def qq_pool():
    pt = point(QQ)
    line = make_variety("A1", ["x"], [], QQ)
    two = make_variety("TwoPts", ["y"], ["y^2 - y"], QQ)
    return pt, line, two


def test_point_and_line(qq_pool):
    pt, line, _ = qq_pool
    assert pt.vars == () and pt.gb.gens == ()
    assert line.vars == ("x",)
    assert line.qelem("x^2 + 1") == line.qelem("x*x + 1")


def test_two_points_presentation(qq_pool):
    _, _, two = qq_pool
    assert [str(g) for g in two.gb.gens] == ["y^2 - y"]
    # confirmed against the basis computation on the raw generators
    assert two.gb == buchberger(two.ideal_gens, two.ambient)
    assert two.qelem("y^2") == two.qelem("y")


def test_stray_variable_rejected():
    with pytest.raises(UnknownVariable):
        make_variety("V", ["x"], ["x + z"], QQ)


def test_product_point_is_prefix_identity(qq_pool):
    pt, _, two = qq_pool
    p = product(pt, two)
    assert p.vars == ("TwoPts.y",)
    assert [str(g) for g in p.ideal_gens] == ["TwoPts.y^2 - TwoPts.y"]
    q = product(two, pt)
    assert q.vars == ("TwoPts.y",)


def test_product_of_lines(qq_pool):
    _, line, _ = qq_pool
    p = product(line, line)
    assert p.vars == ("A1.1.x", "A1.2.x")
    assert p.ideal_gens == ()


def test_product_two_points_squared(qq_pool):
    _, _, two = qq_pool
    p = product(two, two)
    assert len(p.ideal_gens) == 2
    assert len(p.gb.gens) == 2
    assert p.gb == buchberger(p.ideal_gens, p.ambient)


def test_product_strict_associativity(qq_pool):
    pt, line, two = qq_pool
    gm = gm_power(1, QQ)
    for a, b, c in [(line, two, gm), (line, line, line), (pt, two, pt)]:
        assert product(product(a, b), c) == product(a, product(b, c))


def test_product_field_mismatch(qq_pool):
    _, line, _ = qq_pool
    other = make_variety("A1", ["x"], [], PrimeField(5))
    with pytest.raises(FieldMismatch):
        product(line, other)


def test_morphism_validation(qq_pool):
    pt, line, two = qq_pool
    ident = identity_map(line)
    assert ident.images[0] == line.var("x")
    make_morphism(line, line, ["x^2"])  # nothing to check, empty ideal
    make_morphism(two, pt, [])
    make_morphism(pt, two, ["1"])
    make_morphism(pt, two, ["0"])
    with pytest.raises(NotWellDefined):
        make_morphism(pt, two, ["2"])


def test_morphism_composition_is_substitution(qq_pool):
    _, line, _ = qq_pool
    sq = make_morphism(line, line, ["x^2"])
    shift = make_morphism(line, line, ["x + 1"])
    comp = compose_maps(sq, shift)  # sq after shift: x -> (x+1)^2
    assert str(comp.images[0]) == "x^2 + 2*x + 1"
    assoc_l = compose_maps(compose_maps(sq, shift), sq)
    assoc_r = compose_maps(sq, compose_maps(shift, sq))
    assert assoc_l == assoc_r


def test_pullback_functoriality_random(qq_pool):
    _, line, two = qq_pool
    rng = random.Random(3)
    f = make_morphism(line, line, ["x^2 + 1"])
    g = make_morphism(line, line, ["x - 2"])
    comp = compose_maps(g, f)
    for _ in range(50):
        coeffs = [rng.randint(-3, 3) for _ in range(3)]
        q = line.qelem(f"{coeffs[0]} + {coeffs[1]}*x + {coeffs[2]}*x^2")
        assert comp.pull(q) == f.pull(g.pull(q))


def test_gm_power():
    gm1 = gm_power(1, QQ)
    assert gm1.vars == ("t1", "s1")
    assert [str(g) for g in gm1.gb.gens] == ["t1*s1 - 1"]
    gm2 = gm_power(2, QQ)
    assert len(gm2.vars) == 4 and len(gm2.ideal_gens) == 2
    # two reduction steps collapse the full product of coordinates
    assert gm2.qelem("t1*s1*t2*s2") == gm2.one()
    assert torus_arity(gm2) == 2
    assert torus_arity(gm1) == 1
    assert torus_arity(point(QQ)) is None
    with pytest.raises(InvalidArity):
        gm_power(0, QQ)


def test_split_projections_and_product_morphism(qq_pool):
    _, line, two = qq_pool
    prod = product(line, two)
    q_left, q_right = split_projections(prod, line, two)
    assert q_left.pull(line.qelem("x^2")) == prod.qelem("A1.x^2")
    assert q_right.pull(two.qelem("y")) == prod.qelem("TwoPts.y")
    f = make_morphism(line, line, ["x^2"])
    g = identity_map(two)
    pm = product_morphism(f, g)
    assert pm.source == prod and pm.target == prod
    assert str(pm.images[0]) == "A1.x^2"


def test_reserved_separator_rejected():
    with pytest.raises(InvalidArity):
        make_variety("bad.name", ["x"], [], QQ)
    with pytest.raises(InvalidArity):
        make_variety("V", ["bad.var"], [], QQ)
