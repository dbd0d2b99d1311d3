import random
from fractions import Fraction

import pytest

from oracles import dense_kron
from kcorr.corrcat import (compose_vertical, direct_sum, graph_object,
                           identity_morphism, identity_object,
                           make_corr_morphism, make_correspondence,
                           zero_morphism, zero_object, verify_iso)
from kcorr.errors import AmbientMismatch, ShapeError
from kcorr.exactalg import Matrix, PrimeField, QElem, QQ, scalar_value
from kcorr.pairing import (FlattenMap, compose_morphisms, compose_objects,
                           flatten_blocks, strict_associativity_check,
                           sum_split_certificate_inner,
                           sum_split_certificate_outer)
from kcorr.randomgen import (GenBounds, random_morphism_from, random_object,
                             derive_seed)
from kcorr.varieties import (compose_maps, gm_power, make_morphism,
                             make_variety, point)

BOUNDS = GenBounds(max_n=2, max_deg=1, max_elementary=1, zero_weight=0.0)


@pytest.fixture
def pools():
    out = {}
    for field in (QQ, PrimeField(5)):
        pt = point(field)
        line = make_variety("A1", ["x"], [], field)
        two = make_variety("TwoPts", ["y"], ["y^2 - y"], field)
        gm = gm_power(1, field)
        out[field] = (pt, line, two, gm)
    return out


def _scalar_matrix(basis, rows):
    field = basis.ambient.field
    return Matrix(basis, [[QElem.const(basis, field.from_int(v)) for v in r]
                          for r in rows])


def test_flatten_map_indexing():
    fm = FlattenMap(inner=2, outer=3)
    assert fm.size == 6
    assert fm.flat(0, 1) == 1
    assert fm.flat(2, 0) == 4
    assert fm.split(5) == (2, 1)


def test_flatten_identity_and_single_block(pools):
    pt = pools[QQ][0]
    b = pt.gb
    blk = _scalar_matrix(b, [[1, 2], [3, 4]])
    assert flatten_blocks([[blk]]) == blk
    ident = Matrix.identity(b, 2)
    zero = Matrix.zeros(b, 2, 2)
    assert flatten_blocks([[ident, zero], [zero, ident]]) == Matrix.identity(b, 4)


def test_flatten_is_multiplicative(pools):
    pt = pools[QQ][0]
    b = pt.gb
    rng = random.Random(13)

    def rand_block():
        return _scalar_matrix(b, [[rng.randint(-3, 3) for _ in range(2)]
                                  for _ in range(2)])

    for _ in range(25):
        blocks_a = [[rand_block() for _ in range(2)] for _ in range(2)]
        blocks_b = [[rand_block() for _ in range(2)] for _ in range(2)]
        prod_blocks = [
            [blocks_a[i][0] * blocks_b[0][j] + blocks_a[i][1] * blocks_b[1][j]
             for j in range(2)]
            for i in range(2)
        ]
        assert flatten_blocks(prod_blocks) == \
            flatten_blocks(blocks_a) * flatten_blocks(blocks_b)


def test_flatten_rejects_ragged(pools):
    pt = pools[QQ][0]
    b = pt.gb
    with pytest.raises(ShapeError):
        flatten_blocks([[Matrix.identity(b, 2), Matrix.identity(b, 1)],
                        [Matrix.identity(b, 1), Matrix.identity(b, 1)]])


def test_unit_laws_exact(pools):
    for field, (pt, line, two, gm) in pools.items():
        rng = random.Random(derive_seed("units", field.name))
        for x, y in [(pt, two), (line, two), (line, gm), (pt, pt)]:
            obj = random_object(x, y, rng=rng, bounds=BOUNDS)
            assert compose_objects(identity_object(x), obj) == obj
            assert compose_objects(obj, identity_object(y)) == obj


def test_middle_mismatch(pools):
    pt, line, two, gm = pools[QQ]
    a = random_object(pt, two, rng=random.Random(1), bounds=BOUNDS)
    b2 = random_object(line, gm, rng=random.Random(2), bounds=BOUNDS)
    with pytest.raises(AmbientMismatch):
        compose_objects(a, b2)


def test_kronecker_rank_over_point(pools):
    from kcorr.k0 import rank
    pt = pools[QQ][0]
    rng = random.Random(31)
    for _ in range(25):
        a = random_object(pt, pt, rng=rng, bounds=GenBounds(max_n=3, zero_weight=0.0))
        b2 = random_object(pt, pt, rng=rng, bounds=GenBounds(max_n=3, zero_weight=0.0))
        assert rank(compose_objects(a, b2)) == rank(a) * rank(b2)


def test_graph_functoriality(pools):
    pt, line, two, gm = pools[QQ]
    f = make_morphism(line, line, ["x^2 + 1"])
    g = make_morphism(line, line, ["x - 3"])
    assert compose_objects(graph_object(f), graph_object(g)) == \
        graph_object(compose_maps(g, f))


def test_zero_object_composes_to_zero(pools):
    pt, line, two, gm = pools[QQ]
    obj = random_object(line, two, rng=random.Random(5), bounds=BOUNDS)
    z = zero_object(two, gm)
    assert compose_objects(obj, z) == zero_object(line, gm)


def test_strict_associativity_graphs_and_random(pools):
    for field, (pt, line, two, gm) in pools.items():
        f = make_morphism(line, line, ["x^2"])
        g = make_morphism(line, line, ["x + 1"])
        h = make_morphism(line, line, ["x^3"])
        assert strict_associativity_check(graph_object(f), graph_object(g),
                                          graph_object(h))
        rng = random.Random(derive_seed("assoc", field.name))
        pool = (pt, line, two, gm)
        for _ in range(30):
            w, v, u, x = (rng.choice(pool) for _ in range(4))
            phi1 = random_object(w, v, rng=rng, bounds=BOUNDS)
            phi2 = random_object(v, u, rng=rng, bounds=BOUNDS)
            phi3 = random_object(u, x, rng=rng, bounds=BOUNDS)
            assert strict_associativity_check(phi1, phi2, phi3)


def test_zero_in_chain_is_absorbing(pools):
    pt, line, two, gm = pools[QQ]
    rng = random.Random(6)
    phi1 = zero_object(pt, line)
    phi2 = random_object(line, two, rng=rng, bounds=BOUNDS)
    phi3 = random_object(two, gm, rng=rng, bounds=BOUNDS)
    assert strict_associativity_check(phi1, phi2, phi3)
    assert compose_objects(compose_objects(phi1, phi2), phi3).n == 0


def test_morphism_pairing_matches_kronecker_oracle(pools):
    for field in (QQ, PrimeField(5)):
        pt = pools[field][0]
        rng = random.Random(derive_seed("kron", field.name))
        for _ in range(25):
            inner = random_object(pt, pt, rng=rng,
                                  bounds=GenBounds(max_n=3, zero_weight=0.0))
            outer = random_object(pt, pt, rng=rng,
                                  bounds=GenBounds(max_n=3, zero_weight=0.0))
            m1 = random_morphism_from(inner, rng, BOUNDS)
            m2 = random_morphism_from(outer, rng, BOUNDS)
            got = compose_morphisms(m2, m1).mat
            expected = dense_kron(
                [[scalar_value(e) for e in row] for row in m2.mat.rows],
                [[scalar_value(e) for e in row] for row in m1.mat.rows],
                field.mul)
            assert [[scalar_value(e) for e in row] for row in got.rows] == expected


def test_morphism_pairing_units_and_zero(pools):
    pt, line, two, gm = pools[QQ]
    rng = random.Random(8)
    inner = random_object(line, two, rng=rng, bounds=BOUNDS)
    outer = random_object(two, gm, rng=rng, bounds=BOUNDS)
    composite = compose_objects(inner, outer)
    ident = compose_morphisms(identity_morphism(outer), identity_morphism(inner))
    assert ident.mat == composite.p
    z = compose_morphisms(identity_morphism(outer), zero_morphism(inner, inner))
    assert z.mat.is_zero()


def test_interchange_randomized(pools):
    for field in (QQ, PrimeField(5)):
        pt, line, two, gm = pools[field]
        rng = random.Random(derive_seed("interchange", field.name))
        for _ in range(20):
            inner = random_object(line, two, rng=rng, bounds=BOUNDS)
            outer = random_object(two, gm, rng=rng, bounds=BOUNDS)
            a1 = random_morphism_from(inner, rng, BOUNDS)
            b1 = random_morphism_from(a1.dst, rng, BOUNDS)
            a2 = random_morphism_from(outer, rng, BOUNDS)
            b2 = random_morphism_from(a2.dst, rng, BOUNDS)
            lhs = compose_morphisms(compose_vertical(b2, a2),
                                    compose_vertical(b1, a1))
            rhs = compose_vertical(compose_morphisms(b2, b1),
                                   compose_morphisms(a2, a1))
            assert lhs.mat == rhs.mat


def test_sum_split_certificates(pools):
    for field in (QQ, PrimeField(5)):
        pt, line, two, gm = pools[field]
        rng = random.Random(derive_seed("sumcert", field.name))
        for _ in range(10):
            a = random_object(line, two, rng=rng, bounds=BOUNDS)
            b2 = random_object(line, two, rng=rng, bounds=BOUNDS)
            c = random_object(two, gm, rng=rng, bounds=BOUNDS)
            cert = sum_split_certificate_inner(a, b2, c)
            assert verify_iso(cert)
            cert2 = sum_split_certificate_outer(a, c,
                                                random_object(two, gm, rng=rng,
                                                              bounds=BOUNDS))
            assert verify_iso(cert2)
