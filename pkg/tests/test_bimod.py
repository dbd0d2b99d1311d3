import random

import pytest

from kcorr.bimod import (big_lift, big_pullback, big_pushforward,
                         bimodule_hom_valid, from_bimodule, make_presentation,
                         restrict_base, to_bimodule)
from kcorr.corrcat import (direct_sum, make_corr_morphism, make_correspondence,
                           zero_object)
from kcorr.errors import AmbientMismatch, InvalidMorphism, ShapeError
from kcorr.exactalg import Matrix, PrimeField, QElem, QQ
from kcorr.randomgen import (GenBounds, derive_seed, random_morphism_from,
                             random_object, random_endo_matrix, sample_map)
from kcorr.varieties import (compose_maps, gm_power, identity_map,
                             make_morphism, make_variety, point)

BOUNDS = GenBounds(max_n=2, max_deg=1, max_elementary=1, zero_weight=0.0)


@pytest.fixture
def pool():
    pt = point(QQ)
    line = make_variety("A1", ["x"], [], QQ)
    two = make_variety("TwoPts", ["y"], ["y^2 - y"], QQ)
    gm = gm_power(1, QQ)
    return pt, line, two, gm


def _twopts_object(pt, two):
    b = pt.gb
    one, zero = QElem.one(b), QElem.zero(b)
    return make_correspondence(pt, two, 2, Matrix.identity(b, 2),
                               [Matrix.diagonal(b, [one, zero])])


def test_to_bimodule_repackages(pool):
    pt, line, two, gm = pool
    obj = _twopts_object(pt, two)
    pres = to_bimodule(obj)
    assert pres.proj == obj.p
    assert pres.y_actions == obj.gen_images
    assert pres.x_actions == ()  # the point has no coordinates
    assert pres.ambient.name == "pt_x_TwoPts"
    z = to_bimodule(zero_object(pt, two))
    assert z.n == 0


def test_x_actions_are_scalar_multiples(pool):
    pt, line, two, gm = pool
    obj = random_object(line, two, seed=1, bounds=BOUNDS)
    pres = to_bimodule(obj)
    assert len(pres.x_actions) == 1
    assert pres.x_actions[0] == pres.proj.scale_elem(line.var("x"))


def test_to_bimodule_respects_sums(pool):
    pt, line, two, gm = pool
    a = random_object(line, two, seed=2, bounds=BOUNDS)
    b2 = random_object(line, two, seed=3, bounds=BOUNDS)
    s = to_bimodule(direct_sum(a, b2))
    blockwise = to_bimodule(direct_sum(a, b2))
    assert s == blockwise
    assert s.n == a.n + b2.n


def test_round_trip_is_exact(pool):
    pt, line, two, gm = pool
    rng = random.Random(4)
    for _ in range(30):
        obj = random_object(line, two, rng=rng, bounds=BOUNDS)
        assert from_bimodule(to_bimodule(obj)) == obj


def test_hom_validity_matches_corrcat(pool):
    pt, line, two, gm = pool
    obj = _twopts_object(pt, two)
    pres = to_bimodule(obj)
    b = pt.gb
    one, zero = QElem.one(b), QElem.zero(b)
    assert bimodule_hom_valid(pres, pres, obj.p)
    e12 = Matrix(b, [[zero, one], [zero, zero]])
    assert not bimodule_hom_valid(pres, pres, e12)
    with pytest.raises(InvalidMorphism):
        make_corr_morphism(obj, obj, e12)


def test_hom_validity_equivalence_randomized(pool):
    pt, line, two, gm = pool
    rng = random.Random(derive_seed("homeq"))
    agreements = 0
    for _ in range(120):
        src = random_object(line, two, rng=rng, bounds=BOUNDS)
        mor = random_morphism_from(src, rng, BOUNDS)
        candidates = [mor.mat]
        # corrupt: perturb one entry
        if mor.mat.nrows:
            rows = [list(r) for r in mor.mat.rows]
            i = rng.randrange(mor.mat.nrows)
            j = rng.randrange(mor.mat.ncols)
            rows[i][j] = rows[i][j] + QElem.one(line.gb)
            candidates.append(Matrix(line.gb, rows))
        for mat in candidates:
            try:
                make_corr_morphism(mor.src, mor.dst, mat)
                corr_ok = True
            except InvalidMorphism:
                corr_ok = False
            bim_ok = bimodule_hom_valid(to_bimodule(mor.src),
                                        to_bimodule(mor.dst), mat)
            assert corr_ok == bim_ok
            agreements += 1
    assert agreements >= 200


def test_presentation_shape_errors(pool):
    pt, line, two, gm = pool
    a = to_bimodule(random_object(line, two, seed=5, bounds=BOUNDS))
    b2 = to_bimodule(random_object(line, gm, seed=6, bounds=BOUNDS))
    with pytest.raises(AmbientMismatch):
        bimodule_hom_valid(a, b2, a.proj)
    with pytest.raises(ShapeError):
        bimodule_hom_valid(a, a, Matrix.identity(line.gb, a.n + 1))


def test_big_lift_and_identity_cache(pool):
    pt, line, two, gm = pool
    obj = random_object(line, two, seed=7, bounds=BOUNDS)
    lifted = big_lift(obj)
    assert lifted.cache_snapshot() == {}  # nothing restricted yet
    assert restrict_base(lifted) == to_bimodule(obj)
    assert lifted.cache_snapshot()  # identity restriction is cached
    pulled_id = big_pullback(identity_map(line), lifted)
    assert pulled_id == lifted
    assert restrict_base(pulled_id) == to_bimodule(obj)


def test_strict_pullback_chain(pool):
    pt, line, two, gm = pool
    rng = random.Random(8)
    for _ in range(25):
        obj = random_object(line, two, rng=rng, bounds=BOUNDS)
        lifted = big_lift(obj)
        g = sample_map(line, line, rng)
        g1 = sample_map(pt, line, rng)
        two_step = big_pullback(g1, big_pullback(g, lifted))
        one_step = big_pullback(compose_maps(g, g1), lifted)
        assert two_step == one_step
        assert restrict_base(two_step) == restrict_base(one_step)


def test_strict_pushforward_chain_and_mixed(pool):
    pt, line, two, gm = pool
    rng = random.Random(9)
    for _ in range(25):
        obj = random_object(line, two, rng=rng, bounds=BOUNDS)
        lifted = big_lift(obj)
        h = sample_map(two, two, rng)
        h1 = sample_map(two, pt, rng)
        two_step = big_pushforward(h1, big_pushforward(h, lifted))
        one_step = big_pushforward(compose_maps(h1, h), lifted)
        assert two_step == one_step
        assert restrict_base(two_step) == restrict_base(one_step)
        g = sample_map(pt, line, rng)
        assert big_pushforward(h, big_pullback(g, lifted)) == \
            big_pullback(g, big_pushforward(h, lifted))


def test_restricted_value_is_entrywise_pullback(pool):
    pt, line, two, gm = pool
    obj = random_object(line, two, seed=10, bounds=BOUNDS)
    g = make_morphism(pt, line, ["2"])
    lifted = big_pullback(g, big_lift(obj))
    restricted = restrict_base(lifted)
    expected = make_presentation(
        pt, two, obj.n,
        obj.p.map_entries(lambda e: g.pull(e), pt.gb),
        tuple(a.map_entries(lambda e: g.pull(e), pt.gb) for a in obj.gen_images))
    assert restricted == expected
