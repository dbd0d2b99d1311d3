"""Deterministic randomized generators for objects, morphisms and maps.

Everything is driven by an explicit ``random.Random`` so identical seeds
reproduce identical values; no generator touches global state.  Objects are
built as base-change conjugates of diagonal models whose diagonal slots are
points of the target variety with coordinates in the base ring, which makes
every target relation hold slotwise by construction.  Where the target has
no relations the generator instead uses free polynomials in a single corner
element, which gives denser, less structured instances.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from itertools import product as iter_product

from .corrcat import (CorrMorphism, CorrObject, make_corr_morphism,
                      make_correspondence, zero_object)
from .errors import GenerationFailed
from .exactalg import Matrix, Poly, QElem
from .functors import AutObject, make_aut_object
from .varieties import AffVariety, VarMorphism, make_morphism


def derive_seed(*parts) -> int:
    """Stable 64-bit child seed from arbitrary string/int parts."""
    text = "\x1f".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


@dataclass(frozen=True)
class GenBounds:
    """Size knobs for the generators; defaults match the documented limits."""

    max_n: int = 3
    max_deg: int = 2
    max_elementary: int = 3
    zero_weight: float = 0.08


# -- scalars and polynomials -------------------------------------------------


def random_scalar(field, rng: random.Random, nonzero: bool = False):
    pool = field.elements_sample()
    if nonzero:
        pool = tuple(c for c in pool if c)
    return rng.choice(pool)


def random_poly(x: AffVariety, rng: random.Random, max_deg: int = 2,
                max_terms: int = 2) -> Poly:
    ambient = x.ambient
    field = x.field
    poly = Poly.zero(ambient)
    width = len(ambient.vars)
    for _ in range(rng.randint(1, max_terms)):
        coeff = random_scalar(field, rng)
        mono = [0] * width
        for _ in range(rng.randint(0, max_deg) if width else 0):
            mono[rng.randrange(width)] += 1
        if sum(mono) > max_deg:
            mono = [0] * width
        poly = poly + Poly(ambient, {tuple(mono): coeff} if coeff else {})
    return poly


# -- points of a variety with coordinates in another coordinate ring ---------

_scalar_point_cache: dict = {}


def _scalar_points(y: AffVariety):
    """All target points with coordinates in the small scalar sample pool."""
    key = y
    cached = _scalar_point_cache.get(key)
    if cached is not None:
        return cached
    field = y.field
    pool = field.elements_sample()
    points = []
    for combo in iter_product(pool, repeat=len(y.vars)):
        values = dict(zip(y.vars, combo))
        ok = True
        for gen in y.ideal_gens:
            total = field.zero
            for mono, coeff in gen.terms.items():
                term = coeff
                for v, e in zip(y.vars, mono):
                    for _ in range(e):
                        term = field.mul(term, values[v])
                total = field.add(total, term)
            if total:
                ok = False
                break
        if ok:
            points.append(combo)
    _scalar_point_cache[key] = points
    return points


def sample_point(x: AffVariety, y: AffVariety, rng: random.Random,
                 max_deg: int = 2, budget: int = 12):
    """A point of ``y`` with coordinates in k[x], as a tuple of QElem."""
    if not y.vars:
        return ()
    if not y.ideal_gens:
        return tuple(x.qelem(random_poly(x, rng, max_deg)) for _ in y.vars)
    for _ in range(budget):
        candidate = tuple(x.qelem(random_poly(x, rng, max_deg)) for _ in y.vars)
        reps = {v: c.rep for v, c in zip(y.vars, candidate)}
        if all(QElem(x.gb, g.substitute(reps, x.ambient)).is_zero()
               for g in y.ideal_gens):
            return candidate
    scalars = _scalar_points(y)
    if not scalars:
        raise GenerationFailed(
            f"no point of {y.name} found within budget (no scalar solutions)")
    combo = rng.choice(scalars)
    return tuple(x.qelem(Poly.const(x.ambient, c)) for c in combo)


def sample_map(x: AffVariety, y: AffVariety, rng: random.Random,
               max_deg: int = 2) -> VarMorphism:
    """A random validated morphism x -> y (a k[x]-point of y)."""
    return make_morphism(x, y, sample_point(x, y, rng, max_deg))


# -- invertible conjugators ----------------------------------------------------


def random_conjugator(x: AffVariety, n: int, rng: random.Random,
                      bounds: GenBounds):
    """A product of elementary matrices over k[x], with its exact inverse."""
    basis = x.gb
    u = Matrix.identity(basis, n)
    u_inv = Matrix.identity(basis, n)
    if n < 2:
        return u, u_inv
    for _ in range(rng.randint(0, bounds.max_elementary)):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        lam = x.qelem(random_poly(x, rng, max(1, bounds.max_deg - 1), 1))
        e = Matrix.identity(basis, n)
        rows = [list(r) for r in e.rows]
        rows[i][j] = lam
        e = Matrix(basis, rows, n, n)
        rows_inv = [list(r) for r in Matrix.identity(basis, n).rows]
        rows_inv[i][j] = -lam
        e_inv = Matrix(basis, rows_inv, n, n)
        u = u * e
        u_inv = e_inv * u_inv
    return u, u_inv


# -- objects -------------------------------------------------------------------


def _diagonal_model(x: AffVariety, y: AffVariety, n: int, rank: int,
                    rng: random.Random, bounds: GenBounds):
    """Diagonal idempotent and per-slot target points, before conjugation."""
    basis = x.gb
    one = QElem.one(basis)
    zero = QElem.zero(basis)
    p = Matrix.diagonal(basis, [one] * rank + [zero] * (n - rank))
    slots = [sample_point(x, y, rng, bounds.max_deg) for _ in range(rank)]
    gen_mats = []
    for j in range(len(y.vars)):
        diag = [slots[i][j] for i in range(rank)] + [zero] * (n - rank)
        gen_mats.append(Matrix.diagonal(basis, diag))
    return p, gen_mats


def _corner_polynomial_model(x: AffVariety, y: AffVariety, n: int, rank: int,
                             rng: random.Random, bounds: GenBounds):
    """Commuting actions as polynomials in one corner element.

    Only sound when the target has no relations to satisfy.
    """
    basis = x.gb
    one = QElem.one(basis)
    zero = QElem.zero(basis)
    p = Matrix.diagonal(basis, [one] * rank + [zero] * (n - rank))
    raw = Matrix(basis, [[x.qelem(random_poly(x, rng, 1, 1)) for _ in range(n)]
                         for _ in range(n)], n, n)
    corner = p * raw * p
    gen_mats = []
    for _ in y.vars:
        acc = p.scale(random_scalar(x.field, rng))
        power = corner
        for _ in range(rng.randint(0, 2)):
            acc = acc + power.scale(random_scalar(x.field, rng))
            power = power * corner
        gen_mats.append(acc)
    return p, gen_mats


def random_object(x: AffVariety, y: AffVariety, seed=None,
                  bounds: GenBounds = GenBounds(),
                  rng: random.Random | None = None) -> CorrObject:
    """Deterministic random validated object over (x, y)."""
    if rng is None:
        rng = random.Random(derive_seed("object", seed))
    if rng.random() < bounds.zero_weight:
        return zero_object(x, y)
    n = rng.randint(1, bounds.max_n)
    rank = rng.randint(0, n)
    if y.ideal_gens or rng.random() < 0.5:
        p, gen_mats = _diagonal_model(x, y, n, rank, rng, bounds)
    else:
        p, gen_mats = _corner_polynomial_model(x, y, n, rank, rng, bounds)
    u, u_inv = random_conjugator(x, n, rng, bounds)
    p = u * p * u_inv
    gen_mats = [u * a * u_inv for a in gen_mats]
    return make_correspondence(x, y, n, p, gen_mats)


def conjugate_object(obj: CorrObject, u: Matrix, u_inv: Matrix) -> CorrObject:
    return make_correspondence(obj.X, obj.Y, obj.n, u * obj.p * u_inv,
                               [u * a * u_inv for a in obj.gen_images])


def random_endo_matrix(obj: CorrObject, rng: random.Random) -> Matrix:
    """A matrix commuting with the actions and fixed by the corner."""
    basis = obj.X.gb
    n = obj.n
    if n == 0:
        return Matrix.zeros(basis, 0, 0)
    if not obj.gen_images:
        raw = Matrix(basis, [[obj.X.qelem(random_poly(obj.X, rng, 1, 1))
                              for _ in range(n)] for _ in range(n)], n, n)
        return obj.p * raw * obj.p
    acc = obj.p.scale(random_scalar(obj.X.field, rng))
    for a in obj.gen_images:
        acc = acc + a.scale(random_scalar(obj.X.field, rng))
    if len(obj.gen_images) >= 1 and rng.random() < 0.5:
        acc = acc + (obj.gen_images[0] * obj.gen_images[-1]).scale(
            random_scalar(obj.X.field, rng))
    return acc


def random_morphism_from(obj: CorrObject, rng: random.Random,
                         bounds: GenBounds = GenBounds()) -> CorrMorphism:
    """A validated morphism out of ``obj`` into a conjugate of it."""
    u, u_inv = random_conjugator(obj.X, obj.n, rng, bounds)
    dst = conjugate_object(obj, u, u_inv)
    mat = u * random_endo_matrix(obj, rng)
    return make_corr_morphism(obj, dst, mat)


def random_endomorphism(obj: CorrObject, rng: random.Random) -> CorrMorphism:
    return make_corr_morphism(obj, obj, random_endo_matrix(obj, rng))


def random_aut_object(x: AffVariety, y: AffVariety, arity: int,
                      seed=None, bounds: GenBounds = GenBounds(),
                      rng: random.Random | None = None) -> AutObject:
    """Random base object with ``arity`` certified commuting automorphisms.

    Witness pairs come from invertible scalar diagonals conjugated by the
    same frame as the base object, so inverses are free.
    """
    if rng is None:
        rng = random.Random(derive_seed("aut", seed))
    n = rng.randint(1, bounds.max_n)
    rank = rng.randint(0, n)
    p, gen_mats = _diagonal_model(x, y, n, rank, rng, bounds)
    field = x.field
    basis = x.gb
    zero = QElem.zero(basis)
    theta_diags = []
    for _ in range(arity):
        lams = [random_scalar(field, rng, nonzero=True) for _ in range(rank)]
        fwd = Matrix.diagonal(basis, [QElem.const(basis, c) for c in lams]
                              + [zero] * (n - rank))
        bwd = Matrix.diagonal(basis, [QElem.const(basis, field.inv(c)) for c in lams]
                              + [zero] * (n - rank))
        theta_diags.append((fwd, bwd))
    u, u_inv = random_conjugator(x, n, rng, bounds)
    p = u * p * u_inv
    gen_mats = [u * a * u_inv for a in gen_mats]
    base = make_correspondence(x, y, n, p, gen_mats)
    thetas = [(make_corr_morphism(base, base, u * fwd * u_inv),
               make_corr_morphism(base, base, u * bwd * u_inv))
              for fwd, bwd in theta_diags]
    return make_aut_object(base, thetas)
