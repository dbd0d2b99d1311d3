"""Functorial calculus on correspondence categories.

Pullback and pushforward along variety morphisms act by graph composition;
the production code paths are the equivalent entrywise substitutions, and
debug mode recomputes both and compares.  The box product extends a
correspondence over (X, X') to one over (X x U, X' x U') along a morphism
U -> U'.  Trailing torus coordinates in the target can be split off into
certified commuting automorphisms and merged back - a category isomorphism
that is exact on data for product-shaped targets.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .corrcat import (CorrMorphism, CorrObject, eval_nonunital, graph_object,
                      identity_morphism, make_corr_morphism,
                      make_correspondence, _trusted_morphism, _trusted_object)
from .errors import InternalLawViolation, InvalidArity, InvalidCertificate, ShapeError
from .exactalg import Matrix, QElem
from .pairing import compose_objects, compose_morphisms
from .varieties import (AffVariety, VarMorphism, gm_power, point, product,
                        product_of, split_projections, torus_arity, _flatten)


def _transport_matrix(f: VarMorphism, mat: Matrix) -> Matrix:
    """Entrywise coordinate pullback of a matrix over k[f.target]."""
    basis = f.source.gb
    image_map = f.image_map()
    ambient = f.source.ambient
    return mat.map_entries(
        lambda e: QElem(basis, e.rep.substitute(image_map, ambient)), basis)


def pullback_obj(f: VarMorphism, obj: CorrObject) -> CorrObject:
    """Base change along f: X' -> X; entrywise substitution on all matrices."""
    if f.target != obj.X:
        raise ShapeError(f"{f.target.name} is not the base of the object")
    result = _trusted_object(f.source, obj.Y, obj.n,
                             _transport_matrix(f, obj.p),
                             tuple(_transport_matrix(f, a) for a in obj.gen_images))
    if config.debug_enabled():
        via_graph = compose_objects(graph_object(f), obj)
        if via_graph != result:
            raise InternalLawViolation("pullback fast path disagrees with graph composition")
    return result


def pullback_mor(f: VarMorphism, mor: CorrMorphism) -> CorrMorphism:
    result = _trusted_morphism(pullback_obj(f, mor.src), pullback_obj(f, mor.dst),
                               _transport_matrix(f, mor.mat))
    if config.debug_enabled():
        via_graph = compose_morphisms(mor, identity_morphism(graph_object(f)))
        if via_graph.mat != result.mat:
            raise InternalLawViolation("pullback of morphism disagrees with graph composition")
    return result


def pushforward_obj(g: VarMorphism, obj: CorrObject) -> CorrObject:
    """Relabel the target along g: Y -> Y' by evaluating pulled coordinates."""
    if g.source != obj.Y:
        raise ShapeError(f"{g.source.name} is not the target of the object")
    gens = tuple(eval_nonunital(obj, img) for img in g.images)
    result = _trusted_object(obj.X, g.target, obj.n, obj.p, gens)
    if config.debug_enabled():
        via_graph = compose_objects(obj, graph_object(g))
        if via_graph != result:
            raise InternalLawViolation("pushforward fast path disagrees with graph composition")
    return result


def pushforward_mor(g: VarMorphism, mor: CorrMorphism) -> CorrMorphism:
    result = _trusted_morphism(pushforward_obj(g, mor.src),
                               pushforward_obj(g, mor.dst), mor.mat)
    if config.debug_enabled():
        via_graph = compose_morphisms(identity_morphism(graph_object(g)), mor)
        if via_graph.mat != result.mat:
            raise InternalLawViolation("pushforward of morphism disagrees with graph composition")
    return result


# -- box product ----------------------------------------------------------


def box_product(f: VarMorphism, obj: CorrObject) -> CorrObject:
    """External product along f: U -> U', sending (X, X') to (X x U, X' x U').

    The idempotent and the X'-actions pull back along the projection to X;
    each new U'-coordinate acts by the scalar pullback of its f-image times
    the idempotent.
    """
    src = product(obj.X, f.source)
    tgt = product(obj.Y, f.target)
    q_x, q_u = split_projections(src, obj.X, f.source)
    p = _transport_matrix(q_x, obj.p)
    gens = [_transport_matrix(q_x, a) for a in obj.gen_images]
    for img in f.images:
        scalar = q_u.pull(img)
        gens.append(p.scale_elem(scalar))
    return _trusted_object(src, tgt, obj.n, p, tuple(gens))


def box_mor(f: VarMorphism, mor: CorrMorphism) -> CorrMorphism:
    src = box_product(f, mor.src)
    dst = box_product(f, mor.dst)
    q_x, _ = split_projections(src.X, mor.src.X, f.source)
    return _trusted_morphism(src, dst, _transport_matrix(q_x, mor.mat))


# -- torus actions as certified automorphisms ------------------------------


@dataclass(frozen=True)
class AutObject:
    """A correspondence with commuting certified automorphisms."""

    base: CorrObject
    thetas: tuple  # pairs (theta_i, theta_i_inverse), each a CorrMorphism

    @property
    def arity(self) -> int:
        return len(self.thetas)


@dataclass(frozen=True)
class AutMorphism:
    src: AutObject
    dst: AutObject
    underlying: CorrMorphism


def make_aut_object(base: CorrObject, thetas) -> AutObject:
    """Validated list of commuting invertible endomorphism pairs."""
    thetas = tuple((fwd, bwd) for fwd, bwd in thetas)
    for fwd, bwd in thetas:
        for m in (fwd, bwd):
            if m.src != base or m.dst != base:
                raise InvalidCertificate("automorphism endpoints must be the base object")
        if fwd.mat * bwd.mat != base.p or bwd.mat * fwd.mat != base.p:
            raise InvalidCertificate("automorphism witness pair is not mutually inverse")
    for i in range(len(thetas)):
        for j in range(i + 1, len(thetas)):
            a, b = thetas[i][0].mat, thetas[j][0].mat
            if a * b != b * a:
                raise InvalidCertificate(f"automorphisms {i + 1} and {j + 1} do not commute")
    return AutObject(base, thetas)


def make_aut_morphism(src: AutObject, dst: AutObject,
                      underlying: CorrMorphism) -> AutMorphism:
    if underlying.src != src.base or underlying.dst != dst.base:
        raise ShapeError("underlying morphism endpoints do not match the bases")
    if src.arity != dst.arity:
        raise ShapeError("automorphism arities differ")
    for i, ((th, _), (th2, _)) in enumerate(zip(src.thetas, dst.thetas)):
        if underlying.mat * th.mat != th2.mat * underlying.mat:
            raise InvalidCertificate(f"morphism does not intertwine automorphism {i + 1}")
    return AutMorphism(src, dst, underlying)


def _split_torus_target(y: AffVariety):
    """Decompose the target as (Y_base, torus factor, rank, projection data).

    Accepts a product whose last factor is a standard rank-n torus, or a bare
    torus (read as pt x torus).  Anything else is a ShapeError.
    """
    if y.factors is None:
        n = torus_arity(y)
        if n is None:
            raise ShapeError(f"{y.name} has no trailing torus factor")
        return point(y.field, y.order), y, n, False
    factors = y.factors
    n = torus_arity(factors[-1])
    if n is None:
        raise ShapeError(f"the last factor of {y.name} is not a standard torus")
    rest = factors[:-1]
    base = rest[0] if len(rest) == 1 else product_of(rest)
    return base, factors[-1], n, True


def to_automorphism_object(obj: CorrObject) -> AutObject:
    """Split the target's trailing torus coordinates into automorphisms.

    The base object is the pushforward along the projection dropping the
    torus coordinates; each torus coordinate pair supplies an automorphism
    and its inverse witness.
    """
    y_base, torus, arity, is_product = _split_torus_target(obj.Y)
    if is_product:
        q_y, q_t = split_projections(obj.Y, y_base, torus)
        projection = q_y
        torus_elems = q_t.images
    else:
        projection = VarMorphism(obj.Y, y_base, ())
        torus_elems = tuple(obj.Y.var(v) for v in torus.vars)
    base = pushforward_obj(projection, obj)
    thetas = []
    for i in range(arity):
        t_mat = eval_nonunital(obj, torus_elems[2 * i])
        s_mat = eval_nonunital(obj, torus_elems[2 * i + 1])
        thetas.append((make_corr_morphism(base, base, t_mat),
                       make_corr_morphism(base, base, s_mat)))
    return make_aut_object(base, thetas)


def to_torus_object(aut: AutObject, arity: int | None = None) -> CorrObject:
    """Merge certified automorphisms back into torus coordinates.

    Rebuilds the canonical product target Y x Gm^n; for objects produced by
    ``to_automorphism_object`` from a product-shaped target this is an exact
    round trip.
    """
    n = aut.arity
    if arity is not None and arity != n:
        raise ShapeError(f"object carries {n} automorphisms, not {arity}")
    if n == 0:
        raise InvalidArity("need at least one automorphism to build a torus target")
    base = aut.base
    torus = gm_power(n, base.Y.field, base.Y.order)
    target = product(base.Y, torus)
    gens = list(base.gen_images)
    for fwd, bwd in aut.thetas:
        gens.append(fwd.mat)
        gens.append(bwd.mat)
    return make_correspondence(base.X, target, base.n, base.p, tuple(gens))


def aut_morphism_from_torus(mor: CorrMorphism) -> AutMorphism:
    """Morphism transport along the splitting; the matrix is unchanged."""
    src = to_automorphism_object(mor.src)
    dst = to_automorphism_object(mor.dst)
    underlying = _trusted_morphism(src.base, dst.base, mor.mat)
    return make_aut_morphism(src, dst, underlying)


def torus_morphism_from_aut(amor: AutMorphism) -> CorrMorphism:
    """Morphism transport along the merging; the matrix is unchanged."""
    return make_corr_morphism(to_torus_object(amor.src),
                              to_torus_object(amor.dst), amor.underlying.mat)


def pullback_aut(f: VarMorphism, aut: AutObject) -> AutObject:
    """Base change of an automorphism object; witnesses transport entrywise."""
    base = pullback_obj(f, aut.base)
    thetas = tuple(
        (_trusted_morphism(base, base, _transport_matrix(f, fwd.mat)),
         _trusted_morphism(base, base, _transport_matrix(f, bwd.mat)))
        for fwd, bwd in aut.thetas)
    return AutObject(base, thetas)


def pushforward_aut(g: VarMorphism, aut: AutObject) -> AutObject:
    """Target relabeling of an automorphism object; witnesses are unchanged."""
    base = pushforward_obj(g, aut.base)
    thetas = tuple(
        (_trusted_morphism(base, base, fwd.mat),
         _trusted_morphism(base, base, bwd.mat))
        for fwd, bwd in aut.thetas)
    return AutObject(base, thetas)
