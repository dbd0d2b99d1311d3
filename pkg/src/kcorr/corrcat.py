"""The additive category of matrix correspondences between two varieties.

An object over (X, Y) is a size-n idempotent p over k[X] together with one
commuting matrix per coordinate of Y, satisfying Y's relations under the
non-unital evaluation that sends a monomial c*y^a to c * p * A^a.  Morphisms
are intertwining matrices cut down by the idempotents on both sides.
Everything is immutable and equality is equality of normal-form data.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .errors import (AmbientMismatch, InvalidObject, InvalidMorphism,
                     ShapeError, UnknownVariable)
from .exactalg import Matrix, Poly, QElem
from .varieties import AffVariety


def corner_eval(p: Matrix, action_mats, poly: Poly) -> Matrix:
    """Evaluate a polynomial in the corner algebra with unit ``p``.

    ``action_mats`` are indexed like the polynomial's variables; a monomial
    c*y^a goes to c * p * prod(A_i^a_i) and the constant c0 to c0 * p.
    """
    basis = p.basis
    n = p.nrows
    result = Matrix.zeros(basis, n, n)
    powers: list[dict[int, Matrix]] = [dict() for _ in action_mats]
    for mono, coeff in poly.terms.items():
        if len(mono) != len(action_mats):
            raise UnknownVariable("polynomial does not match the action matrices")
        term = p
        for i, e in enumerate(mono):
            if e == 0:
                continue
            cache = powers[i]
            if e not in cache:
                acc = action_mats[i]
                for _ in range(e - 1):
                    acc = acc * action_mats[i]
                cache[e] = acc
            term = term * cache[e]
        result = result + term.scale(coeff)
    return result


@dataclass(frozen=True)
class CorrObject:
    """An object of the correspondence category over (X, Y)."""

    X: AffVariety
    Y: AffVariety
    n: int
    p: Matrix
    gen_images: tuple

    def gen(self, var_name: str) -> Matrix:
        return self.gen_images[self.Y.ambient.index_of(var_name)]

    def __repr__(self):
        return f"CorrObject({self.X.name} -> {self.Y.name}, n={self.n})"


@dataclass(frozen=True)
class CorrMorphism:
    """An intertwining matrix between two objects over the same (X, Y)."""

    src: CorrObject
    dst: CorrObject
    mat: Matrix

    def __repr__(self):
        return f"CorrMorphism({self.src!r} => {self.dst!r})"


@dataclass(frozen=True)
class IsoCertificate:
    """A pair of mutually inverse morphisms; the witness k0 merges classes by."""

    fwd: CorrMorphism
    bwd: CorrMorphism


def _check_object_data(X, Y, n, p, gen_images):
    basis = X.gb
    if p.basis != basis:
        raise AmbientMismatch(f"idempotent not over k[{X.name}]")
    if p.nrows != n or p.ncols != n:
        raise ShapeError(f"idempotent must be {n}x{n}")
    if len(gen_images) != len(Y.vars):
        raise ShapeError(
            f"expected {len(Y.vars)} generator images for {Y.name}, got {len(gen_images)}")
    for a in gen_images:
        if a.basis != basis:
            raise AmbientMismatch(f"generator image not over k[{X.name}]")
        if a.nrows != n or a.ncols != n:
            raise ShapeError(f"generator images must be {n}x{n}")
    if p * p != p:
        raise InvalidObject("idempotent law p*p = p fails")
    for name, a in zip(Y.vars, gen_images):
        if p * a != a:
            raise InvalidObject(f"corner law p*A = A fails for generator {name}")
        if a * p != a:
            raise InvalidObject(f"corner law A*p = A fails for generator {name}")
    m = len(gen_images)
    for i in range(m):
        for j in range(i + 1, m):
            if gen_images[i] * gen_images[j] != gen_images[j] * gen_images[i]:
                raise InvalidObject(
                    f"commutation law fails for generators {Y.vars[i]}, {Y.vars[j]}")
    for rel in Y.ideal_gens:
        value = corner_eval(p, gen_images, rel)
        if not value.is_zero():
            raise InvalidObject(f"target relation {rel} does not evaluate to 0")


def make_correspondence(X: AffVariety, Y: AffVariety, n: int, p: Matrix,
                        gen_images) -> CorrObject:
    """Validated object; n = 0 gives the zero object."""
    gen_images = tuple(gen_images)
    _check_object_data(X, Y, n, p, gen_images)
    return CorrObject(X, Y, n, p, gen_images)


def _trusted_object(X, Y, n, p, gen_images) -> CorrObject:
    """Constructor for values whose validity the theory guarantees."""
    if config.debug_enabled():
        _check_object_data(X, Y, n, p, gen_images)
    return CorrObject(X, Y, n, p, gen_images)


def zero_object(X: AffVariety, Y: AffVariety) -> CorrObject:
    empty = Matrix.zeros(X.gb, 0, 0)
    return CorrObject(X, Y, 0, empty, tuple(empty for _ in Y.vars))


def eval_nonunital(obj: CorrObject, f) -> Matrix:
    """Value of the object's non-unital evaluation on f in k[Y]."""
    if isinstance(f, QElem):
        if f.basis != obj.Y.gb:
            raise AmbientMismatch(f"element not over k[{obj.Y.name}]")
        f = f.rep
    elif isinstance(f, str):
        f = obj.Y.qelem(f).rep
    if f.ambient != obj.Y.ambient:
        raise UnknownVariable(
            f"polynomial over {f.ambient.vars} does not match {obj.Y.name}")
    return corner_eval(obj.p, obj.gen_images, f)


def graph_object(f) -> CorrObject:
    """The rank-one correspondence encoding a variety morphism."""
    X, Y = f.source, f.target
    basis = X.gb
    p = Matrix.identity(basis, 1)
    gens = tuple(Matrix(basis, [[img]]) for img in f.images)
    return _trusted_object(X, Y, 1, p, gens)


def identity_object(X: AffVariety) -> CorrObject:
    from .varieties import identity_map
    return graph_object(identity_map(X))


def direct_sum(a: CorrObject, b: CorrObject) -> CorrObject:
    if a.X != b.X or a.Y != b.Y:
        raise AmbientMismatch("direct sum needs matching source and target varieties")
    basis = a.X.gb
    p = Matrix.block_diag(basis, (a.p, b.p))
    gens = tuple(Matrix.block_diag(basis, (ga, gb))
                 for ga, gb in zip(a.gen_images, b.gen_images))
    return _trusted_object(a.X, a.Y, a.n + b.n, p, gens)


def _check_morphism_data(src, dst, mat):
    if src.X != dst.X or src.Y != dst.Y:
        raise AmbientMismatch("morphism endpoints over different (X, Y)")
    if mat.basis != src.X.gb:
        raise AmbientMismatch(f"matrix not over k[{src.X.name}]")
    if mat.nrows != dst.n or mat.ncols != src.n:
        raise ShapeError(f"matrix must be {dst.n}x{src.n}")
    if dst.p * mat * src.p != mat:
        raise InvalidMorphism("corner law p_dst*m*p_src = m fails")
    for name, a_src, a_dst in zip(src.Y.vars, src.gen_images, dst.gen_images):
        if mat * a_src != a_dst * mat:
            raise InvalidMorphism(f"intertwining fails at generator {name}")


def make_corr_morphism(src: CorrObject, dst: CorrObject, mat: Matrix) -> CorrMorphism:
    _check_morphism_data(src, dst, mat)
    return CorrMorphism(src, dst, mat)


def _trusted_morphism(src, dst, mat) -> CorrMorphism:
    if config.debug_enabled():
        _check_morphism_data(src, dst, mat)
    return CorrMorphism(src, dst, mat)


def identity_morphism(obj: CorrObject) -> CorrMorphism:
    return CorrMorphism(obj, obj, obj.p)


def zero_morphism(src: CorrObject, dst: CorrObject) -> CorrMorphism:
    if src.X != dst.X or src.Y != dst.Y:
        raise AmbientMismatch("morphism endpoints over different (X, Y)")
    return CorrMorphism(src, dst, Matrix.zeros(src.X.gb, dst.n, src.n))


def compose_vertical(beta: CorrMorphism, alpha: CorrMorphism) -> CorrMorphism:
    """beta o alpha inside one Hom-category."""
    if alpha.dst != beta.src:
        raise AmbientMismatch("morphisms are not composable")
    return _trusted_morphism(alpha.src, beta.dst, beta.mat * alpha.mat)


def add_morphisms(alpha: CorrMorphism, beta: CorrMorphism) -> CorrMorphism:
    if alpha.src != beta.src or alpha.dst != beta.dst:
        raise AmbientMismatch("morphism sum needs identical endpoints")
    return _trusted_morphism(alpha.src, alpha.dst, alpha.mat + beta.mat)


def scale_morphism(alpha: CorrMorphism, c) -> CorrMorphism:
    return _trusted_morphism(alpha.src, alpha.dst, alpha.mat.scale(c))


def verify_iso(cert: IsoCertificate) -> bool:
    """True when both round trips are the identity morphisms."""
    fwd, bwd = cert.fwd, cert.bwd
    if fwd.src != bwd.dst or fwd.dst != bwd.src:
        return False
    return (bwd.mat * fwd.mat == fwd.src.p) and (fwd.mat * bwd.mat == fwd.dst.p)


def sum_injections(a: CorrObject, b: CorrObject):
    """Biproduct structure maps (sum, i1, i2, pr1, pr2) of a (+) b."""
    s = direct_sum(a, b)
    basis = a.X.gb
    z = QElem.zero(basis)
    i1_rows = [list(row) for row in a.p.rows] + [[z] * a.n for _ in range(b.n)]
    i2_rows = [[z] * b.n for _ in range(a.n)] + [list(row) for row in b.p.rows]
    pr1_rows = [list(row) + [z] * b.n for row in a.p.rows]
    pr2_rows = [[z] * a.n + list(row) for row in b.p.rows]
    i1 = _trusted_morphism(a, s, Matrix(basis, i1_rows, s.n, a.n))
    i2 = _trusted_morphism(b, s, Matrix(basis, i2_rows, s.n, b.n))
    pr1 = _trusted_morphism(s, a, Matrix(basis, pr1_rows, a.n, s.n))
    pr2 = _trusted_morphism(s, b, Matrix(basis, pr2_rows, b.n, s.n))
    return s, i1, i2, pr1, pr2
