"""The bilinear composition pairing between correspondence categories.

Objects compose by evaluating the outer object's matrices entrywise through
the inner object's non-unital evaluation and flattening the resulting block
matrix; with the fixed flattening convention (inner index varies fastest)
this is strictly associative and strictly unital at the data level.
Morphisms compose through the same flattening, which over a point base
degenerates to the classical Kronecker product.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (AmbientMismatch, InternalLawViolation, InvalidMorphism,
                     InvalidObject, ShapeError)
from .exactalg import Matrix, QElem
from .corrcat import (CorrMorphism, CorrObject, IsoCertificate, corner_eval,
                      direct_sum, make_corr_morphism, make_correspondence,
                      verify_iso)


@dataclass(frozen=True)
class FlattenMap:
    """Index bookkeeping for the block flattening: e_{i,a} -> e_{i + a*inner}."""

    inner: int  # block size
    outer: int  # number of blocks per side

    @property
    def size(self) -> int:
        return self.inner * self.outer

    def flat(self, block_index: int, inner_index: int) -> int:
        return inner_index + block_index * self.inner

    def split(self, flat_index: int) -> tuple[int, int]:
        return flat_index // self.inner, flat_index % self.inner


def flatten_blocks(blocks, basis=None) -> Matrix:
    """Collapse an outer matrix of uniform square blocks into one matrix.

    blocks[a][b] sits at rows a*inner..(a+1)*inner-1 and the matching column
    range, so on square block matrices the map is an algebra isomorphism:
    flatten(B*C) equals flatten(B)*flatten(C).  Rectangular outer shapes are
    allowed so morphism matrices reuse the same layout.  An empty or
    size-zero result needs ``basis`` to pin the ring.
    """
    blocks = [list(row) for row in blocks]
    nrows = len(blocks)
    ncols = len(blocks[0]) if blocks else 0
    if any(len(row) != ncols for row in blocks):
        raise ShapeError("ragged block matrix")
    inner = None
    for row in blocks:
        for blk in row:
            if blk.nrows != blk.ncols:
                raise ShapeError("blocks must be square")
            if inner is None:
                inner = blk.nrows
                basis = blk.basis if basis is None else basis
            if blk.nrows != inner:
                raise ShapeError("ragged blocks: all blocks must share one size")
            if blk.basis != basis:
                raise AmbientMismatch("blocks over different rings")
    if basis is None:
        raise ShapeError("cannot flatten an empty block matrix without a ring")
    if inner is None:
        inner = 0
    z = QElem.zero(basis)
    out = [[z] * (ncols * inner) for _ in range(nrows * inner)]
    for a in range(nrows):
        for b in range(ncols):
            blk = blocks[a][b]
            for i in range(inner):
                row = out[a * inner + i]
                blk_row = blk.rows[i]
                for j in range(inner):
                    row[b * inner + j] = blk_row[j]
    return Matrix(basis, out, nrows * inner, ncols * inner)


def _eval_blocks_flat(inner_obj: CorrObject, outer_mat: Matrix) -> Matrix:
    """Apply the inner object's evaluation entrywise, then flatten.

    ``outer_mat`` has entries in k[middle variety]; the result is a matrix of
    shape (nrows*n) x (ncols*n) over k[inner_obj.X].
    """
    n = inner_obj.n
    basis = inner_obj.X.gb
    if outer_mat.nrows == 0 or outer_mat.ncols == 0 or n == 0:
        return Matrix.zeros(basis, outer_mat.nrows * n, outer_mat.ncols * n)
    blocks = [
        [corner_eval(inner_obj.p, inner_obj.gen_images, entry.rep)
         for entry in row]
        for row in outer_mat.rows
    ]
    return flatten_blocks(blocks, basis=basis)


def compose_objects(first: CorrObject, second: CorrObject) -> CorrObject:
    """Pairing on objects: ``first`` over (V,U), ``second`` over (U,X).

    The result lives over (V,X) with size second.n * first.n.  The composite
    is validated eagerly; a failure here is a bug, never user error.
    """
    if first.Y != second.X:
        raise AmbientMismatch(
            f"middle variety mismatch: {first.Y.name} vs {second.X.name}")
    p = _eval_blocks_flat(first, second.p)
    gens = tuple(_eval_blocks_flat(first, a) for a in second.gen_images)
    try:
        return make_correspondence(first.X, second.Y, second.n * first.n, p, gens)
    except (InvalidObject, ShapeError, AmbientMismatch) as exc:
        raise InternalLawViolation(f"composite object failed validation: {exc}") from exc


def compose_morphisms(second_mor: CorrMorphism, first_mor: CorrMorphism) -> CorrMorphism:
    """Pairing on morphisms, matching compose_objects on sources and targets.

    The matrix realization: push the outer matrix through the evaluation of
    the inner *target* object, flatten, and multiply by a block-diagonal of
    copies of the inner matrix.  Over a point base this is exactly the
    Kronecker product of the two matrices in the flattening's index order.
    """
    if first_mor.src.Y != second_mor.src.X:
        raise AmbientMismatch("morphisms are not composable through the middle variety")
    src = compose_objects(first_mor.src, second_mor.src)
    dst = compose_objects(first_mor.dst, second_mor.dst)
    outer_through_inner = _eval_blocks_flat(first_mor.dst, second_mor.mat)
    basis = first_mor.src.X.gb
    inner_copies = Matrix.block_diag(
        basis, tuple(first_mor.mat for _ in range(second_mor.src.n)))
    mat = outer_through_inner * inner_copies
    try:
        return make_corr_morphism(src, dst, mat)
    except (InvalidMorphism, ShapeError, AmbientMismatch) as exc:
        raise InternalLawViolation(f"composite morphism failed validation: {exc}") from exc


def compose_iso(second_cert: IsoCertificate, first_cert: IsoCertificate) -> IsoCertificate:
    """Pairing of certificates; verified before returning."""
    cert = IsoCertificate(
        fwd=compose_morphisms(second_cert.fwd, first_cert.fwd),
        bwd=compose_morphisms(second_cert.bwd, first_cert.bwd),
    )
    if not verify_iso(cert):
        raise InternalLawViolation("pairing of certificates lost invertibility")
    return cert


def strict_associativity_check(phi1: CorrObject, phi2: CorrObject,
                               phi3: CorrObject) -> bool:
    """Both association orders of a composable triple are data-identical."""
    left = compose_objects(compose_objects(phi1, phi2), phi3)
    right = compose_objects(phi1, compose_objects(phi2, phi3))
    return left == right


def _interleave_permutation(n1a: int, n1b: int, n2: int):
    """Row permutation aligning compose(a (+) b, c) with the direct sum.

    The composite of the inner direct sum carries blocks of size n1a+n1b; the
    direct sum of composites lists all n1a-indices first.  Returns images so
    that permutation[old] = new.
    """
    width = n1a + n1b
    images = [0] * (n2 * width)
    for a in range(n2):
        for i in range(width):
            old = a * width + i
            if i < n1a:
                new = a * n1a + i
            else:
                new = n2 * n1a + a * n1b + (i - n1a)
            images[old] = new
    return images


def sum_split_certificate_inner(first_a: CorrObject, first_b: CorrObject,
                                second: CorrObject) -> IsoCertificate:
    """Certificate: compose(a (+) b, c) ~ compose(a, c) (+) compose(b, c)."""
    combined = compose_objects(direct_sum(first_a, first_b), second)
    split = direct_sum(compose_objects(first_a, second),
                       compose_objects(first_b, second))
    basis = combined.p.basis
    perm = Matrix.permutation(
        basis, _interleave_permutation(first_a.n, first_b.n, second.n))
    fwd = make_corr_morphism(combined, split, perm * combined.p)
    bwd = make_corr_morphism(split, combined, combined.p * perm.transpose())
    cert = IsoCertificate(fwd, bwd)
    if not verify_iso(cert):
        raise InternalLawViolation("inner direct-sum certificate failed verification")
    return cert


def sum_split_certificate_outer(first: CorrObject, second_a: CorrObject,
                                second_b: CorrObject) -> IsoCertificate:
    """Certificate: compose(c, a (+) b) ~ compose(c, a) (+) compose(c, b).

    With the fixed flattening the two sides are data-identical, so the
    certificate is the identity matrix of the common object.
    """
    combined = compose_objects(first, direct_sum(second_a, second_b))
    split = direct_sum(compose_objects(first, second_a),
                       compose_objects(first, second_b))
    if combined != split:
        raise InternalLawViolation(
            "outer direct-sum composite is expected to split on the nose")
    cert = IsoCertificate(make_corr_morphism(combined, split, combined.p),
                          make_corr_morphism(split, combined, combined.p))
    if not verify_iso(cert):
        raise InternalLawViolation("outer direct-sum certificate failed verification")
    return cert
