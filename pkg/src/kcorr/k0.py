"""Certificate-driven Grothendieck group of a correspondence category.

Isomorphism of objects is only ever *established* by an explicit certificate
(there is no decision procedure for idempotent conjugacy over polynomial
rings at this scale), and only ever *refuted* by an invariant; the rank of
the idempotent over the fraction field is the invariant shipped here.  A
ledger therefore brackets each class query: certificates give the lower
bound (merges), ranks the upper bound (separations), and the report says
when the brackets disagree rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corrcat import (CorrObject, IsoCertificate, direct_sum,
                      make_corr_morphism, verify_iso)
from .errors import (AmbientMismatch, InvalidCertificate, NotIntegral,
                     UnknownObject)
from .exactalg import (Matrix, QElem, invert_scalar_matrix,
                       rank_over_fraction_field, scalar_value)
from .pairing import compose_objects, compose_morphisms


def rank(obj: CorrObject, assume_integral: bool = False) -> int:
    """Rank of the idempotent over Frac(k[X]); X must be integral.

    A zero ideal is integral on the nose; any other presentation needs the
    caller's assertion, since primality is not decided here.
    """
    if obj.X.ideal_gens and not assume_integral:
        raise NotIntegral(
            f"{obj.X.name} has relations; pass assume_integral=True if its ideal is prime")
    if obj.n == 0:
        return 0
    return rank_over_fraction_field(obj.p)


def _is_point_like(v) -> bool:
    return not v.vars and not v.ideal_gens


def _column_space_basis(mat: Matrix):
    """Indices of a maximal independent set among the columns (scalar entries)."""
    field = mat.basis.ambient.field
    cols = [[scalar_value(mat[i, j]) for i in range(mat.nrows)]
            for j in range(mat.ncols)]
    chosen = []
    pivots = []  # echelon rows: (pivot index, vector)
    for j, col in enumerate(cols):
        vec = list(col)
        for piv, pvec in pivots:
            factor = vec[piv]
            if factor:
                vec = [field.sub(v, field.mul(factor, w)) for v, w in zip(vec, pvec)]
        lead = next((i for i, v in enumerate(vec) if v), None)
        if lead is None:
            continue
        inv = field.inv(vec[lead])
        vec = [field.mul(inv, v) for v in vec]
        pivots.append((lead, vec))
        chosen.append(j)
    return chosen, cols


def pt_conjugation_certificate(a: CorrObject, b: CorrObject) -> IsoCertificate | None:
    """Search for an isomorphism between small objects over a point base.

    Works by matching column spaces: both idempotents are put in the
    standard frame (image basis first, kernel basis after), and equal ranks
    give mutually inverse maps between the images even when the sizes n
    differ.  Returns None when the ranks differ.  Restricted to (pt, pt)
    shapes with n <= 3, the regime the exhaustive k0 checks run in.
    """
    if not (_is_point_like(a.X) and _is_point_like(a.Y)):
        raise AmbientMismatch("conjugation search is only available over (pt, pt)")
    if a.X != b.X or a.Y != b.Y:
        raise AmbientMismatch("objects over different (X, Y)")
    if a.n > 3 or b.n > 3:
        raise AmbientMismatch("conjugation search is restricted to n <= 3")

    basis = a.X.gb
    rank_a = len(_column_space_basis(a.p)[0]) if a.n else 0
    rank_b = len(_column_space_basis(b.p)[0]) if b.n else 0
    if rank_a != rank_b:
        return None
    r = rank_a

    def frame(p: Matrix) -> Matrix | None:
        n = p.nrows
        identity = Matrix.identity(basis, n)
        im_idx, im_cols = _column_space_basis(p)
        ker_idx, ker_cols = _column_space_basis(identity - p)
        cols = [im_cols[j] for j in im_idx] + [ker_cols[j] for j in ker_idx]
        if len(cols) != n:
            return None
        rows = [[QElem.const(basis, cols[j][i]) for j in range(n)] for i in range(n)]
        return Matrix(basis, rows, n, n)

    frame_a = frame(a.p)
    frame_b = frame(b.p)
    if frame_a is None or frame_b is None:
        return None
    frame_a_inv = invert_scalar_matrix(frame_a)
    frame_b_inv = invert_scalar_matrix(frame_b)
    if frame_a_inv is None or frame_b_inv is None:
        return None
    one = QElem.one(basis)
    zero = QElem.zero(basis)
    bridge = Matrix(basis, [[one if i == j and i < r else zero
                             for j in range(a.n)] for i in range(b.n)],
                    b.n, a.n)
    fwd = make_corr_morphism(a, b, frame_b * bridge * frame_a_inv)
    bwd = make_corr_morphism(b, a, frame_a * bridge.transpose() * frame_b_inv)
    cert = IsoCertificate(fwd, bwd)
    return cert if verify_iso(cert) else None


# -- the ledger -------------------------------------------------------------


@dataclass(frozen=True)
class K0Class:
    """Canonical integer combination of partition representatives."""

    terms: tuple  # ((representative id, coefficient), ...) sorted by id

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "K0Class(0)"
        body = " + ".join(f"{c}*[{i}]" for i, c in self.terms)
        return f"K0Class({body})"


class K0Ledger:
    """Union-find over registered objects, refined only by verified witnesses."""

    def __init__(self, X, Y):
        self.X = X
        self.Y = Y
        self._ids: dict[CorrObject, int] = {}
        self._objects: list[CorrObject] = []
        self._parent: list[int] = []
        self._sum_rules: dict[int, tuple[int, int]] = {}

    # registration ---------------------------------------------------------

    def register(self, obj: CorrObject) -> int:
        if obj.X != self.X or obj.Y != self.Y:
            raise AmbientMismatch("object over a different (X, Y) than the ledger")
        existing = self._ids.get(obj)
        if existing is not None:
            return existing
        idx = len(self._objects)
        self._ids[obj] = idx
        self._objects.append(obj)
        self._parent.append(idx)
        return idx

    def object_of(self, idx: int) -> CorrObject:
        return self._objects[idx]

    def id_of(self, obj: CorrObject) -> int:
        idx = self._ids.get(obj)
        if idx is None:
            raise UnknownObject(f"{obj!r} was never registered")
        return idx

    def __len__(self):
        return len(self._objects)

    # union-find -----------------------------------------------------------

    def find(self, idx: int) -> int:
        root = idx
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[idx] != root:
            self._parent[idx], idx = root, self._parent[idx]
        return root

    def _union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            if rj < ri:
                ri, rj = rj, ri
            self._parent[rj] = ri

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for idx in range(len(self._objects)):
            groups.setdefault(self.find(idx), []).append(idx)
        return [groups[r] for r in sorted(groups)]


def k0_register(ledger: K0Ledger, cert: IsoCertificate) -> K0Ledger:
    """Merge the endpoint classes of a verified certificate; idempotent."""
    if not verify_iso(cert):
        raise InvalidCertificate("certificate round trips are not identities")
    i = ledger.register(cert.fwd.src)
    j = ledger.register(cert.fwd.dst)
    ledger._union(i, j)
    return ledger


def k0_register_sum(ledger: K0Ledger, whole: CorrObject, left: CorrObject,
                    right: CorrObject) -> K0Ledger:
    """Record [whole] = [left] + [right]; ``whole`` must be the literal sum."""
    if whole != direct_sum(left, right):
        raise InvalidCertificate("object is not the direct sum of the given parts")
    w = ledger.register(whole)
    l = ledger.register(left)
    r = ledger.register(right)
    # a size-0 part makes whole identical to the other part: nothing to record
    if left.n and right.n:
        ledger._sum_rules.setdefault(w, (l, r))
    return ledger


def k0_class(ledger: K0Ledger, formal_sum) -> K0Class:
    """Canonical form of an integer combination of registered objects.

    Sum rules split registered direct sums into their parts, then ids merge
    through the partition; the result is monotone under new certificates.
    """
    work: list[tuple[int, int]] = []
    for coeff, obj in formal_sum:
        work.append((int(coeff), ledger.id_of(obj)))
    expanded: dict[int, int] = {}
    while work:
        coeff, idx = work.pop()
        if coeff == 0 or ledger.object_of(idx).n == 0:
            continue  # the zero object is the zero class
        rule = ledger._sum_rules.get(idx)
        if rule is not None:
            work.append((coeff, rule[0]))
            work.append((coeff, rule[1]))
            continue
        root = ledger.find(idx)
        expanded[root] = expanded.get(root, 0) + coeff
    terms = tuple(sorted((i, c) for i, c in expanded.items() if c != 0))
    return K0Class(terms)


def k0_compose(ledger_first: K0Ledger, ledger_second: K0Ledger,
               sum_first, sum_second, target: K0Ledger) -> K0Class:
    """Bilinear composition of classes on chosen representatives.

    Representatives are the partition roots of the given objects, composed
    pairwise and registered into the target ledger over (first.X, second.Y).
    """
    out = []
    cls_first = k0_class(ledger_first, sum_first)
    cls_second = k0_class(ledger_second, sum_second)
    for i, ci in cls_first.terms:
        rep_i = ledger_first.object_of(ledger_first.find(i))
        for j, cj in cls_second.terms:
            rep_j = ledger_second.object_of(ledger_second.find(j))
            composite = compose_objects(rep_i, rep_j)
            target.register(composite)
            out.append((ci * cj, composite))
    return k0_class(target, out)


def transport_certificate(cert: IsoCertificate, other: CorrObject,
                          side: str = "right") -> IsoCertificate:
    """Compose a certificate with the identity of ``other`` on one side.

    Well-definedness of class composition is enforced by tests through these
    transported witnesses.
    """
    from .corrcat import identity_morphism
    ident = identity_morphism(other)
    if side == "right":
        return IsoCertificate(compose_morphisms(ident, cert.fwd),
                              compose_morphisms(ident, cert.bwd))
    return IsoCertificate(compose_morphisms(cert.fwd, ident),
                          compose_morphisms(cert.bwd, ident))
