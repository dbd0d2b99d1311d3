"""Bimodule presentations of correspondences and the strict pullback layer.

A correspondence over (X, Y) determines a module over k[X x Y]: the image of
its idempotent with X acting by central scalars and Y through the generator
matrices.  Morphism validity on the bimodule side is the same corner and
intertwining condition, checked independently here so the two predicates can
be compared.  Big bimodules key every pullback by the normal form of the
composite base-change morphism, so chains of pullbacks agree on the nose
with the pullback along the composite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corrcat import CorrObject, corner_eval, make_correspondence
from .errors import AmbientMismatch, InvalidObject, ShapeError
from .exactalg import Matrix, QElem
from .varieties import AffVariety, VarMorphism, compose_maps, identity_map, product


@dataclass(frozen=True)
class BimodulePresentation:
    """A presented k[X x Y]-module: idempotent image plus action matrices."""

    X: AffVariety
    Y: AffVariety
    ambient: AffVariety  # the product X x Y
    n: int
    proj: Matrix
    x_actions: tuple  # one matrix per X-coordinate, the scalar action x*proj
    y_actions: tuple  # one matrix per Y-coordinate

    def __repr__(self):
        return f"BimodulePresentation({self.ambient.name}, n={self.n})"


def _check_presentation(X, Y, n, proj, y_actions):
    basis = X.gb
    if proj.basis != basis:
        raise AmbientMismatch(f"projector not over k[{X.name}]")
    if proj.nrows != n or proj.ncols != n:
        raise ShapeError(f"projector must be {n}x{n}")
    if len(y_actions) != len(Y.vars):
        raise ShapeError(f"need {len(Y.vars)} action matrices for {Y.name}")
    if proj * proj != proj:
        raise InvalidObject("projector is not idempotent")
    for name, a in zip(Y.vars, y_actions):
        if a.nrows != n or a.ncols != n or a.basis != basis:
            raise ShapeError(f"bad action matrix for {name}")
        if proj * a != a or a * proj != a:
            raise InvalidObject(f"action of {name} is not fixed by the projector")
    m = len(y_actions)
    for i in range(m):
        for j in range(i + 1, m):
            if y_actions[i] * y_actions[j] != y_actions[j] * y_actions[i]:
                raise InvalidObject(
                    f"actions of {Y.vars[i]} and {Y.vars[j]} do not commute")
    for rel in Y.ideal_gens:
        if not corner_eval(proj, y_actions, rel).is_zero():
            raise InvalidObject(f"target relation {rel} does not act by zero")


def make_presentation(X: AffVariety, Y: AffVariety, n: int, proj: Matrix,
                      y_actions) -> BimodulePresentation:
    """Validated presentation; the X-actions are derived, not supplied."""
    y_actions = tuple(y_actions)
    _check_presentation(X, Y, n, proj, y_actions)
    x_actions = tuple(proj.scale_elem(X.var(v)) for v in X.vars)
    return BimodulePresentation(X, Y, product(X, Y), n, proj, x_actions, y_actions)


def to_bimodule(obj: CorrObject) -> BimodulePresentation:
    """Repackage a correspondence as its bimodule presentation."""
    return make_presentation(obj.X, obj.Y, obj.n, obj.p, obj.gen_images)


def from_bimodule(pres: BimodulePresentation) -> CorrObject:
    """The constructive inverse: re-tag the presentation as a correspondence."""
    return make_correspondence(pres.X, pres.Y, pres.n, pres.proj, pres.y_actions)


def bimodule_hom_valid(p: BimodulePresentation, q: BimodulePresentation,
                       mat: Matrix) -> bool:
    """Module-homomorphism test over k[X x Y].

    True when the matrix is fixed by the projectors and intertwines every X-
    and Y-action.  The X-action check is redundant for central scalars but is
    performed literally, as this predicate is the independent counterpart of
    morphism validity on the correspondence side.
    """
    if p.X != q.X or p.Y != q.Y:
        raise AmbientMismatch("presentations over different (X, Y)")
    if mat.nrows != q.n or mat.ncols != p.n:
        raise ShapeError(f"matrix must be {q.n}x{p.n}")
    if mat.basis != p.proj.basis:
        raise AmbientMismatch("matrix over a different ring")
    if q.proj * mat * p.proj != mat:
        return False
    for a_src, a_dst in zip(p.x_actions, q.x_actions):
        if mat * a_src != a_dst * mat:
            return False
    for a_src, a_dst in zip(p.y_actions, q.y_actions):
        if mat * a_src != a_dst * mat:
            return False
    return True


# -- strictly functorial pullback layer -----------------------------------


def _pull_presentation(g: VarMorphism, pres: BimodulePresentation) -> BimodulePresentation:
    basis = g.source.gb
    image_map = g.image_map()
    ambient = g.source.ambient

    def pull(mat):
        return mat.map_entries(
            lambda e: QElem(basis, e.rep.substitute(image_map, ambient)), basis)

    return make_presentation(g.source, pres.Y, pres.n, pull(pres.proj),
                             tuple(pull(a) for a in pres.y_actions))


def _push_presentation(h: VarMorphism, pres: BimodulePresentation) -> BimodulePresentation:
    actions = tuple(corner_eval(pres.proj, pres.y_actions, img.rep)
                    for img in h.images)
    return make_presentation(pres.X, h.target, pres.n, pres.proj, actions)


class BigBimodule:
    """A presentation together with a strict system of base changes.

    The object remembers the presentation at its root base and the composite
    base-change morphism reaching the current base; every restriction is
    computed from the root along that composite and cached under the
    composite's normal-form key.  Pulling back along g then g1 therefore
    yields data identical to pulling back along g o g1.
    """

    __slots__ = ("root", "morphism", "_cache")

    def __init__(self, root: BimodulePresentation, morphism: VarMorphism,
                 cache: dict | None = None):
        self.root = root
        self.morphism = morphism
        self._cache = {} if cache is None else cache

    # identity & equality ---------------------------------------------------

    def key(self):
        return (self.root, self.morphism.key())

    def __eq__(self, other):
        return isinstance(other, BigBimodule) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def base_variety(self) -> AffVariety:
        return self.morphism.source

    def cache_snapshot(self) -> dict:
        return dict(self._cache)

    def __repr__(self):
        return (f"BigBimodule({self.root!r} via "
                f"{self.base_variety.name} -> {self.root.X.name})")


def big_lift(obj: CorrObject) -> BigBimodule:
    """Lift a correspondence to the strict layer; the cache starts empty."""
    return BigBimodule(to_bimodule(obj), identity_map(obj.X))


def restrict_base(big: BigBimodule) -> BimodulePresentation:
    """The presentation at the current base; cached per composite morphism."""
    key = big.morphism.key()
    cached = big._cache.get(key)
    if cached is None:
        if big.morphism == identity_map(big.root.X):
            cached = big.root
        else:
            cached = _pull_presentation(big.morphism, big.root)
        big._cache[key] = cached
    return cached


def big_pullback(g: VarMorphism, big: BigBimodule) -> BigBimodule:
    """Base change along g; strictly compatible with composition of maps."""
    if g.target != big.base_variety:
        raise AmbientMismatch(
            f"pullback morphism lands in {g.target.name}, object based at "
            f"{big.base_variety.name}")
    result = BigBimodule(big.root, compose_maps(big.morphism, g), big._cache)
    restrict_base(result)
    return result


def big_pushforward(h: VarMorphism, big: BigBimodule) -> BigBimodule:
    """Relabel the module side along h: Y -> Y'; the base chain is kept."""
    if h.source != big.root.Y:
        raise AmbientMismatch(
            f"pushforward morphism starts at {h.source.name}, object over "
            f"{big.root.Y.name}")
    result = BigBimodule(_push_presentation(h, big.root), big.morphism)
    restrict_base(result)
    return result
