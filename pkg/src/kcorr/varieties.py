"""Presented affine varieties, products and coordinate-ring pullbacks.

A variety here is nothing more than a presentation: named variables, ideal
generators and a cached reduced basis.  Products rename variables by
prefixing with the factor name (``.`` is the reserved separator), and the
flattened factor list makes the product strictly associative at the data
level - both association orders produce the identical presentation.
"""

from __future__ import annotations

from .errors import (AmbientMismatch, FieldMismatch, InvalidArity,
                     NotWellDefined, ShapeError, UnknownVariable)
from .exactalg import (DEGREVLEX, Ambient, Field, GroebnerBasis, Poly, QElem,
                       buchberger, parse_poly)

SEPARATOR = "."


class AffVariety:
    """A presented affine variety with its reduced ideal basis cached."""

    __slots__ = ("name", "vars", "ideal_gens", "field", "order", "factors",
                 "ambient", "gb", "_hash")

    def __init__(self, name, variables, ideal_gens, field, order, factors=None):
        self.name = name
        self.vars = tuple(variables)
        self.ideal_gens = tuple(ideal_gens)
        self.field = field
        self.order = order
        self.factors = factors
        self.ambient = Ambient(self.vars, field, order)
        self.gb = buchberger(self.ideal_gens, self.ambient)
        self._hash = None

    # ring access ---------------------------------------------------------

    def qelem(self, value) -> QElem:
        """Coerce a Poly, string literal, int or QElem into k[self]."""
        if isinstance(value, QElem):
            if value.basis != self.gb:
                raise AmbientMismatch(f"element not over k[{self.name}]")
            return value
        if isinstance(value, Poly):
            return QElem(self.gb, value)
        if isinstance(value, int):
            return QElem.const(self.gb, self.field.from_int(value))
        return QElem(self.gb, parse_poly(value, self.ambient))

    def var(self, name: str) -> QElem:
        return QElem.variable(self.gb, name)

    def zero(self) -> QElem:
        return QElem.zero(self.gb)

    def one(self) -> QElem:
        return QElem.one(self.gb)

    def is_point(self) -> bool:
        return not self.vars and not self.ideal_gens

    # equality is presentation equality ------------------------------------

    def _key(self):
        return (self.name, self.vars, self.ideal_gens, self.field, self.order,
                self.factors)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, AffVariety) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"AffVariety({self.name}: k[{', '.join(self.vars)}]/{len(self.ideal_gens)} gens)"


def make_variety(name, variables, ideal_gens, field: Field,
                 order: str = DEGREVLEX) -> AffVariety:
    """Build a variety from variable names and generators (Poly or literal).

    User-facing names must not contain the reserved ``.`` separator; renamed
    product variables use it.
    """
    def _check_ident(label, value):
        ok = (value and (value[0].isalpha() or value[0] == "_")
              and all(c.isalnum() or c == "_" for c in value))
        if not ok:
            raise InvalidArity(f"{label} {value!r} must be a plain identifier "
                               f"({SEPARATOR!r} is reserved for products)")

    _check_ident("variety name", name)
    variables = tuple(variables)
    for v in variables:
        _check_ident("variable", v)
    ambient = Ambient(variables, field, order)
    gens = []
    for g in ideal_gens:
        gens.append(g if isinstance(g, Poly) else parse_poly(g, ambient))
        if gens[-1].ambient != ambient:
            raise UnknownVariable(f"generator {gens[-1]} not over {variables}")
    return AffVariety(name, variables, tuple(gens), field, order)


def point(field: Field, order: str = DEGREVLEX) -> AffVariety:
    """The one-point variety pt = Spec k."""
    return make_variety("pt", [], [], field, order)


def gm_power(n: int, field: Field, order: str = DEGREVLEX) -> AffVariety:
    """The split torus of rank n: k[t1,s1,..,tn,sn]/(t_i*s_i - 1)."""
    if n <= 0:
        raise InvalidArity(f"torus rank must be positive, got {n}")
    variables = []
    for i in range(1, n + 1):
        variables.extend((f"t{i}", f"s{i}"))
    ambient = Ambient(tuple(variables), field, order)
    gens = [
        Poly.variable(ambient, f"t{i}") * Poly.variable(ambient, f"s{i}")
        - Poly.one(ambient)
        for i in range(1, n + 1)
    ]
    return AffVariety(f"Gm{n}", tuple(variables), tuple(gens), field, order)


def torus_arity(v: AffVariety) -> int | None:
    """Rank n when ``v`` is presented exactly like ``gm_power(n)``, else None."""
    m = len(v.vars)
    if m == 0 or m % 2 or v.factors is not None:
        return None
    n = m // 2
    probe = gm_power(n, v.field, v.order)
    if v.vars != probe.vars or set(v.ideal_gens) != set(probe.ideal_gens):
        return None
    return n


# -- products -----------------------------------------------------------


def _flatten(v: AffVariety):
    return v.factors if v.factors is not None else (v,)


def _factor_prefixes(factors) -> list[str]:
    names = [f.name for f in factors]
    counts = {}
    for n in names:
        counts[n] = counts.get(n, 0) + 1
    seen = {}
    prefixes = []
    for n in names:
        if counts[n] == 1:
            prefixes.append(n)
        else:
            seen[n] = seen.get(n, 0) + 1
            prefixes.append(f"{n}{SEPARATOR}{seen[n]}")
    return prefixes


def _assemble_product(factors) -> AffVariety:
    prefixes = _factor_prefixes(factors)
    variables = []
    for f, pre in zip(factors, prefixes):
        variables.extend(f"{pre}{SEPARATOR}{v}" for v in f.vars)
    field = factors[0].field
    order = factors[0].order
    ambient = Ambient(tuple(variables), field, order)
    gens = []
    for f, pre in zip(factors, prefixes):
        var_map = {v: f"{pre}{SEPARATOR}{v}" for v in f.vars}
        gens.extend(g.rename(var_map, ambient) for g in f.ideal_gens)
    name = "_x_".join(f.name for f in factors)
    return AffVariety(name, tuple(variables), tuple(gens), field, order,
                      factors=tuple(factors))


def product(x: AffVariety, y: AffVariety) -> AffVariety:
    """Product variety on the flattened factor list; strictly associative."""
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    if x.order != y.order:
        raise AmbientMismatch("factors use different monomial orders")
    return _assemble_product(_flatten(x) + _flatten(y))


def product_of(factors) -> AffVariety:
    factors = list(factors)
    if not factors:
        raise InvalidArity("empty product")
    acc = factors[0]
    for f in factors[1:]:
        acc = product(acc, f)
    return acc


def factor_embeddings(prod: AffVariety):
    """Per-factor maps ``factor var name -> prod var name``."""
    factors = _flatten(prod)
    prefixes = _factor_prefixes(factors)
    return [
        {v: f"{pre}{SEPARATOR}{v}" for v in f.vars}
        for f, pre in zip(factors, prefixes)
    ]


# -- morphisms ----------------------------------------------------------


class VarMorphism:
    """A morphism of varieties, represented by its coordinate pullback."""

    __slots__ = ("source", "target", "images", "_hash")

    def __init__(self, source: AffVariety, target: AffVariety, images):
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._hash = None

    def image_map(self) -> dict:
        return {v: img.rep for v, img in zip(self.target.vars, self.images)}

    def pull(self, value) -> QElem:
        """Pullback of an element of k[target] to k[source]."""
        q = self.target.qelem(value)
        rep = q.rep.substitute(self.image_map(), self.source.ambient)
        return QElem(self.source.gb, rep)

    def key(self):
        return (self.source, self.target, self.images)

    def __eq__(self, other):
        return isinstance(other, VarMorphism) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        imgs = ", ".join(f"{v}->{img}" for v, img in zip(self.target.vars, self.images))
        return f"VarMorphism({self.source.name} -> {self.target.name}: {imgs})"


def make_morphism(source: AffVariety, target: AffVariety, images) -> VarMorphism:
    """Validated morphism; ``images`` are indexed by the target's variables."""
    if source.field != target.field:
        raise FieldMismatch(f"{source.field} vs {target.field}")
    if len(images) != len(target.vars):
        raise InvalidArity(
            f"expected {len(target.vars)} images for {target.name}, got {len(images)}")
    images = tuple(source.qelem(v) for v in images)
    image_map = {v: img.rep for v, img in zip(target.vars, images)}
    for rel in target.ideal_gens:
        value = QElem(source.gb, rel.substitute(image_map, source.ambient))
        if not value.is_zero():
            raise NotWellDefined(
                f"relation {rel} of {target.name} maps to {value}, not 0")
    return VarMorphism(source, target, images)


def identity_map(v: AffVariety) -> VarMorphism:
    return VarMorphism(v, v, tuple(v.var(name) for name in v.vars))


def compose_maps(outer: VarMorphism, inner: VarMorphism) -> VarMorphism:
    """The composite outer o inner; pullbacks compose the other way round."""
    if inner.target != outer.source:
        raise AmbientMismatch(
            f"cannot compose {outer.source.name}->{outer.target.name} "
            f"after {inner.source.name}->{inner.target.name}")
    return VarMorphism(inner.source, outer.target,
                       tuple(inner.pull(img) for img in outer.images))


def product_morphism(f: VarMorphism, g: VarMorphism) -> VarMorphism:
    """Componentwise product  f x g : src(f) x src(g) -> tgt(f) x tgt(g)."""
    src = product(f.source, g.source)
    tgt = product(f.target, g.target)
    src_embeds = factor_embeddings(src)
    n_left = len(_flatten(f.source))
    # positional alignment: vars of f.source appear in src in the same order
    left_names = [name for emb in src_embeds[:n_left] for name in emb.values()]
    right_names = [name for emb in src_embeds[n_left:] for name in emb.values()]
    f_rename = dict(zip(f.source.vars, left_names))
    g_rename = dict(zip(g.source.vars, right_names))
    images = []
    for img in f.images:
        images.append(QElem(src.gb, img.rep.rename(f_rename, src.ambient)))
    for img in g.images:
        images.append(QElem(src.gb, img.rep.rename(g_rename, src.ambient)))
    return VarMorphism(src, tgt, tuple(images))


def split_projections(prod: AffVariety, left: AffVariety, right: AffVariety):
    """The two projections of ``prod = product(left, right)``."""
    if prod != product(left, right):
        raise ShapeError(f"{prod.name} is not the product of {left.name} and {right.name}")
    embeds = factor_embeddings(prod)
    n_left = len(_flatten(left))
    left_names = [name for emb in embeds[:n_left] for name in emb.values()]
    right_names = [name for emb in embeds[n_left:] for name in emb.values()]
    q_left = VarMorphism(prod, left,
                         tuple(prod.var(n) for n in left_names))
    q_right = VarMorphism(prod, right,
                          tuple(prod.var(n) for n in right_names))
    return q_left, q_right
