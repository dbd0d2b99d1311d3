"""The line-oriented session format: parsing, resolution and printing.

A session declares a field, varieties, variety maps, correspondences,
morphisms and automorphism tuples, then lists commands.  Declarations are
validated in file order, so every reference must point backwards.  Printing
is canonical (normal-form entries, fixed layout) and ``parse(print(s))``
reproduces the session exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .corrcat import CorrMorphism, CorrObject, make_corr_morphism, make_correspondence
from .errors import KcorrError, ParseError, ResolveError
from .exactalg import Field, Matrix, QElem, QQ, parse_field, parse_poly
from .functors import AutObject, make_aut_object
from .varieties import AffVariety, VarMorphism, make_morphism, make_variety

FORMAT_VERSION = 1

COMMAND_WORDS = frozenset({
    "validate", "compose", "pullback", "pushforward", "box", "rho",
    "rho-inv", "k0", "compare-bimodule", "laws",
})


@dataclass
class Session:
    field: Field = QQ
    varieties: dict = dc_field(default_factory=dict)
    maps: dict = dc_field(default_factory=dict)
    corrs: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    auts: dict = dc_field(default_factory=dict)
    aut_specs: dict = dc_field(default_factory=dict)
    decls: list = dc_field(default_factory=list)  # (kind, name) in file order
    commands: list = dc_field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Session):
            return NotImplemented
        return (self.field == other.field and self.varieties == other.varieties
                and self.maps == other.maps and self.corrs == other.corrs
                and self.morphisms == other.morphisms and self.auts == other.auts
                and self.aut_specs == other.aut_specs and self.decls == other.decls
                and self.commands == other.commands)

    def _namespace(self):
        names = {}
        for kind in ("varieties", "maps", "corrs", "morphisms", "auts"):
            for name in getattr(self, kind):
                names[name] = kind
        return names

    def lookup(self, name: str, kinds=("varieties", "maps", "corrs",
                                       "morphisms", "auts")):
        for kind in kinds:
            table = getattr(self, kind)
            if name in table:
                return kind, table[name]
        raise ResolveError(f"unknown name {name!r}")


# -- low-level text helpers -------------------------------------------------


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _split_top_level(body: str, sep: str, line: int):
    """Split on ``sep`` outside brackets and parentheses."""
    parts = []
    depth = 0
    current = []
    for ch in body:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced brackets", line, 1)
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError("unbalanced brackets", line, 1)
    parts.append("".join(current))
    return parts


def _parse_bracket_list(text: str, line: int):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"expected a [...] list, got {text!r}", line, 1)
    inner = text[1:-1].strip()
    if not inner:
        return []
    return [p.strip() for p in _split_top_level(inner, ",", line)]


def _parse_matrix(text: str, variety: AffVariety, line: int) -> Matrix:
    rows_text = _parse_bracket_list(text, line)
    rows = []
    for row_text in rows_text:
        entries = _parse_bracket_list(row_text, line)
        rows.append([QElem(variety.gb, parse_poly(e, variety.ambient, line))
                     for e in entries])
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ParseError("ragged matrix literal", line, 1)
    return Matrix(variety.gb, rows, len(rows), ncols)


def _parse_body(body: str, line: int):
    """``key = value`` pairs from a ``{...}`` block; keys may repeat."""
    pairs = []
    for chunk in _split_top_level(body, ";", line):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ParseError(f"expected key = value, got {chunk!r}", line, 1)
        key, value = chunk.split("=", 1)
        pairs.append((key.strip(), value.strip()))
    return pairs


# -- declaration handling -----------------------------------------------------


def _expect_unique(session: Session, name: str, line: int):
    if name in session._namespace():
        raise ParseError(f"name {name!r} is already declared", line, 1)


def _arrow_split(header: str, line: int):
    if ":" not in header or "->" not in header:
        raise ParseError("expected NAME : SRC -> DST", line, 1)
    name, rest = header.split(":", 1)
    src, dst = rest.split("->", 1)
    return name.strip(), src.strip(), dst.strip()


def _declare_variety(session, header, body, line):
    name = header.strip()
    _expect_unique(session, name, line)
    fields = dict(_parse_body(body, line))
    if set(fields) - {"vars", "ideal"}:
        raise ParseError(f"variety block takes vars and ideal, got {sorted(fields)}", line, 1)
    var_names = _parse_bracket_list(fields.get("vars", "[]"), line)
    variety = make_variety(name, var_names, [], session.field)
    gens = [parse_poly(g, variety.ambient, line)
            for g in _parse_bracket_list(fields.get("ideal", "[]"), line)]
    session.varieties[name] = make_variety(name, var_names, gens, session.field)
    session.decls.append(("variety", name))


def _declare_map(session, header, body, line):
    name, src_name, dst_name = _arrow_split(header, line)
    _expect_unique(session, name, line)
    src = session.varieties.get(src_name)
    dst = session.varieties.get(dst_name)
    if src is None or dst is None:
        raise ResolveError(f"map {name!r} references undeclared variety (line {line})")
    assignments = dict(_parse_body(body, line))
    images = []
    for v in dst.vars:
        if v not in assignments:
            raise ParseError(f"map {name!r} missing image for {v!r}", line, 1)
        images.append(parse_poly(assignments.pop(v), src.ambient, line))
    if assignments:
        raise ParseError(f"map {name!r} assigns unknown variables {sorted(assignments)}",
                         line, 1)
    session.maps[name] = make_morphism(src, dst, images)
    session.decls.append(("map", name))


def _declare_corr(session, header, body, line):
    name, src_name, dst_name = _arrow_split(header, line)
    _expect_unique(session, name, line)
    x = session.varieties.get(src_name)
    y = session.varieties.get(dst_name)
    if x is None or y is None:
        raise ResolveError(f"corr {name!r} references undeclared variety (line {line})")
    n = None
    unit = None
    gens = {}
    for key, value in _parse_body(body, line):
        if key == "n":
            n = int(value)
        elif key == "unit":
            unit = _parse_matrix(value, x, line)
        elif key.startswith("gen "):
            gens[key[4:].strip()] = _parse_matrix(value, x, line)
        else:
            raise ParseError(f"unknown corr field {key!r}", line, 1)
    if n is None or unit is None:
        raise ParseError(f"corr {name!r} needs n and unit", line, 1)
    images = []
    for v in y.vars:
        if v not in gens:
            raise ParseError(f"corr {name!r} missing gen {v!r}", line, 1)
        images.append(gens.pop(v))
    if gens:
        raise ParseError(f"corr {name!r} has gens for unknown variables {sorted(gens)}",
                         line, 1)
    session.corrs[name] = make_correspondence(x, y, n, unit, images)
    session.decls.append(("corr", name))


def _declare_morphism(session, header, body, line):
    name, src_name, dst_name = _arrow_split(header, line)
    _expect_unique(session, name, line)
    src = session.corrs.get(src_name)
    dst = session.corrs.get(dst_name)
    if src is None or dst is None:
        raise ResolveError(f"morphism {name!r} references undeclared corr (line {line})")
    fields = dict(_parse_body(body, line))
    if set(fields) != {"matrix"}:
        raise ParseError(f"morphism block takes exactly matrix, got {sorted(fields)}",
                         line, 1)
    mat = _parse_matrix(fields["matrix"], src.X, line)
    if mat.nrows == 0 and mat.ncols == 0 and (dst.n == 0 or src.n == 0):
        mat = Matrix.zeros(src.X.gb, dst.n, src.n)
    session.morphisms[name] = make_corr_morphism(src, dst, mat)
    session.decls.append(("morphism", name))


def _declare_aut(session, header, body, line):
    name = header.strip()
    _expect_unique(session, name, line)
    fields = dict(_parse_body(body, line))
    if set(fields) != {"base", "theta", "theta_inv"}:
        raise ParseError("aut block takes base, theta and theta_inv", line, 1)
    base_name = fields["base"].strip()
    base = session.corrs.get(base_name)
    if base is None:
        raise ResolveError(f"aut {name!r} references undeclared corr {base_name!r} "
                           f"(line {line})")
    theta_names = _parse_bracket_list(fields["theta"], line)
    inv_names = _parse_bracket_list(fields["theta_inv"], line)
    if len(theta_names) != len(inv_names):
        raise ParseError("theta and theta_inv have different lengths", line, 1)
    pairs = []
    for t, s in zip(theta_names, inv_names):
        fwd = session.morphisms.get(t)
        bwd = session.morphisms.get(s)
        if fwd is None or bwd is None:
            raise ResolveError(f"aut {name!r} references undeclared morphism "
                               f"(line {line})")
        pairs.append((fwd, bwd))
    session.auts[name] = make_aut_object(base, pairs)
    session.aut_specs[name] = (base_name, tuple(theta_names), tuple(inv_names))
    session.decls.append(("aut", name))


_DECL_HANDLERS = {
    "variety": _declare_variety,
    "map": _declare_map,
    "corr": _declare_corr,
    "morphism": _declare_morphism,
    "aut": _declare_aut,
}


def parse_session(text: str) -> Session:
    """Parse and resolve a session; declarations validate in file order."""
    session = Session()
    lines = text.splitlines()
    i = 0
    saw_field = False
    saw_decl = False
    while i < len(lines):
        line_no = i + 1
        raw = _strip_comment(lines[i]).strip()
        i += 1
        if not raw:
            continue
        word = raw.split(None, 1)[0]
        if word == "format":
            version = raw.split(None, 1)[1].strip() if " " in raw else ""
            if version != str(FORMAT_VERSION):
                raise ParseError(f"unsupported format {version!r}", line_no, 1)
            continue
        if word == "field":
            if saw_decl:
                raise ParseError("field must precede all declarations", line_no, 1)
            spec = raw.split(None, 1)[1].strip() if " " in raw else ""
            try:
                session.field = parse_field(spec.replace(" ", ":", 1))
            except KcorrError as exc:
                raise ParseError(str(exc), line_no, 1) from exc
            saw_field = True
            continue
        if word in _DECL_HANDLERS:
            saw_decl = True
            rest = raw[len(word):].strip()
            if "{" not in rest:
                raise ParseError(f"{word} declaration needs a {{...}} block", line_no, 1)
            header, brace_part = rest.split("{", 1)
            depth = brace_part.count("{") - brace_part.count("}") + 1
            body_chunks = [brace_part]
            while depth > 0:
                if i >= len(lines):
                    raise ParseError("unterminated block", line_no, 1)
                cont = _strip_comment(lines[i])
                i += 1
                depth += cont.count("{") - cont.count("}")
                body_chunks.append(cont)
            body = " ".join(body_chunks)
            body = body[:body.rfind("}")]
            try:
                _DECL_HANDLERS[word](session, header, body, line_no)
            except (ParseError, ResolveError):
                raise
            except KcorrError as exc:
                raise type(exc)(f"in {word} at line {line_no}: {exc}") from exc
            continue
        if word in COMMAND_WORDS:
            session.commands.append(" ".join(raw.split()))
            continue
        raise ParseError(f"unknown statement {word!r}", line_no, 1)
    return session


# -- printing ----------------------------------------------------------------


def format_matrix(mat: Matrix) -> str:
    rows = ", ".join(
        "[" + ", ".join(str(e) for e in row) + "]" for row in mat.rows)
    return f"[{rows}]"


def format_field(field: Field) -> str:
    if field == QQ:
        return "field Q"
    return f"field Fp {field.p}"


def format_variety_block(v: AffVariety) -> str:
    vars_part = ", ".join(v.vars)
    ideal_part = ", ".join(str(g) for g in v.ideal_gens)
    return f"variety {v.name} {{ vars = [{vars_part}]; ideal = [{ideal_part}] }}"


def format_map_block(name: str, f: VarMorphism) -> str:
    body = "; ".join(f"{v} = {img}" for v, img in zip(f.target.vars, f.images))
    return (f"map {name} : {f.source.name} -> {f.target.name} {{ {body} }}"
            if body else
            f"map {name} : {f.source.name} -> {f.target.name} {{ }}")


def format_corr_block(name: str, obj: CorrObject) -> str:
    parts = [f"n = {obj.n}", f"unit = {format_matrix(obj.p)}"]
    parts.extend(f"gen {v} = {format_matrix(a)}"
                 for v, a in zip(obj.Y.vars, obj.gen_images))
    return (f"corr {name} : {obj.X.name} -> {obj.Y.name} "
            f"{{ {'; '.join(parts)} }}")


def format_morphism_block(name: str, mor: CorrMorphism, src_name: str,
                          dst_name: str) -> str:
    return (f"morphism {name} : {src_name} -> {dst_name} "
            f"{{ matrix = {format_matrix(mor.mat)} }}")


def print_session(session: Session) -> str:
    lines = [f"format {FORMAT_VERSION}", format_field(session.field)]
    corr_names = {}
    for name, obj in session.corrs.items():
        corr_names.setdefault(obj, name)
    for kind, name in session.decls:
        if kind == "variety":
            lines.append(format_variety_block(session.varieties[name]))
        elif kind == "map":
            lines.append(format_map_block(name, session.maps[name]))
        elif kind == "corr":
            lines.append(format_corr_block(name, session.corrs[name]))
        elif kind == "morphism":
            mor = session.morphisms[name]
            lines.append(format_morphism_block(
                name, mor, corr_names.get(mor.src, "?"),
                corr_names.get(mor.dst, "?")))
        elif kind == "aut":
            base_name, thetas, invs = session.aut_specs[name]
            lines.append(
                f"aut {name} {{ base = {base_name}; "
                f"theta = [{', '.join(thetas)}]; "
                f"theta_inv = [{', '.join(invs)}] }}")
    lines.extend(session.commands)
    return "\n".join(lines) + "\n"
