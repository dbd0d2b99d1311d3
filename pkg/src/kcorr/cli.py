"""Command-line interface: session execution, single operations, law runs.

Exit codes: 0 success, 1 law failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from . import bimod, config, functors, k0 as k0mod, pairing
from .corrcat import make_corr_morphism
from .errors import InvalidMorphism, KcorrError, ResolveError, ShapeError
from .exactalg import parse_field
from .laws import LAW_NAMES, law_suite
from .session import (Session, format_corr_block, format_matrix,
                      format_morphism_block, format_variety_block,
                      parse_session, print_session, _parse_matrix)

EXIT_OK = 0
EXIT_LAW_FAILURE = 1
EXIT_INPUT_ERROR = 2


def _load_session(path: str) -> Session:
    with open(path, encoding="utf-8") as handle:
        return parse_session(handle.read())


def _get(session: Session, name: str, kind: str):
    table = getattr(session, kind)
    if name not in table:
        raise ResolveError(f"no {kind[:-1]} named {name!r} in the session")
    return table[name]


def _print_object(out, name, obj, described=None):
    """Print a corr block plus any variety presentations it references."""
    described = described if described is not None else set()
    for v in (obj.X, obj.Y):
        if v.name not in described:
            described.add(v.name)
            out(format_variety_block(v))
    out(format_corr_block(name, obj))
    return described


def cmd_validate(session: Session, args, out) -> int:
    for kind, name in session.decls:
        out(f"ok {kind} {name}")
    out(f"validated {len(session.decls)} declarations")
    return EXIT_OK


def cmd_compose(session: Session, args, out) -> int:
    first = _get(session, args[0], "corrs")
    second = _get(session, args[1], "corrs")
    composite = pairing.compose_objects(first, second)
    _print_object(out, f"{args[1]}_o_{args[0]}", composite)
    return EXIT_OK


def cmd_pullback(session: Session, args, out) -> int:
    f = _get(session, args[0], "maps")
    obj = _get(session, args[1], "corrs")
    _print_object(out, f"{args[0]}_pull_{args[1]}", functors.pullback_obj(f, obj))
    return EXIT_OK


def cmd_pushforward(session: Session, args, out) -> int:
    g = _get(session, args[0], "maps")
    obj = _get(session, args[1], "corrs")
    _print_object(out, f"{args[0]}_push_{args[1]}", functors.pushforward_obj(g, obj))
    return EXIT_OK


def cmd_box(session: Session, args, out) -> int:
    f = _get(session, args[0], "maps")
    obj = _get(session, args[1], "corrs")
    _print_object(out, f"{args[0]}_box_{args[1]}", functors.box_product(f, obj))
    return EXIT_OK


def cmd_rho(session: Session, args, out) -> int:
    obj = _get(session, args[0], "corrs")
    aut = functors.to_automorphism_object(obj)
    described = _print_object(out, f"{args[0]}_base", aut.base)
    names = []
    for i, (fwd, bwd) in enumerate(aut.thetas, start=1):
        out(format_morphism_block(f"{args[0]}_t{i}", fwd,
                                  f"{args[0]}_base", f"{args[0]}_base"))
        out(format_morphism_block(f"{args[0]}_s{i}", bwd,
                                  f"{args[0]}_base", f"{args[0]}_base"))
        names.append(i)
    thetas = ", ".join(f"{args[0]}_t{i}" for i in names)
    invs = ", ".join(f"{args[0]}_s{i}" for i in names)
    out(f"aut {args[0]}_aut {{ base = {args[0]}_base; "
        f"theta = [{thetas}]; theta_inv = [{invs}] }}")
    return EXIT_OK


def cmd_rho_inv(session: Session, args, out) -> int:
    aut = _get(session, args[0], "auts")
    _print_object(out, f"{args[0]}_torus", functors.to_torus_object(aut))
    return EXIT_OK


def cmd_compare_bimodule(session: Session, args, out) -> int:
    first = _get(session, args[0], "corrs")
    second = _get(session, args[1], "corrs")
    literal = " ".join(args[2:])
    mat = _parse_matrix(literal, first.X, 0)
    try:
        make_corr_morphism(first, second, mat)
        corr_valid = True
    except (InvalidMorphism, ShapeError, KcorrError):
        corr_valid = False
    try:
        bim_valid = bimod.bimodule_hom_valid(bimod.to_bimodule(first),
                                             bimod.to_bimodule(second), mat)
    except (ShapeError, KcorrError):
        bim_valid = False
    out(f"correspondence-hom: {'valid' if corr_valid else 'invalid'}")
    out(f"bimodule-hom:       {'valid' if bim_valid else 'invalid'}")
    out(f"agree: {corr_valid == bim_valid}")
    return EXIT_OK


def cmd_k0(session: Session, args, out) -> int:
    names = args if args else list(session.corrs)
    groups: dict = {}
    for name in names:
        obj = _get(session, name, "corrs")
        groups.setdefault((obj.X, obj.Y), []).append((name, obj))
    for (x, y), members in groups.items():
        out(f"k0 report over ({x.name}, {y.name}): {len(members)} objects")
        ledger = k0mod.K0Ledger(x, y)
        by_id = {}
        for name, obj in members:
            by_id[ledger.register(obj)] = name
        searchable = (not x.vars and not x.ideal_gens
                      and not y.vars and not y.ideal_gens)
        if searchable:
            ids = sorted(by_id)
            for i in ids:
                for j in ids:
                    if j <= i:
                        continue
                    a, b = ledger.object_of(i), ledger.object_of(j)
                    if max(a.n, b.n) <= 3:
                        cert = k0mod.pt_conjugation_certificate(a, b)
                        if cert is not None:
                            k0mod.k0_register(ledger, cert)
        ranks = {}
        if not x.ideal_gens:
            for i, name in by_id.items():
                ranks[i] = k0mod.rank(ledger.object_of(i))
            out("rank map: " + ", ".join(
                f"{by_id[i]}={ranks[i]}" for i in sorted(by_id)))
        else:
            out("rank map: skipped (base variety has relations; integrality "
                "not asserted)")
        for cls in ledger.classes():
            out("class {" + ", ".join(by_id[i] for i in cls) + "}")
        ids = sorted(by_id)
        unresolved = []
        for i in ids:
            for j in ids:
                if j <= i or ledger.find(i) == ledger.find(j):
                    continue
                if ranks and ranks.get(i) != ranks.get(j):
                    continue
                unresolved.append(f"[{by_id[i]}] vs [{by_id[j]}]")
        if unresolved:
            out("unresolved (no certificate, no separating invariant): "
                + "; ".join(unresolved))
        else:
            out("brackets coincide: partition is exact")
    return EXIT_OK


def cmd_laws(session, args, out) -> int:
    parser = argparse.ArgumentParser(prog="laws", add_help=False)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--cases", type=int, default=200)
    parser.add_argument("--field", default=None)
    parser.add_argument("--format", dest="fmt", default="text",
                        choices=("text", "json-lines"))
    parser.add_argument("--law", action="append", choices=LAW_NAMES)
    opts = parser.parse_args(args)
    fields = None
    if opts.field:
        fields = (parse_field(opts.field),)
    report = law_suite(opts.seed, opts.cases, fields=fields,
                       laws=opts.law)
    out(report.to_text() if opts.fmt == "text" else report.to_json_lines())
    return report.exit_code


SESSION_COMMANDS = {
    "validate": (cmd_validate, 0, 0),
    "compose": (cmd_compose, 2, 2),
    "pullback": (cmd_pullback, 2, 2),
    "pushforward": (cmd_pushforward, 2, 2),
    "box": (cmd_box, 2, 2),
    "rho": (cmd_rho, 1, 1),
    "rho-inv": (cmd_rho_inv, 1, 1),
    "compare-bimodule": (cmd_compare_bimodule, 3, None),
    "k0": (cmd_k0, 0, None),
    "laws": (cmd_laws, 0, None),
}


def execute_command(session: Session, line: str, out) -> int:
    tokens = line.split()
    word, args = tokens[0], tokens[1:]
    if word not in SESSION_COMMANDS:
        raise ResolveError(f"unknown command {word!r}")
    handler, min_args, max_args = SESSION_COMMANDS[word]
    if word != "laws":
        if len(args) < min_args or (max_args is not None and len(args) > max_args):
            raise ResolveError(f"command {word} takes "
                               f"{min_args}{'+' if max_args is None else ''} arguments")
    return handler(session, args, out)


def run_session(session: Session, out) -> int:
    code = EXIT_OK
    for line in session.commands:
        out(f"> {line}")
        code = max(code, execute_command(session, line, out))
    return code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kcorr",
        description="Exact computer algebra for matrix-correspondence "
                    "categories over affine varieties.")
    parser.add_argument("--debug-validate", action="store_true",
                        help="re-validate every derived value and cross-check "
                             "fast paths")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute the commands of a session file")
    p_run.add_argument("session")

    p_print = sub.add_parser("print", help="parse a session and print it canonically")
    p_print.add_argument("session")

    p_laws = sub.add_parser("laws", help="run the randomized law suite")
    p_laws.add_argument("--seed", type=int, default=42)
    p_laws.add_argument("--cases", type=int, default=200)
    p_laws.add_argument("--field", default=None, help="Q or Fp:P (default: both)")
    p_laws.add_argument("--format", dest="fmt", default="text",
                        choices=("text", "json-lines"))
    p_laws.add_argument("--law", action="append", choices=LAW_NAMES,
                        help="restrict to one or more families")

    for name, nargs in (("validate", 0), ("k0", "*")):
        p = sub.add_parser(name)
        p.add_argument("session")
        if nargs == "*":
            p.add_argument("names", nargs="*")

    for name, extra in (("compose", ("PHI1", "PHI2")),
                        ("pullback", ("F", "PHI")),
                        ("pushforward", ("G", "PHI")),
                        ("box", ("F", "PHI")),
                        ("rho", ("PHI",)),
                        ("rho-inv", ("AUT",))):
        p = sub.add_parser(name)
        p.add_argument("session")
        for arg in extra:
            p.add_argument(arg.lower())

    p_cb = sub.add_parser("compare-bimodule")
    p_cb.add_argument("session")
    p_cb.add_argument("phi1")
    p_cb.add_argument("phi2")
    p_cb.add_argument("matrix", nargs="+")

    args = parser.parse_args(argv)
    out = print
    config.set_debug_validation(args.debug_validate)
    try:
        if args.command == "laws":
            fields = (parse_field(args.field),) if args.field else None
            report = law_suite(args.seed, args.cases, fields=fields, laws=args.law)
            out(report.to_text() if args.fmt == "text" else report.to_json_lines())
            return report.exit_code
        session = _load_session(args.session)
        if args.command == "run":
            return run_session(session, out)
        if args.command == "print":
            sys.stdout.write(print_session(session))
            return EXIT_OK
        if args.command == "validate":
            return cmd_validate(session, [], out)
        if args.command == "k0":
            return cmd_k0(session, args.names, out)
        if args.command == "compose":
            return cmd_compose(session, [args.phi1, args.phi2], out)
        if args.command == "pullback":
            return cmd_pullback(session, [args.f, args.phi], out)
        if args.command == "pushforward":
            return cmd_pushforward(session, [args.g, args.phi], out)
        if args.command == "box":
            return cmd_box(session, [args.f, args.phi], out)
        if args.command == "rho":
            return cmd_rho(session, [args.phi], out)
        if args.command == "rho-inv":
            return cmd_rho_inv(session, [args.aut], out)
        if args.command == "compare-bimodule":
            return cmd_compare_bimodule(
                session, [args.phi1, args.phi2] + args.matrix, out)
        parser.error(f"unhandled command {args.command}")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except KcorrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    finally:
        config.set_debug_validation(False)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
