"""Command line interface: ``platonic-unfold <command> [surface] [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .surface import (
    ValidationError,
    euler_characteristic,
    genus,
    is_rotary,
    rotation_group,
    schlafli,
    vertex_orbits,
)
from .theorems import full_report
from .unfolding import monodromy, monodromy_group, unfold

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FAILED = 3


class InputError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="platonic-unfold", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, generators=False, allow_all=False):
        cmd = sub.add_parser(name, help=help)
        cmd.add_argument("name", nargs="?", help="catalog surface name")
        cmd.add_argument("--file", metavar="PATH", help="surface JSON file")
        cmd.add_argument("--format", choices=("text", "json"), default="text")
        if generators:
            cmd.add_argument("--generators", action="store_true", help="print generators in cycle notation")
        if allow_all:
            cmd.add_argument("--all", action="store_true", help="every catalog surface, in catalog order")
        return cmd

    cat = sub.add_parser("catalog", help="list the built-in surfaces")
    cat.add_argument("--format", choices=("text", "json"), default="text")
    add("info", "symbol, counts, genus, rotary")
    add("unfold", "degree of the unfolding and number of sheets")
    add("monodromy", "monodromy group of the unfolding over Pi_p", generators=True)
    add("rot", "rotation group", generators=True)
    add("verify", "check every theorem on a surface", allow_all=True)
    return parser


def _surface(args):
    if (args.name is None) == (args.file is None):
        raise InputError("give exactly one of a catalog name or --file PATH")
    try:
        if args.file is not None:
            return args.file, catalog.load(args.file)
        return args.name, catalog.get(args.name)
    except catalog.UnknownName:
        raise InputError(f"unknown catalog surface {args.name!r}") from None
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    except (catalog.ParseError, ValidationError) as exc:
        raise InputError(str(exc)) from None


def _emit(args, data: dict, lines: list[str], out) -> None:
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _catalog(args, out) -> int:
    rows = catalog.listing()
    if args.format == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        for r in rows:
            q = "?" if r["q"] is None else r["q"]
            symbol = f"{{{r['p']},{q}}}"
            out.write(f"{r['name']:<20} {symbol:<8} faces {r['faces']:<3} genus {r['genus']}\n")
    return EXIT_OK


def _info(args, out) -> int:
    name, s = _surface(args)
    try:
        sym = schlafli(s)
        q = sym.q
    except ValueError:
        q = None
    v = len(vertex_orbits(s))
    data = {
        "name": name,
        "p": s.p,
        "q": q,
        "faces": s.m,
        "vertices": v,
        "edges": s.num_pairs // 2,
        "euler_characteristic": euler_characteristic(s),
        "genus": genus(s),
        "rotary": is_rotary(s),
    }
    lines = [
        f"surface   {name}",
        f"symbol    {{{s.p},{'?' if q is None else q}}}",
        f"faces     {s.m}",
        f"vertices  {v}",
        f"edges     {s.num_pairs // 2}",
        f"genus     {data['genus']}",
        f"rotary    {'yes' if data['rotary'] else 'no'}",
    ]
    _emit(args, data, lines, out)
    return EXIT_OK


def _unfold(args, out) -> int:
    name, s = _surface(args)
    u = unfold(s)
    n = monodromy(u).n
    _emit(args, {"k": u.k, "n": n}, [f"k {u.k}", f"n {n}"], out)
    return EXIT_OK


def _monodromy(args, out) -> int:
    name, s = _surface(args)
    u = unfold(s)
    setup = monodromy(u)
    group = monodromy_group(u)
    gens = [g.cycle_string() for g in setup.generators]
    data = {"k": u.k, "n": setup.n, "order": group.order(), "generators": gens}
    lines = [f"order {group.order()}", f"generators {len(gens)}"]
    if getattr(args, "generators", False):
        lines += [f"gen{i} = {g}" for i, g in enumerate(gens)]
    _emit(args, data, lines, out)
    return EXIT_OK


def _rot(args, out) -> int:
    name, s = _surface(args)
    group = rotation_group(s)
    data = {"order": group.order(), "degree": group.degree}
    lines = [f"order {group.order()}"]
    if args.generators:
        gens = [g.cycle_string() for g in group.strong_generators()]
        data["generators"] = gens
        lines += [f"gen{i} = {g}" for i, g in enumerate(gens)]
    _emit(args, data, lines, out)
    return EXIT_OK


def _verify(args, out) -> int:
    if args.all:
        if args.name or args.file:
            raise InputError("--all takes no surface")
        targets = [(name, entry.surface) for name, entry in catalog.entries().items()]
    else:
        targets = [_surface(args)]
    reports = [(name, full_report(s)) for name, s in targets]
    if args.format == "json":
        if args.all:
            doc = [{"name": name, **r.to_dict()} for name, r in reports]
        else:
            doc = reports[0][1].to_dict()
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for name, r in reports:
            out.write(f"== {name}\n")
            out.write(r.to_table())
            failed = r.failed()
            out.write(f"result    {'all checks passed' if not failed else 'FAILED: ' + ', '.join(failed)}\n")
    return EXIT_OK if all(r.all_passed() for _, r in reports) else EXIT_FAILED


COMMANDS = {
    "catalog": _catalog,
    "info": _info,
    "unfold": _unfold,
    "monodromy": _monodromy,
    "rot": _rot,
    "verify": _verify,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
