"""Command-line front end.

Every command builds a report dict; ``--format json`` prints it as sorted,
indented JSON and ``--format text`` prints a readable rendering.  Exit codes:
0 on success, 1 on a domain error (with a structured diagnostic), 2 on a
configuration or usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .cache import cache_entries, cache_get_or_compute, cache_path, clear_cache, resolve_cache_dir
from .config import (
    Context,
    JobConfig,
    build_character,
    build_cover,
    build_gset,
    build_hom,
    build_observations,
    build_places,
    load_config,
    require,
)
from .cyclotomic import Cyclotomic
from .errors import ConfigError, GCKError
from .group_core import Group, Subgroup, subgroups_up_to_conjugacy
from .named import group_by_name

log = logging.getLogger("gck")


class Report(dict):
    """A JSON-ready mapping plus the lines used for text output."""

    def __init__(self, data: dict, lines: Sequence[str]):
        super().__init__(data)
        self.lines = list(lines)


# -- shared helpers ----------------------------------------------------------


def _scalar(v) -> str:
    if isinstance(v, Cyclotomic):
        return str(v)
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else str(v)


def _matrix_lines(m) -> list[str]:
    return ["  [" + " ".join(f"{a:>2}" for a in row) + " ]" for row in m]


def _table(G: Group, args) -> Any:
    directory = None if args.no_cache else resolve_cache_dir(args.cache_dir)
    table, status = cache_get_or_compute(G, directory, enabled=not args.no_cache)
    log.debug("character table for %s: %s", G.name or G.key[:12], status)
    return table


def _context(args) -> tuple[Context, JobConfig | None]:
    if getattr(args, "config", None):
        cfg = load_config(args.config)
        return Context.from_config(cfg), cfg
    if getattr(args, "group", None):
        return Context(group_by_name(args.group)), None
    raise ConfigError("give a config file or --group")


def _flag_subgroup(ctx: Context, gens: Sequence[str] | None) -> Subgroup:
    if not gens:
        return ctx.G.trivial()
    return ctx.G.subgroup([ctx.element(g) for g in gens])


def _names(cfg: JobConfig | None) -> dict[str, str]:
    return dict(cfg.irrep_names) if cfg else {}


def _format_virtual(V, names: dict[str, str]) -> str:
    table = V.table
    terms = []
    for lab, d, m in zip(table.labels, table.degrees, V.multiplicities):
        if m == 0:
            continue
        name = f"{names.get(lab, lab)}({d}-dim)"
        body = name if abs(m) == 1 else f"{abs(m)}·{name}"
        terms.append(("⊖ " if m < 0 else "⊕ ") + body)
    if not terms:
        return "0"
    text = " ".join(terms)
    return text[2:] if text.startswith("⊕ ") else "⊖" + text[1:]


# -- commands ----------------------------------------------------------------


def cmd_group_info(args) -> Report:
    ctx, _ = _context(args)
    G = ctx.G
    table = _table(G, args)
    classes = [{"size": len(c), "representative": str(G.elements[c[0]]), "order": G.element_order(c[0])} for c in G.classes]
    subs = subgroups_up_to_conjugacy(G)
    data = {
        "group": G.name or "",
        "order": G.order,
        "degree": G.degree,
        "classes": classes,
        "subgroup_classes": len(subs),
        "character_table": {
            "labels": list(table.labels),
            "rows": [[_scalar(v) for v in chi.values] for chi in table],
        },
    }
    lines = [f"group {G.name or '<generated>'}: order {G.order}, degree {G.degree}",
             f"{len(classes)} conjugacy classes, {len(subs)} subgroups up to conjugacy"]
    lines.append("classes: " + "  ".join(f"{c['representative']}[{c['size']}]" for c in classes))
    for lab, row in zip(table.labels, data["character_table"]["rows"]):
        lines.append(f"  {lab:>4}: " + "  ".join(row))
    return Report(data, lines)


def _hom_basis_report(homs, keys=None) -> Report:
    mats = [[list(r) for r in h.matrix] for h in homs]
    data: dict[str, Any] = {"dimension": len(homs), "basis": mats}
    if keys is not None:
        data["keys"] = [{"domain_block": k[0], "codomain_block": k[1], "orbit": list(k[2])} for k in keys]
    lines = [f"{len(homs)} basis hom{'s' if len(homs) != 1 else ''}"]
    for n, m in enumerate(mats):
        lines.append(f"basis[{n}]:")
        lines.extend(_matrix_lines(m))
    return Report(data, lines)


def cmd_hom_basis(args) -> Report:
    from .permmod import hom_basis, hom_space_basis

    ctx, cfg = _context(args)
    if cfg is not None and cfg.hom is not None:
        S = build_gset(ctx, cfg.hom.domain)
        S2 = build_gset(ctx, cfg.hom.codomain)
        pairs = hom_space_basis(S, S2)
        return _hom_basis_report([h for _, h in pairs], [k for k, _ in pairs])
    H = _flag_subgroup(ctx, args.left)
    H2 = _flag_subgroup(ctx, args.right)
    return _hom_basis_report(hom_basis(ctx.G, H, H2))


def cmd_hom_check(args) -> Report:
    from .permmod import hom_coordinates

    ctx, cfg = _context(args)
    phi = build_hom(ctx, require(cfg, "hom"))
    coords = hom_coordinates(phi)
    m = [list(r) for r in phi.matrix]
    data = {
        "equivariant": True,
        "shape": list(phi.shape),
        "matrix": m,
        "coordinates": [
            {"domain_block": k[0], "codomain_block": k[1], "orbit": list(k[2]), "coefficient": c}
            for k, c in sorted(coords.items())
        ],
    }
    lines = [f"equivariant {phi.shape[0]}x{phi.shape[1]} hom"] + _matrix_lines(m)
    lines.append(f"{len(coords)} nonzero double-coset coordinates")
    return Report(data, lines)


def cmd_hom_dual(args) -> Report:
    from .permmod import dual_hom

    ctx, cfg = _context(args)
    psi = dual_hom(build_hom(ctx, require(cfg, "hom")))
    m = [list(r) for r in psi.matrix]
    return Report({"shape": list(psi.shape), "matrix": m}, ["dual hom:"] + _matrix_lines(m))


def _closure_source(ctx: Context, cfg: JobConfig | None):
    from .gset import natural_gset

    if cfg is not None and cfg.gset is not None:
        return build_gset(ctx, cfg.gset)
    return natural_gset(ctx.G)


def _gset_summary(T) -> dict:
    orbits = T.orbits()
    return {
        "size": T.size,
        "orbit_sizes": [len(o) for o in orbits],
        "stabilizer_orders": [T.stabilizer(o[0]).order for o in orbits],
    }


def cmd_closure_sn(args) -> Report:
    from .gset import discriminant_is_square, sn_closure

    ctx, cfg = _context(args)
    S = _closure_source(ctx, cfg)
    T = sn_closure(S)
    data = _gset_summary(T)
    data["discriminant_square"] = discriminant_is_square(S)
    lines = [f"S_n-closure of a degree-{S.size} G-set: {T.size} points, {len(data['orbit_sizes'])} orbits",
             "orbit sizes: " + " ".join(map(str, data["orbit_sizes"]))]
    return Report(data, lines)


def cmd_closure_g(args) -> Report:
    from .config import build_group
    from .gset import g_closure

    ctx, cfg = _context(args)
    S = _closure_source(ctx, cfg)
    C = build_group(require(cfg, "container"))
    T = g_closure(S, C)
    data = _gset_summary(T)
    data["container_order"] = C.order
    lines = [f"G-closure in a group of order {C.order}: {T.size} points, {len(data['orbit_sizes'])} orbits",
             "orbit sizes: " + " ".join(map(str, data["orbit_sizes"]))]
    return Report(data, lines)


def cmd_closure_disc(args) -> Report:
    from .gset import alternating_quotient, discriminant_is_square

    ctx, cfg = _context(args)
    S = _closure_source(ctx, cfg)
    split = alternating_quotient(S)
    square = discriminant_is_square(S)
    data = {"alternating_quotient": split, "discriminant_square": square}
    return Report(data, [f"alternating quotient: {split}", f"discriminant is a square: {'yes' if square else 'no'}"])


def cmd_rh_compute(args) -> Report:
    from .rh import component_genus, equivariant_rh

    ctx, cfg = _context(args)
    _table(ctx.G, args)
    c = build_cover(ctx, require(cfg, "cover"))
    V = equivariant_rh(c)
    g = component_genus(c)
    index = ctx.G.order // c.component_stabilizer.order
    consistent = V.degree == 2 * index * g and V.is_effective()
    names = _names(cfg)
    data = {
        "character": V.to_json(),
        "decomposition": _format_virtual(V, names),
        "degree": V.degree,
        "component_genus": g,
        "consistent": consistent,
    }
    lines = [f"V = {data['decomposition']}",
             f"degree {V.degree}, genus of each component {g}, consistent: {'yes' if consistent else 'no'}"]
    return Report(data, lines)


def _isogeny_character(ctx: Context, cfg: JobConfig):
    from .rh import equivariant_rh

    if cfg.character is not None:
        return build_character(ctx, cfg.character)
    if cfg.cover is not None:
        return equivariant_rh(build_cover(ctx, cfg.cover))
    raise ConfigError("isogeny check needs a 'character' or a 'cover' section")


def _verdict_report(verdict, V, names) -> Report:
    data = verdict.to_json()
    data["character"] = _format_virtual(V, names)
    lines = ["certified" if verdict.certified else "not certified", f"V = {data['character']}"]
    for b in verdict.blocks:
        lines.append(f"  {names.get(b.irreducible, b.irreducible)}: {b.rows}x{b.cols} block, rank {b.rank}"
                     + ("" if b.invertible else "  <- not invertible"))
    return Report(data, lines)


def cmd_isogeny_check(args) -> Report:
    from .isogeny import isogeny_criterion

    ctx, cfg = _context(args)
    _table(ctx.G, args)
    phi = build_hom(ctx, require(cfg, "hom"))
    V = _isogeny_character(ctx, cfg)
    return _verdict_report(isogeny_criterion(phi, V), V, _names(cfg))


def cmd_isogeny_expr(args) -> Report:
    from .isogeny import Namer, dual_expression, f_phi_expression, format_expression, simplify_expression

    ctx, cfg = _context(args)
    phi = build_hom(ctx, require(cfg, "hom"))
    namer = Namer(ctx.G, ctx.elements, ctx.subgroups)
    e = simplify_expression(f_phi_expression(phi))
    d = dual_expression(e)
    data = {
        "f_phi": e.to_json(ctx.elements),
        "dual": d.to_json(ctx.elements),
        "display": format_expression(e, namer).splitlines(),
        "dual_display": format_expression(d, namer).splitlines(),
    }
    lines = ["f_phi:"] + ["  " + s for s in data["display"]] + ["dual:"] + ["  " + s for s in data["dual_display"]]
    return Report(data, lines)


def _gset_description(G: Group, reps: Sequence[Subgroup], classes: Sequence[int]) -> str:
    from .gset import _generators_of

    parts = []
    for i in classes:
        H = reps[i]
        if H.order == 1:
            parts.append("G/e")
        elif H.order == G.order:
            parts.append("G/G")
        else:
            parts.append("G/<" + ", ".join(str(p) for p in _generators_of(H)) + ">")
    return " ⊔ ".join(parts)


def cmd_brauer_find(args) -> Report:
    from .chars import brauer_relations
    from .isogeny import isogeny_criterion, relation_hom

    ctx, cfg = _context(args)
    G = ctx.G
    _table(G, args)
    V = None
    if args.certify:
        cover_cfg = load_config(args.certify)
        cctx = Context.from_config(cover_cfg)
        if cctx.G != G:
            raise ConfigError("the cover file describes a different group")
        from .rh import equivariant_rh

        V = equivariant_rh(build_cover(cctx, require(cover_cfg, "cover")))
    reps = subgroups_up_to_conjugacy(G)
    rels = brauer_relations(G, max_blocks=args.max_blocks, subgroups=reps)
    out = []
    lines = [f"{len(rels)} relation{'s' if len(rels) != 1 else ''} with at most {args.max_blocks} blocks per side"]
    for n, rel in enumerate(rels):
        item: dict[str, Any] = {
            "left": _gset_description(G, reps, rel.left_classes),
            "right": _gset_description(G, reps, rel.right_classes),
            "character": [_scalar(v) for v in rel.character.values],
        }
        lines.append(f"[{n}] {item['left']}  ~  {item['right']}   character ({', '.join(item['character'])})")
        if V is not None:
            phi = relation_hom(rel.left, rel.right)
            if phi is None:
                item["verdict"] = None
                lines.append("    no invertible hom found")
            else:
                verdict = isogeny_criterion(phi, V)
                item["verdict"] = verdict.to_json()
                lines.append(f"    isogeny criterion: {'certified' if verdict.certified else 'not certified'}")
        out.append(item)
    return Report({"relations": out}, lines)


def cmd_descent_solve(args) -> Report:
    from .descent import rank_solver

    ctx, cfg = _context(args)
    _table(ctx.G, args)
    obs = build_observations(ctx, require(cfg, "observations"))
    V = build_character(ctx, cfg.vanishing) if cfg.vanishing is not None else None
    sol = rank_solver(ctx.G, obs, V)
    names = _names(cfg)
    data = sol.to_json(names)
    lines = [f"status: {sol.status}"]
    if sol.status == "inconsistent":
        lines.append(f"violated: {sol.witness}")
    else:
        for lab, m in zip(sol.table.labels, sol.multiplicities):
            lines.append(f"  m[{names.get(lab, lab)}] = {m}")
        lines.append(f"decomposition: {sol.format(names)}")
        for c in sol.conditions:
            lines.append(f"condition: {c} = 0")
    return Report(data, lines)


def cmd_sha_parity(args) -> Report:
    from .sha_parity import mu_place, sha_two_class

    cfg = load_config(args.config)
    places = build_places(require(cfg, "places"))
    per = [{"place": d.place, "mu": int(mu_place(d))} for d in places]
    total = int(sha_two_class(places))
    meaning = "a square" if total == 1 else "twice a square"
    lines = [f"mu_{p['place']} = {p['mu']}" for p in per]
    lines.append(f"#Sha_0[2^inf] is {meaning} (class {total})")
    return Report({"places": per, "square_class": total}, lines)


def cmd_cache(args) -> Report:
    directory = resolve_cache_dir(args.cache_dir)
    action = args.action
    if action == "path":
        return Report({"cache_dir": str(directory)}, [str(directory)])
    if action == "list":
        entries = [p.name for p in cache_entries(directory)]
        return Report({"cache_dir": str(directory), "entries": entries}, [str(directory)] + entries)
    if action == "clear":
        n = clear_cache(directory)
        return Report({"cache_dir": str(directory), "removed": n}, [f"removed {n} entries from {directory}"])
    # warm
    if not args.group:
        raise ConfigError("cache warm needs --group")
    G = group_by_name(args.group)
    _, status = cache_get_or_compute(G, directory)
    return Report({"group": args.group, "status": status, "path": str(cache_path(G, directory))},
                  [f"{args.group}: {status}"])


# -- argument parsing --------------------------------------------------------


def _common(p: argparse.ArgumentParser, config: bool = True, group: bool = True) -> None:
    if config:
        p.add_argument("config", nargs="?", help="JSON job config")
    if group:
        p.add_argument("--group", help="named group such as S3, D4, C2xC2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gck", description="Galois covers, permutation modules and Jacobian isogenies.")
    parser.add_argument("--version", action="version", version=f"gck {__version__}")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--cache-dir", help="character table cache directory (overrides GCK_CACHE_DIR)")
    parser.add_argument("--no-cache", action="store_true", help="always recompute character tables")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def nested(name: str, help_text: str, actions: dict[str, tuple[str, Callable]], **kw) -> None:
        p = sub.add_parser(name, help=help_text)
        s = p.add_subparsers(dest="action", required=True)
        for act, (h, fn) in actions.items():
            q = s.add_parser(act, help=h)
            _common(q, **kw.get(act, {}))
            q.set_defaults(func=fn)
            if name == "hom" and act == "basis":
                q.add_argument("--left", action="append", help="generator of the domain stabilizer (repeatable)")
                q.add_argument("--right", action="append", help="generator of the codomain stabilizer (repeatable)")
            if name == "brauer":
                q.add_argument("--max-blocks", type=int, default=4)
                q.add_argument("--certify", metavar="COVER_JSON", help="run the isogeny criterion against this cover")

    nested("group", "group data", {"info": ("order, classes and character table", cmd_group_info)})
    nested("hom", "permutation module homs", {
        "basis": ("double-coset basis", cmd_hom_basis),
        "check": ("validate a hom and give its coordinates", cmd_hom_check),
        "dual": ("transpose hom", cmd_hom_dual),
    })
    nested("closure", "S_n- and G-closures", {
        "sn": ("S_n-closure", cmd_closure_sn),
        "g": ("G-closure in a container group", cmd_closure_g),
        "disc": ("alternating quotient and discriminant", cmd_closure_disc),
    })
    nested("rh", "equivariant Riemann-Hurwitz", {"compute": ("Tate module character", cmd_rh_compute)})
    nested("isogeny", "isogeny criterion and f_phi", {
        "check": ("criterion on invariants", cmd_isogeny_check),
        "expr": ("symbolic f_phi and its dual", cmd_isogeny_expr),
    })
    nested("brauer", "Brauer relations", {"find": ("search relations", cmd_brauer_find)})
    nested("descent", "multiplicities from ranks", {"solve": ("solve the rank equations", cmd_descent_solve)})
    nested("sha", "Sha parity", {"parity": ("square class of #Sha_0[2^inf]", cmd_sha_parity)}, parity={"group": False})
    p = sub.add_parser("cache", help="character table cache")
    p.add_argument("action", choices=["path", "list", "clear", "warm"])
    p.add_argument("--group")
    p.set_defaults(func=cmd_cache)
    return parser


def _emit(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(getattr(report, "lines", [])) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        report = args.func(args)
    except ConfigError as exc:
        _diagnostic(exc.to_dict(), args.format)
        return 2
    except GCKError as exc:
        _diagnostic(exc.to_dict(), args.format)
        return 1
    _emit(report, args.format, sys.stdout)
    return 0


def _diagnostic(d: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n")
    else:
        sys.stderr.write(f"error [{d['error']}]: {d['message']}\n")


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
