"""Command-line front end.

    hyperlat lat info|iso ...
    hyperlat gauss roots|group|fixed|pair|reduce|mirror ...
    hyperlat vinberg --lattice ... --controller ...
    hyperlat cox classes|auto|render ...
    hyperlat verify-paper [--only id,...] [--json out]

Lattice and matrix arguments accept either an inline expression / JSON
literal or a path to a UTF-8 JSON file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import exact as ex
from . import gaussian as ga
from . import verify as vf
from . import vinberg as vb
from . import zlattice as zl
from .coxeter import diagram as dg
from .coxeter import f2
from .coxeter import richardson as rc


class CliError(Exception):
    pass


def _load(arg: str):
    """JSON from a file path or inline JSON; plain strings pass through."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(arg)
    except json.JSONDecodeError:
        return arg


def _gauss_entry(x):
    if isinstance(x, list):
        return ga.G(x[0], x[1])
    if isinstance(x, dict):
        return ga.G(x.get("re", 0), x.get("im", 0))
    return ga.G(x)


def _gauss_json(x):
    g = ex.Gauss.coerce(x)
    return _num(g.re) if g.im == 0 else [_num(g.re), _num(g.im)]


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def _zlat(arg: str) -> zl.ZLattice:
    return zl.build_z(_load(arg))


def _glat(arg: str) -> ga.GaussianLattice:
    data = _load(arg)
    if isinstance(data, list):
        data = tuple(tuple(_gauss_entry(x) for x in row) for row in data)
    elif isinstance(data, dict) and "hgram" in data:
        data = tuple(tuple(_gauss_entry(x) for x in row) for row in data["hgram"])
    return ga.build_gaussian(data)


def _involution(lat: ga.GaussianLattice, arg: str) -> ga.AntiunitaryInvolution:
    data = _load(arg)
    if isinstance(data, list):
        data = tuple(tuple(_gauss_entry(x) for x in row) for row in data)
    elif isinstance(data, dict) and "M" in data:
        data = tuple(tuple(_gauss_entry(x) for x in row) for row in data["M"])
    return ga.make_involution(lat, data)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))


def _matrix_json(m):
    return [[_num(x) for x in row] for row in m]


# ---------------------------------------------------------------------------
# lat


def cmd_lat_info(args):
    lat = _zlat(args.lattice)
    out = zl.summarize(lat).as_dict()
    out["rank"] = lat.rank
    out["gram"] = _matrix_json(lat.gram)
    _emit(out)


def cmd_lat_iso(args):
    v = zl.decide_isomorphic(_zlat(args.first), _zlat(args.second))
    out = {"verdict": v.kind, "reason": v.reason}
    if v.distinct:
        out["invariant"] = v.invariant
        out["values"] = [str(x) for x in v.values]
    if v.witness is not None:
        out["witness"] = _matrix_json(v.witness)
    _emit(out)


# ---------------------------------------------------------------------------
# gauss


def cmd_gauss_roots(args):
    lat = _glat(args.lattice)
    roots = ga.projective_roots(lat)
    _emit({"count": len(roots), "roots": [[_gauss_json(x) for x in r.vector] for r in roots]})


def cmd_gauss_group(args):
    order, gens = ga.tetraflection_group(_glat(args.lattice), args.cap)
    _emit({"order": order, "generators": len(gens)})


def cmd_gauss_fixed(args):
    lat = _glat(args.lattice)
    fixed = ga.fixed_lattice(_involution(lat, args.involution))
    out = zl.summarize(fixed.zlat).as_dict()
    out["gram"] = _matrix_json(fixed.zlat.gram)
    out["basis"] = [[_gauss_json(x) for x in row] for row in fixed.basis]
    if args.compare:
        out["compare"] = str(zl.decide_isomorphic(fixed.zlat, _zlat(args.compare)))
    _emit(out)


def cmd_gauss_pair(args):
    lat = _glat(args.lattice)
    chi = _involution(lat, args.involution)
    out = {}
    for key, c in (("chi", chi), ("i_chi", chi.times_i())):
        f = ga.fixed_lattice(c).zlat
        out[key] = {"gram": _matrix_json(f.gram), **zl.summarize(f).as_dict()}
    _emit(out)


def cmd_gauss_reduce(args):
    lat = _glat(args.lattice)
    chi = _involution(lat, args.involution)
    red = ga.reduce_mod_one_plus_i(lat, chi)
    out = {"fixed_dim": red.fixed_dim, "matrix": [list(r) for r in red.matrix]}
    if args.e7:
        m = ga.in_basis(ga.B_E7, chi.M, antilinear=True)
        cls = f2.e7_classifier().classify(ga.f2_reduce(m))
        out["class"] = cls.label
    _emit(out)


def cmd_gauss_mirror(args):
    lat = _glat(args.lattice)
    root = [_gauss_entry(x) for x in _load(args.root)]
    perp, kind = ga.mirror_orthocomplement(lat, root)
    _emit({"kind": kind, "perp_hgram": [[_gauss_json(x) for x in row] for row in perp.hgram]})


# ---------------------------------------------------------------------------
# vinberg


def _vinberg_config(args) -> vb.VinbergConfig:
    predicate = None
    lattice = _zlat(args.lattice) if args.lattice else None
    if args.predicate:
        kind, _, inv = args.predicate.partition(":")
        if kind != "gaussian" or not inv:
            raise CliError("predicate must look like gaussian:<involution>")
        host = _glat(args.host)
        chi = _involution(host, inv)
        if args.basis:
            basis = tuple(tuple(_gauss_entry(x) for x in row) for row in _load(args.basis))
            if not ga.fixed_basis_check(chi, basis):
                raise CliError("basis does not span the fixed lattice")
        else:
            basis = ga.fixed_lattice(chi).basis
        fixed = zl.ZLattice(ga.hermitian_to_real_gram(host, basis))
        if lattice is None:
            lattice = fixed
        elif lattice.gram != fixed.gram:
            raise CliError("--lattice differs from the fixed lattice in the chosen basis")
        predicate = ga.gaussian_root_predicate(host, basis)
    if lattice is None:
        raise CliError("--lattice is required")
    if args.controller:
        controller = tuple(_load(args.controller))
    else:
        controller = (1,) + (0,) * (lattice.rank - 1)
        if lattice.norm(controller) <= 0:
            controller = zl.positive_vector(lattice)
    norms = tuple(int(k) for k in args.norms.split(",")) if args.norms else None
    max_height = Fraction(args.max_height) if args.max_height else None
    return vb.VinbergConfig(lattice, controller, norms, predicate, max_height)


def vinberg_json(run: vb.VinbergRun) -> dict:
    norms, edges = run.diagram.multigraph() if run.diagram else ((), {})
    return {
        "status": run.status,
        "roots": [list(r) for r in run.roots],
        "heights": [_num(h) for h in run.heights],
        "gram": _matrix_json(run.gram()),
        "norms": list(norms),
        "edges": [[i + 1, j + 1, lab] for (i, j), lab in sorted(edges.items())],
        "cusps": run.census.cusp_types() if run.census else [],
        "finite_volume": bool(run.census and run.census.finite),
    }


def cmd_vinberg(args):
    run = vb.run_vinberg(_vinberg_config(args), args.max_roots)
    if args.emit == "json":
        _emit(vinberg_json(run))
    else:
        sys.stdout.write(dg.render(run.diagram, args.emit))
    return 0 if run.status == vb.FINISHED else 3


# ---------------------------------------------------------------------------
# cox


def _system(arg: str) -> rc.CoxeterSystem:
    data = _load(arg)
    if isinstance(data, str):
        return rc.named_system(data)
    if isinstance(data, dict):
        labels = tuple(str(x) for x in data.get("labels", ()))
        return rc.CoxeterSystem(tuple(map(tuple, data["m"])), labels)
    return rc.CoxeterSystem(tuple(map(tuple, data)))


def _diagram(arg: str) -> dg.CoxeterDiagram:
    """Diagram from a root Gram (list or {"gram": ...}) or a vinberg JSON run."""
    data = _load(arg)
    if isinstance(data, dict):
        labels = tuple(data.get("labels", ()))
        return dg.diagram_from_roots(ex.mat(data["gram"]), labels)
    return dg.diagram_from_roots(ex.mat(data))


def cmd_cox_classes(args):
    system = _system(args.system)
    classes = rc.involution_classes(system)
    names = rc.class_names(system, classes)
    out = []
    for c in classes:
        entry = {"class": names[c.representative], "type": c.type_name,
                 "members": [[system.labels[i] for i in s] for s in c.members]}
        if args.opposite:
            o = rc.opposite_class(system, classes, c)
            entry["opposite"] = names[o.representative]
        out.append(entry)
    _emit(out)


def cmd_cox_auto(args):
    d = _diagram(args.diagram)
    order, gens, elements = dg.diagram_automorphisms(d, combinatorial=args.combinatorial)
    _emit({"order": order, "generators": [list(g) for g in gens], "is_s4": dg.is_s4(elements, d.size)})


def cmd_cox_render(args):
    sys.stdout.write(dg.render(_diagram(args.diagram), args.format))


# ---------------------------------------------------------------------------
# verify-paper


def cmd_verify(args):
    selection = [s.strip() for s in args.only.split(",") if s.strip()] if args.only else None
    unknown = [s for s in selection or () if s not in vf.CHECKS]
    if unknown:
        raise CliError(f"unknown check ids {unknown}; known: {', '.join(sorted(vf.CHECKS))}")
    report = vf.verify_paper(selection)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    print("\n".join(report.summary_lines()))
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperlat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lat", help="integral lattices").add_subparsers(dest="action", required=True)
    q = lat.add_parser("info", help="invariant summary")
    q.add_argument("lattice")
    q.set_defaults(func=cmd_lat_info)
    q = lat.add_parser("iso", help="decide isomorphism")
    q.add_argument("first")
    q.add_argument("second")
    q.set_defaults(func=cmd_lat_iso)

    gauss = sub.add_parser("gauss", help="Gaussian lattices").add_subparsers(dest="action", required=True)
    q = gauss.add_parser("roots", help="projective roots")
    q.add_argument("lattice")
    q.set_defaults(func=cmd_gauss_roots)
    q = gauss.add_parser("group", help="order of the tetraflection group")
    q.add_argument("lattice")
    q.add_argument("--cap", type=int, default=None)
    q.set_defaults(func=cmd_gauss_group)
    for name, func, helptext in (("fixed", cmd_gauss_fixed, "fixed lattice of an involution"),
                                 ("pair", cmd_gauss_pair, "fixed lattices of chi and i chi"),
                                 ("reduce", cmd_gauss_reduce, "reduction modulo 1+i")):
        q = gauss.add_parser(name, help=helptext)
        q.add_argument("lattice")
        q.add_argument("involution")
        q.set_defaults(func=func)
    gauss.choices["fixed"].add_argument("--compare", help="lattice to compare against")
    gauss.choices["reduce"].add_argument("--e7", action="store_true",
                                         help="also name the W(E7) class (host L1,6)")
    q = gauss.add_parser("mirror", help="mirror type of a root")
    q.add_argument("lattice")
    q.add_argument("root", help="JSON list of entries, [re, im] for non-real ones")
    q.set_defaults(func=cmd_gauss_mirror)

    q = sub.add_parser("vinberg", help="run Vinberg's algorithm")
    q.add_argument("--lattice")
    q.add_argument("--controller", help="JSON vector (default e0)")
    q.add_argument("--norms", help="comma separated allowed root norms k, (r,r) = -k")
    q.add_argument("--predicate", help="gaussian:<involution>")
    q.add_argument("--host", default="L1,6", help="Gaussian host for the predicate")
    q.add_argument("--basis", help="Gaussian basis matrix of the fixed lattice (columns)")
    q.add_argument("--max-height")
    q.add_argument("--max-roots", type=int, default=200)
    q.add_argument("--emit", choices=("json", "dot", "ascii"), default="json")
    q.set_defaults(func=cmd_vinberg)

    cox = sub.add_parser("cox", help="Coxeter systems and diagrams").add_subparsers(dest="action", required=True)
    q = cox.add_parser("classes", help="involution classes (Richardson)")
    q.add_argument("system", help="name such as E7, or a JSON m-matrix")
    q.add_argument("--opposite", action="store_true", help="also report the class of -w")
    q.set_defaults(func=cmd_cox_classes)
    q = cox.add_parser("auto", help="diagram automorphism group")
    q.add_argument("diagram", help="JSON root Gram or vinberg JSON output")
    q.add_argument("--combinatorial", action="store_true")
    q.set_defaults(func=cmd_cox_auto)
    q = cox.add_parser("render", help="DOT or ASCII rendering")
    q.add_argument("diagram")
    q.add_argument("--format", choices=("dot", "ascii"), default="dot")
    q.set_defaults(func=cmd_cox_render)

    q = sub.add_parser("verify-paper", help="reproduce every recorded check")
    q.add_argument("--only", help="comma separated check ids")
    q.add_argument("--json", help="write the JSON report here")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except (CliError, zl.LatticeError, ga.ValidationFailed, ga.NotARoot, ga.ClosureCapExceeded,
            vb.VinbergError, rc.UnrecognizedComponent, f2.FormNotPreserved, KeyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
