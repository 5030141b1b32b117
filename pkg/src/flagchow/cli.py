"""Command-line entry point.

Exit status: 0 on success, 2 when a verification fails, 1 on usage or
input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dickson, motive, steenrod
from .errors import FlagchowError
from .gralg import graded_groups, hilbert_series, load_presentation, regular_sequence_check
from .modules import GradedModule

CHECK_FAILED = 2
USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


class CheckFailed(Exception):
    pass


def _emit(args, payload, text):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _range(text):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 0..6, got {text!r}") from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _module_text(M: GradedModule):
    return M.format() if not M.is_zero() else "0"


def _load(args):
    from .flag import catalogue
    if getattr(args, "catalogue", None):
        pres = catalogue(args.catalogue).presentation
        if pres is None:
            raise FlagchowError(f"{args.catalogue} is not a presentation")
        return pres
    path = Path(args.file)
    if not path.exists():
        # bundled data may be named by file name alone
        try:
            pres = catalogue(path.stem).presentation
        except KeyError:
            pres = None
        if pres is None:
            raise FlagchowError(f"no such file: {args.file}")
        return pres
    return load_presentation(path)


# subcommands

def cmd_dickson(args):
    data = dickson.dickson_classes(args.n, args.p, method=args.method)
    data = dickson.with_euler_class(data)
    if args.p == 2 and args.d_classes:
        data.d = dickson.d_classes(args.n)
    payload = data.to_json()
    lines = [f"c_{{{args.n},{i}}} = {f}" for i, f in sorted(data.c.items(), reverse=True) if i < args.n]
    lines.append(f"e_{args.n} = {data.e}")
    lines.append(f"e^(p-1) = {data.scalar} * c_{{{args.n},0}}")
    for i, f in sorted(data.d.items(), reverse=True):
        if i < args.n:
            lines.append(f"d_{{{args.n},{i}}} = {f}")
    if args.verify:
        chk = dickson.verify_mimura_kameko(args.n, args.p)
        payload["composites"] = [{"i": i, "composite": str(a), "e_times_c": str(b),
                                  "scalar": lam} for i, a, b, lam in chk.rows]
        payload["verified"] = chk.ok
        lines.append(chk.describe())
        _emit(args, payload, "\n".join(lines))
        if not chk.ok:
            raise CheckFailed
        return
    _emit(args, payload, "\n".join(lines))


def cmd_milnor(args):
    T = steenrod.bundled_table(args.table)
    if args.verify_recursion:
        rep = steenrod.verify_Q_recursion(T, args.imax, args.bound, args.order)
        payload = {"schema": 1, "table": args.table, "ok": rep.ok, "checked": rep.checked,
                   "counterexample": None if rep.counterexample is None else
                   [str(x) for x in rep.counterexample]}
        _emit(args, payload, rep.describe())
        if rep.ok is not True:
            raise CheckFailed
        return
    if args.expr is None:
        raise FlagchowError("give --expr, or --verify-recursion")
    from .parse import parse_poly
    f = parse_poly(args.expr, T.ring)
    if args.hat is not None:
        g = steenrod.milnor_composite(args.hat, args.max, f, T)
        what = f"composite without Q{args.hat} up to Q{args.max}"
    elif args.op == "Q":
        g = steenrod.apply_Q(args.index, f, T)
        what = f"Q{args.index}"
    else:
        g = steenrod.apply_power(args.index, f, T)
        what = f"P{args.index}"
    _emit(args, {"schema": 1, "input": str(f), "operation": what, "result": str(g)}, str(g))


def cmd_graded(args):
    pres = _load(args)
    lo, hi = args.range if args.range else (0, pres.truncation)
    if args.mod_p:
        pres = pres.mod_p()
    M = graded_groups(pres, lo, hi)
    _emit(args, {"schema": 1, "name": pres.name, "p": pres.p, "groups": M.to_json()}, _module_text(M))


def cmd_hilbert(args):
    pres = _load(args).mod_p()
    bound = args.bound if args.bound is not None else pres.truncation
    H = hilbert_series(pres, bound)
    payload = {"schema": 1, "name": pres.name, "p": pres.p, "bound": bound,
               "coefficients": H.as_list(), "total": H.total()}
    text = " ".join(map(str, H.as_list())) + f"\ntotal {H.total()}"
    if args.regular:
        rep = regular_sequence_check(pres.ring, pres.relations, bound)
        payload["regular"] = bool(rep)
        text += f"\nregular sequence: {bool(rep)}"
    _emit(args, payload, text)


def cmd_catalogue(args):
    from .flag import catalogue, catalogue_keys, grothendieck_quotient
    if not args.key:
        keys = catalogue_keys()
        _emit(args, {"schema": 1, "keys": keys}, "\n".join(keys))
        return
    entry = catalogue(args.key)
    if args.quotient:
        q = grothendieck_quotient(entry)
        M = graded_groups(q, 0, q.truncation)
        _emit(args, {"schema": 1, "key": args.key, "quotient": q.to_json(), "groups": M.to_json()},
              _module_text(M))
        return
    payload = entry.to_json()
    if entry.presentation is not None:
        P = entry.presentation
        text = "\n".join([f"{P.name} over Z_({P.p}) ({P.mode}), truncation {P.truncation}",
                          "generators: " + ", ".join(f"{g.name} (deg {g.chow_degree})" for g in P.ring.generators),
                          "relations:"] + [f"  {r}" for r in P.relations])
    else:
        text = "\n".join(f"{n} = {t}   (deg {d})" for n, t, _, d in entry.table.entries)
    _emit(args, payload, text)


def cmd_twisted(args):
    from .flag import type_I_data, type_I_twisted
    ring, bbars, p = type_I_data(args.group)
    res = type_I_twisted(ring, bbars, p, args.bound)
    payload = {"schema": 1, "group": args.group, "p": p, "bound": res.bound,
               "relations": [str(r) for r in res.presentation.relations],
               "hilbert": res.hilbert.as_list(), "comparison": res.comparison.as_list(),
               "quotient_total": res.quotient_hilbert.total(), "matches": res.matches}
    text = "\n".join([f"twisted:    {' '.join(map(str, res.hilbert.as_list()))}",
                      f"comparison: {' '.join(map(str, res.comparison.as_list()))}",
                      f"match: {res.matches}"])
    _emit(args, payload, text)
    if not res.matches:
        raise CheckFailed


def cmd_quadric(args):
    from .flag import (QuadricSpec, pfister_max, pfister_min, quadric_embedding_bounds, quadric_qx,
                       split_quadric)
    if args.embedding:
        try:
            fx, fy, d = args.embedding.split(":")
            rep = quadric_embedding_bounds(_int_list(fx), _int_list(fy), int(d))
        except (ValueError, argparse.ArgumentTypeError) as e:
            raise FlagchowError(f"--embedding expects FX:FY:D, e.g. 0,0,3:0,0,0:3 ({e})") from None
        _emit(args, {"schema": 1, "ok": rep.ok, "violations": [list(v) for v in rep.violations]},
              "pass" if rep.ok else "fail at j = " + ", ".join(str(v[0]) for v in rep.violations))
        if not rep.ok:
            raise CheckFailed
        return
    if args.pfister_max is not None:
        spec = pfister_max(args.pfister_max)
    elif args.pfister_min is not None:
        spec = pfister_min(args.pfister_min)
    elif args.split is not None:
        spec = split_quadric(args.split)
    elif args.ell is not None and args.f is not None:
        spec = QuadricSpec(args.ell, _int_list(args.f))
    else:
        raise FlagchowError("choose --pfister-max, --pfister-min, --split, or --ell with --f")
    res = quadric_qx(spec)
    text = [_module_text(res.module), f"d = {res.d}"]
    if spec.anisotropic:
        text.append(f"Tate indices {res.tate_indices}, partition {res.partition_ok}")
    text.append(f"routes agree: {res.consistent}")
    _emit(args, res.to_json(), "\n".join(text))
    if not res.consistent or (args.check_partition and not res.partition_ok):
        raise CheckFailed


def cmd_rost(args):
    if args.morava is not None:
        M = motive.morava_localize(motive.rost_res_omega(args.n, args.p), args.morava)
        _emit(args, {"schema": 1, "n": args.n, "p": args.p, "m": args.morava, "grading": M.grading,
                     "groups": M.to_json(), "total_rank": M.total_free_rank()},
              _module_text(M) + f"\ntotal rank {M.total_free_rank()}")
        return
    if args.res_omega:
        B = motive.rost_res_omega(args.n, args.p)
        text = "\n".join(["generators: " + ", ".join(f"{g} (deg {d})" for g, d in B.generators)] +
                         [f"  {B.format_relation(r)} = 0" for r in B.relations])
        _emit(args, B.to_json(), text)
        return
    M = motive.rost_chow(args.n, args.p)
    _emit(args, {"schema": 1, "n": args.n, "p": args.p, "groups": M.to_json()}, _module_text(M))


def cmd_degv(args):
    table = motive.degv_table_from_json(Path(args.file).read_text())
    try:
        out = motive.degv_infer(table, args.dim, True if args.split_index else None)
    except motive.InconsistentFactsError as e:
        print(str(e), file=sys.stderr)
        raise CheckFailed from None
    payload = out.to_json()
    text = [f"{g.name}: deg_v = {g.deg_v}" for g in out.generators]
    if args.qx:
        try:
            Q = motive.qx_module(out)
        except (motive.UnresolvedError, motive.PreconditionError) as e:
            _emit(args, payload, "\n".join(text))
            print(str(e), file=sys.stderr)
            raise CheckFailed from None
        payload["qx"] = Q.to_json()
        text.append(_module_text(Q))
    _emit(args, payload, "\n".join(text))


def cmd_e8check(args):
    from .flag import e8_consistency
    rep = e8_consistency()
    lines = [f"degree errors: {rep.degree_errors or 'none'}"]
    for r in rep.rewrites:
        lines.append(f"{r.operation}({r.source}) = {r.image}  ->  {r.target} "
                     f"{'(unit ' + str(r.unit) + ')' if r.ok else 'MISMATCH'}")
    for k, v in rep.lift_degrees.items():
        lines.append(f"F4 {k}: {v}")
    _emit(args, rep.to_json(), "\n".join(lines))
    if not rep.ok:
        raise CheckFailed


def cmd_so_image(args):
    img = steenrod.so_steenrod_image(args.m, use_table=not args.binomial)
    top = (args.m - 1) // 2
    expected = [i for i in range(1, top + 1) if (i + 1) & i == 0]
    ok = img.unhit == expected
    payload = {"schema": 1, "m": args.m, "unhit": img.unhit, "expected_unhit": expected, "ok": ok,
               "witnesses": {str(i): list(w) for i, w in sorted(img.witnesses.items())}}
    lines = [f"y{2 * i}: " + (f"Sq^{2 * img.witnesses[i][1]} y{2 * img.witnesses[i][0]}" if h else "not hit")
             for i, h in sorted(img.hit.items())]
    _emit(args, payload, "\n".join(lines))
    if not ok:
        raise CheckFailed


def build_parser():
    ap = _Parser(prog="flagchow", description="Chow rings of twisted flag varieties and related checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="JSON output")
        p.set_defaults(func=func)
        return p

    p = add("dickson", cmd_dickson, "Dickson classes, Euler class, Milnor composites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--method", choices=["auto", "orbit", "recursion"], default="auto")
    p.add_argument("--d-classes", action="store_true", help="also the x-classes d_{n,i} (p = 2)")
    p.add_argument("--verify", action="store_true", help="compare e_n c_{n,i} with Milnor composites")

    p = add("milnor", cmd_milnor, "apply Q_i, P^k or composites from a bundled table")
    p.add_argument("--table", required=True, help="bzp_<n>_p<p>, so_<m>, g2 or f4")
    p.add_argument("--expr")
    p.add_argument("--op", choices=["Q", "P"], default="Q")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--hat", type=int, help="omitted index of a composite")
    p.add_argument("--max", type=int, default=0, help="largest index of a composite")
    p.add_argument("--verify-recursion", action="store_true")
    p.add_argument("--imax", type=int, default=2)
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--order", choices=["PQ-QP", "QP-PQ"], default="PQ-QP")

    for name, func, help_ in (("graded", cmd_graded, "graded groups of a presentation"),
                              ("hilbert", cmd_hilbert, "Hilbert series mod p")):
        p = add(name, func, help_)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--file")
        src.add_argument("--catalogue")
        if name == "graded":
            p.add_argument("--range", type=_range)
            p.add_argument("--mod-p", action="store_true")
        else:
            p.add_argument("--bound", type=int)
            p.add_argument("--regular", action="store_true", help="test the relations as a regular sequence")

    p = add("catalogue", cmd_catalogue, "list or show bundled presentations")
    p.add_argument("key", nargs="?")
    p.add_argument("--quotient", action="store_true", help="kill the torus generators")

    p = add("twisted", cmd_twisted, "type (I) twisted presentation against its additive model")
    p.add_argument("--group", choices=["g2", "f4"], required=True)
    p.add_argument("--bound", type=int)

    p = add("quadric", cmd_quadric, "Q(X) of an anisotropic quadric")
    p.add_argument("--pfister-max", type=int)
    p.add_argument("--pfister-min", type=int)
    p.add_argument("--split", type=int, metavar="L")
    p.add_argument("--ell", type=int)
    p.add_argument("--f", help="exponents f_0,f_1,...")
    p.add_argument("--check-partition", action="store_true")
    p.add_argument("--embedding", help="FX:FY:D, check f_j(Y)-D <= f_j(X) <= f_j(Y)+D")

    p = add("rost", cmd_rost, "Chow groups of the Rost motive and its restriction image")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--res-omega", action="store_true")
    p.add_argument("--morava", type=int, metavar="M")

    p = add("degv", cmd_degv, "infer deg_v from a fact table")
    p.add_argument("--file", required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--split-index", action="store_true")
    p.add_argument("--qx", action="store_true", help="also print Q(X)")

    add("e8check", cmd_e8check, "consistency of the E8 b-table")

    p = add("so-image", cmd_so_image, "classes y_2i of SO(m) hit by Steenrod squares")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--binomial", action="store_true", help="use the binomial rule instead of the table")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CheckFailed:
        return CHECK_FAILED
    except (FlagchowError, KeyError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
