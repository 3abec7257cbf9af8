"""Command-line front end.

Every subcommand prints one canonical JSON document on standard output (or
to --out); output is byte-identical for identical arguments and seed.  Exit
codes: 0 success, 1 failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from padiclog import checks
from padiclog.iwadist import CharPoint, eval_at, halflog
from padiclog.logmat import CrystalParams, log_matrix_ap0, qinv_times
from padiclog.padic import PrimeCtx
from padiclog.qexp import (ImagQuadCtx, deplete, eisenstein_depleted,
                           theta_series)
from padiclog.regdiv import MSeries, SpecFamily, chevalley_check
from padiclog.split import AlphaBetaPair, antisym_factor, signed_split
from padiclog.galimg import MatGroupGen, closure, find_tau, goursat_product_check
import padiclog.iwadist as iwadist


def _emit(obj, args):
    text = json.dumps(obj, indent=2, sort_keys=True, default=str)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_halflog(args):
    ctx = PrimeCtx(args.p, args.prec)
    cap = args.m * args.p ** args.level + 2
    h = halflog(ctx, args.sign, args.m, args.level, cap)
    out = h.to_json()
    if args.level >= 2:
        probe = eval_at(h, CharPoint(2, 0))
        out["vanishes_at_order_p2"] = probe.is_zero()
    _emit(out, args)
    return 0


def cmd_logmatrix(args):
    pr = CrystalParams.ap_zero(args.p, args.prec, args.k, args.eps)
    mat = log_matrix_ap0(pr, args.level)
    if args.qinv:
        mat = qinv_times(pr, mat)
    _emit(mat.to_json(), args)
    return 0


def cmd_split(args):
    spec = json.load(open(args.input))
    pr = CrystalParams.ap_zero(spec["p"], spec.get("prec", 12), spec["k"],
                               spec.get("eps", 1))
    n = spec["level"]
    qm = qinv_times(pr, log_matrix_ap0(pr, n))
    ab = AlphaBetaPair(iwadist.from_json(spec["alpha"], pr.ctx),
                       iwadist.from_json(spec["beta"], pr.ctx), n)
    pair = signed_split(ab, qm, n, params=pr,
                        denom_budget=spec.get("denom_exp", 0))
    _emit({"plus": pair.plus.to_json(), "minus": pair.minus.to_json(),
           "level": n}, args)
    return 0


def cmd_antisym(args):
    spec = json.load(open(args.input))
    pr = CrystalParams.ap_zero(spec["p"], spec.get("prec", 12), spec["k"],
                               spec.get("eps", 1))
    qm = qinv_times(pr, log_matrix_ap0(pr, spec["level"]))
    lval = iwadist.from_json(spec["L"], pr.ctx)
    out = antisym_factor(lval, pr, qm)
    _emit(out.to_json(), args)
    return 0


def cmd_regdiv(args):
    spec = json.load(open(args.input))
    ctx = PrimeCtx(spec["p"], spec.get("prec", 12))
    f = MSeries.from_json(spec["F"], ctx)
    g = MSeries.from_json(spec["G"], ctx)
    fam = SpecFamily(ctx, spec["points"])
    rpt = chevalley_check(f, g, fam)
    _emit({"content_ok": rpt.content_ok, "x0_ok": rpt.x0_ok,
           "points": [[str(a.a), ok] for a, ok, _ in rpt.point_results],
           "points_ok": rpt.points_ok, "direct_ok": rpt.direct_ok}, args)
    return 0


def cmd_galimg(args):
    spec = json.load(open(args.input))
    p = spec["p"]
    if "pairs" in spec:
        pairs = [(tuple(map(tuple, a)), tuple(map(tuple, b)))
                 for a, b in spec["pairs"]]
        v = goursat_product_check(p, pairs)
        _emit({"full_product": v.full_product, "order": v.order_h,
               "pr1": v.order_pr1, "pr2": v.order_pr2,
               "pr2_solvable": v.pr2_solvable, "pr1_is_sl2": v.pr1_is_sl2}, args)
        return 0
    gens = [tuple(map(tuple, g)) for g in spec["gens"]]
    grp = MatGroupGen(p, len(gens[0]), gens)
    if spec.get("find_tau"):
        cert = find_tau(grp)
        if cert is None:
            _emit({"found": False}, args)
        else:
            _emit({"found": True, "minpoly": cert.minpoly,
                   "rank_t_minus_1": cert.rank_t_minus_1,
                   "quotient_rank": cert.quotient_rank,
                   "element": [list(r) for r in cert.element]}, args)
        return 0
    _emit({"order": len(closure(grp))}, args)
    return 0


def cmd_theta(args):
    chi = None
    ctx = ImagQuadCtx(args.disc, args.power, cond=args.cond, chi=chi)
    th = theta_series(ctx, args.nmax)
    _emit(th.to_json(), args)
    return 0


def cmd_eis(args):
    e = eisenstein_depleted(args.k, args.root_order, args.zeta_index,
                            args.p, args.nmax)
    _emit(e.to_json(), args)
    return 0


def cmd_deplete(args):
    spec = json.load(open(args.input))
    from padiclog.qexp import QExpansion
    f = QExpansion(spec["ring"], spec["nmax"], spec["coeffs"])
    _emit(deplete(f, args.p).to_json(), args)
    return 0


def cmd_eval(args):
    spec = json.load(open(args.input))
    ctx = PrimeCtx(spec["p"], spec["prec"])
    f = iwadist.from_json(spec["series"], ctx)
    pt = CharPoint(spec["point"]["t"], spec["point"]["j"])
    v = eval_at(f, pt)
    _emit({"is_zero": v.is_zero(), "denom_exp": v.denom_exp,
           "coords": [[str(x.a), str(x.b)] for x in v.vec]}, args)
    return 0


def cmd_check(args):
    report = checks.run_suite(args.suite, seed=args.seed)
    _emit(report, args)
    return 0 if report["pass"] else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="padiclog")
    sub = ap.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("halflog", help="truncated Pollack half-logarithm")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--sign", choices=["plus", "minus"], required=True)
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--prec", type=int, default=12)
    q.set_defaults(func=cmd_halflog,
                   prepare=lambda a: setattr(a, "sign", "+" if a.sign == "plus" else "-"))

    q = sub.add_parser("logmatrix", help="a_p = 0 logarithmic matrix")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--prec", type=int, default=12)
    q.add_argument("--eps", type=int, default=1)
    q.add_argument("--qinv", action="store_true",
                   help="left-multiply by Q_g^(-1)")
    q.set_defaults(func=cmd_logmatrix)

    q = sub.add_parser("split", help="signed splitting of an (alpha,beta)-pair")
    q.add_argument("input")
    q.set_defaults(func=cmd_split)

    q = sub.add_parser("antisym", help="antisymmetric-pairing factorization")
    q.add_argument("input")
    q.set_defaults(func=cmd_antisym)

    q = sub.add_parser("regdiv", help="regular-ring divisibility checker")
    q.add_argument("input")
    q.set_defaults(func=cmd_regdiv)

    q = sub.add_parser("galimg", help="finite group-image checks")
    q.add_argument("input")
    q.set_defaults(func=cmd_galimg)

    q = sub.add_parser("theta", help="theta series of an imaginary quadratic field")
    q.add_argument("--disc", type=int, required=True)
    q.add_argument("--power", type=int, required=True,
                   help="infinity-type exponent t = k_g + 1")
    q.add_argument("--nmax", type=int, default=100)
    q.add_argument("--cond", type=int, default=1)
    q.set_defaults(func=cmd_theta)

    q = sub.add_parser("eis", help="p-depleted Eisenstein coefficients")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--root-order", type=int, required=True)
    q.add_argument("--zeta-index", type=int, default=1)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--nmax", type=int, default=50)
    q.set_defaults(func=cmd_eis)

    q = sub.add_parser("deplete", help="zero the coefficients divisible by p")
    q.add_argument("input")
    q.add_argument("--p", type=int, required=True)
    q.set_defaults(func=cmd_deplete)

    q = sub.add_parser("eval", help="evaluate a series at a character point")
    q.add_argument("input")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("check", help="run a named invariant suite")
    q.add_argument("--suite", required=True, choices=sorted(checks.SUITES))
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_check)

    for name, sp in sub.choices.items():
        sp.add_argument("--out", default=None, help="write the report here")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    prepare = getattr(args, "prepare", None)
    if prepare:
        prepare(args)
    try:
        return args.func(args)
    except (KeyError, ValueError, OSError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
