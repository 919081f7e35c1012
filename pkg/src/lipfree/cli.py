"""Command-line front end.

Every command prints one JSON report on stdout. Exit codes: 0 when a
verdict was computed (failures and violations included), 2 on input or
parse errors, 3 on an internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .codec import (
    _Ctx,
    absnorm_from_obj,
    absnorm_to_obj,
    decomposition_from_obj,
    decomposition_to_obj,
    function_from_obj,
    function_to_obj,
    instance_from_obj,
    instance_to_obj,
    load_file,
    molecule_from_obj,
    molecule_to_obj,
    oracle_from_obj,
    oracle_to_obj,
    pp_from_obj,
    pp_to_obj,
    space_from_obj,
    space_to_obj,
    vector_from_obj,
    vector_to_obj,
)
from .doh import (
    DohViolation,
    doh_candidate_check,
    doh_objective,
    doh_threshold,
    sltp_failure_to_doh,
    ssd2p_chain_verify,
    term_norms,
)
from .errors import InputError, InvariantBreach, ParseError
from .freespace import aenorm, aenorm_oracle, optimal_decomposition
from .gallery import F1, F2, c01_gallery, prop31b_witness
from .lipschitz import dual_witness, lip_norm, pairing
from .norms import CubeOracle
from .rational import fmt, parse_rational
from .selftest import DEFAULT_SEED, run_selftest
from .trapezoid import TrapezoidInstance, check_ltp, check_sltp, pair_ratio, sltp_modulus


def _q(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise ParseError(None, str(exc)) from None


def _report(command, inputs, verdict, certificate=None, disclaimer=None) -> dict:
    out = {"version": __version__, "command": command, "inputs": inputs, "verdict": verdict}
    if certificate is not None:
        out["certificate"] = certificate
    if disclaimer is not None:
        out["disclaimer"] = disclaimer
    return out


def _space(args):
    obj, ctx = load_file(args.space)
    return space_from_obj(obj, ctx)


def _molecule(args, space):
    obj, ctx = load_file(args.molecule)
    if space is None:
        return molecule_from_obj(obj, ctx)
    return molecule_from_obj(obj, ctx, space=space)


def _maybe_space(args):
    return _space(args) if getattr(args, "space", None) else None


# --- free space / Lipschitz ---------------------------------------------------

def cmd_metric_validate(args):
    space = _space(args)
    return _report("metric validate", {"space": space_to_obj(space)}, "valid",
                   {"points": len(space.points), "base": space.base})


def cmd_aenorm(args):
    mol = _molecule(args, _maybe_space(args))
    return _report("aenorm", molecule_to_obj(mol), fmt(aenorm(mol)))


def cmd_decompose(args):
    mol = _molecule(args, _maybe_space(args))
    target = _q(args.target_cost) if args.target_cost else None
    dec = optimal_decomposition(mol, target)
    inputs = molecule_to_obj(mol)
    if target is not None:
        inputs["target_cost"] = fmt(target)
    return _report("decompose", inputs, fmt(dec.cost),
                   {"terms": decomposition_to_obj(dec), "aenorm": fmt(aenorm(mol))})


def _function(args, space):
    obj, ctx = load_file(args.function)
    return function_from_obj(obj, ctx, space=space) if space else function_from_obj(obj, ctx)


def cmd_lipnorm(args):
    f = _function(args, _maybe_space(args))
    return _report("lipnorm", function_to_obj(f), fmt(lip_norm(f)))


def cmd_pair(args):
    space = _maybe_space(args)
    f = _function(args, space)
    mol = _molecule(args, space or f.space)
    inputs = {"function": function_to_obj(f), "molecule": molecule_to_obj(mol, False)}
    return _report("pair", inputs, fmt(pairing(f, mol)))


def cmd_witness(args):
    mol = _molecule(args, _maybe_space(args))
    f = dual_witness(mol)
    return _report("witness", molecule_to_obj(mol), fmt(pairing(f, mol)),
                   {"values": function_to_obj(f, False)["values"], "lip": fmt(lip_norm(f))})


def cmd_duality_check(args):
    mol = _molecule(args, _maybe_space(args))
    norm = aenorm(mol)
    f = dual_witness(mol)
    cert = {"aenorm": fmt(norm), "pairing": fmt(pairing(f, mol)), "lip": fmt(lip_norm(f)),
            "witness": function_to_obj(f, False)["values"],
            "decomposition": decomposition_to_obj(optimal_decomposition(mol))}
    if len(mol.positive()) <= 4 and len(mol.negative()) <= 4:
        cert["oracle"] = fmt(aenorm_oracle(mol))
    ok = cert["pairing"] == cert["aenorm"] and lip_norm(f) <= 1 \
        and cert.get("oracle", cert["aenorm"]) == cert["aenorm"]
    if not ok:
        raise InvariantBreach(f"duality check failed: {cert}")
    return _report("duality-check", molecule_to_obj(mol), "strong duality holds", cert)


# --- trapezoid --------------------------------------------------------------------

def _points(text):
    return [p.strip() for p in text.split(",") if p.strip()]


def _pool(text):
    if not text:
        return ()
    pool = []
    for item in text.split(","):
        u, sep, v = item.partition(":")
        if not sep:
            raise ParseError(None, f"pool entries are u:v, got {item!r}")
        pool.append((u.strip(), v.strip()))
    return tuple(pool)


def _trap_report(rep):
    return [{"pair": list(ev.pair),
             "works": ev.works,
             **({} if ev.works else {"inequality": ev.violation.kind,
                                     "tuple": list(ev.violation.points),
                                     "lhs": fmt(ev.violation.lhs),
                                     "rhs": fmt(ev.violation.rhs)})}
            for ev in rep.evidence]


def cmd_sltp_check(args):
    space = _space(args)
    inst = TrapezoidInstance(space, _points(args.n), _pool(args.pool), _q(args.eps))
    rep = check_ltp(inst) if args.ltp else check_sltp(inst)
    inputs = {"space": space_to_obj(space), "N": list(inst.N),
              "pool": [list(p) for p in inst.pool], "eps": fmt(inst.eps),
              "property": rep.property}
    verdict = rep.verdict + (f" {rep.witness[0]}:{rep.witness[1]}" if rep.witness else "")
    return _report("sltp check", inputs, verdict, {"evidence": _trap_report(rep)})


def cmd_sltp_modulus(args):
    space = _space(args)
    N = _points(args.n)
    inst = TrapezoidInstance(space, N, _pool(args.pool))
    mod = sltp_modulus(space, N, inst.pool)
    ratios = [{"pair": [u, v], "ratio": fmt(pair_ratio(space, N, u, v))} for u, v in inst.pool]
    inputs = {"space": space_to_obj(space), "N": N, "pool": [list(p) for p in inst.pool]}
    return _report("sltp modulus", inputs, fmt(mod), {"ratios": ratios})


# --- DOH ---------------------------------------------------------------------------

def _instance_cert(inst, value):
    norms = term_norms(inst)
    return {"instance": instance_to_obj(inst), "objective": fmt(value),
            "norms": [[fmt(p), fmt(m)] for p, m in norms],
            "threshold": fmt(doh_threshold(inst))}


def cmd_doh_objective(args):
    obj, ctx = load_file(args.instance)
    inst = instance_from_obj(obj, ctx)
    value = doh_objective(inst, require_unit_y=not args.any_y)
    verdict = "violation" if value < 0 else "no violation"
    inputs = instance_to_obj(inst)
    if args.any_y:
        inputs["any_y"] = True
    return _report("doh objective", inputs, verdict, _instance_cert(inst, value))


def cmd_doh_search(args):
    obj, ctx = load_file(args.problem)
    oracle = oracle_from_obj(ctx.need(obj, "oracle"), ctx)
    E = [vector_from_obj(oracle, v, ctx) for v in ctx.need(obj, "E", list)]
    y = vector_from_obj(oracle, ctx.need(obj, "y"), ctx)
    eps = _q(args.eps) if args.eps else ctx.q(ctx.need(obj, "eps"), "eps")
    ground = _points(args.ground) if args.ground else None
    res = doh_candidate_check(oracle, E, eps, y, args.nmax, ground)
    inputs = {"oracle": oracle_to_obj(oracle), "E": [vector_to_obj(x) for x in E],
              "y": vector_to_obj(y), "eps": fmt(eps), "nmax": args.nmax}
    if ground:
        inputs["ground"] = ground
    if isinstance(res, DohViolation):
        return _report("doh search", inputs, "violation",
                       _instance_cert(res.instance, res.objective))
    disclaimer = {"text": res.disclaimer, "n_max": res.n_max, "assignments": res.assignments,
                  "ground": list(res.ground) if res.ground else None}
    return _report("doh search", inputs, "ok", {"min_objective": fmt(res.min_value)}, disclaimer)


def cmd_doh_from_sltp(args):
    obj, ctx = load_file(args.problem)
    space = space_from_obj(ctx.need(obj, "space"), ctx)
    nu = decomposition_from_obj(ctx.need(obj, "nu", list), space, ctx)
    certs = []
    for c in ctx.need(obj, "certs", list):
        if not isinstance(c, list) or len(c) != 2:
            raise ParseError(None, "certificates are [kind, [points...]]")
        certs.append((c[0], tuple(c[1])))
    N = obj.get("N")
    res = sltp_failure_to_doh(space, nu, certs, ctx.q(ctx.need(obj, "eps"), "eps"),
                              ctx.q(ctx.need(obj, "delta"), "delta"), N)
    inputs = {"space": space_to_obj(space), "nu": decomposition_to_obj(nu),
              "certs": [[k, list(t)] for k, t in certs], "eps": obj["eps"],
              "delta": fmt(res.delta)}
    if N is not None:
        inputs["N"] = N
    cert = _instance_cert(res.instance, res.objective)
    cert["target_norm"] = fmt(res.target_norm)
    cert["r_over_R"] = fmt(res.r_over_R)
    return _report("doh from-sltp", inputs, "violation" if res.violated else "no violation", cert)


def cmd_doh_chain_verify(args):
    obj, ctx = load_file(args.problem)
    inst = instance_from_obj(obj, ctx)
    o = inst.oracle
    f_map = [vector_from_obj(o, v, ctx) for v in ctx.need(obj, "f", list)]
    g = vector_from_obj(o, ctx.need(obj, "g"), ctx)
    v = ssd2p_chain_verify(o, inst.E, inst.eps, f_map, g, inst)
    inputs = instance_to_obj(inst)
    inputs["f"] = [vector_to_obj(f) for f in f_map]
    inputs["g"] = vector_to_obj(g)
    cert = {"lines": [[ln.label, fmt(ln.value)] for ln in v.lines],
            "objective": fmt(v.objective),
            "premises": {str(k): ({kk: fmt(vv) for kk, vv in val.items()}
                                  if isinstance(val, dict) else fmt(val))
                         for k, val in v.premises.items()}}
    return _report("doh chain-verify", inputs, "chain holds" if v.holds else "chain broken", cert)


# --- gallery -------------------------------------------------------------------------

def cmd_gallery_c01(args):
    eps = _q(args.eps)
    if args.g:
        obj, ctx = load_file(args.g)
        g = pp_from_obj(obj, ctx)
    else:
        g = F2 - F1
    r = c01_gallery(eps, g)
    cert = {"g1": pp_to_obj(r.g1), "g2": pp_to_obj(r.g2),
            "norms": [fmt(v) for v in r.norms], "sum": fmt(r.total),
            "threshold": fmt(r.threshold), "margin": fmt(r.margin)}
    return _report("gallery c01", {"eps": fmt(eps), "g": pp_to_obj(g)}, r.verdict, cert)


def cmd_gallery_abs_sum(args):
    eps = _q(args.eps)
    ctx = _Ctx()
    norm = absnorm_from_obj(args.norm if args.norm in ("l1", "linf") else args.norm, ctx)
    X = CubeOracle("l1", args.dim)
    e1 = (1,) + (0,) * (args.dim - 1)
    s = 1 / norm(1, 1)
    y1 = tuple(s * c for c in e1)
    res = prop31b_witness(X, X, norm, eps, e1, e1, y1, y1)
    inst = res.violation.instance
    cert = _instance_cert(inst, res.violation.objective)
    cert["chain_line"] = [fmt(res.chain_value), fmt(res.chain_bound)]
    return _report("gallery abs-sum", {"norm": absnorm_to_obj(norm), "eps": fmt(eps),
                                       "dim": args.dim}, "violation", cert)


def cmd_selftest(args):
    results = run_selftest(seed=args.seed)
    items = [{"criterion": r.number, "name": r.name, "passed": r.passed,
              "detail": r.detail} for r in results]
    verdict = "pass" if all(r.passed for r in results) else "fail"
    return _report("selftest", {"seed": args.seed}, verdict, {"items": items})


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lipfree", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"lipfree {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    metric = sub.add_parser("metric", help="metric-space files").add_subparsers(
        dest="action", required=True)
    mv = metric.add_parser("validate", help="validate a metric-space file")
    mv.add_argument("space")
    mv.set_defaults(func=cmd_metric_validate)

    def mol_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--space", help="metric-space file (else taken from the molecule file)")
        sp.add_argument("--molecule", required=True)
        sp.set_defaults(func=func)
        return sp

    mol_cmd("aenorm", cmd_aenorm, "Arens-Eells norm of a molecule")
    dec = mol_cmd("decompose", cmd_decompose, "optimal decomposition of a molecule")
    dec.add_argument("--target-cost", help="pad the decomposition to this exact cost")
    mol_cmd("witness", cmd_witness, "1-Lipschitz function norming a molecule")
    mol_cmd("duality-check", cmd_duality_check, "verify strong duality on a molecule")

    ln = sub.add_parser("lipnorm", help="Lipschitz norm of a function")
    ln.add_argument("--space")
    ln.add_argument("--function", required=True)
    ln.set_defaults(func=cmd_lipnorm)
    pr = sub.add_parser("pair", help="duality pairing of a function and a molecule")
    pr.add_argument("--space")
    pr.add_argument("--function", required=True)
    pr.add_argument("--molecule", required=True)
    pr.set_defaults(func=cmd_pair)

    sltp = sub.add_parser("sltp", help="long trapezoid checks").add_subparsers(
        dest="action", required=True)
    for name, func in (("check", cmd_sltp_check), ("modulus", cmd_sltp_modulus)):
        sp = sltp.add_parser(name)
        sp.add_argument("--space", required=True)
        sp.add_argument("--n", required=True, help="comma-separated test set")
        sp.add_argument("--pool", help="comma-separated u:v pairs (default: all pairs)")
        if name == "check":
            sp.add_argument("--eps", required=True)
            sp.add_argument("--ltp", action="store_true", help="check LTP only")
        sp.set_defaults(func=func)

    doh = sub.add_parser("doh", help="decomposable octahedrality probes").add_subparsers(
        dest="action", required=True)
    do = doh.add_parser("objective")
    do.add_argument("--instance", required=True)
    do.add_argument("--any-y", action="store_true",
                    help="skip the unit check on y (for from-sltp certificates)")
    do.set_defaults(func=cmd_doh_objective)
    ds = doh.add_parser("search")
    ds.add_argument("--problem", required=True, help="file with oracle, E, y (and eps)")
    ds.add_argument("--eps")
    ds.add_argument("--nmax", type=int, default=2)
    ds.add_argument("--ground", help="comma-separated ground points (free-space oracles)")
    ds.set_defaults(func=cmd_doh_search)
    df = doh.add_parser("from-sltp")
    df.add_argument("--problem", required=True)
    df.set_defaults(func=cmd_doh_from_sltp)
    dc = doh.add_parser("chain-verify")
    dc.add_argument("--problem", required=True)
    dc.set_defaults(func=cmd_doh_chain_verify)

    gal = sub.add_parser("gallery", help="absolute sums and C[0,1]").add_subparsers(
        dest="action", required=True)
    gc = gal.add_parser("c01")
    gc.add_argument("--eps", required=True)
    gc.add_argument("--g", help="piecewise-linear g file (default f2 - f1)")
    gc.set_defaults(func=cmd_gallery_c01)
    ga = gal.add_parser("abs-sum")
    ga.add_argument("--norm", required=True, help="l1, linf or a polygon file")
    ga.add_argument("--eps", required=True)
    ga.add_argument("--dim", type=int, default=1, help="use l1^dim summands")
    ga.set_defaults(func=cmd_gallery_abs_sum)

    st = sub.add_parser("selftest", help="run the embedded acceptance suite")
    st.add_argument("--seed", type=int, default=DEFAULT_SEED)
    st.set_defaults(func=cmd_selftest)
    return p


def _flat(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (list, dict)) for v in value)


def _encode(value, indent=0) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(value, dict) and value:
        items = [f"{inner}{json.dumps(k)}: {_encode(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and value and not _flat(value):
        items = [inner + _encode(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False)


def dumps(report: dict) -> str:
    """JSON with scalar lists kept on one line; key order is insertion order."""
    return _encode(report) + "\n"


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    try:
        report = args.func(args)
        code = 0
    except InputError as exc:
        report = _report(command, {}, "error", {"error": type(exc).__name__, "message": str(exc),
                                                **({"line": exc.line}
                                                   if isinstance(exc, ParseError) else {})})
        code = 2
    except Exception as exc:  # noqa: BLE001  (exit code 3 contract)
        report = _report(command, {}, "error", {"error": type(exc).__name__, "message": str(exc)})
        code = 3
    out.write(dumps(report))
    return code


def main():
    sys.exit(run())
