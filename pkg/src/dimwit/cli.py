"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .combinatorics import gen_domain, parity_set, parity_sign
from .linalg import herm_eig
from .observables import SUPPORTED_VARIANTS, anticomm_table, paper_bob_set
from .seesaw import SeesawConfig, seesaw
from .sharing import PRINTED_MAX_BOBS, sharing_report
from .tables import audit_n6_qubit, table1
from .witness import (
    alice_parity_residual,
    build_operator,
    derive_alice,
    local_bound,
    omegas,
    optimal_bound,
    parity_residuals,
    pnc_bound,
    sos_upper_bound,
    success_probability,
)

PARITY_TOL = 1e-8


def num(x) -> str:
    """Full-precision decimal string for a float."""
    return repr(float(x))


def sig12(x) -> str:
    return format(float(x), ".12g")


def manifest(command: str, params: dict, seed=None) -> dict:
    # SOURCE_DATE_EPOCH pins the timestamp for byte-reproducible output
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return {
        "command": command,
        "parameters": {k: params[k] for k in sorted(params)},
        "rng_seed": seed,
        "artifact_version": __version__,
        "timestamp": when.replace(microsecond=0).isoformat().replace("+00:00", "Z"),
    }


def matrix_json(m):
    return [[[num(z.real), num(z.imag)] for z in row] for row in np.asarray(m)]


def emit(args, payload: dict, rows: list[dict] | None, text: str):
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        for key, value in payload["manifest"].items():
            buf.write(f"# {key}={json.dumps(value, sort_keys=True)}\n")
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: sig12(v) if isinstance(v, float) else v for k, v in row.items()})
        out = buf.getvalue()
    else:
        out = text.rstrip("\n") + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _config(args) -> SeesawConfig:
    return SeesawConfig(restarts=args.restarts, rng_seed=args.seed)


def cmd_bounds(args) -> int:
    n = args.n
    lb, pb, ob = local_bound(n), pnc_bound(n), optimal_bound(n)
    result = {
        "n": n,
        "local_bound": lb,
        "pnc_bound": pb,
        "optimal_bound": num(ob),
        "p_local": num(success_probability(lb, n)),
        "p_pnc": num(success_probability(pb, n)),
        "p_optimal": num(success_probability(ob, n)),
    }
    rows = [{"bound": name, "value": float(v), "success_probability": success_probability(v, n)}
            for name, v in (("local", lb), ("pnc", pb), ("optimal", ob))]
    text = "\n".join(
        [f"n = {n}"]
        + [f"{r['bound']:>8}  {r['value']:>14.10f}   p = {r['success_probability']:.10f}" for r in rows]
    )
    emit(args, {"manifest": manifest("bounds", {"n": n}), "result": result}, rows, text)
    return 0


def cmd_table1(args) -> int:
    config = _config(args)
    rows = table1(config)
    audit = audit_n6_qubit(config)
    records = [
        {
            "n": r.n,
            "dim": r.dim,
            "pnc_bound": r.pnc_bound,
            "max_value": r.max_value,
            "source": r.source,
            "closed_form": r.closed_form if r.closed_form is not None else "",
            "printed_value": r.printed_value,
            "delta": r.delta,
        }
        for r in rows
    ]
    payload = {
        "manifest": manifest("table1", {"restarts": args.restarts}, args.seed),
        "rows": [{k: num(v) if isinstance(v, float) else v for k, v in rec.items()} for rec in records],
        "audit_n6_qubit": {
            "seesaw": num(audit.seesaw_value),
            "closed_form": num(audit.closed_form),
            "printed_set": num(audit.printed_set_value),
            "printed_qubit": num(audit.printed_qubit),
            "printed_three_qubit": num(audit.printed_three_qubit),
            "deltas": {k: num(v) for k, v in audit.deltas().items()},
        },
    }
    lines = [f"{'n':>2} {'dim':>3} {'pnc':>4} {'max':>14} {'source':>11} {'printed':>10} {'delta':>10}"]
    for r in rows:
        lines.append(
            f"{r.n:>2} {r.dim:>3} {r.pnc_bound:>4} {r.max_value:>14.8f} {r.source:>11} "
            f"{r.printed_value:>10.4f} {r.delta:>+10.4f}"
        )
    lines.append("")
    lines.append("n=6 qubit audit:")
    lines.append(f"  seesaw            {audit.seesaw_value:.8f}")
    lines.append(f"  closed form       {audit.closed_form:.8f}")
    lines.append(f"  printed set       {audit.printed_set_value:.8f}")
    for k, v in audit.deltas().items():
        lines.append(f"  {k:<28} {v:+.6f}")
    emit(args, payload, records, "\n".join(lines))
    return 0


def cmd_optimize(args) -> int:
    if args.dim is None:
        return _usage(args, "optimize requires --dim")
    res = seesaw(args.n, args.dim, _config(args))
    result = {
        "n": res.n,
        "dim": res.dim,
        "best_value": num(res.best_value),
        "success_probability": num(success_probability(res.best_value, res.n)),
        "iterations_used": res.iterations_used,
        "converged": res.converged,
        "per_restart_values": [num(v) for v in res.per_restart_values],
        "alice": [matrix_json(a) for a in res.alice],
        "bob": [matrix_json(b) for b in res.bob],
        "state": [[num(z.real), num(z.imag)] for z in res.state],
    }
    params = {"n": args.n, "dim": args.dim, "restarts": args.restarts}
    rows = [{"restart": k, "value": v} for k, v in enumerate(res.per_restart_values)]
    text = (
        f"n={res.n} dim={res.dim}  best value {res.best_value:.10f}  "
        f"({res.iterations_used} sweeps, converged={res.converged})"
    )
    emit(args, {"manifest": manifest("optimize", params, args.seed), "result": result}, rows, text)
    return 0


def cmd_verify(args) -> int:
    dim = args.dim if args.dim is not None else 2 ** (args.n // 2)
    try:
        bob = paper_bob_set(args.n, dim, args.variant)
    except ValueError as exc:
        return _usage(args, str(exc))
    n = args.n
    alice = derive_alice(n, bob, order=args.order)
    inst = build_operator(n, alice, bob, order=args.order)
    w, _ = herm_eig(inst.operator)
    table = anticomm_table(bob)
    om = omegas(bob, order=args.order)
    residuals = parity_residuals(n, alice, order=args.order)
    worst = alice_parity_residual(n, alice, order=args.order)
    ok = worst < PARITY_TOL
    result = {
        "n": n,
        "dim": dim,
        "variant": args.variant,
        "order": args.order,
        "anticommutator_table": [[None if np.isnan(c) else num(c) for c in row] for row in table],
        "omega": [num(o) for o in om],
        "sos_bound": num(sos_upper_bound(n, bob, order=args.order)),
        "max_eigenvalue": num(w[0]),
        "parity_residuals": {s: num(r) for s, r in residuals.items()},
        "parity_residual": num(worst),
        "parity_oblivious": ok,
    }
    rows = [{"s": s, "residual": r, "satisfied": r < PARITY_TOL} for s, r in residuals.items()]
    lines = [f"n={n} dim={dim} variant={args.variant} (pairs labeled by {args.order} order)", "anticommutator table:"]
    for row in table:
        lines.append("  " + " ".join("   ns " if np.isnan(c) else f"{c:+5.2f}" for c in row))
    lines.append("omega: " + ", ".join(f"{o:.6f}" for o in om))
    lines.append(f"SOS bound {sum(om):.10f}; max eigenvalue {w[0]:.10f}")
    domain = gen_domain(n, args.order)
    for e in parity_set(n):
        if e.trivial:
            continue
        terms = "".join(
            ("+" if parity_sign(e, p) > 0 else "-") + f"A{p.i}" for p in domain
        ).lstrip("+")
        r = residuals[str(e)]
        lines.append(f"s={e}: {terms} = 0  residual {r:.3e}  {'ok' if r < PARITY_TOL else 'VIOLATED'}")
    lines.append(f"parity oblivious: {ok}")
    emit(args, {"manifest": manifest("verify", {"n": n, "dim": dim, "variant": args.variant}), "result": result},
         rows, "\n".join(lines))
    return 0 if ok else 1


def cmd_sharing(args) -> int:
    traces = sharing_report(args.n, config=_config(args))
    rows = [{"dim": t.dim, "k": k, "lambda_k": lam} for t in traces for k, lam in t.rows()]
    result = {
        "n": args.n,
        "normalization": traces[0].normalization,
        "traces": [
            {
                "dim": t.dim,
                "base_value": num(t.base_value),
                "max_bobs": t.max_bobs,
                "printed_max_bobs": PRINTED_MAX_BOBS.get((args.n, t.dim)),
                "thresholds": [num(lam) for lam in t.thresholds],
            }
            for t in traces
        ],
    }
    lines = []
    for t in traces:
        claim = PRINTED_MAX_BOBS.get((args.n, t.dim))
        note = f" (stated count: {claim})" if claim is not None else ""
        lines.append(f"dim={t.dim} base={t.base_value:.8f} max_bobs={t.max_bobs}{note}")
        lines.extend(f"  k={k}  lambda={lam:.10f}" for k, lam in t.rows())
    params = {"n": args.n, "restarts": args.restarts}
    emit(args, {"manifest": manifest("sharing", params, args.seed), "result": result}, rows, "\n".join(lines))
    return 0


def _usage(args, message):
    args._parser.print_usage(sys.stderr)
    sys.stderr.write(f"{args._parser.prog}: error: {message}\n")
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimwit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dimwit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    variants = sorted({v for _, _, v in SUPPORTED_VARIANTS})

    def common(p, n_required=True, seeded=False):
        p.add_argument("--n", type=int, required=n_required, help="number of bits")
        p.add_argument("--dim", type=int, default=None, help="local Hilbert-space dimension")
        p.add_argument("--variant", choices=variants, default="optimal")
        p.add_argument("--restarts", type=int, default=SeesawConfig.restarts)
        p.add_argument("--seed", type=int, default=SeesawConfig.rng_seed)
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.set_defaults(_parser=p)

    for name, func, help_ in (
        ("bounds", cmd_bounds, "local, noncontextual and quantum bounds"),
        ("table1", cmd_table1, "maxima for qubit, two-qubit and three-qubit systems"),
        ("optimize", cmd_optimize, "seesaw maximization at a fixed dimension"),
        ("verify", cmd_verify, "check an explicit observable set"),
        ("sharing", cmd_sharing, "critical unsharpness for sequential Bobs"),
    ):
        p = sub.add_parser(name, help=help_)
        common(p, n_required=name != "table1")
        if name == "verify":
            p.add_argument("--order", choices=("binary", "weight"), default="binary")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n is not None and args.n < 2:
        return _usage(args, f"--n must be >= 2, got {args.n}")
    if args.n is not None and args.n > 6 and args.command in ("optimize", "sharing"):
        return _usage(args, "seesaw commands support n <= 6")
    if args.dim is not None and args.dim not in (2, 4, 8):
        return _usage(args, f"--dim must be 2, 4 or 8, got {args.dim}")
    if args.restarts < 1:
        return _usage(args, "--restarts must be >= 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
