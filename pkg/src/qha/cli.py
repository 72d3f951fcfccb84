"""Command-line experiment runner.

Every diagnostic of the library is reachable from exactly one subcommand;
all numerical output goes to CSV (files or stdout).  Randomized audits
require an explicit seed, outputs embed their reproducibility manifest in
a leading comment line, and re-running a manifest via ``qha run`` produces
byte-identical files.

Exit codes: 0 success, 1 a mathematical audit failed, 2 usage or
precondition error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import asymptotics
from .asymptotics.windowed import WindowedFunction
from .conv import verify_norm_estimates
from .errors import PreconditionError
from .groups import (
    FiniteAbelianGroup,
    convolve,
    fourier,
    read_group_function,
    write_group_function,
)
from .numerics import DEFAULT_EQ_TOL
from .tauber import NetCertificate, certified_tail_bound, rk_moduli, windowed_stft_profile
from .weyl import weyl_identity_residuals
from .wiener import degenerate_operator_set, regular_op_set
from .weyl import random_op


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, (np.floating,)):
        return f"{float(v):.17g}"
    return str(v)


def emit_csv(path, header, rows, manifest: dict | None = None) -> None:
    """Write rows with 17-significant-digit reals and an optional manifest
    comment line; path '-' writes to stdout."""
    if len(header) and rows and any(len(r) != len(header) for r in rows):
        raise ValueError("record arity does not match header")
    lines = []
    if manifest is not None:
        lines.append("# manifest: " + json.dumps(manifest, sort_keys=True))
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-" or path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _manifest(subcommand: str, params: dict, seed=None, outputs: dict | None = None) -> dict:
    man = {"subcommand": subcommand, "params": params}
    if seed is not None:
        man["seed"] = seed
    if outputs:
        man["outputs"] = outputs
    return man


# --- subcommand implementations ------------------------------------------------


def _cmd_group(args) -> int:
    orders = tuple(int(s) for s in args.orders.split(","))
    group = FiniteAbelianGroup(orders, args.weight)
    if args.group_cmd == "dft":
        f = read_group_function(args.input, group)
        out = fourier(f)
        man = _manifest("group dft", {"orders": args.orders, "weight": args.weight},
                        outputs={"out": args.out})
    else:
        f = read_group_function(args.f, group)
        g = read_group_function(args.g, group)
        out = convolve(f, g)
        man = _manifest("group conv", {"orders": args.orders, "weight": args.weight},
                        outputs={"out": args.out})
    write_group_function(out, args.out, comment="manifest: " + json.dumps(man, sort_keys=True))
    return 0


def _cmd_weyl_check(args) -> int:
    residuals = weyl_identity_residuals(args.n)
    rows = []
    failed = False
    for name, res in residuals.items():
        ok = res <= 1e-12
        failed = failed or not ok
        rows.append((name, res, "PASS" if ok else "FAIL"))
    emit_csv("-", ("identity", "max_residual", "status"), rows,
             manifest=_manifest("weyl check", {"n": args.n}))
    return 1 if failed else 0


def _cmd_conv_audit(args) -> int:
    report = verify_norm_estimates(args.n, args.samples, args.seed)
    rows = [
        (name, report.max_ratio[name], report.argmax_index[name])
        for name in sorted(report.max_ratio)
    ]
    man = _manifest("conv audit", {"n": args.n, "samples": args.samples}, seed=args.seed,
                    outputs={"out": args.out} if args.out else None)
    emit_csv(args.out or "-", ("inequality", "max_ratio", "argmax_seed_index"), rows, man)
    return 1 if report.worst() > 1.0 + DEFAULT_EQ_TOL else 0


def _cmd_wiener_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    cases = []
    for i in range(args.samples):
        cases.append((f"random_{i}", random_op(args.n, rng)))
    if args.degenerate:
        cases.extend(degenerate_operator_set(args.n, seed=args.seed).items())
    rows = []
    all_agree = True
    for name, op in cases:
        rep = regular_op_set([op])
        rows.append((name, rep.min_abs_transform, rep.translate_span_rank,
                     rep.is_regular, rep.predicates_agree))
        all_agree = all_agree and rep.predicates_agree
    man = _manifest("wiener verify",
                    {"n": args.n, "samples": args.samples, "degenerate": bool(args.degenerate)},
                    seed=args.seed, outputs={"out": args.out} if args.out else None)
    emit_csv(args.out or "-", ("case", "min_abs_transform", "rank", "is_regular", "agreement"),
             rows, man)
    return 0 if all_agree else 1


def _cmd_example_halmos(args) -> int:
    op = asymptotics.halmos_operator(args.blocks)
    cols, _rows = asymptotics.column_row_profiles(op)
    man = _manifest("example halmos", {"blocks": args.blocks}, outputs={"out": args.out})
    emit_csv(args.out, ("param", "value"), list(zip(cols.params, cols.values)), man)
    return 0


def _cmd_example_cac(args) -> int:
    record = asymptotics.cac_example(args.h, args.nmax)
    rows = [
        ("projection_residual", record.projection_residual),
        ("min_kernel_gap", record.min_kernel_gap),
    ]
    rows += [(f"g_max_error_n{n}", e) for n, e in sorted(record.g_max_errors.items())]
    rows += [(f"plateau_dev_n{n}", e) for n, e in sorted(record.plateau_max_dev.items())]
    rows += [(f"product_norm_n{n}", v) for n, v in sorted(record.product_norms.items())]
    man = _manifest("example cac", {"h": args.h, "nmax": args.nmax}, outputs={"out": args.out})
    emit_csv(args.out, ("param", "value"), rows, man)
    return 0


def _cmd_probe_topology(args) -> int:
    case = asymptotics.PROBE_CASES[args.case]()
    result = asymptotics.topology_probe(
        case.matrices, case.test_vectors, case.trace_tests, args.tol, weight=case.weight
    )
    rows = [(r.i, r.j, r.norm_diff, r.strongstar_diff, r.weakstar_diff) for r in result.rows]
    man = _manifest("probe topology", {"case": args.case, "tol": args.tol},
                    outputs={"out": args.out} if args.out else None)
    emit_csv(args.out or "-", ("i", "j", "norm_diff", "strongstar_diff", "weakstar_diff"), rows, man)
    print(f"classification,{result.classification}")
    if args.expect and result.classification != args.expect:
        return 1
    return 0


def _read_windowed(path) -> WindowedFunction:
    from .groups import _read_indexed_csv

    indices, values = _read_indexed_csv(path)
    if indices != list(range(indices[0], indices[0] + len(indices))):
        raise ValueError(f"{path}: indices must be contiguous")
    return WindowedFunction(indices[0], np.array(values))


def _cmd_stft_decay(args) -> int:
    f = _read_windowed(args.f)
    phi = _read_windowed(args.phi)
    if args.k == "all":
        raise PreconditionError("the lattice dual is a torus; use --k grid:M")
    if not args.k.startswith("grid:"):
        raise PreconditionError("--k must be 'grid:M'")
    m = int(args.k.split(":", 1)[1])
    angles = 2 * np.pi * np.arange(m) / m
    profile = windowed_stft_profile(f, phi, angles)
    man = _manifest("stft decay", {"f": args.f, "phi": args.phi, "k": args.k},
                    outputs={"out": args.out})
    emit_csv(args.out, ("x", "sup_abs"), list(zip(profile.params, profile.values)), man)
    return 0


def _cmd_bound_certify(args) -> int:
    tails = tuple(float(s) for s in args.tails.split(","))
    bound = certified_tail_bound(NetCertificate(tails, args.eps, args.c))
    print(f"bound,{bound!r}")
    return 0


def _cmd_rk(args) -> int:
    import glob
    import os

    paths = sorted(glob.glob(os.path.join(args.family, "*.csv")))
    if not paths:
        raise PreconditionError(f"no CSV files in {args.family}")
    family = [_read_windowed(p) for p in paths]
    modulus, tailmass = rk_moduli(family)
    man = _manifest("rk", {"family": args.family}, outputs={"out": args.out})
    emit_csv(args.out, ("param", "value"), list(zip(modulus.params, modulus.values)), man)
    stem, ext = os.path.splitext(args.out)
    emit_csv(stem + "_tailmass" + ext, ("param", "value"),
             list(zip(tailmass.params, tailmass.values)), man)
    return 0


def _cmd_run(args) -> int:
    try:
        with open(args.manifest) as fh:
            man = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read manifest: {exc}", file=sys.stderr)
        return 2
    if not isinstance(man, dict) or "subcommand" not in man or "params" not in man:
        print("error: manifest needs 'subcommand' and 'params' keys", file=sys.stderr)
        return 2
    argv = man["subcommand"].split()
    for key, value in man["params"].items():
        if isinstance(value, bool):
            if value:
                argv.append(f"--{key}")
        else:
            argv += [f"--{key}", str(value)]
    if "seed" in man:
        argv += ["--seed", str(man["seed"])]
    for key, value in (man.get("outputs") or {}).items():
        argv += [f"--{key}", str(value)]
    return dispatch(argv)


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qha",
        description="Finite phase-space harmonic analysis workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="function calculus on finite groups")
    group_sub = p_group.add_subparsers(dest="group_cmd", required=True)
    p_dft = group_sub.add_parser("dft", help="Fourier transform of a CSV function")
    p_dft.add_argument("--orders", required=True, help="comma-separated cyclic orders")
    p_dft.add_argument("--weight", type=float, default=1.0)
    p_dft.add_argument("--input", required=True)
    p_dft.add_argument("--out", required=True)
    p_dft.set_defaults(func=_cmd_group)
    p_conv = group_sub.add_parser("conv", help="convolution of two CSV functions")
    p_conv.add_argument("--orders", required=True)
    p_conv.add_argument("--weight", type=float, default=1.0)
    p_conv.add_argument("--f", required=True)
    p_conv.add_argument("--g", required=True)
    p_conv.add_argument("--out", required=True)
    p_conv.set_defaults(func=_cmd_group)

    p_weyl = sub.add_parser("weyl", help="projective representation identities")
    weyl_sub = p_weyl.add_subparsers(dest="weyl_cmd", required=True)
    p_check = weyl_sub.add_parser("check", help="PASS/FAIL per identity with max residual")
    p_check.add_argument("--n", type=int, required=True)
    p_check.set_defaults(func=_cmd_weyl_check)

    p_conv2 = sub.add_parser("conv", help="convolution calculus audits")
    conv_sub = p_conv2.add_subparsers(dest="conv_cmd", required=True)
    p_audit = conv_sub.add_parser("audit", help="randomized norm-inequality audit")
    p_audit.add_argument("--n", type=int, required=True)
    p_audit.add_argument("--samples", type=int, required=True)
    p_audit.add_argument("--seed", type=int, required=True)
    p_audit.add_argument("--out", default=None)
    p_audit.set_defaults(func=_cmd_conv_audit)

    p_wiener = sub.add_parser("wiener", help="regularity predicate agreement audit")
    wiener_sub = p_wiener.add_subparsers(dest="wiener_cmd", required=True)
    p_verify = wiener_sub.add_parser("verify")
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--samples", type=int, required=True)
    p_verify.add_argument("--seed", type=int, required=True)
    p_verify.add_argument("--degenerate", action="store_true")
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=_cmd_wiener_verify)

    p_example = sub.add_parser("example", help="reference constructions")
    ex_sub = p_example.add_subparsers(dest="example_cmd", required=True)
    p_halmos = ex_sub.add_parser("halmos", help="block projection column-norm profile")
    p_halmos.add_argument("--blocks", type=int, required=True)
    p_halmos.add_argument("--out", required=True)
    p_halmos.set_defaults(func=_cmd_example_halmos)
    p_cac = ex_sub.add_parser("cac", help="box-convolution sandwich verification record")
    p_cac.add_argument("--h", type=float, required=True)
    p_cac.add_argument("--nmax", type=int, required=True)
    p_cac.add_argument("--out", required=True)
    p_cac.set_defaults(func=_cmd_example_cac)

    p_probe = sub.add_parser("probe", help="convergence-topology probes")
    probe_sub = p_probe.add_subparsers(dest="probe_cmd", required=True)
    p_topo = probe_sub.add_parser("topology")
    p_topo.add_argument("--case", choices=sorted(asymptotics.PROBE_CASES), required=True)
    p_topo.add_argument("--tol", type=float, required=True)
    p_topo.add_argument("--out", default=None)
    p_topo.add_argument("--expect", choices=("norm", "strong*", "weak*", "divergent"))
    p_topo.set_defaults(func=_cmd_probe_topology)

    p_stft = sub.add_parser("stft", help="windowed transform decay profiles")
    stft_sub = p_stft.add_subparsers(dest="stft_cmd", required=True)
    p_decay = stft_sub.add_parser("decay")
    p_decay.add_argument("--f", required=True)
    p_decay.add_argument("--phi", required=True)
    p_decay.add_argument("--k", default="grid:64", help="'grid:M' dual sampling")
    p_decay.add_argument("--out", required=True)
    p_decay.set_defaults(func=_cmd_stft_decay)

    p_bound = sub.add_parser("bound", help="certified tail bounds")
    bound_sub = p_bound.add_subparsers(dest="bound_cmd", required=True)
    p_cert = bound_sub.add_parser("certify")
    p_cert.add_argument("--tails", required=True, help="comma-separated generator tails")
    p_cert.add_argument("--eps", type=float, required=True)
    p_cert.add_argument("--c", type=float, required=True)
    p_cert.set_defaults(func=_cmd_bound_certify)

    p_rk = sub.add_parser("rk", help="equicontinuity/tail-mass moduli of a family")
    p_rk.add_argument("--family", required=True, help="directory of index,re,im CSV files")
    p_rk.add_argument("--out", required=True)
    p_rk.set_defaults(func=_cmd_rk)

    p_run = sub.add_parser("run", help="re-run a JSON experiment manifest")
    p_run.add_argument("manifest")
    p_run.set_defaults(func=_cmd_run)

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
