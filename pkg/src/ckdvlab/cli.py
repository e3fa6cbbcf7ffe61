"""Command-line surface: reproducible runs with CSV/JSON outputs.

Subcommands: generate, superpose, gardner, evolve, verify. Every run writes
a manifest named `<runid>_manifest.json`; the runid is a digest of the
command line, so identical invocations produce byte-identical outputs.

Exit codes: 0 success, 1 verification failure, 2 parameter/domain error,
3 singular superposition, 4 blow-up.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .backlund import (
    SINGULAR,
    BacklundParams,
    SuperposedPair,
    bt_residuals,
    default_bt_eta,
    regularity_scan,
    superpose,
)
from .diffpoly import (
    GARDNER_THEOREM_MATCH,
    MAX_GARDNER_ORDER,
    density,
    equivalent_mod_dx,
    gardner_invert,
    is_conserved,
    theorem_densities,
)
from .errors import (
    BlowUpError,
    ParameterDomainError,
    SingularDenominatorError,
    WrongLambdaError,
)
from .families import (
    AnalyticPair,
    KdvSolitonParams,
    PeriodicParams,
    RationalParams,
    SolitonParams,
    make_decoupled,
    make_periodic,
    make_rational,
    make_soliton,
    zero_pair,
)
from .numerics import (
    EvolveConfig,
    Grid,
    cfl_limit,
    evolve,
    fmt_float,
    sample,
    write_manifest,
    write_run,
)
from .verify import (
    complex_reduction,
    decoupling_residual,
    galileo,
    potential_residual,
    rescale,
    standard_lattice,
    system_residual,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARAMETER = 2
EXIT_SINGULAR = 3
EXIT_BLOWUP = 4


# ----------------------------------------------------------------------
# argument parsing helpers
# ----------------------------------------------------------------------

def rational(text: str) -> float:
    """Exact `p/q` or decimal literal, converted to float once."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from exc


def window(text: str) -> tuple[float, float, int]:
    """`lo:hi:count` evaluation window."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"window must be lo:hi:count, got {text!r}")
    lo, hi = (float(Fraction(p)) for p in parts[:2])
    count = int(parts[2])
    if count < 2:
        raise argparse.ArgumentTypeError("window needs at least 2 points")
    return lo, hi, count


def times_list(text: str) -> list[float]:
    return [float(Fraction(p)) for p in text.split(",")]


_FAMILY_KEYS = {
    "soliton": {"eta", "rho", "C", "phase0"},
    "periodic": {"etaAbs", "rho", "C", "phase0", "eps"},
    "rational": {"C", "rho", "H"},
    "decoupled": {"k1", "phase1", "k2", "phase2"},
    "zero": {"lam"},
}


def family_spec(text: str) -> AnalyticPair:
    """Build a pair from `family:key=value,...` (values are rationals)."""
    name, _, body = text.partition(":")
    name = name.strip()
    if name not in _FAMILY_KEYS:
        raise argparse.ArgumentTypeError(
            f"unknown family {name!r}; expected one of {sorted(_FAMILY_KEYS)}"
        )
    kv: dict[str, float] = {}
    if body:
        for item in body.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in _FAMILY_KEYS[name]:
                raise argparse.ArgumentTypeError(
                    f"unknown key {key!r} for family {name!r}"
                )
            kv[key] = float(Fraction(value.strip()))
    return build_family(name, kv)


def build_family(name: str, kv: dict[str, float]) -> AnalyticPair:
    if name == "soliton":
        return make_soliton(
            SolitonParams(
                eta=kv.get("eta", 1 / 12),
                rho=kv.get("rho", 2.0),
                big_c=kv.get("C", 0.0),
                phase0=kv.get("phase0", 0.0),
            )
        )
    if name == "periodic":
        return make_periodic(
            PeriodicParams(
                eta_abs=kv.get("etaAbs", 1 / 12),
                rho=kv.get("rho", 1.0),
                big_c=kv.get("C", 1.0),
                phase0=kv.get("phase0", 0.0),
                epsilon_sign=int(kv.get("eps", 1)),
            )
        )
    if name == "rational":
        return make_rational(
            RationalParams(
                big_c=kv.get("C", -1.0),
                rho=kv.get("rho", 12.0),
                shift_h=kv.get("H", 0.0),
            )
        )
    if name == "decoupled":
        left = KdvSolitonParams(k=kv.get("k1", 0.4), phase0=kv.get("phase1", 0.0))
        right = None
        if "k2" in kv:
            right = KdvSolitonParams(k=kv["k2"], phase0=kv.get("phase2", 0.0))
        return make_decoupled(left, right)
    if name == "zero":
        return zero_pair(lam=kv.get("lam", -1.0))
    raise argparse.ArgumentTypeError(f"unknown family {name!r}")


def _runid(command: str, argv: list[str]) -> str:
    digest = hashlib.sha256(" ".join(argv).encode("utf-8")).hexdigest()[:12]
    return f"{command}-{digest}"


def _echo_args(args: argparse.Namespace) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("func", "command"):
            continue
        if isinstance(value, (str, int, float, bool)) or value is None:
            out[key] = value
        elif isinstance(value, (tuple, list)):
            out[key] = [v if isinstance(v, (str, int, float, bool)) else str(v) for v in value]
        else:
            out[key] = str(value)
    return out


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*columns):
            fh.write(",".join(fmt_float(v) for v in row) + "\n")


def _profile_files(
    outdir: Path,
    runid: str,
    pair: AnalyticPair,
    x: np.ndarray,
    times: list[float],
    potentials: bool,
) -> list[str]:
    files = []
    for t in times:
        u, v = pair.uv_values(x, t)
        header = ["x", "u", "v"]
        cols = [x, u, v]
        if potentials:
            w, y = pair.wy_values(x, t)
            header += ["w", "y"]
            cols += [w, y]
        name = f"{runid}_t{fmt_float(t)}.csv"
        _write_csv(outdir / name, header, cols)
        files.append(name)
    return files


# ----------------------------------------------------------------------
# generate
# ----------------------------------------------------------------------

def cmd_generate(args: argparse.Namespace) -> int:
    kv = {}
    for key, attr in (
        ("eta", "eta"),
        ("rho", "rho"),
        ("C", "C"),
        ("phase0", "phase0"),
        ("etaAbs", "eta_abs"),
        ("eps", "epsilon"),
        ("H", "H"),
        ("k1", "k1"),
        ("k2", "k2"),
        ("phase1", "phase1"),
        ("phase2", "phase2"),
        ("lam", "lam"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            kv[key] = value
    pair = build_family(args.family, kv)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    runid = _runid("generate", args.argv)
    lo, hi, count = args.x
    x = np.linspace(lo, hi, count)
    files = _profile_files(outdir, runid, pair, x, args.t, args.potentials)
    write_manifest(
        outdir / f"{runid}_manifest.json",
        {
            "command": "generate",
            "version": __version__,
            "parameters": _echo_args(args),
            "outputs": files,
            "summary": {"family": pair.family, "lam": pair.lam},
        },
    )
    print(f"wrote {len(files)} profile(s) and manifest under {outdir} (runid {runid})")
    return EXIT_OK


# ----------------------------------------------------------------------
# superpose
# ----------------------------------------------------------------------

def cmd_superpose(args: argparse.Namespace) -> int:
    germ = args.germ if args.germ is not None else zero_pair(args.branch1.lam)
    s = SuperposedPair(
        germ=germ,
        branch1=args.branch1,
        branch2=args.branch2,
        eta1=args.eta1,
        eta2=args.eta2,
        floor=args.floor,
    )
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    runid = _runid("superpose", args.argv)

    sx = args.scan_x
    st = args.scan_t
    scan = regularity_scan(
        s, x_span=(sx[0], sx[1]), t_span=(st[0], st[1]), nx=sx[2], nt=st[2]
    )
    scan_name = f"{runid}_regularity.json"
    write_manifest(outdir / scan_name, scan.to_dict())

    manifest = {
        "command": "superpose",
        "version": __version__,
        "parameters": _echo_args(args),
        "summary": {
            "family": f"superpose({s.branch1.family}+{s.branch2.family};germ={s.germ.family})",
            "eta1": s.eta1,
            "eta2": s.eta2,
            "lam": s.lam,
            "verdict": scan.verdict,
            "min_abs_d": scan.min_abs_d,
        },
    }
    if scan.verdict == SINGULAR:
        manifest["outputs"] = [scan_name]
        write_manifest(outdir / f"{runid}_manifest.json", manifest)
        print(
            f"SINGULAR: min |D| = {scan.min_abs_d:.3e} at "
            f"(x, t) = ({scan.argmin_x:.6g}, {scan.argmin_t:.6g})",
            file=sys.stderr,
        )
        return EXIT_SINGULAR

    pair = superpose(s)
    r1, r2 = system_residual(pair)
    q1, q2 = potential_residual(pair)
    reports = [r.to_dict() for r in (r1, r2, q1, q2)]
    reports_name = f"{runid}_residuals.json"
    write_manifest(outdir / reports_name, {"reports": reports})

    lo, hi, count = args.x
    x = np.linspace(lo, hi, count)
    files = _profile_files(outdir, runid, pair, x, args.t, args.potentials)

    manifest["outputs"] = files + [scan_name, reports_name]
    manifest["summary"]["max_system_residual"] = max(r1.max_abs, r2.max_abs)
    manifest["summary"]["max_potential_residual"] = max(q1.max_abs, q2.max_abs)
    write_manifest(outdir / f"{runid}_manifest.json", manifest)
    print(
        f"verdict {scan.verdict}; min |D| = {scan.min_abs_d:.3e}; "
        f"system residual max {max(r1.max_abs, r2.max_abs):.3e}; "
        f"{len(files)} profile(s) under {outdir} (runid {runid})"
    )
    return EXIT_OK


# ----------------------------------------------------------------------
# gardner
# ----------------------------------------------------------------------

def cmd_gardner(args: argparse.Namespace) -> int:
    n_max = args.order
    if n_max > MAX_GARDNER_ORDER:
        raise ParameterDomainError(
            f"N <= {MAX_GARDNER_ORDER}",
            f"ladder order {n_max} exceeds the practical cap {MAX_GARDNER_ORDER}",
        )
    lam = None if args.lam == "formal" else Fraction(args.lam)
    gardner_invert(n_max)
    thm = theorem_densities()

    entries = []
    lines = []
    for n in range(n_max + 1):
        for comp in ("r", "s"):
            p = density(n, comp)
            conserved = is_conserved(p, lam)
            exact = equivalent_mod_dx(p, p - p)
            entry = {
                "n": n,
                "component": comp,
                "terms": p.json_terms(),
                "conserved": conserved,
                "dx_exact": exact,
                "match": None,
            }
            line = f"{comp}_{n} = {p.pretty()}"
            verdict = "CONSERVED" if conserved else "NOT-CONSERVED"
            notes = [verdict]
            if exact:
                notes.append("d_x-exact")
            key = (n, comp)
            if key in GARDNER_THEOREM_MATCH:
                idx, const = GARDNER_THEOREM_MATCH[key]
                name, target = thm[idx]
                if equivalent_mod_dx(p, const * target):
                    entry["match"] = {
                        "quantity": name,
                        "constant": [const.numerator, const.denominator],
                    }
                    notes.append(f"= {const} * ({name}) mod d_x")
                else:
                    notes.append(f"MISMATCH vs {const} * ({name})")
            entries.append(entry)
            lines.append(line)
            lines.append("    " + "  ".join(notes))

    text = "\n".join(lines) + "\n"
    print(text, end="")

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    runid = _runid("gardner", args.argv)
    txt_name = f"{runid}_densities.txt"
    json_name = f"{runid}_densities.json"
    (outdir / txt_name).write_text(text, encoding="utf-8")
    write_manifest(
        outdir / json_name,
        {"order": n_max, "lam": args.lam, "densities": entries},
    )
    write_manifest(
        outdir / f"{runid}_manifest.json",
        {
            "command": "gardner",
            "version": __version__,
            "parameters": _echo_args(args),
            "outputs": [txt_name, json_name],
            "summary": {
                "order": n_max,
                "all_conserved": all(e["conserved"] for e in entries),
            },
        },
    )
    return EXIT_OK


# ----------------------------------------------------------------------
# evolve
# ----------------------------------------------------------------------

def cmd_evolve(args: argparse.Namespace) -> int:
    pair = args.initial
    grid = Grid(length=args.L, n=args.N)
    state = sample(pair, grid, args.t0)
    lam = pair.lam if args.lam is None else args.lam
    cfg = EvolveConfig(
        lam=lam,
        dt=args.dt,
        t_end=args.t_end,
        record_every=args.record_every,
        dealias=not args.no_dealias,
        ceiling=args.ceiling,
        cfl_c=args.cfl_c,
    )
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    runid = _runid("evolve", args.argv)
    extra = {
        "command": "evolve",
        "version": __version__,
        "parameters": _echo_args(args),
        "summary": {
            "family": pair.family,
            "lam": lam,
            "cfl_limit": cfl_limit(state, cfg.cfl_c),
        },
    }
    try:
        result = evolve(state, cfg)
    except BlowUpError as exc:
        extra["summary"]["blow_up"] = {
            "t_estimate": exc.t_blow,
            "amplitude": exc.amplitude,
            "ceiling": exc.ceiling,
        }
        extra["outputs"] = []
        write_manifest(outdir / f"{runid}_manifest.json", extra)
        print(
            f"BLOW-UP near t = {exc.t_blow:.6g} (amplitude {exc.amplitude:.3e}); "
            f"manifest under {outdir} (runid {runid})",
            file=sys.stderr,
        )
        return EXIT_BLOWUP

    manifest = write_run(outdir, runid, result, cfg, extra)
    drift = result.report.max_rel_drift()
    print(f"{'invariant':<28}{'initial':>16}{'max rel drift':>16}")
    for name, i0, d in zip(result.report.names, result.report.initial, drift):
        print(f"{name:<28}{i0:>16.8e}{d:>16.3e}")
    print(f"{len(manifest['outputs'])} file(s) under {outdir} (runid {runid})")
    return EXIT_OK


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

_NAMED_TARGETS = {
    "soliton": lambda: make_soliton(SolitonParams(eta=1 / 12, rho=2.0, big_c=1.0)),
    "periodic": lambda: make_periodic(PeriodicParams(eta_abs=1 / 12, rho=1.0, big_c=1.0)),
    "rational": lambda: make_rational(RationalParams(big_c=-1.0, rho=12.0)),
    "decoupled": lambda: make_decoupled(
        KdvSolitonParams(k=0.4), KdvSolitonParams(k=0.55)
    ),
    "two-soliton": lambda: superpose(
        SuperposedPair(
            germ=zero_pair(-1.0),
            branch1=make_soliton(SolitonParams(eta=1 / 12, rho=2.0, big_c=1.0)),
            branch2=make_soliton(SolitonParams(eta=1 / 6, rho=2.0, big_c=2.0)),
        )
    ),
    "background": lambda: superpose(
        SuperposedPair(
            germ=zero_pair(-1.0),
            branch1=make_rational(RationalParams(big_c=-1.0, rho=12.0)),
            branch2=make_soliton(SolitonParams(eta=1 / 12, rho=2.0, big_c=1.0)),
        )
    ),
}

_ALL_CHECKS = ("system", "potential", "complex", "decoupling", "galileo", "rescale", "bt")


def _auto_checks(pair: AnalyticPair) -> list[str]:
    checks = ["system", "potential"]
    if pair.lam == -1.0:
        checks.append("complex")
    elif pair.lam == 1.0:
        checks.append("decoupling")
    checks += ["galileo", "rescale"]
    if pair.family in ("soliton", "periodic", "rational"):
        checks.append("bt")
    return checks


def _verify_rows(pair: AnalyticPair, target: str, checks: list[str], tol: float) -> list[dict]:
    lattice = standard_lattice()
    rows: list[dict] = []

    def add(check: str, reports) -> None:
        for rep in reports:
            rows.append(
                {
                    "target": target,
                    "check": check,
                    "tag": rep.tag,
                    "max_abs": rep.max_abs,
                    "rms": rep.rms,
                    "pass": rep.max_abs < tol,
                }
            )

    for check in checks:
        if check == "system":
            add(check, system_residual(pair, lattice))
        elif check == "potential":
            add(check, potential_residual(pair, lattice))
        elif check == "complex":
            add(check, [complex_reduction(pair, lattice)])
        elif check == "decoupling":
            add(check, decoupling_residual(pair, lattice))
        elif check == "galileo":
            for c in (-1.0, 1.0):
                r1, r2 = system_residual(galileo(pair, c), lattice)
                add(f"galileo(c={c:g})", [r1, r2])
        elif check == "rescale":
            for b in (0.5, 2.0):
                r1, r2 = system_residual(rescale(pair, b), lattice)
                add(f"rescale(b={b:g})", [r1, r2])
        elif check == "bt":
            eta = default_bt_eta(pair)
            mesh_x, mesh_t = lattice.mesh()
            res = bt_residuals(
                pair,
                zero_pair(pair.lam),
                BacklundParams(eta=eta, mu=0.0, lam=pair.lam),
                mesh_x,
                mesh_t,
            )
            for tag, value in zip(("BT15", "BT16", "BT17", "BT18"), res.max_abs()):
                rows.append(
                    {
                        "target": target,
                        "check": check,
                        "tag": tag,
                        "max_abs": value,
                        "rms": value,
                        "pass": value < tol,
                    }
                )
        else:
            raise ParameterDomainError(
                f"check in {_ALL_CHECKS}", f"unknown check {check!r}"
            )
    return rows


def cmd_verify(args: argparse.Namespace) -> int:
    if args.target == "all":
        targets = [(name, _NAMED_TARGETS[name]()) for name in
                   ("soliton", "periodic", "rational", "decoupled", "two-soliton")]
    elif args.target in _NAMED_TARGETS:
        targets = [(args.target, _NAMED_TARGETS[args.target]())]
    else:
        targets = [(args.target, family_spec(args.target))]

    requested = None if args.checks == "auto" else args.checks.split(",")
    rows: list[dict] = []
    for name, pair in targets:
        checks = _auto_checks(pair) if requested is None else requested
        rows.extend(_verify_rows(pair, name, checks, args.tol))

    all_pass = all(row["pass"] for row in rows)
    print(f"{'target':<14}{'check':<18}{'tag':<14}{'max_abs':>13}{'rms':>13}  status")
    for row in rows:
        status = "PASS" if row["pass"] else "FAIL"
        print(
            f"{row['target']:<14}{row['check']:<18}{row['tag']:<14}"
            f"{row['max_abs']:>13.3e}{row['rms']:>13.3e}  {status}"
        )

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    runid = _runid("verify", args.argv)
    report_name = f"{runid}_report.json"
    write_manifest(
        outdir / report_name, {"tolerance": args.tol, "rows": rows, "all_pass": all_pass}
    )
    write_manifest(
        outdir / f"{runid}_manifest.json",
        {
            "command": "verify",
            "version": __version__,
            "parameters": _echo_args(args),
            "outputs": [report_name],
            "summary": {"all_pass": all_pass, "rows": len(rows)},
        },
    )
    return EXIT_OK if all_pass else EXIT_VERIFY_FAIL


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ckdvlab",
        description="Exact families, superposition, conserved densities and "
        "audited evolution for a parametric coupled KdV system.",
    )
    parser.add_argument("--version", action="version", version=f"ckdvlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample an exact family to CSV profiles")
    gen.add_argument("family", choices=sorted(_FAMILY_KEYS))
    gen.add_argument("--eta", type=rational, default=None)
    gen.add_argument("--rho", type=rational, default=None)
    gen.add_argument("--C", dest="C", type=rational, default=None)
    gen.add_argument("--phase0", type=rational, default=None)
    gen.add_argument("--eta-abs", "--etaAbs", dest="eta_abs", type=rational, default=None)
    gen.add_argument("--epsilon", type=int, choices=(-1, 1), default=None)
    gen.add_argument("--H", dest="H", type=rational, default=None)
    gen.add_argument("--k1", type=rational, default=None)
    gen.add_argument("--k2", type=rational, default=None)
    gen.add_argument("--phase1", type=rational, default=None)
    gen.add_argument("--phase2", type=rational, default=None)
    gen.add_argument("--lam", type=rational, default=None)
    gen.add_argument("--x", type=window, default=(-40.0, 40.0, 401))
    gen.add_argument("--t", type=times_list, default=[0.0])
    gen.add_argument("--potentials", action="store_true")
    gen.add_argument("--outdir", default="runs")
    gen.set_defaults(func=cmd_generate)

    sup = sub.add_parser("superpose", help="compose two branches over a germ")
    sup.add_argument("--branch1", type=family_spec, required=True)
    sup.add_argument("--branch2", type=family_spec, required=True)
    sup.add_argument("--germ", type=family_spec, default=None)
    sup.add_argument("--eta1", type=rational, default=None)
    sup.add_argument("--eta2", type=rational, default=None)
    sup.add_argument("--floor", type=rational, default=1e-12)
    sup.add_argument("--x", type=window, default=(-60.0, 60.0, 1201))
    sup.add_argument("--t", type=times_list, default=[0.0])
    sup.add_argument("--scan-x", type=window, default=(-60.0, 60.0, 1201))
    sup.add_argument("--scan-t", type=window, default=(-20.0, 20.0, 201))
    sup.add_argument("--potentials", action="store_true")
    sup.add_argument("--outdir", default="runs")
    sup.set_defaults(func=cmd_superpose)

    gar = sub.add_parser("gardner", help="emit ladder densities with verdicts")
    gar.add_argument("--order", type=int, required=True)
    gar.add_argument("--lam", default="formal",
                     help="'formal' or a rational value to specialize")
    gar.add_argument("--outdir", default="runs")
    gar.set_defaults(func=cmd_gardner)

    evo = sub.add_parser("evolve", help="pseudo-spectral evolution with telemetry")
    evo.add_argument("--initial", type=family_spec, required=True)
    evo.add_argument("--lam", type=rational, default=None,
                     help="coupling for the run (default: pair's value)")
    evo.add_argument("--L", type=rational, default=100.0)
    evo.add_argument("--N", type=int, default=1024)
    evo.add_argument("--t0", type=rational, default=0.0)
    evo.add_argument("--dt", type=rational, default=1e-3)
    evo.add_argument("--t-end", type=rational, required=True)
    evo.add_argument("--record-every", type=int, default=500)
    evo.add_argument("--no-dealias", action="store_true")
    evo.add_argument("--ceiling", type=rational, default=1e6)
    evo.add_argument("--cfl-c", type=rational, default=2.8)
    evo.add_argument("--outdir", default="runs")
    evo.set_defaults(func=cmd_evolve)

    ver = sub.add_parser("verify", help="run residual and symmetry checks")
    ver.add_argument("--target", default="all",
                     help="'all', a named target, or a family spec")
    ver.add_argument("--checks", default="auto",
                     help=f"comma list from {','.join(_ALL_CHECKS)}")
    ver.add_argument("--tol", type=rational, default=1e-8)
    ver.add_argument("--outdir", default="runs")
    ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except (ParameterDomainError, WrongLambdaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except SingularDenominatorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except BlowUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BLOWUP


if __name__ == "__main__":
    sys.exit(main())
