"""Command-line front end: verification suites, experiments, sweeps, reports.

Subcommands
-----------
check-axioms   twisted-algebra identity suite on random small supports
frame          frame-bound estimation for a window/lattice
dual           canonical dual window + Wexler-Raz residual (optionally exported)
tight          canonical tight window + gauge-identity residual
chern          Connes-Chern number by both formulas
energy         sigma-model energy (trace and window forms) and gap
verify-soliton full soliton pipeline with pass/fail verdict
moyal          Moyal identity, continuous energies and eigen residuals on a corpus
sweep          parameter sweeps over alpha/beta, CSV output

Every run writes a JSON report embedding the full configuration, tolerance
ladder, truncation radius, seed, and library version; identical
configuration and seed reproduce identical reports apart from the
timestamp.  Exit codes: 0 all checks passed, 1 an asserted identity failed
its tolerance, 2 configuration error, 3 frame failure, 4 iterative-solver
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from . import __version__
from .lattice import LatticeKind, TorusParams
from .signal import GridSpec, random_timefreq_probe, save_signal
from .algebra import (LatticeSeq, inner_left, l1_diff, trace_l,
                      twisted_conv, twisted_star)
from .frame import (ConvergenceError, FrameSystem, NotAFrameError,
                    canonical_dual, canonical_tight, frame_bounds,
                    laurent_symbol, wexler_raz_residual,
                    reconstruction_residual)
from .geometry import (build_window, chern_sum, chern_trace, energy,
                       energy_window_form, grid_for_radius,
                       soliton_experiment, derive)
from .moyal import (continuous_energy, default_window_corpus, eigen_residual,
                    load_corpus_file, moyal_check)

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_CONFIG = 2
EXIT_FRAME = 3
EXIT_SOLVER = 4

CSV_COLUMNS = ["alpha", "beta", "r", "s", "q", "A", "B", "c1_re", "c1_im",
               "energy", "gap", "sd_plus", "sd_minus", "W_residual",
               "radius", "N", "L"]


def _parse_config_file(path):
    """Flat key=value lines; repeated keys accumulate into lists."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {raw.rstrip()}")
            key, val = (part.strip() for part in line.split("=", 1))
            if key in out:
                prev = out[key] if isinstance(out[key], list) else [out[key]]
                out[key] = prev + [val]
            else:
                out[key] = val
    return out


def _add_common(parser):
    parser.add_argument("--alpha", type=float, default=0.5)
    parser.add_argument("--beta", type=float, default=0.5)
    parser.add_argument("--r", type=int, default=0)
    parser.add_argument("--s", type=int, default=0)
    parser.add_argument("--q", type=int, default=1)
    parser.add_argument("--L", type=float, default=None,
                        help="grid circumference (default: sized from radius)")
    parser.add_argument("--N", type=int, default=512)
    parser.add_argument("--radius", type=float, default=6.0)
    parser.add_argument("--eps0", type=float, default=1e-8,
                        help="tolerance-ladder base")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=str, default=None,
                        help="JSON report path (default: print summary only)")
    parser.add_argument("--config", type=str, default=None,
                        help="key=value file; command-line flags take precedence")
    parser.add_argument("--window", type=str, default=None,
                        help="gaussian | lifted_gaussian | hermite:N | file:PATH")
    parser.add_argument("--lam", type=complex, default=0.0,
                        help="generalized-Gaussian chirp parameter")


def _apply_config_defaults(args, argv):
    if not args.config:
        return args
    cfg = _parse_config_file(args.config)
    given = {a.split("=")[0].lstrip("-").replace("-", "_")
             for a in argv if a.startswith("--")}
    for key, val in cfg.items():
        attr = key.replace("-", "_")
        if attr in given or not hasattr(args, attr):
            continue
        current = getattr(args, attr)
        if isinstance(val, list):
            setattr(args, attr, val)
        elif isinstance(current, bool):
            setattr(args, attr, val.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, attr, int(val))
        elif isinstance(current, float):
            setattr(args, attr, float(val))
        elif isinstance(current, complex):
            setattr(args, attr, complex(val))
        else:
            setattr(args, attr, val)
    return args


def _setup(args):
    params = TorusParams(alpha=args.alpha, beta=args.beta, r=args.r,
                         s=args.s, q=args.q)
    if args.L is None:
        grid = grid_for_radius(args.radius, n=args.N, q=args.q)
    else:
        grid = GridSpec(L=args.L, N=args.N, q=args.q)
    return params, grid


def _window_from_args(args, spec, params):
    kind = args.window
    if kind is None:
        kind = "lifted_gaussian" if params.q > 1 else "gaussian"
    if kind.startswith("hermite"):
        order = int(kind.split(":")[1]) if ":" in kind else 1
        return build_window("hermite", spec, params, hermite_order=order)
    if kind.startswith("file:"):
        return build_window("file", spec, params, path=kind.split(":", 1)[1])
    return build_window(kind, spec, params, lam=args.lam)


def _report_skeleton(args, command):
    return {
        "command": command,
        "version": __version__,
        "seed": args.seed,
        "config": {k: (repr(v) if isinstance(v, complex) else v)
                   for k, v in sorted(vars(args).items())
                   if k not in ("func", "out", "config")},
        "tolerances": {"algebra": args.eps0, "frame": 1e2 * args.eps0,
                       "chern": 1e3 * args.eps0},
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }


def _emit(report, args, passed):
    report["pass"] = bool(passed)
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    summary = {k: v for k, v in report.items()
               if k in ("command", "pass", "results_summary")}
    print(json.dumps(summary, sort_keys=True) if not args.out
          else f"report written to {args.out}: pass={report['pass']}")
    return EXIT_OK if passed else EXIT_IDENTITY


def _random_seq(params, kind, rng, points=8, span=4):
    idx = rng.integers(-span, span + 1, size=(points, 2))
    vals = rng.normal(size=points) + 1j * rng.normal(size=points)
    seq = LatticeSeq.from_entries(params, kind, idx, vals, float(span))
    return seq * (1.0 / seq.l1_norm())  # unit ℓ¹ keeps identity residuals absolute


def cmd_check_axioms(args) -> int:
    params, grid = _setup(args)
    rng = np.random.default_rng(args.seed)
    tol = 1e-12
    worst = {"assoc": 0.0, "involution": 0.0, "anti_hom": 0.0,
             "trace_cyclic": 0.0, "leibniz": 0.0, "unit": 0.0}
    for kind in (LatticeKind.TIME_FREQ, LatticeKind.ADJOINT):
        for _ in range(40):
            a = _random_seq(params, kind, rng)
            b = _random_seq(params, kind, rng)
            c = _random_seq(params, kind, rng)
            worst["assoc"] = max(worst["assoc"], l1_diff(
                twisted_conv(twisted_conv(a, b), c),
                twisted_conv(a, twisted_conv(b, c))))
            worst["involution"] = max(worst["involution"],
                                      l1_diff(twisted_star(twisted_star(a)), a))
            worst["anti_hom"] = max(worst["anti_hom"], l1_diff(
                twisted_star(twisted_conv(a, b)),
                twisted_conv(twisted_star(b), twisted_star(a))))
            delta = LatticeSeq.delta(params, kind)
            worst["unit"] = max(worst["unit"],
                                l1_diff(twisted_conv(delta, a), a),
                                l1_diff(twisted_conv(a, delta), a))
            if kind is LatticeKind.TIME_FREQ:
                worst["trace_cyclic"] = max(worst["trace_cyclic"], abs(
                    trace_l(twisted_conv(a, b)) - trace_l(twisted_conv(b, a))))
                for j in (1, 2):
                    worst["leibniz"] = max(worst["leibniz"], l1_diff(
                        derive(twisted_conv(a, b), j),
                        twisted_conv(derive(a, j), b)
                        + twisted_conv(a, derive(b, j))))
    passed = all(v < 1e-11 for v in worst.values())
    report = _report_skeleton(args, "check-axioms")
    report["results"] = {"residuals": worst, "tolerance": 1e-11}
    report["results_summary"] = {k: f"{v:.2e}" for k, v in worst.items()}
    return _emit(report, args, passed)


def cmd_frame(args) -> int:
    params, grid = _setup(args)
    try:
        window = _window_from_args(args, grid, params)
        sys_ = FrameSystem(window, params, args.radius)
        a_est, b_est = frame_bounds(sys_, seed=args.seed)
    except NotAFrameError as exc:
        print(f"frame failure: {exc}", file=sys.stderr)
        return EXIT_FRAME
    report = _report_skeleton(args, "frame")
    report["results"] = {"A": a_est, "B": b_est, "radius": args.radius,
                         "N": grid.N, "L": grid.L,
                         "condition": b_est / a_est,
                         "residuals": sys_.bounds_residuals}
    report["results_summary"] = {"A": a_est, "B": b_est}
    return _emit(report, args, True)


def cmd_dual(args) -> int:
    params, grid = _setup(args)
    window = _window_from_args(args, grid, params)
    sys_ = FrameSystem(window, params, args.radius)
    try:
        h = canonical_dual(sys_, max_iter=args.cg_max_iter)
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    wr = wexler_raz_residual(window, h, params, args.radius)
    rng = np.random.default_rng(args.seed)
    rec = max(reconstruction_residual(
        random_timefreq_probe(grid, rng, spread=2.5), window, h, params,
        args.radius) for _ in range(5))
    if args.export_window:
        save_signal(h, args.export_window)
    report = _report_skeleton(args, "dual")
    report["results"] = {"wexler_raz_residual": wr,
                         "reconstruction_residual": rec,
                         "radius": args.radius}
    report["results_summary"] = {"wr": f"{wr:.2e}", "recon": f"{rec:.2e}"}
    return _emit(report, args, wr < 1e2 * args.eps0 and rec < 1e2 * args.eps0)


def cmd_tight(args) -> int:
    params, grid = _setup(args)
    window = _window_from_args(args, grid, params)
    sys_ = FrameSystem(window, params, args.radius)
    try:
        h = canonical_dual(sys_)
        t = canonical_tight(sys_)
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    gauge = l1_diff(inner_left(window, h, params, args.radius),
                    inner_left(t, t, params, args.radius))
    if args.export_window:
        save_signal(t, args.export_window)
    report = _report_skeleton(args, "tight")
    report["results"] = {"gauge_identity_residual": gauge, "radius": args.radius}
    report["results_summary"] = {"gauge": f"{gauge:.2e}"}
    return _emit(report, args, gauge < 1e2 * args.eps0)


def _chern_energy_core(args):
    params, grid = _setup(args)
    window = _window_from_args(args, grid, params)
    sys_ = FrameSystem(window, params, args.radius)
    h = canonical_dual(sys_)
    p = inner_left(window, h, params, args.radius)
    return params, grid, window, h, p


def cmd_chern(args) -> int:
    try:
        params, grid, window, h, p = _chern_energy_core(args)
        c1t = chern_trace(p, params)
        c1s = chern_sum(window, h, params, args.radius)
    except NotAFrameError as exc:
        print(f"frame failure: {exc}", file=sys.stderr)
        return EXIT_FRAME
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    tol = 1e3 * args.eps0
    ok = (abs(c1t - round(c1t.real)) < tol and abs(c1t - c1s) < tol)
    report = _report_skeleton(args, "chern")
    report["results"] = {"c1_trace": {"re": c1t.real, "im": c1t.imag},
                         "c1_sum": {"re": c1s.real, "im": c1s.imag},
                         "c1_rounded": int(round(c1t.real)),
                         "two_formula_gap": abs(c1t - c1s)}
    report["results_summary"] = {"c1": round(c1t.real, 10)}
    return _emit(report, args, ok)


def cmd_energy(args) -> int:
    try:
        params, grid, window, h, p = _chern_energy_core(args)
        e_tr = energy(p, params)
        e_win = energy_window_form(window, h, params, args.radius)
        c1t = chern_trace(p, params)
    except NotAFrameError as exc:
        print(f"frame failure: {exc}", file=sys.stderr)
        return EXIT_FRAME
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    gap = e_tr - abs(c1t)
    tol = 1e3 * args.eps0
    report = _report_skeleton(args, "energy")
    report["results"] = {"energy_trace": e_tr, "energy_window": e_win,
                         "c1": c1t.real, "gap": gap}
    report["results_summary"] = {"energy": round(e_tr, 10), "gap": gap}
    return _emit(report, args, abs(e_tr - e_win) < tol and gap > -tol)


def cmd_verify_soliton(args) -> int:
    params, grid = _setup(args)
    window = _window_from_args(args, grid, params)
    try:
        rep = soliton_experiment(params, window, radius=args.radius,
                                 eps0=args.eps0, bounds_seed=args.seed)
    except NotAFrameError as exc:
        print(f"frame failure: {exc}", file=sys.stderr)
        return EXIT_FRAME
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    report = _report_skeleton(args, "verify-soliton")
    report["results"] = rep.to_dict()
    report["results_summary"] = {"c1": round(rep.c1_trace.real, 8),
                                 "energy": round(rep.energy, 8),
                                 "gap": rep.gap}
    return _emit(report, args, rep.passes())


def cmd_moyal(args) -> int:
    params, grid = _setup(args)
    rng = np.random.default_rng(args.seed)
    if args.corpus:
        corpus = load_corpus_file(args.corpus, grid)
    else:
        corpus = default_window_corpus(grid, seed=args.seed + 23)
    rows, results = [], []
    q = grid.q
    worst_moyal = 0.0
    for name, w, is_gauss in corpus:
        f = random_timefreq_probe(grid, rng, spread=2.0)
        _, _, err = moyal_check(f, w)
        worst_moyal = max(worst_moyal, err)
        e = continuous_energy(w)
        _, res_plus = eigen_residual(w, +1)
        results.append({"window": name, "moyal_relerr": err, "energy": e,
                        "energy_gap": e - q, "eigen_residual_plus": res_plus,
                        "generalized_gaussian": is_gauss})
        rows.append({"alpha": "", "beta": "", "r": "", "s": "", "q": q,
                     "A": "", "B": "", "c1_re": "", "c1_im": "",
                     "energy": e, "gap": e - q, "sd_plus": "",
                     "sd_minus": "", "W_residual": res_plus,
                     "radius": "", "N": grid.N, "L": grid.L})
    if args.csv:
        _write_csv(args.csv, rows)
    ok = worst_moyal < args.eps0 and all(
        r["energy_gap"] > -1e-6 for r in results) and all(
        (r["energy_gap"] < 1e-6) == r["generalized_gaussian"] for r in results)
    report = _report_skeleton(args, "moyal")
    report["results"] = {"corpus": results, "worst_moyal_relerr": worst_moyal}
    report["results_summary"] = {"worst_moyal": f"{worst_moyal:.2e}",
                                 "windows": len(results)}
    return _emit(report, args, ok)


def _parse_range(text):
    """'a', 'a:b:h' or comma list -> list of floats."""
    if isinstance(text, list):
        return [float(v) for v in text]
    if ":" in text:
        start, stop, step = (float(v) for v in text.split(":"))
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(n)]
    return [float(v) for v in text.split(",")]


def _sweep_point(job):
    (alpha, beta, args_dict) = job
    args = argparse.Namespace(**args_dict)
    args.alpha, args.beta = alpha, beta
    params = TorusParams(alpha=alpha, beta=beta, r=args.r, s=args.s, q=args.q)
    grid = (grid_for_radius(args.radius, n=args.N, q=args.q)
            if args.L is None else GridSpec(L=args.L, N=args.N, q=args.q))
    window = _window_from_args(args, grid, params)
    try:
        rep = soliton_experiment(params, window, radius=args.radius,
                                 eps0=args.eps0, bounds_seed=args.seed)
    except (NotAFrameError, ConvergenceError) as exc:
        return {"alpha": alpha, "beta": beta, "r": args.r, "s": args.s,
                "q": args.q, "A": "", "B": "", "c1_re": "", "c1_im": "",
                "energy": "", "gap": "", "sd_plus": "", "sd_minus": "",
                "W_residual": "", "radius": args.radius, "N": args.N,
                "L": grid.L, "error": str(exc)}
    return {"alpha": alpha, "beta": beta, "r": args.r, "s": args.s,
            "q": args.q, "A": rep.frame_bounds[0], "B": rep.frame_bounds[1],
            "c1_re": rep.c1_trace.real, "c1_im": rep.c1_trace.imag,
            "energy": rep.energy, "gap": rep.gap,
            "sd_plus": rep.sd_residual_plus, "sd_minus": rep.sd_residual_minus,
            "W_residual": rep.w_residual_plus, "radius": args.radius,
            "N": args.N, "L": grid.L}


def _write_csv(path, rows):
    cols = CSV_COLUMNS + (["error"] if any("error" in r for r in rows) else [])
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=cols, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def cmd_sweep(args) -> int:
    alphas = _parse_range(args.alpha_range)
    betas = _parse_range(args.beta_range)
    args_dict = {k: v for k, v in vars(args).items() if k != "func"}
    jobs = [(a, b, args_dict) for a in alphas for b in betas]
    if args.workers > 1:
        from multiprocessing import Pool
        with Pool(processes=args.workers) as pool:
            rows = pool.map(_sweep_point, jobs)
    else:
        rows = [_sweep_point(j) for j in jobs]
    out_csv = args.csv or "sweep.csv"
    _write_csv(out_csv, rows)
    ok_rows = [r for r in rows if "error" not in r or not r["error"]]
    bound_ok = all(float(r["gap"]) > -1e3 * args.eps0 for r in ok_rows if r["gap"] != "")
    report = _report_skeleton(args, "sweep")
    report["results"] = {"points": len(rows), "csv": out_csv,
                         "failed_points": len(rows) - len(ok_rows)}
    report["results_summary"] = {"points": len(rows), "csv": out_csv}
    return _emit(report, args, bound_ok)


def cmd_laurent_data(args) -> int:
    """Emit |F(t1,t2)| heatmap columns for plotting."""
    params, grid = _setup(args)
    window = _window_from_args(args, grid, params)
    sym = laurent_symbol(window, params, grid=args.mesh, radius=args.radius)
    path = args.csv or "laurent.dat"
    with open(path, "w") as fh:
        fh.write("# t1 t2 absF\n")
        for i, t1 in enumerate(sym.t1):
            for j, t2 in enumerate(sym.t2):
                fh.write(f"{t1} {t2} {abs(sym.values[i, j])}\n")
    report = _report_skeleton(args, "laurent-data")
    report["results"] = {"min_abs": sym.min_abs, "max_abs": sym.max_abs,
                         "is_riesz": sym.is_riesz, "path": path}
    report["results_summary"] = {"min_abs": sym.min_abs, "riesz": sym.is_riesz}
    return _emit(report, args, True)


TASK_ORDER = ["axioms", "frame", "wexler_raz", "chern", "energy", "soliton", "moyal"]


def cmd_run(args) -> int:
    """Execute a task subset in dependency order, one combined report."""
    tasks = [t.strip() for t in
             (args.tasks.split(",") if isinstance(args.tasks, str) else args.tasks)]
    unknown = set(tasks) - set(TASK_ORDER)
    if unknown or not tasks:
        print(f"configuration error: unknown or empty tasks {sorted(unknown)}",
              file=sys.stderr)
        return EXIT_CONFIG
    tasks = [t for t in TASK_ORDER if t in tasks]
    params, grid = _setup(args)
    results, passed = {}, True
    tol_frame, tol_chern = 1e2 * args.eps0, 1e3 * args.eps0

    if "axioms" in tasks:
        rng = np.random.default_rng(args.seed)
        worst = 0.0
        for kind in (LatticeKind.TIME_FREQ, LatticeKind.ADJOINT):
            for _ in range(25):
                a, b, c = (_random_seq(params, kind, rng) for _ in range(3))
                worst = max(worst, l1_diff(
                    twisted_conv(twisted_conv(a, b), c),
                    twisted_conv(a, twisted_conv(b, c))),
                    l1_diff(twisted_star(twisted_conv(a, b)),
                            twisted_conv(twisted_star(b), twisted_star(a))))
        results["axioms"] = {"worst_identity_residual": worst}
        passed &= worst < 1e-11

    needs_frame = set(tasks) & {"frame", "wexler_raz", "chern", "energy", "soliton"}
    if needs_frame:
        window = _window_from_args(args, grid, params)
        sys_ = FrameSystem(window, params, args.radius)
        try:
            a_est, b_est = frame_bounds(sys_, seed=args.seed)
        except NotAFrameError as exc:
            print(f"frame failure: {exc}", file=sys.stderr)
            return EXIT_FRAME
        results["frame"] = {"A": a_est, "B": b_est,
                            "residuals": sys_.bounds_residuals}
        try:
            h = canonical_dual(sys_)
        except ConvergenceError as exc:
            print(f"solver failure: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        if "wexler_raz" in tasks:
            wr = wexler_raz_residual(window, h, params, args.radius)
            results["wexler_raz"] = {"residual": wr}
            passed &= wr < tol_frame
        if set(tasks) & {"chern", "energy", "soliton"}:
            p = inner_left(window, h, params, args.radius)
            c1t = chern_trace(p, params, tol=tol_frame)
            if "chern" in tasks:
                c1s = chern_sum(window, h, params, args.radius)
                results["chern"] = {"c1_re": c1t.real, "c1_im": c1t.imag,
                                    "c1_sum_re": c1s.real,
                                    "rounded": int(round(c1t.real))}
                passed &= (abs(c1t - round(c1t.real)) < tol_chern
                           and abs(c1t - c1s) < tol_chern)
            if "energy" in tasks:
                e_tr = energy(p, params, tol=tol_frame)
                results["energy"] = {"trace_form": e_tr,
                                     "window_form": energy_window_form(
                                         window, h, params, args.radius),
                                     "gap": e_tr - abs(c1t)}
                passed &= e_tr - abs(c1t) > -tol_chern
            if "soliton" in tasks:
                rep = soliton_experiment(params, window, radius=args.radius,
                                         eps0=args.eps0, bounds_seed=args.seed)
                results["soliton"] = rep.to_dict()
                passed &= rep.passes()

    if "moyal" in tasks:
        rng = np.random.default_rng(args.seed + 1)
        worst = 0.0
        for _ in range(5):
            f = random_timefreq_probe(grid, rng, spread=1.5)
            w = random_timefreq_probe(grid, rng, spread=1.5)
            worst = max(worst, moyal_check(f, w)[2])
        results["moyal"] = {"worst_relative_error": worst}
        passed &= worst < args.eps0

    report = _report_skeleton(args, "run")
    report["results"] = results
    report["results_summary"] = {"tasks": tasks}
    return _emit(report, args, passed)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ncgabor",
        description="Vector-valued Gabor frames, twisted lattice algebras, "
                    "Connes-Chern numbers and soliton energies")
    sub = parser.add_subparsers(dest="command", required=True)

    specs = [
        ("check-axioms", cmd_check_axioms, []),
        ("frame", cmd_frame, []),
        ("dual", cmd_dual, ["export"]),
        ("tight", cmd_tight, ["export"]),
        ("chern", cmd_chern, []),
        ("energy", cmd_energy, []),
        ("verify-soliton", cmd_verify_soliton, []),
        ("moyal", cmd_moyal, ["csv", "corpus"]),
        ("laurent-data", cmd_laurent_data, ["csv", "mesh"]),
    ]
    for name, func, extras in specs:
        sp = sub.add_parser(name)
        _add_common(sp)
        if "export" in extras:
            sp.add_argument("--export-window", type=str, default=None)
            sp.add_argument("--cg-max-iter", type=int, default=500)
        if "csv" in extras:
            sp.add_argument("--csv", type=str, default=None)
        if "mesh" in extras:
            sp.add_argument("--mesh", type=int, default=64)
        if "corpus" in extras:
            sp.add_argument("--corpus", type=str, default=None,
                            help="window corpus definition file")
        sp.set_defaults(func=func)

    sp = sub.add_parser("run")
    _add_common(sp)
    sp.add_argument("--tasks", type=str, default="frame,wexler_raz,chern,energy",
                    help="comma list from: " + ",".join(TASK_ORDER))
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("sweep")
    _add_common(sp)
    sp.add_argument("--alpha-range", type=str, default="0.5",
                    help="value, comma list, or start:stop:step")
    sp.add_argument("--beta-range", type=str, default="0.5")
    sp.add_argument("--task", type=str, default="energy",
                    choices=["energy", "chern", "soliton"])
    sp.add_argument("--csv", type=str, default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(argv)
        args = _apply_config_defaults(args, argv)
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (ValueError,) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
