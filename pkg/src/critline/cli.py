"""Command-line front end.

Exit status: 0 on success, 1 when a numerical precondition fails, 2 on usage
errors.  Every number is printed with 15 significant digits.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field, fields

import numpy as np

from .errors import DomainError
from .moments import fmt_number

COMMANDS = ("eigens", "ingest", "zeta", "lvalue", "moment", "scaling", "kloosterman", "bilinear",
            "voronoi-check", "selftest")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Flat key=value settings; command-line flags override the file."""

    workers: int = 1
    richardson_tol: float = 0.01
    window_delta: float = 8.0
    maass_table: str | None = None
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.richardson_tol <= 0:
            raise UsageError("tolerances must be positive")

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        known = {f.name: f for f in fields(cls) if f.name != "extra"}
        kw, extra = {}, {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line {lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key in known:
                typ = {"workers": int, "richardson_tol": float, "window_delta": float}.get(key, str)
                try:
                    kw[key] = typ(value)
                except ValueError:
                    raise UsageError(f"config line {lineno}: bad value for {key}") from None
            else:
                extra[key] = value
        return cls(**kw, extra=extra)


def fmt_complex(z: complex) -> str:
    z = complex(z)
    im = "%.15g" % z.imag
    sign = "" if im.startswith("-") else "+"
    return "%.15g%s%sj" % (z.real, sign, im)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _form(args, n_needed: int):
    from .forms import build_delta, ingest_eigenvalues, load_maass_table

    name = args.form
    if name == "delta":
        return build_delta(max(int(n_needed), 16))
    if name == "maass":
        if args.config.maass_table:
            with open(args.config.maass_table) as fh:
                text = fh.read()
            mu = next((float(l.split("=")[1]) for l in text.splitlines() if l.startswith("# mu")), None)
            if mu is None:
                raise DomainError("Maass table needs a '# mu = ...' header")
            return ingest_eigenvalues(text, mu, max(int(l.split()[0]) for l in text.splitlines()
                                                    if l.strip() and not l.startswith("#")))
        return load_maass_table()
    raise UsageError(f"unknown form {name!r} (expected delta or maass)")


# commands


def cmd_eigens(args) -> None:
    f = _form(args, args.n)
    lam = f.require(args.n)
    lines = [f"# form = {args.form}"] + [f"{n}\t{fmt_number(v)}" for n, v in enumerate(lam, 1)]
    _emit("\n".join(lines) + "\n", args.out)


def cmd_ingest(args) -> None:
    from .forms import hecke_defect, ingest_eigenvalues

    with open(args.file) as fh:
        f = ingest_eigenvalues(fh.read(), args.mu, args.n_max)
    lines = [f"n_max = {f.n_max}", f"kind = {f.kind.value}",
             f"hecke_defect = {fmt_number(hecke_defect(f.eigenvalues, f.n_max))}"]
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            if f.mu is not None:
                fh.write(f"# mu = {fmt_number(f.mu)}\n")
            fh.write("".join(f"{n}\t{fmt_number(v)}\n" for n, v in enumerate(f.eigenvalues, 1)))
    print("\n".join(lines))


def cmd_zeta(args) -> None:
    from .lfunc import zeta

    print(fmt_complex(zeta(complex(args.sigma, args.t))))


def cmd_lvalue(args) -> None:
    from .lfunc import direct_table_length, direct_width, l_value_direct, l_value_real

    if abs(args.t) < 2:
        if args.t != 0:
            raise DomainError("lvalue needs t = 0 or |t| >= 2")
        f = _form(args, 4096)
        print(fmt_complex(l_value_real(f, 0.5)))
        return
    f = _form(args, direct_table_length(abs(args.t), direct_width(abs(args.t))))
    print(fmt_complex(l_value_direct(f, args.t, workers=args.config.workers)))


def _grid_step(raw: str):
    if raw == "auto":
        return None
    try:
        return float(raw)
    except ValueError:
        raise UsageError("--grid-step takes a number or 'auto'") from None


def cmd_moment(args) -> None:
    from .moments import MomentJob, make_window, mixed_moment, required_table_length, sharp_cutoff_moment

    f = _form(args, required_table_length(args.T, args.engine))
    cfg = args.config
    if args.sharp:
        rep = sharp_cutoff_moment(f, args.T, _grid_step(args.grid_step), engine=args.engine,
                                  workers=cfg.workers, timing=args.timing, richardson_tol=cfg.richardson_tol)
    else:
        job = MomentJob(f, args.T, make_window(args.window_delta), _grid_step(args.grid_step),
                        args.engine, cfg.workers)
        rep = mixed_moment(job, timing=args.timing, richardson_tol=cfg.richardson_tol)
    _emit(rep.to_json(), args.out)


def cmd_scaling(args) -> None:
    from .moments import required_table_length, scaling_study

    try:
        Ts = [float(x) for x in args.T.split(",")]
    except ValueError:
        raise UsageError("--T takes a comma-separated list of heights") from None
    f = _form(args, required_table_length(max(Ts), args.engine))
    gs = _grid_step(args.grid_step)
    res = scaling_study(f, Ts, args.window_delta, grid_step=gs, engine=args.engine, workers=args.config.workers,
                        richardson_tol=args.config.richardson_tol)
    _emit(res.csv(), args.out)
    print(f"residual_exponent = {fmt_number(res.exponent)}", file=sys.stderr)


def cmd_kloosterman(args) -> None:
    from .arith import kloosterman_sum

    s = kloosterman_sum((args.a, args.b, args.c))
    print(f"S = {fmt_number(s)}")
    print(f"weil_ratio = {fmt_number(abs(s) / (2 * math.sqrt(args.c)))}")


def cmd_bilinear(args) -> None:
    from .sums import bilinear_average_ratio, random_config

    print("trial,seed,ratio")
    for i in range(args.trials):
        seed = args.seed + 2 * i
        cfg = random_config(args.M, args.N, args.C, seed=seed, sign=args.sign)
        r = bilinear_average_ratio(cfg, workers=args.config.workers)
        print(f"{i},{seed},{fmt_number(r)}")


def cmd_voronoi(args) -> None:
    from .forms import load_maass_table
    from .voronoi import voronoi_sides

    f = _form(args, 0) if args.form != "delta" else load_maass_table()
    chk = voronoi_sides(f, args.a, args.q, args.N)
    print(f"residual = {fmt_number(chk.residual)}")
    print(f"lhs = {fmt_complex(chk.lhs)}")
    print(f"rhs = {fmt_complex(chk.rhs)}")
    print(f"dual_terms = {chk.n_cut}")


def cmd_selftest(args) -> int:
    from .selftest import run_all

    results = run_all()
    width = max(len(name) for name, _, _ in results)
    for name, ok, detail in results:
        print(f"{name.ljust(width)}  {'PASS' if ok else 'FAIL'}  {detail}")
    return 0 if all(ok for _, ok, _ in results) else 1


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value configuration file")
    common.add_argument("--workers", type=int, help="worker threads (overrides CRITLINE_WORKERS)")

    p = argparse.ArgumentParser(prog="critline", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", metavar="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("eigens", cmd_eigens, "print normalized Hecke eigenvalues")
    sp.add_argument("--form", required=True, choices=["delta", "maass"])
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--out")

    sp = add("ingest", cmd_ingest, "validate and complete an eigenvalue table")
    sp.add_argument("--file", required=True)
    sp.add_argument("--mu", type=float, help="spectral parameter (omit for weight 12)")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--out")

    sp = add("zeta", cmd_zeta, "zeta(sigma + it)")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--sigma", type=float, default=0.5)

    sp = add("lvalue", cmd_lvalue, "L(1/2 + it, f)")
    sp.add_argument("--form", required=True, choices=["delta", "maass"])
    sp.add_argument("--t", type=float, required=True)

    sp = add("moment", cmd_moment, "mixed moment against zeta squared, JSON report")
    sp.add_argument("--form", required=True, choices=["delta", "maass"])
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--window-delta", type=float)
    sp.add_argument("--grid-step", default="auto")
    sp.add_argument("--engine", choices=["direct", "afe"], default="direct")
    sp.add_argument("--sharp", action="store_true", help="indicator of [T, 2T] instead of the smooth window")
    sp.add_argument("--timing", action="store_true", help="record wall-clock seconds (breaks byte identity)")
    sp.add_argument("--out")

    sp = add("scaling", cmd_scaling, "moments over dyadic T, CSV with one row per T")
    sp.add_argument("--form", required=True, choices=["delta", "maass"])
    sp.add_argument("--T", required=True, help="comma-separated dyadic heights")
    sp.add_argument("--window-delta", type=float)
    sp.add_argument("--grid-step", default="auto")
    sp.add_argument("--engine", choices=["direct", "afe"], default="direct")
    sp.add_argument("--out")

    sp = add("kloosterman", cmd_kloosterman, "S(a, b; c) and its Weil ratio")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)

    sp = add("bilinear", cmd_bilinear, "bilinear Kloosterman ratios for random unimodular sequences")
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--C", type=int, required=True)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sign", type=int, choices=[1, -1], default=1)

    sp = add("voronoi-check", cmd_voronoi, "both sides of the Voronoi identity for the Maass table")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--N", type=float, required=True)
    sp.add_argument("--form", choices=["maass"], default="maass")

    add("selftest", cmd_selftest, "run the property checks of every module")
    return p


def _resolve_config(args) -> RunConfig:
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = RunConfig.from_text(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    else:
        cfg = RunConfig()
    env = os.environ.get("CRITLINE_WORKERS")
    if env:
        try:
            cfg.workers = int(env)
        except ValueError:
            raise UsageError("CRITLINE_WORKERS must be an integer") from None
    if args.workers is not None:
        cfg.workers = args.workers
    if cfg.workers < 1:
        raise UsageError("workers must be >= 1")
    if getattr(args, "window_delta", "absent") is None:
        args.window_delta = cfg.window_delta
    if getattr(args, "out", "absent") is None and cfg.out:
        args.out = cfg.out
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.config = _resolve_config(args)
        np.seterr(all="ignore")
        status = args.func(args)
        return int(status or 0)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"critline: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ArithmeticError, OSError) as exc:
        print(f"critline: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
