"""``nullcone-lab`` command line: show objects, run checks, run suites.

Exit codes: 0 all passed, 1 some check failed, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from . import groebner as gb
from . import verify as vf
from .ideals import (
    ParameterError,
    ShapeError,
    alpha,
    alpha_gl_labelled,
    expected_height,
    gl_context,
    symplectic_context,
    symplectic_gens,
    valid_rs,
    voc_gens,
    witness_f,
    witness_g,
    yz_entries,
)
from .orders import UnsupportedShape, gl_blocks, lead_term, symplectic_blocks
from .poly import FieldSpec

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SCHEMA = 1


class UsageError(ValueError):
    pass


# -- report -----------------------------------------------------------------------------

@dataclass
class Report:
    version: str
    config: dict
    verdicts: list = field(default_factory=list)
    budget_exhausted: bool = False
    elapsed: float = 0.0

    def summary(self) -> dict:
        passed = sum(1 for v in self.verdicts if v.passed and not v.skipped)
        skipped = sum(1 for v in self.verdicts if v.skipped)
        return {"pass": passed, "fail": len(self.verdicts) - passed - skipped, "skipped": skipped,
                "total": len(self.verdicts), "budget_exhausted": self.budget_exhausted}

    def exit_code(self) -> int:
        if self.budget_exhausted:
            return EXIT_BUDGET
        return EXIT_PASS if self.summary()["fail"] == 0 else EXIT_FAIL

    def to_json(self, timings: bool = True) -> dict:
        summary = self.summary()
        summary["elapsed_ms"] = round(self.elapsed * 1000, 3) if timings else 0
        return {
            "schema": SCHEMA,
            "version": self.version,
            "config": self.config,
            "verdicts": [v.to_json(timings) for v in self.verdicts],
            "summary": summary,
        }

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, d: dict) -> Report:
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        s = d["summary"]
        return cls(d["version"], d["config"], [vf.Verdict.from_json(v) for v in d["verdicts"]],
                   s.get("budget_exhausted", False), s.get("elapsed_ms", 0) / 1000)

    def text(self) -> str:
        lines = []
        for v in self.verdicts:
            tag = "SKIP" if v.skipped else ("PASS" if v.passed else "FAIL")
            params = " ".join(f"{k}={val}" for k, val in v.params.items())
            lines.append(f"{tag} {v.check_name} {params} ({v.elapsed * 1000:.1f} ms) {v.detail}")
        s = self.summary()
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
        return "\n".join(lines)


# -- task execution ---------------------------------------------------------------------

def _field(p):
    return FieldSpec(p) if p else FieldSpec()


def _ideal_for(ctx, which: str, r=None, s=None):
    if which == "nullcone":
        return symplectic_gens(ctx) if ctx.shape == "symplectic" else yz_entries(ctx)
    if which == "yz":
        return yz_entries(ctx)
    if which == "alpha":
        return alpha(ctx)
    if which == "voc":
        return voc_gens(ctx, r, s)
    raise UsageError(f"unknown ideal {which!r}")


def _context(shape, t, n, m=None, p=None):
    return symplectic_context(t, n, _field(p)) if shape == "symplectic" else gl_context(m, t, n, _field(p))


def _task_alpha(shape, t, n, m=None, budget=None):
    return vf.check_alpha_groebner_and_height(_context(shape, t, n, m), budget)


def _task_fedder(shape, t, n, m=None, r=None, s=None, p=2, budget=None):
    ctx = _context(shape, t, n, m, p)
    order = ctx.order()
    if shape == "symplectic":
        I, w = symplectic_gens(ctx), witness_f(ctx) ** (p - 1)
    else:
        I = yz_entries(ctx) if r is None else voc_gens(ctx, r, s)
        w = witness_g(ctx) ** (p - 1)
    return vf.fedder_fpure(I, w, p, order, budget, params=ctx.describe())


def _task_glassbrenner(shape, t, n, m=None, r=None, s=None, p=2, budget=None):
    if shape == "symplectic":
        ctx = _context(shape, t, n, p=p)
        return vf.glassbrenner_fregular(symplectic_gens(ctx), ctx.y(1, n), witness_f(ctx), p, ctx.order(),
                                        budget, params=ctx.describe())
    return vf.check_voc_witness(m, t, n, r, s, p, budget)


def _task_squarefree(shape, t, n, m=None, r=None, s=None, p=None, ideal="nullcone", budget=None):
    ctx = _context(shape, t, n, m, p)
    return vf.check_squarefree_initial(_ideal_for(ctx, ideal, r, s), ctx.order(), budget, params=ctx.describe())


def _task_localization(shape, t, n, m=None, r=None, s=None, budget=None):
    return vf.check_localization(_context(shape, t, n, m), r, s, budget)


def _task_pigeonhole(shape, t, n, m=None, r=None, s=None, p=2, h=None, ideal="nullcone", seed=0, budget=None):
    ctx = _context(shape, t, n, m, p)
    I = _ideal_for(ctx, ideal, r, s)
    if h is None:
        if shape == "symplectic" and ideal == "nullcone":
            h = expected_height(ctx)
        elif ideal == "voc":
            h = expected_height(ctx, "voc", r, s)
        else:
            raise UsageError("--h is required for this ideal")
    return vf.check_pigeonhole(I, h, p, seed=seed, order=ctx.order(), budget=budget, params=ctx.describe())


TASKS = {
    "lemma33": lambda t, n, budget=None: vf.check_lemma_3_3(t, n),
    "lemma53": lambda m, t, n, budget=None: vf.check_lemma_5_3(m, t, n),
    "alpha": _task_alpha,
    "fedder": _task_fedder,
    "glassbrenner": _task_glassbrenner,
    "colon-oracle": lambda t, n, p=2, budget=None: vf.check_symplectic_witness(t, n, p, True, budget),
    "colon-containment": lambda t, n, p=2, budget=None: vf.check_colon_containment(t, n, p, budget),
    "squarefree": _task_squarefree,
    "decomposition": lambda m, t, n, p=None, budget=None: vf.check_nullcone_decomposition(m, t, n, _field(p), budget),
    "localization": _task_localization,
    "compatible-splitting": lambda m, t, n, p=2, budget=None: vf.check_compatible_splitting(m, t, n, p, budget),
    "pigeonhole": _task_pigeonhole,
    "voc-height": lambda m, t, n, r, s, p=None, budget=None: vf.check_voc_height(m, t, n, r, s, _field(p), budget),
    "symplectic-example": lambda budget=None: vf.check_symplectic_example(),
    "gl-example": lambda budget=None: vf.check_gl_example(),
}


def run_task(task: tuple[str, dict]) -> vf.Verdict:
    name, kwargs = task
    try:
        return TASKS[name](**kwargs)
    except gb.BudgetExceeded as exc:
        return vf.Verdict(name, {k: v for k, v in kwargs.items() if k != "budget"}, False,
                          detail=f"budget exhausted: {exc}", skipped=True)


def run_tasks(tasks: list, jobs: int = 1) -> list[vf.Verdict]:
    """Run tasks, in parallel when ``jobs > 1``; results keep task order."""
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_task, tasks))
    return [run_task(t) for t in tasks]


# -- task builders ----------------------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join(f"--{n.replace('_', '-')}" for n in missing))
    for n in names:
        if getattr(args, n) < (0 if n in ("r", "s") else 1):
            raise UsageError(f"--{n} out of range")


def _rs_pairs(args, exact_only=False):
    m, t, n = args.m, args.t, args.n
    if args.r is not None or args.s is not None:
        _need(args, "r", "s")
        if (args.r, args.s) not in valid_rs(m, t, n):
            raise UsageError(f"invalid (r, s) = ({args.r}, {args.s}) for m={m}, t={t}, n={n}")
        return [(args.r, args.s)]
    return valid_rs(m, t, n, exact=exact_only)


def _gl_order_ok(m, t, n):
    if t > min(m, n):
        raise UsageError(f"the block order needs t <= min(m, n); got m={m}, t={t}, n={n}")


def _prime(args) -> int:
    if args.field == "qq":
        raise UsageError("Frobenius certificates need --field fp")
    return args.p


def _fp_or_none(args):
    return args.p if args.field == "fp" else None


def build_check(args) -> list:
    name, b = args.name, args.budget
    if name == "lemma33":
        if args.t is not None and args.n is not None:
            _need(args, "t", "n")
            return [(name, {"t": args.t, "n": args.n})]
        return [(name, {"t": t, "n": n}) for t in range(1, (args.t_max or 6) + 1)
                for n in range(1, (args.n_max or 6) + 1)]
    if name == "lemma53":
        if None not in (args.m, args.t, args.n):
            _need(args, "m", "t", "n")
            _gl_order_ok(args.m, args.t, args.n)
            return [(name, {"m": args.m, "t": args.t, "n": args.n})]
        return [(name, {"m": m, "t": t, "n": n}) for m in range(1, (args.m_max or 5) + 1)
                for n in range(1, (args.n_max or 5) + 1) for t in range(1, min(m, n) + 1)]
    if name in ("symplectic-example", "gl-example"):
        return [(name, {})]
    if name in ("colon-oracle", "colon-containment"):
        _need(args, "t", "n")
        return [(name, {"t": args.t, "n": args.n, "p": _prime(args), "budget": b})]
    if name in ("decomposition", "compatible-splitting", "voc-height"):
        _need(args, "m", "t", "n")
        base = {"m": args.m, "t": args.t, "n": args.n, "budget": b}
        if name == "compatible-splitting":
            _gl_order_ok(args.m, args.t, args.n)
            return [(name, dict(base, p=_prime(args)))]
        if name == "decomposition":
            return [(name, dict(base, p=_fp_or_none(args)))]
        return [(name, dict(base, r=r, s=s, p=_fp_or_none(args))) for r, s in _rs_pairs(args)]

    # shape-dependent checks
    shape = args.shape or ("gl" if args.m is not None else "symplectic")
    if shape == "symplectic":
        _need(args, "t", "n")
        base = {"shape": shape, "t": args.t, "n": args.n, "budget": b}
    else:
        _need(args, "m", "t", "n")
        _gl_order_ok(args.m, args.t, args.n)
        base = {"shape": shape, "m": args.m, "t": args.t, "n": args.n, "budget": b}
    if name == "alpha":
        return [(name, base)]
    if name == "fedder":
        if shape == "gl" and args.r is not None:
            r, s = _rs_pairs(args)[0]
            return [(name, dict(base, r=r, s=s, p=_prime(args)))]
        return [(name, dict(base, p=_prime(args)))]
    if name == "glassbrenner":
        if shape == "symplectic":
            return [(name, dict(base, p=_prime(args)))]
        pairs = [(r, s) for r, s in _rs_pairs(args) if r >= 1 and s >= 1]
        if not pairs:
            raise UsageError("the variety of complexes witness needs r >= 1 and s >= 1")
        return [(name, dict(base, r=r, s=s, p=_prime(args))) for r, s in pairs]
    if name == "squarefree":
        extra = {"p": _fp_or_none(args), "ideal": args.ideal}
        if args.ideal == "voc":
            r, s = _rs_pairs(args)[0] if args.r is not None else (None, None)
            if r is None:
                raise UsageError("--ideal voc needs --r and --s")
            extra.update(r=r, s=s)
        return [(name, dict(base, **extra))]
    if name == "localization":
        if shape == "symplectic":
            if args.t < 2 or args.n < 2:
                raise UsageError("localization needs t >= 2 and n >= 2")
            return [(name, base)]
        if min(args.m, args.t, args.n) < 2:
            raise UsageError("localization needs m, t, n >= 2")
        return [(name, dict(base, r=r, s=s)) for r, s in _rs_pairs(args) if r >= 1]
    if name == "pigeonhole":
        extra = {"p": _prime(args), "h": args.h, "ideal": args.ideal, "seed": args.seed}
        if args.ideal == "voc":
            r, s = _rs_pairs(args)[0] if args.r is not None else (None, None)
            if r is None:
                raise UsageError("--ideal voc needs --r and --s")
            extra.update(r=r, s=s)
        elif args.h is None and shape != "symplectic":
            raise UsageError("--h is required for this ideal")
        return [(name, dict(base, **extra))]
    raise UsageError(f"unknown check {name!r}; choose from {', '.join(sorted(TASKS))}")


SUITES = ("paper-examples", "symplectic-grid", "gl-grid", "frobenius-desk")


def build_suite(args) -> list:
    b = args.budget
    fp = _fp_or_none(args)
    if args.name == "paper-examples":
        return [
            ("symplectic-example", {}),
            ("gl-example", {}),
            ("lemma33", {"t": 2, "n": 4}),
            ("alpha", {"shape": "symplectic", "t": 2, "n": 4, "budget": b}),
            ("lemma53", {"m": 5, "t": 3, "n": 5}),
            ("glassbrenner", {"shape": "symplectic", "t": 2, "n": 4, "p": _prime(args), "budget": b}),
        ]
    if args.name == "symplectic-grid":
        tmax, nmax = args.t_max or 5, args.n_max or 5
        tasks = [("lemma33", {"t": t, "n": n}) for t in range(1, 7) for n in range(1, 7)]
        tasks += [("alpha", {"shape": "symplectic", "t": t, "n": n, "budget": b})
                  for t in range(1, tmax + 1) for n in range(1, nmax + 1)]
        tasks += [("squarefree", {"shape": "symplectic", "t": t, "n": n, "p": fp, "budget": b})
                  for t, n in [(1, 3), (1, 4), (2, 3)]]
        tasks += [("localization", {"shape": "symplectic", "t": 2, "n": n, "budget": b}) for n in (2, 3)]
        return tasks
    if args.name == "gl-grid":
        mmax, nmax = args.m_max or 5, args.n_max or 5
        grid = [(m, t, n) for m in range(1, mmax + 1) for n in range(1, nmax + 1) for t in range(1, min(m, n) + 1)]
        tasks = [("lemma53", {"m": m, "t": t, "n": n}) for m, t, n in grid]
        tasks += [("alpha", {"shape": "gl", "m": m, "t": t, "n": n, "budget": b}) for m, t, n in grid]
        tasks += [("decomposition", {"m": m, "t": t, "n": n, "p": fp, "budget": b})
                  for m, t, n in [(1, 1, 1), (2, 2, 2), (3, 2, 2), (2, 2, 3)]]
        tasks += [("voc-height", {"m": m, "t": t, "n": n, "r": r, "s": s, "p": fp, "budget": b})
                  for m, t, n in [(2, 2, 2), (3, 2, 2)] for r, s in valid_rs(m, t, n)]
        tasks += [("localization", {"shape": "gl", "m": 2, "t": 2, "n": 2, "r": r, "s": s, "budget": b})
                  for r, s in valid_rs(2, 2, 2) if r >= 1]
        tasks += [("squarefree", {"shape": "gl", "m": 2, "t": 2, "n": 2, "p": fp, "ideal": "yz", "budget": b}),
                  ("squarefree", {"shape": "gl", "m": 2, "t": 2, "n": 2, "p": fp, "ideal": "voc", "r": 1, "s": 1,
                                  "budget": b})]
        return tasks
    if args.name == "frobenius-desk":
        p = _prime(args)
        tasks = [("glassbrenner", {"shape": "symplectic", "t": t, "n": n, "p": p, "budget": b})
                 for t, n in [(1, 2), (1, 3), (2, 2), (2, 3), (2, 4)]]
        tasks += [("colon-oracle", {"t": t, "n": n, "p": p, "budget": b}) for t, n in [(1, 2), (1, 3)]]
        tasks += [("colon-containment", {"t": t, "n": n, "p": p, "budget": b}) for t, n in [(1, 3), (2, 3)]]
        tasks += [("fedder", {"shape": "gl", "m": 2, "t": 2, "n": 2, "p": p, "budget": b})]
        tasks += [("compatible-splitting", {"m": m, "t": t, "n": n, "p": p, "budget": b})
                  for m, t, n in [(2, 2, 2), (3, 2, 3)]]
        tasks += [("glassbrenner", {"shape": "gl", "m": 2, "t": 2, "n": 2, "r": r, "s": s, "p": p, "budget": b})
                  for r, s in [(1, 1)]]
        tasks += [("glassbrenner", {"shape": "gl", "m": 3, "t": 2, "n": 3, "r": 1, "s": 1, "p": p, "budget": b})]
        tasks += [("pigeonhole", {"shape": "symplectic", "t": 1, "n": 3, "p": p, "h": 2, "ideal": "nullcone",
                                  "seed": args.seed, "budget": b})]
        return tasks
    raise UsageError(f"unknown suite {args.name!r}; choose from {', '.join(SUITES)}")


# -- show -------------------------------------------------------------------------------

def cmd_show(args) -> dict:
    what = args.name
    if what == "symplectic-order":
        _need(args, "t", "n")
        return symplectic_blocks(args.t, args.n).descriptor()
    if what == "gl-order":
        _need(args, "m", "t", "n")
        _gl_order_ok(args.m, args.t, args.n)
        return gl_blocks(args.m, args.t, args.n).descriptor()
    if what in ("ideal", "leads"):
        shape = args.shape or ("gl" if args.m is not None else "symplectic")
        if shape == "symplectic":
            _need(args, "t", "n")
        else:
            _need(args, "m", "t", "n")
        ctx = _context(shape, args.t, args.n, args.m, _fp_or_none(args))
        if args.ideal == "voc":
            _need(args, "r", "s")
        try:
            order = ctx.order()
        except UnsupportedShape:
            order = None
        if what == "ideal":
            return _ideal_for(ctx, args.ideal, args.r, args.s).to_json(ctx, order)
        if order is None:
            raise UsageError("lead terms need a shape with a block order")
        if shape == "gl":
            items = alpha_gl_labelled(ctx)
        else:
            items = [(f"d[{i},{j}]", g) for (i, j), g in _symplectic_alpha_items(ctx)]
        return {"shape": ctx.describe(),
                "leads": {label: ctx.ring.monomial_text(lead_term(order, g)[0]) for label, g in items}}
    raise UsageError(f"unknown object {what!r}; choose symplectic-order, gl-order, ideal or leads")


def _symplectic_alpha_items(ctx):
    from .ideals import alpha_pairs, d_entry

    return [((i, j), d_entry(ctx, i, j)) for i, j in alpha_pairs(*ctx.params)]


def _show_text(obj: dict) -> str:
    if "block_matrix_Y" in obj:
        out = [f"{obj['kind']} {tuple(obj['params'])}"]
        for tag in ("Y", "Z"):
            mat = obj.get(f"block_matrix_{tag}")
            if mat:
                width = max(len(str(x)) for row in mat for x in row)
                out.append(f"{tag}:")
                out.extend("  " + " ".join(str(x).rjust(width) for x in row) for row in mat)
        return "\n".join(out)
    if "generators" in obj:
        return "\n".join([obj["label"]] + obj["generators"])
    return "\n".join(f"{k}: {v}" for k, v in obj["leads"].items())


# -- entry point ------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nullcone-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for cmd, helptext in (("show", "print generators, block matrices or lead terms"),
                          ("check", "run one named check"),
                          ("suite", "run a curated set of checks")):
        sp = sub.add_parser(cmd, help=helptext)
        sp.add_argument("name")
        for flag in ("t", "n", "m", "r", "s", "h", "t-max", "n-max", "m-max"):
            sp.add_argument(f"--{flag}", type=int)
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("--field", choices=("fp", "qq"), default="fp")
        sp.add_argument("--shape", choices=("symplectic", "gl"))
        sp.add_argument("--ideal", choices=("nullcone", "yz", "alpha", "voc"), default="nullcone")
        sp.add_argument("--budget", type=int, default=gb.DEFAULT_BUDGET)
        sp.add_argument("--out")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        sp.add_argument("--no-timings", action="store_true", help="zero all timings so reports are byte-identical")
    return ap


def _config(args) -> dict:
    keys = ("command", "name", "m", "t", "n", "r", "s", "h", "p", "field", "shape", "ideal", "budget", "seed",
            "t_max", "n_max", "m_max")
    return {k: getattr(args, k) for k in keys}


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        FieldSpec(args.p)
        if args.command == "show":
            obj = cmd_show(args)
            text = json.dumps(obj, indent=2, sort_keys=True)
            print(text if args.json else _show_text(obj))
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text + "\n")
            return EXIT_PASS
        tasks = build_check(args) if args.command == "check" else build_suite(args)
        t0 = time.perf_counter()
        verdicts = run_tasks(tasks, args.jobs)
    except (UsageError, ParameterError, ShapeError, UnsupportedShape, gb.FieldMismatch, ValueError) as exc:
        print(f"nullcone-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = Report(__version__, _config(args), verdicts,
                    budget_exhausted=any(v.skipped for v in verdicts), elapsed=time.perf_counter() - t0)
    timings = not args.no_timings
    print(report.dumps(timings) if args.json else report.text())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.dumps(timings) + "\n")
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
