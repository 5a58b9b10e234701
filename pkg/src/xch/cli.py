"""Command-line front end: validate problem files, compute homology
tables, and run the structural verifications.

Reports are deterministic: the same input produces byte-identical
output regardless of thread count or repetition, in both text and JSON
renderings (the two carry the same numbers).  Wall-clock timing goes to
stderr so it never perturbs the report bytes.

Exit codes: 0 success, 1 mathematical failure or violated hypothesis,
2 unreadable input (I/O, JSON, schema, unresolved name), 3 estimated
work above the coordinate budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .algebras import is_two_sided_ideal
from .complexes import algebra_complex, estimate_cell_dims, xmod_complex
from .homology import ExactnessReport, homology
from .linalg import image, rank
from .problem import ProblemError, axiom_report, load_problem
from .verify import (
    gamma_complex,
    relative_cyclic_complex,
    require_char_zero,
    verify_connection,
    verify_connes_periodicity,
    verify_excision,
    verify_five_term,
    verify_quotient_collapse,
    verify_relative_match,
    verify_tensor_level_homology,
)

WHAT_FLAVOR = {"hh": "CC2", "hc": "CC", "hbar": "Cbar", "hhnaive": "C"}
WHATS = ("hh", "hc", "hbar", "hhnaive", "xihc", "relhc")
THEOREMS = (
    "connes",
    "five-term",
    "excision",
    "relat",
    "connection",
    "corollary-corx",
    "lemma-3.7",
)
DEFAULT_BUDGET = 200000


class BudgetError(Exception):
    def __init__(self, degree: int, estimate: int, budget: int):
        super().__init__(
            f"estimated {estimate} coordinates at degree {degree} "
            f"exceeds budget {budget}"
        )


def _budget_from(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("XCH_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _guard(level_dims, flavor: str, hi: int, budget: int) -> None:
    for n, d in sorted(estimate_cell_dims(level_dims, flavor, hi).items()):
        if d > budget:
            raise BudgetError(n, d, budget)


def _xmod_levels(x, hi: int) -> list:
    return [p * x.R.dim + x.A.dim for p in range(hi + 1)]


def _guard_theorem(theorem: str, objects, n: int, budget: int) -> None:
    if theorem == "excision":
        for ext in objects:
            _guard(_xmod_levels(ext.mid, n + 2), "CC2", n + 2, budget)
        return
    for x in objects:
        if theorem == "connes":
            _guard(_xmod_levels(x, n + 1), "CC", n + 1, budget)
        elif theorem == "five-term":
            _guard(_xmod_levels(x, 3), "CC", 3, budget)
        elif theorem in ("relat", "connection"):
            _guard(_xmod_levels(x, n + 2), "CC", n + 2, budget)
        elif theorem == "corollary-corx":
            _guard(_xmod_levels(x, n + 1), "CC", n + 1, budget)
        else:  # tensor levels
            top = ((n + 1) * x.R.dim + x.A.dim) ** (n + 1)
            if top > budget:
                raise BudgetError(n + 1, top, budget)


# -- report assembly ----------------------------------------------------------


def _exactness_result(object_name: str, rep: ExactnessReport) -> dict:
    return {
        "object": object_name,
        "name": rep.name,
        "exact": rep.exact,
        "positions": [
            {
                "index": p.index,
                "label": p.label,
                "dim": p.dim,
                "composite_zero": p.comp_zero,
                "kernel_dim": p.ker_dim,
                "image_dim": p.im_dim,
                "exact": p.exact,
            }
            for p in rep.positions
        ],
        "notes": list(rep.notes),
    }


def _render_text(rep: dict) -> str:
    lines = [f"xch {rep['command']} file={rep['file']}"]
    task = rep["task"]
    if task:
        lines.append("task " + " ".join(f"{k}={task[k]}" for k in sorted(task)))
    lines.append(f"scalars {rep['scalar_mode']}")
    for r in rep["results"]:
        if "valid" in r:
            lines.append(
                f"{r['kind']} {r['object']}: "
                + ("ok" if r["valid"] else "FAIL")
            )
            for fl in r["failures"]:
                where = f" at {fl['witness']}" if fl["witness"] else ""
                lines.append(f"  violated: {fl['law']}{where}")
        elif "table" in r:
            lines.append(f"{r['object']} {r['what']}")
            for row in r["table"]:
                lines.append(f"  degree {row['degree']}: dim {row['dim']}")
                for vec in row.get("representatives", []):
                    terms = " + ".join(
                        f"({vec[k]})*{k}" for k in sorted(vec)
                    )
                    lines.append(f"    cycle: {terms if terms else '0'}")
        else:
            lines.append(
                f"{r['name']}: " + ("PASS" if r["exact"] else "FAIL")
            )
            for p in r["positions"]:
                mark = "ok  " if p["exact"] else "FAIL"
                lines.append(
                    f"  {mark} [{p['index']:>2}] {p['label']}"
                    f" dim={p['dim']}"
                    f" composite_zero={'yes' if p['composite_zero'] else 'no'}"
                    f" ker={p['kernel_dim']} im={p['image_dim']}"
                )
            for note in r["notes"]:
                lines.append(f"  note: {note}")
    lines.append(f"exit {rep['exit_code']}")
    return "\n".join(lines) + "\n"


def _emit(rep: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    else:
        out.write(_render_text(rep))


# -- commands -----------------------------------------------------------------


def _run_validate(args) -> dict:
    p = load_problem(args.file)
    results = axiom_report(p)
    return {
        "command": "validate",
        "file": args.file,
        "task": {},
        "scalar_mode": p.field.name,
        "results": results,
        "exit_code": 0 if all(r["valid"] for r in results) else 1,
    }


def _homology_table(complex_, degrees, threads, with_reps, to_ambient=None):
    def one(n):
        dim, reps = homology(complex_, n)
        row = {"degree": n, "dim": dim}
        if with_reps:
            f = complex_.field
            labels = complex_.labels.get(n, ())
            vectors = []
            for vec in reps:
                if to_ambient is not None:
                    vec = to_ambient.maps[n].apply(vec)
                    labels_n = to_ambient.target.labels.get(n, ())
                else:
                    labels_n = labels
                vectors.append(
                    {
                        labels_n[i] if i < len(labels_n) else f"c{i}": (
                            int(v) if f.char or v.denominator == 1 else str(v)
                        )
                        for i, v in sorted(vec.items())
                    }
                )
            row["representatives"] = vectors
        return row

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(one, degrees))
    return [one(n) for n in degrees]


def _run_compute(args) -> dict:
    p = load_problem(args.file)
    budget = _budget_from(args)
    n = args.max_degree
    kind, obj = p.resolve(args.object)
    if args.what in WHAT_FLAVOR:
        flavor = WHAT_FLAVOR[args.what]
        if kind == "xmod":
            _guard(_xmod_levels(obj, n + 1), flavor, n + 1, budget)
            c = xmod_complex(obj, flavor, (0, n + 1))
        elif kind == "algebra":
            _guard([obj.dim] * (n + 2), flavor, n + 1, budget)
            c = algebra_complex(obj, flavor, (0, n + 1))
        else:
            raise ProblemError(
                args.object, f"--what {args.what} needs a crossed module"
            )
        table = _homology_table(c, range(n + 1), args.threads, args.bases)
    elif args.what == "xihc":
        if kind != "xmod":
            raise ProblemError(args.object, "--what xihc needs a crossed module")
        require_char_zero(p.field, "cotriple cyclic homology")
        _guard(_xmod_levels(obj, n + 2), "CC", n + 2, budget)
        gamma = gamma_complex(obj, (0, n + 2))
        table = _homology_table(
            gamma, range(1, n + 2), args.threads, args.bases
        )
        table = [
            {**row, "degree": row["degree"] - 1} for row in table
        ]
    else:  # relhc
        if kind != "subspace":
            raise ProblemError(
                args.object, "--what relhc needs a declared subspace"
            )
        ambient_name, sub = obj
        a = p.algebras[ambient_name]
        require_char_zero(p.field, "relative cyclic homology")
        _guard([a.dim] * (n + 2), "CC", n + 1, budget)
        kc, inc = relative_cyclic_complex(a, sub, (0, n + 1))
        table = _homology_table(
            kc, range(n + 1), args.threads, args.bases, to_ambient=inc
        )
    return {
        "command": "compute",
        "file": args.file,
        "task": {
            "object": args.object,
            "what": args.what,
            "max_degree": n,
            "bases": args.bases,
        },
        "scalar_mode": p.field.name,
        "results": [
            {"object": args.object, "what": args.what, "table": table}
        ],
        "exit_code": 0,
    }


def _is_inclusion(x) -> bool:
    return (
        rank(x.rho) == x.R.dim
        and is_two_sided_ideal(x.A, image(x.rho)) is None
    )


def _verify_targets(p, theorem: str):
    """(object names, max_degree hint) for a theorem, from the task list
    when it pins them, otherwise every suitable declared object."""
    names, hint = [], None
    for t in p.tasks:
        if t.get("command") == "verify" and t.get("theorem") == theorem:
            names.extend(t.get("objects", []))
            if "object" in t:
                names.append(t["object"])
            if hint is None:
                hint = t.get("max_degree")
    if names:
        return names, hint
    if theorem == "excision":
        return list(p.extensions), None
    if theorem in ("relat", "corollary-corx"):
        return [n for n, x in p.xmods.items() if _is_inclusion(x)], None
    return list(p.xmods), None


def _run_verify(args) -> dict:
    p = load_problem(args.file)
    budget = _budget_from(args)
    names, hint = _verify_targets(p, args.theorem)
    n = args.max_degree if args.max_degree is not None else (
        hint if hint is not None else 2
    )
    if not names:
        need = "extension" if args.theorem == "excision" else "crossed module"
        raise ValueError(f"no suitable {need} declared in {args.file}")
    want = "extension" if args.theorem == "excision" else "xmod"
    objects = []
    for name in names:
        kind, obj = p.resolve(name)
        if kind != want:
            raise ProblemError(name, f"theorem {args.theorem} needs an {want}")
        objects.append((name, obj))
    _guard_theorem(args.theorem, [o for _, o in objects], n, budget)
    results = []
    for name, obj in objects:
        if args.theorem == "connes":
            reps = [verify_connes_periodicity(obj, n)]
        elif args.theorem == "five-term":
            reps = [verify_five_term(obj)]
        elif args.theorem == "excision":
            reps = [verify_excision(obj, n)]
        elif args.theorem == "relat":
            reps = [verify_relative_match(obj, n)]
        elif args.theorem == "connection":
            reps = list(verify_connection(obj, n))
        elif args.theorem == "corollary-corx":
            reps = [verify_quotient_collapse(obj, n)]
        else:
            reps = [verify_tensor_level_homology(obj, n, n)]
        results.extend(_exactness_result(name, r) for r in reps)
    return {
        "command": "verify",
        "file": args.file,
        "task": {"theorem": args.theorem, "max_degree": n},
        "scalar_mode": p.field.name,
        "results": results,
        "exit_code": 0 if all(r["exact"] for r in results) else 1,
    }


# -- argument parsing ---------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="xch",
        description="Exact homology of crossed modules of algebras.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("file", help="JSON problem file")
        sp.add_argument(
            "--format", choices=("text", "json"), default="text"
        )

    sp = sub.add_parser("validate", help="check every axiom in the file")
    common(sp)

    sp = sub.add_parser("compute", help="homology table for one object")
    common(sp)
    sp.add_argument("--object", required=True, help="declared object name")
    sp.add_argument("--what", required=True, choices=WHATS)
    sp.add_argument("--max-degree", type=int, default=3)
    sp.add_argument(
        "--bases", action="store_true", help="include representative cycles"
    )
    sp.add_argument(
        "--threads",
        type=int,
        default=1,
        help="degree-level parallelism; output is independent of this",
    )
    sp.add_argument(
        "--budget",
        type=int,
        default=None,
        help=f"coordinate cap per degree (default {DEFAULT_BUDGET}, "
        "env XCH_BUDGET)",
    )

    sp = sub.add_parser("verify", help="run one structural verification")
    common(sp)
    sp.add_argument("--theorem", required=True, choices=THEOREMS)
    sp.add_argument("--max-degree", type=int, default=None)
    sp.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for symmetry; verification is sequential",
    )
    sp.add_argument("--budget", type=int, default=None)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    started = time.monotonic()
    try:
        if args.cmd == "validate":
            rep = _run_validate(args)
        elif args.cmd == "compute":
            rep = _run_compute(args)
        else:
            rep = _run_verify(args)
    except json.JSONDecodeError as exc:
        print(
            f"parse error: {args.file}:{exc.lineno}:{exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return 2
    except ProblemError as exc:
        print(f"problem error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"elapsed {time.monotonic() - started:.3f}s", file=sys.stderr)
    _emit(rep, args.format, sys.stdout)
    return rep["exit_code"]


if __name__ == "__main__":
    raise SystemExit(main())
