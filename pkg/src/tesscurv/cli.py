"""Command-line interface: ``tesscurv <subcommand> [flags]``."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import metric, spectral
from .fileformat import ParseError, fmt_rational, save_patch
from .generate import GenerationError, GenSpec
from .patch import PatchError, curvature_check, validate_patch

EPILOG = """\
exit codes: 0 success / all checks pass, 1 property or expectation failure,
            2 input, flag or margin error.

report schemas (rationals are always written num/den):
  growth    tsv   columns k, ball, sphere, mean_chi [, ratio]
            jsonl {"k", "ball", "sphere", "mean_chi" [, "ratio"]}
  cse       tsv   seed, support, size, certificate; then "summary found=F notfound=N"
            jsonl {"seed", "support", "size", "kind", "certificate"}; then {"summary": ...}
  verify-geometry  lines "k=<k>\\t<check>\\tPASS|FAIL[\\t<detail>]"
  certificates     NOTFOUND dims=<d0,d1,...>
                   FOUND lambda=<num/den | minpoly:c0,...,ck> u=<vid:value,...>
                   (irrational case: value = c0|c1|... in the basis 1, alpha, ...)

support sets: ball:<vid>:<r> (graph ball), list:<v1,v2,...>, face:<fid>.
operators:    random (seeded, see --seed/--magnitude), laplacian, adjacency,
              file:<path> (op 1 format).
"""


class CliError(Exception):
    def __init__(self, msg: str, code: int = 2):
        super().__init__(msg)
        self.code = code


# -- argument handling -------------------------------------------------------


def _int_list(text: str) -> list[int]:
    """Comma-separated integers; ``a-b`` expands to the inclusive range."""
    out = []
    try:
        for part in text.split(","):
            if not part:
                continue
            lo, sep, hi = part.partition("-")
            if sep and lo:
                if int(hi) < int(lo):
                    raise ValueError
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers or ranges a-b, got {text!r}") from None
    return out


def _add_source(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--input", metavar="FILE", help="patch file (tess 1 format)")
    g.add_argument("--regular", nargs=2, type=int, metavar=("P", "Q"), help="regular {P,Q} tiling")
    g.add_argument("--kagome", action="store_true", help="trihexagonal tiling")
    p.add_argument("--radius", type=int, help="generator radius")
    p.add_argument("--f0", type=int, default=0, help="centre face id (default 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tesscurv",
        description="Combinatorial curvature, distance balls and compactly supported eigenfunctions on plane tessellations.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)

    p = add("generate", "generate a patch file")
    _add_source(p)
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")

    p = add("validate", "check patch axioms and curvature")
    _add_source(p)

    p = add("verify-geometry", "run the distance-ball property suite")
    _add_source(p)
    p.add_argument("--kmax", type=int, default=4, help="largest ball radius (default 4)")

    p = add("cse", "certify (non)existence of compactly supported eigenfunctions")
    _add_source(p)
    p.add_argument("--seed", type=_int_list, default=[1], metavar="N[,N-M...]", help="operator seeds (default 1)")
    p.add_argument("--magnitude", type=int, default=4, metavar="M", help="random entry bound (default 4)")
    p.add_argument("--support", action="append", metavar="SPEC", help="repeatable; default ball:0:2")
    p.add_argument("--operator", default="random", metavar="KIND", help="random, laplacian, adjacency or file:PATH")
    p.add_argument("--expect", choices=("none", "some"), help="none: exit 1 if anything is Found; some: exit 1 if nothing is")
    p.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is unaffected)")
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")

    p = add("uc-trace", "trace outside-in vanishing of eigenfunctions")
    _add_source(p)
    p.add_argument("--kmax", type=int, default=3, help="largest ball radius (default 3)")
    p.add_argument("--seed", type=_int_list, default=[1], metavar="N", help="operator seed (default 1)")
    p.add_argument("--magnitude", type=int, default=4, metavar="M", help="random entry bound (default 4)")
    p.add_argument("--operator", default="random", metavar="KIND", help="random, laplacian, adjacency or file:PATH")
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")

    p = add("growth", "ball growth and mean Euler characteristic")
    _add_source(p)
    p.add_argument("--kmax", type=int, default=4, help="largest ball radius (default 4)")
    p.add_argument("--ratio", action="store_true", help="add |B_k+1|/|B_k| column")
    p.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")

    p = add("render", "SVG drawing coloured by the sign of face Euler characteristic")
    _add_source(p)
    p.add_argument("--format", choices=("svg",), default="svg")
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    return ap


def _spec(args) -> GenSpec:
    if args.input:
        return GenSpec("file", path=args.input)
    if args.radius is None:
        raise CliError("--radius is required with a generator")
    if args.regular:
        return GenSpec("regular", radius=args.radius, p=args.regular[0], q=args.regular[1])
    if args.kagome:
        return GenSpec("kagome", radius=args.radius)
    raise CliError("one of --input, --regular, --kagome is required")


def _load(args):
    spec = _spec(args)
    try:
        patch, _ = spec.build()
    except GenerationError as exc:
        raise CliError(f"generation failed: {exc}", 1) from None
    return patch


def _emit(args, text: str) -> None:
    path = getattr(args, "output", None)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_support(patch, spec: str) -> set[int]:
    kind, _, rest = spec.partition(":")
    try:
        if kind == "ball":
            v, r = rest.split(":")
            return spectral.vertex_ball(patch, int(v), int(r))
        if kind == "list":
            return {int(x) for x in rest.split(",") if x}
        if kind == "face":
            f = int(rest)
            if f not in patch.faces:
                raise CliError(f"unknown face {f}")
            return set(patch.faces[f])
    except ValueError:
        pass
    raise CliError(f"bad support spec {spec!r}")


def make_operator(patch, kind: str, seed: int, magnitude: int):
    if kind == "random":
        return spectral.random_elliptic(patch, seed, magnitude)
    if kind == "laplacian":
        return spectral.nearest_neighbour_laplacian(patch)
    if kind == "adjacency":
        return spectral.adjacency_operator(patch)
    if kind.startswith("file:"):
        with open(kind[5:]) as fh:
            return spectral.load_operator(patch, fh.read())
    raise CliError(f"unknown operator {kind!r}")


# -- subcommands -------------------------------------------------------------


def cmd_generate(args) -> int:
    patch = _load(args)
    text = save_patch(patch)
    counts = f"faces={len(patch.faces)} vertices={len(patch.vertices)}\n"
    if args.output:
        _emit(args, text)
        sys.stdout.write(counts)
    else:
        sys.stdout.write(text)
        sys.stderr.write(counts)
    return 0


def cmd_validate(args) -> int:
    patch = _load(args)
    rep = validate_patch(patch)
    for line in rep.lines():
        print(line)
    cc = curvature_check(patch)
    print(
        f"curvature\tnonpositive={'yes' if cc.nonpositive else 'no'}\tchecked={cc.checked}"
        f"\tskipped={cc.skipped}\tmax_kappa={fmt_rational(cc.max_curvature) if cc.max_curvature is not None else '-'}"
    )
    print("valid" if rep.ok else "invalid")
    return 0 if rep.ok else 1


def _check(label_k, name, fn):
    try:
        problems = fn()
    except metric.MarginError:
        raise
    except PatchError as exc:
        problems = [str(exc)]
    if not problems:
        return f"{label_k}\t{name}\tPASS", True
    detail = "; ".join(problems) if isinstance(problems, list) else str(problems)
    return f"{label_k}\t{name}\tFAIL\t{detail}", False


def cmd_verify_geometry(args) -> int:
    patch = _load(args)
    f0, kmax = args.f0, args.kmax
    if kmax < 0:
        raise CliError("--kmax must be >= 0")
    metric.require_margin(patch, f0, kmax + 1)
    cc = curvature_check(patch)
    advisory = not cc.nonpositive
    print("curvature\t" + ("hypothesis not met (advisory mode)" if advisory else "nonpositive"))
    ok = True
    lines = []
    for k in range(kmax + 1):
        tag = f"k={k}"

        def admissible(k=k):
            return metric.ball_violations(patch, f0, k)

        def witness(k=k):
            if k == 0:
                return []
            metric.check_lemma28(metric.enumerate_sphere(patch, f0, k), patch, f0, k)
            return []

        def alternation(k=k):
            return ["forbidden alternating boundary"] if metric.check_forbidden_alternation(patch, f0, k) else []

        def belabel(k=k):
            return metric.belabel_violations(metric.distance_ball(patch, f0, k))

        for name, fn in (("admissible", admissible), ("lemma28", witness), ("alternation", alternation), ("belabel", belabel)):
            line, good = _check(tag, name, fn)
            lines.append(line)
            ok &= good

    def cut():
        c = metric.cut_locus(patch, f0, kmax)
        return [f"cut locus {sorted(c)}"] if c else []

    line, good = _check(f"k<={kmax}", "cutlocus", cut)
    lines.append(line)
    ok &= good
    for line in lines:
        print(line)
    print("result\t" + ("PASS" if ok else "FAIL") + ("\tadvisory" if advisory else ""))
    return 0 if ok or advisory else 1


def _cse_task(job):
    patch, opkind, seed, magnitude, support_name, S = job
    op = make_operator(patch, opkind, seed, magnitude)
    cert = spectral.cse_search(op, S)
    return seed, support_name, len(S), cert


def cmd_cse(args) -> int:
    patch = _load(args)
    specs = args.support or ["ball:0:2"]
    supports = [(s, spectral.make_support(patch, parse_support(patch, s))) for s in specs]
    seeds = args.seed if args.operator == "random" else [args.seed[0]]
    if not seeds:
        raise CliError("--seed needs at least one value")
    if args.magnitude < 1:
        raise CliError("--magnitude must be >= 1")
    make_operator(patch, args.operator, seeds[0], args.magnitude)  # fail fast on a bad operator
    jobs = [(patch, args.operator, seed, args.magnitude, name, S) for seed in seeds for name, S in supports]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_cse_task, jobs))
    else:
        results = [_cse_task(j) for j in jobs]
    out = []
    found = 0
    for seed, name, size, cert in results:
        found += cert.kind == "FOUND"
        if args.format == "jsonl":
            out.append(json.dumps({"seed": seed, "support": name, "size": size, "kind": cert.kind, "certificate": cert.to_line()}))
        else:
            out.append(f"seed={seed}\tsupport={name}\tsize={size}\t{cert.to_line()}")
    nf = len(results) - found
    if args.format == "jsonl":
        out.append(json.dumps({"summary": {"found": found, "notfound": nf}}))
    else:
        out.append(f"summary\tfound={found}\tnotfound={nf}")
    _emit(args, "\n".join(out) + "\n")
    if args.expect == "none":
        return 0 if found == 0 else 1
    if args.expect == "some":
        return 0 if found > 0 else 1
    return 0


def cmd_uc_trace(args) -> int:
    from .trace import unique_continuation_trace

    patch = _load(args)
    op = make_operator(patch, args.operator, args.seed[0], args.magnitude)
    tr = unique_continuation_trace(op, args.f0, args.kmax)
    _emit(args, "\n".join(tr.lines()) + "\n")
    return 0 if tr.success else 1


def cmd_growth(args) -> int:
    patch = _load(args)
    rows = metric.growth_report(patch, args.f0, args.kmax)
    if args.format == "tsv":
        text = metric.growth_tsv(rows, ratio=args.ratio)
    else:
        lines = []
        for i, r in enumerate(rows):
            rec = {"k": r.k, "ball": r.ball, "sphere": r.sphere, "mean_chi": fmt_rational(r.mean_chi)}
            if args.ratio:
                rec["ratio"] = fmt_rational(Fraction(rows[i + 1].ball, r.ball)) if i + 1 < len(rows) else None
            lines.append(json.dumps(rec))
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return 0


def cmd_render(args) -> int:
    from .render import render_svg

    patch = _load(args)
    if not patch.faces:
        raise CliError("empty patch")
    try:
        svg = render_svg(patch)
    except metric.NotAPolygon as exc:
        raise CliError(f"patch is not a disc: {exc}", 1) from None
    _emit(args, svg)
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "validate": cmd_validate,
    "verify-geometry": cmd_verify_geometry,
    "cse": cmd_cse,
    "uc-trace": cmd_uc_trace,
    "growth": cmd_growth,
    "render": cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PatchError, ParseError, GenerationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # never crash with a traceback on bad input
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
