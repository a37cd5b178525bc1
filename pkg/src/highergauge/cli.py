"""Command-line front end.

    highergauge homology --space torus:2:2 --gauge z2-at-1
    highergauge gsd --space sphere:2 --gauge z4-z2 --json
    highergauge oracle --space torus:2:1 --gauge z2-at-1
    highergauge verify algebra --space torus:2:2 --gauge z2-at-1 --seed 7

Exit codes: 0 success, 1 usage or input error, 2 size cap exceeded,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .abelian import render_group
from .complex import ChainComplex, build_gauge, homology, parse_space, validate
from .homcx import HomComplex
from .invariants import BrownMap, SplittingError, build_splittings, gsd, uct_decomposition

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _common(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--space", metavar="NAME[:params]",
                     help="interval | circle:L | sphere:d | torus:d:L")
    src.add_argument("--space-file", metavar="PATH", help="geometric complex as JSON")
    gauge = p.add_mutually_exclusive_group(required=True)
    gauge.add_argument("--gauge", metavar="NAME", help="z2-at-1 | z4-z2 | zN-at-k | trivial")
    gauge.add_argument("--gauge-file", metavar="PATH", help="gauge complex as JSON")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--max-dim", type=_positive, default=4096,
                   help="largest Hilbert space handled with explicit matrices")
    p.add_argument("--max-count", type=_positive, default=2 ** 20,
                   help="largest set enumerated by the counting route")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="highergauge", description="Ground-state degeneracy of abelian "
                     "higher gauge theories on cell complexes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(sub.add_parser("homology", help="homology of both complexes"))
    _common(sub.add_parser("gsd", help="degeneracy by three cohomological routes"))
    _common(sub.add_parser("oracle", help="brute-force degeneracy on the Hilbert space"))
    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("which", choices=["brown", "uct", "algebra", "spectrum"])
    _common(v)
    return parser


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load(args) -> tuple[ChainComplex, ChainComplex]:
    try:
        if args.space is not None:
            C = parse_space(args.space)
        else:
            data = _load_json(args.space_file)
            if "cells" not in data:
                raise ValueError("field 'cells' is required for a geometric complex")
            C = ChainComplex.from_json(data)
    except ValueError as exc:
        where = args.space if args.space is not None else args.space_file
        raise UsageError(f"{where}: {exc}") from None
    try:
        if args.gauge is not None:
            G = build_gauge(args.gauge)
        else:
            data = _load_json(args.gauge_file)
            if "groups" not in data:
                raise ValueError("field 'groups' is required for a gauge complex")
            G = ChainComplex.from_json(data)
            if not G.is_finite:
                raise ValueError("field 'groups': gauge groups must be finite (no 0 moduli)")
    except ValueError as exc:
        where = args.gauge if args.gauge is not None else args.gauge_file
        raise UsageError(f"{where}: {exc}") from None
    for name, X in (("space", C), ("gauge", G)):
        bad = validate(X)
        if bad is not None:
            raise UsageError(f"{name} complex: field 'boundary', degree {bad.degree}: {bad.message}")
    return C, G


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# commands


def cmd_homology(args, C, G) -> int:
    lo = min(C.degrees + G.degrees, default=0)
    hi = max(C.degrees + G.degrees, default=0)
    rows = [(n, render_group(homology(C, n)), render_group(homology(G, n)))
            for n in range(lo, hi + 1)]
    width = max([len("H_n(C)")] + [len(r[1]) for r in rows])
    lines = [f"{'n':>3}  {'H_n(C)':<{width}}  H_n(G)"]
    lines += [f"{n:>3}  {c:<{width}}  {g}" for n, c, g in rows]
    payload = {"homology": {str(n): {"C": c, "G": g} for n, c, g in rows}}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_gsd(args, C, G) -> int:
    rep = gsd(C, G)
    lines = [f"GSD = {rep.direct}", f"direct: |H^0(C,G)| = {rep.direct}  ({rep.cohomology})",
             "product over degrees:"]
    lines += [f"  n={n}: |H^{n}(C; H_{n}(G))| = {v}" for n, v in sorted(rep.brown_factors.items())]
    if not rep.brown_factors:
        lines.append("  (all H_n(G) trivial)")
    lines.append(f"  product = {rep.brown_product}")
    if rep.uct_factors is None:
        lines.append("universal coefficients: not applicable")
    else:
        lines.append("universal coefficients:")
        lines += [f"  n={n}: |Hom(H_{n}(C), H_{n}(G))| = {h}, |Ext(H_{n - 1}(C), H_{n}(G))| = {e}"
                  for n, (h, e) in sorted(rep.uct_factors.items())]
        lines.append(f"  product = {rep.uct_product}")
    lines.append(f"routes agree: {'yes' if rep.agree else 'NO'}")
    _emit(args, rep.to_json(), lines)
    return EXIT_OK if rep.agree else EXIT_VERIFY


def cmd_oracle(args, C, G) -> int:
    from .quantum import gsd_oracle
    rep = gsd_oracle(C, G, max_dim=args.max_dim, max_count=args.max_count, strict=True)
    lines = [f"counting route:      {rep.counting}",
             f"projector trace:     {rep.trace}",
             f"cohomological:       {rep.cohomological}",
             f"{rep.counting} = {rep.trace} = {rep.cohomological}" if rep.agree
             else "routes DISAGREE"]
    _emit(args, rep.to_json(), lines)
    return EXIT_OK if rep.agree else EXIT_VERIFY


def _suite_output(args, title: str, results: list[tuple[str, bool, str]], extra: dict | None = None):
    lines = [title]
    lines += [f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  {info}" if info else "")
              for name, ok, info in results]
    ok = all(r[1] for r in results)
    lines.append("all properties pass" if ok else "verification FAILED")
    payload = {"suite": title, "passed": ok,
               "properties": [{"name": n, "passed": p, "detail": d} for n, p, d in results]}
    if extra:
        payload.update(extra)
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify_brown(args, C, G) -> int:
    try:
        splittings = build_splittings(G, limit=2)
    except SplittingError as exc:
        return _suite_output(args, "brown", [("splitting exists", False, str(exc))])
    hc = HomComplex(C, G)
    maps = [BrownMap(C, G, s, hc) for s in splittings]
    bm = maps[0]
    results = []
    flat = True
    for n, fac in bm.factors.items():
        for e in fac.group.generators():
            f = bm.alpha({n: fac.representative(e)})
            flat &= hc.delta(0)(f.value).is_zero()
    results.append(("images of representatives are flat", flat, ""))
    results.append(("class map is injective", bm.is_injective(), ""))
    if bm.source.order() <= 64:
        images = {bm(x) for x in bm.source.elements()}
        results.append(("distinct classes have distinct images (exhaustive)",
                        len(images) == bm.source.order(), f"{bm.source.order()} classes"))
    results.append(("orders match", bm.source.order() == bm.H0.group.order(),
                    f"{bm.source.order()} vs {bm.H0.group.order()}"))
    if len(maps) > 1:
        results.append(("independent of the splitting", maps[0].hom.equals(maps[1].hom),
                        "two distinct splittings compared"))
    else:
        results.append(("independent of the splitting", True, "splitting is unique"))
    return _suite_output(args, "brown", results)


def cmd_verify_uct(args, C, G) -> int:
    rep = gsd(C, G)
    results = []
    for n in sorted(rep.brown_factors):
        h, e = uct_decomposition(C, G, n)
        results.append((f"degree {n}: |Hom| * |Ext| = |H^{n}(C; H_{n}(G))|",
                        h.order() * e.order() == rep.brown_factors[n],
                        f"Hom = {render_group(h)}, Ext = {render_group(e)}"))
    results.append(("product equals |H^0(C,G)|", rep.uct_product == rep.direct,
                    f"{rep.uct_product} vs {rep.direct}"))
    return _suite_output(args, "uct", results)


def cmd_verify_algebra(args, C, G) -> int:
    from .quantum import HilbertSpace, run_algebra_suite
    hc = HomComplex(C, G)
    space = HilbertSpace(hc, max_dim=args.max_count)
    res = run_algebra_suite(hc, seed=args.seed, space=space)
    return _suite_output(args, "algebra", [(r.name, r.passed, ("all cells at once" if r.instances == 1
                                                               else f"{r.instances} instances") +
                                            (f", {r.detail}" if r.detail else "")) for r in res],
                         {"seed": args.seed})


def cmd_verify_spectrum(args, C, G) -> int:
    from .quantum import hamiltonian_spectrum
    spec = hamiltonian_spectrum(C, G, max_dim=args.max_dim)
    g = gsd(C, G).direct
    results = [("ground multiplicity equals GSD", spec.multiplicity == g,
                f"{spec.multiplicity} vs {g}"),
               ("ground energy equals minus the number of local terms",
                abs(spec.ground_energy + spec.n_terms) <= 1e-8,
                f"{spec.ground_energy:.10g} vs {-spec.n_terms}")]
    return _suite_output(args, "spectrum", results, {"spectrum": spec.to_json()})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        C, G = _load(args)
        if args.command == "verify":
            fn = {"brown": cmd_verify_brown, "uct": cmd_verify_uct,
                  "algebra": cmd_verify_algebra, "spectrum": cmd_verify_spectrum}[args.which]
        else:
            fn = {"homology": cmd_homology, "gsd": cmd_gsd, "oracle": cmd_oracle}[args.command]
        return fn(args, C, G)
    except UsageError as exc:
        print(f"highergauge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        from .quantum.hilbert import CapExceeded
        if isinstance(exc, CapExceeded):
            print(f"highergauge: resource cap exceeded: {exc}", file=sys.stderr)
            return EXIT_CAP
        raise


if __name__ == "__main__":
    sys.exit(main())
