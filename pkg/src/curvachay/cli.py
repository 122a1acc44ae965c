"""Command-line front end.

    curvachay curvature --raach "a:2,b:2,c:2"
    curvachay curvature --group "<a,b | a^4, b^-1 a^2>"
    curvachay verify or --max-gens 3
    curvachay ball --raach "a:3" --radius 1 --format dot
    curvachay eliminate --raach "s0:4,s1:2,s2:2" --r4 s0 --word "s0^-1 s1 s0^2 s2^-1 s0"
    curvachay spectrum --raach "a:2,b:2; commute (a,b)"

Exit codes: 0 ok, 1 a verified claim is violated, 2 input error,
3 a ball or coset budget was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import __version__, linalg
from .bakry_emery import bakry_emery
from .cosets import CosetBudgetExceeded, cayley_from_cosets, todd_coxeter
from .eliminate import eliminate_r4, eliminate_rinf
from .laplacian import NON_NORMALIZED, NORMALIZED, InsufficientRadius
from .ollivier import kappa_lly_laplacian, kappa_lly_transport
from .presentation import ParseError, Presentation, associated_pair, format_word, parse_presentation, parse_raach_body
from .raach import BallTooLarge, ball
from .sweeps import (
    builtin_presentation,
    raach_family,
    sweep_be,
    sweep_cycles,
    sweep_eliminations,
    sweep_laplacian_identity,
    sweep_monotonicity,
    sweep_or,
    summarize,
)
from .theorems import spectral_summary, thm_be_raach, thm_or_raach

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input and output helpers


def load_presentation(args) -> Presentation:
    given = [x for x in (args.raach, args.group, args.file, args.builtin) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --raach, --group, --file, --builtin")
    if args.raach is not None:
        return parse_raach_body(args.raach)
    if args.group is not None:
        text = args.group.strip()
        return parse_presentation(text if text.startswith(("group", "<")) else f"<{text}>")
    if args.builtin is not None:
        try:
            return builtin_presentation(args.builtin)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        try:
            return Presentation.from_json(text)
        except (KeyError, json.JSONDecodeError) as exc:
            raise InputError(f"{args.file} is not a presentation in JSON form: {exc}") from None
    return parse_presentation(text.strip())


def cell(v) -> str:
    """Exact rationals also carry their float; floats print with 12 digits."""
    if v is None:
        return "-"
    if isinstance(v, Fraction):
        return f"{linalg.format_fraction(v)} ({float(v):.12g})"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def json_value(v):
    if isinstance(v, Fraction):
        return {"rational": linalg.format_fraction(v), "float": float(v)}
    return v


def render(rows: list[dict], columns: list[str], fmt: str, header: dict) -> str:
    head = " ".join(f"{k}={v}" for k, v in header.items())
    if fmt == "json":
        doc = dict(header)
        doc["rows"] = [{k: json_value(r.get(k)) for k in columns} for r in rows]
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# {head}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([cell(r.get(k)) for k in columns])
        return buf.getvalue()
    table = [[cell(r.get(k)) for k in columns] for r in rows]
    widths = [max([len(c)] + [len(t[i]) for t in table]) for i, c in enumerate(columns)]
    lines = [f"# {head}", "  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(t, widths)).rstrip() for t in table]
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _kind(args, p: Presentation):
    if args.laplacian is None:
        return NORMALIZED if p.kind == "raach" else NON_NORMALIZED
    return NORMALIZED if args.laplacian == "norm" else NON_NORMALIZED


def _exact_or_float(res):
    return res.exact if res.exact is not None else res.value


# ---------------------------------------------------------------------------
# subcommands


def cmd_curvature(args) -> int:
    p = load_presentation(args)
    kind = _kind(args, p)
    header = {"command": "curvature", "seed": args.seed, "laplacian": kind.name, "input": p.to_text()}
    columns = ["item", "closed_form", "brute_force", "agree"]
    rows = []
    if p.kind == "raach":
        radius = 4 if args.radius is None else args.radius
        if radius < 4:
            raise InsufficientRadius(f"curvature needs --radius >= 4 for Lin-Lu-Yau curvature, got {radius}")
        h = p.graph
        d = len(associated_pair(h))
        scale = Fraction(1, d) if kind is NORMALIZED else Fraction(1)
        g = ball(h, radius, radius_cap=max(radius, 5))
        be = thm_be_raach(h)
        k_closed = linalg.exact_min_eigenvalue(be.a, be.k_numeric)
        k_closed = k_closed * scale if k_closed is not None else be.k_numeric * float(scale)
        k_brute = _exact_or_float(bakry_emery(g, g.root, kind, checks=20, seed=args.seed))
        rows.append({"item": "K(e)", "closed_form": k_closed, "brute_force": k_brute,
                     "agree": abs(float(k_closed) - float(k_brute)) <= 1e-8})
        by_letter = {g.labels[(g.root, v)]: v for v in g.adj[g.root]}
        for s in associated_pair(h).letters:
            closed = thm_or_raach(h, s) * (1 if kind is NORMALIZED else d)
            y = by_letter[s]
            if kind is NORMALIZED:
                brute = kappa_lly_transport(g, g.root, y)
            else:
                brute = kappa_lly_laplacian(g, g.root, y, kind).exact
            rows.append({"item": f"kappa(e, {h.letter_name(s)})", "closed_form": closed,
                         "brute_force": brute, "agree": closed == brute})
    else:
        t = todd_coxeter(p, args.max_cosets)
        g = cayley_from_cosets(t)
        header["order"] = t.n
        names = p.generators
        for x in g.vertices():
            res = bakry_emery(g, x, kind, checks=20, seed=args.seed)
            rows.append({"item": f"K({x})", "brute_force": _exact_or_float(res)})
        for u, v, _ in g.edges():
            res = kappa_lly_laplacian(g, u, v, kind)
            lab = "=".join(format_word((s,), names) for s in g.labels[(u, v)])
            rows.append({"item": f"kappa({u}, {v}) [{lab}]", "brute_force": res.exact})
        columns = ["item", "brute_force"]
    emit(render(rows, columns, args.format, header), args.out)
    if any(r.get("agree") is False for r in rows):
        return EXIT_VIOLATED
    return EXIT_OK


SUITES = ("or", "be", "cycles", "eliminations", "monotonicity", "all")


def _verify_records(suite: str, args):
    fam = lambda: raach_family(args.max_gens)  # noqa: E731
    if suite in ("or", "all"):
        yield from sweep_or(fam())
    if suite in ("be", "all"):
        yield from sweep_be(fam())
        yield from sweep_laplacian_identity(fam())
    if suite in ("cycles", "all"):
        yield from sweep_cycles(fam())
    if suite in ("eliminations", "all"):
        yield from sweep_eliminations(fam(), words=args.words, seed=args.seed)
    if suite in ("monotonicity", "all"):
        pairs = None
        if args.pairs != "builtin":
            try:
                with open(args.pairs, encoding="utf-8") as fh:
                    data = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(f"cannot read pairs file {args.pairs}: {exc}") from None
            pairs = [(d["name"], d["source"], d["added"]) for d in data.get("pairs", data)]
        yield from sweep_monotonicity(pairs)


def cmd_verify(args) -> int:
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    records = []
    try:
        out.write(json.dumps({"command": "verify", "suite": args.suite, "seed": args.seed,
                              "max_gens": args.max_gens}, sort_keys=True) + "\n")
        for r in _verify_records(args.suite, args):
            records.append(r)
            out.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
    finally:
        if args.out:
            out.close()
    bad = [r for r in records if r.status == "violated"]
    for claim, counts in summarize(records).items():
        detail = ", ".join(f"{k} {v}" for k, v in sorted(counts.items()))
        print(f"{claim}: {detail}", file=sys.stderr)
    print(f"{len(records)} records, {len(bad)} violated", file=sys.stderr)
    for r in bad[:5]:
        print("violated: " + json.dumps(r.to_dict(), sort_keys=True), file=sys.stderr)
    return EXIT_VIOLATED if bad else EXIT_OK


def _label_name(p: Presentation):
    names = p.generators

    def name(lab):
        if lab and isinstance(lab[0], tuple):
            return "=".join(format_word((s,), names) for s in lab)
        return format_word((lab,), names)

    return name


def cmd_ball(args) -> int:
    p = load_presentation(args)
    if p.kind == "raach":
        radius = 2 if args.radius is None else args.radius
        g = ball(p, radius, radius_cap=max(radius, 5))
    else:
        g = cayley_from_cosets(todd_coxeter(p, args.max_cosets))
    lab = _label_name(p)
    if args.format == "dot":
        text = f"// curvachay ball seed={args.seed} input={p.to_text()}\n" + g.to_dot("ball", lab)
    elif args.format == "json":
        doc = {"command": "ball", "seed": args.seed, "input": p.to_text(), "graph": g.to_dict(lab)}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        rows = [{"u": u, "v": v, "label": lab(g.labels[(u, v)]), "weight": w} for u, v, w in g.edges()]
        text = render(rows, ["u", "v", "label", "weight"], args.format,
                      {"command": "ball", "seed": args.seed, "vertices": g.n, "edges": g.num_edges()})
    emit(text, args.out)
    return EXIT_OK


def cmd_eliminate(args) -> int:
    p = load_presentation(args)
    if p.kind != "raach":
        raise InputError("eliminate needs a raach presentation")
    h = p.graph
    if (args.r4 is None) == (args.rinf is None):
        raise InputError("give exactly one of --r4 NAME or --rinf NAME")
    name = args.r4 if args.r4 is not None else args.rinf
    if name not in h.generators:
        raise InputError(f"unknown generator {name!r}")
    fn = eliminate_r4 if args.r4 is not None else eliminate_rinf
    try:
        h2, wm = fn(h, name)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    words = [p.word(w) for w in args.word]
    if not words:
        rng = random.Random(args.seed)
        letters = [(g, e) for g in range(len(h)) for e in (1, -1)]
        words = [tuple(rng.choice(letters) for _ in range(rng.randint(3, 8))) for _ in range(args.samples)]
    rows = []
    for w in words:
        image = wm.phi(w)
        back = wm.phi_inv(image)
        rows.append({"word": format_word(w, h.generators), "image": format_word(image, h2.generators),
                     "inverse_image": format_word(back, h.generators)})
    header = {"command": "eliminate", "seed": args.seed, "input": p.to_text(),
              "output": Presentation.from_graph(h2).to_text()}
    emit(render(rows, ["word", "image", "inverse_image"], args.format, header), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    p = load_presentation(args)
    if p.kind != "raach":
        raise InputError("spectrum needs a raach presentation")
    sp = spectral_summary(p.graph)
    rows = [{"index": i + 1, "eigenvalue": v, "note": "lambda2" if i == 1 else ""}
            for i, v in enumerate(sp.spectrum)]
    header = {"command": "spectrum", "seed": args.seed, "input": p.to_text(),
              "letters": " ".join(sp.letters), "lambda2": f"{sp.lambda2:.12g}"}
    emit(render(rows, ["index", "eigenvalue", "note"], args.format, header), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvachay", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats=("table", "json", "csv")):
        src = sp.add_argument_group("input")
        src.add_argument("--raach", help='defining graph, e.g. "a:2,b:3; commute (a,b)"')
        src.add_argument("--group", help='finite presentation, e.g. "<a,b | a^4, b^-1 a^2>"')
        src.add_argument("--file", help="file with a presentation in text or JSON form")
        src.add_argument("--builtin", help="name from the shipped presentation library")
        sp.add_argument("--laplacian", choices=("nonnorm", "norm"),
                        help="default: norm for raach input, nonnorm for group input")
        sp.add_argument("--radius", type=int)
        sp.add_argument("--max-cosets", type=int, default=100_000)
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out")

    sp = sub.add_parser("curvature", help="K(e) and kappa on every generator or edge")
    common(sp)
    sp.set_defaults(func=cmd_curvature)

    sp = sub.add_parser("verify", help="run a theorem harness sweep")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--max-gens", type=int, default=3)
    sp.add_argument("--pairs", default="builtin", help='"builtin" or a JSON file of quotient pairs')
    sp.add_argument("--words", type=int, default=1000, help="random words per elimination case")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("ball", help="dump a ball or a finite Cayley graph")
    common(sp, ("dot", "json", "table", "csv"))
    sp.set_defaults(func=cmd_ball)

    sp = sub.add_parser("eliminate", help="replace an order-4 or infinite-order generator by involutions")
    common(sp)
    sp.add_argument("--r4", metavar="NAME")
    sp.add_argument("--rinf", metavar="NAME")
    sp.add_argument("--word", action="append", default=[], help="word to map (repeatable)")
    sp.add_argument("--samples", type=int, default=5, help="random words when no --word is given")
    sp.set_defaults(func=cmd_eliminate)

    sp = sub.add_parser("spectrum", help="spectrum of the associated pair Laplacian")
    common(sp)
    sp.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, InsufficientRadius) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CosetBudgetExceeded, BallTooLarge) as exc:
        print(f"error: {exc}; raise --max-cosets or lower --radius", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
