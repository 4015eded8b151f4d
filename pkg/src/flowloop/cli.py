"""Command-line interface.

Exit codes: 0 success, 1 bad input (parse/validation), 2 failed
verification (internal contract or a verify suite reporting failures).
"""

import argparse
import json
import sys

from . import braid, lawrence, template, verify
from .errors import InputError, ParseError, VerificationError
from .zhat import (
    REVERSED,
    STANDARD,
    phi_homogeneous,
    phi_positive,
    zhat as _zhat,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with its own codes; route errors through ours instead
    def error(self, message):
        raise ParseError(message)


def _series_json(series):
    out = []
    for xh in sorted(series.terms):
        q = series.terms[xh]
        out.append({
            "x_exp_half": xh,
            "coeff": [
                {"q_exp_half": e, "value": str(q.terms[e])}
                for e in sorted(q.terms)
            ],
        })
    return out


def _print(payload, as_json, text_lines):
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _word_header(word, stats):
    return [f"braid: {braid.render_word(word)}", f"writhe: {stats.writhe}"]


def _cmd_zhat(args):
    word = braid.parse_braid(args.braid)
    orientation = REVERSED if args.debug_mirror else STANDARD
    res = _zhat(word, args.order, orientation=orientation, cap=args.cap)
    sign, qh, xh = res.prefactor
    pref = f"{sign} * q^({qh}/2) * x^({xh}/2)"
    lines = _word_header(word, res.stats)
    lines.append(f"prefactor: {pref}")
    lines.append(f"phi: {res.phi.render(tail=True)}")
    lines.append(f"zhat: {res.zhat.render(tail=True)}")
    for note in res.notes:
        lines.append(f"note: {note}")
    payload = {
        "braid": braid.render_word(word),
        "n": word.n,
        "writhe": res.stats.writhe,
        "prefactor": {"sign": sign, "q_exp_half": qh, "x_exp_half": xh},
        "phi": _series_json(res.phi),
        "zhat": _series_json(res.zhat),
    }
    _print(payload, args.format == "json", lines)
    return 0


def _cmd_phi(args):
    word = braid.parse_braid(args.braid)
    stats = braid.analyze(word)
    if args.debug_mirror:
        phi = phi_homogeneous(
            word, args.order, cap=args.cap, orientation=REVERSED
        )
    elif stats.cr_minus:
        phi = phi_homogeneous(word, args.order, cap=args.cap)
    else:
        phi = phi_positive(word, args.order, m_cut=args.cap)
    lines = _word_header(word, stats)
    lines.append(f"phi: {phi.render(tail=True)}")
    payload = {
        "braid": braid.render_word(word),
        "n": word.n,
        "writhe": stats.writhe,
        "phi": _series_json(phi),
    }
    _print(payload, args.format == "json", lines)
    return 0


def _cmd_trace(args):
    word = braid.parse_braid(args.braid)
    stats = braid.analyze(word)
    convention = (
        lawrence.UNDER if args.convention == "under" else lawrence.HALF
    )
    traces = lawrence.graded_trace(word, args.mmax, convention)
    lines = _word_header(word, stats)
    for m, tr in enumerate(traces):
        lines.append(f"m={m}: {tr.render()}")
    if args.dump:
        for m in range(args.mmax + 1):
            lines.append(f"weight m={m}:")
            lines.append(lawrence.rep_matrix(word, m, convention).dump())
    payload = {
        "braid": braid.render_word(word),
        "n": word.n,
        "writhe": stats.writhe,
        "convention": args.convention,
        "traces": [
            {"m": m, "series": _series_json(tr)}
            for m, tr in enumerate(traces)
        ],
    }
    _print(payload, args.format == "json", lines)
    return 0


def _cmd_alexander(args):
    word = braid.parse_braid(args.braid)
    stats = braid.analyze(word)
    delta, inv = braid.alexander_classical(word, args.order)
    lines = _word_header(word, stats)
    lines.append(f"Delta: {delta.render()}")
    lines.append(f"inverse: {inv.render(tail=True)}")
    payload = {
        "braid": braid.render_word(word),
        "n": word.n,
        "writhe": stats.writhe,
        "delta": _series_json(delta),
        "inverse": _series_json(inv),
    }
    _print(payload, args.format == "json", lines)
    return 0


def _cmd_orbits(args):
    word = braid.parse_braid(args.braid)
    stats = braid.analyze(word)
    tpl = template.build_template(word)
    orbits = template.enumerate_orbits(tpl, args.max_degree)
    zeta = template.zeta_classical(word, args.max_degree)
    lines = _word_header(word, stats)
    lines.append(f"strips: {len(tpl.strips)}")
    lines.append(f"branch-lines: {tpl.branch_count}")
    lines.append(f"nullity: {tpl.nullity}")
    if args.dump:
        lines.append(tpl.dump())
    lines.append("orbits:")
    for orbit in orbits:
        lines.append(orbit.render())
    lines.append(f"zeta: {zeta.render(tail=True)}")
    payload = {
        "braid": braid.render_word(word),
        "n": word.n,
        "writhe": stats.writhe,
        "strips": [
            {
                "id": s.sid, "src": s.src, "dst": s.dst,
                "mark": s.mark, "twist": s.twist,
            }
            for s in tpl.strips
        ],
        "nullity": tpl.nullity,
        "orbits": [
            {"degree": o.degree, "sign": o.sign, "strips": list(o.strips)}
            for o in orbits
        ],
        "zeta": _series_json(zeta),
    }
    _print(payload, args.format == "json", lines)
    return 0


def _cmd_verify(args):
    results = verify.run_suite(args.suite)
    passed = sum(1 for r in results if r.ok)
    lines = [r.render() for r in results]
    lines.append(f"passed {passed}/{len(results)} checks")
    payload = {
        "suite": args.suite,
        "ok": passed == len(results),
        "results": [
            {
                "suite": r.suite, "name": r.name,
                "ok": r.ok, "detail": r.detail,
            }
            for r in results
        ],
    }
    _print(payload, args.format == "json", lines)
    return 0 if passed == len(results) else 2


def _add_common(sub, braid_arg=True):
    if braid_arg:
        sub.add_argument(
            "--braid", required=True,
            help="braid word, e.g. '1 -2 1 -2' or 'n=4; 1 -2 1 -3 -2'",
        )
    sub.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output format (default text)",
    )


def build_parser():
    parser = _Parser(
        prog="flowloop",
        description="Exact flow-loop counts and BPS q-series for "
                    "homogeneous braid closures",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("zhat", parents=(), help="loop count and BPS series")
    _add_common(p)
    p.add_argument("--order", type=int, default=5,
                   help="truncation order in x (default 5)")
    p.add_argument("--cap", type=int, default=None,
                   help="override the label/weight cutoff (default: order)")
    p.add_argument("--debug-mirror", action="store_true",
                   help="use the rejected orientation of negative charts")
    p.set_defaults(fn=_cmd_zhat)

    p = subs.add_parser("phi", help="loop count only")
    _add_common(p)
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--debug-mirror", action="store_true")
    p.set_defaults(fn=_cmd_phi)

    p = subs.add_parser("trace", help="weight-graded braid traces")
    _add_common(p)
    p.add_argument("--mmax", type=int, default=3,
                   help="largest weight (default 3)")
    p.add_argument("--convention", choices=("half", "under"),
                   default="half")
    p.add_argument("--dump", action="store_true",
                   help="also print the sparse matrices")
    p.set_defaults(fn=_cmd_trace)

    p = subs.add_parser("alexander", help="dual classical invariant")
    _add_common(p)
    p.add_argument("--order", type=int, default=8,
                   help="truncation of the inverse series (default 8)")
    p.set_defaults(fn=_cmd_alexander)

    p = subs.add_parser("orbits", help="template orbits and zeta")
    _add_common(p)
    p.add_argument("--max-degree", type=int, default=3,
                   help="largest orbit degree (default 3)")
    p.add_argument("--dump", action="store_true",
                   help="also print the strip chart")
    p.set_defaults(fn=_cmd_orbits)

    p = subs.add_parser("verify", help="built-in consistency suites")
    _add_common(p, braid_arg=False)
    p.add_argument("--suite", choices=verify.suite_names(), default="all")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
