"""Command line interface.

Each subcommand wraps one library entry point:

    cover-homology   first homology of a cyclic branched cover
    signature        Tristram-Levine signatures of a Seifert matrix
    primes           greedy family of twist parameters with private primes
    deck             deck transformation eigenvalues on the p-torsion
    obstruct         metabolizer sweep for a satellite sum at one prime
    infinite-order   nonsliceness of every multiple of one satellite knot
    independence     nonsliceness of an integer combination of satellites
    verify           recompute a stored certificate and compare

Exit status is 0 when a result was computed (including the verdict
INCONCLUSIVE), 1 on usage errors or violated preconditions, and 2 when
a subspace enumeration exceeds its budget.
"""

import argparse
import sys

from .branched_cover import cover_homology, deck_action
from .exact_linalg import SubspaceBudgetError
from .number_theory import PreconditionError, select_independent_family
from .obstruction import (
    canonical_json,
    certify_infinite_order,
    certify_nonslice,
    independence_certificate,
    verify_certificate,
    write_certificate,
)
from .satellite import amphicheiral_sum
from .seifert import knot_spec, parse_knot, signature_profile, tristram_levine_signature


class _Parser(argparse.ArgumentParser):
    """An argument parser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _print_json(payload) -> None:
    sys.stdout.write(canonical_json(payload))


def _parse_family(text: str) -> list:
    """Parse a family argument like "1:7,2:19" into [(1, 7), (2, 19)].

    >>> _parse_family("1:7,2:19")
    [(1, 7), (2, 19)]
    """
    family = []
    for part in text.split(","):
        pieces = part.split(":")
        if len(pieces) != 2:
            raise PreconditionError(
                "family entries must look like m:p, got %r" % part
            )
        try:
            family.append((int(pieces[0]), int(pieces[1])))
        except ValueError:
            raise PreconditionError(
                "family entries must be integer pairs, got %r" % part
            ) from None
    return family


def _parse_coefficients(text: str) -> list:
    """Parse a coefficient list like "2,-3" into [2, -3].

    >>> _parse_coefficients("2,-3")
    [2, -3]
    """
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise PreconditionError(
            "coefficients must be a comma separated list of integers, got %r"
            % text
        ) from None


def _cmd_cover_homology(args) -> int:
    knot = parse_knot(args.knot)
    homology = cover_homology(knot, args.q)
    if args.json:
        _print_json(
            {
                "knot": knot_spec(knot),
                "q": homology.q,
                "invariant_factors": list(homology.invariant_factors),
                "order": homology.order,
            }
        )
        return 0
    factors = homology.invariant_factors
    if factors:
        group = " + ".join("Z/%d" % d for d in factors)
    else:
        group = "trivial"
    print(
        "H1 of the %d-fold branched cover of %s: %s (order %d)"
        % (homology.q, knot_spec(knot), group, homology.order)
    )
    return 0


def _cmd_signature(args) -> int:
    knot = parse_knot(args.knot)
    if args.profile is not None:
        values = signature_profile(knot, args.profile)
        if args.json:
            _print_json(
                {
                    "knot": knot_spec(knot),
                    "den": args.profile,
                    "values": [
                        {"c": c, "value": v.value, "at_alexander_root": v.at_alexander_root}
                        for c, v in enumerate(values)
                    ],
                }
            )
            return 0
        for c, v in enumerate(values):
            marker = "  (at an Alexander root)" if v.at_alexander_root else ""
            print("sigma(%d/%d) = %d%s" % (c, args.profile, v.value, marker))
        return 0
    if args.c is None or args.den is None:
        raise PreconditionError("provide either --profile DEN or both --c and --den")
    value = tristram_levine_signature(knot, args.c, args.den)
    if args.json:
        _print_json(
            {
                "knot": knot_spec(knot),
                "c": args.c,
                "den": args.den,
                "value": value.value,
                "at_alexander_root": value.at_alexander_root,
            }
        )
        return 0
    marker = "  (at an Alexander root)" if value.at_alexander_root else ""
    print("sigma(%d/%d) = %d%s" % (args.c, args.den, value.value, marker))
    return 0


def _cmd_primes(args) -> int:
    witnesses = select_independent_family(args.count, search_bound=args.search_bound)
    if args.json:
        _print_json(
            [{"m": w.m, "p": w.p, "exponent": w.exponent} for w in witnesses]
        )
        return 0
    for w in witnesses:
        print("m=%d  p=%d  exponent=%d" % (w.m, w.p, w.exponent))
    return 0


def _cmd_deck(args) -> int:
    action = deck_action(args.m, args.q, args.p)
    if args.json:
        _print_json(
            {
                "m": action.m,
                "q": action.q,
                "p": action.p,
                "lambda_plus": action.lam_plus,
                "lambda_minus": action.lam_minus,
            }
        )
        return 0
    print(
        "deck eigenvalues for m=%d, q=%d, p=%d: lambda_plus=%d, lambda_minus=%d"
        % (action.m, action.q, action.p, action.lam_plus, action.lam_minus)
    )
    return 0


def _summarize_obstruction(cert) -> None:
    violating = sum(1 for r in cert.records if r.violates)
    print("verdict: %s" % cert.verdict)
    print("metabolizers: %d" % cert.metabolizers)
    print("violating records: %d of %d" % (violating, len(cert.records)))
    totals = sorted({r.signature_total for r in cert.records if r.signature_total is not None})
    if totals:
        print("signature totals: %s" % ", ".join(str(t) for t in totals))
    for caveat in cert.caveats:
        print("note: %s" % caveat)


def _cmd_obstruct(args) -> int:
    sat = amphicheiral_sum(args.m, args.companion, args.copies)
    if args.all_units:
        certs = [
            certify_nonslice(
                sat,
                args.p,
                q=args.q,
                mode=args.mode,
                bound=args.bound,
                unit=unit,
                jobs=args.jobs,
                budget=args.budget,
            )
            for unit in range(1, args.p)
        ]
        verdicts = {c.verdict for c in certs}
        assert len(verdicts) == 1, "unit sweep produced conflicting verdicts: %s" % verdicts
        cert = certs[0]
        if not args.json:
            print(
                "unit sweep: verdict %s for every unit 1..%d"
                % (cert.verdict, args.p - 1)
            )
    else:
        cert = certify_nonslice(
            sat,
            args.p,
            q=args.q,
            mode=args.mode,
            bound=args.bound,
            unit=args.unit,
            jobs=args.jobs,
            budget=args.budget,
        )
    if args.out:
        write_certificate(cert, args.out)
    if args.json:
        _print_json(cert.to_dict())
        return 0
    _summarize_obstruction(cert)
    if args.out:
        print("certificate written to %s" % args.out)
    return 0


def _cmd_infinite_order(args) -> int:
    cert = certify_infinite_order(
        args.m,
        companion=args.companion,
        p=args.p,
        q=args.q,
        max_n=args.max_n,
        mode=args.mode,
        bound=args.bound,
        unit=args.unit,
        jobs=args.jobs,
        budget=args.budget,
    )
    if args.out:
        write_certificate(cert, args.out)
    if args.json:
        _print_json(cert.to_dict())
        return 0
    print("verdict: %s" % cert.verdict)
    print(
        "sign structure: plus sites %+d, minus sites %+d"
        % (cert.plus_sign, cert.minus_sign)
    )
    print(
        "copies checked: %s"
        % ", ".join(str(c.satellite.n) for c in cert.copies)
    )
    for caveat in cert.caveats:
        print("note: %s" % caveat)
    if args.out:
        print("certificate written to %s" % args.out)
    return 0


def _cmd_independence(args) -> int:
    family = _parse_family(args.family)
    coefficients = _parse_coefficients(args.coeffs)
    cert = independence_certificate(
        family,
        coefficients,
        reduce_index=args.reduce_index,
        companion=args.companion,
        q=args.q,
        mode=args.mode,
        bound=args.bound,
        unit=args.unit,
        jobs=args.jobs,
        budget=args.budget,
    )
    if args.out:
        write_certificate(cert, args.out)
    if args.json:
        _print_json(cert.to_dict())
        return 0
    print("verdict: %s" % cert.verdict)
    print("reduction prime: %d" % cert.p)
    for entry in cert.reduction:
        status = "kept" if entry["kept"] else "dropped"
        print(
            "block %d: m=%d, coefficient %d, cover order %d, %s"
            % (
                entry["index"],
                entry["m"],
                entry["coefficient"],
                entry["cover_order"],
                status,
            )
        )
    if args.out:
        print("certificate written to %s" % args.out)
    return 0


def _cmd_verify(args) -> int:
    report = verify_certificate(args.cert)
    if args.json:
        _print_json({"ok": report.ok, "messages": list(report.messages)})
        return 0 if report.ok else 1
    if report.ok:
        print("certificate verified: %s" % args.cert)
        return 0
    for message in report.messages:
        print("mismatch: %s" % message, file=sys.stderr)
    return 1


def _add_sweep_options(sub) -> None:
    sub.add_argument("--q", type=int, default=3, help="prime power cover degree (default 3)")
    sub.add_argument(
        "--mode",
        choices=("refined", "bounded"),
        default="refined",
        help="violation criterion (default refined)",
    )
    sub.add_argument(
        "--bound",
        type=int,
        default=0,
        help="per-term allowance in bounded mode (default 0)",
    )
    sub.add_argument("--unit", type=int, default=1, help="global unit twist (default 1)")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    sub.add_argument(
        "--budget",
        type=int,
        default=None,
        help="subspace enumeration budget (default from the environment)",
    )
    sub.add_argument("--out", help="write the certificate to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="knotorder",
        description="Casson-Gordon style sliceness obstructions for satellite sums.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser(
        "cover-homology",
        help="first homology of a cyclic branched cover",
    )
    sub.add_argument("--knot", required=True, help="knot specification")
    sub.add_argument("--q", type=int, required=True, help="prime power cover degree")
    sub.set_defaults(func=_cmd_cover_homology)

    sub = subparsers.add_parser(
        "signature",
        help="Tristram-Levine signatures of a Seifert matrix",
    )
    sub.add_argument("--knot", required=True, help="knot specification")
    sub.add_argument("--c", type=int, help="numerator of the twist c/den")
    sub.add_argument("--den", type=int, help="denominator of the twist c/den")
    sub.add_argument(
        "--profile",
        type=int,
        help="tabulate sigma(c/DEN) for every c from 0 to DEN-1",
    )
    sub.set_defaults(func=_cmd_signature)

    sub = subparsers.add_parser(
        "primes",
        help="greedy family of twist parameters with private primes",
    )
    sub.add_argument("--count", type=int, required=True, help="family size")
    sub.add_argument(
        "--search-bound",
        type=int,
        default=None,
        help="largest twist parameter to try",
    )
    sub.set_defaults(func=_cmd_primes)

    sub = subparsers.add_parser(
        "deck",
        help="deck transformation eigenvalues on the p-torsion",
    )
    sub.add_argument("--m", type=int, required=True, help="twist parameter")
    sub.add_argument("--q", type=int, required=True, help="prime power cover degree")
    sub.add_argument("--p", type=int, required=True, help="odd prime")
    sub.set_defaults(func=_cmd_deck)

    sub = subparsers.add_parser(
        "obstruct",
        help="metabolizer sweep for a satellite sum at one prime",
    )
    sub.add_argument("--m", type=int, required=True, help="twist parameter")
    sub.add_argument("--p", type=int, required=True, help="odd prime")
    sub.add_argument(
        "--companion",
        default="trefoil",
        help="companion knot specification (default trefoil)",
    )
    sub.add_argument(
        "--copies",
        type=int,
        default=1,
        help="number of parallel copies (default 1)",
    )
    sub.add_argument(
        "--all-units",
        action="store_true",
        help="sweep every unit 1..p-1 and require one verdict",
    )
    _add_sweep_options(sub)
    sub.set_defaults(func=_cmd_obstruct)

    sub = subparsers.add_parser(
        "infinite-order",
        help="nonsliceness of every multiple of one satellite knot",
    )
    sub.add_argument("--m", type=int, required=True, help="twist parameter")
    sub.add_argument("--p", type=int, required=True, help="odd prime")
    sub.add_argument(
        "--companion",
        default="trefoil",
        help="companion knot specification (default trefoil)",
    )
    sub.add_argument(
        "--max-n",
        type=int,
        default=2,
        help="largest number of copies to sweep (default 2)",
    )
    _add_sweep_options(sub)
    sub.set_defaults(func=_cmd_infinite_order)

    sub = subparsers.add_parser(
        "independence",
        help="nonsliceness of an integer combination of satellites",
    )
    sub.add_argument(
        "--family",
        required=True,
        help="comma separated m:p pairs, for example 1:7,2:19",
    )
    sub.add_argument(
        "--coeffs",
        required=True,
        help="comma separated integer coefficients, for example 2,-3",
    )
    sub.add_argument(
        "--reduce-index",
        type=int,
        default=None,
        help="family index whose prime drives the reduction",
    )
    sub.add_argument(
        "--companion",
        default="trefoil",
        help="companion knot specification (default trefoil)",
    )
    _add_sweep_options(sub)
    sub.set_defaults(func=_cmd_independence)

    sub = subparsers.add_parser(
        "verify",
        help="recompute a stored certificate and compare",
    )
    sub.add_argument("--cert", required=True, help="certificate file")
    sub.set_defaults(func=_cmd_verify)

    for sub_action in subparsers.choices.values():
        sub_action.add_argument(
            "--json",
            action="store_true",
            help="emit the result as canonical JSON",
        )

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SubspaceBudgetError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except (PreconditionError, ValueError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 1
    except OSError as err:
        print("error: %s" % err, file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
