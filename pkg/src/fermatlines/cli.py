"""Command line entry point: ``fermatlines <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import FermatError


def _ints(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def cmd_invariants(args) -> int:
    from .combinatorics import surface_invariants
    inv = surface_invariants(args.m)
    print(json.dumps(inv.as_dict(), indent=2))
    return 0


def cmd_gram(args) -> int:
    from .lines import gram_matrix, rational_basis
    B = rational_basis(args.degree)
    G = gram_matrix(B, args.degree)
    if args.out:
        np.savetxt(args.out, G, fmt="%d")
    else:
        np.savetxt(sys.stdout, G, fmt="%d")
    return 0


def cmd_verify_lemma(args) -> int:
    from .lines import relation_block_determinants
    bad = 0
    for m in range(2, args.max_m + 1):
        for r in range(1, m + 1):
            got = relation_block_determinants(m, r)
            sign = (-1) ** (m - 1)
            if got != (sign * m, sign * m, m * m):
                print(f"m={m} r={r}: {got}")
                bad += 1
    print("lemma holds" if not bad else f"{bad} failures", f"for m <= {args.max_m}")
    return 1 if bad else 0


def cmd_disc(args) -> int:
    from .linalg import det_exact
    from .lines import gram_matrix, rational_basis
    from .numtheory import factorize, format_factorization
    d = det_exact(gram_matrix(rational_basis(args.m), args.m), workers=args.workers)
    if args.raw:
        print(d)
    else:
        fac, rest = factorize(abs(d))
        print(format_factorization(fac, rest, -1 if d < 0 else 1))
    return 0


def cmd_find_cover(args) -> int:
    from .charp import find_cover_params
    c = find_cover_params(args.m, max_r=args.max_r)
    print(json.dumps({"m": c.m, "r": c.r, "q": c.q, "p": c.p, "n": c.n}))
    return 0


def cmd_find_line(args) -> int:
    from .charp import find_cover_params, find_special_line
    from .field_tower import build_field_ctx, find_defining_poly
    cover = find_cover_params(args.degree)
    f = _ints(args.f) if args.f else find_defining_poly(cover.p, args.degree, seed=args.seed)
    ctx = build_field_ctx(cover.p, f, args.degree, source="given" if args.f else "search")
    alpha, beta = find_special_line(ctx, cover, seed=args.seed)
    print(json.dumps({"m": args.degree, "q": cover.q, "f": f,
                      "alpha": list(alpha.coeffs), "beta": list(beta.coeffs)}))
    return 0


def cmd_certify(args) -> int:
    from .certify import CertificationConfig, certify_discriminant, certify_duality, reproduce_table_row
    from .table import rows_for
    ells = _ints(args.ell) if args.ell else None
    if args.mode == "disc":
        cert = certify_discriminant(args.degree)
    else:
        try:
            rows_for(args.degree, args.table)
            in_table = True
        except FermatError:
            in_table = False
        if in_table:
            cert = reproduce_table_row(args.degree, seed=args.seed, table=args.table, ells=ells)
        else:
            cert = certify_duality(CertificationConfig(m=args.degree, ells=ells, seed=args.seed))
    text = cert.to_json()
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"verdict: {cert.verdict}", file=sys.stderr)
    return cert.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fermatlines",
                                 description="Lines and Neron-Severi lattices of Fermat surfaces")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="numerical invariants of the degree-m Fermat surface")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("gram", help="Gram matrix of the rational line basis")
    p.add_argument("--degree", "-m", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("verify-lemma", help="check the block determinant lemma")
    p.add_argument("--max-m", type=int, default=101)
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("disc", help="exact discriminant of the line lattice")
    p.add_argument("m", type=int)
    p.add_argument("--raw", action="store_true", help="print the integer instead of its factorization")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("find-cover", help="smallest r with r*m - 1 a prime power")
    p.add_argument("m", type=int)
    p.add_argument("--max-r", type=int, default=64)
    p.set_defaults(func=cmd_find_cover)

    p = sub.add_parser("find-line", help="a special line on the covering surface")
    p.add_argument("--degree", "-m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--f", help="defining polynomial, comma-separated, constant first")
    p.set_defaults(func=cmd_find_line)

    p = sub.add_parser("certify", help="certify that lines generate NS(S)")
    p.add_argument("--degree", "-m", type=int, required=True)
    p.add_argument("--mode", choices=["duality", "disc"], default="duality")
    p.add_argument("--table", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ell", help="comma-separated primes dividing m")
    p.add_argument("--json", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_certify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FermatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
