"""Command line front end: ``kmsgroups <subcommand> ...``.

Exit codes: 0 success or verified, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .amalgam import (
    a2tilde_edge_amalgam,
    amalgam_reduce,
    free_reduce,
    r_n_bound,
)
from .coset_graph import build, check_distance_in_link, cycle_decomposition, girth
from .lie import peterson_multiplicity_oracle, serre_quotient
from .polyrep import check_image_invariants, phi_word
from .rank2 import word_product
from .rootsystem import GCMError, Rank2Type, cartan, is_r_spherical, is_spherical, load_gcm, validate_gcm
from .scalars import QQ, parse_field
from .truncated import CANONICAL_RANK2, truncated_group
from .words import GroupWord, WordError, build_a2tilde_witness, residual_nilpotence_verdict

FIELDS = ("Q", "F2", "F3", "F4", "F5", "F7")


class UsageError(Exception):
    pass


def _n_arg(text: str) -> int:
    n = int(text)
    if not 1 <= n <= 16:
        raise argparse.ArgumentTypeError("N must lie in [1, 16]")
    return n


def _field_arg(text: str):
    if text.upper() not in FIELDS:
        raise argparse.ArgumentTypeError(f"field must be one of {', '.join(FIELDS)}")
    return parse_field(text)


def _type_arg(text: str) -> Rank2Type:
    try:
        return Rank2Type(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _gcm(args, required=True):
    path = getattr(args, "gcm", None) or getattr(args, "gcm_file", None)
    if path is None:
        if required:
            raise UsageError("a GCM file is required (--gcm PATH)")
        return None
    return load_gcm(path)


def _emit(args, text: str, data) -> None:
    print(json.dumps(data) if args.json else text)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    A = _gcm(args)
    two = is_r_spherical(A, 2)
    three = is_r_spherical(A, 3)
    data = {"spherical": is_spherical(A), "2-spherical": two, "3-spherical": three}
    if two:
        v = residual_nilpotence_verdict(A)
        data["residually_nilpotent"] = v.residually_nilpotent
        verdict = "yes" if v.residually_nilpotent else "NO"
    else:
        data["residually_nilpotent"] = None
        verdict = "undetermined (not 2-spherical)"
    text = f"2-spherical: {_yes(two)}; 3-spherical: {_yes(three)}; residually nilpotent: {verdict}"
    _emit(args, text, data)
    return 0


def cmd_lie_dims(args) -> int:
    A = _gcm(args)
    L = serre_quotient(A, args.N)
    rows = []
    ok = True
    for d in sorted(L.by_degree, key=lambda d: (sum(d), d)):
        row = {"multidegree": list(d), "height": sum(d), "dim": L.dim_at(d)}
        if args.oracle:
            m = peterson_multiplicity_oracle(A, d)
            row["oracle"] = m
            ok &= m == row["dim"]
        rows.append(row)
    head = "multidegree\theight\tdim" + ("\toracle" if args.oracle else "")
    lines = [head] + [
        "\t".join([",".join(map(str, r["multidegree"])), str(r["height"]), str(r["dim"])] + ([str(r["oracle"])] if args.oracle else []))
        for r in rows
    ]
    _emit(args, "\n".join(lines), rows)
    return 0 if ok else 1


def cmd_mult(args) -> int:
    t = args.type
    A = validate_gcm(CANONICAL_RANK2[t.tag])
    w = GroupWord.parse(A, args.word, args.field)
    g = word_product(t, w.letters, args.field)
    text = " ".join(f"x({r},{s})({c})" for (r, s), c in g.letters()) or "1"
    _emit(args, text, {"type": t.tag, "roots": [list(r) for r in g.roots], "coords": [str(c) for c in g.coords]})
    return 0


def cmd_normal_form(args) -> int:
    A = _gcm(args)
    if args.field is not QQ:
        raise UsageError("normal forms are computed over Q")
    if not is_r_spherical(A, 2):
        raise UsageError("normal forms need a 2-spherical matrix")
    G = truncated_group(A, args.N)
    w = GroupWord.parse(A, args.word)
    g = G.embed_word(w)
    nf = G.normal_form(g)
    ok = G.rebuild(nf) == g
    print(G.format_normal_form(nf, as_json=args.json))
    return 0 if ok else 1


def cmd_girth(args) -> int:
    G = build(args.type, args.field)
    g = girth(G, exhaustive=args.exhaustive)
    cycles = cycle_decomposition(G) if G.degrees() == {2} else None
    text = f"girth={g}" + (f" cycles=[{','.join(map(str, cycles))}]" if cycles else "")
    _emit(args, text, {"type": args.type.tag, "field": args.field.name, "girth": g, "cycles": cycles})
    return 0


def cmd_distance(args) -> int:
    ok = check_distance_in_link(args.type, args.field)
    text = f"distance-in-link {args.type.tag}/{args.field.name}: {'verified' if ok else 'FAILED'}"
    _emit(args, text, {"type": args.type.tag, "field": args.field.name, "verified": ok})
    return 0 if ok else 1


def witness_report(N: int = 10) -> dict:
    """The three checks on the A2~ witness word: matrix image, truncated image, free-product length."""
    from fractions import Fraction

    from .rank2 import Rank2Element

    A = cartan("A2t")
    w = build_a2tilde_witness(A)
    M = phi_word(w)
    g = truncated_group(A, N).embed_word(w)

    def comm(u, v, inv):
        return inv(u) + inv(v) + u + v

    inv_q = lambda u: [(f, -x) for f, x in reversed(u)]  # noqa: E731
    a, b = [("a", Fraction(1))], [("b", Fraction(1))]
    free_len = len(free_reduce(comm(a, comm(a, b, inv_q), inv_q)))
    inv_r = lambda u: [(f, x.inverse()) for f, x in reversed(u)]  # noqa: E731
    ra = [("U12", Rank2Element.from_coords("A2", [0, 0, 1]))]
    rb = [("U23", Rank2Element.from_coords("A2", [0, 0, 1]))]
    amalgam_len = len(amalgam_reduce(a2tilde_edge_amalgam(), comm(ra, comm(ra, rb, inv_r), inv_r)))
    return {
        "letters": len(w),
        "phi_identity": M.is_identity(),
        "embed_identity": g.is_identity(),
        "N": N,
        "free_product_length": free_len,
        "amalgam_length": amalgam_len,
    }


def cmd_witness(args) -> int:
    r = witness_report(args.N)
    ok = r["phi_identity"] and r["embed_identity"] and r["free_product_length"] > 0 and r["amalgam_length"] > 0
    text = "\n".join(
        [
            f"witness letters: {r['letters']}",
            f"matrix image is identity: {_yes(r['phi_identity'])}",
            f"truncated image (N={r['N']}) is identity: {_yes(r['embed_identity'])}",
            f"reduced length in Q*Q: {r['free_product_length']}",
            f"reduced length in U12 *_U2 U23: {r['amalgam_length']}",
            f"verdict: {'nontrivial element of the nilpotent residual' if ok else 'FAILED'}",
        ]
    )
    _emit(args, text, r | {"verified": ok})
    return 0 if ok else 1


def cmd_rep(args) -> int:
    A = _gcm(args, required=False) or cartan("A2t")
    w = GroupWord.parse(A, args.word)
    M = phi_word(w)
    ok = check_image_invariants(M)
    if args.json:
        print(M.to_json())
    else:
        print(M)
    return 0 if ok else 1


def cmd_bound(args) -> int:
    if args.N < 2:
        raise UsageError("the bound needs N >= 2")
    ns = [args.n] if args.n else list(range(1, 6))
    vals = {n: r_n_bound(args.N, n) for n in ns}
    _emit(args, " ".join(f"r_{n}={v}" for n, v in vals.items()), {str(n): v for n, v in vals.items()})
    return 0


def cmd_reduce(args) -> int:
    from .rank2 import Rank2Element

    A = cartan("A2t")
    w = GroupWord.parse(A, args.word)
    spec = a2tilde_edge_amalgam()
    letters = []
    for gamma, c in w.letters:
        supp = {k for k, v in enumerate(gamma) if v}
        if supp <= {0, 1}:
            fid, local = "U12", (gamma[0], gamma[1])
        elif supp <= {1, 2}:
            fid, local = "U23", (gamma[1], gamma[2])
        else:
            raise UsageError(f"letter at {gamma} lies in neither U12 nor U23")
        letters.append((fid, Rank2Element.identity("A2").times_letter(local, c)))
    r = amalgam_reduce(spec, letters)
    text = f"length={len(r)} C={r.c_part}\n" + "\n".join(
        f"{f}: {' '.join(str(c) for c in g.coords)}" for f, g in r.syllables
    )
    print(r.to_json(spec.factors) if args.json else text.rstrip())
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmsgroups", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_, gcm=False, word=False, N=None, field=False, type_=False):
        s = sub.add_parser(name, help=help_)
        s.set_defaults(fn=fn)
        s.add_argument("--json", action="store_true", help="JSON output")
        if gcm:
            s.add_argument("--gcm", metavar="PATH", help="GCM JSON file {\"matrix\": [[...]]}")
        if word:
            s.add_argument("--word", required=True, help="word, e.g. '[x1(1),x2(1)] x3(-1/2)'")
        if N is not None:
            s.add_argument("--N", type=_n_arg, default=N, help=f"truncation height (default {N})")
        if field:
            s.add_argument("--field", type=_field_arg, default=QQ, help="Q, F2, F3, F4, F5 or F7")
        if type_:
            s.add_argument("--type", type=_type_arg, required=True, help="A1xA1, A2, B2 or G2")
        return s

    s = add("check", cmd_check, "sphericity and the residual nilpotence verdict", gcm=True)
    s.add_argument("gcm_file", nargs="?", metavar="GCM", help="GCM JSON file (alternative to --gcm)")
    s = add("lie-dims", cmd_lie_dims, "root space dimensions of the Serre quotient", gcm=True, N=8)
    s.add_argument("--oracle", action="store_true", help="compare with the multiplicity recursion")
    add("mult", cmd_mult, "collected product of a rank-2 word (x1 = alpha short, x2 = beta)", word=True, field=True, type_=True)
    add("normal-form", cmd_normal_form, "lambda-coordinates of a word in the truncated group", gcm=True, word=True, N=8, field=True)
    s = add("girth", cmd_girth, "girth of a finite coset graph", field=True, type_=True)
    s.add_argument("--exhaustive", action="store_true", help="BFS from every vertex")
    add("distance", cmd_distance, "distances between root group elements in the coset graph", field=True, type_=True)
    add("witness", cmd_witness, "check the A2~ witness word", N=10)
    add("rep", cmd_rep, "matrix image of an A2~ word", gcm=True, word=True)
    s = add("bound", cmd_bound, "r_n = 1 + n + (N-1)n(n+1)/2")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--n", type=int)
    add("reduce", cmd_reduce, "reduce an A2~ word in U12 *_U2 U23", word=True)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (UsageError, GCMError, WordError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
