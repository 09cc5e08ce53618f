"""Command-line front end.

Exit status: 0 success, 1 a checked identity failed, 2 input error,
3 enumeration cap exceeded.  Reports go to stdout as JSON (default), CSV or
text; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import bk, quiver, suites
from .errors import FlagrankError, IdentityFailure, InputError
from .quiver import Decomposition, Quiver
from .roots import (
    coset_factorize,
    dual_label,
    enumerate_weyl,
    flag_dimension,
    inversion_set,
    is_minimal,
    levi_roots,
    parse_parabolic,
    parse_type,
    parse_word,
    weyl_group_order,
    weyl_element,
)
from .schubert import SchubertClass, cup_constants, multi_point_coefficient

QUIVER_CONVENTIONS = {
    "ringel_form": "<a,b> = sum_s a(s)b(s) - sum_arrows a(ia)b(ta)",
    "circ": "a o b counts a-dimensional subrepresentations of a general (a+b)-dimensional representation; 0 if infinite",
    "generic_counts": "characteristic zero, by torus localization on the flag variety of subspaces",
}


# ---------------------------------------------------------------- parsing helpers


def parse_quiver_file(path: str) -> Quiver:
    """Read ``vertex <name>`` / ``arrow <name> <src> <dst>`` lines; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read quiver file {path}: {exc.strerror}") from None
    return parse_quiver_text(lines, path)


def parse_quiver_text(lines: Sequence[str], source: str = "<quiver>") -> Quiver:
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    names: set[str] = set()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"{source}:{lineno}"
        if parts[0] == "vertex" and len(parts) == 2:
            if parts[1] in vertices:
                raise InputError(f"{where}: duplicate vertex {parts[1]!r}")
            vertices.append(parts[1])
        elif parts[0] == "arrow" and len(parts) == 4:
            name, src, dst = parts[1:]
            if name in names:
                raise InputError(f"{where}: duplicate arrow {name!r}")
            for v in (src, dst):
                if v not in vertices:
                    raise InputError(f"{where}: arrow {name!r} uses undeclared vertex {v!r}")
            names.add(name)
            arrows.append((name, src, dst))
        else:
            raise InputError(f"{where}: malformed line {raw.strip()!r}")
    return Quiver(tuple(vertices), tuple(arrows))


def _parse_vector(text: str) -> tuple[int, ...]:
    items = [t.strip() for t in text.split(",")]
    if items == [""]:
        return ()
    try:
        return tuple(int(t) for t in items)
    except ValueError:
        raise InputError(f"bad dimension vector {text!r}") from None


def _parse_words(rs, text: str):
    out = []
    for chunk in text.split(","):
        word = parse_word(chunk)
        w = weyl_element(rs, word)
        if len(w.word) != len(word):
            print(f"warning: word {chunk.strip()!r} is not reduced; using {w}", file=sys.stderr)
        out.append(w)
    return out


def _need_seed(args, why: str) -> int:
    if args.seed is None:
        raise InputError(f"--seed is required: {why}")
    return args.seed


# ---------------------------------------------------------------- commands


def cmd_roots(args) -> dict:
    rs = parse_type(args.type)
    p = parse_parabolic(rs, args.p)
    return {
        "type": rs.tag(),
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "positive_roots": [list(r) for r in rs.positive_roots],
        "roots": len(rs.all_roots),
        "weyl_order": weyl_group_order(rs),
        "parabolic": sorted(p),
        "levi_roots": [list(r) for r in levi_roots(rs, p)],
        "dim_G/P": flag_dimension(rs, p),
    }


def cmd_weyl(args) -> dict:
    rs = parse_type(args.type)
    p = parse_parabolic(rs, args.p)
    if args.enumerate:
        elems = enumerate_weyl(rs, p, args.enumerate)
        return {"type": rs.tag(), "parabolic": sorted(p), "mode": args.enumerate, "elements": [str(w) for w in elems]}
    if args.word is None:
        raise InputError("give --word or --enumerate")
    (w,) = _parse_words(rs, args.word)
    w_min, w_par = coset_factorize(w, p)
    out = {
        "type": rs.tag(),
        "parabolic": sorted(p),
        "word": str(w),
        "length": w.length,
        "inversion_set": [list(r) for r in sorted(inversion_set(w), key=lambda r: rs.root_index[r])],
        "coset_factorization": {"minimal": str(w_min), "parabolic": str(w_par)},
        "minimal": is_minimal(w, p),
    }
    if out["minimal"]:
        out["dual_label"] = str(dual_label(w, p))
    if args.act:
        from .roots import act

        out["action"] = list(act(w, _parse_vector(args.act)))
    return out


def cmd_cup(args) -> dict:
    rs = parse_type(args.type)
    p = parse_parabolic(rs, args.p)
    if args.classes is not None:
        classes = [SchubertClass(w, p) for w in _parse_words(rs, args.classes)]
        return {
            "type": rs.tag(),
            "parabolic": sorted(p),
            "classes": [str(c.label) for c in classes],
            "point_coefficient": multi_point_coefficient(classes),
        }
    if args.u is None or args.v is None:
        raise InputError("give --u and --v, or --classes")
    (u,) = _parse_words(rs, args.u)
    (v,) = _parse_words(rs, args.v)
    prod = cup_constants(SchubertClass(u, p), SchubertClass(v, p))
    return {"type": rs.tag(), "parabolic": sorted(p), "u": str(u), "v": str(v), "product": prod.as_words()}


def cmd_bk(args) -> dict:
    rs = parse_type(args.type)
    p = parse_parabolic(rs, args.p)
    words = _parse_words(rs, args.words)
    if p or args.method == "randomized":
        seed = _need_seed(args, "the randomized movability test is used off the full flag variety")
    else:
        seed = args.seed or 0
    if args.method == "character" and not bk.character_calibrated():
        bk.calibrate_character_criterion(seed=seed)
    rep = bk.bk_multi_constant(
        words, rs, p, seed, args.trials, args.prime, method=args.method, character=args.character
    )
    out = {"type": rs.tag(), "parabolic": sorted(p), "words": [str(w) for w in words]}
    out.update(rep.to_dict())
    out["bk"] = out.pop("bk_constant")
    out["cup"] = out.pop("cup_constant")
    return out


def cmd_theorem4(args) -> dict:
    rs = parse_type(args.type)
    q = parse_parabolic(rs, args.q)
    p = parse_parabolic(rs, args.p)
    seed = _need_seed(args, "Levi-movability off the full flag variety is randomized")
    if args.words is None:
        rep = suites.theorem4_scan(rs, q, p, seed)
    else:
        rep = bk.theorem4_check(rs, q, p, _parse_words(rs, args.words), seed, args.trials, args.prime).to_dict()
    return rep


def cmd_corollary2(args) -> dict:
    if args.rank < 2:
        raise InputError("--rank must be at least 2")
    rep = suites.corollary2_scan(args.rank, args.seed or 0)
    rep["triples_checked"] = rep.pop("tuples")
    rep["nonzero_bk_values"] = sorted(int(k) for k in rep["nonzero_bk_values"])
    return rep


def cmd_quiver(args) -> dict:
    q = parse_quiver_file(args.file)
    seed = _need_seed(args, "generic quiver counts are sampled")
    head = {"quiver": q.describe(), "seed": seed}
    if args.qcmd == "circ":
        a, b = _parse_vector(args.a), _parse_vector(args.b)
        value = quiver.circ(q, a, b, seed, method=args.method)
        return {**head, "a": list(a), "b": list(b), "circ": value, "method": args.method}
    if args.qcmd == "homext":
        a, b = _parse_vector(args.a), _parse_vector(args.b)
        rep = quiver.generic_hom_ext(q, a, b, seed, args.trials, args.prime)
        return {**head, "a": list(a), "b": list(b), **rep.to_dict()}
    if args.qcmd == "theorem5":
        parts = [_parse_vector(x) for x in args.decomp.split("|")]
        rep = quiver.theorem5_check(q, Decomposition(tuple(parts)), seed).to_dict()
    elif args.qcmd == "theoremB":
        rep = quiver.theoremB_check(q, _parse_vector(args.a), _parse_vector(args.b), _parse_vector(args.c), seed).to_dict()
    else:
        rep = quiver.corollary3_check(q, _parse_vector(args.a), _parse_vector(args.b), _parse_vector(args.c), seed).to_dict()
    values = rep.pop("values")
    rep = {**head, **rep, **values}
    return rep


SUITES = {
    "theorem4": lambda seed: {"scans": suites.theorem4_suite(seed)},
    "ring": lambda seed: {"scans": [suites.ring_axioms(parse_type(t), (), seed) for t in ("A2", "C2")]},
    "agreement": lambda seed: {"scans": [suites.movability_agreement(t, range(seed, seed + 5)) for t in ("A2", "C2", "A3")]},
    "homext": lambda seed: suites.homext_suite(seed),
    "theorem5": lambda seed: suites.theorem5_suite(seed),
    "theoremB": lambda seed: suites.theoremB_suite(seed),
    "corollary3": lambda seed: suites.corollary3_suite(seed),
}


def cmd_suite(args) -> dict:
    seed = _need_seed(args, "suites draw random instances")
    rep = SUITES[args.name](seed)
    if "scans" in rep:
        rep["passed"] = all(s["passed"] for s in rep["scans"])
    rep["suite"] = args.name
    rep["seed"] = seed
    return rep


# ---------------------------------------------------------------- output


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        for k, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}{k}.")
    else:
        value = json.dumps(obj, sort_keys=True) if isinstance(obj, (list, dict)) else obj
        yield prefix[:-1], value


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = list(_flatten(report))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(rows)
        return buf.getvalue()
    return "".join(f"{k}: {'true' if v is True else 'false' if v is False else v}\n" for k, v in rows)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=None)

    lie = argparse.ArgumentParser(add_help=False)
    lie.add_argument("--type", required=True, help="root system tag such as A2, C3, G2")
    lie.add_argument("--p", default="", help="parabolic subset, comma-separated simple indices")

    rnd = argparse.ArgumentParser(add_help=False)
    rnd.add_argument("--trials", type=int, default=bk.DEFAULT_TRIALS)
    rnd.add_argument("--prime", type=int, default=bk.DEFAULT_PRIME)

    parser = argparse.ArgumentParser(prog="flagrank", description="Schubert, deformed-product and quiver computations.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("roots", parents=[common, lie], help="root system data")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("weyl", parents=[common, lie], help="Weyl group element data")
    sp.add_argument("--word")
    sp.add_argument("--act", help="weight in simple-root coordinates, comma-separated")
    sp.add_argument("--enumerate", choices=("full", "parabolic", "minimal_coset_reps"))
    sp.set_defaults(func=cmd_weyl)

    sp = sub.add_parser("cup", parents=[common, lie], help="Schubert structure constants (class labels)")
    sp.add_argument("--u")
    sp.add_argument("--v")
    sp.add_argument("--classes", help="comma-separated class labels; prints the point coefficient")
    sp.set_defaults(func=cmd_cup)

    sp = sub.add_parser("bk", parents=[common, lie, rnd], help="deformed-product point coefficient (variety labels)")
    sp.add_argument("--words", required=True)
    sp.add_argument("--method", choices=("auto", "exact", "randomized", "character"), default="auto")
    sp.add_argument("--character", action="store_true", help="also run the character criterion")
    sp.set_defaults(func=cmd_bk)

    sp = sub.add_parser("theorem4", parents=[common, rnd], help="factorization through a Levi subgroup")
    sp.add_argument("--type", required=True)
    sp.add_argument("--q", default="")
    sp.add_argument("--p", default="")
    sp.add_argument("--words", help="variety labels; omit to scan every Levi-movable triple")
    sp.set_defaults(func=cmd_theorem4)

    sp = sub.add_parser("corollary2", parents=[common], help="exhaustive Sp(2n)/B scan")
    sp.add_argument("--rank", type=int, required=True)
    sp.set_defaults(func=cmd_corollary2)

    qp = sub.add_parser("quiver", help="quiver computations")
    qsub = qp.add_subparsers(dest="qcmd", required=True)
    qcommon = argparse.ArgumentParser(add_help=False, parents=[common])
    qcommon.add_argument("--file", required=True)
    for name in ("circ", "homext", "theoremB", "corollary3"):
        sp = qsub.add_parser(name, parents=[qcommon])
        sp.add_argument("--a", required=True)
        sp.add_argument("--b", required=True)
        if name in ("theoremB", "corollary3"):
            sp.add_argument("--c", required=True)
        if name == "circ":
            sp.add_argument("--method", choices=("localization", "enumeration"), default="localization")
        if name == "homext":
            sp.add_argument("--trials", type=int, default=3)
            sp.add_argument("--prime", type=int, default=quiver.DEFAULT_PRIME)
        sp.set_defaults(func=cmd_quiver)
    sp = qsub.add_parser("theorem5", parents=[qcommon])
    sp.add_argument("--decomp", required=True, help='parts separated by "|", e.g. "1,1|1,1"')
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("suite", parents=[common], help="run a property suite")
    sp.add_argument("name", choices=sorted(SUITES))
    sp.set_defaults(func=cmd_suite)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except FlagrankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    if args.cmd in ("bk", "theorem4", "cup", "weyl", "roots", "corollary2"):
        report["conventions"] = bk.CONVENTIONS
    else:
        report["conventions"] = QUIVER_CONVENTIONS
    out.write(render(report, args.format))
    if report.get("passed") is False:
        print("identity failed: see the report", file=sys.stderr)
        return IdentityFailure.exit_code
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
