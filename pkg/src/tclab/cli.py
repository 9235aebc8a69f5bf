"""Command-line front end.

Subcommands wrap one module each and emit a versioned report:

    escape   one element, or the whole built-in table of representatives
    gn       the recursion G_n, its degree, squarefreeness, factors
    hk       colength values, at a point or at generic evaluation points
    verify   noncontainment / containment / lemmas
    parity   region tiling scan plus the covering audit

Reports render as text, JSON, or flattened CSV.  Wall-clock fields are
zeroed unless --timing is passed, so identical inputs give
byte-identical output.  Exit status: 0 all checks passed, 1 a
verification reported a mismatch, 2 usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Optional

from . import __version__

SCHEMA = "tclab-report/1"


def _jobs_default() -> int:
    env = os.environ.get("TCLAB_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _zero_timing(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {
            k: (0.0 if k == "seconds" else _zero_timing(v)) for k, v in obj.items()
        }
    if isinstance(obj, list):
        return [_zero_timing(v) for v in obj]
    return obj


def _flatten(obj: Any, prefix: str, out: list[tuple[str, Any]]) -> None:
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(obj, (list, tuple)):
        for idx, v in enumerate(obj):
            _flatten(v, f"{prefix}[{idx}]", out)
    else:
        out.append((prefix, obj))


def _render_text(report: dict) -> str:
    lines = [f"{report['command']}  (schema {report['schema']}, v{report['version']})"]
    flat: list[tuple[str, Any]] = []
    _flatten(report["results"], "", flat)
    for key, val in flat:
        lines.append(f"  {key} = {val}")
    lines.append(f"ok: {report['ok']}")
    return "\n".join(lines)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    elif fmt == "csv":
        flat: list[tuple[str, Any]] = []
        _flatten(report, "", flat)
        for key, val in flat:
            print(f"{key},{val}")
    else:
        print(_render_text(report))


def _report(command: str, inputs: dict, results: Any, ok: bool, seed: int) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "results": results,
        "ok": bool(ok),
    }


def _parse_element(parser: argparse.ArgumentParser, text: str, spec: Optional[str]):
    from .binaryfield import field_from_spec, parse_elem, preset
    from .errors import TclabError

    if not spec:
        parser.error("--alpha requires --field SPEC (or a preset name)")
    try:
        if ":" in spec:
            ctx = field_from_spec(spec)
        else:
            ctx = preset(spec)
        return parse_elem(text, ctx)
    except TclabError as exc:
        parser.error(str(exc))


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_escape(parser, args) -> tuple[Any, bool]:
    from .binaryfield import field_spec, parse_elem
    from .dynamics import TABLE2_ROWS, escape_time

    if args.table2:
        rows = []
        all_match = True
        for row in TABLE2_ROWS:
            ctx = row.ctx()
            el = parse_elem(row.element, ctx)
            got = escape_time(el).result
            match = got == row.expected
            all_match &= match
            rows.append(
                {
                    "element": row.element,
                    "field": field_spec(ctx),
                    "expected": row.expected,
                    "got": got,
                    "match": match,
                }
            )
        return {"rows": rows, "all_match": all_match}, all_match
    if not args.alpha:
        parser.error("need --alpha ELEM --field SPEC, or --table2")
    el = _parse_element(parser, args.alpha, args.field)
    rec = escape_time(el)
    return (
        {
            "element": rec.element,
            "field": rec.field,
            "escape_time": rec.result,
            "reason": rec.reason,
            "period": rec.period,
        },
        True,
    )


def _cmd_gn(parser, args) -> tuple[Any, bool]:
    from .dynamics import TABLE1_DEGREES, gn_hn
    from .errors import TooLarge
    from .unipoly import factor, is_squarefree

    if args.table1:
        rows = []
        all_match = True
        for n in range(1, args.max_n + 1):
            G, _ = gn_hn(n)
            degs = sorted(d for f, m in factor(G) for d in [f.degree] * m)
            want = sorted(TABLE1_DEGREES[n])
            match = degs == want
            all_match &= match
            rows.append({"n": n, "degrees": degs, "expected": want, "match": match})
        return {"rows": rows, "all_match": all_match}, all_match

    if args.n is None:
        parser.error("need --n N or --table1")
    if args.n >= 8:
        parser.error("factoring G_8 and beyond is out of reach")
    if args.n > 6 and not args.force:
        parser.error(f"G_{args.n} is expensive; pass --force to allow")
    try:
        G, H = gn_hn(args.n)
        res: dict[str, Any] = {
            "n": args.n,
            "deg_G": G.degree,
            "deg_H": H.degree,
            "squarefree": is_squarefree(G),
        }
        ok = res["squarefree"] and res["deg_G"] == 8 ** (args.n - 1)
        if args.factor:
            degs = sorted(d for f, m in factor(G) for d in [f.degree] * m)
            res["factor_degrees"] = degs
            if args.n in TABLE1_DEGREES:
                res["expected_degrees"] = sorted(TABLE1_DEGREES[args.n])
                res["match"] = degs == res["expected_degrees"]
                ok = ok and res["match"]
        return res, ok
    except TooLarge as exc:
        parser.error(str(exc))


def _cmd_hk(parser, args) -> tuple[Any, bool]:
    from .errors import TclabError
    from .hilbertkunz import en, en_generic, random_generic_points

    try:
        if args.generic:
            pts = random_generic_points(args.points, seed=args.seed)
            res = en_generic(args.n, pts, jobs=args.jobs, force=args.force)
            return res.to_json(), res.matches_formula and bool(res.agree)
        if not args.alpha:
            parser.error("need --alpha ELEM --field SPEC, or --generic")
        el = _parse_element(parser, args.alpha, args.field)
        res = en(args.n, el, jobs=args.jobs, force=args.force)
        return res.to_json(), True
    except TclabError as exc:
        parser.error(str(exc))


def _cmd_verify(parser, args) -> tuple[Any, bool]:
    from .errors import TclabError

    try:
        if args.what == "noncontainment":
            from .tightverify import noncontainment, witness

            w = witness(args.ell)
            rep = noncontainment(w, force=args.force, direct=not args.skip_direct)
            ok = rep.coherent and (rep.direct_member is False or args.skip_direct)
            return rep.to_json(), ok
        if args.what == "containment":
            from .tightverify import containment_generic

            rep = containment_generic(args.Q, seed=args.seed)
            return rep.to_json(), rep.surjective and rep.preimage_ok
        # lemmas
        from .binaryfield import least_irreducible
        from .tightverify import (
            basis_extension,
            nullity_invariance,
            same_nullity_pairs,
            span_containment,
            v_annihilates_w0,
            v_times_ui,
        )

        Q = args.Q
        ctx = least_irreducible(8)
        from random import Random

        rng = Random(args.seed)
        results: dict[str, Any] = {"Q": Q}
        oks = []

        pair_ctx = least_irreducible(4)
        vu1 = v_times_ui(Q, 1, pair_ctx)
        rest = all(v_times_ui(Q, i, pair_ctx).bits == 0 for i in range(3, Q, 2))
        results["v_u1_is_one"] = vu1.bits == 1
        results["v_ui_rest_zero"] = rest
        oks += [vu1.bits == 1, rest]

        if Q <= 32:
            w0 = v_annihilates_w0(Q, pair_ctx)
            results["w0_annihilated"] = w0.to_json()
            be = basis_extension(Q, pair_ctx)
            results["basis_extension"] = be
            sc = span_containment(Q, ctx, [ctx.random_elem(rng) for _ in range(3)])
            results["span_containment"] = sc
            oks += [w0.ok, be["ok"], sc["ok"]]
        if Q >= 8:
            ni = nullity_invariance(Q, trials=100, seed=args.seed, ctx=ctx)
            results["nullity_invariance"] = ni
            oks.append(ni["ok"])
        if Q in (8, 32):
            sn = same_nullity_pairs(Q, trials=50, seed=args.seed, ctx=ctx)
            results["same_nullity_pairs"] = sn
            oks.append(sn["ok"])
        return results, all(oks)
    except TclabError as exc:
        parser.error(str(exc))


def _cmd_parity(parser, args) -> tuple[Any, bool]:
    from .parity import cover_check, tiling_check

    rep = tiling_check(args.ell, jobs=args.jobs)
    out = rep.to_json()
    if args.cover:
        out["cover"] = cover_check(args.ell).to_json()
    return out, rep.ok


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tclab",
        description="exact char-2 escape dynamics, colength counts, and "
        "closure (non)containment verification",
    )
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=_jobs_default())
    p.add_argument(
        "--timing", action="store_true", help="report measured wall time"
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    pe = sub.add_parser("escape", help="escape time of one element, or the table")
    pe.add_argument("--alpha", help="element text, e.g. 'a^3+a' or '1'")
    pe.add_argument("--field", help="field spec 'd:K;mod:...' or preset name")
    pe.add_argument("--table2", action="store_true", help="run every table row")

    pg = sub.add_parser("gn", help="the G_n recursion and its factors")
    pg.add_argument("--n", type=int)
    pg.add_argument("--factor", action="store_true")
    pg.add_argument("--table1", action="store_true")
    pg.add_argument("--max-n", type=int, default=4, dest="max_n")
    pg.add_argument("--force", action="store_true")

    ph = sub.add_parser("hk", help="colength of the n-th power family")
    ph.add_argument("--n", type=int, required=True)
    ph.add_argument("--alpha")
    ph.add_argument("--field")
    ph.add_argument("--generic", action="store_true")
    ph.add_argument("--points", type=int, default=2)
    ph.add_argument("--force", action="store_true")

    pv = sub.add_parser("verify", help="main verification pipelines")
    pvs = pv.add_subparsers(dest="what", required=True)
    pvn = pvs.add_parser("noncontainment")
    pvn.add_argument("--ell", type=int, required=True)
    pvn.add_argument("--force", action="store_true")
    pvn.add_argument("--skip-direct", action="store_true", dest="skip_direct")
    pvc = pvs.add_parser("containment")
    pvc.add_argument("--Q", type=int, choices=(2, 8), required=True)
    pvl = pvs.add_parser("lemmas")
    pvl.add_argument("--Q", type=int, choices=(2, 8, 32, 128), required=True)

    pp = sub.add_parser("parity", help="binomial-parity region scan")
    pp.add_argument("--ell", type=int, required=True)
    pp.add_argument("--cover", action="store_true", help="include the covering audit")

    return p


_DISPATCH = {
    "escape": _cmd_escape,
    "gn": _cmd_gn,
    "hk": _cmd_hk,
    "verify": _cmd_verify,
    "parity": _cmd_parity,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    results, ok = _DISPATCH[args.cmd](parser, args)
    inputs = {
        k: v
        for k, v in vars(args).items()
        if k not in ("cmd", "format", "timing") and v is not None
    }
    report = _report(
        args.cmd if args.cmd != "verify" else f"verify-{args.what}",
        inputs,
        results,
        ok,
        args.seed,
    )
    if not args.timing:
        report = _zero_timing(report)
    _emit(report, args.format)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
