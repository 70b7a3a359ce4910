"""Command-line entry point: JSON output, run manifests and replay."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np

from . import __version__
from .bott import bott
from .forms import (AltForm, alpha4_as_form, classify_orbit, invariants, line_type,
                    random_form as random_alt_form, NoOrbitMatch, SingularLine)
from .hodge import (DEFAULT_SEED, QuarticForm, collapse_page, dump_triples, gr2_syml_vanishing,
                    hypersurface_hodge, jacobian_matrix, koszul_page, quartic_sixfold_fano,
                    quartic_sixfold_pages, random_form as random_quartic)
from .linalg import random_prime
from .pfaffian import catalan_degree, cn_constant, crepancy_bidegrees, hull_trials
from .schur import ext_lambda2, rank2_ext_power, rank2_sym_power, two_column_schur
from .weights import lr_coefficients


@dataclass
class RunManifest:
    command: list[str]
    seed: int
    prime: int | None
    timestamp: str
    results_digest: str
    version: str = __version__

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "RunManifest":
        return cls(**json.loads(Path(path).read_text()))


def canonical(result) -> str:
    return json.dumps(result, sort_keys=True, indent=2, default=str)


def digest(result) -> str:
    return hashlib.sha256(canonical(result).encode()).hexdigest()


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -------------------------------------------------------------- commands


def cmd_bott(args) -> dict:
    if args.grassmannian:
        args.m, args.N = _ints(args.grassmannian)
    if args.m is None or args.N is None:
        raise SystemExit("bott: give --grassmannian m,N or both --m and --N")
    res = bott(args.m, args.N, _ints(args.quot) or None, _ints(args.sub) or None)
    return {"grassmannian": [args.m, args.N], **res.to_json()}


def cmd_schur(args) -> dict:
    if args.what in ("ext", "ext-power"):
        return rank2_ext_power(args.d, args.i).to_json()
    if args.what in ("sym", "sym-power"):
        return rank2_sym_power(args.d, args.i).to_json()
    if args.what in ("lambda2", "lambda2-ext"):
        return ext_lambda2(args.a, args.rank).to_json()
    if args.what == "two-column":
        return two_column_schur(args.a, args.b, args.rank).to_json()
    lr = lr_coefficients(_ints(args.mu), _ints(args.nu))
    return {"mu": list(_ints(args.mu)), "nu": list(_ints(args.nu)),
            "terms": [{"lambda": list(k), "c": v} for k, v in lr.items()]}


def cmd_hodge(args) -> dict:
    if args.what == "hypersurface":
        hh = hypersurface_hodge(args.N, args.d)
        return {"N": args.N, "d": args.d,
                "hodge": {f"{p},{q}": v for (p, q), v in hh.hodge.items()},
                "jacobian_series": {str(k): v for k, v in hh.jacobian.dims.items()}}
    if args.what == "quartic-sixfold-fano":
        return cmd_reproduce_hodge_num(args.prime, args.seed, args.skip_matrix)
    if args.what == "page":
        page = quartic_sixfold_pages()[args.twist]
        return {"twist": args.twist, "page": page.to_json(), "collapse": collapse_page(page).to_json()}
    # dump a Griffiths matrix of a seeded random quartic
    f = random_quartic(8, 4, args.prime, args.seed)
    mat, rows, cols = jacobian_matrix(f, args.e)
    dump_triples(mat, args.out)
    return {"degree": args.e, "shape": list(mat.shape), "nonzeros": int(np.count_nonzero(mat)),
            "prime": args.prime, "seed": args.seed, "path": str(args.out)}


def _load_quartic(path) -> QuarticForm:
    data = json.loads(Path(path).read_text())
    prime = data.get("prime")
    coeffs = {}
    for t in data["terms"]:
        c = Fraction(str(t["coeff"]))
        coeffs[tuple(t["exponents"])] = c if prime is None else int(c) % prime
    return QuarticForm(data.get("n_vars", 8), data.get("degree", 4), coeffs, prime)


def cmd_forms(args) -> dict:
    if args.what == "alpha4":
        f = alpha4_as_form()
        out = {"form": {"degree": 4, "n": 7, "terms": f.to_json()},
               "basis": ["a0", "a1", "b0", "b1", "c1", "c2", "c3"]}
        if args.emit:
            out["orbit"] = classify_orbit(f).to_json()
        return out
    if args.what == "classify":
        f = AltForm.from_json(json.loads(Path(args.form).read_text()))
        try:
            rec = classify_orbit(f)
        except NoOrbitMatch as e:
            d, r2, r = invariants(f)
            return {"status": "FAIL", "error": str(e), "d": d, "r2": r2, "rank": r, "pass": False}
        return {**rec.to_json(), "volume": "e1^...^e7", "pass": True}
    quartic = _load_quartic(args.quartic)
    pts = json.loads(Path(args.line).read_text())["points"]
    try:
        return line_type(quartic, pts[0], pts[1]).to_json()
    except SingularLine as e:
        return {"type": None, "error": str(e), "pass": False}


def cmd_pfaffian(args) -> dict:
    if args.what == "hull":
        return hull_trials(args.n, args.k, args.trials, args.seed, args.prime)
    n = args.n
    det, canon = crepancy_bidegrees(n)
    return {"n": n, "catalan_degree": catalan_degree(n), "c_n": cn_constant(n),
            "det_bidegree": list(det), "canonical_bidegree": list(canon), "crepant": canon[0] == 0}


def cmd_reproduce_hodge_num(prime: int, seed: int, skip_matrix: bool = False) -> dict:
    res = quartic_sixfold_fano(prime=prime, seed=seed, skip_matrix=skip_matrix)
    o_page = quartic_sixfold_pages()["O"]
    res["o_f_weight_5_12"] = [list(w) for w, _, _ in o_page.grid[(5, 12)]]
    return res


def cmd_reproduce_orbit_table(seed: int) -> dict:
    rng = np.random.default_rng(seed)
    rows = []

    def row(label, f, expected):
        try:
            rec = classify_orbit(f)
            got = rec.to_json()
        except NoOrbitMatch as e:
            got = {"orbit": None, "error": str(e)}
        ok = expected is None or got.get("orbit") == expected
        rows.append({"form": label, **got, "expected": expected, "status": _status(ok and got.get("orbit") is not None)})

    row("alpha4", alpha4_as_form(), "O7")
    row("zero", AltForm(4, 7), "zero")
    row("e1^e2^e3^e4", AltForm(4, 7, {(0, 1, 2, 3): 1}), None)
    for i in range(20):
        row(f"random[{i}]", random_alt_form(4, 7, rng), "O9")
    return {"seed": seed, "rows": rows, "pass": all(r["status"] == "PASS" for r in rows)}


def cmd_verify_cohvan(n: int, k: int, max_ab: int) -> dict:
    """Bott on Gr(n+k, 2n) for every Sigma^{(a,b)'}(Lambda^2 U) with a+b <= max_ab."""
    m, N = n + k, 2 * n
    if not (2 <= m <= 2 * n - 1 and k >= 1):
        raise ValueError("need 1 <= k and n + k <= 2n - 1")
    if max_ab > 6:
        raise ValueError("max_ab is capped at 6")
    exceptions = []
    for a in range(max_ab + 1):
        for b in range(min(a, max_ab - a) + 1):
            for (w,), mult in two_column_schur(a, b, m).terms.items():
                res = bott(m, N, beta=w)
                if not res.vanishing and res.q >= a + b - 1:
                    exceptions.append({"ab": [a, b], "label": list(w), "q": res.q,
                                       "lambda": list(res.weight), "dim": res.dim * mult})
    expected = [
        {"ab": [0, 0], "q": 0, "dim": 1},
        {"ab": [n - k + 1, 0], "q": n - k, "dim": comb(N, 2 * k - 2)},
    ]
    expected = [e for e in expected if sum(e["ab"]) <= max_ab]
    found = sorted(({"ab": e["ab"], "q": e["q"], "dim": e["dim"]} for e in exceptions), key=lambda e: e["ab"])
    ok = found == sorted(expected, key=lambda e: e["ab"])
    return {"n": n, "k": k, "max_ab": max_ab, "exceptions": exceptions, "expected": expected,
            "status": _status(ok), "pass": ok}


def cmd_reproduce(args) -> dict:
    if args.what == "hodge-num":
        return cmd_reproduce_hodge_num(args.prime, args.seed, args.skip_matrix)
    if args.what == "orbit-table":
        return cmd_reproduce_orbit_table(args.seed)
    if args.what == "cohvan":
        return cmd_verify_cohvan(args.n, args.k, args.max_ab)
    reports = [gr2_syml_vanishing(n) for n in args.n]
    return {"reports": reports, "pass": all(r["pass"] for r in reports)}


# ------------------------------------------------------------------ parser


def _global_flags(parser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=default(DEFAULT_SEED))
    parser.add_argument("--prime", type=int, default=default(None),
                        help="prime field; default drawn from the seed in (10^4, 10^5)")
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="print JSON instead of a summary")
    parser.add_argument("--manifest-out", type=Path, default=default(None))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanoforms", description=__doc__)
    _global_flags(parser, suppress=False)
    # the same flags are accepted after the subcommand too
    shared = argparse.ArgumentParser(add_help=False)
    _global_flags(shared, suppress=True)
    sub = parser.add_subparsers(dest="cmd", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[shared], **kw)

    p = sub.add_parser("bott", help="cohomology of Sigma^quot Q (x) Sigma^sub S on Gr(m, N)")
    p.add_argument("--grassmannian", default="", help="m,N")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--quot", "--quotient", dest="quot", default="",
                   help="comma separated; use --quot=-1,... for negatives")
    p.add_argument("--sub", default="")
    p.set_defaults(func=cmd_bott)

    p = sub.add_parser("schur", help="decompositions of Schur functor expressions")
    p.add_argument("what", choices=["ext", "ext-power", "sym", "sym-power", "lambda2", "lambda2-ext",
                                    "two-column", "lr"])
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--i", type=int, default=2)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--rank", type=int, default=5)
    p.add_argument("--mu", default="")
    p.add_argument("--nu", default="")
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("hodge", help="hypersurface Hodge numbers, Koszul pages, Griffiths matrices")
    p.add_argument("what", choices=["hypersurface", "page", "quartic-sixfold-fano", "dump-matrix"])
    p.add_argument("--skip-matrix", action="store_true")
    p.add_argument("--N", type=int, default=7)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--twist", default="O", choices=["O", "S4T", "Omega1", "Omega2", "S4T_Omega1", "S2S4T"])
    p.add_argument("--e", type=int, default=8, help="degree of the target piece for dump-matrix")
    p.add_argument("--out", type=Path, default=Path("griffiths.triples"))
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("forms", help="alternating forms in seven variables")
    p.add_argument("what", choices=["alpha4", "classify", "line-type"])
    p.add_argument("form", nargs="?", help="form JSON for classify")
    p.add_argument("quartic", nargs="?", help="quartic JSON for line-type")
    p.add_argument("line", nargs="?", help="line JSON for line-type")
    p.add_argument("--emit", action="store_true")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("pfaffian", help="kernel hulls of constant-rank pencils, degree constants")
    p.add_argument("what", choices=["hull", "constants"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_pfaffian)

    p = sub.add_parser("reproduce", help="one-shot reproduction of the headline tables")
    p.add_argument("what", choices=["hodge-num", "orbit-table", "cohvan", "gr2-vanishing"])
    p.add_argument("--skip-matrix", action="store_true")
    p.add_argument("--n", type=int, nargs="*", default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--max-ab", type=int, default=5)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("replay", help="re-run a stored manifest and compare digests")
    p.add_argument("manifest", type=Path)
    p.set_defaults(func=None)
    return parser


def _normalize(args) -> None:
    if args.cmd == "forms" and args.what == "line-type":
        args.quartic, args.line = args.form, args.quartic
    if args.cmd == "reproduce":
        if args.what == "cohvan":
            args.n = (args.n or [3])[0]
        elif args.what == "gr2-vanishing":
            args.n = args.n or [3, 4]
    if args.prime is None:
        args.prime = random_prime(args.seed)


def _summary(result, indent=0) -> str:
    pad = "  " * indent
    if isinstance(result, dict):
        lines = []
        for k, v in result.items():
            if isinstance(v, dict) and v or isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}{k}:")
                lines.append(_summary(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, list) else v}")
        return "\n".join(lines)
    if isinstance(result, list):
        out = []
        for v in result:
            if isinstance(v, dict):
                body = _summary(v, indent + 1).lstrip()
                out.append(f"{pad}- {body}")
            else:
                out.append(f"{pad}- {json.dumps(v)}")
        return "\n".join(out)
    return f"{pad}{result}"


def run(argv: list[str]) -> tuple[dict, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    _normalize(args)
    return args.func(args), args


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if args.cmd == "replay":
        man = RunManifest.load(args.manifest)
        result, _ = run(man.command)
        same = digest(result) == man.results_digest
        out = {"manifest": str(args.manifest), "expected_digest": man.results_digest,
               "digest": digest(result), "identical": same, "pass": same}
        print(canonical(out) if args.json else _summary(out))
        return 0 if same else 1

    # the manifest records a self-contained command line: seed and prime made explicit
    command = [a for a in argv]
    if args.manifest_out is not None:
        i = command.index("--manifest-out") if "--manifest-out" in command else None
        if i is not None:
            del command[i:i + 2]
        else:
            command = [a for a in command if not a.startswith("--manifest-out=")]
    _normalize(args)
    command = ["--seed", str(args.seed), "--prime", str(args.prime)] + [
        a for a in _strip_globals(command)
    ]
    result = args.func(args)
    print(canonical(result) if args.json else _summary(result))
    if args.manifest_out is not None:
        RunManifest(command, args.seed, args.prime,
                    datetime.now(timezone.utc).isoformat(timespec="seconds"),
                    digest(result)).dump(args.manifest_out)
    failed = isinstance(result, dict) and result.get("pass") is False
    return 1 if failed else 0


def _strip_globals(argv: list[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--seed", "--prime"):
            skip = True
            continue
        if a.startswith(("--seed=", "--prime=")):
            continue
        out.append(a)
    return out


if __name__ == "__main__":
    sys.exit(main())
