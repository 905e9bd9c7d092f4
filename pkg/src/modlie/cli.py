"""Command-line front end: ``modlie algebra | check | report``.

``check`` emits one JSON record per line, sorted by claim id.  Records hold
no timing data so reruns are byte-identical; wall times go to a separate
``<suite>.timings.jsonl`` file when ``--out`` is given.

Exit codes: 0 success (including infeasible checks), 1 some check failed,
2 usage or domain error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import paperlab as pl
from .chevalley import (AlgebraError, build_algebra, check_antisymmetry, check_restricted,
                        export_text, matrix_structure_constants, sign_alignment, verify_jacobi)
from .redenv import Character, CharacterError
from .repmod import (DEFAULT_BUDGET, InfeasibleError, ModuleError, build_baby_verma,
                     chi_law_failures, compatible_weights, feasibility, regular_crosscheck, simple_dimensions)
from .roots import RootSystemError, neg

SUITES = ("jacobi", "casimir", "g", "basis", "modules")
REPORT_VERSION = "modlie-report 1"
USAGE_ERRORS = (AlgebraError, CharacterError, RootSystemError, pl.LabError, ModuleError)

ANCHORS = {
    "algebra.dimensions": "dim L = 2m + l",
    "jacobi": "Chevalley basis structure constants",
    "casimir": "w_a is central in U(sl_2)",
    "g": "g_a is invertible, g_a^p - c = 0, h-shift under g_a",
    "basis.forms": "B_i in general position with a(B_i) != 0",
    "basis.resolution": "signs commute with x_a, constants make parentheses invertible",
    "basis.independence": "the product family is linearly independent / spans rho(U(L))",
    "modules": "simple modules with character chi have dimension p^m",
}


def _anchor(claim: str) -> str:
    for key in sorted(ANCHORS, key=len, reverse=True):
        if claim.startswith(key):
            return ANCHORS[key]
    return ""


class Recorder:
    def __init__(self, params: dict):
        self.params = params
        self.records = []
        self.timings = []
        self._t = time.perf_counter()

    def add(self, claim: str, status: str, witness=None, **extra):
        now = time.perf_counter()
        params = dict(self.params, **extra)
        self.records.append({"claim": claim, "anchor": _anchor(claim), "params": params,
                             "status": status, "witness": witness})
        self.timings.append({"claim": claim, "params": params,
                             "seconds": round(now - self._t, 3)})
        self._t = now

    def sorted(self):
        key = lambda r: (r["claim"], json.dumps(r["params"], sort_keys=True))  # noqa: E731
        return sorted(self.records, key=key), sorted(self.timings, key=key)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_default)


def _default(o):
    try:
        import numpy as np
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
    except ImportError:                                     # pragma: no cover
        pass
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _ok(flag: bool) -> str:
    return "pass" if flag else "fail"


def default_characters(alg) -> list:
    """A regular nilpotent and a regular semisimple character in standard position."""
    nil = {alg.labels[alg.x(neg(b))]: 1 for b in alg.rs.base}
    ss = {f"h{i + 1}": 1 for i in range(alg.rank)}
    return [Character.from_labels(alg, nil), Character.from_labels(alg, ss)]


def _chis(alg, text):
    if text is None:
        return default_characters(alg)
    return [Character.parse(alg, text)]


# --- suites ----------------------------------------------------------------

def suite_jacobi(args, rec: Recorder):
    Z = build_algebra(args.family, args.rank)
    A = build_algebra(args.family, args.rank, args.p)
    rec.add("jacobi.integral", _ok(not verify_jacobi(Z)), {"violations": verify_jacobi(Z)[:10]})
    bad = verify_jacobi(A)
    rec.add("jacobi.modp", _ok(not bad), {"violations": bad[:10]})
    rec.add("jacobi.antisymmetry", _ok(check_antisymmetry(Z) and check_antisymmetry(A)))
    rec.add("jacobi.restricted", _ok(not check_restricted(A)),
            {"failures": check_restricted(A)})
    oracle = matrix_structure_constants(Z.rs)
    signs = sign_alignment(Z, oracle)
    rec.add("jacobi.oracle", _ok(signs is not None),
            {"oracle_violations": len(verify_jacobi(oracle)),
             "flipped": sorted(Z.rs.label(a) for a, s in (signs or {}).items() if s == -1)})


def suite_algebra_dims(args, rec: Recorder):
    A = build_algebra(args.family, args.rank, args.p)
    rec.add("algebra.dimensions", _ok(A.n == 2 * A.m + A.rank),
            {"n": A.n, "m": A.m, "l": A.rank})


def suite_casimir(args, rec: Recorder):
    A = build_algebra(args.family, args.rank, args.p)
    alpha = A.rs.base[0]
    g, w = pl.make_g_w(A, alpha)
    others = [b for b in A.rs.roots if b not in (alpha, neg(alpha))]
    res = pl.check_w_central(A, alpha, w.element, others)
    rec.add("casimir.w_central", _ok(res["pass"]),
            {"root": A.rs.label(alpha), "nonzero": res["nonzero"]})
    if others:
        outside = res["outside_triple_nonzero"]
        rec.add("casimir.scope", "pass",
                {"noncommuting_outside_triple": sorted(k for k, v in outside.items() if v),
                 "checked": len(outside)})


def suite_g(args, rec: Recorder, budget: int):
    A = build_algebra(args.family, args.rank, args.p)
    bad = [A.rs.label(a) for a in A.rs.roots
           if pl.commutator(pl.h_elem(A, a), pl.make_g(A, a)) + pl.make_g(A, a).scale(2)]
    rec.add("g.weight", _ok(not bad), {"failures": bad})
    chi = Character.parse(A, args.chi) if args.chi else default_characters(A)[1]
    why = feasibility(A, chi, budget)
    if why:
        rec.add("g.identities", "infeasible", {"reason": why}, chi=chi.describe())
        return
    M = build_baby_verma(A, chi)
    rep = pl.check_g_identities(A, A.rs.base[0], M)
    ok = all(rep[k] for k in ("weight", "invertible", "power_scalar", "conjugation_shift"))
    rec.add("g.identities", _ok(ok), rep, chi=chi.describe(), lam=M.lam_text())


def _cases(alg):
    return ["A-semisimple"] if alg.rs.family == "A" else [
        "C-short-nilpotent", "C-long-nilpotent", "C-semisimple"]


def suite_basis(args, rec: Recorder, budget: int):
    A = build_algebra(args.family, args.rank, args.p)
    seed = args.seed
    for case in _cases(A):
        M, chi = None, None
        if case == "A-semisimple":
            chi = Character.parse(A, args.chi) if args.chi else default_characters(A)[1]
            if chi.values[A.x(pl.distinguished_root(A, case))]:
                raise pl.LabError("this case needs chi(x_a) = 0")
            if feasibility(A, chi, budget) is None:
                M = build_baby_verma(A, chi)
        extra = {"case": case, "chi": chi.describe() if chi else None,
                 "module": M.lam_text() if M is not None else None}
        fam = pl.build_A_family(A, case, M=M)
        pl.resolve_signs_constants(fam)
        res = {fam.label(r): {"level": v.level, "prefix": v.prefix_index, "signs": v.signs,
                              "constant": v.constant, "constant_status": v.constant_status,
                              "nonzero_image": v.nonzero_image}
               for r, v in fam.resolved.items()}
        rec.add("basis.resolution", "finding" if fam.findings else "pass",
                {"elements": res, "findings": fam.findings}, **extra)
        full = A.rank == 1 and M is not None
        n_factors = None if full else min(6, 2 * A.m)
        cap = A.p - 1 if full else 1
        forms = pl.build_B_forms(A, fam.alpha, count=n_factors or 2 * A.m, seed=seed)
        chk = pl.check_B_forms(A, forms)
        rec.add("basis.forms", _ok(all(chk.values())), dict(chk, t=forms.ts), **extra)
        bf = pl.build_basis_family(fam, forms, cap, n_factors)
        extra.update(cap=cap, factors=len(bf.factors))
        try:
            if full:
                r = pl.check_independence(bf, "image", M=M, budget=budget)
            else:
                r = pl.check_independence(bf, "formal", degree_cap=30, M=M, budget=budget,
                                          seed=seed)
        except InfeasibleError as e:
            rec.add("basis.independence", "infeasible", {"reason": str(e)}, **extra)
            continue
        if r["full"]:
            status = "pass"
        elif r["exact"]:
            status = "finding"
        else:
            status = "infeasible"
        rec.add("basis.independence", status, r, **extra)


def suite_modules(args, rec: Recorder, budget: int):
    A = build_algebra(args.family, args.rank, args.p)
    pm = A.p ** A.m
    for chi in _chis(A, args.chi):
        extra = {"chi": chi.describe()}
        why = feasibility(A, chi, budget)
        if why:
            rec.add("modules.dimension", "infeasible", {"reason": why, "p^m": pm}, **extra)
            continue
        sweep = simple_dimensions(A, chi, budget, args.seed, args.limit)
        rec.add("modules.dimension", _ok(all(d == pm for d in sweep.dims) and sweep.simple_vermas > 0),
                {"p^m": pm, "dims": sweep.dims, "simple_vermas": sweep.simple_vermas,
                 "tested": sweep.tested}, **extra)
        lams = compatible_weights(chi)
        if args.limit is not None:
            lams = lams[:args.limit]
        fails = {}
        for lam in lams:
            f = chi_law_failures(build_baby_verma(A, chi, lam))
            if f:
                fails[str(lam)] = f
        rec.add("modules.chi_law", _ok(not fails), {"modules": len(lams), "failures": fails},
                **extra)
        if A.p ** A.n <= 500:
            cc = regular_crosscheck(chi, args.seed)
            rec.add("modules.regular", _ok(cc["ok"] and cc["factor_dims"] is not None
                                           and all(d == pm for d in cc["factor_dims"])),
                    cc, **extra)


# --- commands ----------------------------------------------------------------

def cmd_algebra(args) -> int:
    A = build_algebra(args.family, args.l, args.p)
    text = export_text(A)
    out = Path(args.out or os.environ.get("MODLIE_OUT", "."))
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{A.rs.family}{A.rank}_p{A.p}.txt"
    path.write_text(text)
    print(f"{A.rs.name} mod {A.p}: n = {A.n}, l = {A.rank}, m = {A.m}  ({path})")
    return 0


def cmd_check(args) -> int:
    budget = args.budget or DEFAULT_BUDGET
    params = {"family": args.family, "rank": args.rank, "p": args.p, "seed": args.seed,
              "budget": budget}
    rec = Recorder(params)
    suites = SUITES if args.suite == "all" else (args.suite,)
    for s in suites:
        if s == "jacobi":
            suite_algebra_dims(args, rec)
            suite_jacobi(args, rec)
        elif s == "casimir":
            suite_casimir(args, rec)
        elif s == "g":
            suite_g(args, rec, budget)
        elif s == "basis":
            suite_basis(args, rec, budget)
        elif s == "modules":
            suite_modules(args, rec, budget)
    records, timings = rec.sorted()
    lines = [_json(r) for r in records]
    for line in lines:
        print(line)
    out = args.out or os.environ.get("MODLIE_OUT")
    if out:
        d = Path(out)
        d.mkdir(parents=True, exist_ok=True)
        stem = f"{args.suite}-{args.family}{args.rank}-p{args.p}"
        (d / f"{stem}.jsonl").write_text("".join(l + "\n" for l in lines))
        (d / f"{stem}.timings.jsonl").write_text("".join(_json(t) + "\n" for t in timings))
    return 1 if any(r["status"] == "fail" for r in records) else 0


def load_records(directory) -> list:
    d = Path(directory)
    if not d.is_dir():
        raise FileNotFoundError(f"no such directory: {d}")
    out = []
    for f in sorted(d.glob("*.jsonl")):
        if f.name.endswith(".timings.jsonl"):
            continue
        for n, line in enumerate(f.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                r = json.loads(line)
                r["claim"], r["status"]
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise ValueError(f"{f.name}:{n}: corrupt record ({e})") from None
            out.append(r)
    return out


def summarise(records) -> str:
    counts: dict = {}
    for r in records:
        c = counts.setdefault(r["claim"], {"pass": 0, "fail": 0, "finding": 0, "infeasible": 0})
        c[r["status"]] = c.get(r["status"], 0) + 1
    lines = [REPORT_VERSION, f"records {len(records)}"]
    for claim in sorted(counts):
        c = counts[claim]
        mark = "FAIL" if c["fail"] else ("FINDING" if c["finding"] else "ok")
        lines.append(f"{claim:28s} pass={c['pass']} fail={c['fail']} finding={c['finding']} "
                     f"infeasible={c['infeasible']}  {mark}")
    return "\n".join(lines) + "\n"


def cmd_report(args) -> int:
    records = load_records(args.dir)
    sys.stdout.write(summarise(records))
    return 1 if any(r["status"] == "fail" for r in records) else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modlie", description="Modular Lie algebra checks")
    sub = ap.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("algebra", help="export structure constants")
    a.add_argument("family", choices=["A", "C"])
    a.add_argument("l", type=int)
    a.add_argument("p", type=int)
    a.add_argument("--out")

    c = sub.add_parser("check", help="run a suite of checks and emit records")
    c.add_argument("suite", choices=SUITES + ("all",))
    c.add_argument("--family", choices=["A", "C"], default="A")
    c.add_argument("--rank", type=int, default=1)
    c.add_argument("--p", type=int, default=7)
    c.add_argument("--chi", help='e.g. "h1=1" or "x(-e1+e2)=1"; default: both patterns')
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--budget", type=int, help="max module GF(p)-dimension / family size")
    c.add_argument("--limit", type=int, help="number of weights in a module sweep")
    c.add_argument("--out")

    r = sub.add_parser("report", help="summarise records in a directory")
    r.add_argument("dir")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.cmd == "algebra":
            return cmd_algebra(args)
        if args.cmd == "check":
            return cmd_check(args)
        return cmd_report(args)
    except USAGE_ERRORS as e:
        print(f"modlie: error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"modlie: error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"modlie: error: {e}", file=sys.stderr)
        return 3
    except Exception as e:                                   # pragma: no cover
        print(f"modlie: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
