"""Command-line front end.

Every subcommand prints one JSON document on stdout.  When INVBUNDLES_OUTPUT_DIR
is set the document is also written there as <subcommand>.json next to a
<subcommand>.manifest.json describing the run.  Exit codes: 0 success,
1 mathematical mismatch, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .errors import InvBundlesError

OUTPUT_ENV = "INVBUNDLES_OUTPUT_DIR"

USAGE_ERRORS = (
    "NonPrime",
    "PrimeTooSmall",
    "PrimeNotSixNPlusMinusOne",
    "NotHyperbolic",
    "IndexOutOfRange",
    "BelowCanonicalRange",
    "NotPerfect",
    "NoSolution",
    "AngleOutOfRange",
    "FixtureMissing",
)


class Mismatch(Exception):
    """A computed result disagrees with a reference; carries the JSON payload."""

    def __init__(self, payload: dict, text: str = ""):
        super().__init__(text)
        self.payload = payload
        self.text = text


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _versions() -> dict:
    import numpy
    import scipy
    import sympy

    from ._accel import NUMBA_ENABLED

    out = {"invbundles": __version__, "python": platform.python_version(),
           "numpy": numpy.__version__, "scipy": scipy.__version__, "sympy": sympy.__version__,
           "numba_enabled": NUMBA_ENABLED}
    try:
        import numba

        out["numba"] = numba.__version__
    except ImportError:  # pragma: no cover
        out["numba"] = None
    return out


# -- subcommands ---------------------------------------------------------------------------


def _table(p: int, group: str = "sl2"):
    from .chartable import character_table
    from .group import PSL2, SL2, build_group

    return character_table(build_group(p, SL2 if group == "sl2" else PSL2))


def _label(T, text: str) -> str:
    return T.names[T.index(text)]


def cmd_chartab(a):
    T = _table(a.p, a.group)
    if a.format == "tsv":
        return T.to_tsv()
    return T.to_json()


def cmd_tensor(a):
    from .repring import decompose, format_multiset, tensor

    T = _table(a.p)
    x, y = _label(T, a.a), _label(T, a.b)
    d = decompose(T, tensor(T, x, y))
    return {"p": a.p, "a": x, "b": y, "decomposition": d.as_dict(),
            "multiset": format_multiset(d.as_dict(), short=False), "dimension": d.dimension}


def cmd_sympow(a):
    from .repring import decompose, format_multiset, sym_power

    T = _table(a.p)
    r = _label(T, a.r)
    d = decompose(T, sym_power(T, r, a.n))
    return {"p": a.p, "source": r, "n": a.n, "decomposition": d.as_dict(),
            "multiset": format_multiset(d.as_dict(), short=False), "dimension": d.dimension}


def cmd_molien(a):
    from .repring import molien

    T = _table(a.p)
    tgt, src = _label(T, a.target), _label(T, a.source)
    s = molien(T, tgt, src, a.N)
    return {"p": a.p, "target": tgt, "source": src, "N": a.N, "coefficients": s.to_list()}


def cmd_pic(a):
    from .picard import DyckSignature, picard_structure, snf_torsion

    sig = DyckSignature.parse(a.signature)
    ps = picard_structure(sig)
    out = ps.to_json()
    rank, tors = snf_torsion(sig)
    out["snf_oracle"] = {"free_rank": rank, "torsion": list(tors),
                         "agrees": rank == ps.free_rank and tors == ps.torsion}
    if not out["snf_oracle"]["agrees"]:
        raise Mismatch(out, "gcd ladder and Smith normal form disagree")
    return out


def cmd_modular(a):
    from .picard import chevalley_weil, modular_data

    md = modular_data(a.p)
    out = md.to_json()
    decs = {}
    if not md.degenerate:
        for k in range(2 * a.p - 12, 2 * a.p - 4):
            cw = chevalley_weil(a.p, k)
            decs[str(k)] = {"dimension": cw.dimension, "group": cw.group,
                            "irreps": cw.decomposition.as_dict()}
    out["decompositions"] = decs
    return out


def cmd_su2_census(a):
    from .flatmoduli import su2_census

    return su2_census(a.p).to_json()


def cmd_exponents(a):
    from .flatmoduli import exponent_table

    return {"p": a.p, "exponents": exponent_table(a.p)}


def cmd_su3_count(a):
    from .flatmoduli import six_n_epsilon, su3_census_p7, su3_count

    n, eps = six_n_epsilon(a.p)
    out = {"p": a.p, "n": n, "epsilon": eps, "count": su3_count(a.p)}
    if a.p == 7:
        out["census"] = su3_census_p7().to_json()
    return out


def cmd_solve(a):
    import numpy as np

    from .flatmoduli import census_lift, closed_form_k, su2_census
    from .picard import DyckSignature
    from .unitary import (
        SolverConfig,
        UnitaryTuple,
        census_spec,
        irreducibility,
        rank3_specs_p7,
        solve_triple,
        verify_relations,
    )

    cfg = SolverConfig(seed=a.seed)
    sig = DyckSignature((2, 3, a.p))
    if a.r == 2:
        su2_census(a.p)
        spec, sign = census_spec(a.p, a.k)
        ext, _ = census_lift(a.p)
        expected = a.k in closed_form_k(a.p)
    else:
        if a.p != 7:
            raise InvBundlesError("rank 3 solutions are only tabulated for p = 7")
        specs = list(rank3_specs_p7().items())
        if not 1 <= a.k <= len(specs):
            raise InvBundlesError(f"-k selects one of the {len(specs)} rank-3 bundles (1..{len(specs)})")
        name, spec = specs[a.k - 1]
        sign = 1
        ext = None
        expected = True
    rep = solve_triple(spec, cfg)
    out = {"p": a.p, "k": a.k, "rank": a.r, "seed": a.seed, "report": rep.to_json(a.dump),
           "expected_solvable": expected}
    if a.r == 3:
        out["bundle"] = name
    if rep.converged:
        tup = rep.tuple
        if ext is not None:
            out["relation_residuals"] = [float(f"{x:.3e}") for x in verify_relations(tup, sig, ext, sign)]
            out["traces"] = [round(float(np.trace(A).real), 12) for A in tup.matrices]
        out["irreducible"] = irreducibility(tup)
        out["unitarity_defects"] = [float(f"{x:.3e}") for x in UnitaryTuple(tup.matrices).unitarity_defects()]
    if rep.converged != expected:
        raise Mismatch(out, f"solver outcome {rep.status} disagrees with the census")
    return out


def cmd_verify_identities(a):
    from .polyverify import run_identity_checks

    reps = run_identity_checks()
    out = {"reports": [r.to_json() for r in reps], "passed": all(r.passed for r in reps)}
    if not out["passed"]:
        text = "\n".join(f"{r.name}: computed {r.computed}, claimed {r.claimed}"
                         for r in reps if not r.passed)
        raise Mismatch(out, text)
    return out


def cmd_reproduce(a):
    from .golden import reproduce_appendices

    diffs = reproduce_appendices(a.N, Path(a.fixtures) if a.fixtures else None)
    out = {"N": a.N, "diffs": [d.to_json() for d in diffs], "passed": all(d.passed for d in diffs)}
    if not out["passed"]:
        raise Mismatch(out, "\n".join(d.summary() for d in diffs))
    return out


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    P = argparse.ArgumentParser(prog="invbundles", description="Invariant bundles on modular curves X(p).")
    P.add_argument("--version", action="version", version=__version__)
    sub = P.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chartab", help="character table of SL(2,p) or PSL(2,p)")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--group", choices=("sl2", "psl2"), default="sl2")
    s.add_argument("--format", choices=("json", "tsv"), default="json")
    s.set_defaults(func=cmd_chartab)

    s = sub.add_parser("tensor", help="decompose a tensor product")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-a", required=True)
    s.add_argument("-b", required=True)
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("sympow", help="decompose a symmetric power")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-r", required=True)
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_sympow)

    s = sub.add_parser("molien", help="multiplicity series of a target in S^n(source)")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--source", required=True)
    s.add_argument("-N", type=int, default=40)
    s.set_defaults(func=cmd_molien)

    s = sub.add_parser("pic", help="equivariant Picard group of a Dyck signature")
    s.add_argument("--signature", required=True)
    s.set_defaults(func=cmd_pic)

    s = sub.add_parser("modular", help="invariants of X(p) and decompositions of H^0(lambda^a)")
    s.add_argument("-p", type=int, required=True)
    s.set_defaults(func=cmd_modular)

    s = sub.add_parser("su2-census", help="irreducible SU(2) data for (2,3,p)")
    s.add_argument("-p", type=int, required=True)
    s.set_defaults(func=cmd_su2_census)

    s = sub.add_parser("exponents", help="exponent a for each census entry")
    s.add_argument("-p", type=int, required=True)
    s.set_defaults(func=cmd_exponents)

    s = sub.add_parser("su3-count", help="number of rank-3 invariant bundles")
    s.add_argument("-p", type=int, required=True)
    s.set_defaults(func=cmd_su3_count)

    s = sub.add_parser("solve", help="construct unitary matrices for a census entry")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-k", type=int, required=True,
                   help="rotation number (rank 2) or bundle index 1..4 (rank 3, p = 7)")
    s.add_argument("-r", type=int, choices=(2, 3), default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dump", action="store_true", help="include the matrices")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify-identities", help="determinant, Pfaffian and Hessian identities")
    s.set_defaults(func=cmd_verify_identities)

    s = sub.add_parser("reproduce-appendices", help="regenerate and diff the SL(2,7) tables")
    s.add_argument("-N", type=int, default=40)
    s.add_argument("--fixtures", default=None, help="directory holding the TSV fixtures")
    s.set_defaults(func=cmd_reproduce)
    return P


def _emit(args, argv, payload, status: str, started: float) -> None:
    text = payload if isinstance(payload, str) else _dumps(payload)
    sys.stdout.write(text)
    outdir = os.environ.get(OUTPUT_ENV)
    if not outdir:
        return
    ext = "tsv" if isinstance(payload, str) else "json"
    out = Path(outdir) / f"{args.command}.{ext}"
    _atomic_write(out, text)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    manifest = {
        "subcommand": args.command,
        "argv": list(argv),
        "parameters": params,
        "seed": params.get("seed"),
        "versions": _versions(),
        "wall_time_s": round(time.perf_counter() - started, 3),
        "status": status,
        "outputs": [str(out)],
    }
    _atomic_write(Path(outdir) / f"{args.command}.manifest.json", _dumps(manifest))


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        payload = args.func(args)
    except Mismatch as m:
        _emit(args, argv, m.payload, "mismatch", started)
        sys.stderr.write(m.text + "\n")
        return 1
    except InvBundlesError as e:
        name = type(e).__name__
        if name in USAGE_ERRORS or type(e) is InvBundlesError:
            sys.stderr.write(f"{name}: {e}\n")
            parser.print_usage(sys.stderr)
            return 2
        sys.stderr.write(f"{name}: {e}\n")
        return 1
    except (KeyError, ValueError) as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        parser.print_usage(sys.stderr)
        return 2
    _emit(args, argv, payload, "ok", started)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
