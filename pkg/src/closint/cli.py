"""Command line interface.

    closint [--spec FILE | --ring FAMILY --field GF(p)] [--json] [--seed N] VERB [options]

Every command builds one result record; ``--json`` prints it as JSON and
the default prints a plain table derived from the same record.  Exit codes:
0 success, 1 usage or failed check, 2 inconclusive, 3 capability,
4 resource cap, 5 cross-check disagreement.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import __version__
from .artinistic import (ArtinisticInterior, artinistic_interior, hom_test_membership, irreducible_sequence,
                         test_ideal, triviality_check)
from .closures import check_axioms, check_nakayama
from .corehull import cl_core, cospread, i_hull, maximal_expansions, minimal_reductions, spread
from .duality import dual_submodule, smile_interior
from .errors import ClosintError, InconclusiveError, UsageError
from .lattice import enumerate_submodules
from .models import RingIdeal
from .paper_suite import paper_suite
from .ringspec import RingSpec, parse_field, parse_family, parse_ring_spec

__all__ = ["main", "build_parser", "run_command"]

VERBS = ("closure", "interior", "core", "hull", "reductions", "expansions", "spread", "cospread", "dual",
         "testideal", "trivial-check", "hom-test", "check", "paper-suite")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; 2 means inconclusive here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="closint", description="closures, interiors, cores and hulls over small local rings")
    ap.add_argument("--version", action="version", version=f"closint {__version__}")
    ring = ap.add_argument_group("ring")
    ring.add_argument("--spec", help="ring-spec file")
    ring.add_argument("--ring", help="family, e.g. 'semigroup S<2,3>', 'cubic', 'axes x,y'")
    ring.add_argument("--field", default="GF(5)", help="GF(p) or GF(p^d)")
    ap.add_argument("--json", action="store_true", help="print the result record as JSON")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="verb", required=True)

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        return p

    def with_ideal(p, required=True):
        p.add_argument("--ideal", required=required, help="generator list or a named ideal from the ring-spec file")

    def with_closure(p, default="integral"):
        p.add_argument("--closure", default=default, help="closure strategy, e.g. tight[dim1]")

    def with_mode(p, choices, default):
        p.add_argument("--mode", choices=choices, default=default)

    def with_precision(p):
        p.add_argument("--precision", type=int, help="truncation precision (default: faithful plus margin)")

    p = cmd("closure", "closure of an ideal")
    with_ideal(p), with_closure(p)
    p = cmd("interior", "double-colon interior of an ideal")
    with_ideal(p), with_closure(p)
    p.add_argument("--sequence", help="J_t recipe with {...} index expressions in n")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--t-max", type=int, default=12)
    for name, help_text in (("core", "cl-core of an ideal in a truncation"),
                            ("reductions", "minimal reductions"), ("spread", "spread by reduction enumeration")):
        p = cmd(name, help_text)
        with_ideal(p), with_closure(p), with_precision(p)
        modes = {"core": ("enumerate", "fast", "via-duality", "cross-check"),
                 "reductions": ("enumerate", "fast", "descent"), "spread": ("enumerate", "fast", "descent")}[name]
        with_mode(p, modes, "enumerate")
    for name, help_text in (("hull", "i-hull of an ideal"), ("expansions", "maximal expansions"),
                            ("cospread", "co-spread over maximal expansions")):
        p = cmd(name, help_text)
        with_ideal(p), with_closure(p), with_precision(p)
        modes = ("enumerate", "fast", "via-duality", "cross-check") if name == "hull" else ("enumerate", "fast")
        with_mode(p, modes, "fast")
        p.add_argument("--interior", choices=("artinistic", "smile"), default="artinistic",
                       help="artinistic: interior in R by double colons; smile: dual interior inside the truncation")
        p.add_argument("--sequence", help="J_t recipe for the artinistic interior")
    p = cmd("dual", "Matlis dual of a truncation and the image of an ideal")
    with_ideal(p, required=False), with_precision(p)
    p = cmd("testideal", "interior of the unit ideal")
    with_closure(p)
    p.add_argument("--sequence")
    p = cmd("trivial-check", "check J_t^cl = J_t on a range of t")
    with_closure(p)
    p.add_argument("--sequence")
    p.add_argument("--t-max", type=int, default=3)
    p.add_argument("--sample", action="append", default=[], help="extra ideals to spot-check")
    p = cmd("hom-test", "R-linear maps R^{1/q} -> R/J hitting a + J at c^{1/q}")
    p.add_argument("--element", required=True)
    with_ideal(p)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--c", required=True, help="test element candidate")
    p.add_argument("--method", choices=("auto", "system", "adjoint"), default="auto")
    p = cmd("check", "closure axioms and the Nakayama property on a truncation lattice")
    with_closure(p), with_precision(p)
    p = cmd("paper-suite", "regression fixtures of the worked examples")
    p.add_argument("--quick", action="store_true")
    return ap


# --------------------------------------------------------------------------


def _load_spec(args) -> RingSpec | None:
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            return parse_ring_spec(fh.read())
    if args.ring:
        F = parse_field(args.field)
        model = parse_family(args.ring, F)
        return RingSpec(args.ring, args.field, model)
    return None


def _input_hash(args, spec_text: str) -> str:
    h = hashlib.sha256()
    h.update(spec_text.encode())
    h.update(json.dumps({k: v for k, v in sorted(vars(args).items())}, sort_keys=True, default=str).encode())
    return h.hexdigest()[:16]


def _gens(ideal) -> list[str]:
    text = ideal.format()
    if text in ("(0)", "(1)"):
        return [text[1]]
    return sorted(text[1:-1].split(", "), key=lambda g: (len(g), g))


def _seq(spec, args):
    return irreducible_sequence(spec.model, getattr(args, "sequence", None) or None)


def _truncated(spec, args, square=False):
    """Ideal and its truncation at --precision.

    The default is the display precision of the ideal, or of its square when
    ``square`` is set, so that cores (which sit inside I^2 in the examples at
    hand) are not cut off by the truncation.
    """
    I = spec.ideal(args.ideal)
    N = args.precision
    if N is None:
        if square and I.gens:
            sq = RingIdeal(spec.model, [g * h for i, g in enumerate(I.gens) for h in I.gens[i:]])
            N = max(I.display_precision(), sq.display_precision())
        else:
            N = I.display_precision()
    return I, I.at(N), N


def _interior_op(spec, args, cl):
    if args.interior == "smile":
        return smile_interior(cl)
    return ArtinisticInterior(cl, _seq(spec, args))


def run_command(args) -> tuple[dict, int]:
    """Execute one verb; returns ``(record, exit_code)``."""
    verb = args.verb
    spec = _load_spec(args)
    if verb != "paper-suite" and spec is None:
        raise UsageError("give --spec FILE or --ring FAMILY")
    spec_text = spec.print() if spec else ""
    rec = {
        "command": verb,
        "args": {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "verb")},
        "input_hash": _input_hash(args, spec_text),
        "provenance": {"seed": args.seed},
        "outputs": {},
    }
    if spec is not None:
        rec["provenance"]["field"] = repr(spec.model.field)
        rec["provenance"]["ring"] = spec.model.describe()
    out, prov = rec["outputs"], rec["provenance"]
    code = 0
    t0 = time.perf_counter()

    if verb == "closure":
        cl = spec.closure(args.closure)
        I = spec.ideal(args.ideal)
        N = I.faithful_precision()
        res = RingIdeal(spec.model, sub=cl.close(I.at(N)))
        out["ideal"] = _gens(I)
        out["closure"] = _gens(res)
        prov.update(precision=N, closure=cl.name)
        last = getattr(cl, "last", None)
        if last is not None:
            prov.update(route=last.route, stabilized_e=last.stabilized_e, stabilized=last.stabilized)
    elif verb in ("interior", "testideal"):
        cl = spec.closure(args.closure)
        seq = _seq(spec, args)
        kw = {}
        if verb == "interior":
            kw = {"window": args.window, "t_max": args.t_max}
            res = artinistic_interior(spec.ideal(args.ideal), cl, seq, **kw)
        else:
            res = test_ideal(cl, seq)
        out["interior"] = _gens(res.ideal)
        out["partials"] = [_gens(P) for P in res.partials]
        prov.update(mode="artinistic", stabilization_index=res.stabilized_at, precision=res.precision,
                    sequence=res.sequence, closure=cl.name)
    elif verb in ("core", "reductions", "spread"):
        cl = spec.closure(args.closure)
        I, sub, N = _truncated(spec, args, square=True)
        prov.update(mode=args.mode, precision=N, closure=cl.name)
        if verb == "core":
            out["core"] = _gens(cl_core(sub, cl, args.mode))
        elif verb == "reductions":
            out["minimal_reductions"] = [_gens(K) for K in minimal_reductions(sub, cl, args.mode)]
        else:
            s = spread(sub, cl, args.mode)
            out["spread"] = s.value
            out["counts"] = s.counts
    elif verb in ("hull", "expansions", "cospread"):
        cl = spec.closure(args.closure)
        I, sub, N = _truncated(spec, args)
        op = _interior_op(spec, args, cl)
        prov.update(mode=args.mode, precision=N, interior=op.name)
        B = sub.module.full()
        if verb == "hull":
            h = i_hull(sub, B, op, args.mode)
            out["hull"] = _gens(RingIdeal(spec.model, sub=h) if args.interior == "artinistic" else h)
        elif verb == "expansions":
            out["maximal_expansions"] = [_gens(C) for C in maximal_expansions(sub, B, op, args.mode)]
        else:
            s = cospread(sub, B, op, args.mode)
            out["cospread"] = s.value
            out["counts"] = s.counts
    elif verb == "dual":
        N = args.precision or spec.model.default_precision()
        A = spec.model.truncation(N)
        D = A.regular.dual()
        prov.update(precision=N)
        out["dim"] = D.dim
        out["labels"] = list(A.labels)
        names = [A.labels[int(np.nonzero(g)[0][0])] for g in A.gens]
        out["actions"] = {str(n): G.tolist() for n, G in zip(names, D.gen_actions)}
        out["socle_dimension"] = D.socle().dim
        if args.ideal:
            sub = spec.ideal(args.ideal).at(N)
            out["ideal"] = _gens(sub)
            out["dual_submodule"] = dual_submodule(sub, D).basis.tolist()
    elif verb == "trivial-check":
        cl = spec.closure(args.closure)
        seq = _seq(spec, args)
        rep = triviality_check(cl, seq, range(1, args.t_max + 1), samples=args.sample)
        out["closed"] = {str(k): v for k, v in rep.checked.items()}
        out["witnesses"] = {str(k): v for k, v in rep.witnesses.items()}
        out["spot_checks"] = rep.spot_checks
        out["trivial"] = rep.trivial
        out["summary"] = rep.summary()
        prov.update(closure=cl.name, sequence=seq.name)
    elif verb == "hom-test":
        ok = hom_test_membership(args.element, spec.ideal(args.ideal), args.e, args.c, spec.model, args.method)
        out["exists"] = bool(ok)
        prov.update(e=args.e, c=args.c, method=args.method)
    elif verb == "check":
        cl = spec.closure(args.closure)
        N = args.precision or 6
        M = spec.model.truncation(N).regular
        lat = enumerate_submodules(M)
        ax = check_axioms(cl, [M], lattices=[lat])
        nak = check_nakayama(cl, [M], lattices=[lat])
        out["axioms"] = ax.results
        out["nakayama"] = nak.results["nakayama"]
        out["submodules"] = len(lat)
        out["certificates"] = [c.describe() for c in ax.certificates + nak.certificates]
        prov.update(precision=N, closure=cl.name)
        if not ax.passed:
            code = 1
    elif verb == "paper-suite":
        rep = paper_suite(quick=args.quick)
        out["rows"] = [r.as_dict() for r in rep.rows]
        out["passed"] = rep.passed
        out["table"] = rep.table()
        if not rep.passed:
            code = 1
    rec["timing_seconds"] = round(time.perf_counter() - t0, 3)
    return rec, code


def _plain(rec: dict) -> str:
    if rec["command"] == "paper-suite":
        return rec["outputs"]["table"]
    lines = [f"command: {rec['command']}"]
    for k, v in rec["outputs"].items():
        if isinstance(v, list) and v and isinstance(v[0], str):
            v = "(" + ", ".join(v) + ")"
        elif isinstance(v, list) and v and isinstance(v[0], list) and v[0] and isinstance(v[0][0], str):
            v = "; ".join("(" + ", ".join(x) + ")" for x in v)
        lines.append(f"{k}: {v}")
    for k, v in rec["provenance"].items():
        lines.append(f"  {k}: {v}")
    return "\n".join(lines)


def _to_jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    return str(x)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rec, code = run_command(args)
    except InconclusiveError as err:
        partials = [_gens(P) if hasattr(P, "format") else str(P) for P in err.partials]
        payload = {"command": args.verb, "error": "inconclusive", "message": str(err), "partials": partials}
        print(json.dumps(payload, indent=2, sort_keys=True) if args.json else f"inconclusive: {err}\n"
              + "\n".join("(" + ", ".join(P) + ")" if isinstance(P, list) else P for P in partials))
        return err.exit_code
    except ClosintError as err:
        payload = {"command": args.verb, "error": type(err).__name__, "message": str(err)}
        if getattr(err, "diff", None) is not None:
            payload["diff"] = err.diff
        if args.json:
            print(json.dumps(payload, indent=2, sort_keys=True, default=_to_jsonable))
        else:
            print(f"error: {err}", file=sys.stderr)
            if "diff" in payload:
                print(json.dumps(payload["diff"], default=_to_jsonable), file=sys.stderr)
        return err.exit_code
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(rec, indent=2, sort_keys=True, default=_to_jsonable))
    else:
        print(_plain(rec))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
