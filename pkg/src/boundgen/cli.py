"""Command-line driver: every operation as a subcommand with JSON in and out.

Input is a JSON object::

    {"field": {"minpoly": ["1", "0", "1"]},          # optional, default Q
     "matrices": {"g": {"n": 2, "entries": [...]}},   # named matrices
     "params": {...}}                                  # per-command parameters

Exit codes: 0 success, 2 hypothesis-violated pipeline, 1 error (a JSON
object ``{"code", "message"}`` is written to standard error).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import sympy

from .bglab import MembershipWitness, _split_factors, compute_J, laurent_enumerate, theorem41_pipeline
from .errors import BoundGenError, ParseError
from .exppoly import MPoly, resultant_z
from .grpanalysis import (
    RatFuncMatrix,
    _eval_tree,
    derived_depth_witness,
    generic_hunt,
    genericity_heuristic,
    specialize,
)
from .multrel import MultGroup, check_witness, eigenvalue_group, is_multiplicatively_independent, is_relation, relation_lattice
from .nflinalg import NFMatrix, charpoly, eigenvalues_in_field, is_semisimple, jordan_chevalley, minpoly
from .qarith import NFElem, nf_new, rationals

COMMANDS = (
    "analyze", "decompose", "relations", "independent", "resultant", "membership",
    "laurent", "pipeline", "specialize", "solvable", "hunt", "genericity",
)


def _num(x):
    """Compact JSON for a field element: int, "p/q", or a coefficient list."""
    if isinstance(x, NFElem):
        if not x.is_rational():
            return x.to_json()
        x = x.to_rational()
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _poly_json(p):
    return [_num(c) for c in p.coeffs]


class Context:
    """Parsed experiment input plus command-line overrides."""

    def __init__(self, spec: dict, args):
        if not isinstance(spec, dict):
            raise ParseError("input must be a JSON object")
        self.spec = spec
        fdesc = spec.get("field")
        if fdesc is None or list(fdesc.get("minpoly", [])) in ([], ["-1", "1"], [-1, 1]):
            self.field = rationals()
        else:
            self.field = nf_new(fdesc["minpoly"])
        self.params = dict(spec.get("params", {}))
        for flag, key in (("seed", "seed"), ("box", "box"), ("range", "range"),
                          ("precision", "precision"), ("threads", "threads")):
            val = getattr(args, flag, None)
            if val is not None:
                self.params[key] = val
        self._mats = {}
        for name, data in spec.get("matrices", {}).items():
            self._mats[name] = data

    def matrix(self, ref) -> NFMatrix:
        if isinstance(ref, str):
            if ref not in self._mats:
                raise ParseError(f"unknown matrix reference {ref!r}")
            return NFMatrix.from_json(self._mats[ref], self.field)
        return NFMatrix.from_json(ref, self.field)

    def matrices(self, key, default_all=False):
        refs = self.params.get(key)
        if refs is None:
            if default_all:
                refs = list(self._mats)
            else:
                raise ParseError(f"missing parameter {key!r}")
        return [self.matrix(r) for r in refs]

    def elem(self, value) -> NFElem:
        return self.field(value)

    def get(self, key, default=None):
        return self.params.get(key, default)

    def require(self, key):
        if key not in self.params:
            raise ParseError(f"missing parameter {key!r}")
        return self.params[key]

    def mpoly(self, data) -> MPoly:
        if isinstance(data, dict) and "terms" in data:
            return MPoly.from_json(data, self.field)
        if isinstance(data, dict) and "expr" in data:
            names = list(data["vars"])
            syms = sympy.symbols(names)
            expr = sympy.sympify(data["expr"], locals=dict(zip(names, syms)))
            poly = sympy.Poly(expr, *syms, domain=sympy.QQ)
            terms = {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in poly.terms()}
            return MPoly(names, terms, self.field)
        raise ParseError("polynomial must be {vars, terms} or {vars, expr}")

    def first_matrix_name(self):
        if not self._mats:
            raise ParseError("no matrices given")
        return next(iter(self._mats))


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(ctx: Context):
    g = ctx.matrix(ctx.get("matrix", ctx.first_matrix_name()))
    out = {
        "semisimple": is_semisimple(g),
        "minpoly": _poly_json(minpoly(g)),
        "charpoly": _poly_json(charpoly(g)),
    }
    if out["semisimple"]:
        try:
            out["eigenvalues"] = [_num(x) for x in eigenvalues_in_field(g).eigenvalues]
        except BoundGenError:
            out["eigenvalues"] = None
    return out


def cmd_decompose(ctx: Context):
    g = ctx.matrix(ctx.get("matrix", ctx.first_matrix_name()))
    pair = jordan_chevalley(g)
    return {
        "semisimple_part": pair.semisimple_part.to_json(),
        "unipotent_part": pair.unipotent_part.to_json(),
        "sigma_poly": [c.to_json() for c in pair.sigma_poly.coeffs],
    }


def cmd_relations(ctx: Context):
    elems = [ctx.elem(x) for x in ctx.require("elements")]
    lat = relation_lattice(MultGroup(ctx.field, tuple(elems)), ctx.get("box", 4), ctx.get("precision", 64))
    return lat.to_json()


def cmd_independent(ctx: Context):
    lam = ctx.elem(ctx.require("lambda"))
    elems = [ctx.elem(x) for x in ctx.require("elements")]
    verdict = is_multiplicatively_independent(lam, MultGroup(ctx.field, tuple(elems)), ctx.get("box", 4),
                                              ctx.get("precision", 64))
    return verdict.to_json()


def cmd_resultant(ctx: Context):
    q = ctx.mpoly(ctx.require("q"))
    p = ctx.mpoly(ctx.require("p"))
    return resultant_z(q, p, ctx.get("var", "z")).to_json()


def cmd_membership(ctx: Context):
    gamma = ctx.matrix(ctx.require("gamma"))
    gens = ctx.matrices("gens")
    rep = compute_J(gamma, gens, ctx.get("range", 10), ctx.get("box", 10), threads=ctx.get("threads", 1))
    return rep.to_json()


def cmd_laurent(ctx: Context):
    f = ctx.mpoly(ctx.require("f"))
    mu = ctx.elem(ctx.require("mu"))
    mus = [ctx.elem(x) for x in ctx.require("mu_list")]
    return laurent_enumerate(f, mu, mus, ctx.get("range", 10), ctx.get("box", 10)).to_json()


def cmd_pipeline(ctx: Context):
    gamma = ctx.matrix(ctx.require("gamma"))
    gens = ctx.matrices("gens")
    hint = ctx.get("lambda")
    cert = theorem41_pipeline(
        gamma, gens,
        lambda_hint=ctx.elem(hint) if hint is not None else None,
        m_range=ctx.get("range", 15),
        box=ctx.get("box", 40),
        relation_box=ctx.get("relation_box"),
        threads=ctx.get("threads", 1),
    )
    return cert.to_json()


def _rat_matrices(ctx: Context):
    variables = ctx.require("variables")
    mats = ctx.require("rat_matrices")
    if isinstance(mats, dict):
        mats = list(mats.values())
    return variables, [RatFuncMatrix(variables, m) for m in mats]


def cmd_specialize(ctx: Context):
    variables, mats = _rat_matrices(ctx)
    wm = ctx.get("witness_matrix")
    rec = specialize(
        mats, ctx.require("witness_entry"), seed=ctx.get("seed", 0), max_tries=ctx.get("max_tries", 1000),
        witness_matrix=RatFuncMatrix(variables, wm) if wm is not None else None,
    )
    return rec.to_json()


def cmd_solvable(ctx: Context):
    gens = ctx.matrices("gens", default_all=True)
    w = derived_depth_witness(gens, ctx.get("ell", 2), ctx.get("depth", gens[0].n + 1), ctx.get("budget", 500),
                              ctx.get("seed", 0))
    return {"witness": w.to_json() if w else None}


def cmd_hunt(ctx: Context):
    gens = ctx.matrices("gens")
    opponents = ctx.matrices("opponents")
    stats = {}
    found = generic_hunt(gens, opponents, ctx.get("word_budget", 200), ctx.get("seed", 0), ctx.get("box", 4),
                         stats=stats)
    if found is None:
        return {"found": None, "stats": stats}
    word, mat, verdict = found
    return {"found": {"word": word.to_json(), "matrix": mat.to_json(), "verdict": verdict.to_json()},
            "stats": stats}


def cmd_genericity(ctx: Context):
    g = ctx.matrix(ctx.get("matrix", ctx.first_matrix_name()))
    return genericity_heuristic(g, ctx.get("primes", 10)).to_json()


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


# ---------------------------------------------------------------------------
# verification of saved reports


def _verify_report(report: dict) -> list[str]:
    """Exact re-checks of the witnesses in a report, then a determinism re-run."""
    command = report.get("command")
    if command not in HANDLERS:
        raise ParseError(f"report has unknown command {command!r}")
    spec = report["input"]
    ctx = Context(spec, argparse.Namespace())
    ctx.params = dict(report.get("params", ctx.params))
    res = report["result"]
    problems = []
    if command == "membership" or command == "pipeline":
        gamma = ctx.matrix(ctx.params["gamma"])
        gens = ctx.matrices("gens")
        scan = res if command == "membership" else res["J_scan"]
        ms = [w["m"] for w in scan["witnesses"]]
        if len(set(ms)) != len(ms):
            problems.append("repeated m in witnesses")
        for w in scan["witnesses"]:
            if not MembershipWitness(w["m"], tuple(w["exponents"])).verify(gamma, gens):
                problems.append(f"membership witness for m={w['m']} fails")
        if command == "pipeline":
            ind = res["independence"]
            if ind["independent"] == "no":
                lam = ctx.elem(res["lambda"])
                wit = ind["witness"]
                if len(wit) == 1 or all(x == 0 for x in wit[1:]):
                    if lam ** wit[0] != 1:
                        problems.append("torsion witness fails")
                elif not check_witness(lam, _pipeline_group(gens), wit):
                    problems.append("dependence witness fails")
    elif command == "relations":
        elems = [ctx.elem(x) for x in ctx.params["elements"]]
        for b in res["basis"]:
            if not is_relation(elems, b, ctx.field):
                problems.append(f"basis vector {b} is not a relation")
    elif command == "independent" and res["independent"] == "no":
        lam = ctx.elem(ctx.params["lambda"])
        elems = [ctx.elem(x) for x in ctx.params["elements"]]
        wit = res["witness"]
        ok = lam ** wit[0] == 1 if all(x == 0 for x in wit[1:]) else check_witness(lam, elems, wit)
        if not ok:
            problems.append("dependence witness fails")
    elif command == "laurent":
        f = ctx.mpoly(ctx.params["f"])
        mu = ctx.elem(ctx.params["mu"])
        mus = [ctx.elem(x) for x in ctx.params["mu_list"]]
        for s in res["solutions"]:
            vals = [mu ** s["m"]] + [v**a for v, a in zip(mus, s["exponents"])]
            if not f.eval(vals).is_zero():
                problems.append(f"solution m={s['m']} fails")
    elif command == "solvable" and res["witness"] is not None:
        gens = ctx.matrices("gens", default_all=True)
        w = res["witness"]
        mat = _eval_tree(w["tree"], gens)
        if mat.is_identity() or mat != NFMatrix.from_json(w["element"], ctx.field):
            problems.append("solvability witness does not replay")
    rerun = HANDLERS[command](ctx)
    if _dumps(rerun) != _dumps(res):
        problems.append("re-running the command gives a different result")
    return problems


def _pipeline_group(gens):
    _, factors, s, _ = _split_factors(gens)
    return list(eigenvalue_group([m for i, m in enumerate(factors) if i != s]).generators)


# ---------------------------------------------------------------------------
# entry point


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boundgen", description="Exact experiments on products of cyclic matrix groups.")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("inline", nargs="?", help="inline JSON input")
    p.add_argument("--input", help="JSON input file")
    p.add_argument("--seed", type=int)
    p.add_argument("--box", type=int)
    p.add_argument("--range", type=int)
    p.add_argument("--precision", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--verify", metavar="REPORT", help="re-check a saved report exactly")
    return p


def _error(code: str, message: str) -> int:
    sys.stderr.write(_dumps({"code": code, "message": message}) + "\n")
    return 1


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and _error("usage", "invalid command line")
    try:
        if args.verify:
            with open(args.verify, encoding="utf-8") as fh:
                report = json.load(fh)
            problems = _verify_report(report)
            sys.stdout.write(_dumps({"verified": not problems, "problems": problems}) + "\n")
            return 0 if not problems else 1
        if args.command is None:
            return _error("usage", "a command is required")
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                spec = json.load(fh)
        elif args.inline:
            spec = json.loads(args.inline)
        else:
            spec = json.load(sys.stdin)
        ctx = Context(spec, args)
        result = HANDLERS[args.command](ctx)
    except json.JSONDecodeError as exc:
        return _error("parse", str(exc))
    except BoundGenError as exc:
        return _error(exc.code, str(exc))
    except OSError as exc:
        return _error("io", str(exc))
    except (KeyError, TypeError, ValueError) as exc:
        return _error("bad-input", str(exc))
    report = {"command": args.command, "input": spec, "params": ctx.params, "result": result}
    sys.stdout.write(_dumps(report) + "\n")
    if args.command == "pipeline" and result.get("conclusion") == "hypothesis-violated":
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
