"""Command-line front end.

Exit codes: 0 all checks passed, 1 a law/axiom violation (witness printed),
2 usage or parse error, 3 a size/depth guard was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import chains as ch
from .congruence import generate_congruence, order_lifting_failure, quotient
from .consistency import ConsistencyStructure, check_axioms, saturate
from .dot import consistency_dot, hasse_dot
from .dsl import parse_dsl
from .errors import (ConflictError, CycleError, DepthExceeded, MissingCertificate,
                     ParseError, SizeGuardExceeded, TlatError)
from .euler import QuiverRepDims, admissibility_contradiction, format_report, homfp_euler
from .poset import Poset, build_poset, check_laws, is_lattice, postulate_failures
from .terms import ValuationOracle, generators, parse_term, to_dnf
from .universal import build_U_staged, psi

SCHEMA = 1
OK, VIOLATION, USAGE, GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Result:
    status: int = OK
    data: dict = field(default_factory=dict)
    text: list = field(default_factory=list)
    dot: str | None = None
    witness: dict | None = None

    def violation(self, witness: dict, line: str):
        self.status = VIOLATION
        self.witness = witness
        self.text.append(line)


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def _read(args):
    if not args.file:
        raise UsageError("this command needs -f FILE")
    try:
        with open(args.file, encoding="utf-8") as fh:
            return parse_dsl(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None


def _lattice_or_witness(p: Poset, res: Result):
    ok, L = is_lattice(p)
    if ok:
        return L
    e = p.elements
    for T, op in ((p.meet_table, "meet"), (p.join_table, "join")):
        bad = np.argwhere(T < 0)
        if len(bad):
            i, j = map(int, bad[0])
            res.violation({"missing": op, "pair": [str(e[i]), str(e[j])]},
                          f"not a lattice: no {op} of {e[i]} and {e[j]}")
            return None
    res.violation({"missing": "element"}, "not a lattice: empty carrier")
    return None


def _names(t):
    return [str(x) for x in t]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_poset_check(args, res: Result):
    doc = _read(args)
    p = doc.poset()
    ok, _ = is_lattice(p)
    e = p.elements
    edges = [(str(e[i]), str(e[j])) for i, j in p.hasse_edges()]
    res.data.update(elements=_names(e), bottom=None if p.bottom is None else str(e[p.bottom]),
                    top=None if p.top is None else str(e[p.top]), lattice=ok,
                    hasse=[list(x) for x in edges])
    res.text += [f"elements: {len(p)}",
                 f"bottom: {res.data['bottom'] or '-'}",
                 f"top: {res.data['top'] or '-'}",
                 f"lattice: {'yes' if ok else 'no'}",
                 f"hasse edges: {len(edges)}"]
    res.text += [f"  {a} < {b}" for a, b in edges]
    res.dot = hasse_dot(p)


def cmd_lattice_laws(args, res: Result):
    doc = _read(args)
    p = doc.poset()
    res.dot = hasse_dot(p)
    L = _lattice_or_witness(p, res)
    if L is None:
        return
    rep = check_laws(L)
    res.data.update(size=len(L), laws=rep.as_dict())
    for k, v in rep.postulates.items():
        res.text.append(f"{k}: {'pass' if v else 'FAIL'}")
    for k in ("compar", "modular", "distributive", "dis1", "dis2", "ha"):
        ok = getattr(rep, k)
        w = rep.witnesses.get(k)
        res.text.append(f"{k}: {'pass' if ok else 'FAIL'}" + ("" if w is None else f"  witness ({', '.join(map(str, w))})"))
    res.text.append(f"N5 sublattice: {'none' if rep.n5 is None else ', '.join(map(str, rep.n5))}")
    res.text.append(f"M3 sublattice: {'none' if rep.m3 is None else ', '.join(map(str, rep.m3))}")
    failed = [k for k in ("compar", "modular", "distributive", "dis1", "dis2", "ha")
              if not getattr(rep, k)] + [k for k, v in rep.postulates.items() if not v]
    if failed:
        first = failed[0]
        w = rep.witnesses.get(first)
        res.violation({"law": first, "triple": _names(w) if w else None,
                       "failed": failed}, f"violation: {', '.join(failed)}")


def _structure(args):
    doc = _read(args)
    p = doc.bounded_poset()
    ok, L = is_lattice(p)
    return ConsistencyStructure(p, doc.lower, doc.upper, L if ok else None)


def cmd_cons_check(args, res: Result):
    cs = _structure(args)
    try:
        if not args.raw:
            cs = saturate(cs)
        rep = check_axioms(cs)
    except ConflictError as exc:
        d = exc.derivation
        res.violation({"conflict": d.as_dict() if d is not None else None}, f"conflict: {exc}")
        return
    except MissingCertificate as exc:
        res.violation({"missing_certificate": _names(exc.pair)}, f"missing certificate: {exc}")
        return
    res.data["axioms"] = rep.as_dict()
    for a, r in rep.as_dict().items():
        if r["pass"]:
            res.text.append(f"{a}: pass")
        else:
            res.text.append(f"{a}: FAIL  witness ({', '.join(r['witness'])})  {r['reason']}")
    res.dot = consistency_dot(cs)
    if not rep.ok:
        a = rep.failed()[0]
        res.violation({"axiom": a, "triple": _names(rep.results[a]), "failed": rep.failed()},
                      f"violation: {', '.join(rep.failed())}")


def cmd_cons_saturate(args, res: Result):
    cs = _structure(args)
    try:
        sat = saturate(cs)
    except ConflictError as exc:
        d = exc.derivation
        res.violation({"conflict": d.as_dict() if d is not None else None}, f"conflict: {exc}")
        return
    res.data.update(derivations=[d.as_dict() for d in sat.log],
                    lower=[_names(x) for x in sat.lower], upper=[_names(x) for x in sat.upper])
    res.text.append(f"derivations: {len(sat.log)}")
    res.text += [f"  {d}" for d in sat.log]
    res.text.append(f"lower pairs: {len(sat.lower)}")
    res.text.append(f"upper pairs: {len(sat.upper)}")
    res.dot = consistency_dot(sat)


def _term_poset(args, terms):
    if args.file:
        return _read(args).poset()
    labels = sorted(set().union(*(generators(t) for t in terms)), key=str)
    return build_poset(labels)


def cmd_term_nf(args, res: Result):
    t = parse_term(args.expr)
    P = _term_poset(args, [t])
    d = to_dnf(t, P)
    res.data.update(term=str(t), dnf=str(d),
                    clauses=[[str(P.elements[i]) for i in c] for c in d.clauses])
    res.text.append(str(d))


def cmd_term_eq(args, res: Result):
    t1, t2 = parse_term(args.left), parse_term(args.right)
    P = _term_poset(args, [t1, t2])
    d1, d2 = to_dnf(t1, P), to_dnf(t2, P)
    eq = d1 == d2
    res.data.update(left=str(d1), right=str(d2), equal=eq)
    res.text.append("equal" if eq else "not equal")
    if not eq:
        oracle = ValuationOracle(P)
        diff = oracle.truth(t1) ^ oracle.truth(t2)
        k = (diff & -diff).bit_length() - 1
        v = oracle.valuations[k]
        up = [str(x) for x in P.elements if v[x]]
        res.violation({"valuation_true_on": up, "left": str(d1), "right": str(d2)},
                      f"separating valuation: true exactly on {{{', '.join(up)}}}")


def _chain_pair(args):
    if args.n is None or args.m is None:
        raise UsageError("chains commands need -n and -m")
    if args.n < 1 or args.m < 1:
        raise UsageError("-n and -m must be positive")
    return ch.ChainPair(args.n, args.m)


def _grid(cp, args):
    size = ch.lattice_size(cp)
    if size > args.max_size:
        raise SizeGuardExceeded(f"grid lattice has {size} elements, guard is {args.max_size}",
                                size, args.max_size)
    return ch.enumerate_lattice(cp)


def _decomposables(cp, L, res: Result, identify=()):
    project = L.index
    if identify:
        pairs = []
        for spec in identify:
            if "=" not in spec:
                raise UsageError(f"--identify expects LHS=RHS, got {spec!r}")
            lhs, rhs = spec.split("=", 1)
            pairs.append((_u_sum(cp, lhs), _u_sum(cp, rhs)))
        c = generate_congruence(L, pairs)
        Q = quotient(L, c)
        res.data["quotient_size"] = len(Q)
        res.text.append(f"quotient size: {len(Q)}")
        L, project = Q, (lambda s, c=c, base=L: c.project(base.index(s)))
    table = []
    for i in range(1, cp.n + 1):
        for j in range(1, cp.m + 1):
            dec = ch.decomposable(cp, i, j, L, project)
            table.append({"u": ch._uname(i, j), "decomposable": dec})
            res.text.append(f"{ch._uname(i, j)}: {'decomposable' if dec else 'indecomposable'}")
    res.data["decomposables"] = table


def _u_sum(cp, text):
    parts = [s.strip() for s in text.split("+")]
    s = cp.zero
    for part in parts:
        if not part:
            raise UsageError(f"empty summand in {text!r}")
        s = s | ch.embed(cp, part)
    return s


def cmd_chains_gen(args, res: Result):
    cp = _chain_pair(args)
    size = ch.lattice_size(cp)
    res.data.update(n=cp.n, m=cp.m, size=size)
    if args.count:
        res.text.append(str(size))
        return
    L = _grid(cp, args)
    if args.decomposables:
        _decomposables(cp, L, res)
        return
    res.data["elements"] = [{"profile": list(s.profile), "u": str(ch.staircase_to_u(cp, s))}
                            for s in L.elements]
    res.text.append(f"n={cp.n} m={cp.m} elements={size}")
    res.text += [f"{s}  {ch.staircase_to_u(cp, s)}" for s in L.elements]
    res.dot = hasse_dot(Poset([str(s) for s in L.elements], L.leq), "grid")
    if args.dot:
        res.text = [res.dot.rstrip("\n")]


def cmd_chains_identity(args, res: Result):
    cp = _chain_pair(args)
    checked = 0
    for k in range(1, args.k + 1):
        for I, J in ch.admissible_index_lists(cp, k):
            r, s = ch.r_term(cp, I, J), ch.s_term(cp, I, J)
            checked += 1
            if r != s:
                res.data["checked"] = checked
                res.violation({"I": list(I), "J": list(J), "r": str(r), "s": str(s)},
                              f"r != s for I={I} J={J}: {r} vs {s}")
                return
    res.data["checked"] = checked
    res.text.append(f"r = s for all {checked} admissible index lists with k <= {args.k}")


def cmd_chains_decomposables(args, res: Result):
    cp = _chain_pair(args)
    _decomposables(cp, _grid(cp, args), res, args.identify or ())


def cmd_cong_quotient(args, res: Result):
    doc = _read(args)
    L = _lattice_or_witness(doc.poset(), res)
    if L is None:
        return
    pairs = [tuple(p) for p in (args.pair or [])]
    if args.random:
        rng = np.random.default_rng(args.seed)
        for _ in range(args.random):
            i, j = rng.integers(0, len(L), size=2)
            pairs.append((L.elements[int(i)], L.elements[int(j)]))
    c = generate_congruence(L, pairs)
    Q = quotient(L, c)
    lift = order_lifting_failure(L, c, Q)
    post = {k: v is None for k, v in postulate_failures(Q.M, Q.J, Q.leq).items()}
    res.data.update(pairs=[_names(p) for p in pairs], classes=[_names(k) for k in c.classes()],
                    quotient_size=len(Q), postulates=post, order_lifting=lift is None)
    res.text.append(f"pairs: {' '.join('(' + ', '.join(map(str, p)) + ')' for p in pairs) or '-'}")
    res.text.append(f"classes: {len(c)}")
    res.text += ["  {" + ", ".join(map(str, k)) + "}" for k in c.classes()]
    res.text.append("postulates: " + ("pass" if all(post.values()) else "FAIL"))
    res.text.append("order lifting: " + ("pass" if lift is None else "FAIL"))
    res.dot = hasse_dot(Q.poset, "quotient")
    if lift is not None or not all(post.values()):
        res.violation({"order_lifting": None if lift is None else _names(lift),
                       "postulates": post}, "violation in quotient")


def cmd_universal_build(args, res: Result):
    doc = _read(args)
    P = doc.poset()
    depth = args.depth if args.depth is not None else len(P) + 2
    report = {"generators": _names(P.elements), "max_depth": depth}
    try:
        U = build_U_staged(P, doc.lower, doc.upper, max_depth=depth, max_size=args.max_size)
    except DepthExceeded as exc:
        report.update(exc.partial.report())
        res.data.update(report)
        _write_report(args, res.data)
        raise
    report.update(U.report())
    if len(P) <= 6:
        m = psi(U)
        report["psi"] = {"homomorphism": m.homomorphism, "surjective": m.surjective,
                         "injective": m.injective, "target_size": len(m.target)}
    res.data.update(report)
    res.text.append(f"generators: {' '.join(report['generators'])}")
    for h in report["stages"]:
        res.text.append(f"stage {h['stage']}: {h['size']} classes, {h['missing']} unknown meets/joins")
    res.text.append(f"stabilized at stage {U.stage} with {len(U)} elements")
    if "psi" in report:
        q = report["psi"]
        res.text.append(f"psi onto D(P) ({q['target_size']} elements): "
                        f"homomorphism={'yes' if q['homomorphism'] else 'no'} "
                        f"surjective={'yes' if q['surjective'] else 'no'} "
                        f"injective={'yes' if q['injective'] else 'no'}")
        if not (q["homomorphism"] and q["surjective"]):
            res.violation({"psi": q}, "psi is not an epimorphism")
    _write_report(args, res.data)


def _write_report(args, data):
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"schema": SCHEMA, **data}, indent=2) + "\n")


def cmd_euler_demo(args, res: Result):
    w = args.w
    if w < 0:
        raise UsageError("-w must be non-negative")
    rep = admissibility_contradiction(w)
    sweep = all(homfp_euler(QuiverRepDims(2 * a, a), QuiverRepDims(2 * b, b)) == -a * b
                for a in range(101) for b in range(101))
    res.data.update(report=rep, balanced_identity_0_100=sweep)
    res.text.append(format_report(rep))
    res.text.append(f"chi = -w*w' for u=2w, u'=2w', 0 <= w, w' <= 100: {'yes' if sweep else 'no'}")
    if not sweep:
        res.violation({"identity": "chi = -w w'"}, "identity failed")


def cmd_dot(args, res: Result):
    if args.what == "hasse":
        res.dot = hasse_dot(_read(args).poset())
    else:
        cs = _structure(args)
        if args.saturate:
            cs = saturate(cs)
        res.dot = consistency_dot(cs)
    res.text.append(res.dot.rstrip("\n"))


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _default_max_size():
    raw = os.environ.get("TLAT_MAX_SIZE", "5000")
    try:
        return _positive(raw)
    except (ValueError, argparse.ArgumentTypeError):
        return 5000


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--file", help="input file in the poset DSL")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--max-size", type=_positive, default=_default_max_size(),
                        help="size guard (default: $TLAT_MAX_SIZE or 5000)")
    common.add_argument("--depth", type=_positive, default=None, help="term depth bound")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled inputs")

    top = argparse.ArgumentParser(prog="tlat", description="Lattices of t-structures toolkit")
    groups = top.add_subparsers(dest="group", required=True)

    def group(name, help_text):
        g = groups.add_parser(name, help=help_text)
        return g.add_subparsers(dest="action", required=True)

    def action(parent, name, fn, help_text):
        p = parent.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(fn=fn)
        return p

    g = group("poset", "poset queries")
    action(g, "check", cmd_poset_check, "validate a poset and list its Hasse diagram")
    g = group("lattice", "lattice law checks")
    action(g, "laws", cmd_lattice_laws, "postulates, modularity, distributivity")
    g = group("cons", "sets with consistencies")
    p = action(g, "check", cmd_cons_check, "check the consistency axioms (after saturation)")
    p.add_argument("--raw", action="store_true", help="check the declared relations as given")
    action(g, "saturate", cmd_cons_saturate, "close the consistency relations under the rules")
    g = group("term", "lattice terms over a poset")
    p = action(g, "nf", cmd_term_nf, "canonical normal form")
    p.add_argument("expr")
    p = action(g, "eq", cmd_term_eq, "decide equality in the free distributive lattice")
    p.add_argument("left")
    p.add_argument("right")
    g = group("chains", "consistent pairs of chains")
    p = action(g, "gen", cmd_chains_gen, "generate the grid lattice")
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--count", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--decomposables", action="store_true")
    p = action(g, "identity", cmd_chains_identity, "check r_IJ = s_IJ")
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("-k", type=_positive, default=3)
    p = action(g, "decomposables", cmd_chains_decomposables, "decomposability of every u_ij")
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--identify", action="append", metavar="LHS=RHS",
                   help="identify two u-sums before testing, e.g. u12=u22+u11")
    g = group("cong", "congruences")
    p = action(g, "quotient", cmd_cong_quotient, "quotient by a generated congruence")
    p.add_argument("--pair", nargs=2, action="append", metavar=("X", "Y"))
    p.add_argument("--random", type=int, default=0, help="add this many random pairs")
    g = group("universal", "universal lattice with consistencies")
    p = action(g, "build", cmd_universal_build, "staged construction of U(P)")
    p.add_argument("--report", help="write a JSON report here")
    g = group("euler", "projective plane arithmetic")
    p = action(g, "demo", cmd_euler_demo, "the admissibility contradiction")
    p.add_argument("-w", type=int, default=1)
    p = groups.add_parser("dot", parents=[common], help="DOT output for a DSL file")
    p.add_argument("--what", choices=("hasse", "consistency"), default="hasse")
    p.add_argument("--saturate", action="store_true")
    p.set_defaults(fn=cmd_dot)
    return top


def _emit(args, res: Result, out):
    name = args.group if args.group == "dot" else f"{args.group} {args.action}"
    if args.format == "json":
        obj = {"schema": SCHEMA, "command": name,
               "status": {OK: "ok", VIOLATION: "violation"}.get(res.status, "error")}
        obj.update(res.data)
        if res.witness is not None:
            obj["witness"] = res.witness
        out.write(json.dumps(obj, indent=2) + "\n")
    elif args.format == "dot":
        if res.dot is None:
            raise UsageError(f"'{name}' has no DOT output")
        out.write(res.dot)
    else:
        if res.witness is not None:
            res.text.append("witness: " + json.dumps(res.witness, sort_keys=True))
        out.write("\n".join(res.text) + "\n")


def _error(args, code, message, witness=None, out=None, err=None):
    err.write(f"error: {message}\n")
    if getattr(args, "format", "text") == "json":
        obj = {"schema": SCHEMA, "status": "error", "code": code, "message": message}
        if witness is not None:
            obj["witness"] = witness
        out.write(json.dumps(obj, indent=2) + "\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    res = Result()
    try:
        args.fn(args, res)
        _emit(args, res, out)
        return res.status
    except UsageError as exc:
        return _error(args, USAGE, str(exc), out=out, err=err)
    except ParseError as exc:
        return _error(args, USAGE, str(exc), {"line": exc.line, "column": exc.column}, out, err)
    except (SizeGuardExceeded, DepthExceeded) as exc:
        return _error(args, GUARD, str(exc), out=out, err=err)
    except CycleError as exc:
        return _error(args, VIOLATION, str(exc), {"cycle": _names(exc.witness)}, out, err)
    except TlatError as exc:
        return _error(args, USAGE, str(exc), out=out, err=err)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
