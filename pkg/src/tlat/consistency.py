"""Sets with consistencies: a bounded poset with a lower and an upper
consistency relation, the axiom checker and the saturation engine.

Meets and joins are read from an ambient lattice when one is given, and from
the partial glb/lub tables of the carrier otherwise.  A pair in ``lower``
certifies that its meet exists; a pair in ``upper`` certifies its join.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from . import _kernels as K
from .errors import ConflictError, MissingCertificate, NotComparable
from .poset import FiniteLattice, Poset
from .terms import Bottom, Gen, Join, LatticeTerm, Top

AXIOMS = ("SC1", "SC2", "SC2'", "SC3", "SC3'", "SC4", "SC5", "SC5'")
_RULE_AXIOM = ("SC1", "SC2", "SC2'", "SC3", "SC3'", "SC4", "SC4", "SC5", "SC5", "SC5'", "SC5'")
_KIND = ("lower", "upper")


@dataclass(frozen=True)
class Derivation:
    """One recorded inference.

    ``kind`` is ``lower``/``upper`` for a derived consistent pair, ``both``
    for an ordered pair and ``meet``/``join`` for a certified value.  Values
    obtained by regrouping a certified sum/product carry the rule ``STRASS``.
    """

    rule: str
    premises: tuple
    kind: str
    conclusion: tuple
    value: object = None

    def as_dict(self) -> dict:
        d = {"rule": self.rule, "premises": [str(p) for p in self.premises],
             "kind": self.kind, "conclusion": [str(c) for c in self.conclusion]}
        if self.value is not None:
            d["value"] = str(self.value)
        return d

    def __str__(self):
        prem = ", ".join(str(p) for p in self.premises)
        concl = ", ".join(str(c) for c in self.conclusion)
        tail = f" = {self.value}" if self.value is not None else ""
        return f"{self.rule}[{prem}] => {self.kind}({concl}){tail}"


class ConsistencyStructure:
    """Bounded poset with lower/upper consistency relations and a derivation log."""

    def __init__(self, carrier: Poset, lower: Iterable = (), upper: Iterable = (),
                 lattice: FiniteLattice | None = None, log: Iterable[Derivation] = ()):
        if carrier.bottom is None or carrier.top is None:
            raise ValueError("the carrier needs a bottom and a top")
        if lattice is not None and lattice.poset.elements != carrier.elements:
            raise ValueError("ambient lattice must have the carrier's elements in the same order")
        self.carrier = carrier
        self.lattice = lattice
        self.M = lattice.M if lattice is not None else carrier.meet_table
        self.J = lattice.J if lattice is not None else carrier.join_table
        n = len(carrier)
        L = np.zeros((n, n), dtype=bool)
        U = np.zeros((n, n), dtype=bool)
        for R, pairs in ((L, lower), (U, upper)):
            for x, y in pairs:
                R[carrier.index(x), carrier.index(y)] = True
            for b in (carrier.bottom, carrier.top):
                R[b, :] = True
                R[:, b] = True
            np.fill_diagonal(R, False)
            R.setflags(write=False)
        self.L = L
        self.U = U
        self.log = tuple(log)

    @classmethod
    def _from_matrices(cls, carrier, L, U, lattice, log):
        cs = cls.__new__(cls)
        cs.carrier = carrier
        cs.lattice = lattice
        cs.M = lattice.M if lattice is not None else carrier.meet_table
        cs.J = lattice.J if lattice is not None else carrier.join_table
        L = L.copy()
        U = U.copy()
        L.setflags(write=False)
        U.setflags(write=False)
        cs.L, cs.U, cs.log = L, U, tuple(log)
        return cs

    def __len__(self):
        return len(self.carrier)

    @property
    def elements(self):
        return self.carrier.elements

    def _pairs(self, R) -> tuple:
        e = self.carrier.elements
        return tuple((e[i], e[j]) for i, j in np.argwhere(R))

    @property
    def lower(self) -> tuple:
        return self._pairs(self.L)

    @property
    def upper(self) -> tuple:
        return self._pairs(self.U)

    def is_lower(self, x, y) -> bool:
        return bool(self.L[self.carrier.index(x), self.carrier.index(y)])

    def is_upper(self, x, y) -> bool:
        return bool(self.U[self.carrier.index(x), self.carrier.index(y)])

    def certified_meet(self, x, y):
        """Meet of a lower consistent pair (None when the pair is not consistent)."""
        i, j = self.carrier.index(x), self.carrier.index(y)
        if not self.L[i, j] or self.M[i, j] < 0:
            return None
        return self.carrier.elements[self.M[i, j]]

    def certified_join(self, x, y):
        i, j = self.carrier.index(x), self.carrier.index(y)
        if not self.U[i, j] or self.J[i, j] < 0:
            return None
        return self.carrier.elements[self.J[i, j]]

    def same_relations(self, other: "ConsistencyStructure") -> bool:
        return np.array_equal(self.L, other.L) and np.array_equal(self.U, other.U)


def full_labeling(L: FiniteLattice) -> ConsistencyStructure:
    """Every pair of distinct elements declared lower and upper consistent."""
    n = len(L)
    allp = ~np.eye(n, dtype=bool)
    p = L.poset
    if p.bottom is None or p.top is None:
        p = Poset(p.elements, p.leq, p.elements[L.bottom], p.elements[L.top])
        L = FiniteLattice(p, L.M, L.J)
    return ConsistencyStructure._from_matrices(p, allp, allp, L, ())


# ---------------------------------------------------------------------------
# axiom checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    """Per axiom: ``None`` when it holds, else the witness triple of labels."""

    results: dict
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is None for v in self.results.values())

    def failed(self) -> list[str]:
        return [a for a in AXIOMS if self.results[a] is not None]

    def as_dict(self) -> dict:
        return {a: ({"pass": True} if self.results[a] is None else
                    {"pass": False, "witness": [str(w) for w in self.results[a]],
                     "reason": self.details.get(a, "")})
                for a in AXIOMS}


def _check_certificates(cs: ConsistencyStructure):
    e = cs.carrier.elements
    for R, T, name in ((cs.L, cs.M, "meet"), (cs.U, cs.J, "join")):
        bad = np.argwhere(R & (T < 0))
        if len(bad):
            i, j = map(int, bad[0])
            raise MissingCertificate(f"consistent pair ({e[i]}, {e[j]}) has no {name}", (e[i], e[j]))


def _modularity_failure(cs: ConsistencyStructure, axiom: str):
    """First x <= z triple matching the axiom's hypotheses where (x+y)z != x+yz."""
    M, J, L, U, leq = cs.M, cs.J, cs.L, cs.U, cs.carrier.leq
    n = len(cs)
    for x in range(n):
        if axiom == "SC4":
            hyp = U[x][:, None] & L
        elif axiom == "SC5":
            hyp = U[x][:, None] & L.T
        else:
            hyp = U[:, x][:, None] & L
        hyp = hyp & leq[x][None, :]
        if not hyp.any():
            continue
        ys, zs = np.nonzero(hyp)
        jxy = J[x, ys]
        myz = M[ys, zs]
        lv = np.where(jxy >= 0, M[np.maximum(jxy, 0), zs], -1)
        rv = np.where(myz >= 0, J[x, np.maximum(myz, 0)], -1)
        bad = np.flatnonzero((lv < 0) | (rv < 0) | (lv != rv))
        if bad.size:
            k = bad[0]
            return (x, int(ys[k]), int(zs[k])), (int(lv[k]), int(rv[k]))
    return None


def check_axioms(cs: ConsistencyStructure) -> AxiomReport:
    _check_certificates(cs)
    e = cs.carrier.elements
    rows = K.scan_saturation(cs.M, cs.J, cs.carrier.leq, cs.L, cs.U)
    results = {a: None for a in AXIOMS}
    details = {}
    for r in rows:
        ax = _RULE_AXIOM[r[0]]
        if results[ax] is None:
            x, y, z = int(r[1]), int(r[2]), int(r[3])
            results[ax] = tuple(e[i] for i in ((x, y) if z < 0 else (x, y, z)))
            p, q = int(r[5]), int(r[6])
            details[ax] = (f"{K.RULE_NAMES[r[0]]}: ({e[p]}, {e[q]}) is not "
                           f"{_KIND[r[4]]} consistent")
    for ax in ("SC4", "SC5", "SC5'"):
        if results[ax] is not None:
            continue
        hit = _modularity_failure(cs, ax)
        if hit is not None:
            (x, y, z), (lv, rv) = hit
            results[ax] = (e[x], e[y], e[z])
            show = lambda v: e[v] if v >= 0 else "undefined"
            details[ax] = (f"({e[x]}+{e[y]})*{e[z]} = {show(lv)} but "
                           f"{e[x]}+{e[y]}*{e[z]} = {show(rv)}")
    return AxiomReport(results, details)


# ---------------------------------------------------------------------------
# saturation
# ---------------------------------------------------------------------------

def saturate(cs: ConsistencyStructure) -> ConsistencyStructure:
    """Least fixpoint of the consistency rules, every addition logged.

    Each round scans all triples against the current relations; conclusions
    are applied in lexicographic (rule, x, y, z) order and the first
    derivation of a pair wins.
    """
    e = cs.carrier.elements
    L = cs.L.copy()
    U = cs.U.copy()
    log = list(cs.log)
    while True:
        rows = K.scan_saturation(cs.M, cs.J, cs.carrier.leq, L, U)
        if not len(rows):
            break
        for r in rows:
            rule, x, y, z, kind, p, q = (int(v) for v in r)
            prem = (e[x], e[y]) if z < 0 else (e[x], e[y], e[z])
            if p < 0 or q < 0:
                raise ConflictError(
                    f"{K.RULE_NAMES[rule]} on {prem} needs a meet/join missing from the carrier",
                    Derivation(K.RULE_NAMES[rule], prem, _KIND[kind], ()))
            R, T = (L, cs.M) if kind == K.LOWER else (U, cs.J)
            if R[p, q]:
                continue
            d = Derivation(K.RULE_NAMES[rule], prem, _KIND[kind], (e[p], e[q]))
            if T[p, q] < 0:
                raise ConflictError(
                    f"{d.rule} concludes ({e[p]}, {e[q]}) {d.kind} consistent, "
                    f"but their {'meet' if kind == K.LOWER else 'join'} does not exist", d)
            R[p, q] = True
            log.append(d)
    return ConsistencyStructure._from_matrices(cs.carrier, L, U, cs.lattice, log)


def derive_ordered_commute(cs: ConsistencyStructure, t1, t2) -> Derivation:
    """For t1 < t2 the pair is consistent in both senses; meet t1, join t2."""
    if t1 == t2:
        raise ValueError("consistency relations are non-reflexive")
    if not cs.carrier.le(t1, t2):
        raise NotComparable(f"{t1!r} is not below {t2!r}")
    return Derivation("ORDERED-COMMUTE", (t1, t2), "both", (t1, t2), (t1, t2))


# ---------------------------------------------------------------------------
# existence planning
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Plan:
    defined: bool
    value: object
    derivations: tuple


class _Certifier:
    """Sets of atoms whose join (or meet) is certified by chained consistent pairs."""

    def __init__(self, cs: ConsistencyStructure, kind: str):
        self.R = cs.U if kind == "join" else cs.L
        self.T = cs.J if kind == "join" else cs.M
        self.steps: dict = {}

    def consistent(self, a: int, b: int) -> bool:
        return bool(self.R[a, b] or self.R[b, a])

    def closure(self, atoms: frozenset) -> dict:
        """All certified subsets of ``atoms`` with their values."""
        known = {frozenset({a}): a for a in atoms}
        changed = True
        while changed:
            changed = False
            items = sorted(known.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
            for (A, va), (B, vb) in combinations(items, 2):
                C = A | B
                if C in known or A & B:
                    continue
                if self.consistent(va, vb):
                    known[C] = int(self.T[va, vb])
                    self.steps[C] = (A, B)
                    changed = True
        return known


def plan_expression(cs: ConsistencyStructure, term: LatticeTerm) -> Plan:
    """Decide whether ``term`` has a certified value.

    The structure is saturated first.  A join node is defined when its
    children are and the set of atoms it flattens to can be assembled by
    successive joins of consistent pairs; regrouping a certified sum this
    way is recorded as ``STRASS``.  Meets are dual.
    """
    sat = saturate(cs)
    e = sat.carrier.elements
    used: list = []
    used_pairs: set = set()

    def value(t):
        """(index or None, flat atom set, kind of flattening)."""
        if isinstance(t, Gen):
            i = sat.carrier.index(t.label)
            return i, frozenset({i}), None
        if isinstance(t, Top):
            return sat.carrier.top, frozenset({sat.carrier.top}), None
        if isinstance(t, Bottom):
            return sat.carrier.bottom, frozenset({sat.carrier.bottom}), None
        kind = "join" if isinstance(t, Join) else "meet"
        kids = [value(c) for c in t.children]
        if any(k[0] is None for k in kids):
            return None, None, None
        atoms = frozenset().union(*(k[1] if k[2] == kind else frozenset({k[0]}) for k in kids))
        if len(atoms) == 1:
            return next(iter(atoms)), atoms, kind
        cert = _Certifier(sat, kind)
        known = cert.closure(atoms)
        if atoms not in known:
            return None, None, None
        record(cert, known, atoms, kind)
        v = known[atoms]
        if not (len(kids) == 2 and cert.consistent(kids[0][0], kids[1][0])):
            used.append(Derivation("STRASS", tuple(e[k[0]] for k in kids), kind,
                                   tuple(e[a] for a in sorted(atoms)), e[v]))
        return v, atoms, kind

    def record(cert, known, C, kind):
        if C not in cert.steps:
            return
        A, B = cert.steps[C]
        record(cert, known, A, kind)
        record(cert, known, B, kind)
        va, vb = known[A], known[B]
        pair = (va, vb) if cert.R[va, vb] else (vb, va)
        key = (kind, pair)
        if key not in used_pairs:
            used_pairs.add(key)
            used.append(Derivation(kind.upper(), (e[pair[0]], e[pair[1]]), kind,
                                   tuple(e[a] for a in sorted(C)), e[int(cert.T[va, vb])]))

    v, _, _ = value(term)
    if v is None:
        return Plan(False, None, tuple(used))
    wanted = {(d.kind, d.premises) for d in used if d.rule in ("JOIN", "MEET")}
    support = [d for d in sat.log[len(cs.log):]
               if ("join" if d.kind == "upper" else "meet", d.conclusion) in wanted]
    return Plan(True, e[v], tuple(support) + tuple(used))
