"""Staged finite construction of the universal lattice with consistencies U(P)
and the canonical map psi: U(P) -> D(P).

Elements are classes of terms.  The state holds partial meet/join tables
(``-1`` for an unknown value) and the two consistency relations.  One stage:

1. close under consequences: idempotence and bounds, associativity,
   absorption, the comparison rule, saturation of the consistency relations
   by the inference rules, and the modularity equation on every triple that
   matches the hypotheses of one of the three modularity axioms; equal
   terms are merged (a quotient) and the loop repeats until nothing changes;
2. if every meet and join is known the structure is a lattice and we stop;
   otherwise every missing meet/join whose operands are shallow enough
   becomes a new term and the next stage begins.

Every merge and fill is forced by the defining axioms, so the classes
always map onto U(P); a closed result that is a lattice satisfying the
axioms is therefore U(P) itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .consistency import ConsistencyStructure, check_axioms
from .errors import DepthExceeded, NotStabilized, SizeGuardExceeded
from .poset import FiniteLattice, Poset
from .terms import Bottom, Gen, Join, Meet, Top, default_max_size, enumerate_D, to_dnf


@dataclass
class StagedUniversal:
    """Result of :func:`build_U_staged`.

    ``terms[k]`` is the representative (earliest built) term of class k.
    ``lattice`` is set only when the construction stabilized.
    """

    P: Poset
    stage: int
    stabilized: bool
    terms: list
    depth: np.ndarray
    M: np.ndarray
    J: np.ndarray
    L: np.ndarray
    U: np.ndarray
    history: list = field(default_factory=list)
    lattice: FiniteLattice | None = None
    derivations: int = 0

    def __len__(self):
        return len(self.terms)

    def structure(self) -> ConsistencyStructure:
        if self.lattice is None:
            raise NotStabilized("construction did not stabilize")
        return ConsistencyStructure._from_matrices(self.lattice.poset, self.L, self.U, self.lattice, ())

    def report(self) -> dict:
        return {
            "stabilized": self.stabilized,
            "stage": self.stage,
            "size": len(self),
            "derivations": self.derivations,
            "stages": list(self.history),
        }


class _State:
    def __init__(self, terms, depth, M, J, L, U):
        self.terms = terms
        self.depth = depth
        self.M, self.J, self.L, self.U = M, J, L, U

    @property
    def n(self):
        return len(self.terms)

    def compact(self, labels) -> bool:
        """Merge classes along ``labels`` (min-member), propagating table clashes."""
        n = self.n
        lab = np.asarray(labels, dtype=np.int64)
        base = np.stack([np.arange(n), lab], axis=1)
        while True:
            clash = [base]
            for T in (self.M, self.J):
                xs, ys = np.nonzero(T >= 0)
                key = lab[xs] * n + lab[ys]
                val = lab[T[xs, ys]]
                o = np.lexsort((val, key))
                k, v = key[o], val[o]
                d = (k[1:] == k[:-1]) & (v[1:] != v[:-1])
                if d.any():
                    clash.append(np.stack([v[:-1][d], v[1:][d]], axis=1))
            if len(clash) == 1:
                break
            base = np.concatenate(clash)
            lab = K._components(n, base)
            base = np.stack([np.arange(n), lab], axis=1)
        if np.array_equal(lab, np.arange(n)):
            return False
        roots = np.unique(lab)
        pos = np.full(n, -1, dtype=np.int64)
        pos[roots] = np.arange(len(roots))
        r = len(roots)
        tables = []
        for T in (self.M, self.J):
            new = np.full((r, r), -1, dtype=np.int64)
            xs, ys = np.nonzero(T >= 0)
            new[pos[lab[xs]], pos[lab[ys]]] = pos[lab[T[xs, ys]]]
            tables.append(new)
        rels = []
        for R in (self.L, self.U):
            new = np.zeros((r, r), dtype=bool)
            xs, ys = np.nonzero(R)
            new[pos[lab[xs]], pos[lab[ys]]] = True
            np.fill_diagonal(new, False)
            rels.append(new)
        depth = np.full(r, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(depth, pos[lab], self.depth)
        self.terms = [self.terms[i] for i in roots]
        self.depth = depth
        self.M, self.J = tables
        self.L, self.U = rels
        return True

    def fill_bounds(self) -> bool:
        M, J = self.M, self.J
        before = int((M >= 0).sum() + (J >= 0).sum())
        d = np.arange(self.n)
        M[d, d] = d
        J[d, d] = d
        M[0, :] = M[:, 0] = 0
        J[0, :] = d
        J[:, 0] = d
        M[1, :] = d
        M[:, 1] = d
        J[1, :] = J[:, 1] = 1
        return int((M >= 0).sum() + (J >= 0).sum()) != before

    @property
    def leq(self):
        return self.M == np.arange(self.n)[:, None]

    def equations(self, modular: bool) -> bool:
        FM, FJ, labels = K.scan_equations(self.M, self.J, self.leq, self.L, self.U, modular)
        filled = bool((FM >= 0).any() or (FJ >= 0).any())
        self.M = np.where(self.M < 0, FM, self.M)
        self.J = np.where(self.J < 0, FJ, self.J)
        merged = self.compact(labels)
        return filled or merged

    def saturate(self) -> int:
        added = 0
        while True:
            rows = K.scan_saturation(self.M, self.J, self.leq, self.L, self.U)
            rows = rows[(rows[:, 5] >= 0) & (rows[:, 6] >= 0)]
            if not len(rows):
                return added
            for kind, R in ((K.LOWER, self.L), (K.UPPER, self.U)):
                sel = rows[rows[:, 4] == kind]
                R[sel[:, 5], sel[:, 6]] = True
            added += len(rows)


def _initial_state(P: Poset, lower, upper) -> _State:
    k = len(P)
    n = k + 2
    terms = [Bottom(), Top()] + [Gen(x) for x in P.elements]
    M = np.full((n, n), -1, dtype=np.int64)
    J = np.full((n, n), -1, dtype=np.int64)
    for i, j in np.argwhere(P.leq):
        M[i + 2, j + 2] = M[j + 2, i + 2] = i + 2
        J[i + 2, j + 2] = J[j + 2, i + 2] = j + 2
    L = np.zeros((n, n), dtype=bool)
    U = np.zeros((n, n), dtype=bool)
    for R, pairs in ((L, lower), (U, upper)):
        for x, y in pairs:
            i, j = P.index(x) + 2, P.index(y) + 2
            if i != j:
                R[i, j] = True
    return _State(terms, np.zeros(n, dtype=np.int64), M, J, L, U)


def build_U_staged(P: Poset, lower=(), upper=(), max_depth: int | None = None,
                   max_size: int | None = None, max_stages: int = 64) -> StagedUniversal:
    """Build U(P) from generators P with declared consistent pairs.

    ``max_depth`` bounds the nesting depth of new terms (default
    ``len(P) + 2``).  Raises DepthExceeded, carrying the partial result, when
    unknown meets/joins remain and none may be built within the bound.
    """
    if max_depth is None:
        max_depth = len(P) + 2
    limit = default_max_size() if max_size is None else max_size
    st = _initial_state(P, lower, upper)
    history = []
    derivations = 0
    stage = 0
    while True:
        while True:
            changed = st.fill_bounds()
            changed |= st.equations(modular=False)
            added = st.saturate()
            derivations += added
            changed |= added > 0
            changed |= st.equations(modular=True)
            if not changed:
                break
        missing = np.argwhere(np.triu((st.M < 0) | (st.J < 0), 1))
        history.append({"stage": stage, "size": st.n, "missing": int(len(missing)),
                        "lower": int(st.L.sum()), "upper": int(st.U.sum())})
        if not len(missing):
            lattice = _as_lattice(st)
            return StagedUniversal(P, stage, True, st.terms, st.depth, st.M, st.J, st.L, st.U,
                                   history, lattice, derivations)
        new_terms = []
        for x, y in missing:
            x, y = int(x), int(y)
            d = int(max(st.depth[x], st.depth[y])) + 1
            if d > max_depth:
                continue
            if st.M[x, y] < 0:
                new_terms.append(("M", x, y, d))
            if st.J[x, y] < 0:
                new_terms.append(("J", x, y, d))
        partial = StagedUniversal(P, stage, False, st.terms, st.depth, st.M, st.J, st.L, st.U,
                                  history, None, derivations)
        if not new_terms or stage >= max_stages:
            raise DepthExceeded(f"{len(missing)} meets/joins still unknown at depth bound {max_depth}",
                                partial)
        if st.n + len(new_terms) > limit:
            raise SizeGuardExceeded(f"term universe would exceed {limit} classes",
                                    st.n + len(new_terms), limit)
        _expand(st, new_terms)
        stage += 1


def _expand(st: _State, new_terms):
    n0 = st.n
    n = n0 + len(new_terms)
    M = np.full((n, n), -1, dtype=np.int64)
    J = np.full((n, n), -1, dtype=np.int64)
    M[:n0, :n0] = st.M
    J[:n0, :n0] = st.J
    L = np.zeros((n, n), dtype=bool)
    U = np.zeros((n, n), dtype=bool)
    L[:n0, :n0] = st.L
    U[:n0, :n0] = st.U
    depth = np.concatenate([st.depth, np.zeros(len(new_terms), dtype=np.int64)])
    terms = list(st.terms)
    for k, (op, x, y, d) in enumerate(new_terms):
        v = n0 + k
        T = M if op == "M" else J
        T[x, y] = T[y, x] = v
        node = Meet if op == "M" else Join
        terms.append(node((terms[x], terms[y])))
        depth[v] = d
    st.terms, st.depth, st.M, st.J, st.L, st.U = terms, depth, M, J, L, U


def _as_lattice(st: _State) -> FiniteLattice:
    labels = [str(t) for t in st.terms]
    p = Poset(labels, st.leq, labels[0], labels[1])
    return FiniteLattice(p, st.M, st.J)


# ---------------------------------------------------------------------------
# psi: U(P) -> D(P)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsiMap:
    """The canonical map on element indices, with its verified properties."""

    image: np.ndarray
    target: FiniteLattice
    homomorphism: bool
    surjective: bool
    injective: bool
    failure: tuple | None = None

    @property
    def isomorphism(self) -> bool:
        return self.homomorphism and self.surjective and self.injective


def psi(U: StagedUniversal, P: Poset | None = None, D: FiniteLattice | None = None) -> PsiMap:
    """Send each class to the D(P) element of its representative term."""
    if not U.stabilized or U.lattice is None:
        raise NotStabilized("psi needs a stabilized construction")
    P = U.P if P is None else P
    D = enumerate_D(P) if D is None else D
    memo: dict = {}
    image = np.array([D.index(to_dnf(t, P, memo)) for t in U.terms], dtype=np.int64)
    failure = None
    hom = True
    for name, TU, TD in (("meet", U.lattice.M, D.M), ("join", U.lattice.J, D.J)):
        bad = image[TU] != TD[image[:, None], image[None, :]]
        if bad.any():
            x, y = map(int, np.argwhere(bad)[0])
            failure = failure or (name, U.terms[x], U.terms[y])
            hom = False
    hom = hom and image[U.lattice.bottom] == D.bottom and image[U.lattice.top] == D.top
    return PsiMap(image, D, bool(hom), len(np.unique(image)) == len(D),
                  len(np.unique(image)) == len(image), failure)


def verify_axioms(U: StagedUniversal):
    """Axiom report of the stabilized structure (all eight should hold)."""
    return check_axioms(U.structure())
