"""Finite posets and lattices over dense boolean order matrices.

Elements are opaque hashable labels; internally everything is indexed by
position in ``elements``.  Order matrices are ``leq[i, j] == (i <= j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import (CycleError, DuplicateLabel, NotALattice, NotDistributive,
                     UnknownElement)

Label = Hashable


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class Poset:
    """A finite partial order.  Immutable after construction."""

    def __init__(self, elements: Sequence[Label], leq: np.ndarray,
                 bottom: Label | None = None, top: Label | None = None):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            seen = set()
            for e in elements:
                if e in seen:
                    raise DuplicateLabel(f"duplicate label {e!r}")
                seen.add(e)
        leq = np.asarray(leq, dtype=bool)
        n = len(elements)
        if leq.shape != (n, n):
            raise ValueError(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        if not leq.diagonal().all():
            raise ValueError("order matrix is not reflexive")
        if n and not np.array_equal(K.transitive_closure(leq), leq):
            raise ValueError("order matrix is not transitive")
        both = leq & leq.T & ~np.eye(n, dtype=bool)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise CycleError(elements[i], elements[j])
        self.elements = elements
        self.leq = _frozen(leq)
        self._index = {e: i for i, e in enumerate(elements)}
        self.bottom = None if bottom is None else self.index(bottom)
        self.top = None if top is None else self.index(top)
        if self.bottom is not None and not leq[self.bottom].all():
            raise ValueError(f"{bottom!r} is not below every element")
        if self.top is not None and not leq[:, self.top].all():
            raise ValueError(f"{top!r} is not above every element")

    # -- basic queries -----------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements)"

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def __contains__(self, label) -> bool:
        return label in self._index

    def le(self, x: Label, y: Label) -> bool:
        return bool(self.leq[self.index(x), self.index(y)])

    def comparable(self, x: Label, y: Label) -> bool:
        i, j = self.index(x), self.index(y)
        return bool(self.leq[i, j] or self.leq[j, i])

    @cached_property
    def lt(self) -> np.ndarray:
        return _frozen(self.leq & ~np.eye(len(self), dtype=bool))

    @cached_property
    def covers(self) -> np.ndarray:
        """``covers[i, j]`` iff j covers i (i < j with nothing between)."""
        lt = self.lt.astype(np.int64)
        return _frozen(self.lt & ((lt @ lt) == 0))

    def hasse_edges(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.covers)]

    @cached_property
    def meet_table(self) -> np.ndarray:
        """glb of each pair, ``-1`` where it does not exist."""
        return _frozen(K.glb_table(self.leq))

    @cached_property
    def join_table(self) -> np.ndarray:
        return _frozen(K.lub_table(self.leq))

    def try_meet(self, x: Label, y: Label) -> Label | None:
        v = self.meet_table[self.index(x), self.index(y)]
        return None if v < 0 else self.elements[v]

    def try_join(self, x: Label, y: Label) -> Label | None:
        v = self.join_table[self.index(x), self.index(y)]
        return None if v < 0 else self.elements[v]

    def minimal(self, idx: Iterable[int]) -> list[int]:
        idx = list(idx)
        return [i for i in idx if not any(self.lt[j, i] for j in idx)]

    def maximal(self, idx: Iterable[int]) -> list[int]:
        idx = list(idx)
        return [i for i in idx if not any(self.lt[i, j] for j in idx)]

    def with_bounds(self, bottom: Label = "0", top: Label = "1") -> "Poset":
        """A copy with a fresh least and greatest element adjoined."""
        n = len(self)
        leq = np.zeros((n + 2, n + 2), dtype=bool)
        leq[1:-1, 1:-1] = self.leq
        leq[0, :] = True
        leq[:, -1] = True
        return Poset((bottom,) + self.elements + (top,), leq, bottom, top)

    def subposet(self, idx: Sequence[int]) -> "Poset":
        idx = list(idx)
        sub = self.leq[np.ix_(idx, idx)]
        bot = self.elements[self.bottom] if self.bottom in idx else None
        top = self.elements[self.top] if self.top in idx else None
        return Poset([self.elements[i] for i in idx], sub, bot, top)


def build_poset(elements: Sequence[Label], relations: Iterable[tuple[Label, Label]] = (),
                bottom: Label | None = None, top: Label | None = None) -> Poset:
    """Poset generated by ``relations`` (pairs ``(x, y)`` meaning x <= y)."""
    elements = tuple(elements)
    index = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateLabel(f"duplicate label {e!r}")
        index[e] = i
    n = len(elements)
    rel = np.eye(n, dtype=bool)
    for x, y in relations:
        for e in (x, y):
            if e not in index:
                raise UnknownElement(f"unknown element {e!r}")
        rel[index[x], index[y]] = True
    return Poset(elements, K.transitive_closure(rel), bottom, top)


@dataclass(frozen=True)
class Chain:
    """A monotone sequence of elements of ``poset``.

    ``descending`` chains list their members from the top down.  An extended
    chain begins and ends at the bounds of the poset.
    """

    poset: Poset
    members: tuple
    descending: bool = False
    extended: bool = False

    def __post_init__(self):
        p = self.poset
        ids = [p.index(x) for x in self.members]
        for a, b in zip(ids, ids[1:]):
            ok = p.lt[b, a] if self.descending else p.lt[a, b]
            if not ok:
                raise ValueError(f"{p.elements[a]!r}, {p.elements[b]!r} break the chain order")
        if self.extended:
            if not ids:
                raise ValueError("an extended chain must run between the bounds")
            lo, hi = (ids[-1], ids[0]) if self.descending else (ids[0], ids[-1])
            if lo != p.bottom or hi != p.top:
                raise ValueError("an extended chain must run between the bounds")


class FiniteLattice:
    """A poset together with total meet and join tables."""

    def __init__(self, poset: Poset, meet: np.ndarray | None = None, join: np.ndarray | None = None):
        M = poset.meet_table if meet is None else np.asarray(meet, dtype=np.int64)
        J = poset.join_table if join is None else np.asarray(join, dtype=np.int64)
        if (M < 0).any() or (J < 0).any():
            raise NotALattice("some pair lacks a meet or a join")
        if meet is not None and not np.array_equal(M, poset.meet_table):
            raise NotALattice("meet table does not match greatest lower bounds")
        if join is not None and not np.array_equal(J, poset.join_table):
            raise NotALattice("join table does not match least upper bounds")
        self.poset = poset
        self.M = _frozen(M)
        self.J = _frozen(J)

    @classmethod
    def from_order(cls, elements: Sequence[Label], leq: np.ndarray) -> "FiniteLattice":
        """Lattice from an order matrix, bounds detected automatically."""
        leq = np.asarray(leq, dtype=bool)
        bot = np.flatnonzero(leq.all(axis=1))
        top = np.flatnonzero(leq.all(axis=0))
        if not len(bot) or not len(top):
            raise NotALattice("missing bounds")
        p = Poset(elements, leq, elements[bot[0]], elements[top[0]])
        return cls(p)

    def __len__(self) -> int:
        return len(self.poset)

    def __repr__(self) -> str:
        return f"FiniteLattice({len(self)} elements)"

    @property
    def elements(self) -> tuple:
        return self.poset.elements

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @cached_property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @cached_property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    def index(self, label: Label) -> int:
        return self.poset.index(label)

    def meet(self, x: Label, y: Label) -> Label:
        return self.elements[self.M[self.index(x), self.index(y)]]

    def join(self, x: Label, y: Label) -> Label:
        return self.elements[self.J[self.index(x), self.index(y)]]

    def join_all(self, idx: Iterable[int]) -> int:
        acc = self.bottom
        for i in idx:
            acc = int(self.J[acc, i])
        return acc

    def meet_all(self, idx: Iterable[int]) -> int:
        acc = self.top
        for i in idx:
            acc = int(self.M[acc, i])
        return acc

    def restrict(self, idx: Sequence[int]) -> "FiniteLattice":
        """The sub-lattice on ``idx`` (which must be closed under meet and join)."""
        idx = sorted(int(i) for i in idx)
        pos = np.full(len(self), -1, dtype=np.int64)
        pos[idx] = np.arange(len(idx))
        sub = np.ix_(idx, idx)
        M, J = pos[self.M[sub]], pos[self.J[sub]]
        if (M < 0).any() or (J < 0).any():
            raise NotALattice("subset is not closed under meet and join")
        p = Poset([self.elements[i] for i in idx], self.leq[sub])
        return FiniteLattice(p, M, J)

    def relabel(self, labels: Sequence[Label]) -> "FiniteLattice":
        p = Poset(labels, self.leq)
        return FiniteLattice(p, self.M, self.J)


def is_lattice(p: Poset) -> tuple[bool, FiniteLattice | None]:
    if not len(p):
        return False, None
    if (p.meet_table < 0).any() or (p.join_table < 0).any():
        return False, None
    return True, FiniteLattice(p)


# ---------------------------------------------------------------------------
# law checking
# ---------------------------------------------------------------------------

_LAW_KERNELS = {
    "modular": K.MODULAR,
    "distributive_meet": K.DISTRIB_MEET,
    "distributive_join": K.DISTRIB_JOIN,
    "dis1": K.DIS1,
    "dis2": K.DIS2,
    "ha": K.HA,
}


@dataclass(frozen=True)
class LawReport:
    """Outcome of :func:`check_laws`.  Witnesses are element labels."""

    postulates: dict
    compar: bool
    modular: bool
    distributive: bool
    dis1: bool
    dis2: bool
    ha: bool
    n5: tuple | None
    m3: tuple | None
    witnesses: dict = field(default_factory=dict)

    @property
    def postulates_hold(self) -> bool:
        return all(self.postulates.values())

    def as_dict(self) -> dict:
        return {
            "postulates": dict(self.postulates),
            "compar": self.compar,
            "modular": self.modular,
            "distributive": self.distributive,
            "dis1": self.dis1,
            "dis2": self.dis2,
            "ha": self.ha,
            "n5": None if self.n5 is None else list(self.n5),
            "m3": None if self.m3 is None else list(self.m3),
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def _first_pair(bad: np.ndarray):
    hit = np.argwhere(bad)
    return None if not len(hit) else (int(hit[0][0]), int(hit[0][1]))


def postulate_failures(M: np.ndarray, J: np.ndarray, leq: np.ndarray | None = None) -> dict:
    """First failing index tuple per postulate (None when it holds)."""
    n = M.shape[0]
    d = np.arange(n)
    out = {}
    ip = np.flatnonzero((M[d, d] != d) | (J[d, d] != d))
    out["idempotence"] = (int(ip[0]),) if ip.size else None
    out["commutativity"] = _first_pair((M != M.T) | (J != J.T))
    a = K.first_failing_triple(M, J, np.zeros((n, n), dtype=bool), K.ASSOC_MEET)
    b = K.first_failing_triple(M, J, np.zeros((n, n), dtype=bool), K.ASSOC_JOIN)
    out["associativity"] = min(t for t in (a, b) if t is not None) if (a or b) else None
    rows = d[:, None]
    out["absorption"] = _first_pair((M[rows, J] != rows) | (J[rows, M] != rows))
    if leq is not None:
        out["compar"] = _first_pair((M == rows) != leq)
    return out


def check_laws(L: FiniteLattice) -> LawReport:
    M, J, leq = L.M, L.J, L.leq
    lab = L.elements
    names = lambda t: tuple(lab[i] for i in t)
    post = postulate_failures(M, J, leq)
    witnesses = {}
    for key in ("idempotence", "commutativity", "associativity", "absorption", "compar"):
        if post[key] is not None:
            witnesses[key] = names(post[key])
    found = {}
    for key, law in _LAW_KERNELS.items():
        t = K.first_failing_triple(M, J, leq, law)
        found[key] = t
        if t is not None:
            witnesses[key] = names(t)
    dm, dj = found["distributive_meet"], found["distributive_join"]
    if dm is not None or dj is not None:
        witnesses["distributive"] = names(min(t for t in (dm, dj) if t is not None))
    n5 = K.first_failing_triple(M, J, leq, K.N5)
    m3 = K.first_failing_triple(M, J, leq, K.M3)
    return LawReport(
        postulates={k: post[k] is None for k in ("idempotence", "commutativity", "associativity", "absorption")},
        compar=post["compar"] is None,
        modular=found["modular"] is None,
        distributive=dm is None and dj is None,
        dis1=found["dis1"] is None,
        dis2=found["dis2"] is None,
        ha=found["ha"] is None,
        n5=None if n5 is None else names(n5),
        m3=None if m3 is None else names(m3),
        witnesses=witnesses,
    )


def is_distributive(L: FiniteLattice) -> bool:
    return all(K.first_failing_triple(L.M, L.J, L.leq, law) is None
               for law in (K.DISTRIB_MEET, K.DISTRIB_JOIN))


# ---------------------------------------------------------------------------
# join-irreducibles and Birkhoff decomposition
# ---------------------------------------------------------------------------

def join_irreducible_indices(L: FiniteLattice) -> list[int]:
    """Indices x != 0 that differ from the join of everything strictly below."""
    lt = L.poset.lt
    bot = L.bottom
    return [x for x in range(len(L))
            if x != bot and L.join_all(np.flatnonzero(lt[:, x])) != x]


def join_irreducibles(L: FiniteLattice) -> tuple:
    return tuple(L.elements[i] for i in join_irreducible_indices(L))


def birkhoff_decompose(L: FiniteLattice, x: Label) -> tuple:
    """Irredundant join-irreducible decomposition of ``x`` in a distributive lattice."""
    if not is_distributive(L):
        rep = check_laws(L)
        raise NotDistributive("lattice is not distributive", rep.witnesses.get("distributive"))
    xi = L.index(x)
    below = [j for j in join_irreducible_indices(L) if L.leq[j, xi]]
    return tuple(L.elements[i] for i in L.poset.maximal(below))


def decompositions(L: FiniteLattice, x: Label) -> list[tuple]:
    """Every irredundant set of join-irreducibles joining to ``x`` (brute force)."""
    xi = L.index(x)
    ji = [j for j in join_irreducible_indices(L) if L.leq[j, xi]]
    out = []
    for k in range(len(ji) + 1):
        for combo in combinations(ji, k):
            if L.join_all(combo) != xi:
                continue
            if any(L.join_all(combo[:t] + combo[t + 1:]) == xi for t in range(k)):
                continue
            out.append(tuple(L.elements[i] for i in combo))
    return out


def sublattice_closure(L: FiniteLattice, gens: Iterable[Label]) -> FiniteLattice:
    """Smallest sub-lattice containing ``gens`` and the bounds."""
    member = np.zeros(len(L), dtype=bool)
    member[[L.index(g) for g in gens]] = True
    member[[L.bottom, L.top]] = True
    while True:
        idx = np.flatnonzero(member)
        sub = np.ix_(idx, idx)
        grown = member.copy()
        grown[L.M[sub].ravel()] = True
        grown[L.J[sub].ravel()] = True
        if np.array_equal(grown, member):
            return L.restrict(idx)
        member = grown
