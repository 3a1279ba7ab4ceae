"""Congruences on finite lattices and quotient lattices."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import _kernels as K
from .errors import NotACongruence
from .poset import FiniteLattice, Poset, postulate_failures


class Congruence:
    """A partition of a lattice's elements, stored as min-member class labels."""

    def __init__(self, lattice: FiniteLattice, labels: np.ndarray):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape != (len(lattice),):
            raise ValueError("one label per element expected")
        self.lattice = lattice
        self.labels = labels
        self.labels.setflags(write=False)
        reps = np.unique(labels)
        self.reps = reps
        pos = np.full(len(lattice), -1, dtype=np.int64)
        pos[reps] = np.arange(len(reps))
        self._pos = pos

    @classmethod
    def from_blocks(cls, lattice: FiniteLattice, blocks: Iterable[Iterable]) -> "Congruence":
        """Partition given as blocks of labels; unlisted elements are singletons."""
        labels = np.arange(len(lattice))
        for block in blocks:
            idx = [lattice.index(x) for x in block]
            if idx:
                labels[idx] = min(idx)
        return cls(lattice, K._components(len(lattice), np.stack([np.arange(len(lattice)), labels], 1)))

    def __len__(self) -> int:
        return len(self.reps)

    def __eq__(self, other):
        return isinstance(other, Congruence) and np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash(self.labels.tobytes())

    def classes(self) -> list[tuple]:
        e = self.lattice.elements
        return [tuple(e[i] for i in np.flatnonzero(self.labels == r)) for r in self.reps]

    def same(self, x, y) -> bool:
        L = self.lattice
        return bool(self.labels[L.index(x)] == self.labels[L.index(y)])

    def project(self, i: int) -> int:
        """Index in the quotient of the class of element index ``i``."""
        return int(self._pos[self.labels[i]])

    def refines(self, other: "Congruence") -> bool:
        """Every class of self lies inside a class of other."""
        return bool((other.labels == other.labels[self.labels]).all())

    def first_violation(self):
        """A pair (p, l, op) with p ~ rep(p) but p op l not ~ rep(p) op l, or None."""
        L = self.lattice
        lab = self.labels
        for T, op in ((L.M, "meet"), (L.J, "join")):
            bad = lab[T] != lab[T[lab]]
            if bad.any():
                p, l = map(int, np.argwhere(bad)[0])
                return (L.elements[p], L.elements[l], op)
        return None


def generate_congruence(L: FiniteLattice, pairs: Iterable = ()) -> Congruence:
    """Least congruence identifying each pair of labels in ``pairs``."""
    idx = np.array([(L.index(x), L.index(y)) for x, y in pairs], dtype=np.int64).reshape(-1, 2)
    return Congruence(L, K.congruence_closure(L.M, L.J, idx))


def quotient(L: FiniteLattice, c: Congruence) -> FiniteLattice:
    """Lattice of classes; each class is labelled by its least member."""
    if c.lattice is not L and not (len(c.lattice) == len(L) and np.array_equal(c.lattice.M, L.M)):
        raise ValueError("congruence belongs to a different lattice")
    bad = c.first_violation()
    if bad is not None:
        p, l, op = bad
        raise NotACongruence(f"class of {p!r} is not closed under {op} with {l!r}", bad)
    reps = c.reps
    lab = c.labels
    pos = c._pos
    sub = np.ix_(reps, reps)
    M = pos[lab[L.M[sub]]]
    J = pos[lab[L.J[sub]]]
    leq = M == np.arange(len(reps))[:, None]
    fails = {k: v for k, v in postulate_failures(M, J).items() if v is not None}
    if fails:
        raise NotACongruence(f"quotient fails {sorted(fails)}", fails)
    e = L.elements
    p = Poset([e[r] for r in reps], leq, e[reps[pos[lab[L.bottom]]]], e[reps[pos[lab[L.top]]]])
    return FiniteLattice(p, M, J)


def order_lifting_failure(L: FiniteLattice, c: Congruence, Q: FiniteLattice):
    """First class pair where the quotient order differs from the lifted order.

    The lifted order puts x' <= y' iff some x in x' and y in y' have x <= y.
    Returns ``None`` when the two orders agree everywhere.
    """
    k = len(c)
    C = np.zeros((k, len(L)), dtype=np.int64)
    C[[c.project(i) for i in range(len(L))], np.arange(len(L))] = 1
    lifted = (C @ L.leq.astype(np.int64) @ C.T) > 0
    bad = lifted != Q.leq
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        return (Q.elements[i], Q.elements[j])
    return None
