"""Standard small lattices, exhaustive enumeration up to isomorphism, and
random lattices from closure systems."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .poset import FiniteLattice, Poset, build_poset


def chain_lattice(k: int) -> FiniteLattice:
    """The chain 0 < c1 < ... < c(k-2) < 1 with k elements."""
    labels = ["0"] + [f"c{i}" for i in range(1, k - 1)] + ["1"] if k > 1 else ["0"]
    leq = np.triu(np.ones((k, k), dtype=bool))
    return FiniteLattice(Poset(labels, leq, labels[0], labels[-1]))


def boolean_lattice(k: int) -> FiniteLattice:
    """Subsets of {1..k} under inclusion."""
    subsets = sorted(range(1 << k), key=lambda s: (bin(s).count("1"), s))
    labels = ["{" + ",".join(str(i + 1) for i in range(k) if s >> i & 1) + "}" for s in subsets]
    s = np.array(subsets)
    leq = (s[:, None] & ~s[None, :]) == 0
    return FiniteLattice(Poset(labels, leq, labels[0], labels[-1]))


def n5() -> FiniteLattice:
    """The pentagon 0 < a < c < 1, 0 < b < 1."""
    p = build_poset(["0", "a", "b", "c", "1"],
                    [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")], "0", "1")
    return FiniteLattice(p)


def m3() -> FiniteLattice:
    """The diamond with three atoms."""
    p = build_poset(["0", "a", "b", "c", "1"],
                    [("0", x) for x in "abc"] + [(x, "1") for x in "abc"], "0", "1")
    return FiniteLattice(p)


def downset_lattice(p: Poset) -> FiniteLattice:
    """Down-closed subsets of ``p`` under inclusion, labelled by sorted member tuples."""
    n = len(p)
    masks = []
    below = [sum(1 << j for j in range(n) if p.leq[j, i]) for i in range(n)]
    for s in range(1 << n):
        if all(below[i] & ~s == 0 for i in range(n) if s >> i & 1):
            masks.append(s)
    masks.sort(key=lambda s: (bin(s).count("1"), s))
    labels = [tuple(p.elements[i] for i in range(n) if s >> i & 1) for s in masks]
    a = np.array(masks)
    leq = (a[:, None] & ~a[None, :]) == 0
    return FiniteLattice(Poset(labels, leq, labels[0], labels[-1]))


def grid_poset(rows: int, cols: int) -> Poset:
    """Product of a ``cols``-chain and a ``rows``-chain, elements (x, y) 1-based."""
    cells = [(x, y) for x in range(1, cols + 1) for y in range(1, rows + 1)]
    leq = np.array([[a[0] <= b[0] and a[1] <= b[1] for b in cells] for a in cells])
    return Poset(cells, leq)


# ---------------------------------------------------------------------------
# enumeration up to isomorphism
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _perms(k: int) -> np.ndarray:
    return np.array(list(permutations(range(k))), dtype=np.int64).reshape(-1, k)


def _canonical(leq: np.ndarray) -> bytes:
    """Iso-invariant key: least packed upper-triangular relabelling."""
    k = leq.shape[0]
    if k == 0:
        return b""
    P = _perms(k)
    mats = leq[P[:, :, None], P[:, None, :]]
    low = np.tril(np.ones((k, k), dtype=bool), -1)
    ok = ~(mats & low).any(axis=(1, 2))
    packed = np.packbits(mats[ok].reshape(int(ok.sum()), -1), axis=1)
    best = packed[np.lexsort(packed.T[::-1])[0]]
    return bytes(best)


def _from_key(key: bytes, k: int) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(key, dtype=np.uint8))[: k * k]
    return bits.reshape(k, k).astype(bool)


@lru_cache(maxsize=None)
def poset_keys(k: int) -> tuple:
    """Canonical keys of all posets on k points up to isomorphism."""
    if k == 0:
        return (b"",)
    out = set()
    for key in poset_keys(k - 1):
        prev = _from_key(key, k - 1)
        # the new element is maximal; its strict down-set is any order ideal
        for bits in product((False, True), repeat=k - 1):
            d = np.array(bits, dtype=bool)
            if k > 1 and (prev[:, d].any(axis=1) & ~d).any():
                continue
            leq = np.zeros((k, k), dtype=bool)
            leq[:-1, :-1] = prev
            leq[:-1, -1] = d
            leq[-1, -1] = True
            out.add(_canonical(leq))
    return tuple(sorted(out))


def small_posets(k: int) -> list[np.ndarray]:
    """Order matrices of all k-point posets up to isomorphism (index order is a linear extension)."""
    return [_from_key(key, k) for key in poset_keys(k)]


def small_lattices(n: int) -> list[FiniteLattice]:
    """All lattices with exactly n elements up to isomorphism."""
    if n <= 0:
        return []
    if n == 1:
        return [FiniteLattice(Poset(["0"], np.ones((1, 1), dtype=bool), "0", "0"))]
    out = []
    for inner in small_posets(n - 2):
        k = n - 2
        leq = np.zeros((n, n), dtype=bool)
        leq[1:-1, 1:-1] = inner
        leq[0, :] = True
        leq[:, -1] = True
        labels = ["0"] + [f"e{i}" for i in range(1, k + 1)] + ["1"]
        p = Poset(labels, leq, "0", "1")
        if (p.meet_table >= 0).all() and (p.join_table >= 0).all():
            out.append(FiniteLattice(p))
    return out


def random_lattice(rng: np.random.Generator, max_size: int = 12, ground: int = 5,
                   tries: int = 100) -> FiniteLattice:
    """Lattice of a random intersection-closed family of subsets (plus the full set)."""
    full = (1 << ground) - 1
    for _ in range(tries):
        k = int(rng.integers(1, 6))
        fam = {full} | {int(x) for x in rng.integers(0, full + 1, size=k)}
        while True:
            new = {a & b for a in fam for b in fam} - fam
            if not new:
                break
            fam |= new
        if len(fam) <= max_size:
            break
    fam = sorted(fam, key=lambda s: (bin(s).count("1"), s))
    a = np.array(fam)
    leq = (a[:, None] & ~a[None, :]) == 0
    labels = [f"s{s:0{ground}b}" for s in fam]
    return FiniteLattice(Poset(labels, leq, labels[0], labels[-1]))
