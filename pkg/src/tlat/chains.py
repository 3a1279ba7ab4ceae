"""The lattice generated by a consistent pair of chains, realised on a grid.

Chains ``a_1 > ... > a_n`` and ``b_1 < ... < b_m`` are extended by
``a_0 = 1, a_{n+1} = 0, b_0 = 0, b_{m+1} = 1``.  Elements are down-closed
subsets ("staircases") of the grid ``[1, m+1] x [1, n+1]``, stored as a
non-increasing column-height profile ``h(1) >= ... >= h(m+1)``:

* ``u_ij = a_i b_j``  ->  ``{x <= j, y <= n+1-i}``
* ``a_i = u_{i,m+1}``  ->  full rows ``y <= n+1-i``
* ``b_j = u_{0,j}``    ->  full columns ``x <= j``
* ``v_ij = a_i + b_j`` ->  rows of ``a_i`` together with columns of ``b_j``

Join is union (pointwise max of profiles), meet is intersection (pointwise
min).  The y axis points up, so the picture is the mirror image of a ladder
descending from the top-left corner.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import IndexOutOfRange, LengthMismatch, SizeGuardExceeded
from .poset import FiniteLattice, Poset, build_poset

MAX_CHAIN = 6


@dataclass(frozen=True)
class Staircase:
    """Down-closed subset of the (m+1) x (n+1) grid as a height profile."""

    profile: tuple
    n: int
    m: int

    def __post_init__(self):
        h = self.profile
        if len(h) != self.m + 1:
            raise ValueError(f"profile needs {self.m + 1} columns, got {len(h)}")
        if any(not 0 <= v <= self.n + 1 for v in h):
            raise ValueError("heights must lie in [0, n+1]")
        if any(a < b for a, b in zip(h, h[1:])):
            raise ValueError("profile must be non-increasing")

    def __str__(self):
        return ",".join(map(str, self.profile))

    def cells(self) -> frozenset:
        return frozenset((x, y) for x, hx in enumerate(self.profile, start=1)
                         for y in range(1, hx + 1))

    def __or__(self, other: "Staircase") -> "Staircase":
        return Staircase(tuple(map(max, self.profile, other.profile)), self.n, self.m)

    def __and__(self, other: "Staircase") -> "Staircase":
        return Staircase(tuple(map(min, self.profile, other.profile)), self.n, self.m)

    def __le__(self, other: "Staircase") -> bool:
        return all(a <= b for a, b in zip(self.profile, other.profile))

    @property
    def size(self) -> int:
        return sum(self.profile)


@dataclass(frozen=True)
class UNormalForm:
    """``u_{i1 j1} + ... + u_{ik jk}`` with both index lists strictly increasing."""

    pairs: tuple

    def __str__(self):
        return " + ".join(_uname(i, j) for i, j in self.pairs) if self.pairs else "0"


@dataclass(frozen=True)
class VProduct:
    """``v_{i1 j1} * ... * v_{ik jk}``; the empty product is 1."""

    pairs: tuple

    def __str__(self):
        return " * ".join(_vname(i, j) for i, j in self.pairs) if self.pairs else "1"


def _uname(i, j):
    return f"u{i}{j}" if i < 10 and j < 10 else f"u{i},{j}"


def _vname(i, j):
    return f"v{i}{j}" if i < 10 and j < 10 else f"v{i},{j}"


class ChainPair:
    """A consistent pair of chains of lengths n (the a's) and m (the b's)."""

    def __init__(self, n: int, m: int):
        if n < 1 or m < 1:
            raise ValueError("chain lengths must be positive")
        self.n = n
        self.m = m

    def __repr__(self):
        return f"ChainPair(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, ChainPair) and (self.n, self.m) == (other.n, other.m)

    def __hash__(self):
        return hash((self.n, self.m))

    @property
    def a_names(self) -> list[str]:
        return [f"a{i}" for i in range(1, self.n + 1)]

    @property
    def b_names(self) -> list[str]:
        return [f"b{j}" for j in range(1, self.m + 1)]

    def generator_poset(self) -> Poset:
        """The two chains as a poset (no relations between them)."""
        rel = [(f"a{i + 1}", f"a{i}") for i in range(1, self.n)]
        rel += [(f"b{j}", f"b{j + 1}") for j in range(1, self.m)]
        return build_poset(self.a_names + self.b_names, rel)

    def cross_pairs(self) -> list[tuple[str, str]]:
        return [(a, b) for a in self.a_names for b in self.b_names]

    # -- grid images ---------------------------------------------------------
    def _check(self, i, j):
        if not (0 <= i <= self.n + 1 and 0 <= j <= self.m + 1):
            raise IndexOutOfRange(f"u{i},{j} outside extended ranges [0,{self.n + 1}]x[0,{self.m + 1}]")

    def u(self, i: int, j: int) -> Staircase:
        self._check(i, j)
        h = self.n + 1 - i
        return Staircase(tuple(h if x <= j else 0 for x in range(1, self.m + 2)), self.n, self.m)

    def a(self, i: int) -> Staircase:
        return self.u(i, self.m + 1)

    def b(self, j: int) -> Staircase:
        return self.u(0, j)

    def v(self, i: int, j: int) -> Staircase:
        self._check(i, j)
        return self.a(i) | self.b(j)

    @property
    def zero(self) -> Staircase:
        return Staircase((0,) * (self.m + 1), self.n, self.m)

    @property
    def one(self) -> Staircase:
        return Staircase((self.n + 1,) * (self.m + 1), self.n, self.m)

    def grid_cells(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(1, self.m + 2) for y in range(1, self.n + 2)]


_GEN = re.compile(r"^(?:(0|1)|a(\d+)|b(\d+)|u(\d),?(\d)|u(\d+),(\d+))$")


def embed(cp: ChainPair, gen) -> Staircase:
    """Staircase of ``0``, ``1``, ``a<i>``, ``b<j>``, ``u<i><j>`` (or a tuple form)."""
    if isinstance(gen, tuple):
        kind, *idx = gen
        if kind == "u":
            return cp.u(*idx)
        if kind == "a":
            return cp.a(*idx)
        if kind == "b":
            return cp.b(*idx)
        if kind == "v":
            return cp.v(*idx)
        raise ValueError(f"unknown generator kind {kind!r}")
    mt = _GEN.match(str(gen))
    if not mt:
        raise ValueError(f"cannot read generator {gen!r}")
    c, ai, bj, u1, u2, u3, u4 = mt.groups()
    if c is not None:
        return cp.one if c == "1" else cp.zero
    if ai is not None:
        i = int(ai)
        if not 0 <= i <= cp.n + 1:
            raise IndexOutOfRange(f"a{i} outside [0, {cp.n + 1}]")
        return cp.a(i)
    if bj is not None:
        j = int(bj)
        if not 0 <= j <= cp.m + 1:
            raise IndexOutOfRange(f"b{j} outside [0, {cp.m + 1}]")
        return cp.b(j)
    i, j = (int(u1), int(u2)) if u1 is not None else (int(u3), int(u4))
    return cp.u(i, j)


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

def u_sum_normal_form(pairs: Iterable[tuple[int, int]], cp: ChainPair | None = None) -> UNormalForm:
    """Drop every summand dominated by another (u_pq <= u_rs iff p >= r, q <= s).

    With ``cp`` given, summands equal to 0 (i = n+1 or j = 0) are dropped as
    well, and indices are range-checked.
    """
    pairs = [(int(i), int(j)) for i, j in pairs]
    if cp is not None:
        for i, j in pairs:
            cp._check(i, j)
        pairs = [(i, j) for i, j in pairs if i <= cp.n and j >= 1]
    else:
        pairs = [(i, j) for i, j in pairs if j >= 1]
    keep = []
    for p, q in sorted(set(pairs)):
        if any(r <= p and q <= s for r, s in keep):
            continue
        keep = [(r, s) for r, s in keep if not (p <= r and s <= q)]
        keep.append((p, q))
    return UNormalForm(tuple(sorted(keep)))


def is_strict_form(f: UNormalForm) -> bool:
    return all(i1 < i2 and j1 < j2 for (i1, j1), (i2, j2) in zip(f.pairs, f.pairs[1:]))


def u_to_staircase(cp: ChainPair, f: UNormalForm | Iterable) -> Staircase:
    pairs = f.pairs if isinstance(f, UNormalForm) else tuple(f)
    s = cp.zero
    for i, j in pairs:
        s = s | cp.u(i, j)
    return s


def staircase_to_u(cp: ChainPair, s: Staircase) -> UNormalForm:
    """Each outer corner (x, h(x)) of the staircase is one rectangle u_{n+1-h(x), x}."""
    h = s.profile
    pairs = []
    for x in range(1, cp.m + 2):
        hx = h[x - 1]
        if hx > 0 and (x == cp.m + 1 or h[x] < hx):
            pairs.append((cp.n + 1 - hx, x))
    return UNormalForm(tuple(sorted(pairs)))


def staircase_to_v(cp: ChainPair, s: Staircase) -> VProduct:
    """Each minimal point (x0, y0) of the complement is one factor v_{n+2-y0, x0-1}."""
    h = s.profile
    pairs = []
    for x in range(1, cp.m + 2):
        hx = h[x - 1]
        if hx < cp.n + 1 and (x == 1 or h[x - 2] > hx):
            pairs.append((cp.n + 1 - hx, x - 1))
    return VProduct(tuple(sorted(pairs)))


def v_to_staircase(cp: ChainPair, f: VProduct | Iterable) -> Staircase:
    pairs = f.pairs if isinstance(f, VProduct) else tuple(f)
    s = cp.one
    for i, j in pairs:
        s = s & cp.v(i, j)
    return s


def u_to_v(cp: ChainPair, f: UNormalForm) -> VProduct:
    return staircase_to_v(cp, u_to_staircase(cp, f))


def v_to_u(cp: ChainPair, f: VProduct) -> UNormalForm:
    return staircase_to_u(cp, v_to_staircase(cp, f))


def meet(cp: ChainPair, f1: UNormalForm, f2: UNormalForm) -> UNormalForm:
    return staircase_to_u(cp, u_to_staircase(cp, f1) & u_to_staircase(cp, f2))


def join(cp: ChainPair, f1: UNormalForm, f2: UNormalForm) -> UNormalForm:
    return staircase_to_u(cp, u_to_staircase(cp, f1) | u_to_staircase(cp, f2))


def _check_indices(cp: ChainPair, I: Sequence[int], J: Sequence[int]):
    if len(I) != len(J):
        raise LengthMismatch(f"index lists have lengths {len(I)} and {len(J)}")
    if not I:
        raise ValueError("index lists must be non-empty")
    for seq, name in ((I, "I"), (J, "J")):
        if any(x > y for x, y in zip(seq, seq[1:])):
            raise ValueError(f"{name} must be non-decreasing")
    for i, j in zip(I, J):
        cp._check(i, j)


def r_term(cp: ChainPair, I: Sequence[int], J: Sequence[int]) -> UNormalForm:
    """a_{i1} (b_{j1} + a_{i2}) ... (b_{j(k-1)} + a_{ik}) b_{jk}, evaluated left to right."""
    _check_indices(cp, I, J)
    s = cp.a(I[0])
    for t in range(1, len(I)):
        s = s & (cp.b(J[t - 1]) | cp.a(I[t]))
    s = s & cp.b(J[-1])
    return staircase_to_u(cp, s)


def s_term(cp: ChainPair, I: Sequence[int], J: Sequence[int]) -> UNormalForm:
    """a_{i1} b_{j1} + ... + a_{ik} b_{jk} reduced to normal form."""
    _check_indices(cp, I, J)
    return u_sum_normal_form(zip(I, J), cp)


def admissible_index_lists(cp: ChainPair, k: int):
    """All non-decreasing (I, J) of length k with 1 <= i <= n, 1 <= j <= m."""
    for I in combinations_with_replacement(range(1, cp.n + 1), k):
        for J in combinations_with_replacement(range(1, cp.m + 1), k):
            yield I, J


# ---------------------------------------------------------------------------
# the whole lattice
# ---------------------------------------------------------------------------

def all_profiles(n: int, m: int) -> list[tuple]:
    """Every non-increasing profile of length m+1 with values in [0, n+1]."""
    out = []

    def rec(prefix, cap):
        if len(prefix) == m + 1:
            out.append(tuple(prefix))
            return
        for v in range(cap, -1, -1):
            rec(prefix + [v], v)

    rec([], n + 1)
    return out


def lattice_size(cp: ChainPair) -> int:
    return comb(cp.n + cp.m + 2, cp.n + 1)


def enumerate_lattice(cp: ChainPair, max_chain: int = MAX_CHAIN) -> FiniteLattice:
    """All staircases with meet/join tables; elements are :class:`Staircase` values."""
    if cp.n > max_chain or cp.m > max_chain:
        raise SizeGuardExceeded(f"chain length above the guard of {max_chain}",
                                max(cp.n, cp.m), max_chain)
    profs = sorted(all_profiles(cp.n, cp.m), key=lambda h: (sum(h), h))
    H = np.array(profs, dtype=np.int64)
    N = len(profs)
    radix = (cp.n + 2) ** np.arange(cp.m, -1, -1, dtype=np.int64)
    codes = H @ radix
    order = np.argsort(codes)
    sorted_codes = codes[order]

    def lookup(P):
        c = P @ radix
        return order[np.searchsorted(sorted_codes, c)]

    leq = (H[:, None, :] <= H[None, :, :]).all(axis=2)
    M = np.empty((N, N), dtype=np.int64)
    J = np.empty((N, N), dtype=np.int64)
    for x in range(N):
        M[x] = lookup(np.minimum(H[x], H))
        J[x] = lookup(np.maximum(H[x], H))
    labels = [Staircase(h, cp.n, cp.m) for h in profs]
    return FiniteLattice(Poset(labels, leq, labels[0], labels[-1]), M, J)


def decomposable(cp: ChainPair, i: int, j: int, lattice: FiniteLattice | None = None,
                 project=None) -> bool:
    """Whether u_ij = u_{i+1,j} + u_{i,j-1} in ``lattice``.

    ``lattice`` defaults to the grid lattice of ``cp``; for a quotient pass
    ``project``, mapping a staircase to its element index in ``lattice``.
    The zero element (i = n+1 or j = 0) is never decomposable.
    """
    cp._check(i, j)
    if i == cp.n + 1 or j == 0:
        return False
    if lattice is None:
        lattice = enumerate_lattice(cp)
    if project is None:
        project = lattice.index
    x = project(cp.u(i, j))
    if x == lattice.bottom:
        return False
    return int(lattice.J[project(cp.u(i + 1, j)), project(cp.u(i, j - 1))]) == int(x)


def perversity_view(cp: ChainPair, s: Staircase) -> tuple:
    """The column-height profile as a step function x -> h(x), x = 1..m+1."""
    if (s.n, s.m) != (cp.n, cp.m):
        raise ValueError("staircase belongs to a different grid")
    return tuple(s.profile)


def staircase_from_perversity(cp: ChainPair, steps: Sequence[int]) -> Staircase:
    return Staircase(tuple(int(v) for v in steps), cp.n, cp.m)


def dnf_to_staircase(cp: ChainPair, dnf) -> Staircase:
    """Image of a canonical DNF over the generators ``a<i>``, ``b<j>``."""
    s = cp.zero
    for clause in dnf.clauses:
        c = cp.one
        for g in clause:
            c = c & embed(cp, dnf.names[g])
        s = s | c
    return s
