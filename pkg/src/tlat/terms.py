"""Lattice terms over a poset of generators and the word problem in the free
bounded distributive lattice D(P) generated by the poset.

Two independent decision routes are provided:

* canonical DNF: distribute meets over joins, reduce each meet-set to its
  minimal generators, then drop absorbed clauses;
* valuations: two terms are equal in D(P) iff they agree under every
  order-preserving assignment P -> {0, 1}.

Meet-sets are handled as integer bitmasks over generator indices.
"""

from __future__ import annotations

import os
import re
import weakref
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (NonMonotoneValuation, ParseError, SizeGuardExceeded,
                     UnknownGenerator)
from .poset import FiniteLattice, Poset


# ---------------------------------------------------------------------------
# terms
# ---------------------------------------------------------------------------

class LatticeTerm:
    __slots__ = ()

    def __mul__(self, other):
        return Meet((self, other))

    def __add__(self, other):
        return Join((self, other))

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Gen(LatticeTerm):
    label: object


@dataclass(frozen=True, slots=True)
class Meet(LatticeTerm):
    children: tuple
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("a meet needs at least two children")
        object.__setattr__(self, "_hash", hash(("Meet", self.children)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Join(LatticeTerm):
    children: tuple
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("a join needs at least two children")
        object.__setattr__(self, "_hash", hash(("Join", self.children)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Top(LatticeTerm):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(LatticeTerm):
    pass


def depth(t: LatticeTerm) -> int:
    if isinstance(t, (Meet, Join)):
        return 1 + max(depth(c) for c in t.children)
    return 0


def generators(t: LatticeTerm) -> set:
    if isinstance(t, Gen):
        return {t.label}
    if isinstance(t, (Meet, Join)):
        return set().union(*(generators(c) for c in t.children))
    return set()


def format_term(t: LatticeTerm) -> str:
    if isinstance(t, Gen):
        return str(t.label)
    if isinstance(t, Top):
        return "1"
    if isinstance(t, Bottom):
        return "0"
    if isinstance(t, Join):
        return "+".join(f"({format_term(c)})" if isinstance(c, Join) else format_term(c)
                        for c in t.children)
    return "*".join(f"({format_term(c)})" if isinstance(c, (Join, Meet)) else format_term(c)
                    for c in t.children)


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(\d+)|(.))")


def parse_term(text: str, line: int = 1) -> LatticeTerm:
    """Parse infix syntax: ``*`` meet binds tighter than ``+`` join; ``0``, ``1``."""
    tokens = []
    for mt in _TOKEN.finditer(text):
        if mt.group(0).strip() == "":
            continue
        col = mt.start() + len(mt.group(0)) - len(mt.group(0).lstrip()) + 1
        if mt.group(1):
            tokens.append(("id", mt.group(1), col))
        elif mt.group(2):
            if mt.group(2) not in ("0", "1"):
                raise ParseError(f"unexpected number {mt.group(2)!r}", line, col)
            tokens.append(("const", mt.group(2), col))
        elif mt.group(3) in "*+()":
            tokens.append((mt.group(3), mt.group(3), col))
        else:
            raise ParseError(f"unexpected character {mt.group(3)!r}", line, col)
    pos = 0
    end_col = len(text) + 1

    def peek():
        return tokens[pos] if pos < len(tokens) else ("eof", "", end_col)

    def take(kind):
        nonlocal pos
        tok = peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", line, tok[2])
        pos += 1
        return tok

    def atom():
        nonlocal pos
        tok = peek()
        if tok[0] == "id":
            pos += 1
            return Gen(tok[1])
        if tok[0] == "const":
            pos += 1
            return Top() if tok[1] == "1" else Bottom()
        if tok[0] == "(":
            pos += 1
            inner = expr()
            take(")")
            return inner
        what = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"expected a term, found {what}", line, tok[2])

    def prod():
        parts = [atom()]
        while peek()[0] == "*":
            take("*")
            parts.append(atom())
        return parts[0] if len(parts) == 1 else Meet(tuple(parts))

    def expr():
        parts = [prod()]
        while peek()[0] == "+":
            take("+")
            parts.append(prod())
        return parts[0] if len(parts) == 1 else Join(tuple(parts))

    t = expr()
    if pos != len(tokens):
        tok = tokens[pos]
        raise ParseError(f"unexpected {tok[1]!r}", line, tok[2])
    return t


# ---------------------------------------------------------------------------
# canonical DNF
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalDNF:
    """Antichain of meet-sets; each meet-set an antichain of generator indices.

    ``()`` is Bottom and ``((),)`` is Top.  ``names`` are the generator labels.
    """

    clauses: tuple
    names: tuple

    def __str__(self):
        if not self.clauses:
            return "0"
        if self.clauses == ((),):
            return "1"
        return "+".join("*".join(str(self.names[i]) for i in c) for c in self.clauses)

    def to_term(self) -> LatticeTerm:
        if not self.clauses:
            return Bottom()
        parts = []
        for c in self.clauses:
            if not c:
                parts.append(Top())
            elif len(c) == 1:
                parts.append(Gen(self.names[c[0]]))
            else:
                parts.append(Meet(tuple(Gen(self.names[i]) for i in c)))
        return parts[0] if len(parts) == 1 else Join(tuple(parts))


class _Order:
    """Bitmask views of a poset used by the DNF routines."""

    def __init__(self, P: Poset):
        n = len(P)
        self.P = P
        self.n = n
        self.names = P.elements
        self.down = [sum(1 << j for j in range(n) if P.leq[j, i]) for i in range(n)]
        self.strict_up = [sum(1 << j for j in range(n) if P.lt[i, j]) for i in range(n)]

    def reduce_set(self, s: int) -> int:
        ups = 0
        x = s
        while x:
            b = x & -x
            ups |= self.strict_up[b.bit_length() - 1]
            x ^= b
        return s & ~ups

    def set_leq(self, s: int, t: int) -> bool:
        """meet(s) <= meet(t): every generator of t dominates one of s."""
        x = t
        while x:
            b = x & -x
            if not self.down[b.bit_length() - 1] & s:
                return False
            x ^= b
        return True

    def reduce(self, clauses: Iterable[int]) -> frozenset:
        cs = sorted({self.reduce_set(c) for c in clauses}, key=lambda c: (bin(c).count("1"), c))
        keep = []
        for c in cs:
            if not any(self.set_leq(c, k) for k in keep):
                keep = [k for k in keep if not self.set_leq(k, c)]
                keep.append(c)
        return frozenset(keep)

    def join(self, a: frozenset, b: frozenset) -> frozenset:
        return self.reduce(a | b)

    def meet(self, a: frozenset, b: frozenset) -> frozenset:
        return self.reduce(x | y for x in a for y in b)

    def leq(self, a: frozenset, b: frozenset) -> bool:
        return all(any(self.set_leq(x, y) for y in b) for x in a)

    def canonical(self, cl: frozenset) -> CanonicalDNF:
        tup = sorted(tuple(i for i in range(self.n) if c >> i & 1) for c in cl)
        return CanonicalDNF(tuple(tup), self.names)

    def masks(self, d: CanonicalDNF) -> frozenset:
        return frozenset(sum(1 << i for i in c) for c in d.clauses)


_ORDERS: "weakref.WeakKeyDictionary[Poset, _Order]" = weakref.WeakKeyDictionary()


def _order(P: Poset) -> _Order:
    o = _ORDERS.get(P)
    if o is None:
        o = _ORDERS[P] = _Order(P)
    return o


def _dnf_masks(t: LatticeTerm, o: _Order, memo: dict) -> frozenset:
    hit = memo.get(t)
    if hit is not None:
        return hit
    if isinstance(t, Gen):
        if t.label not in o.P:
            raise UnknownGenerator(f"unknown generator {t.label!r}")
        r = frozenset({1 << o.P.index(t.label)})
    elif isinstance(t, Top):
        r = frozenset({0})
    elif isinstance(t, Bottom):
        r = frozenset()
    elif isinstance(t, Join):
        r = frozenset()
        for c in t.children:
            r = o.join(r, _dnf_masks(c, o, memo))
    elif isinstance(t, Meet):
        r = frozenset({0})
        for c in t.children:
            r = o.meet(r, _dnf_masks(c, o, memo))
    else:
        raise TypeError(f"not a lattice term: {t!r}")
    memo[t] = r
    return r


def to_dnf(t: LatticeTerm, P: Poset, memo: dict | None = None) -> CanonicalDNF:
    o = _order(P)
    return o.canonical(_dnf_masks(t, o, {} if memo is None else memo))


def dnf_leq(d1: CanonicalDNF, d2: CanonicalDNF, P: Poset) -> bool:
    o = _order(P)
    return o.leq(o.masks(d1), o.masks(d2))


def dnf_meet(d1: CanonicalDNF, d2: CanonicalDNF, P: Poset) -> CanonicalDNF:
    o = _order(P)
    return o.canonical(o.meet(o.masks(d1), o.masks(d2)))


def dnf_join(d1: CanonicalDNF, d2: CanonicalDNF, P: Poset) -> CanonicalDNF:
    o = _order(P)
    return o.canonical(o.join(o.masks(d1), o.masks(d2)))


def terms_equal(t1: LatticeTerm, t2: LatticeTerm, P: Poset) -> bool:
    return to_dnf(t1, P) == to_dnf(t2, P)


# ---------------------------------------------------------------------------
# valuation oracle
# ---------------------------------------------------------------------------

def eval_valuation(t: LatticeTerm, v: Mapping, P: Poset) -> int:
    """Evaluate ``t`` under the 0/1 assignment ``v`` (label -> 0/1)."""
    vals = {}
    for x in P.elements:
        if x not in v:
            raise UnknownGenerator(f"valuation misses generator {x!r}")
        vals[x] = 1 if v[x] else 0
    for i, j in np.argwhere(P.leq):
        x, y = P.elements[i], P.elements[j]
        if vals[x] > vals[y]:
            raise NonMonotoneValuation(f"{x!r} <= {y!r} but v({x!r}) > v({y!r})")
    return _eval(t, vals)


def _eval(t, vals):
    if isinstance(t, Gen):
        if t.label not in vals:
            raise UnknownGenerator(f"unknown generator {t.label!r}")
        return vals[t.label]
    if isinstance(t, Top):
        return 1
    if isinstance(t, Bottom):
        return 0
    if isinstance(t, Meet):
        return min(_eval(c, vals) for c in t.children)
    return max(_eval(c, vals) for c in t.children)


def monotone_valuations(P: Poset) -> list[dict]:
    """Every order-preserving map P -> {0, 1} (equivalently every up-set)."""
    n = len(P)
    out = []
    for s in range(1 << n):
        bits = [(s >> i) & 1 for i in range(n)]
        if all(bits[i] <= bits[j] for i, j in np.argwhere(P.leq)):
            out.append({P.elements[i]: bits[i] for i in range(n)})
    return out


class ValuationOracle:
    """Truth vectors of terms over all monotone valuations, as bitmasks."""

    def __init__(self, P: Poset):
        self.P = P
        self.valuations = monotone_valuations(P)
        self.full = (1 << len(self.valuations)) - 1
        self.gen = {x: sum(1 << k for k, v in enumerate(self.valuations) if v[x])
                    for x in P.elements}
        self.memo: dict = {}

    def truth(self, t: LatticeTerm) -> int:
        hit = self.memo.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Gen):
            if t.label not in self.gen:
                raise UnknownGenerator(f"unknown generator {t.label!r}")
            r = self.gen[t.label]
        elif isinstance(t, Top):
            r = self.full
        elif isinstance(t, Bottom):
            r = 0
        elif isinstance(t, Meet):
            r = self.full
            for c in t.children:
                r &= self.truth(c)
        else:
            r = 0
            for c in t.children:
                r |= self.truth(c)
        self.memo[t] = r
        return r

    def equal(self, t1: LatticeTerm, t2: LatticeTerm) -> bool:
        return self.truth(t1) == self.truth(t2)

    def leq(self, t1: LatticeTerm, t2: LatticeTerm) -> bool:
        return self.truth(t1) & ~self.truth(t2) == 0


# ---------------------------------------------------------------------------
# enumeration of D(P)
# ---------------------------------------------------------------------------

def default_max_size() -> int:
    return int(os.environ.get("TLAT_MAX_SIZE", "5000"))


def enumerate_D(P: Poset, max_gens: int = 6, max_size: int | None = None) -> FiniteLattice:
    """D(P) with bounds adjoined: closure of the generators, 0 and 1 under meet/join.

    Elements are :class:`CanonicalDNF` values, ordered by (size of the
    down-set, clauses) so that index order is a linear extension.
    """
    if len(P) > max_gens:
        raise SizeGuardExceeded(f"{len(P)} generators exceeds the guard of {max_gens}", len(P), max_gens)
    limit = default_max_size() if max_size is None else max_size
    o = _order(P)
    start = {frozenset(), frozenset({0})} | {frozenset({1 << i}) for i in range(len(P))}
    seen = set(start)
    frontier = list(start)
    while frontier:
        fresh = []
        current = list(seen)
        for a in frontier:
            for b in current:
                for c in (o.meet(a, b), o.join(a, b)):
                    if c not in seen:
                        seen.add(c)
                        fresh.append(c)
                        if len(seen) > limit:
                            raise SizeGuardExceeded(f"D(P) exceeds {limit} elements", len(seen), limit)
        frontier = fresh
    elems = list(seen)
    n = len(elems)
    leq = np.array([[o.leq(a, b) for b in elems] for a in elems], dtype=bool)
    key = [(int(leq[:, i].sum()), o.canonical(e).clauses) for i, e in enumerate(elems)]
    order = sorted(range(n), key=lambda i: key[i])
    elems = [elems[i] for i in order]
    leq = leq[np.ix_(order, order)]
    pos = {e: i for i, e in enumerate(elems)}
    M = np.array([[pos[o.meet(a, b)] for b in elems] for a in elems], dtype=np.int64)
    J = np.array([[pos[o.join(a, b)] for b in elems] for a in elems], dtype=np.int64)
    labels = [o.canonical(e) for e in elems]
    return FiniteLattice(Poset(labels, leq, labels[0], labels[-1]), M, J)


# ---------------------------------------------------------------------------
# random terms
# ---------------------------------------------------------------------------

def random_term(rng: np.random.Generator, labels: Sequence, max_depth: int,
                p_leaf: float = 0.3, p_const: float = 0.05) -> LatticeTerm:
    if max_depth == 0 or rng.random() < p_leaf:
        if rng.random() < p_const:
            return Top() if rng.random() < 0.5 else Bottom()
        return Gen(labels[int(rng.integers(len(labels)))])
    k = 2 if rng.random() < 0.8 else 3
    kids = tuple(random_term(rng, labels, max_depth - 1, p_leaf, p_const) for _ in range(k))
    return Meet(kids) if rng.random() < 0.5 else Join(kids)
