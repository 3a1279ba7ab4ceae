"""Inner loops over order matrices and operation tables.

Every kernel has two implementations with identical (normalised) outputs: a
numba ``@njit`` loop nest and a vectorised numpy version.  The numba path is
used when numba imports and ``TLAT_DISABLE_NUMBA`` is unset; the public
functions at the bottom dispatch on ``BACKEND``.

Conventions: order matrices are ``bool`` ``(n, n)`` with ``leq[i, j]`` iff
``i <= j``.  Operation tables are ``int64`` ``(n, n)``; ``-1`` marks an entry
that is not known.
"""

from __future__ import annotations

import os

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

_FLAG = os.environ.get("TLAT_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = njit is not None and _FLAG not in {"1", "true", "yes", "on"}
BACKEND = "numba" if USE_NUMBA else "numpy"

# law ids for first_failing_triple
ASSOC_MEET, ASSOC_JOIN, MODULAR, DISTRIB_MEET, DISTRIB_JOIN, DIS1, DIS2, HA, N5, M3 = range(10)

# rule ids for scan_saturation, in application order
SC1, SC2, SC2P, SC3, SC3P, SC4I, SC4II, SC5I, SC5II, SC5PI, SC5PII = range(11)
RULE_NAMES = ("SC1", "SC2", "SC2'", "SC3", "SC3'", "SC4i", "SC4ii",
              "SC5i", "SC5ii", "SC5'i", "SC5'ii")
LOWER, UPPER = 0, 1


# ---------------------------------------------------------------------------
# numpy path
# ---------------------------------------------------------------------------

def _np_transitive_closure(leq):
    r = np.array(leq, dtype=bool, copy=True)
    for k in range(r.shape[0]):
        r |= np.outer(r[:, k], r[k, :])
    return r


def _np_glb_table(leq):
    n = leq.shape[0]
    out = np.full((n, n), -1, dtype=np.int64)
    down = leq.sum(axis=0).astype(np.int64)
    for x in range(n):
        lb = leq[:, x][:, None] & leq              # lb[l, y]: l <= x and l <= y
        g = np.where(lb, down[:, None], -1).argmax(axis=0)
        ok = lb.any(axis=0) & ~(lb & ~leq[:, g]).any(axis=0)
        out[x] = np.where(ok, g, -1)
    return out


def _np_first_failing_triple(M, J, leq, law):
    n = M.shape[0]
    idx = np.arange(n)
    inc = ~leq & ~leq.T
    for x in range(n):
        if law == ASSOC_MEET:
            bad = M[M[x][:, None], idx[None, :]] != M[x][M]
        elif law == ASSOC_JOIN:
            bad = J[J[x][:, None], idx[None, :]] != J[x][J]
        elif law == MODULAR:
            bad = (M[J[x][:, None], idx[None, :]] != J[x][M]) & leq[x][None, :]
        elif law == DISTRIB_MEET:
            bad = M[x][J] != J[M[x][:, None], M[x][None, :]]
        elif law == DISTRIB_JOIN:
            bad = J[x][M] != M[J[x][:, None], J[x][None, :]]
        elif law == DIS1:
            bad = ~leq[J[M[x][None, :], M.T], M[J[x][:, None], idx[None, :]]]
        elif law == DIS2:
            bad = ~leq[J[x][M], M[J[x][:, None], J[x][None, :]]]
        elif law == HA:
            bad = ~leq[J[x][M], M[J[x][:, None], idx[None, :]]] & leq[x][None, :]
        elif law == N5:
            lt = leq[x] & (idx != x)
            bad = (lt[None, :] & inc[x][:, None] & inc
                   & (J[x][:, None] == J.T) & (M[x][:, None] == M.T))
        elif law == M3:
            bad = (inc[x][:, None] & inc[x][None, :] & inc
                   & (idx[:, None] > x) & (idx[None, :] > idx[:, None])
                   & (M[x][None, :] == M[x][:, None]) & (M == M[x][:, None])
                   & (J[x][None, :] == J[x][:, None]) & (J == J[x][:, None]))
        else:
            raise ValueError(f"unknown law id {law}")
        hit = np.flatnonzero(bad)
        if hit.size:
            y, z = divmod(int(hit[0]), n)
            return (x, y, z)
    return (-1, -1, -1)


def _components(n, pairs):
    """Class labels (minimum member) of the equivalence generated by pairs."""
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    g = coo_matrix((np.ones(len(pairs), dtype=np.int8), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    _, comp = connected_components(g, directed=False)
    mins = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(mins, comp, np.arange(n))
    return mins[comp]


def _np_congruence_closure(M, J, pairs):
    n = M.shape[0]
    labels = _components(n, pairs)
    while True:
        src = np.concatenate([M.ravel(), J.ravel(), np.arange(n)])
        dst = np.concatenate([M[labels].ravel(), J[labels].ravel(), labels])
        new = _components(n, np.stack([src, dst], axis=1))
        if np.array_equal(new, labels):
            return labels
        labels = new


def _np_scan_saturation(M, J, leq, L, U):
    n = M.shape[0]
    idx = np.arange(n)
    rel = (L, U)
    rows = []

    def emit(rule, x, ys, zs, kind, ps, qs):
        ok = ps != qs
        both = (ps >= 0) & (qs >= 0)
        ok &= ~(both & rel[kind][np.maximum(ps, 0), np.maximum(qs, 0)])
        if ok.any():
            k = int(ok.sum())
            rows.append(np.stack([np.full(k, rule), np.full(k, x), ys[ok], zs[ok],
                                  np.full(k, kind), ps[ok], qs[ok]], axis=1))

    for x in range(n):
        ys = np.flatnonzero(leq[x] & (idx != x))
        if ys.size:
            xs = np.full(ys.size, x)
            neg = np.full(ys.size, -1)
            for kind in (LOWER, UPPER):
                emit(SC1, x, ys, neg, kind, xs, ys)
                emit(SC1, x, ys, neg, kind, ys, xs)
        Lxy, Uxy = L[x][:, None], U[x][:, None]
        Lxz, Uxz = L[x][None, :], U[x][None, :]
        lxz = leq[x][None, :]
        Uyx = U[:, x][:, None]
        full = (n, n)
        mxy = np.broadcast_to(M[x][:, None], full)
        jxy = np.broadcast_to(J[x][:, None], full)
        X = np.full(full, x)
        Z = np.broadcast_to(idx[None, :], full)
        sc4 = lxz & Uxy & L
        sc5 = lxz & Uxy & L.T
        sc5p = lxz & Uyx & L
        patterns = (
            (SC2, Lxy & Lxz & L, ((LOWER, mxy, Z), (LOWER, X, M))),
            (SC2P, Uxy & Uxz & U, ((UPPER, jxy, Z), (UPPER, X, J))),
            (SC3, Uxy & Uxz & L, ((UPPER, X, M),)),
            (SC3P, Lxz & L & Uxy, ((LOWER, jxy, Z),)),
            (SC4I, sc4, ((LOWER, jxy, Z),)),
            (SC4II, sc4, ((UPPER, X, M),)),
            (SC5I, sc5, ((UPPER, X, M),)),
            (SC5II, sc5, ((LOWER, Z, jxy),)),
            (SC5PI, sc5p, ((UPPER, M, X),)),
            (SC5PII, sc5p, ((LOWER, jxy, Z),)),
        )
        for rule, mask, concl in patterns:
            yz = np.flatnonzero(mask)
            if not yz.size:
                continue
            ys_, zs_ = np.divmod(yz, n)
            for kind, P, Q in concl:
                emit(rule, x, ys_, zs_, kind, P.ravel()[yz], Q.ravel()[yz])
    if not rows:
        return np.zeros((0, 7), dtype=np.int64)
    return np.concatenate(rows).astype(np.int64)


class _EqAccumulator:
    """Collects fills and unions for the numpy equation scan."""

    def __init__(self, n):
        self.n = n
        self.F = (np.full((n, n), -1, dtype=np.int64), np.full((n, n), -1, dtype=np.int64))
        self.unions = []

    def union(self, a, b):
        a = np.asarray(a, dtype=np.int64).ravel()
        b = np.asarray(b, dtype=np.int64).ravel()
        keep = a != b
        if keep.any():
            self.unions.append(np.stack([a[keep], b[keep]], axis=1))

    def fill(self, t, a, b, v):
        a = np.asarray(a, dtype=np.int64).ravel()
        if not a.size:
            return
        b = np.asarray(b, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        F = self.F[t]
        old = F[a, b]
        had = old >= 0
        self.union(old[had], v[had])
        first = np.where(had, old, v)
        # every candidate for a cell joins the class of the cell's value
        F[a, b] = first
        F[b, a] = first
        self.union(F[a, b], v)


def _np_scan_equations(M, J, leq, L, U, modular):
    n = M.shape[0]
    acc = _EqAccumulator(n)
    idx = np.arange(n)
    for t, T in enumerate((M, J)):
        for x in range(n):
            a = T[x]
            act = (a[:, None] >= 0) & (T >= 0)        # (y, z) with a=T[x,y], b=T[y,z]
            if not act.any():
                continue
            ys, zs = np.nonzero(act)
            av = a[ys]
            bv = T[ys, zs]
            lv = T[av, zs]
            rv = T[x, bv]
            both = (lv >= 0) & (rv >= 0)
            acc.union(lv[both], rv[both])
            lo = (lv >= 0) & (rv < 0)
            acc.fill(t, np.full(int(lo.sum()), x), bv[lo], lv[lo])
            ro = (rv >= 0) & (lv < 0)
            acc.fill(t, av[ro], zs[ro], rv[ro])
    # absorption x(x+y) = x and x + xy = x
    for t, T, S in ((0, M, J), (1, J, M)):
        xs, ys = np.nonzero(S >= 0)
        s = S[xs, ys]
        v = T[xs, s]
        acc.union(v[v >= 0], xs[v >= 0])
        acc.fill(t, xs[v < 0], s[v < 0], xs[v < 0])
    # comparison: xy = x  <=>  x + y = y
    xs, ys = np.nonzero(M == idx[:, None])
    v = J[xs, ys]
    acc.union(v[v >= 0], ys[v >= 0])
    acc.fill(1, xs[v < 0], ys[v < 0], ys[v < 0])
    xs, ys = np.nonzero(J == idx[None, :])
    v = M[xs, ys]
    acc.union(v[v >= 0], xs[v >= 0])
    acc.fill(0, xs[v < 0], ys[v < 0], xs[v < 0])
    if modular:
        for x in range(n):
            hyp = leq[x][None, :] & ((U[x][:, None] & (L | L.T)) | (U[:, x][:, None] & L))
            jx = J[x]
            hyp &= (jx[:, None] >= 0) & (M >= 0)
            if not hyp.any():
                continue
            ys, zs = np.nonzero(hyp)
            jxy = jx[ys]
            myz = M[ys, zs]
            lv = M[jxy, zs]
            rv = J[x, myz]
            both = (lv >= 0) & (rv >= 0)
            acc.union(lv[both], rv[both])
            lo = (lv >= 0) & (rv < 0)
            acc.fill(1, np.full(int(lo.sum()), x), myz[lo], lv[lo])
            ro = (rv >= 0) & (lv < 0)
            acc.fill(0, jxy[ro], zs[ro], rv[ro])
    pairs = np.concatenate(acc.unions) if acc.unions else np.zeros((0, 2), dtype=np.int64)
    return acc.F[0], acc.F[1], pairs


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

if njit is not None:

    @njit(cache=True)
    def _nb_transitive_closure(leq):
        n = leq.shape[0]
        r = leq.copy()
        for k in range(n):
            for i in range(n):
                if r[i, k]:
                    for j in range(n):
                        if r[k, j]:
                            r[i, j] = True
        return r

    @njit(cache=True)
    def _nb_glb_table(leq):
        n = leq.shape[0]
        out = np.full((n, n), -1, dtype=np.int64)
        down = np.zeros(n, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if leq[i, j]:
                    down[j] += 1
        for x in range(n):
            for y in range(x, n):
                g = -1
                best = -1
                for l in range(n):
                    if leq[l, x] and leq[l, y] and down[l] > best:
                        best = down[l]
                        g = l
                if g >= 0:
                    for l in range(n):
                        if leq[l, x] and leq[l, y] and not leq[l, g]:
                            g = -1
                            break
                out[x, y] = g
                out[y, x] = g
        return out

    @njit(cache=True)
    def _nb_first_failing_triple(M, J, leq, law):
        n = M.shape[0]
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    bad = False
                    if law == 0:
                        bad = M[M[x, y], z] != M[x, M[y, z]]
                    elif law == 1:
                        bad = J[J[x, y], z] != J[x, J[y, z]]
                    elif law == 2:
                        bad = leq[x, z] and M[J[x, y], z] != J[x, M[y, z]]
                    elif law == 3:
                        bad = M[x, J[y, z]] != J[M[x, y], M[x, z]]
                    elif law == 4:
                        bad = J[x, M[y, z]] != M[J[x, y], J[x, z]]
                    elif law == 5:
                        bad = not leq[J[M[x, z], M[y, z]], M[J[x, y], z]]
                    elif law == 6:
                        bad = not leq[J[x, M[y, z]], M[J[x, y], J[x, z]]]
                    elif law == 7:
                        bad = leq[x, z] and not leq[J[x, M[y, z]], M[J[x, y], z]]
                    elif law == 8:
                        bad = (leq[x, z] and x != z
                               and not leq[x, y] and not leq[y, x]
                               and not leq[z, y] and not leq[y, z]
                               and J[x, y] == J[z, y] and M[x, y] == M[z, y])
                    elif law == 9:
                        bad = (x < y and y < z
                               and not leq[x, y] and not leq[y, x]
                               and not leq[x, z] and not leq[z, x]
                               and not leq[y, z] and not leq[z, y]
                               and M[x, y] == M[x, z] and M[x, y] == M[y, z]
                               and J[x, y] == J[x, z] and J[x, y] == J[y, z])
                    if bad:
                        return (x, y, z)
        return (-1, -1, -1)

    @njit(cache=True)
    def _nb_find(parent, a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    @njit(cache=True)
    def _nb_congruence_closure(M, J, pairs):
        n = M.shape[0]
        parent = np.arange(n)
        cap = pairs.shape[0] + 2 * n * n + 1
        sa = np.empty(cap, dtype=np.int64)
        sb = np.empty(cap, dtype=np.int64)
        top = 0
        for k in range(pairs.shape[0]):
            sa[top] = pairs[k, 0]
            sb[top] = pairs[k, 1]
            top += 1
        while top > 0:
            top -= 1
            a = sa[top]
            b = sb[top]
            ra = _nb_find(parent, a)
            rb = _nb_find(parent, b)
            if ra == rb:
                continue
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
            for l in range(n):
                sa[top] = M[a, l]
                sb[top] = M[b, l]
                top += 1
                sa[top] = J[a, l]
                sb[top] = J[b, l]
                top += 1
        out = np.empty(n, dtype=np.int64)
        for i in range(n):
            out[i] = _nb_find(parent, i)
        return out

    @njit(cache=True)
    def _nb_push(buf, top, row):
        if top >= buf.shape[0]:
            nb = np.empty((buf.shape[0] * 2, buf.shape[1]), dtype=np.int64)
            nb[:top] = buf[:top]
            buf = nb
        for k in range(row.shape[0]):
            buf[top, k] = row[k]
        return buf, top + 1

    @njit(cache=True)
    def _nb_scan_saturation(M, J, leq, L, U):
        n = M.shape[0]
        buf = np.empty((64, 7), dtype=np.int64)
        top = 0
        row = np.empty(7, dtype=np.int64)
        concl = np.empty((2, 3), dtype=np.int64)   # kind, p, q
        for x in range(n):
            for y in range(n):
                if y != x and leq[x, y]:
                    for kind in range(2):
                        for s in range(2):
                            p = x if s == 0 else y
                            q = y if s == 0 else x
                            R = L if kind == 0 else U
                            if not R[p, q]:
                                row[0] = 0
                                row[1] = x
                                row[2] = y
                                row[3] = -1
                                row[4] = kind
                                row[5] = p
                                row[6] = q
                                buf, top = _nb_push(buf, top, row)
            for y in range(n):
                for z in range(n):
                    lxz = leq[x, z]
                    for rule in range(1, 11):
                        nc = 0
                        if rule == 1 and L[x, y] and L[x, z] and L[y, z]:
                            concl[0, 0] = 0; concl[0, 1] = M[x, y]; concl[0, 2] = z
                            concl[1, 0] = 0; concl[1, 1] = x; concl[1, 2] = M[y, z]
                            nc = 2
                        elif rule == 2 and U[x, y] and U[x, z] and U[y, z]:
                            concl[0, 0] = 1; concl[0, 1] = J[x, y]; concl[0, 2] = z
                            concl[1, 0] = 1; concl[1, 1] = x; concl[1, 2] = J[y, z]
                            nc = 2
                        elif rule == 3 and U[x, y] and U[x, z] and L[y, z]:
                            concl[0, 0] = 1; concl[0, 1] = x; concl[0, 2] = M[y, z]
                            nc = 1
                        elif rule == 4 and L[x, z] and L[y, z] and U[x, y]:
                            concl[0, 0] = 0; concl[0, 1] = J[x, y]; concl[0, 2] = z
                            nc = 1
                        elif rule == 5 and lxz and U[x, y] and L[y, z]:
                            concl[0, 0] = 0; concl[0, 1] = J[x, y]; concl[0, 2] = z
                            nc = 1
                        elif rule == 6 and lxz and U[x, y] and L[y, z]:
                            concl[0, 0] = 1; concl[0, 1] = x; concl[0, 2] = M[y, z]
                            nc = 1
                        elif rule == 7 and lxz and U[x, y] and L[z, y]:
                            concl[0, 0] = 1; concl[0, 1] = x; concl[0, 2] = M[y, z]
                            nc = 1
                        elif rule == 8 and lxz and U[x, y] and L[z, y]:
                            concl[0, 0] = 0; concl[0, 1] = z; concl[0, 2] = J[x, y]
                            nc = 1
                        elif rule == 9 and lxz and U[y, x] and L[y, z]:
                            concl[0, 0] = 1; concl[0, 1] = M[y, z]; concl[0, 2] = x
                            nc = 1
                        elif rule == 10 and lxz and U[y, x] and L[y, z]:
                            concl[0, 0] = 0; concl[0, 1] = J[x, y]; concl[0, 2] = z
                            nc = 1
                        for c in range(nc):
                            kind = concl[c, 0]
                            p = concl[c, 1]
                            q = concl[c, 2]
                            if p == q:
                                continue
                            if p >= 0 and q >= 0:
                                if (kind == 0 and L[p, q]) or (kind == 1 and U[p, q]):
                                    continue
                            row[0] = rule
                            row[1] = x
                            row[2] = y
                            row[3] = z
                            row[4] = kind
                            row[5] = p
                            row[6] = q
                            buf, top = _nb_push(buf, top, row)
        return buf[:top].copy()

    @njit(cache=True)
    def _nb_fill(F, a, b, v, ubuf, utop, row):
        old = F[a, b]
        if old < 0:
            F[a, b] = v
            F[b, a] = v
        elif old != v:
            row[0] = old
            row[1] = v
            ubuf, utop = _nb_push(ubuf, utop, row)
        return ubuf, utop

    @njit(cache=True)
    def _nb_scan_equations(M, J, leq, L, U, modular):
        n = M.shape[0]
        FM = np.full((n, n), -1, dtype=np.int64)
        FJ = np.full((n, n), -1, dtype=np.int64)
        ubuf = np.empty((64, 2), dtype=np.int64)
        utop = 0
        row = np.empty(2, dtype=np.int64)
        for t in range(2):
            T = M if t == 0 else J
            F = FM if t == 0 else FJ
            for x in range(n):
                for y in range(n):
                    a = T[x, y]
                    if a < 0:
                        continue
                    for z in range(n):
                        b = T[y, z]
                        if b < 0:
                            continue
                        lv = T[a, z]
                        rv = T[x, b]
                        if lv >= 0 and rv >= 0:
                            if lv != rv:
                                row[0] = lv
                                row[1] = rv
                                ubuf, utop = _nb_push(ubuf, utop, row)
                        elif lv >= 0:
                            ubuf, utop = _nb_fill(F, x, b, lv, ubuf, utop, row)
                        elif rv >= 0:
                            ubuf, utop = _nb_fill(F, a, z, rv, ubuf, utop, row)
        for t in range(2):
            T = M if t == 0 else J
            S = J if t == 0 else M
            F = FM if t == 0 else FJ
            for x in range(n):
                for y in range(n):
                    s = S[x, y]
                    if s < 0:
                        continue
                    v = T[x, s]
                    if v >= 0:
                        if v != x:
                            row[0] = v
                            row[1] = x
                            ubuf, utop = _nb_push(ubuf, utop, row)
                    else:
                        ubuf, utop = _nb_fill(F, x, s, x, ubuf, utop, row)
        for x in range(n):
            for y in range(n):
                if M[x, y] == x:
                    v = J[x, y]
                    if v >= 0:
                        if v != y:
                            row[0] = v
                            row[1] = y
                            ubuf, utop = _nb_push(ubuf, utop, row)
                    else:
                        ubuf, utop = _nb_fill(FJ, x, y, y, ubuf, utop, row)
        for x in range(n):
            for y in range(n):
                if J[x, y] == y:
                    v = M[x, y]
                    if v >= 0:
                        if v != x:
                            row[0] = v
                            row[1] = x
                            ubuf, utop = _nb_push(ubuf, utop, row)
                    else:
                        ubuf, utop = _nb_fill(FM, x, y, x, ubuf, utop, row)
        if modular:
            for x in range(n):
                for y in range(n):
                    jxy = J[x, y]
                    if jxy < 0:
                        continue
                    for z in range(n):
                        if not leq[x, z]:
                            continue
                        if not ((U[x, y] and (L[y, z] or L[z, y])) or (U[y, x] and L[y, z])):
                            continue
                        myz = M[y, z]
                        if myz < 0:
                            continue
                        lv = M[jxy, z]
                        rv = J[x, myz]
                        if lv >= 0 and rv >= 0:
                            if lv != rv:
                                row[0] = lv
                                row[1] = rv
                                ubuf, utop = _nb_push(ubuf, utop, row)
                        elif lv >= 0:
                            ubuf, utop = _nb_fill(FJ, x, myz, lv, ubuf, utop, row)
                        elif rv >= 0:
                            ubuf, utop = _nb_fill(FM, jxy, z, rv, ubuf, utop, row)
        return FM, FJ, ubuf[:utop].copy()


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _as_bool(a):
    return np.ascontiguousarray(a, dtype=np.bool_)


def _as_int(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def _pick(name, backend):
    backend = backend or BACKEND
    if backend == "numba":
        if njit is None:  # pragma: no cover
            raise RuntimeError("numba backend requested but numba is unavailable")
        return globals()["_nb_" + name]
    return globals()["_np_" + name]


def transitive_closure(leq, backend=None):
    """Reflexive-transitive closure of a boolean relation matrix."""
    r = _as_bool(leq).copy()
    np.fill_diagonal(r, True)
    return _pick("transitive_closure", backend)(r)


def glb_table(leq, backend=None):
    """Greatest-lower-bound table; ``-1`` where no glb exists."""
    return _pick("glb_table", backend)(_as_bool(leq))


def lub_table(leq, backend=None):
    return _pick("glb_table", backend)(_as_bool(leq).T.copy())


def first_failing_triple(M, J, leq, law, backend=None):
    """First (x, y, z) in index order violating ``law``, or None."""
    x, y, z = _pick("first_failing_triple", backend)(_as_int(M), _as_int(J), _as_bool(leq), int(law))
    return None if x < 0 else (int(x), int(y), int(z))


def congruence_closure(M, J, pairs, backend=None):
    """Least congruence containing ``pairs``; returns min-member class labels."""
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    return _pick("congruence_closure", backend)(_as_int(M), _as_int(J), pairs)


def scan_saturation(M, J, leq, L, U, backend=None):
    """One pass of the consistency rules over every triple.

    Returns rows ``[rule, x, y, z, kind, p, q]`` sorted lexicographically, one
    per conclusion not already present.  ``p`` or ``q`` is ``-1`` when the
    meet/join the conclusion refers to is missing from the tables.
    """
    rows = _pick("scan_saturation", backend)(
        _as_int(M), _as_int(J), _as_bool(leq), _as_bool(L), _as_bool(U))
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, 7)
    if rows.shape[0]:
        order = np.lexsort(rows.T[::-1])
        rows = rows[order]
    return rows


def scan_equations(M, J, leq=None, L=None, U=None, modular=False, backend=None):
    """Consequences of the lattice postulates (and optionally modularity).

    Scans partial tables for associativity, absorption and the comparison
    rule; with ``modular`` set, also for the modularity equation on triples
    x <= z matching the consistency hypotheses of the three modularity laws.
    Returns ``(fill_meet, fill_join, labels)``: fills for entries unknown in
    the input (values already mapped to class labels) and the min-member
    labels of the equivalence generated by the discovered equalities.
    """
    n = M.shape[0]
    if leq is None:
        leq = np.zeros((n, n), dtype=bool)
    if L is None:
        L = np.zeros((n, n), dtype=bool)
    if U is None:
        U = np.zeros((n, n), dtype=bool)
    FM, FJ, pairs = _pick("scan_equations", backend)(
        _as_int(M), _as_int(J), _as_bool(leq), _as_bool(L), _as_bool(U), bool(modular))
    labels = _components(n, pairs)
    FM = np.where(FM >= 0, labels[np.maximum(FM, 0)], -1)
    FJ = np.where(FJ >= 0, labels[np.maximum(FJ, 0)], -1)
    return FM, FJ, labels
