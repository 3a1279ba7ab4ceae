"""Brute-force reference implementations used by the tests.

Everything here works straight from the definitions with Python loops and
sets, sharing no code with the package beyond plain data.
"""

from __future__ import annotations

from itertools import combinations


def glb(leq, x, y):
    n = len(leq)
    lows = [l for l in range(n) if leq[l][x] and leq[l][y]]
    for g in lows:
        if all(leq[l][g] for l in lows):
            return g
    return None


def lub(leq, x, y):
    n = len(leq)
    ups = [u for u in range(n) if leq[x][u] and leq[y][u]]
    for g in ups:
        if all(leq[g][u] for u in ups):
            return g
    return None


def closure(leq_rel, n):
    r = [[bool(leq_rel[i][j]) or i == j for j in range(n)] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if not r[i][j] and any(r[i][k] and r[k][j] for k in range(n)):
                    r[i][j] = True
                    changed = True
    return r


def is_modular(M, J, leq):
    n = len(M)
    return all(M[J[x][y]][z] == J[x][M[y][z]]
               for x in range(n) for y in range(n) for z in range(n) if leq[x][z])


def is_distributive(M, J):
    n = len(M)
    return all(M[x][J[y][z]] == J[M[x][y]][M[x][z]]
               for x in range(n) for y in range(n) for z in range(n))


def join_irreducibles(M, J, leq, bottom):
    n = len(M)
    out = []
    for x in range(n):
        if x == bottom:
            continue
        below = [a for a in range(n) if leq[a][x] and a != x]
        if not any(J[a][b] == x for a in below for b in below):
            out.append(x)
    return out


def congruence(M, J, pairs):
    """Least congruence by naive repeated translation; returns frozenset of blocks."""
    n = len(M)
    cls = {i: {i} for i in range(n)}

    def merge(a, b):
        if cls[a] is cls[b]:
            return False
        big = cls[a] | cls[b]
        for k in big:
            cls[k] = big
        return True

    for a, b in pairs:
        merge(a, b)
    changed = True
    while changed:
        changed = False
        for p in range(n):
            for q in cls[p]:
                for l in range(n):
                    changed |= merge(M[p][l], M[q][l])
                    changed |= merge(J[p][l], J[q][l])
    return frozenset(frozenset(c) for c in {id(c): c for c in cls.values()}.values())


def set_closure(gens, full):
    """Close a family of bitmask sets under union and intersection (with 0 and full)."""
    fam = set(gens) | {0, full}
    frontier = list(fam)
    while frontier:
        new = []
        cur = list(fam)
        for a in frontier:
            for b in cur:
                for c in (a & b, a | b):
                    if c not in fam:
                        fam.add(c)
                        new.append(c)
        frontier = new
    return fam


def grid_generators(n, m):
    """Cell bitmasks of a_i (rows y <= n+1-i) and b_j (columns x <= j)."""
    cells = [(x, y) for x in range(1, m + 2) for y in range(1, n + 2)]
    bit = {c: 1 << k for k, c in enumerate(cells)}
    a = [sum(bit[c] for c in cells if c[1] <= n + 1 - i) for i in range(1, n + 1)]
    b = [sum(bit[c] for c in cells if c[0] <= j) for j in range(1, m + 1)]
    full = (1 << len(cells)) - 1
    return a, b, full, bit


def rectangles_union(n, m, pairs):
    """Cell set of u_{i1 j1} + ... as a Python set of (x, y)."""
    out = set()
    for i, j in pairs:
        out |= {(x, y) for x in range(1, j + 1) for y in range(1, n + 2 - i)}
    return out


def monotone_truths(leq, n, term_eval):
    """All truth values of a term evaluator over order-preserving 0/1 maps."""
    out = []
    for s in range(1 << n):
        v = [(s >> i) & 1 for i in range(n)]
        if all(v[i] <= v[j] for i in range(n) for j in range(n) if leq[i][j]):
            out.append(term_eval(v))
    return tuple(out)


def irredundant_decompositions(M, J, leq, bottom, x):
    """Every irredundant set of join-irreducibles whose join is x."""
    ji = [j for j in join_irreducibles(M, J, leq, bottom) if leq[j][x]]

    def join_all(s):
        acc = bottom
        for i in s:
            acc = J[acc][i]
        return acc

    out = []
    for k in range(len(ji) + 1):
        for s in combinations(ji, k):
            if join_all(s) == x and not any(join_all(s[:t] + s[t + 1:]) == x for t in range(k)):
                out.append(frozenset(s))
    return out


def saturation_rows(M, J, leq, L, U):
    """Every rule conclusion (rule, x, y, z, kind, p, q) not already present.

    kind 0 is the lower relation, 1 the upper; p/q = -1 marks a missing
    meet or join.  Rules in order SC1, SC2, SC2', SC3, SC3', SC4 (i, ii),
    SC5 (i, ii), SC5' (i, ii).
    """
    n = len(M)
    rel = (L, U)
    out = set()

    def add(rule, x, y, z, kind, p, q):
        if p == q:
            return
        if p >= 0 and q >= 0 and rel[kind][p][q]:
            return
        out.add((rule, x, y, z, kind, p, q))

    for x in range(n):
        for y in range(n):
            if x != y and leq[x][y]:
                for kind in (0, 1):
                    add(0, x, y, -1, kind, x, y)
                    add(0, x, y, -1, kind, y, x)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                m_xy, m_yz, j_xy = M[x][y], M[y][z], J[x][y]
                if L[x][y] and L[x][z] and L[y][z]:
                    add(1, x, y, z, 0, m_xy, z)
                    add(1, x, y, z, 0, x, m_yz)
                if U[x][y] and U[x][z] and U[y][z]:
                    add(2, x, y, z, 1, j_xy, z)
                    add(2, x, y, z, 1, x, J[y][z])
                if U[x][y] and U[x][z] and L[y][z]:
                    add(3, x, y, z, 1, x, m_yz)
                if L[x][z] and L[y][z] and U[x][y]:
                    add(4, x, y, z, 0, j_xy, z)
                if leq[x][z] and U[x][y] and L[y][z]:
                    add(5, x, y, z, 0, j_xy, z)
                    add(6, x, y, z, 1, x, m_yz)
                if leq[x][z] and U[x][y] and L[z][y]:
                    add(7, x, y, z, 1, x, m_yz)
                    add(8, x, y, z, 0, z, j_xy)
                if leq[x][z] and U[y][x] and L[y][z]:
                    add(9, x, y, z, 1, m_yz, x)
                    add(10, x, y, z, 0, j_xy, z)
    return out
