"""Pure-python enumeration kernels.

Reference implementations of the hot loops: self-avoiding-walk profiles and
all-walk interaction sums.  The compiled extension (asaw._fast) implements
the same functions with the same call signatures and exact integer outputs;
asaw.kernels picks one at import time.

All outputs are integer-valued and independent of the attraction strength:
weights enter later as u^n (1+kappa)^pairs with u the uniform step
probability, and interaction sums are returned as integer coefficient
tuples of polynomials in t = 1 + kappa.

``prefix`` restricts every function to walks extending the given first
steps (the prefix walk itself included), which is how callers parallelize:
disjoint prefixes partition the set of walks of length >= len(prefix).
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

Vec = Tuple[int, ...]


def _unit_axis(s: Vec) -> int:
    """0-based axis if s is a signed unit vector, else -1."""
    axis = -1
    for i, c in enumerate(s):
        if c == 0:
            continue
        if axis >= 0 or abs(c) != 1:
            return -1
        axis = i
    return axis


def _partner_shifts(d: int):
    """For each axis a: the 2(d-1) perpendicular unit shifts."""
    out = []
    for a in range(d):
        shifts = []
        for b in range(d):
            if b == a:
                continue
            for sign in (1, -1):
                v = [0] * d
                v[b] = sign
                shifts.append(tuple(v))
        out.append(tuple(shifts))
    return out


def _add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _edge(u: Vec, v: Vec):
    return (u, v) if u <= v else (v, u)


# ---------------------------------------------------------------------------
# SAW profiles


def saw_profiles(d: int, steps, n_max: int, prefix=(), want_end: bool = True):
    """Histograms over self-avoiding walks from the origin.

    Returns (saw, bridge, hs, end):
      saw/bridge/hs: {(n, pairs): count} for SAWs / bridges / half-space walks,
      end: {(x, n, pairs): count} over SAWs (None unless want_end).
    """
    steps = tuple(tuple(s) for s in steps)
    shifts = _partner_shifts(d)
    axes = {s: _unit_axis(s) for s in steps}
    saw: Dict[tuple, int] = {}
    bridge: Dict[tuple, int] = {}
    hs: Dict[tuple, int] = {}
    end: Optional[Dict[tuple, int]] = {} if want_end else None

    o = (0,) * d
    verts = [o]
    vset = {o}
    eset = set()

    def record(n, pairs, min1, max1):
        key = (n, pairs)
        saw[key] = saw.get(key, 0) + 1
        if end is not None:
            ekey = (verts[-1], n, pairs)
            end[ekey] = end.get(ekey, 0) + 1
        if n == 0 or min1 > 0:
            hs[key] = hs.get(key, 0) + 1
            if verts[-1][0] == max1:
                bridge[key] = bridge.get(key, 0) + 1

    def extend(s, pairs):
        """Try to append step s; return new pair count or None."""
        u = verts[-1]
        v = _add(u, s)
        if v in vset:
            return None
        a = axes[s]
        if a >= 0:
            e = _edge(u, v)
            for sh in shifts[a]:
                if (_add(e[0], sh), _add(e[1], sh)) in eset:
                    pairs += 1
            eset.add(e)
        verts.append(v)
        vset.add(v)
        return pairs

    def retract(s):
        v = verts.pop()
        vset.remove(v)
        if axes[s] >= 0:
            eset.remove(_edge(verts[-1], v))

    def rec(n, pairs, min1, max1):
        record(n, pairs, min1, max1)
        if n == n_max:
            return
        for s in steps:
            p2 = extend(s, pairs)
            if p2 is None:
                continue
            x1 = verts[-1][0]
            rec(n + 1, p2, min(min1, x1), max(max1, x1))
            retract(s)

    # install the prefix; an impossible prefix contributes nothing
    pairs = 0
    min1, max1 = 10 ** 9, 0
    for s in prefix:
        if len(verts) - 1 >= n_max:
            return saw, bridge, hs, end
        p2 = extend(tuple(s), pairs)
        if p2 is None:
            return saw, bridge, hs, end
        pairs = p2
        min1 = min(min1, verts[-1][0])
        max1 = max(max1, verts[-1][0])
    rec(len(verts) - 1, pairs, min1, max1)
    return saw, bridge, hs, end


def saw_walks(d: int, steps, n_max: int, cls: str = "saw", prefix=()):
    """All walks of a class, as vertex tuples, in DFS order.

    cls: 'saw', 'hs' (half-space), 'bridge', or 'polygon' (rooted, oriented,
    returning to the origin on the last step).
    """
    steps = tuple(tuple(s) for s in steps)
    stepset = set(steps)
    o = (0,) * d
    out = []
    verts = [o]
    vset = {o}

    def record():
        n = len(verts) - 1
        if cls == "saw":
            out.append(tuple(verts))
        elif cls in ("hs", "bridge"):
            firsts = [v[0] for v in verts]
            if n == 0 or min(firsts[1:]) > 0:
                if cls == "hs" or firsts[-1] == max(firsts):
                    out.append(tuple(verts))
        elif cls == "polygon":
            neg_last = tuple(-c for c in verts[-1])
            if n >= 2 and neg_last in stepset:
                out.append(tuple(verts) + (o,))
        else:
            raise ValueError(f"unknown walk class {cls!r}")

    def rec():
        record()
        if len(verts) - 1 == n_max - (1 if cls == "polygon" else 0):
            return
        for s in steps:
            v = _add(verts[-1], s)
            if v in vset:
                continue
            verts.append(v)
            vset.add(v)
            rec()
            verts.pop()
            vset.remove(v)

    for s in prefix:
        v = _add(verts[-1], tuple(s))
        if v in vset:
            return out
        verts.append(v)
        vset.add(v)
    rec()
    return out


# ---------------------------------------------------------------------------
# Interaction classification shared by the all-walk kernels


def _pair_classes(verts):
    """Classify index pairs (i,j), j>i+1: coincidences and adjacent pairs.

    Returns (coin, plaq): sets of (i,j).  A pair is adjacent when steps i and
    j-1 are unit steps whose four endpoints form a plaquette; coincidence
    means verts[i] == verts[j].
    """
    n = len(verts) - 1
    coin = set()
    plaq = set()
    unit = [_unit_axis(tuple(b - a for a, b in zip(verts[k], verts[k + 1])))
            for k in range(n)]
    for j in range(2, n + 1):
        vj = verts[j]
        vj1 = verts[j - 1]
        for i in range(j - 1):
            if verts[i] == vj:
                coin.add((i, j))
                continue
            if j < i + 3 or unit[i] < 0 or unit[j - 1] < 0:
                continue
            vi, vi1 = verts[i], verts[i + 1]
            # opposite sides of a plaquette: {vj1, vj} = {vi, vi1} + delta
            # with delta a unit shift perpendicular to the step axis
            if vi1 == vj1:
                continue
            ax = unit[i]
            d1 = tuple(a - b for a, b in zip(vj1, vi))
            if sum(map(abs, d1)) == 1 and d1[ax] == 0 and \
               tuple(a - b for a, b in zip(vj, vi1)) == d1:
                plaq.add((i, j))
                continue
            d2 = tuple(a - b for a, b in zip(vj, vi))
            if sum(map(abs, d2)) == 1 and d2[ax] == 0 and \
               tuple(a - b for a, b in zip(vj1, vi1)) == d2:
                plaq.add((i, j))
    return coin, plaq


def _iter_walks(d, steps, n, prefix):
    """Yield vertex lists of all n-step walks extending prefix."""
    steps = tuple(tuple(s) for s in steps)
    o = (0,) * d
    verts = [o]
    for s in prefix:
        verts.append(_add(verts[-1], tuple(s)))
    if len(verts) - 1 > n:
        return

    def rec():
        if len(verts) - 1 == n:
            yield verts
            return
        for s in steps:
            verts.append(_add(verts[-1], s))
            yield from rec()
            verts.pop()

    yield from rec()


def _poly_add(acc, poly):
    if len(acc) < len(poly):
        acc.extend([0] * (len(poly) - len(acc)))
    for i, c in enumerate(poly):
        acc[i] += c
    return acc


def _trim(poly):
    top = -1
    for i, c in enumerate(poly):
        if c:
            top = i
    return tuple(poly[:top + 1])


def j_profile(d: int, steps, n: int, prefix=()):
    """Sum of J_[0,n] over all n-step walks, by endpoint.

    Returns {x: coeff tuple}; coefficient k is the integer coefficient of
    t^k with t = 1 + kappa, before the uniform a-priori factor u^n.
    """
    out: Dict[Vec, list] = {}
    for verts in _iter_walks(d, steps, n, prefix):
        poly = _j_poly(verts)
        if any(poly):
            x = verts[-1]
            if x in out:
                _poly_add(out[x], poly)
            else:
                out[x] = list(poly)
    return {x: _trim(p) for x, p in out.items() if any(p)}


def _j_poly(verts):
    """J_[0,n](walk) as integer coefficients in t = 1+kappa.

    K values are monomials: K_[a,b] = t^(pairs in [a,b]) or 0 when the
    subwalk has a non-consecutive coincidence.  J then follows from the
    graph recursion K_[a,b] = K_[a+1,b] + sum_j J_[a,j] K_[j,b].
    """
    n = len(verts) - 1
    coin, plaq = _pair_classes(verts)
    # kexp[a][b]: exponent of K_[a,b], or -1 when K vanishes
    kexp = [[0] * (n + 1) for _ in range(n + 1)]
    for a in range(n + 1):
        row = kexp[a]
        for b in range(a + 2, n + 1):
            if row[b - 1] < 0:
                row[b] = -1
                continue
            e = row[b - 1]
            dead = False
            for i in range(a, b - 1):
                if (i, b) in coin:
                    dead = True
                    break
                if (i, b) in plaq:
                    e += 1
            row[b] = -1 if dead else e
    # J tables, by increasing interval length
    J = [[None] * (n + 1) for _ in range(n + 1)]
    for a in range(n + 1):
        for b in range(a, min(a + 2, n + 1)):
            J[a][b] = [1]
    for length in range(2, n + 1):
        for a in range(0, n + 1 - length):
            b = a + length
            poly = [0]
            if kexp[a][b] >= 0:
                poly = _poly_add(poly, [0] * kexp[a][b] + [1])
            if kexp[a + 1][b] >= 0:
                poly = _poly_add(poly, [0] * kexp[a + 1][b] + [-1])
            for j in range(a + 2, b):
                ke = kexp[j][b]
                if ke < 0:
                    continue
                sub = J[a][j]
                shifted = [0] * ke + [-c for c in sub]
                poly = _poly_add(poly, shifted)
            J[a][b] = poly
    return J[0][n]


def lace_profile(d: int, steps, n: int, lace_pack, prefix=()):
    """Per-lace-size interaction sums over all n-step walks, by endpoint.

    lace_pack: tuple of (m, lace_edges, comp_edges) with index-pair tuples.
    Returns {(x, m): coeff tuple} in t = 1 + kappa.
    """
    out: Dict[tuple, list] = {}
    binoms = _signed_binomials(n * n)
    for verts in _iter_walks(d, steps, n, prefix):
        coin, plaq = _pair_classes(verts)
        for m, lace_edges, comp_edges in lace_pack:
            sign = 1
            p = 0
            dead = False
            for ij in lace_edges:
                if ij in coin:
                    sign = -sign
                elif ij in plaq:
                    p += 1
                else:
                    dead = True
                    break
            if dead:
                continue
            q = 0
            for ij in comp_edges:
                if ij in coin:
                    dead = True
                    break
                if ij in plaq:
                    q += 1
            if dead:
                continue
            key = (verts[-1], m)
            acc = out.setdefault(key, [])
            # contribution: sign * kappa^p * t^q, with kappa = t - 1
            for i, b in enumerate(binoms[p]):
                idx = q + i
                if len(acc) <= idx:
                    acc.extend([0] * (idx + 1 - len(acc)))
                acc[idx] += sign * b
    return {k: _trim(v) for k, v in out.items() if any(v)}


def _signed_binomials(pmax):
    """Row p: coefficients of (t-1)^p in t."""
    rows = [[1]]
    for p in range(1, pmax + 1):
        prev = rows[-1]
        row = [0] * (p + 1)
        for i, c in enumerate(prev):
            row[i] -= c
            row[i + 1] += c
        rows.append(row)
    return rows


def pim_bound_profile(d: int, steps, n: int, comp_pack, prefix=()):
    """Coefficient-wise diagrammatic bound on the lace-size-m interaction sum.

    comp_pack: one entry per interval composition of [0, n]:
      (lace_edges, subs, etas, comp_by_k) where subs/etas are vertex index
      ranges (lo, hi) per subwalk (eta range may be None) and comp_by_k
      lists the compatible edges with right endpoint in interval k.
    Returns {x: coeff tuple} in t = 1 + kappa; each walk contributes
    kappa^p t^Q with p counting unit-norm lace displacements and Q the total
    internal-plus-memory adjacency pair count of the admissible subwalks.
    """
    steps = tuple(tuple(s) for s in steps)
    shifts = _partner_shifts(d)
    out: Dict[Vec, list] = {}
    binoms = _signed_binomials(len(comp_pack[0][0]) if comp_pack else 1)
    for verts in _iter_walks(d, steps, n, prefix):
        nv = len(verts)
        unit = [_unit_axis(tuple(b - a for a, b in zip(verts[k], verts[k + 1])))
                for k in range(nv - 1)]
        contrib: list = []
        for lace_edges, subs, etas, comp_by_k in comp_pack:
            # displacement factors r(omega_j - omega_i) over the lace edges
            p = 0
            ok = True
            for i, j in lace_edges:
                diff = tuple(a - b for a, b in zip(verts[j], verts[i]))
                if any(diff):
                    if max(map(abs, diff)) != 1:
                        ok = False
                        break
                    p += 1
            if not ok:
                continue
            Q = 0
            for k, (lo, hi) in enumerate(subs):
                if len(set(verts[lo:hi + 1])) != hi - lo + 1:
                    ok = False
                    break
                for i, j in comp_by_k[k]:
                    if verts[i] == verts[j]:
                        ok = False
                        break
                if not ok:
                    break
                sub_edges = {_edge(verts[t], verts[t + 1])
                             for t in range(lo, hi) if unit[t] >= 0}
                Q += _pair_count(sub_edges, shifts)
                eta = etas[k]
                if eta is not None:
                    eta_edges = {_edge(verts[t], verts[t + 1])
                                 for t in range(eta[0], eta[1]) if unit[t] >= 0}
                    Q += _cross_pair_count(sub_edges, eta_edges, shifts)
            if not ok:
                continue
            for i, b in enumerate(binoms[p]):
                idx = Q + i
                if len(contrib) <= idx:
                    contrib.extend([0] * (idx + 1 - len(contrib)))
                contrib[idx] += b
        if contrib:
            acc = out.setdefault(verts[-1], [])
            _poly_add(acc, contrib)
    return {x: _trim(v) for x, v in out.items() if any(v)}


def _edge_axis(e):
    for i, (a, b) in enumerate(zip(e[0], e[1])):
        if a != b:
            return i
    return -1


def _pair_count(edges, shifts):
    cnt = 0
    for e in edges:
        a = _edge_axis(e)
        for sh in shifts[a]:
            f = (_add(e[0], sh), _add(e[1], sh))
            if f in edges and e < f:
                cnt += 1
    return cnt


def _cross_pair_count(edges1, edges2, shifts):
    cnt = 0
    for e in edges1:
        a = _edge_axis(e)
        for sh in shifts[a]:
            if (_add(e[0], sh), _add(e[1], sh)) in edges2:
                cnt += 1
    return cnt
