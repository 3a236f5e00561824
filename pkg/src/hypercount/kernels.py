"""Bitmask kernels behind the matching, cover and search routines.

Every function here is written in the numba-compatible subset of Python and
passed through :func:`hypercount._accel.jit`, so the same source runs either
compiled or interpreted. The one exception is :func:`brute_extremal_numpy`,
a vectorised enumerator kept deliberately separate from the DFS it checks.

Conventions: a vertex set is an int64 bitmask (bit ``v - 1`` for vertex
``v``); a family of edges is an int64 array of such masks; a sub-family of a
fixed edge universe (at most 62 edges) is an int64 bitmask over edge indices.
"""

from __future__ import annotations

import numpy as np

from ._accel import jit

KIND_CONST = 0
KIND_SIZE = 1
KIND_CO = 2
KIND_SUNFLOWER = 3


@jit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@jit
def ipow(base, exp):
    r = 1
    for _ in range(exp):
        r *= base
    return r


@jit
def small_comb(d, l):
    if l < 0 or d < l:
        return 0
    r = 1
    for j in range(l):
        r = r * (d - j) // (j + 1)
    return r


@jit
def max_matching(masks, target):
    """Largest set of pairwise disjoint masks, scanned in array order.

    With ``target > 0`` the search stops as soon as a matching of that size
    is found (and prunes branches that cannot reach it). Returns
    ``(size, indices)``; the witness is the first maximum matching in
    lexicographic order of index sequences.
    """
    m = masks.shape[0]
    best_sel = np.empty(64, np.int64)
    if m == 0:
        return 0, best_sel[:0].copy()
    kmin = 64
    for i in range(m):
        c = popcount(masks[i])
        if c < kmin:
            kmin = c
    suffix = np.zeros(m + 1, np.int64)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]
    sel = np.empty(64, np.int64)
    used = np.zeros(65, np.int64)
    pos = np.zeros(65, np.int64)
    best = 0
    depth = 0
    while depth >= 0:
        i = pos[depth]
        u = used[depth]
        while i < m and (masks[i] & u) != 0:
            i += 1
        if i >= m:
            depth -= 1
            continue
        ub = depth + popcount(suffix[i] & ~u) // kmin
        thresh = best if target <= 0 else target - 1
        if ub <= thresh:
            depth -= 1
            continue
        pos[depth] = i + 1
        sel[depth] = i
        used[depth + 1] = u | masks[i]
        depth += 1
        pos[depth] = i + 1
        if depth > best:
            best = depth
            best_sel[:depth] = sel[:depth]
            if target > 0 and best >= target:
                break
    return best, best_sel[:best].copy()


@jit
def min_cover(masks, n):
    """Minimum vertex set meeting every mask; returns ``(size, cover_mask)``.

    Branches on the vertices (ascending) of the first uncovered edge; the
    lower bound is a greedy packing of uncovered edges.
    """
    m = masks.shape[0]
    best = n + 1
    best_cov = 0
    cov = np.zeros(n + 2, np.int64)
    rem = np.zeros(n + 2, np.int64)
    depth = 0
    entering = True
    while depth >= 0:
        if entering:
            entering = False
            c = cov[depth]
            first = -1
            lb = 0
            taken = 0
            for i in range(m):
                e = masks[i]
                if e & c == 0:
                    if first < 0:
                        first = i
                    if e & taken == 0:
                        taken |= e
                        lb += 1
            if first < 0:
                if depth < best:
                    best = depth
                    best_cov = c
                depth -= 1
                continue
            if depth + lb >= best:
                depth -= 1
                continue
            rem[depth] = masks[first]
        r = rem[depth]
        if r == 0:
            depth -= 1
            continue
        low = r & -r
        rem[depth] = r ^ low
        cov[depth + 1] = cov[depth] | low
        depth += 1
        entering = True
    return best, best_cov


@jit
def objective_value(codeg, kind, param, size):
    if kind == KIND_CONST:
        return 0
    if kind == KIND_SIZE:
        return size
    tot = 0
    if kind == KIND_CO:
        for d in codeg:
            tot += ipow(d, param)
    else:
        for d in codeg:
            tot += small_comb(d, param)
    return tot


@jit
def objective_increment(d, kind, param):
    """Change of the objective when one codegree moves from d to d + 1."""
    if kind == KIND_CO:
        return ipow(d + 1, param) - ipow(d, param)
    if kind == KIND_SUNFLOWER:
        return small_comb(d, param - 1)
    return 0


@jit
def _would_exceed(masks, chosen, nchosen, e, s, tmp):
    # True if adding e to the chosen edges creates a matching of size s + 1.
    if s <= 0:
        return True
    cnt = 0
    for t in range(nchosen):
        f = masks[chosen[t]]
        if f & e == 0:
            tmp[cnt] = f
            cnt += 1
    if cnt < s:
        return False
    if s == 1:
        return True
    got, _ = max_matching(tmp[:cnt], s)
    return got >= s


@jit
def extremal_dfs(masks, sub_idx, n_sub, n, s, kind, param, degree_cap, max_store):
    """Include/skip DFS over the edge universe in index order.

    Enumerates every sub-family with matching number at most ``s`` (and
    vertex degrees at most ``degree_cap`` when it is non-negative), pruning a
    node when its monotone completion bound falls below the incumbent.
    Returns ``(optimum, n_optimal, stored_bitmasks, nodes)``.
    """
    m = masks.shape[0]
    kk = sub_idx.shape[1]
    suffix = np.zeros((m + 1, n_sub), np.int64)
    for i in range(m - 1, -1, -1):
        for t in range(n_sub):
            suffix[i, t] = suffix[i + 1, t]
        for j in range(kk):
            suffix[i, sub_idx[i, j]] += 1
    codeg = np.zeros(n_sub, np.int64)
    scratch = np.zeros(n_sub, np.int64)
    deg = np.zeros(n, np.int64)
    member = np.zeros(m + 1, np.int64)
    chosen = np.empty(m + 1, np.int64)
    tmp = np.empty(m + 1, np.int64)
    state = np.zeros(m + 1, np.int64)
    nchosen = 0
    cur_val = objective_value(codeg, kind, param, 0)
    cur_bits = 0
    best = -1
    count = 0
    cap = 1024
    store = np.empty(cap, np.int64)
    nstore = 0
    nodes = 0
    pos = 0
    while pos >= 0:
        if pos == m:
            nodes += 1
            if cur_val > best:
                best = cur_val
                count = 0
                nstore = 0
            if cur_val == best:
                count += 1
                if nstore < max_store:
                    if nstore == cap:
                        cap *= 2
                        grown = np.empty(cap, np.int64)
                        grown[:nstore] = store[:nstore]
                        store = grown
                    store[nstore] = cur_bits
                    nstore += 1
            pos -= 1
            continue
        st = state[pos]
        if st == 0:
            nodes += 1
            if kind == KIND_SIZE:
                ub = nchosen + (m - pos)
            elif kind == KIND_CONST:
                ub = 0
            else:
                for t in range(n_sub):
                    scratch[t] = codeg[t] + suffix[pos, t]
                ub = objective_value(scratch, kind, param, 0)
            if ub < best:
                pos -= 1
                continue
            state[pos] = 1
            e = masks[pos]
            ok = True
            if degree_cap >= 0:
                for v in range(n):
                    if (e >> v) & 1 and deg[v] >= degree_cap:
                        ok = False
                        break
            if ok and _would_exceed(masks, chosen, nchosen, e, s, tmp):
                ok = False
            if ok:
                member[pos] = 1
                chosen[nchosen] = pos
                nchosen += 1
                for j in range(kk):
                    t = sub_idx[pos, j]
                    cur_val += objective_increment(codeg[t], kind, param)
                    codeg[t] += 1
                if kind == KIND_SIZE:
                    cur_val += 1
                for v in range(n):
                    if (e >> v) & 1:
                        deg[v] += 1
                cur_bits |= np.int64(1) << pos
                pos += 1
                state[pos] = 0
            continue
        if st == 1:
            state[pos] = 2
            if member[pos]:
                member[pos] = 0
                nchosen -= 1
                e = masks[pos]
                for j in range(kk):
                    t = sub_idx[pos, j]
                    codeg[t] -= 1
                    cur_val -= objective_increment(codeg[t], kind, param)
                if kind == KIND_SIZE:
                    cur_val -= 1
                for v in range(n):
                    if (e >> v) & 1:
                        deg[v] -= 1
                cur_bits &= ~(np.int64(1) << pos)
            pos += 1
            state[pos] = 0
            continue
        pos -= 1
    return best, count, store[:nstore].copy(), nodes


@jit
def brute_extremal_loop(m, forbidden, inc, kind, param, max_store):
    """Unpruned scan of all ``2**m`` sub-families (compiled twin of the numpy scan)."""
    best = -1
    count = 0
    cap = 1024
    store = np.empty(cap, np.int64)
    nstore = 0
    n_sub = inc.shape[0]
    codeg = np.zeros(n_sub, np.int64)
    total = np.int64(1) << m
    x = np.int64(0)
    while x < total:
        ok = True
        for f in forbidden:
            if x & f == f:
                ok = False
                break
        if ok:
            for t in range(n_sub):
                codeg[t] = popcount(x & inc[t])
            val = objective_value(codeg, kind, param, popcount(x))
            if val > best:
                best = val
                count = 0
                nstore = 0
            if val == best:
                count += 1
                if nstore < max_store:
                    if nstore == cap:
                        cap *= 2
                        grown = np.empty(cap, np.int64)
                        grown[:nstore] = store[:nstore]
                        store = grown
                    store[nstore] = x
                    nstore += 1
        x += 1
    return best, count, store[:nstore].copy()


def brute_extremal_numpy(m, forbidden, inc, kind, param, max_store, chunk=1 << 18):
    """Vectorised unpruned scan of all ``2**m`` sub-families.

    ``forbidden`` holds the edge-index bitmasks of every (s+1)-matching of
    the universe; a sub-family is feasible iff it contains none of them.
    ``inc[t]`` is the bitmask of universe edges containing the t-th
    (k-1)-set, so codegrees are popcounts.
    """
    forbidden = np.asarray(forbidden, dtype=np.int64)
    inc = np.asarray(inc, dtype=np.int64)
    best, count = -1, 0
    kept: list[np.ndarray] = []
    total = 1 << m
    for start in range(0, total, chunk):
        x = np.arange(start, min(start + chunk, total), dtype=np.int64)
        ok = np.ones(x.shape[0], dtype=bool)
        for f in forbidden:
            ok &= (x & f) != f
        x = x[ok]
        if x.size == 0:
            continue
        if kind == KIND_CONST:
            val = np.zeros(x.shape[0], dtype=np.int64)
        elif kind == KIND_SIZE:
            val = np.bitwise_count(x).astype(np.int64)
        else:
            d = np.bitwise_count(x[:, None] & inc[None, :]).astype(np.int64)
            if kind == KIND_CO:
                val = (d**param).sum(axis=1)
            else:
                r = np.ones_like(d)
                for j in range(param):
                    r = r * (d - j) // (j + 1)
                val = r.sum(axis=1)
        top = int(val.max())
        if top > best:
            best, count, kept = top, 0, []
        if top == best:
            hit = x[val == best]
            count += int(hit.size)
            room = max_store - sum(a.size for a in kept)
            if room > 0:
                kept.append(hit[:room])
    store = np.concatenate(kept) if kept else np.empty(0, dtype=np.int64)
    return best, count, store


@jit
def _feasible_adds(masks, member, conflict, mlist, size, s, exclude, cand, tmp):
    m = masks.shape[0]
    nc = 0
    if s <= 0:
        return 0
    for c in range(m):
        if member[c] or c == exclude:
            continue
        if conflict[c] < s:
            cand[nc] = c
            nc += 1
            continue
        if s == 1:
            continue
        cnt = 0
        e = masks[c]
        for t in range(size):
            f = mlist[t]
            if masks[f] & e == 0:
                tmp[cnt] = masks[f]
                cnt += 1
        got, _ = max_matching(tmp[:cnt], s)
        if got < s:
            cand[nc] = c
            nc += 1
    return nc


@jit
def _delta(sub_idx, codeg, c, kind, param, sign):
    if kind == KIND_SIZE:
        return sign
    if kind == KIND_CONST:
        return 0
    tot = 0
    for j in range(sub_idx.shape[1]):
        d = codeg[sub_idx[c, j]]
        if sign > 0:
            tot += objective_increment(d, kind, param)
        else:
            tot -= objective_increment(d - 1, kind, param)
    return tot


@jit
def _apply(c, sign, sub_idx, codeg, member, mlist, where, size, conflict, disj):
    m = member.shape[0]
    for j in range(sub_idx.shape[1]):
        codeg[sub_idx[c, j]] += sign
    for x in range(m):
        if disj[c, x]:
            conflict[x] += sign
    if sign > 0:
        member[c] = True
        mlist[size] = c
        where[c] = size
        return size + 1
    member[c] = False
    last = mlist[size - 1]
    slot = where[c]
    mlist[slot] = last
    where[last] = slot
    where[c] = -1
    return size - 1


@jit
def hill_climb_run(masks, sub_idx, n_sub, disj, s, kind, param, rnd, patience):
    """One seeded local-search run from the empty family.

    Each step draws a move type uniformly from add / remove / swap, then a
    uniform target among the feasible ones (adds and swaps keep the matching
    number at most ``s``). Improving moves are always taken; equal-value
    moves are taken until ``patience`` consecutive sideways moves have been
    made since the last improvement. ``rnd`` is a ``(steps, 3)`` array of
    uniforms in [0, 1). Returns ``(best_value, best_member_flags, accepted)``.
    """
    m = masks.shape[0]
    member = np.zeros(m, np.bool_)
    mlist = np.empty(m, np.int64)
    where = np.full(m, -1, np.int64)
    conflict = np.zeros(m, np.int64)
    codeg = np.zeros(n_sub, np.int64)
    cand = np.empty(m, np.int64)
    tmp = np.empty(m, np.int64)
    size = 0
    cur = objective_value(codeg, kind, param, 0)
    best = cur
    best_member = member.copy()
    sideways = 0
    accepted = 0
    for t in range(rnd.shape[0]):
        move = int(rnd[t, 0] * 3.0)
        if move > 2:
            move = 2
        if move == 0:
            nc = _feasible_adds(masks, member, conflict, mlist, size, s, -1, cand, tmp)
            if nc == 0:
                continue
            c = cand[min(int(rnd[t, 1] * nc), nc - 1)]
            delta = _delta(sub_idx, codeg, c, kind, param, 1)
            if delta > 0 or (delta == 0 and sideways < patience):
                sideways = 0 if delta > 0 else sideways + 1
                size = _apply(c, 1, sub_idx, codeg, member, mlist, where, size, conflict, disj)
                cur += delta
                accepted += 1
        elif move == 1:
            if size == 0:
                continue
            r = mlist[min(int(rnd[t, 1] * size), size - 1)]
            delta = _delta(sub_idx, codeg, r, kind, param, -1)
            if delta > 0 or (delta == 0 and sideways < patience):
                sideways = 0 if delta > 0 else sideways + 1
                size = _apply(r, -1, sub_idx, codeg, member, mlist, where, size, conflict, disj)
                cur += delta
                accepted += 1
        else:
            if size == 0:
                continue
            r = mlist[min(int(rnd[t, 1] * size), size - 1)]
            d1 = _delta(sub_idx, codeg, r, kind, param, -1)
            size = _apply(r, -1, sub_idx, codeg, member, mlist, where, size, conflict, disj)
            nc = _feasible_adds(masks, member, conflict, mlist, size, s, r, cand, tmp)
            if nc == 0:
                size = _apply(r, 1, sub_idx, codeg, member, mlist, where, size, conflict, disj)
                continue
            c = cand[min(int(rnd[t, 2] * nc), nc - 1)]
            delta = d1 + _delta(sub_idx, codeg, c, kind, param, 1)
            if delta > 0 or (delta == 0 and sideways < patience):
                sideways = 0 if delta > 0 else sideways + 1
                size = _apply(c, 1, sub_idx, codeg, member, mlist, where, size, conflict, disj)
                cur += delta
                accepted += 1
            else:
                size = _apply(r, 1, sub_idx, codeg, member, mlist, where, size, conflict, disj)
        if cur > best:
            best = cur
            best_member[:] = member
    return best, best_member, accepted
