# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled hot kernels.

Same contracts as ``_pykernels``; the test-suite checks both backends agree.
Coordinates are 64-bit integers, which is ample for window-scale inputs.
"""

import numpy as np
cimport numpy as cnp

from libc.stdlib cimport malloc, free

ctypedef cnp.int64_t i64

cdef int DX[4]
cdef int DY[4]
DX[:] = [0, 1, 0, -1]
DY[:] = [1, 0, -1, 0]


cdef inline i64 floordiv(i64 a, i64 b):
    cdef i64 q = a // b
    return q


def grow(glues, offer_ptr, offer_types, seed_x, seed_y, seed_t,
         i64 cx, i64 cy, i64 radius, bint check_conflicts):
    cdef i64[:, :] g = np.ascontiguousarray(glues, dtype=np.int64)
    cdef i64[:, :] ptr = np.ascontiguousarray(offer_ptr, dtype=np.int64)
    cdef i64[:] offers = np.ascontiguousarray(offer_types, dtype=np.int64)
    cdef i64[:] sx = np.ascontiguousarray(seed_x, dtype=np.int64)
    cdef i64[:] sy = np.ascontiguousarray(seed_y, dtype=np.int64)
    cdef i64[:] st = np.ascontiguousarray(seed_t, dtype=np.int64)
    cdef i64 n_types = g.shape[0]
    cdef i64 width = 2 * radius + 1
    cdef i64 xlo = cx - radius
    cdef i64 ylo = cy - radius
    cdef i64 n_cells = width * width
    cdef i64 n_seed = sx.shape[0]
    cdef i64 cap = n_cells + n_seed + 1
    cdef i64 n_total = cap

    grid_arr = np.full(n_cells, -1, dtype=np.int64)
    gen_arr = np.full(n_cells, -1, dtype=np.int64)
    cdef i64[:] grid = grid_arr
    cdef i64[:] gen_of = gen_arr
    xs_arr = np.zeros(cap, dtype=np.int64)
    ys_arr = np.zeros(cap, dtype=np.int64)
    ts_arr = np.zeros(cap, dtype=np.int64)
    par_arr = np.zeros(cap, dtype=np.int64)
    gens_arr = np.zeros(cap, dtype=np.int64)
    cdef i64[:] xs = xs_arr
    cdef i64[:] ys = ys_arr
    cdef i64[:] ts = ts_arr
    cdef i64[:] parents = par_arr
    cdef i64[:] gens = gens_arr

    cdef i64 count = 0
    cdef i64 i, k, d, opp, gl, nx, ny, cell, u, idx, x, y, t, key, rest
    cdef i64 generation = 0
    cdef i64 front_lo = 0, front_hi = 0, n_keys
    conflict = None

    for i in range(n_seed):
        cell = (sy[i] - ylo) * width + (sx[i] - xlo)
        grid[cell] = st[i]
        gen_of[cell] = 0
        xs[count] = sx[i]
        ys[count] = sy[i]
        ts[count] = st[i]
        parents[count] = -1
        gens[count] = 0
        count += 1
    front_hi = count

    keys_arr = np.zeros(16, dtype=np.int64)
    cdef i64[:] keys
    while front_hi > front_lo and conflict is None:
        generation += 1
        n_keys = 0
        keys = keys_arr
        for idx in range(front_lo, front_hi):
            x = xs[idx]
            y = ys[idx]
            t = ts[idx]
            for d in range(4):
                gl = g[t, d]
                if gl == 0:
                    continue
                nx = x + DX[d]
                ny = y + DY[d]
                if nx < xlo or nx >= xlo + width or ny < ylo or ny >= ylo + width:
                    continue
                cell = (ny - ylo) * width + (nx - xlo)
                if grid[cell] != -1:
                    continue
                opp = (d + 2) % 4
                for k in range(ptr[opp, gl], ptr[opp, gl + 1]):
                    u = offers[k]
                    if n_keys == keys.shape[0]:
                        keys_arr = np.concatenate([keys_arr, np.zeros(n_keys, dtype=np.int64)])
                        keys = keys_arr
                    keys[n_keys] = (cell * n_types + u) * n_total + idx
                    n_keys += 1
        sorted_keys = np.sort(keys_arr[:n_keys])
        keys = sorted_keys
        front_lo = front_hi
        for i in range(n_keys):
            key = keys[i]
            idx = key % n_total
            rest = key // n_total
            u = rest % n_types
            cell = rest // n_types
            if grid[cell] == -1:
                grid[cell] = u
                gen_of[cell] = generation
                xs[count] = cell % width + xlo
                ys[count] = cell // width + ylo
                ts[count] = u
                parents[count] = idx
                gens[count] = generation
                count += 1
            elif check_conflicts and grid[cell] != u and gen_of[cell] == generation:
                conflict = (int(cell % width + xlo), int(cell // width + ylo),
                            int(grid[cell]), int(u))
                break
        front_hi = count
        keys = keys_arr

    return (xs_arr[:count].copy(), ys_arr[:count].copy(), ts_arr[:count].copy(),
            par_arr[:count].copy(), gens_arr[:count].copy(), conflict)


cdef inline int sign(i64 v):
    return (v > 0) - (v < 0)


cdef inline bint on_segment(i64 sa, i64 ha, i64 sb, i64 hb, i64 sp, i64 hp):
    if (sb - sa) * (hp - ha) - (hb - ha) * (sp - sa) != 0:
        return False
    if sp < (sa if sa < sb else sb) or sp > (sb if sa < sb else sa):
        return False
    if hp < (ha if ha < hb else hb) or hp > (hb if ha < hb else ha):
        return False
    return True


cdef i64 crossings_below(i64* ss, i64* hs, i64 n, i64 sp, i64 hp):
    cdef i64 count = 0
    cdef int prev_sign = sign(ss[0] - sp)
    cdef i64 sa = ss[0], ha = hs[0], sb, hb, lhs, run_h = 0
    cdef bint in_run = False
    cdef int sg
    cdef i64 k
    for k in range(1, n):
        sb = ss[k]
        hb = hs[k]
        sg = sign(sb - sp)
        if sg == 0:
            if not in_run:
                in_run = True
                run_h = hb
            continue
        if sg != prev_sign:
            if in_run:
                if run_h < hp:
                    count += 1
            else:
                lhs = (ha - hp) * (sb - sa) + (hb - ha) * (sp - sa)
                if (sb - sa > 0 and lhs < 0) or (sb - sa < 0 and lhs > 0):
                    count += 1
        prev_sign = sg
        sa = sb
        ha = hb
        in_run = False
    return count


def classify_periodic(bx, by, i64 wx, i64 wy, px, py):
    cdef i64[:] vx = np.ascontiguousarray(bx, dtype=np.int64)
    cdef i64[:] vy = np.ascontiguousarray(by, dtype=np.int64)
    cdef i64[:] qx = np.ascontiguousarray(px, dtype=np.int64)
    cdef i64[:] qy = np.ascontiguousarray(py, dtype=np.int64)
    cdef i64 n = vx.shape[0]
    cdef i64 m = qx.shape[0]
    cdef i64 period = wx * wx + wy * wy
    out_arr = np.zeros(m, dtype=np.int8)
    cdef cnp.int8_t[:] out = out_arr
    cdef i64* bs = <i64*> malloc(n * sizeof(i64))
    cdef i64* bh = <i64*> malloc(n * sizeof(i64))
    cdef i64 smin, smax, i, idx, k, kmin, kmax, sp, hp, shift, length, cap
    cdef i64* ss = NULL
    cdef i64* hs = NULL
    cdef bint on
    try:
        for i in range(n):
            bs[i] = wx * vx[i] + wy * vy[i]
            bh[i] = -wy * vx[i] + wx * vy[i]
        smin = bs[0]
        smax = bs[0]
        for i in range(n):
            if bs[i] < smin:
                smin = bs[i]
            if bs[i] > smax:
                smax = bs[i]
        cap = 0
        for idx in range(m):
            sp = wx * qx[idx] + wy * qy[idx]
            hp = -wy * qx[idx] + wx * qy[idx]
            kmin = floordiv(sp - smax, period) - 1
            kmax = floordiv(sp - smin, period) + 1
            length = (kmax - kmin + 1) * (n - 1) + 1
            if length > cap:
                free(ss)
                free(hs)
                cap = length
                ss = <i64*> malloc(cap * sizeof(i64))
                hs = <i64*> malloc(cap * sizeof(i64))
            length = 0
            for k in range(kmin, kmax + 1):
                shift = k * period
                for i in range(n - 1):
                    ss[length] = bs[i] + shift
                    hs[length] = bh[i]
                    length += 1
            ss[length] = bs[n - 1] + kmax * period
            hs[length] = bh[n - 1]
            length += 1
            on = False
            for i in range(length - 1):
                if on_segment(ss[i], hs[i], ss[i + 1], hs[i + 1], sp, hp):
                    on = True
                    break
            if on:
                out[idx] = 0
            elif crossings_below(ss, hs, length, sp, hp) % 2 == 1:
                out[idx] = 1
            else:
                out[idx] = -1
    finally:
        free(bs)
        free(bh)
        free(ss)
        free(hs)
    return out_arr


def classify_closed(vx, vy, px, py):
    cdef i64[:] cxs = np.ascontiguousarray(vx, dtype=np.int64)
    cdef i64[:] cys = np.ascontiguousarray(vy, dtype=np.int64)
    cdef i64[:] qx = np.ascontiguousarray(px, dtype=np.int64)
    cdef i64[:] qy = np.ascontiguousarray(py, dtype=np.int64)
    cdef i64 n = cxs.shape[0]
    cdef i64 m = qx.shape[0]
    out_arr = np.zeros(m, dtype=np.int8)
    cdef cnp.int8_t[:] out = out_arr
    cdef i64* ss = <i64*> malloc(n * sizeof(i64))
    cdef i64* hs = <i64*> malloc(n * sizeof(i64))
    cdef i64 idx, i, start, length, sp, hp
    cdef bint on
    try:
        for idx in range(m):
            sp = qx[idx]
            hp = qy[idx]
            on = False
            for i in range(n - 1):
                if on_segment(cxs[i], cys[i], cxs[i + 1], cys[i + 1], sp, hp):
                    on = True
                    break
            if on:
                out[idx] = 0
                continue
            start = -1
            for i in range(n - 1):
                if cxs[i] != sp:
                    start = i
                    break
            if start < 0:
                out[idx] = -1
                continue
            length = 0
            for i in range(start, n - 1):
                ss[length] = cxs[i]
                hs[length] = cys[i]
                length += 1
            for i in range(start + 1):
                ss[length] = cxs[i]
                hs[length] = cys[i]
                length += 1
            if crossings_below(ss, hs, length, sp, hp) % 2 == 1:
                out[idx] = 1
            else:
                out[idx] = -1
    finally:
        free(ss)
        free(hs)
    return out_arr


def longest_residue_path(i64 a, i64 b, i64 c, i64 limit):
    cdef i64 size = a * c
    cdef i64 target = size if size < limit else limit
    cdef i64 xr, yr, node, d, x, y, kk, nxt, depth, best
    nbr_arr = np.zeros((size, 4), dtype=np.int64)
    cdef i64[:, :] nbr = nbr_arr
    for xr in range(a):
        for yr in range(c):
            node = xr * c + yr
            for d in range(4):
                x = xr + DX[d]
                y = yr + DY[d]
                kk = floordiv(x, a)
                nbr[node, d] = (x - kk * a) * c + (y - kk * b) % c
    visited_arr = np.zeros(size, dtype=np.uint8)
    cdef cnp.uint8_t[:] visited = visited_arr
    stack_node_arr = np.zeros(size + 1, dtype=np.int64)
    stack_dir_arr = np.zeros(size + 1, dtype=np.int64)
    cdef i64[:] stack_node = stack_node_arr
    cdef i64[:] stack_dir = stack_dir_arr
    depth = 1
    stack_node[0] = 0
    stack_dir[0] = 0
    visited[0] = 1
    best = 1
    while depth > 0 and best < target:
        node = stack_node[depth - 1]
        d = stack_dir[depth - 1]
        if d == 4:
            visited[node] = 0
            depth -= 1
            continue
        stack_dir[depth - 1] = d + 1
        nxt = nbr[node, d]
        if not visited[nxt]:
            visited[nxt] = 1
            stack_node[depth] = nxt
            stack_dir[depth] = 0
            depth += 1
            if depth > best:
                best = depth
    return best
