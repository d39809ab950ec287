"""Pure-Python implementations of the hot kernels.

These mirror ``_ckernels.pyx`` line for line and are used whenever the
compiled extension is unavailable (or when ``TILEPUMP_PURE_PYTHON=1``).
All arithmetic is on Python integers, so results are exact.
"""

from __future__ import annotations

import numpy as np

_DX = (0, 1, 0, -1)
_DY = (1, 0, -1, 0)


def grow(glues, offer_ptr, offer_types, seed_x, seed_y, seed_t,
         cx, cy, radius, check_conflicts):
    """Canonical breadth-first growth inside an L-infinity window.

    Tiles attach generation by generation; inside a generation sites are
    committed in (y, x, type id, parent index) order, and the first type
    offered at a position wins.

    Returns ``(xs, ys, ts, parents, gens, conflict)`` where ``conflict`` is
    ``None`` or ``(x, y, t_kept, t_other)`` when conflict checking stopped
    the growth.
    """
    glues = [list(map(int, row)) for row in glues]
    ptr = [list(map(int, row)) for row in offer_ptr]
    offers = [int(v) for v in offer_types]
    n_types = len(glues)
    width = 2 * radius + 1
    xlo, ylo = cx - radius, cy - radius
    grid = [-1] * (width * width)
    gen_of = [-1] * (width * width)
    xs, ys, ts, parents, gens = [], [], [], [], []

    for x, y, t in zip(seed_x, seed_y, seed_t):
        x, y, t = int(x), int(y), int(t)
        cell = (y - ylo) * width + (x - xlo)
        grid[cell] = t
        gen_of[cell] = 0
        xs.append(x)
        ys.append(y)
        ts.append(t)
        parents.append(-1)
        gens.append(0)

    frontier = list(range(len(xs)))
    generation = 0
    conflict = None
    n_total = width * width + len(xs) + 1
    while frontier and conflict is None:
        generation += 1
        keys = []
        for idx in frontier:
            x, y, t = xs[idx], ys[idx], ts[idx]
            row = glues[t]
            for d in range(4):
                g = row[d]
                if g == 0:
                    continue
                nx, ny = x + _DX[d], y + _DY[d]
                if nx < xlo or nx >= xlo + width or ny < ylo or ny >= ylo + width:
                    continue
                cell = (ny - ylo) * width + (nx - xlo)
                if grid[cell] != -1:
                    continue
                opp = (d + 2) % 4
                for k in range(ptr[opp][g], ptr[opp][g + 1]):
                    u = offers[k]
                    keys.append((cell * n_types + u) * n_total + idx)
        keys.sort()
        new = []
        for key in keys:
            rest, idx = divmod(key, n_total)
            cell, u = divmod(rest, n_types)
            if grid[cell] == -1:
                grid[cell] = u
                gen_of[cell] = generation
                ny, nx = divmod(cell, width)
                xs.append(nx + xlo)
                ys.append(ny + ylo)
                ts.append(u)
                parents.append(idx)
                gens.append(generation)
                new.append(len(xs) - 1)
            elif check_conflicts and grid[cell] != u and gen_of[cell] == generation:
                ny, nx = divmod(cell, width)
                conflict = (nx + xlo, ny + ylo, grid[cell], u)
                break
        frontier = new

    as_arr = lambda seq: np.asarray(seq, dtype=np.int64)
    return as_arr(xs), as_arr(ys), as_arr(ts), as_arr(parents), as_arr(gens), conflict


def _sign(value):
    return (value > 0) - (value < 0)


def _on_segment(sa, ha, sb, hb, sp, hp):
    if (sb - sa) * (hp - ha) - (hb - ha) * (sp - sa) != 0:
        return False
    return min(sa, sb) <= sp <= max(sa, sb) and min(ha, hb) <= hp <= max(ha, hb)


def _crossings_below(ss, hs, sp, hp):
    """Count strict side changes of ``s - sp`` along the vertex walk that
    happen strictly below height ``hp``.

    The walk must start on a vertex with ``s != sp``.  Runs of vertices lying
    on the line ``s == sp`` are treated as one contact; a contact counts as a
    crossing only when the walk leaves on the opposite side it came from.
    """
    count = 0
    prev_sign = _sign(ss[0] - sp)
    sa, ha = ss[0], hs[0]
    run_h = None
    for k in range(1, len(ss)):
        sb, hb = ss[k], hs[k]
        sg = _sign(sb - sp)
        if sg == 0:
            if run_h is None:
                run_h = hb
            continue
        if sg != prev_sign:
            if run_h is not None:
                if run_h < hp:
                    count += 1
            else:
                lhs = (ha - hp) * (sb - sa) + (hb - ha) * (sp - sa)
                if (sb - sa > 0 and lhs < 0) or (sb - sa < 0 and lhs > 0):
                    count += 1
        prev_sign = sg
        sa, ha = sb, hb
        run_h = None
    return count


def classify_periodic(bx, by, wx, wy, px, py):
    """Side of each point relative to a bi-infinite periodic polygonal curve.

    ``bx, by`` hold one period of vertices (last = first + (wx, wy)).
    Returns an int8 array: 1 strict left, 0 on the curve, -1 strict right.
    The ray is cast in the clockwise-perpendicular direction, so only the
    finitely many translates whose projection straddles the point matter.
    """
    wx, wy = int(wx), int(wy)
    period = wx * wx + wy * wy
    bs = [wx * int(x) + wy * int(y) for x, y in zip(bx, by)]
    bh = [-wy * int(x) + wx * int(y) for x, y in zip(bx, by)]
    n = len(bs)
    smin, smax = min(bs), max(bs)
    out = np.zeros(len(px), dtype=np.int8)
    for idx in range(len(px)):
        x, y = int(px[idx]), int(py[idx])
        sp = wx * x + wy * y
        hp = -wy * x + wx * y
        kmin = (sp - smax) // period - 1
        kmax = (sp - smin) // period + 1
        ss, hs = [], []
        for k in range(kmin, kmax + 1):
            shift = k * period
            for i in range(n - 1):
                ss.append(bs[i] + shift)
                hs.append(bh[i])
        ss.append(bs[n - 1] + kmax * period)
        hs.append(bh[n - 1])
        on = False
        for i in range(len(ss) - 1):
            if _on_segment(ss[i], hs[i], ss[i + 1], hs[i + 1], sp, hp):
                on = True
                break
        if on:
            out[idx] = 0
            continue
        out[idx] = 1 if _crossings_below(ss, hs, sp, hp) % 2 == 1 else -1
    return out


def classify_closed(vx, vy, px, py):
    """Inside (1) / on (0) / outside (-1) for a closed polygonal curve."""
    vs = [int(v) for v in vx]
    vh = [int(v) for v in vy]
    n = len(vs)
    out = np.zeros(len(px), dtype=np.int8)
    for idx in range(len(px)):
        sp, hp = int(px[idx]), int(py[idx])
        on = False
        for i in range(n - 1):
            if _on_segment(vs[i], vh[i], vs[i + 1], vh[i + 1], sp, hp):
                on = True
                break
        if on:
            out[idx] = 0
            continue
        start = -1
        for i in range(n - 1):
            if vs[i] != sp:
                start = i
                break
        if start < 0:
            out[idx] = -1
            continue
        ss = vs[start:n - 1] + vs[:start + 1]
        hs = vh[start:n - 1] + vh[:start + 1]
        out[idx] = 1 if _crossings_below(ss, hs, sp, hp) % 2 == 1 else -1
    return out


def longest_residue_path(a, b, c, limit):
    """Longest self-avoiding walk on the torus Z^2 / L.

    ``L`` is given by its Hermite basis ``(a, b), (0, c)`` with ``a, c > 0``.
    A walk is a sequence of unit steps whose vertices lie in pairwise
    distinct residue classes.  The search stops as soon as a walk of
    ``limit`` vertices is found.  Returns the number of vertices.
    """
    a, b, c, limit = int(a), int(b), int(c), int(limit)
    size = a * c

    def residue(x, y):
        k = x // a
        return (x - k * a) * c + (y - k * b) % c

    nbr = [[0] * 4 for _ in range(size)]
    for xr in range(a):
        for yr in range(c):
            node = xr * c + yr
            for d in range(4):
                nbr[node][d] = residue(xr + _DX[d], yr + _DY[d])

    target = min(size, limit)
    visited = [False] * size
    visited[0] = True
    best = 1
    stack = [[0, 0]]
    while stack:
        if best >= target:
            break
        top = stack[-1]
        node, d = top
        if d == 4:
            visited[node] = False
            stack.pop()
            continue
        top[1] = d + 1
        nxt = nbr[node][d]
        if not visited[nxt]:
            visited[nxt] = True
            stack.append([nxt, 0])
            if len(stack) > best:
                best = len(stack)
    return best
