"""Low-level Todd-Coxeter kernels (HLT and Felsch strategies).

Table layout: one row per coset, two columns per generator (column 2g is
the action of generator g, column 2g+1 its inverse, so x ^ 1 flips a
letter).  -1 marks an undefined entry.  Coincidences are tracked in a
union-find array p whose representatives are the minimum-numbered coset
of each class; coset 0 never dies.  The coincidence routine follows the
classical description in the Handbook of Computational Group Theory
(Holt, Eick, O'Brien), transferring rows of dying cosets while keeping
the table's paired-entry property.

Every kernel communicates through a shared int64 state vector S and
reports via S[S_STATUS]; allocation, growth, compaction, and error
raising live in the Python wrapper (fp.py).  Deduction stack codes pack
a (coset, column) pair as coset * ncols + column in int64, which cannot
overflow for any table that fits in memory.
"""

from __future__ import annotations

import numpy as np

from ._jit import njit

S_NROWS = 0  # rows in use (next fresh coset index)
S_DEAD = 1  # dead cosets among them
S_TOTAL = 2  # cosets defined over the whole run (monotone budget measure)
S_ALPHA = 3  # main-loop row pointer
S_SGDONE = 4  # subgroup generators scanned
S_DLEN = 5  # deduction stack length
S_DOFLOW = 6  # deduction stack overflowed since last sweep
S_OPS = 7  # operations since last cancellation poll
S_STATUS = 8
S_SIZE = 9

STATUS_OK = 0
STATUS_GROW = 1
STATUS_BUDGET = 2
STATUS_CANCELLED = 3

POLL_EVERY = 10_000


@njit(cache=True)
def _rep(p, k):
    lam = k
    while p[lam] != lam:
        lam = p[lam]
    mu = k
    while mu != lam:
        nxt = p[mu]
        p[mu] = lam
        mu = nxt
    return lam


@njit(cache=True)
def _push_ded(dstack, S, a, x, ncols):
    n = S[S_DLEN]
    if n >= dstack.shape[0]:
        S[S_DOFLOW] = 1
    else:
        dstack[n] = a * ncols + x
        S[S_DLEN] = n + 1


@njit(cache=True)
def _merge(p, queue, S, a, b, qt):
    u = _rep(p, a)
    v = _rep(p, b)
    if u != v:
        if u > v:
            u, v = v, u
        p[v] = u
        queue[qt] = v
        qt += 1
        S[S_DEAD] += 1
    return qt


@njit(cache=True)
def _coincidence(table, p, queue, dstack, S, a, b, ncols, use_ded):
    qt = _merge(p, queue, S, a, b, 0)
    qh = 0
    while qh < qt:
        g = queue[qh]
        qh += 1
        for x in range(ncols):
            d = table[g, x]
            if d >= 0:
                # drop the mirror entry, then re-route the edge through
                # the surviving representatives
                table[d, x ^ 1] = -1
                mu = _rep(p, g)
                nu = _rep(p, d)
                t = table[mu, x]
                if t >= 0:
                    qt = _merge(p, queue, S, nu, t, qt)
                else:
                    t2 = table[nu, x ^ 1]
                    if t2 >= 0:
                        qt = _merge(p, queue, S, mu, t2, qt)
                    else:
                        table[mu, x] = nu
                        table[nu, x ^ 1] = mu
                        if use_ded:
                            _push_ded(dstack, S, mu, x, ncols)
                            _push_ded(dstack, S, nu, x ^ 1, ncols)


@njit(cache=True)
def _scan(table, p, queue, dstack, S, alpha, word, ncols, use_ded):
    """Scan a relator at a coset; deduce or coincide, never define."""
    r = word.shape[0]
    f = alpha
    i = 0
    while i < r:
        nxt = table[f, word[i]]
        if nxt < 0:
            break
        f = nxt
        i += 1
    if i == r:
        if f != alpha:
            _coincidence(table, p, queue, dstack, S, f, alpha, ncols, use_ded)
        return
    b = alpha
    j = r - 1
    while j >= i:
        nxt = table[b, word[j] ^ 1]
        if nxt < 0:
            break
        b = nxt
        j -= 1
    if j < i:
        _coincidence(table, p, queue, dstack, S, f, b, ncols, use_ded)
    elif j == i:
        table[f, word[i]] = b
        table[b, word[i] ^ 1] = f
        if use_ded:
            _push_ded(dstack, S, f, word[i], ncols)
            _push_ded(dstack, S, b, word[i] ^ 1, ncols)


@njit(cache=True)
def _scan_and_fill(table, p, queue, dstack, S, alpha, word, ncols, budget, use_ded, cancel):
    """Scan a relator at a coset, defining new cosets to close any gap."""
    r = word.shape[0]
    f = alpha
    i = 0
    b = alpha
    j = r - 1
    while True:
        while i <= j:
            nxt = table[f, word[i]]
            if nxt < 0:
                break
            f = nxt
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, p, queue, dstack, S, f, b, ncols, use_ded)
            return STATUS_OK
        while j >= i:
            nxt = table[b, word[j] ^ 1]
            if nxt < 0:
                break
            b = nxt
            j -= 1
        if j < i:
            _coincidence(table, p, queue, dstack, S, f, b, ncols, use_ded)
            return STATUS_OK
        if j == i:
            table[f, word[i]] = b
            table[b, word[i] ^ 1] = f
            if use_ded:
                _push_ded(dstack, S, f, word[i], ncols)
                _push_ded(dstack, S, b, word[i] ^ 1, ncols)
            return STATUS_OK
        if S[S_TOTAL] >= budget:
            return STATUS_BUDGET
        if S[S_NROWS] >= table.shape[0]:
            return STATUS_GROW
        beta = S[S_NROWS]
        S[S_NROWS] += 1
        S[S_TOTAL] += 1
        p[beta] = beta
        table[f, word[i]] = beta
        table[beta, word[i] ^ 1] = f
        if use_ded:
            _push_ded(dstack, S, f, word[i], ncols)
            _push_ded(dstack, S, beta, word[i] ^ 1, ncols)
        S[S_OPS] += 1
        if S[S_OPS] >= POLL_EVERY:
            S[S_OPS] = 0
            if cancel[0] != 0:
                return STATUS_CANCELLED
        f = beta
        i += 1


@njit(cache=True)
def _run_hlt(table, p, queue, dstack, S, rel_data, rel_off, sg_data, sg_off, ncols, budget, cancel):
    if S[S_SGDONE] == 0:
        for k in range(sg_off.shape[0] - 1):
            w = sg_data[sg_off[k] : sg_off[k + 1]]
            st = _scan_and_fill(table, p, queue, dstack, S, 0, w, ncols, budget, False, cancel)
            if st != STATUS_OK:
                S[S_STATUS] = st
                return
        S[S_SGDONE] = 1
    nrel = rel_off.shape[0] - 1
    alpha = S[S_ALPHA]
    while alpha < S[S_NROWS]:
        if p[alpha] == alpha:
            died = False
            for k in range(nrel):
                w = rel_data[rel_off[k] : rel_off[k + 1]]
                st = _scan_and_fill(table, p, queue, dstack, S, alpha, w, ncols, budget, False, cancel)
                if st != STATUS_OK:
                    S[S_ALPHA] = alpha
                    S[S_STATUS] = st
                    return
                S[S_OPS] += w.shape[0]
                if S[S_OPS] >= POLL_EVERY:
                    S[S_OPS] = 0
                    if cancel[0] != 0:
                        S[S_ALPHA] = alpha
                        S[S_STATUS] = STATUS_CANCELLED
                        return
                if p[alpha] != alpha:
                    died = True
                    break
            if not died:
                for x in range(ncols):
                    if table[alpha, x] < 0:
                        if S[S_TOTAL] >= budget:
                            S[S_ALPHA] = alpha
                            S[S_STATUS] = STATUS_BUDGET
                            return
                        if S[S_NROWS] >= table.shape[0]:
                            S[S_ALPHA] = alpha
                            S[S_STATUS] = STATUS_GROW
                            return
                        beta = S[S_NROWS]
                        S[S_NROWS] += 1
                        S[S_TOTAL] += 1
                        p[beta] = beta
                        table[alpha, x] = beta
                        table[beta, x ^ 1] = alpha
        alpha += 1
        S[S_ALPHA] = alpha
    S[S_STATUS] = STATUS_OK


@njit(cache=True)
def _lookahead(table, p, queue, dstack, S, rel_data, rel_off, ncols, cancel):
    """Scan everything without defining; harvests pending coincidences."""
    nrel = rel_off.shape[0] - 1
    for a in range(S[S_NROWS]):
        if p[a] != a:
            continue
        for k in range(nrel):
            if p[a] != a:
                break
            w = rel_data[rel_off[k] : rel_off[k + 1]]
            _scan(table, p, queue, dstack, S, a, w, ncols, False)
            S[S_OPS] += w.shape[0]
            if S[S_OPS] >= POLL_EVERY:
                S[S_OPS] = 0
                if cancel[0] != 0:
                    S[S_STATUS] = STATUS_CANCELLED
                    return
    S[S_STATUS] = STATUS_OK


@njit(cache=True)
def _drain(table, p, queue, dstack, S, edp_data, edp_woff, edp_coff, rel_data, rel_off, ncols, cancel):
    """Process the deduction stack; sweep the whole table on overflow."""
    while True:
        while S[S_DLEN] > 0:
            S[S_DLEN] -= 1
            code = dstack[S[S_DLEN]]
            a = code // ncols
            x = code % ncols
            if p[a] != a:
                continue
            for widx in range(edp_coff[x], edp_coff[x + 1]):
                if p[a] != a:
                    break
                w = edp_data[edp_woff[widx] : edp_woff[widx + 1]]
                _scan(table, p, queue, dstack, S, a, w, ncols, True)
                S[S_OPS] += w.shape[0]
                if S[S_OPS] >= POLL_EVERY:
                    S[S_OPS] = 0
                    if cancel[0] != 0:
                        return STATUS_CANCELLED
        if S[S_DOFLOW] == 0:
            return STATUS_OK
        S[S_DOFLOW] = 0
        nrel = rel_off.shape[0] - 1
        for a2 in range(S[S_NROWS]):
            if p[a2] != a2:
                continue
            for k in range(nrel):
                if p[a2] != a2:
                    break
                w = rel_data[rel_off[k] : rel_off[k + 1]]
                _scan(table, p, queue, dstack, S, a2, w, ncols, True)
                S[S_OPS] += w.shape[0]
                if S[S_OPS] >= POLL_EVERY:
                    S[S_OPS] = 0
                    if cancel[0] != 0:
                        return STATUS_CANCELLED


@njit(cache=True)
def _run_felsch(
    table, p, queue, dstack, S, edp_data, edp_woff, edp_coff, rel_data, rel_off, sg_data, sg_off, ncols, budget, cancel
):
    if S[S_SGDONE] == 0:
        for k in range(sg_off.shape[0] - 1):
            w = sg_data[sg_off[k] : sg_off[k + 1]]
            st = _scan_and_fill(table, p, queue, dstack, S, 0, w, ncols, budget, True, cancel)
            if st == STATUS_OK:
                st = _drain(table, p, queue, dstack, S, edp_data, edp_woff, edp_coff, rel_data, rel_off, ncols, cancel)
            if st != STATUS_OK:
                S[S_STATUS] = st
                return
        S[S_SGDONE] = 1
    alpha = S[S_ALPHA]
    while alpha < S[S_NROWS]:
        if p[alpha] == alpha:
            for x in range(ncols):
                if p[alpha] != alpha:
                    break
                if table[alpha, x] < 0:
                    if S[S_TOTAL] >= budget:
                        S[S_ALPHA] = alpha
                        S[S_STATUS] = STATUS_BUDGET
                        return
                    if S[S_NROWS] >= table.shape[0]:
                        S[S_ALPHA] = alpha
                        S[S_STATUS] = STATUS_GROW
                        return
                    beta = S[S_NROWS]
                    S[S_NROWS] += 1
                    S[S_TOTAL] += 1
                    p[beta] = beta
                    table[alpha, x] = beta
                    table[beta, x ^ 1] = alpha
                    _push_ded(dstack, S, alpha, x, ncols)
                    _push_ded(dstack, S, beta, x ^ 1, ncols)
                    st = _drain(
                        table, p, queue, dstack, S, edp_data, edp_woff, edp_coff, rel_data, rel_off, ncols, cancel
                    )
                    if st != STATUS_OK:
                        S[S_ALPHA] = alpha
                        S[S_STATUS] = st
                        return
                    S[S_OPS] += 1
        alpha += 1
        S[S_ALPHA] = alpha
    S[S_STATUS] = STATUS_OK


@njit(cache=True)
def _standardize(table, nrows, ncols):
    """Renumber cosets in breadth-first order from coset 0.

    Requires a complete table whose live rows are exactly those
    reachable from 0; returns a fresh table over the reachable part.
    """
    order = np.empty(nrows, np.int32)
    newidx = np.full(nrows, -1, np.int32)
    order[0] = 0
    newidx[0] = 0
    cnt = 1
    head = 0
    while head < cnt:
        g = order[head]
        head += 1
        for x in range(ncols):
            h = table[g, x]
            if newidx[h] < 0:
                newidx[h] = cnt
                order[cnt] = h
                cnt += 1
    out = np.empty((cnt, ncols), np.int32)
    for i in range(cnt):
        g = order[i]
        for x in range(ncols):
            out[i, x] = newidx[table[g, x]]
    return out


@njit(cache=True)
def _verify(table, rel_data, rel_off):
    """0 if the table is a closed, paired, relator-satisfying action."""
    n = table.shape[0]
    ncols = table.shape[1]
    for i in range(n):
        for x in range(ncols):
            t = table[i, x]
            if t < 0 or t >= n:
                return 1
            if table[t, x ^ 1] != i:
                return 2
    for k in range(rel_off.shape[0] - 1):
        for a in range(n):
            f = a
            for q in range(rel_off[k], rel_off[k + 1]):
                f = table[f, rel_data[q]]
            if f != a:
                return 3
    return 0
