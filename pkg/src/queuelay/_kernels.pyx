# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.  Contracts match queuelay._pykernels exactly."""

from libc.stdlib cimport malloc, free


def first_nesting_pair(left, right, queue):
    cdef Py_ssize_t m = len(left)
    idx = sorted(range(m), key=lambda i: (queue[i], left[i], right[i]))
    cdef long *L = <long *> malloc(m * sizeof(long))
    cdef long *R = <long *> malloc(m * sizeof(long))
    cdef long *Q = <long *> malloc(m * sizeof(long))
    cdef long *I = <long *> malloc(m * sizeof(long))
    cdef Py_ssize_t t, i
    cdef long q, l, r, cur_q = 0, cur_l = 0
    cdef long best_prev = -1, best_cur = -1
    cdef bint first = True
    try:
        for t in range(m):
            i = idx[t]
            I[t] = i
            L[t] = left[i]
            R[t] = right[i]
            Q[t] = queue[i]
        for t in range(m):
            q = Q[t]
            l = L[t]
            r = R[t]
            if first or q != cur_q:
                first = False
                cur_q = q
                cur_l = l
                best_prev = -1
                best_cur = -1
            elif l != cur_l:
                if best_cur >= 0 and (best_prev < 0 or R[best_cur] > R[best_prev]):
                    best_prev = best_cur
                best_cur = -1
                cur_l = l
            if best_prev >= 0 and R[best_prev] > r:
                return I[best_prev], I[t]
            if best_cur < 0 or r > R[best_cur]:
                best_cur = t
        return None
    finally:
        free(L)
        free(R)
        free(Q)
        free(I)


def longest_nesting_chain(left, right):
    cdef Py_ssize_t m = len(left)
    if m == 0:
        return []
    idx = sorted(range(m), key=lambda i: (left[i], right[i]))
    cdef long *tails = <long *> malloc(m * sizeof(long))
    cdef long *tail_idx = <long *> malloc(m * sizeof(long))
    cdef long *prev = <long *> malloc(m * sizeof(long))
    cdef Py_ssize_t size = 0, lo, hi, mid, t
    cdef long i, key
    try:
        for t in range(m):
            i = idx[t]
            key = -<long> right[i]
            lo = 0
            hi = size
            while lo < hi:
                mid = (lo + hi) >> 1
                if tails[mid] < key:
                    lo = mid + 1
                else:
                    hi = mid
            tails[lo] = key
            tail_idx[lo] = i
            if lo == size:
                size += 1
            prev[i] = tail_idx[lo - 1] if lo > 0 else -1
        out = []
        i = tail_idx[size - 1]
        while i >= 0:
            out.append(i)
            i = prev[i]
        out.reverse()
        return out
    finally:
        free(tails)
        free(tail_idx)
        free(prev)


cdef inline bint _vertex_ok(long *vq, long *vlen, long v, long q, long ell):
    cdef long j
    for j in range(vlen[v]):
        if vq[v * ell + j] == q:
            return True
    return vlen[v] < ell


cdef inline void _push(long *vq, long *vc, long *vlen, long v, long q, long ell):
    cdef long j
    for j in range(vlen[v]):
        if vq[v * ell + j] == q:
            vc[v * ell + j] += 1
            return
    vq[v * ell + vlen[v]] = q
    vc[v * ell + vlen[v]] = 1
    vlen[v] += 1


cdef inline void _pop(long *vq, long *vc, long *vlen, long v, long q, long ell):
    cdef long j, last
    for j in range(vlen[v]):
        if vq[v * ell + j] == q:
            vc[v * ell + j] -= 1
            if vc[v * ell + j] == 0:
                last = vlen[v] - 1
                # keep insertion order to mirror the Python list.pop(j)
                while j < last:
                    vq[v * ell + j] = vq[v * ell + j + 1]
                    vc[v * ell + j] = vc[v * ell + j + 1]
                    j += 1
                vlen[v] -= 1
            return


def locality_search(left, right, long n, long ell, long long node_limit):
    cdef long m = len(left)
    if m == 0:
        return 1, [], 0
    if ell < 1:
        return 0, None, 0
    cdef long *L = <long *> malloc(m * sizeof(long))
    cdef long *R = <long *> malloc(m * sizeof(long))
    cdef long *assign = <long *> malloc(m * sizeof(long))
    cdef long *choice = <long *> malloc(m * sizeof(long))
    cdef long *sv_l = <long *> malloc(m * sizeof(long))
    cdef long *sv_b = <long *> malloc(m * sizeof(long))
    cdef long *sv_a = <long *> malloc(m * sizeof(long))
    cdef char *fresh = <char *> malloc(m * sizeof(char))
    cdef long *q_l = <long *> malloc((m + 1) * sizeof(long))
    cdef long *q_before = <long *> malloc((m + 1) * sizeof(long))
    cdef long *q_at = <long *> malloc((m + 1) * sizeof(long))
    cdef long *vq = <long *> malloc(n * ell * sizeof(long))
    cdef long *vc = <long *> malloc(n * ell * sizeof(long))
    cdef long *vlen = <long *> malloc(n * sizeof(long))
    cdef long e, c, q, l, r, top, nq = 0, i
    cdef long long nodes = 0
    cdef bint placed
    try:
        for i in range(m):
            L[i] = left[i]
            R[i] = right[i]
            assign[i] = -1
            choice[i] = 0
        for i in range(n):
            vlen[i] = 0
        e = 0
        while True:
            if e == m:
                return 1, [assign[i] for i in range(m)], nodes
            if e < 0:
                return 0, None, nodes
            l = L[e]
            r = R[e]
            placed = False
            c = choice[e]
            while c <= nq:
                q = c
                c += 1
                if q < nq:
                    if l > q_l[q]:
                        top = q_before[q] if q_before[q] > q_at[q] else q_at[q]
                    else:
                        top = q_before[q]
                    if top > r:
                        continue
                if not (_vertex_ok(vq, vlen, l, q, ell) and _vertex_ok(vq, vlen, r, q, ell)):
                    continue
                nodes += 1
                if nodes > node_limit:
                    return -1, None, nodes
                if q == nq:
                    q_l[q] = l
                    q_before[q] = -1
                    q_at[q] = r
                    nq += 1
                    fresh[e] = 1
                else:
                    fresh[e] = 0
                    sv_l[e] = q_l[q]
                    sv_b[e] = q_before[q]
                    sv_a[e] = q_at[q]
                    if l > q_l[q]:
                        if q_at[q] > q_before[q]:
                            q_before[q] = q_at[q]
                        q_at[q] = r
                        q_l[q] = l
                    elif r > q_at[q]:
                        q_at[q] = r
                _push(vq, vc, vlen, l, q, ell)
                _push(vq, vc, vlen, r, q, ell)
                assign[e] = q
                choice[e] = c
                placed = True
                break
            if placed:
                e += 1
                if e < m:
                    choice[e] = 0
                continue
            choice[e] = 0
            e -= 1
            if e < 0:
                return 0, None, nodes
            q = assign[e]
            _pop(vq, vc, vlen, L[e], q, ell)
            _pop(vq, vc, vlen, R[e], q, ell)
            if fresh[e]:
                nq -= 1
            else:
                q_l[q] = sv_l[e]
                q_before[q] = sv_b[e]
                q_at[q] = sv_a[e]
            assign[e] = -1
    finally:
        free(L); free(R); free(assign); free(choice)
        free(sv_l); free(sv_b); free(sv_a); free(fresh)
        free(q_l); free(q_before); free(q_at)
        free(vq); free(vc); free(vlen)
