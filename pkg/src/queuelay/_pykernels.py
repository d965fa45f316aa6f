"""Pure-Python versions of the hot loops; same contracts as ``_kernels.pyx``.

Edges are given as parallel sequences of left and right spine ranks with
``left[i] < right[i]``.
"""

from bisect import bisect_left


def first_nesting_pair(left, right, queue):
    """Indices ``(i, j)`` with edge i strictly enclosing edge j in the same
    queue, or ``None`` if every queue is nesting-free."""
    idx = sorted(range(len(left)), key=lambda i: (queue[i], left[i], right[i]))
    cur_q = None
    best_prev = -1  # index of max-right edge among strictly smaller lefts
    best_cur = -1  # index of max-right edge at the current left
    cur_l = None
    for i in idx:
        q, l, r = queue[i], left[i], right[i]
        if q != cur_q:
            cur_q, cur_l, best_prev, best_cur = q, l, -1, -1
        elif l != cur_l:
            if best_cur >= 0 and (best_prev < 0 or right[best_cur] > right[best_prev]):
                best_prev = best_cur
            best_cur = -1
            cur_l = l
        if best_prev >= 0 and right[best_prev] > r:
            return best_prev, i
        if best_cur < 0 or r > right[best_cur]:
            best_cur = i
    return None


def longest_nesting_chain(left, right):
    """Indices of a maximum set of pairwise nesting edges, outermost first."""
    m = len(left)
    if m == 0:
        return []
    # left ascending, ties by right ascending so two edges with a shared
    # left endpoint can never both enter a strictly decreasing run
    idx = sorted(range(m), key=lambda i: (left[i], right[i]))
    tails = []  # tails[h] = -right of the chain end with length h+1
    tail_idx = []
    prev = [-1] * m
    for i in idx:
        key = -right[i]
        h = bisect_left(tails, key)
        # keep strictness on left: an equal-left predecessor has right <=
        # ours, so -right >= key and bisect_left never chains onto it
        if h == len(tails):
            tails.append(key)
            tail_idx.append(i)
        else:
            tails[h] = key
            tail_idx[h] = i
        prev[i] = tail_idx[h - 1] if h > 0 else -1
    out = []
    i = tail_idx[-1]
    while i >= 0:
        out.append(i)
        i = prev[i]
    out.reverse()
    return out


def locality_search(left, right, n, ell, node_limit):
    """Backtracking search for a queue assignment with locality <= ell.

    Edges must be sorted by ``(left, right)``.  Returns ``(status, assign,
    nodes)`` with status 1 (found), 0 (none exists) or -1 (node limit hit).
    """
    m = len(left)
    if m == 0:
        return 1, [], 0
    assign = [-1] * m
    # per queue: current max left, max right among strictly smaller lefts,
    # max right at the current max left
    q_l = []
    q_before = []
    q_at = []
    vq = [[] for _ in range(n)]  # queues present at each vertex (rank)
    vcount = [[] for _ in range(n)]  # multiplicity of each present queue
    nodes = 0
    nq = 0

    def compatible(q, l, r):
        if l > q_l[q]:
            top = q_before[q] if q_before[q] > q_at[q] else q_at[q]
        else:
            top = q_before[q]
        return top <= r

    def vertex_ok(v, q):
        return q in vq[v] or len(vq[v]) < ell

    def push_vertex(v, q):
        lst = vq[v]
        for j, x in enumerate(lst):
            if x == q:
                vcount[v][j] += 1
                return
        lst.append(q)
        vcount[v].append(1)

    def pop_vertex(v, q):
        lst = vq[v]
        for j, x in enumerate(lst):
            if x == q:
                vcount[v][j] -= 1
                if vcount[v][j] == 0:
                    lst.pop(j)
                    vcount[v].pop(j)
                return

    # iterative DFS with explicit choice pointers
    choice = [0] * m
    saved = [None] * m
    e = 0
    choice[0] = 0
    while True:
        if e == m:
            return 1, assign, nodes
        if e < 0:
            return 0, None, nodes
        l, r = left[e], right[e]
        # candidates: queues 0..nq-1 then fresh id nq
        placed = False
        c = choice[e]
        while c <= nq:
            q = c
            c += 1
            if q < nq:
                if not compatible(q, l, r):
                    continue
            if not (vertex_ok(l, q) and vertex_ok(r, q)):
                continue
            nodes += 1
            if nodes > node_limit:
                return -1, None, nodes
            if q == nq:
                q_l.append(l)
                q_before.append(-1)
                q_at.append(r)
                nq += 1
                saved[e] = None
            else:
                saved[e] = (q_l[q], q_before[q], q_at[q])
                if l > q_l[q]:
                    if q_at[q] > q_before[q]:
                        q_before[q] = q_at[q]
                    q_at[q] = r
                    q_l[q] = l
                elif r > q_at[q]:
                    q_at[q] = r
            push_vertex(l, q)
            push_vertex(r, q)
            assign[e] = q
            choice[e] = c
            placed = True
            break
        if placed:
            e += 1
            if e < m:
                choice[e] = 0
            continue
        # exhausted: backtrack
        choice[e] = 0
        e -= 1
        if e < 0:
            return 0, None, nodes
        q = assign[e]
        pop_vertex(left[e], q)
        pop_vertex(right[e], q)
        if saved[e] is None:
            q_l.pop()
            q_before.pop()
            q_at.pop()
            nq -= 1
        else:
            q_l[q], q_before[q], q_at[q] = saved[e]
        assign[e] = -1
