"""Pure-Python alignment kernel. Same contract as the compiled ``_align_ext``.

Both kernels take two sequences of integer word ids. The cost table holds
the edit distance between every pair of *suffixes*; walking it forward from
the start and taking the first optimal move in the order match, substitute,
delete, insert breaks ties toward the earliest possible edit.
"""

MATCH, SUBSTITUTE, DELETE, INSERT = 0, 1, 2, 3


def _suffix_costs(ref, hyp):
    n, m = len(ref), len(hyp)
    w = m + 1
    cost = [0] * ((n + 1) * w)
    for j in range(m + 1):
        cost[n * w + j] = m - j
    for i in range(n - 1, -1, -1):
        row = i * w
        below = row + w
        cost[row + m] = n - i
        r = ref[i]
        for j in range(m - 1, -1, -1):
            best = cost[below + j + 1] + (r != hyp[j])
            c = cost[below + j] + 1
            if c < best:
                best = c
            c = cost[row + j + 1] + 1
            if c < best:
                best = c
            cost[row + j] = best
    return cost


def edit_ops(ref, hyp):
    """Return the op codes of the tie-broken minimal alignment."""
    n, m = len(ref), len(hyp)
    w = m + 1
    cost = _suffix_costs(ref, hyp)
    ops = []
    i = j = 0
    while i < n or j < m:
        here = cost[i * w + j]
        if i < n and j < m:
            diag = cost[(i + 1) * w + j + 1]
            if ref[i] == hyp[j] and diag == here:
                ops.append(MATCH)
                i += 1
                j += 1
                continue
            if ref[i] != hyp[j] and diag + 1 == here:
                ops.append(SUBSTITUTE)
                i += 1
                j += 1
                continue
        if i < n and cost[(i + 1) * w + j] + 1 == here:
            ops.append(DELETE)
            i += 1
        else:
            ops.append(INSERT)
            j += 1
    return ops


def edit_distance(ref, hyp):
    """Word-level Levenshtein distance in O(len(hyp)) memory."""
    m = len(hyp)
    prev = list(range(m + 1))
    for i, r in enumerate(ref, start=1):
        cur = [i] + [0] * m
        for j in range(1, m + 1):
            best = prev[j - 1] + (r != hyp[j - 1])
            if prev[j] + 1 < best:
                best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            cur[j] = best
        prev = cur
    return prev[m]
