"""Pure-Python implementations of the hot kernels.

Same contracts as the compiled module in ``_native.pyx``; used when the
extension is not built or when PFWG_PURE is set.
"""

NAME = "fallback"


def window_hash(window, base, mod):
    h = 0
    for c in window:
        h = (h * base + c) % mod
    return h


def scan_triggers(data, start, end, w, p, base, mod):
    """Window start positions i in [start, end) with hash(data[i:i+w]) % p == 0."""
    if end <= start:
        return []
    h = 0
    for j in range(start, start + w):
        h = (h * base + data[j]) % mod
    out = []
    if h % p == 0:
        out.append(start)
    shift = pow(base, w - 1, mod)
    for i in range(start + 1, end):
        h = ((h - data[i - 1] * shift) * base + data[i + w - 1]) % mod
        if h % p == 0:
            out.append(i)
    return out


def suffix_array(seq, sigma):
    """Suffix array of an integer sequence via induced sorting (SA-IS).

    Values must lie in [0, sigma). Returns a list of suffix start positions
    in increasing lexicographic order of the suffixes.
    """
    n = len(seq)
    if n == 0:
        return []
    if n == 1:
        return [0]
    # _sais works with a virtual empty suffix at position n; strip it.
    return _sais(seq, sigma)[1:]


def _build_types(s, n):
    # types[i] is 1 when suffix i is S-type; the virtual suffix at n is S.
    types = bytearray(n + 1)
    types[n] = 1
    if n == 0:
        return types
    types[n - 1] = 0
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1]:
            types[i] = 1
        elif s[i] == s[i + 1]:
            types[i] = types[i + 1]
    return types


def _is_lms(types, i):
    return i > 0 and types[i] == 1 and types[i - 1] == 0


def _bucket_sizes(s, sigma):
    sizes = [0] * sigma
    for c in s:
        sizes[c] += 1
    return sizes


def _bucket_heads(sizes):
    heads = []
    offset = 1
    for size in sizes:
        heads.append(offset)
        offset += size
    return heads


def _bucket_tails(sizes):
    tails = []
    offset = 1
    for size in sizes:
        offset += size
        tails.append(offset - 1)
    return tails


def _induce_l(s, sa, sizes, types):
    heads = _bucket_heads(sizes)
    for i in range(len(sa)):
        j = sa[i] - 1
        if sa[i] == -1 or j < 0 or types[j] != 0:
            continue
        sa[heads[s[j]]] = j
        heads[s[j]] += 1


def _induce_s(s, sa, sizes, types):
    tails = _bucket_tails(sizes)
    for i in range(len(sa) - 1, -1, -1):
        j = sa[i] - 1
        if sa[i] == -1 or j < 0 or types[j] != 1:
            continue
        sa[tails[s[j]]] = j
        tails[s[j]] -= 1


def _lms_equal(s, types, n, a, b):
    if a == n or b == n:
        return False
    i = 0
    while True:
        a_lms = _is_lms(types, a + i)
        b_lms = _is_lms(types, b + i)
        if i > 0 and a_lms and b_lms:
            return True
        if a_lms != b_lms:
            return False
        if s[a + i] != s[b + i]:
            return False
        i += 1


def _sais(s, sigma):
    n = len(s)
    types = _build_types(s, n)
    sizes = _bucket_sizes(s, sigma)

    # First pass: approximate order of LMS suffixes, then induce.
    sa = [-1] * (n + 1)
    tails = _bucket_tails(sizes)
    for i in range(1, n):
        if _is_lms(types, i):
            sa[tails[s[i]]] = i
            tails[s[i]] -= 1
    sa[0] = n
    _induce_l(s, sa, sizes, types)
    _induce_s(s, sa, sizes, types)

    # Name LMS substrings in their sorted order.
    names = [-1] * (n + 1)
    current = 0
    last = sa[0]
    names[last] = 0
    for i in range(1, n + 1):
        pos = sa[i]
        if not _is_lms(types, pos):
            continue
        if not _lms_equal(s, types, n, last, pos):
            current += 1
        last = pos
        names[pos] = current

    summary = []
    summary_pos = []
    for pos, name in enumerate(names):
        if name != -1:
            summary.append(name)
            summary_pos.append(pos)

    # Order the LMS suffixes exactly, recursing when names repeat.
    if current + 1 == len(summary):
        summary_sa = [-1] * (len(summary) + 1)
        summary_sa[0] = len(summary)
        for i, name in enumerate(summary):
            summary_sa[name + 1] = i
    else:
        summary_sa = _sais(summary, current + 1)

    # Final pass: place LMS suffixes accurately, induce the rest.
    sa = [-1] * (n + 1)
    tails = _bucket_tails(sizes)
    for i in range(len(summary_sa) - 1, 1, -1):
        pos = summary_pos[summary_sa[i]]
        sa[tails[s[pos]]] = pos
        tails[s[pos]] -= 1
    sa[0] = n
    _induce_l(s, sa, sizes, types)
    _induce_s(s, sa, sizes, types)
    return sa
