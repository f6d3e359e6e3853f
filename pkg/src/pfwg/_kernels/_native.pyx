# Compiled implementations of the hot kernels: rolling-hash trigger scan
# and SA-IS suffix sorting over integer alphabets.

import numpy as np

NAME = "native"

ctypedef long long i64
ctypedef unsigned long long u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline u64 _mulmod(u64 a, u64 b, u64 mod):
    return <u64>((<u128>a * b) % mod)


def window_hash(window, u64 base, u64 mod):
    cdef u64 h = 0
    cdef i64 c
    for c in window:
        h = (_mulmod(h, base, mod) + (<u64>c) % mod) % mod
    return h


def scan_triggers(const unsigned char[::1] data, Py_ssize_t start, Py_ssize_t end,
                  u64 w, u64 p, u64 base, u64 mod):
    cdef list out = []
    if end <= start:
        return out
    cdef u64 h = 0
    cdef Py_ssize_t j, i
    for j in range(start, start + <Py_ssize_t>w):
        h = (_mulmod(h, base, mod) + data[j]) % mod
    if h % p == 0:
        out.append(start)
    cdef u64 shift = 1
    for j in range(<Py_ssize_t>w - 1):
        shift = _mulmod(shift, base, mod)
    cdef u64 drop
    for i in range(start + 1, end):
        drop = _mulmod(data[i - 1], shift, mod)
        h = (h + mod - drop) % mod
        h = (_mulmod(h, base, mod) + data[i + <Py_ssize_t>w - 1]) % mod
        if h % p == 0:
            out.append(i)
    return out


def suffix_array(seq, Py_ssize_t sigma):
    """SA-IS over int64 values in [0, sigma); returns an int64 numpy array."""
    arr = np.ascontiguousarray(seq, dtype=np.int64)
    cdef Py_ssize_t n = arr.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    sa = _sais(arr, sigma)
    return sa[1:]


cdef _sais(object s_obj, Py_ssize_t sigma):
    cdef const i64[::1] s = s_obj
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t i, j, pos

    types_obj = np.zeros(n + 1, dtype=np.uint8)
    cdef unsigned char[::1] types = types_obj
    types[n] = 1
    types[n - 1] = 0
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1]:
            types[i] = 1
        elif s[i] == s[i + 1]:
            types[i] = types[i + 1]

    sizes_obj = np.zeros(sigma, dtype=np.int64)
    cdef i64[::1] sizes = sizes_obj
    for i in range(n):
        sizes[s[i]] += 1

    cdef i64[::1] tails = np.empty(sigma, dtype=np.int64)
    cdef i64[::1] heads = np.empty(sigma, dtype=np.int64)

    sa_obj = np.full(n + 1, -1, dtype=np.int64)
    cdef i64[::1] sa = sa_obj

    _bucket_tails(sizes, tails, sigma)
    for i in range(1, n):
        if types[i] == 1 and types[i - 1] == 0:
            sa[tails[s[i]]] = i
            tails[s[i]] -= 1
    sa[0] = n
    _induce(s, sa, sizes, heads, tails, types, n, sigma)

    names_obj = np.full(n + 1, -1, dtype=np.int64)
    cdef i64[::1] names = names_obj
    cdef i64 current = 0
    cdef Py_ssize_t last = <Py_ssize_t>sa[0]
    names[last] = 0
    for i in range(1, n + 1):
        pos = <Py_ssize_t>sa[i]
        if not (pos > 0 and types[pos] == 1 and types[pos - 1] == 0):
            continue
        if not _lms_equal(s, types, n, last, pos):
            current += 1
        last = pos
        names[pos] = current

    cdef Py_ssize_t n_lms = 0
    for i in range(n + 1):
        if names[i] != -1:
            n_lms += 1
    summary_obj = np.empty(n_lms, dtype=np.int64)
    summary_pos_obj = np.empty(n_lms, dtype=np.int64)
    cdef i64[::1] summary = summary_obj
    cdef i64[::1] summary_pos = summary_pos_obj
    j = 0
    for i in range(n + 1):
        if names[i] != -1:
            summary[j] = names[i]
            summary_pos[j] = i
            j += 1

    cdef i64[::1] summary_sa
    if current + 1 == n_lms:
        summary_sa_obj = np.empty(n_lms + 1, dtype=np.int64)
        summary_sa = summary_sa_obj
        summary_sa[0] = n_lms
        for i in range(n_lms):
            summary_sa[summary[i] + 1] = i
    else:
        summary_sa_obj = _sais(summary_obj, current + 1)
        summary_sa = summary_sa_obj

    sa_obj = np.full(n + 1, -1, dtype=np.int64)
    sa = sa_obj
    _bucket_tails(sizes, tails, sigma)
    for i in range(n_lms, 1, -1):
        pos = <Py_ssize_t>summary_pos[summary_sa[i]]
        sa[tails[s[pos]]] = pos
        tails[s[pos]] -= 1
    sa[0] = n
    _induce(s, sa, sizes, heads, tails, types, n, sigma)
    return sa_obj


cdef void _bucket_tails(const i64[::1] sizes, i64[::1] tails, Py_ssize_t sigma):
    cdef Py_ssize_t c
    cdef i64 offset = 1
    for c in range(sigma):
        offset += sizes[c]
        tails[c] = offset - 1


cdef void _induce(const i64[::1] s, i64[::1] sa, const i64[::1] sizes,
                  i64[::1] heads, i64[::1] tails,
                  const unsigned char[::1] types, Py_ssize_t n, Py_ssize_t sigma):
    cdef Py_ssize_t c, i
    cdef i64 j, offset
    offset = 1
    for c in range(sigma):
        heads[c] = offset
        offset += sizes[c]
    for i in range(n + 1):
        j = sa[i] - 1
        if sa[i] == -1 or j < 0 or types[j] != 0:
            continue
        sa[heads[s[j]]] = j
        heads[s[j]] += 1
    _bucket_tails(sizes, tails, sigma)
    for i in range(n, -1, -1):
        j = sa[i] - 1
        if sa[i] == -1 or j < 0 or types[j] != 1:
            continue
        sa[tails[s[j]]] = j
        tails[s[j]] -= 1


cdef bint _lms_equal(const i64[::1] s, const unsigned char[::1] types,
                     Py_ssize_t n, Py_ssize_t a, Py_ssize_t b):
    cdef Py_ssize_t i = 0
    cdef bint a_lms, b_lms
    if a == n or b == n:
        return False
    while True:
        a_lms = (a + i > 0 and types[a + i] == 1 and types[a + i - 1] == 0)
        b_lms = (b + i > 0 and types[b + i] == 1 and types[b + i - 1] == 0)
        if i > 0 and a_lms and b_lms:
            return True
        if a_lms != b_lms:
            return False
        if s[a + i] != s[b + i]:
            return False
        i += 1
