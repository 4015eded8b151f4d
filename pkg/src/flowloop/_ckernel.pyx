# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _kernel_py (same four functions, same semantics).

Coefficients stay Python ints (they must be arbitrary precision); the win
is compiled loop/dict plumbing, not C arithmetic.
"""


def ql_mul(dict a, dict b):
    cdef dict out = {}
    cdef object ea, ca, eb, cb, e, v
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def ql_add_into(dict acc, dict a, object scale=1):
    cdef object e, c, v
    if scale == 0:
        return
    for e, c in a.items():
        v = acc.get(e, 0) + scale * c
        if v:
            acc[e] = v
        elif e in acc:
            del acc[e]


def ql_addmul_into(dict acc, dict a, dict b):
    cdef object ea, ca, eb, cb, e, v
    if not a or not b:
        return
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = acc.get(e, 0) + ca * cb
            if v:
                acc[e] = v
            elif e in acc:
                del acc[e]


def xs_mul(dict a, dict b, tmax):
    cdef dict out = {}
    cdef dict acc, qa, qb
    cdef object xa, xb, x
    cdef bint bounded = tmax is not None
    cdef long long lim = 0
    if bounded:
        lim = tmax
    for xa, qa in a.items():
        for xb, qb in b.items():
            x = xa + xb
            if bounded and x > lim:
                continue
            acc = out.get(x)
            if acc is None:
                acc = {}
                out[x] = acc
            ql_addmul_into(acc, qa, qb)
    return {x: q for x, q in out.items() if q}
