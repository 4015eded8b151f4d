"""Pure-Python arithmetic kernel.

Sparse Laurent data is kept as plain dicts mapping half-integer exponents
(stored as ints counting halves) to nonzero coefficients.  A one-variable
poly is {q_half: int}; a two-variable series is {x_half: {q_half: int}}.
These four functions are the hot loops of every transfer-matrix product;
_ckernel.pyx is a line-for-line compiled twin.
"""


def ql_mul(a, b):
    """Product of two {exp: coeff} dicts."""
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def ql_add_into(acc, a, scale=1):
    """acc += scale * a, in place (zeros dropped)."""
    if scale == 0:
        return
    for e, c in a.items():
        v = acc.get(e, 0) + scale * c
        if v:
            acc[e] = v
        elif e in acc:
            del acc[e]


def ql_addmul_into(acc, a, b):
    """acc += a * b, in place, without building the product dict."""
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


def xs_mul(a, b, tmax):
    """Product of two {x_half: {q_half: coeff}} tables.

    Terms with x_half > tmax are dropped; tmax None means keep everything.
    """
    out = {}
    for xa, qa in a.items():
        for xb, qb in b.items():
            x = xa + xb
            if tmax is not None and x > tmax:
                continue
            acc = out.get(x)
            if acc is None:
                acc = {}
                out[x] = acc
            ql_addmul_into(acc, qa, qb)
    return {x: q for x, q in out.items() if q}
