"""Infinite-dimensional highest-weight tensor action, one weight sector at
a time, and the trace identity tying it to the weight-graded matrices.

The braiding on a pair of factors acts on weight vectors v_i (x) v_j by

    R(x)_{i,j}^{i',j'} = delta_{i+j, i'+j'} q^{j j'} (q x^{-1})^{(j+j'+1)/2}
                         [i; j']_q  (q^{j+1} x^{-1}; q)_{i-j'}

with [i; j']_q the Gaussian binomial and (y; q)_k the finite q-product
prod_{l<k} (1 - y q^l).  Each total-weight sector of a pair is finite, so
everything here is exact.  Inverse letters use the mirrored entries
R^{-1}(x)_{i,j}^{i',j'} = R(q^{-1}, x^{-1})_{j,i}^{j',i'}, validated
against R R^{-1} = id on sectors of weight <= 3 at first use (exact
adjugate inverse as fallback).
"""

from math import comb

from . import braid as _braid
from . import lawrence as _lawrence
from .errors import InputError, VerificationError
from .ring import QLaurent, XSeries, qbinom


def r_entry(i, j, ip, jp, inverse_x=False):
    """Single braiding coefficient; zero off the conserved sector."""
    if min(i, j, ip, jp) < 0 or i + j != ip + jp or jp > i:
        return XSeries.zero()
    qh = 2 * j * jp + (j + jp + 1)
    xh = -(j + jp + 1)
    out = XSeries.monomial(QLaurent.monomial(1, qh), xh) * qbinom(i, jp)
    for l in range(i - jp):
        factor = XSeries(
            {0: QLaurent.one(), -2: QLaurent.monomial(-1, 2 * (j + 1 + l))},
            trunc=None,
        )
        out = out * factor
    if inverse_x:
        out = out.substitute_x_inverse()
    return out


def _r_entry_inv(i, j, ip, jp, inverse_x=False):
    """Mirror of r_entry implementing the inverse braiding: swap the two
    factors inside source and target and invert both variables."""
    out = r_entry(j, i, jp, ip, inverse_x=False)
    out = out.bar_q().substitute_x_inverse()
    if inverse_x:
        out = out.substitute_x_inverse()
    return out


def _pair_sector_matrix(total, entry_fn):
    """Matrix of a pair braiding on the weight-`total` sector, as
    cols[(i, j)][(ip, jp)]."""
    cols = {}
    for i in range(total + 1):
        j = total - i
        vec = {}
        for ip in range(total + 1):
            jpp = total - ip
            val = entry_fn(i, j, ip, jpp)
            if not val.is_zero:
                vec[(ip, jpp)] = val
        cols[(i, j)] = vec
    return cols


def _sector_compose(a_cols, b_cols):
    """a o b on pair sectors."""
    out = {}
    for src, vec in b_cols.items():
        acc = {}
        for mid, coeff in vec.items():
            for dst, w in a_cols.get(mid, {}).items():
                term = w * coeff
                cur = acc.get(dst)
                acc[dst] = term if cur is None else cur + term
        out[src] = {d: v for d, v in acc.items() if not v.is_zero}
    return out


_mirror_checked = {}


def _mirror_ok(inverse_x):
    hit = _mirror_checked.get(inverse_x)
    if hit is not None:
        return hit
    ok = True
    for total in range(4):
        fwd = _pair_sector_matrix(
            total, lambda i, j, ip, jp: r_entry(i, j, ip, jp, inverse_x)
        )
        bwd = _pair_sector_matrix(
            total, lambda i, j, ip, jp: _r_entry_inv(i, j, ip, jp, inverse_x)
        )
        prod = _sector_compose(bwd, fwd)
        for src, vec in prod.items():
            expect = {src: XSeries.one()}
            if vec != expect:
                ok = False
    _mirror_checked[inverse_x] = ok
    return ok


def _adjugate_inverse(cols, total):
    """Exact sector inverse via adjugate / determinant (unit monomial)."""
    states = [(i, total - i) for i in range(total + 1)]
    k = len(states)
    mat = [[cols.get(s, {}).get(d, XSeries.zero()) for s in states]
           for d in states]  # mat[dst][src]

    def det(rows, colset):
        if not rows:
            return XSeries.one()
        r = rows[0]
        acc = XSeries.zero()
        for pos, c in enumerate(colset):
            e = mat[r][c]
            if e.is_zero:
                continue
            sub = det(rows[1:], colset[:pos] + colset[pos + 1:])
            term = e * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        return acc

    full = det(list(range(k)), list(range(k)))
    if full.is_zero or len(full.terms) != 1:
        raise VerificationError("sector determinant is not a monomial")
    inv_cols = {}
    for ci, src in enumerate(states):
        vec = {}
        for ri, dst in enumerate(states):
            rows = [r for r in range(k) if r != ci]
            colset = [c for c in range(k) if c != ri]
            minor = det(rows, colset)
            if minor.is_zero:
                continue
            sign = -1 if (ri + ci) % 2 else 1
            # (adj)_{dst,src} = sign * minor; entry of inverse = adj / det
            num = minor if sign > 0 else -minor
            ((xh, qc),) = full.terms.items()
            unit = qc.unit_monomial()
            if unit is None:
                raise VerificationError("sector determinant not a unit")
            c0, qh = unit
            vec[dst] = num.scale_monomial(c0, -qh, -xh)
        inv_cols[src] = vec
    return inv_cols


_pair_cache = {}


def _pair_matrix(total, sign, inverse_x):
    key = (total, sign, inverse_x)
    hit = _pair_cache.get(key)
    if hit is not None:
        return hit
    if sign > 0:
        cols = _pair_sector_matrix(
            total, lambda i, j, ip, jp: r_entry(i, j, ip, jp, inverse_x)
        )
    elif _mirror_ok(inverse_x):
        cols = _pair_sector_matrix(
            total, lambda i, j, ip, jp: _r_entry_inv(i, j, ip, jp, inverse_x)
        )
    else:
        cols = _adjugate_inverse(
            _pair_sector_matrix(
                total, lambda i, j, ip, jp: r_entry(i, j, ip, jp, inverse_x)
            ),
            total,
        )
    _pair_cache[key] = cols
    return cols


_tensor_states_cache = {}


def tensor_states(n, m):
    """Compositions of m into n parts (one label per strand), lex order."""
    key = (n, m)
    hit = _tensor_states_cache.get(key)
    if hit is None:
        def build(parts, left):
            if parts == 1:
                yield (left,)
                return
            for first in range(left + 1):
                for rest in build(parts - 1, left - first):
                    yield (first,) + rest

        hit = sorted(build(n, m))
        _tensor_states_cache[key] = hit
    return hit


def tensor_dim(n, m):
    return comb(m + n - 1, n - 1)


def tensor_action(word, m, inverse_x=False):
    """Sparse matrix of the word on the weight-m sector of the n-fold
    tensor power; cols[src][dst] = entry.  inverse_x selects the variable
    x^{-1} in every braiding factor (the highest-weight parameter of the
    left-hand side of the trace identity)."""
    n = word.n
    cols = {s: {s: XSeries.one()} for s in tensor_states(n, m)}
    for v in word.letters:
        k = abs(v) - 1  # 0-based factor position
        sign = 1 if v > 0 else -1
        out = {}
        for src, vec in cols.items():
            acc = {}
            for mid, coeff in vec.items():
                i, j = mid[k], mid[k + 1]
                pair = _pair_matrix(i + j, sign, inverse_x)
                for (ip, jp), w in pair.get((i, j), {}).items():
                    dst = mid[:k] + (ip, jp) + mid[k + 2:]
                    term = w * coeff
                    cur = acc.get(dst)
                    acc[dst] = term if cur is None else cur + term
            out[src] = {d: t for d, t in acc.items() if not t.is_zero}
        cols = out
    return cols


def tensor_trace(word, m, inverse_x=False):
    cols = tensor_action(word, m, inverse_x)
    tr = XSeries.zero()
    for s, vec in cols.items():
        d = vec.get(s)
        if d is not None:
            tr = tr + d
    return tr


def kohno_check(word, m_max):
    """Compare, weight by weight,

        Tr (tensor sector m, variable x^{-1})
      == (qx)^{w/2} * sum_{k <= m} Tr_{V_{n,k}}.

    Returns (ok, lhs_list, rhs_list) with the exact per-weight traces."""
    stats = _braid.analyze(word)
    w = stats.writhe
    lhs = [tensor_trace(word, m, inverse_x=True) for m in range(m_max + 1)]
    graded = _lawrence.graded_trace(word, m_max)
    rhs = []
    run = XSeries.zero()
    for m in range(m_max + 1):
        run = run + graded[m]
        rhs.append(run.scale_monomial(1, w, w))
    ok = all(lhs[m] == rhs[m] for m in range(m_max + 1))
    return ok, lhs, rhs
