"""Weight-graded braid representations V_{n,m}.

Basis states of V_{n,m} are (n-1)-tuples of nonnegative ints summing to m
(the label a_i sits on column i).  A positive generator i pulls b units off
the left neighbor and c off the right into the middle,

    (a_{i-1}, a_i, a_{i+1}) -> (a_{i-1}-b, a_i+b+c, a_{i+1}-c),

summed over 0 <= b <= a_{i-1}, 0 <= c <= a_{i+1} (boundary columns have no
neighbor on that side and the corresponding shed is pinned to 0).  Two
weight conventions are supported:

  half   (-1)^{a_i} q^{(a_i^2 + a_i+b+c)/2} [a_i+b+c; a_i,b,c]_q
         x^{(2a_i+b+c)/2}
  under  (-1)^{a_i} q^{a_i(a_i-1)/2} [a_i+b+c; a_i,b,c]_q (qx)^{a_i+c}

Both give the same closed traces on knot words.  Negative generators use
the mirrored weights (q -> q^{-1}, monomials inverted, and for `under' the
left/right shed roles swapped); that mirror is checked against sigma
sigma^{-1} = id for all n, m <= 4 at first use, with an exact triangular
inverse as fallback if the check ever failed.
"""

from dataclasses import dataclass
from math import comb

from . import braid as _braid
from ._parallel import parallel_map
from .errors import InputError, VerificationError
from .ring import QLaurent, XSeries, qtrinom

HALF = "half"
UNDER = "under"


def _check_convention(convention):
    if convention not in (HALF, UNDER):
        raise InputError(f"unknown convention {convention!r}")


_states_cache = {}


def weight_states(n, m):
    """All (n-1)-tuples of nonnegative ints summing to m, lexicographic."""
    key = (n, m)
    hit = _states_cache.get(key)
    if hit is None:
        def build(parts, left):
            if parts == 1:
                yield (left,)
                return
            for first in range(left + 1):
                for rest in build(parts - 1, left - first):
                    yield (first,) + rest

        hit = sorted(build(n - 1, m))
        _states_cache[key] = hit
    return hit


def dim(n, m):
    return comb(m + n - 2, m)


@dataclass
class GradedMatrix:
    """Sparse matrix on weight_states(n, m); cols[src][dst] = entry."""

    n: int
    m: int
    cols: dict

    @classmethod
    def identity(cls, n, m):
        one = XSeries.one()
        return cls(n, m, {s: {s: one} for s in weight_states(n, m)})

    def entry(self, src, dst):
        return self.cols.get(src, {}).get(dst, XSeries.zero())

    def after(self, first):
        """self o first (apply `first`, then self)."""
        if (self.n, self.m) != (first.n, first.m):
            raise InputError("composing matrices of different grades")
        cols = {}
        for src, vec in first.cols.items():
            acc = {}
            for mid, coeff in vec.items():
                for dst, w in self.cols.get(mid, {}).items():
                    cur = acc.get(dst)
                    term = w * coeff
                    acc[dst] = term if cur is None else cur + term
            cols[src] = {d: v for d, v in acc.items() if not v.is_zero}
        return GradedMatrix(self.n, self.m, cols)

    def trace(self):
        tr = XSeries.zero()
        for s, vec in self.cols.items():
            d = vec.get(s)
            if d is not None:
                tr = tr + d
        return tr

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        if (self.n, self.m) != (other.n, other.m):
            return False
        for s in weight_states(self.n, self.m):
            a = self.cols.get(s, {})
            b = other.cols.get(s, {})
            for d in set(a) | set(b):
                if a.get(d, XSeries.zero()) != b.get(d, XSeries.zero()):
                    return False
        return True

    def dump(self):
        """One line per nonzero entry: (from) -> (to) : value."""
        lines = []
        for src in weight_states(self.n, self.m):
            vec = self.cols.get(src, {})
            for dst in sorted(vec):
                val = vec[dst]
                if not val.is_zero:
                    sfrom = ",".join(str(v) for v in src)
                    sto = ",".join(str(v) for v in dst)
                    lines.append(f"({sfrom}) -> ({sto}) : {val.render()}")
        return "\n".join(lines)


def _positive_weight(A, b, c, convention):
    """(q_half, x_half, QLaurent factor, sign) of the (A, b, c) move."""
    tri = qtrinom(A + b + c, A, b, c)
    if convention == HALF:
        qh = A * A + A + b + c
        xh = 2 * A + b + c
    else:
        qh = A * (A - 1) + 2 * (A + c)
        xh = 2 * (A + c)
    coeff = tri.shift(qh)
    if A % 2:
        coeff = -coeff
    return coeff, xh


def _negative_weight(A, b, c, convention):
    tri = qtrinom(A + b + c, A, b, c).bar()
    if convention == HALF:
        qh = -(A * A + A + b + c)
        xh = -(2 * A + b + c)
    else:
        # mirrored under-convention: left shed b takes the role of c
        qh = -(A * (A - 1)) - 2 * (A + b)
        xh = -(2 * (A + b))
    coeff = tri.shift(qh)
    if A % 2:
        coeff = -coeff
    return coeff, xh


_gen_cache = {}


def _generator_mirror(n, m, i, sign, convention):
    cols = {}
    for s in weight_states(n, m):
        L = s[i - 2] if i > 1 else 0
        A = s[i - 1]
        R = s[i] if i < n - 1 else 0
        vec = {}
        for b in range(L + 1):
            for c in range(R + 1):
                t = list(s)
                if i > 1:
                    t[i - 2] = L - b
                t[i - 1] = A + b + c
                if i < n - 1:
                    t[i] = R - c
                if sign > 0:
                    coeff, xh = _positive_weight(A, b, c, convention)
                else:
                    coeff, xh = _negative_weight(A, b, c, convention)
                if coeff.is_zero:
                    continue
                dst = tuple(t)
                term = XSeries.monomial(coeff, xh)
                cur = vec.get(dst)
                vec[dst] = term if cur is None else cur + term
        cols[s] = {d: v for d, v in vec.items() if not v.is_zero}
    return GradedMatrix(n, m, cols)


def _triangular_inverse(mat):
    """Exact inverse of a generator matrix.

    The off-diagonal part strictly raises the middle label, so with
    M = D + N (D the monomial diagonal), M^{-1} = sum_k (-D^{-1}N)^k D^{-1}
    terminates after at most m+1 terms."""
    n, m = mat.n, mat.m
    d_inv_cols = {}
    n_cols = {}
    for s, vec in mat.cols.items():
        diag = vec.get(s)
        if diag is None:
            raise VerificationError("generator matrix missing diagonal")
        if len(diag.terms) != 1:
            raise VerificationError("generator diagonal is not a monomial")
        ((xh, qc),) = diag.terms.items()
        unit = qc.unit_monomial()
        if unit is None:
            raise VerificationError("generator diagonal is not a unit")
        c0, qh = unit
        d_inv_cols[s] = {s: XSeries.monomial(QLaurent.monomial(c0, -qh), -xh)}
        off = {d: v for d, v in vec.items() if d != s}
        if off:
            n_cols[s] = off
    d_inv = GradedMatrix(n, m, d_inv_cols)
    n_mat = GradedMatrix(n, m, n_cols)
    step = d_inv.after(n_mat)  # D^{-1} N
    acc = GradedMatrix.identity(n, m)
    power = GradedMatrix.identity(n, m)
    for _ in range(m + 1):
        power = power.after(step)
        if not any(power.cols.values()):
            break
        sgn_cols = {
            s: {d: -v for d, v in vec.items()}
            for s, vec in power.cols.items()
        }
        power = GradedMatrix(n, m, sgn_cols)
        acc_cols = dict(acc.cols)
        for s, vec in power.cols.items():
            cur = dict(acc_cols.get(s, {}))
            for d, v in vec.items():
                cur[d] = cur[d] + v if d in cur else v
            acc_cols[s] = {d: v for d, v in cur.items() if not v.is_zero}
        acc = GradedMatrix(n, m, acc_cols)
    return acc.after(d_inv)  # (I + D^{-1}N)^{-1} D^{-1} via Neumann sum


_mirror_ok = {}


def _mirror_validated(convention):
    """True if the mirrored negative weights invert the positive ones for
    all (n, m) <= (4, 4); cached per convention."""
    hit = _mirror_ok.get(convention)
    if hit is not None:
        return hit
    ok = True
    for n in range(2, 5):
        for m in range(0, 5):
            ident = GradedMatrix.identity(n, m)
            for i in range(1, n):
                pos = _generator_mirror(n, m, i, +1, convention)
                neg = _generator_mirror(n, m, i, -1, convention)
                if neg.after(pos) != ident:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    _mirror_ok[convention] = ok
    return ok


def generator_matrix(n, m, i, sign, convention=HALF):
    """Matrix of generator i (sign +1/-1) on weight_states(n, m)."""
    _check_convention(convention)
    if not 1 <= i <= n - 1:
        raise InputError(f"generator index {i} out of range for n={n}")
    if sign not in (1, -1):
        raise InputError("sign must be +1 or -1")
    key = (n, m, i, sign, convention)
    hit = _gen_cache.get(key)
    if hit is not None:
        return hit
    if sign > 0 or _mirror_validated(convention):
        mat = _generator_mirror(n, m, i, sign, convention)
    else:
        mat = _triangular_inverse(
            generator_matrix(n, m, i, +1, convention)
        )
    _gen_cache[key] = mat
    return mat


def rep_matrix(word, m, convention=HALF):
    """Product of generator matrices over the word (left letter first)."""
    _check_convention(convention)
    acc = GradedMatrix.identity(word.n, m)
    for v in word.letters:
        g = generator_matrix(word.n, m, abs(v), 1 if v > 0 else -1, convention)
        acc = g.after(acc)
    return acc


def graded_trace(word, m_max, convention=HALF):
    """[Tr rep_matrix(word, m) for m in 0..m_max], exact Laurent entries.

    For knot closures the half x-powers must cancel; that integrality is
    asserted rather than assumed."""
    _check_convention(convention)
    is_knot = _braid.analyze(word).closure_components == 1

    def one_trace(m):
        return rep_matrix(word, m, convention).trace()

    traces = parallel_map(one_trace, range(m_max + 1))
    if is_knot and convention == HALF:
        for m, tr in enumerate(traces):
            if not tr.x_integral:
                raise VerificationError(
                    f"trace at weight {m} kept half x-powers: {tr.render()}"
                )
    return traces


def unknot_closure_check(word, z_order):
    """The two-fixed-point specialization

        sum_{m, eps} Tr_{V_{n,m}} |_{x = q^{2 eps - 1}} q^{w eps} (-1)^eps
            z^{m + n eps}

    as a series in z; equals 1 - z exactly when the machinery is healthy on
    an unknot closure."""
    stats = _braid.analyze(word)
    traces = graded_trace(word, z_order)
    trunc = 2 * z_order + 1
    acc = {}
    for eps in (0, 1):
        k = 2 * eps - 1
        for m, tr in enumerate(traces):
            j = m + word.n * eps
            if j > z_order:
                continue
            spec = tr.subst_x_qpow(k)
            spec = spec.shift(2 * stats.writhe * eps)
            if eps:
                spec = -spec
            zh = 2 * j
            cur = acc.get(zh)
            acc[zh] = spec if cur is None else cur + spec
    return XSeries({zh: v for zh, v in acc.items() if v}, trunc)
