"""Compiled and pure-Python arithmetic kernels must be interchangeable."""

import random

import pytest

from flowloop import _kernel
from flowloop._kernel import _kernel_py

have_c = "c" in _kernel.available()
needs_c = pytest.mark.skipif(not have_c, reason="compiled kernel not built")


def random_laurent(rng, size=6, span=8):
    return {
        rng.randrange(-span, span + 1): rng.randrange(-9, 10) or 1
        for _ in range(size)
    }


def random_xseries(rng, xmax=8):
    return {
        xh: random_laurent(rng)
        for xh in rng.sample(range(0, xmax + 1), k=min(4, xmax + 1))
    }


@needs_c
def test_kernels_agree_on_fixed_workload():
    from flowloop import _ckernel

    rng = random.Random(20240817)
    for _ in range(200):
        a = random_laurent(rng)
        b = random_laurent(rng)
        assert _ckernel.ql_mul(a, b) == _kernel_py.ql_mul(a, b)

        acc1, acc2 = dict(a), dict(a)
        _ckernel.ql_addmul_into(acc1, a, b)
        _kernel_py.ql_addmul_into(acc2, a, b)
        assert acc1 == acc2

        acc1, acc2 = dict(b), dict(b)
        _ckernel.ql_add_into(acc1, a, -3)
        _kernel_py.ql_add_into(acc2, a, -3)
        assert acc1 == acc2

        sa, sb = random_xseries(rng), random_xseries(rng)
        for tmax in (None, 6):
            assert _ckernel.xs_mul(sa, sb, tmax) == _kernel_py.xs_mul(
                sa, sb, tmax
            )


@needs_c
def test_kernels_preserve_big_integers():
    from flowloop import _ckernel

    a = {0: 10**40, 2: -(3**50)}
    b = {0: 7**30, -4: 1}
    assert _ckernel.ql_mul(a, b) == _kernel_py.ql_mul(a, b)
    got = _ckernel.ql_mul(a, b)[2]
    assert got == 7**30 * -(3**50)


def test_set_active_roundtrip():
    start = _kernel.active_name
    try:
        _kernel.set_active("py")
        assert _kernel.active_name == "py"
        assert _kernel.active is _kernel_py
    finally:
        _kernel.set_active(start)
    assert _kernel.active_name == start


def test_set_active_rejects_unknown():
    with pytest.raises(ImportError):
        _kernel.set_active("fortran")


def test_zero_products_are_dropped():
    # cancellation must not leave literal zeros in the dicts
    a = {0: 1, 2: 1}
    b = {0: 1, 2: -1}
    for impl in (_kernel.active, _kernel_py):
        out = impl.ql_mul(a, b)
        assert out == {0: 1, 4: -1}
        assert 2 not in out


def test_series_multiply_respects_truncation():
    a = {0: {0: 1}, 6: {0: 1}}
    b = {0: {0: 1}, 4: {0: 1}}
    out = _kernel_py.xs_mul(a, b, 6)
    assert set(out) == {0, 4, 6}
