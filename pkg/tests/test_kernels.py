import os
import subprocess
import sys

import numpy as np
import pytest

from nonspecial import kernels
from nonspecial.gf import field_make

FIELDS = [(2, 1), (2, 2), (2, 4), (2, 7), (3, 1), (3, 2), (3, 3), (3, 5)]


def slow_mul(a: int, b: int, p: int, modulus) -> int:
    """Schoolbook product of two codes, reduced by the modulus."""
    n = len(modulus) - 1
    da = [(a // p**i) % p for i in range(n)]
    db = [(b // p**i) % p for i in range(n)]
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * modulus[i]) % p
    return sum(c * p**i for i, c in enumerate(prod[:n]))


def _ctx(p, m):
    return field_make(p, m).context


@pytest.mark.parametrize("p,m", FIELDS)
def test_mul_matches_schoolbook(p, m):
    ctx = _ctx(p, m)
    rng = np.random.default_rng(p * 100 + m)
    a = rng.integers(0, ctx.order, 200)
    b = rng.integers(0, ctx.order, 200)
    got = kernels.mul(a, b, ctx)
    want = [slow_mul(int(x), int(y), p, ctx.modulus.tolist()) for x, y in zip(a, b)]
    assert got.tolist() == want


@pytest.mark.parametrize("p,m", FIELDS)
def test_backends_agree(p, m):
    ctx = _ctx(p, m)
    nb, npy = kernels.backend("numba"), kernels.backend("numpy")
    xs = kernels.all_codes(ctx) if ctx.order <= 4096 else np.random.default_rng(0).integers(0, ctx.order, 4096)
    ys = xs[::-1].copy()
    coeffs = np.array([1, 0, p - 1, 1 % p, 1], dtype=np.int64)
    assert np.array_equal(nb.mul(xs, ys, ctx), npy.mul(xs, ys, ctx))
    assert np.array_equal(nb.power(xs, 5, ctx), npy.power(xs, 5, ctx))
    assert np.array_equal(nb.horner(coeffs, xs, ctx), npy.horner(coeffs, xs, ctx))
    assert np.array_equal(nb.prime_trace(xs, ctx), npy.prime_trace(xs, ctx))
    assert np.array_equal(nb.orbit_degree(xs, 1, m, ctx), npy.orbit_degree(xs, 1, m, ctx))


@pytest.mark.parametrize("p,m", [(2, 4), (2, 6), (3, 2), (3, 4)])
def test_multiplicative_group_order(p, m):
    ctx = _ctx(p, m)
    xs = kernels.all_codes(ctx)[1:]
    assert np.all(kernels.power(xs, ctx.order - 1, ctx) == 1)


@pytest.mark.parametrize("p,m", [(2, 6), (3, 4)])
def test_orbit_degree_counts_subfields(p, m):
    ctx = _ctx(p, m)
    deg = kernels.orbit_degree(kernels.all_codes(ctx), 1, m, ctx)
    for d in range(1, m + 1):
        if m % d == 0:
            # elements of the subfield of degree d are exactly those whose orbit length divides d
            assert sum(int(np.sum(deg == e)) for e in range(1, d + 1) if d % e == 0) == p**d
        else:
            assert not np.any(deg == d)


def test_trace_is_additive_and_surjective():
    ctx = _ctx(2, 5)
    xs = kernels.all_codes(ctx)
    tr = kernels.prime_trace(xs, ctx)
    assert set(tr.tolist()) == {0, 1}
    assert int(np.sum(tr)) == ctx.order // 2
    assert np.array_equal(kernels.prime_trace(xs ^ 7, ctx), tr ^ int(kernels.prime_trace(np.array([7]), ctx)[0]))


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        kernels.power(np.array([1]), -1, _ctx(2, 2))


def test_env_flag_selects_numpy():
    env = dict(os.environ, NONSPECIAL_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from nonspecial import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
