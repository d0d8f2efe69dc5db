"""Pure numpy backend: the same kernels, vectorised across elements."""

from __future__ import annotations

import numpy as np


def _to_digits(a, p, n):
    digits = np.empty((a.shape[0], n), dtype=np.int64)
    rest = a.copy()
    for k in range(n):
        digits[:, k] = rest % p
        rest //= p
    return digits


def _from_digits(d, p):
    out = np.zeros(d.shape[0], dtype=np.int64)
    for k in range(d.shape[1] - 1, -1, -1):
        out = out * p + d[:, k]
    return out


def _mul2(a, b, n, mod_bits):
    a = a.copy()
    b = b.copy()
    r = np.zeros_like(a)
    top = np.int64(1) << n
    for _ in range(n):
        r ^= np.where(b & 1, a, 0)
        b >>= 1
        a <<= 1
        a ^= np.where(a & top, np.int64(mod_bits), 0)
    return r


def _mulp_digits(da, db, p, mod):
    n = da.shape[1]
    prod = np.zeros((da.shape[0], 2 * n - 1), dtype=np.int64)
    for i in range(n):
        prod[:, i : i + n] += da[:, i : i + 1] * db
    prod %= p
    for k in range(2 * n - 2, n - 1, -1):
        lead = prod[:, k : k + 1]
        prod[:, k - n : k] -= lead * mod[:n]
        prod[:, k] = 0
        prod %= p
    return prod[:, :n]


def _add_digits(da, db, p):
    return (da + db) % p


def mul(a, b, ctx):
    if ctx.p == 2:
        return _mul2(a, b, ctx.n, ctx.modulus_bits)
    da, db = _to_digits(a, ctx.p, ctx.n), _to_digits(b, ctx.p, ctx.n)
    return _from_digits(_mulp_digits(da, db, ctx.p, ctx.modulus), ctx.p)


def power(a, e, ctx):
    r = np.ones_like(a)
    base = a.copy()
    while e:
        if e & 1:
            r = mul(r, base, ctx)
        base = mul(base, base, ctx)
        e >>= 1
    return r


def _add(a, b, ctx):
    if ctx.p == 2:
        return a ^ b
    p, n = ctx.p, ctx.n
    return _from_digits(_add_digits(_to_digits(a, p, n), _to_digits(b, p, n), p), p)


def horner(coeffs, x, ctx):
    acc = np.zeros_like(x)
    for c in coeffs[::-1]:
        acc = _add(mul(acc, x, ctx), np.full_like(x, c), ctx)
    return acc


def prime_trace(x, ctx):
    acc = np.zeros_like(x)
    y = x.copy()
    for _ in range(ctx.n):
        acc = _add(acc, y, ctx)
        y = power(y, ctx.p, ctx)
    return acc % ctx.p


def orbit_degree(x, step, max_steps, ctx):
    out = np.zeros_like(x)
    y = x.copy()
    exp = ctx.p**step
    for e in range(1, max_steps + 1):
        y = power(y, exp, ctx)
        hit = (y == x) & (out == 0)
        out[hit] = e
    return out
