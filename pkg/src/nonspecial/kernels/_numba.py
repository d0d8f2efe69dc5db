"""numba backend: scalar field operations on integer codes, looped per element."""

from __future__ import annotations

import os

import numpy as np
from numba import config, njit, prange

# the default layer probes TBB first and warns on old installs
if "NUMBA_THREADING_LAYER" not in os.environ:
    config.THREADING_LAYER = "workqueue"


@njit(cache=True)
def _mul2(a, b, n, mod_bits):
    top = np.int64(1) << n
    r = np.int64(0)
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod_bits
    return r


@njit(cache=True)
def _mulp(a, b, p, n, mod):
    # digits of b from the top, r <- r*x + b_i*a, reducing r*x on the fly
    da = np.empty(n, np.int64)
    db = np.empty(n, np.int64)
    r = np.zeros(n, np.int64)
    for i in range(n):
        da[i] = a % p
        a //= p
        db[i] = b % p
        b //= p
    for i in range(n - 1, -1, -1):
        lead = r[n - 1]
        for k in range(n - 1, 0, -1):
            r[k] = r[k - 1]
        r[0] = 0
        if lead:
            for k in range(n):
                r[k] = (r[k] - lead * mod[k]) % p
        bi = db[i]
        if bi:
            for k in range(n):
                r[k] = (r[k] + bi * da[k]) % p
    out = np.int64(0)
    for k in range(n - 1, -1, -1):
        out = out * p + r[k]
    return out


@njit(cache=True)
def _mul(a, b, p, n, mod, mod_bits):
    if p == 2:
        return _mul2(a, b, n, mod_bits)
    return _mulp(a, b, p, n, mod)


@njit(cache=True)
def _add(a, b, p):
    if p == 2:
        return a ^ b
    out = np.int64(0)
    scale = np.int64(1)
    while a or b:
        out += ((a % p + b % p) % p) * scale
        a //= p
        b //= p
        scale *= p
    return out


@njit(cache=True)
def _pow(a, e, p, n, mod, mod_bits):
    r = np.int64(1)
    while e:
        if e & 1:
            r = _mul(r, a, p, n, mod, mod_bits)
        a = _mul(a, a, p, n, mod, mod_bits)
        e >>= 1
    return r


@njit(cache=True, parallel=True)
def _mul_batch(a, b, p, n, mod, mod_bits):
    out = np.empty_like(a)
    for i in prange(a.shape[0]):
        out[i] = _mul(a[i], b[i], p, n, mod, mod_bits)
    return out


@njit(cache=True, parallel=True)
def _pow_batch(a, e, p, n, mod, mod_bits):
    out = np.empty_like(a)
    for i in prange(a.shape[0]):
        out[i] = _pow(a[i], e, p, n, mod, mod_bits)
    return out


@njit(cache=True, parallel=True)
def _horner_batch(coeffs, x, p, n, mod, mod_bits):
    out = np.empty_like(x)
    top = coeffs.shape[0] - 1
    for i in prange(x.shape[0]):
        acc = np.int64(0)
        for k in range(top, -1, -1):
            acc = _add(_mul(acc, x[i], p, n, mod, mod_bits), coeffs[k], p)
        out[i] = acc
    return out


@njit(cache=True, parallel=True)
def _trace_batch(x, p, n, mod, mod_bits):
    out = np.empty_like(x)
    for i in prange(x.shape[0]):
        acc = np.int64(0)
        y = x[i]
        for _ in range(n):
            acc = _add(acc, y, p)
            y = _pow(y, p, p, n, mod, mod_bits)
        out[i] = acc % p
    return out


@njit(cache=True, parallel=True)
def _orbit_batch(x, frob_exp, max_steps, p, n, mod, mod_bits):
    out = np.zeros_like(x)
    for i in prange(x.shape[0]):
        y = x[i]
        for e in range(1, max_steps + 1):
            y = _pow(y, frob_exp, p, n, mod, mod_bits)
            if y == x[i]:
                out[i] = e
                break
    return out


def mul(a, b, ctx):
    return _mul_batch(a, b, ctx.p, ctx.n, ctx.modulus, ctx.modulus_bits)


def power(a, e, ctx):
    return _pow_batch(a, e, ctx.p, ctx.n, ctx.modulus, ctx.modulus_bits)


def horner(coeffs, x, ctx):
    return _horner_batch(coeffs, x, ctx.p, ctx.n, ctx.modulus, ctx.modulus_bits)


def prime_trace(x, ctx):
    return _trace_batch(x, ctx.p, ctx.n, ctx.modulus, ctx.modulus_bits)


def orbit_degree(x, step, max_steps, ctx):
    return _orbit_batch(x, ctx.p**step, max_steps, ctx.p, ctx.n, ctx.modulus, ctx.modulus_bits)
