"""Array kernels for arithmetic in small finite fields.

Elements of F_{p^n} are encoded as integer codes ``sum(c_i * p**i)`` where
``c_i`` are the coordinates in the power basis of the field modulus.  Every
kernel takes a :class:`FieldContext` and int64 code arrays.

Two interchangeable backends exist: numba-compiled loops and a pure numpy
path.  Set ``NONSPECIAL_DISABLE_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

from . import _numpy

__all__ = [
    "FieldContext",
    "BACKEND",
    "backend",
    "all_codes",
    "mul",
    "power",
    "horner",
    "prime_trace",
    "orbit_degree",
]


class FieldContext(NamedTuple):
    p: int
    n: int
    modulus: np.ndarray  # int64, low-to-high, length n + 1, monic
    modulus_bits: int  # binary encoding of the modulus (p == 2 only)

    @classmethod
    def build(cls, p: int, modulus) -> "FieldContext":
        mod = np.asarray(modulus, dtype=np.int64)
        bits = 0
        if p == 2:
            for i, c in enumerate(modulus):
                bits |= int(c) << i
        return cls(p, len(mod) - 1, mod, bits)

    @property
    def order(self) -> int:
        return self.p**self.n


def _numba_requested() -> bool:
    flag = os.environ.get("NONSPECIAL_DISABLE_NUMBA", "").strip().lower()
    return flag not in {"1", "true", "yes", "on"}


def _load_numba():
    try:
        from . import _numba
    except ImportError:  # pragma: no cover - numba is an optional accelerator
        return None
    return _numba


_impl = _load_numba() if _numba_requested() else None
BACKEND = "numba" if _impl is not None else "numpy"
if _impl is None:
    _impl = _numpy


def backend(name: str):
    """Return the kernel module for ``name`` ("numba" or "numpy")."""
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba

        return _numba
    raise ValueError(f"unknown kernel backend {name!r}")


def all_codes(ctx: FieldContext) -> np.ndarray:
    return np.arange(ctx.order, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, ctx: FieldContext) -> np.ndarray:
    return _impl.mul(np.ascontiguousarray(a, np.int64), np.ascontiguousarray(b, np.int64), ctx)


def power(a: np.ndarray, e: int, ctx: FieldContext) -> np.ndarray:
    if e < 0:
        raise ValueError("negative exponent")
    return _impl.power(np.ascontiguousarray(a, np.int64), int(e), ctx)


def horner(coeffs, x: np.ndarray, ctx: FieldContext) -> np.ndarray:
    """Evaluate the polynomial with coefficient codes ``coeffs`` (low-to-high) at every code in ``x``."""
    c = np.ascontiguousarray(coeffs, np.int64)
    return _impl.horner(c, np.ascontiguousarray(x, np.int64), ctx)


def prime_trace(x: np.ndarray, ctx: FieldContext) -> np.ndarray:
    """Absolute trace to F_p, returned as residues in ``range(p)``."""
    return _impl.prime_trace(np.ascontiguousarray(x, np.int64), ctx)


def orbit_degree(x: np.ndarray, step: int, max_steps: int, ctx: FieldContext) -> np.ndarray:
    """Smallest ``e`` in ``1..max_steps`` with ``x**(p**(step*e)) == x`` (0 if none)."""
    return _impl.orbit_degree(np.ascontiguousarray(x, np.int64), int(step), int(max_steps), ctx)
