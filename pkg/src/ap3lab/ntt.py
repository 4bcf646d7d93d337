"""Exact integer convolution of non-negative integer sequences.

Small inputs go through ``np.convolve`` on int64 (exact while no partial sum
overflows). Larger ones use a radix-2 number-theoretic transform modulo two
NTT-friendly primes below 2**30 and recombine by the Chinese remainder
theorem, so every output coefficient below P1*P2 (about 4.7e17) is exact.
"""

from __future__ import annotations

import numpy as np

P1, G1 = 998244353, 3   # 119 * 2**23 + 1
P2, G2 = 469762049, 3   # 7 * 2**26 + 1
MAX_EXACT = P1 * P2
MAX_LOG2 = 23

SCHOOLBOOK_LIMIT = 2048


def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _twiddles(n: int, p: int, root: int) -> np.ndarray:
    """root**j mod p for j < n//2, where root has order n."""
    half = max(n // 2, 1)
    tw = np.ones(1, dtype=np.uint64)
    while tw.size < half:
        step = np.uint64(pow(root, tw.size, p))
        tw = np.concatenate([tw, tw * step % np.uint64(p)])
    return tw[:half]


def _ntt(a: np.ndarray, p: int, g: int, invert: bool) -> np.ndarray:
    n = a.size
    root = pow(g, (p - 1) // n, p)
    if invert:
        root = pow(root, p - 2, p)
    a = a[_bit_reverse(n)].copy()
    tw_all = _twiddles(n, p, root)
    up = np.uint64(p)
    length = 2
    while length <= n:
        half = length // 2
        tw = tw_all[:: n // length][:half]
        blocks = a.reshape(-1, length)
        u = blocks[:, :half].copy()
        v = blocks[:, half:] * tw % up
        blocks[:, :half] = (u + v) % up
        blocks[:, half:] = (u + up - v) % up
        length *= 2
    if invert:
        a = a * np.uint64(pow(n, p - 2, p)) % up
    return a


def _cyclic_mod(x: np.ndarray, y: np.ndarray | None, size: int, p: int, g: int) -> np.ndarray:
    up = np.uint64(p)
    fa = np.zeros(size, dtype=np.uint64)
    fa[: x.size] = x % p
    fa = _ntt(fa, p, g, False)
    if y is None:
        fb = fa
    else:
        fb = np.zeros(size, dtype=np.uint64)
        fb[: y.size] = y % p
        fb = _ntt(fb, p, g, False)
    return _ntt(fa * fb % up, p, g, True)


def convolve(x, y=None) -> np.ndarray:
    """Exact linear convolution of two int sequences (``y=None`` squares ``x``).

    Inputs must be non-negative. The caller is responsible for the output
    bound ``sum(x) * sum(y) < MAX_EXACT``; :func:`convolve` checks it.
    """
    x = np.asarray(x, dtype=np.int64)
    yy = x if y is None else np.asarray(y, dtype=np.int64)
    if x.size == 0 or yy.size == 0:
        return np.zeros(0, dtype=np.int64)
    if (x < 0).any() or (yy < 0).any():
        raise ValueError("convolve expects non-negative coefficients")
    bound = int(x.sum()) * int(yy.sum())
    if bound >= MAX_EXACT:
        raise OverflowError("coefficient bound exceeds the CRT range")
    out_len = x.size + yy.size - 1
    if min(x.size, yy.size) <= SCHOOLBOOK_LIMIT:
        return np.convolve(x, yy)
    size = 1 << (out_len - 1).bit_length()
    if size > 1 << MAX_LOG2:
        raise ValueError(f"transform length {size} exceeds 2**{MAX_LOG2}")
    xu = x.astype(np.uint64)
    yu = None if y is None else yy.astype(np.uint64)
    r1 = _cyclic_mod(xu, yu, size, P1, G1)[:out_len].astype(np.int64)
    r2 = _cyclic_mod(xu, yu, size, P2, G2)[:out_len].astype(np.int64)
    # x = r1 + P1 * t with t = (r2 - r1) / P1 mod P2
    inv = pow(P1, P2 - 2, P2)
    t = ((r2 - r1) % P2).astype(np.uint64) * np.uint64(inv) % np.uint64(P2)
    return r1 + np.int64(P1) * t.astype(np.int64)
