"""Order-0 range coder with a 32-bit state and carry propagation.

The interval is split as ``(range * cum) >> PRECISION`` rather than
``(range >> PRECISION) * cum``, so the per-symbol truncation loss is below
2**-24 of the interval and the output stays within a few bytes of the ideal
code length.  Static model only: the frequencies are fixed by the caller's
probabilities.
"""

import numpy as np

from ..errors import CoderError

PRECISION = 16
TOTAL = 1 << PRECISION
TOP = 1 << 24
MASK32 = 0xFFFFFFFF


def quantize(probs) -> list:
    """Integer frequencies summing to 2**16; zero only where the probability is zero."""
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or np.any(p < 0) or not p.sum() > 0:
        raise CoderError("model probabilities must be a non-negative vector")
    p = p / p.sum()
    freq = np.where(p > 0, np.maximum(1, np.round(p * TOTAL)), 0).astype(np.int64)
    # settle rounding drift on the most probable symbol
    freq[int(np.argmax(freq))] += TOTAL - int(freq.sum())
    if freq.min() < 0:
        raise CoderError("model has too many symbols for the coder precision")
    return freq.tolist()


def _tables(probs):
    freq = quantize(probs)
    cum = [0]
    for f in freq:
        cum.append(cum[-1] + f)
    return freq, cum


def encode(symbols, probs) -> bytes:
    freq, cum = _tables(probs)
    out = bytearray()
    low = 0
    rng = MASK32
    cache = 0
    cache_size = 1
    syms = np.asarray(symbols).tolist()
    if syms and (min(syms) < 0 or max(syms) >= len(freq)):
        raise CoderError("symbol outside the model alphabet")
    for s in syms:
        f = freq[s]
        if f == 0:
            raise CoderError(f"symbol {s} has zero model probability")
        c = cum[s]
        lo = (rng * c) >> PRECISION
        rng = ((rng * (c + f)) >> PRECISION) - lo
        low += lo
        while rng < TOP:
            rng <<= 8
            # shift one byte of low out, resolving any pending carry
            if low < 0xFF000000 or low > MASK32:
                carry = low >> 32
                temp = cache
                while True:
                    out.append((temp + carry) & 0xFF)
                    temp = 0xFF
                    cache_size -= 1
                    if not cache_size:
                        break
                cache = (low >> 24) & 0xFF
            cache_size += 1
            low = (low & 0x00FFFFFF) << 8
    for _ in range(5):
        if low < 0xFF000000 or low > MASK32:
            carry = low >> 32
            temp = cache
            while True:
                out.append((temp + carry) & 0xFF)
                temp = 0xFF
                cache_size -= 1
                if not cache_size:
                    break
            cache = (low >> 24) & 0xFF
        cache_size += 1
        low = (low & 0x00FFFFFF) << 8
    # the first byte is always the zero seeded into the cache
    return bytes(out[1:])


def decode(data: bytes, probs, n: int) -> np.ndarray:
    freq, cum = _tables(probs)
    nsym = len(freq)
    buf = b"\0" + bytes(data) + b"\0" * 8
    pos = 5
    code = int.from_bytes(buf[:5], "big")
    rng = MASK32
    out = np.empty(n, dtype=np.int64)
    for k in range(n):
        s = 0
        hi = (rng * cum[1]) >> PRECISION
        while code >= hi or freq[s] == 0:
            s += 1
            if s >= nsym:
                raise CoderError("corrupt stream")
            hi = (rng * cum[s + 1]) >> PRECISION
        lo = (rng * cum[s]) >> PRECISION
        code -= lo
        rng = hi - lo
        while rng < TOP:
            rng <<= 8
            code = (code << 8) | buf[pos]
            pos += 1
        out[k] = s
    return out


def arithmetic_encode(symbols, probs) -> int:
    """Encoded size in bytes."""
    return len(encode(symbols, probs))


def ideal_bits(symbols, probs) -> float:
    """Self-information of the stream under the model, in bits."""
    p = np.asarray(probs, dtype=float)
    p = p / p.sum()
    counts = np.bincount(np.asarray(symbols, dtype=np.int64), minlength=len(p))
    used = counts > 0
    if np.any(p[used] == 0):
        raise CoderError("symbol with zero model probability present")
    return float(-(counts[used] * np.log2(p[used])).sum())


def entropy_bits(probs) -> float:
    p = np.asarray(probs, dtype=float)
    p = p[p > 0] / p.sum()
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0

