"""Counter-based random streams: a keyed SplitMix64 hash of the box index.

Every (seed, stream, box index) triple maps to one fixed 64-bit word, so a
box's randomness does not depend on how the ensemble is chunked or on the
order in which chunks are processed.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def _tag(name: str) -> int:
    return int.from_bytes(name.encode("ascii")[:8].ljust(8, b"\0"), "little")


INTERNAL = _tag("internal")
POSITION = _tag("position")
COLLAPSE = _tag("collapse")


def mix64(x: int) -> int:
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def _mix64_array(x: np.ndarray) -> np.ndarray:
    # in place on x; uint64 multiplication wraps mod 2**64
    tmp = np.empty_like(x)
    for shift, mult in ((30, 0xBF58476D1CE4E5B9), (27, 0x94D049BB133111EB)):
        np.right_shift(x, np.uint64(shift), out=tmp)
        x ^= tmp
        x *= np.uint64(mult)
    np.right_shift(x, np.uint64(31), out=tmp)
    x ^= tmp
    return x


def stream_key(seed: int, stream: int) -> int:
    return mix64((seed & MASK64) ^ stream)


def raw(seed: int, stream: int, start: int, stop: int) -> np.ndarray:
    """64-bit words for box indices ``start <= i < stop``."""
    x = np.arange(start + 1, stop + 1, dtype=np.uint64)
    x *= np.uint64(GOLDEN)
    x += np.uint64(stream_key(seed, stream))
    return _mix64_array(x)


def uniforms(seed: int, stream: int, start: int, stop: int) -> np.ndarray:
    """Doubles in [0, 1) with 53 random bits each."""
    r = raw(seed, stream, start, stop)
    r >>= np.uint64(11)
    u = r.astype(np.float64)
    u *= 2.0**-53
    return u
