"""Binary dump of the demon's joint outcome stream.

Layout (little-endian): magic ``b"QRMC"``, u32 version (= 1), u64 N, then
ceil(N / 4) bytes holding N 2-bit symbols, four per byte, first symbol in
the lowest two bits.  Symbol value is 2*a + b for A/B readouts a, b in {0, 1}
(0 = g, 1 = e), i.e. the basis order gg, ge, eg, ee.
"""

import struct
from typing import BinaryIO, Union
from pathlib import Path

import numpy as np

from ..errors import ContractError

MAGIC = b"QRMC"
VERSION = 1
_HEADER = struct.Struct("<4sIQ")


def pack_symbols(symbols) -> bytes:
    s = np.asarray(symbols, dtype=np.uint8)
    if s.size and s.max() > 3:
        raise ContractError("joint symbols must be in 0..3")
    pad = (-s.size) % 4
    s = np.concatenate([s, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 4)
    packed = s[:, 0] | (s[:, 1] << 2) | (s[:, 2] << 4) | (s[:, 3] << 6)
    return packed.astype(np.uint8).tobytes()


def unpack_symbols(data: bytes, n: int) -> np.ndarray:
    b = np.frombuffer(data, dtype=np.uint8)
    s = np.stack([(b >> k) & 3 for k in (0, 2, 4, 6)], axis=1).ravel()
    return s[:n].copy()


def dumps(symbols) -> bytes:
    s = np.asarray(symbols)
    return _HEADER.pack(MAGIC, VERSION, int(s.size)) + pack_symbols(s)


def loads(data: bytes) -> np.ndarray:
    if len(data) < _HEADER.size:
        raise ContractError("record too short")
    magic, version, n = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ContractError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ContractError(f"unsupported record version {version}")
    body = data[_HEADER.size:]
    if len(body) != (n + 3) // 4:
        raise ContractError("record body length does not match N")
    return unpack_symbols(body, n)


def write(dest: Union[str, Path, BinaryIO], symbols) -> None:
    blob = dumps(symbols)
    if hasattr(dest, "write"):
        dest.write(blob)
    else:
        Path(dest).write_bytes(blob)


def read(src: Union[str, Path, BinaryIO]) -> np.ndarray:
    blob = src.read() if hasattr(src, "read") else Path(src).read_bytes()
    return loads(blob)
