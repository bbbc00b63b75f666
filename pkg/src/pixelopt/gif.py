"""Minimal animated GIF89a writer for grayscale frames.

Every frame is written in full with a fixed 256-level gray palette, so
decoding reproduces the 8-bit pixels exactly. Identical consecutive frames are
kept as separate frames, which matters for optimization timelines where the
best image often stagnates.
"""

import os
import struct

import numpy as np
from PIL import Image

__all__ = ["write_gif", "lzw_encode"]

_GRAY_PALETTE = bytes(np.repeat(np.arange(256, dtype=np.uint8), 3))


def lzw_encode(indices, min_code_size=8):
    """Variable-width LZW compression as used by GIF image data."""
    clear = 1 << min_code_size
    eoi = clear + 1
    out = bytearray()
    bitbuf = 0
    nbits = 0

    def emit(code, width):
        nonlocal bitbuf, nbits
        bitbuf |= code << nbits
        nbits += width
        while nbits >= 8:
            out.append(bitbuf & 0xFF)
            bitbuf >>= 8
            nbits -= 8

    def fresh():
        return {(i,): i for i in range(clear)}

    table = fresh()
    next_code = eoi + 1
    width = min_code_size + 1
    emit(clear, width)
    prefix = ()
    for px in indices:
        candidate = prefix + (int(px),)
        if candidate in table:
            prefix = candidate
            continue
        emit(table[prefix], width)
        if next_code < 4096:
            table[candidate] = next_code
            next_code += 1
            # decoder widens one code later than the encoder adds the entry
            if next_code - 1 == (1 << width) and width < 12:
                width += 1
        else:
            emit(clear, width)
            table = fresh()
            next_code = eoi + 1
            width = min_code_size + 1
        prefix = (int(px),)
    if prefix:
        emit(table[prefix], width)
    emit(eoi, width)
    if nbits:
        out.append(bitbuf & 0xFF)
    return bytes(out)


def _sub_blocks(data):
    chunks = bytearray()
    for k in range(0, len(data), 255):
        piece = data[k:k + 255]
        chunks.append(len(piece))
        chunks += piece
    chunks.append(0)
    return bytes(chunks)


def _load(frame):
    if isinstance(frame, (str, os.PathLike)):
        with Image.open(frame) as im:
            return np.asarray(im.convert("L"))
    return np.asarray(frame)


def write_gif(path, frames, delay=10):
    """Write 8-bit grayscale frames as a looping animated GIF.

    Parameters
    ----------
    path : path-like
        Output file.
    frames : sequence of ndarray or path-like
        ``uint8`` arrays of identical shape ``(h, w)``, or paths of grayscale
        PNG files.
    delay : int
        Per-frame delay in centiseconds.
    """
    frames = [_load(f) for f in frames]
    if not frames:
        raise ValueError("need at least one frame")
    shape = frames[0].shape
    for f in frames:
        if f.shape != shape or f.ndim != 2:
            raise ValueError("all frames must be 2-D with identical dimensions")
        if f.dtype != np.uint8:
            raise ValueError("frames must be uint8")
    h, w = shape
    buf = bytearray(b"GIF89a")
    # global color table present, 8 bits/primary, 256 entries
    buf += struct.pack("<HHBBB", w, h, 0xF7, 0, 0)
    buf += _GRAY_PALETTE
    buf += b"\x21\xFF\x0BNETSCAPE2.0\x03\x01" + struct.pack("<H", 0) + b"\x00"
    for f in frames:
        buf += b"\x21\xF9\x04" + struct.pack("<BHB", 0x04, int(delay), 0) + b"\x00"
        buf += b"\x2C" + struct.pack("<HHHHB", 0, 0, w, h, 0)
        buf.append(8)
        buf += _sub_blocks(lzw_encode(f.reshape(-1)))
    buf += b"\x3B"
    with open(path, "wb") as fh:
        fh.write(bytes(buf))
