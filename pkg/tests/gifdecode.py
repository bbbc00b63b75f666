"""Small independent GIF decoder used as a test oracle."""

import struct

import numpy as np


def _lzw_decode(data, min_size, n_pixels):
    clear, eoi = 1 << min_size, (1 << min_size) + 1
    pos = 0
    width = min_size + 1
    table = None
    prev = None
    out = []

    def reset():
        return [[i] for i in range(clear)] + [None, None]

    table = reset()
    total_bits = len(data) * 8
    while pos + width <= total_bits:
        code = 0
        for b in range(width):
            bit = (data[(pos + b) // 8] >> ((pos + b) % 8)) & 1
            code |= bit << b
        pos += width
        if code == clear:
            table = reset()
            width = min_size + 1
            prev = None
            continue
        if code == eoi:
            break
        if prev is None:
            entry = table[code]
        elif code < len(table):
            entry = table[code]
            table.append(prev + [entry[0]])
        else:
            entry = prev + [prev[0]]
            table.append(entry)
        out.extend(entry)
        prev = entry
        if len(table) == (1 << width) and width < 12:
            width += 1
    return out[:n_pixels]


def decode_gif(raw):
    """Return ``(frames, delays, loop)`` with frames as palette-resolved gray arrays."""
    assert raw[:6] in (b"GIF89a", b"GIF87a")
    w, h, flags, _, _ = struct.unpack("<HHBBB", raw[6:13])
    pos = 13
    palette = None
    if flags & 0x80:
        n = 2 << (flags & 7)
        palette = np.frombuffer(raw[pos:pos + 3 * n], dtype=np.uint8).reshape(n, 3)
        pos += 3 * n
    frames, delays, loop = [], [], None
    delay = 0
    while True:
        tag = raw[pos]
        pos += 1
        if tag == 0x3B:
            break
        if tag == 0x21:
            label = raw[pos]
            pos += 1
            blocks = []
            while raw[pos]:
                blocks.append(raw[pos + 1:pos + 1 + raw[pos]])
                pos += raw[pos] + 1
            pos += 1
            if label == 0xF9:
                delay = struct.unpack("<H", blocks[0][1:3])[0]
            elif label == 0xFF and blocks[0] == b"NETSCAPE2.0":
                loop = struct.unpack("<H", blocks[1][1:3])[0]
        elif tag == 0x2C:
            x, y, fw, fh, fflags = struct.unpack("<HHHHB", raw[pos:pos + 9])
            pos += 9
            pal = palette
            if fflags & 0x80:
                n = 2 << (fflags & 7)
                pal = np.frombuffer(raw[pos:pos + 3 * n], dtype=np.uint8).reshape(n, 3)
                pos += 3 * n
            min_size = raw[pos]
            pos += 1
            data = bytearray()
            while raw[pos]:
                data += raw[pos + 1:pos + 1 + raw[pos]]
                pos += raw[pos] + 1
            pos += 1
            idx = np.array(_lzw_decode(bytes(data), min_size, fw * fh), dtype=int).reshape(fh, fw)
            frames.append(pal[idx][..., 0])
            delays.append(delay)
        else:
            raise ValueError(f"unexpected block 0x{tag:02x}")
    return frames, delays, loop
