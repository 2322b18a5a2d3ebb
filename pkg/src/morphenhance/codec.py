"""Netpbm (P2/P5/P6) and PNG raster I/O.

PGM/PPM headers may carry ``#`` comments when read; written headers never do.
Only maxval 255 is supported.  Writes are deterministic: a P5 file is exactly
``b"P5\\n<w> <h>\\n255\\n"`` followed by the row-major payload.
"""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .image import as_gray, as_rgb, is_rgb

FORMATS = ("P5", "P2", "P6", "PNG")
_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


class CodecError(Exception):
    """Base class for raster decoding/encoding failures."""


class MalformedHeaderError(CodecError):
    pass


class UnsupportedDepthError(CodecError):
    pass


class TruncatedDataError(CodecError):
    pass


class UnsupportedFormatError(CodecError):
    pass


class FormatMismatchError(CodecError):
    """Image kind cannot be stored in the requested format."""


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens after the magic."""
    tokens = []
    pos = 2
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise MalformedHeaderError("header ended early")
        if data[pos:pos + 1] == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise MalformedHeaderError("unterminated header comment")
            pos = end + 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def _parse_netpbm(data: bytes, magic: bytes) -> np.ndarray:
    tokens, pos = _header_tokens(data, 3)
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError as exc:
        raise MalformedHeaderError(f"non-integer header field in {tokens!r}") from exc
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedDepthError(f"maxval {maxval} unsupported; only 255")
    channels = 3 if magic == b"P6" else 1
    count = width * height * channels

    if magic == b"P2":
        fields = data[pos:].split()
        if len(fields) < count:
            raise TruncatedDataError(f"expected {count} samples, found {len(fields)}")
        try:
            values = np.array([int(v) for v in fields[:count]], dtype=np.int64)
        except ValueError as exc:
            raise MalformedHeaderError("non-integer sample in P2 payload") from exc
        if values.min() < 0 or values.max() > maxval:
            raise MalformedHeaderError("sample outside [0, maxval]")
        return values.astype(np.uint8).reshape(height, width)

    # binary formats: exactly one whitespace byte separates maxval from payload
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise TruncatedDataError("missing pixel data")
    payload = data[pos + 1:pos + 1 + count]
    if len(payload) < count:
        raise TruncatedDataError(f"expected {count} bytes of pixels, found {len(payload)}")
    arr = np.frombuffer(payload, dtype=np.uint8)
    shape = (height, width, 3) if channels == 3 else (height, width)
    return arr.reshape(shape).copy()


def _read_png(path: Path) -> np.ndarray:
    from PIL import Image

    with Image.open(path) as im:
        if im.mode in ("I;16", "I;16B", "I", "F"):
            raise UnsupportedDepthError(f"PNG mode {im.mode} unsupported; only 8-bit")
        if im.mode in ("1", "L", "LA"):
            return np.array(im.convert("L"), dtype=np.uint8)
        return np.array(im.convert("RGB"), dtype=np.uint8)


def read_image(path) -> np.ndarray:
    """Load a gray ``(h, w)`` or RGB ``(h, w, 3)`` ``uint8`` array.

    The format is sniffed from the leading magic bytes, not the extension.
    """
    path = Path(path)
    data = path.read_bytes()
    if data.startswith(_PNG_MAGIC):
        return _read_png(path)
    magic = data[:2]
    if magic in (b"P2", b"P5", b"P6"):
        return _parse_netpbm(data, magic)
    raise UnsupportedFormatError(f"{path}: unrecognised magic {data[:8]!r}")


def format_for_path(path) -> str:
    ext = Path(path).suffix.lower()
    if ext == ".pgm":
        return "P5"
    if ext == ".ppm":
        return "P6"
    if ext == ".png":
        return "PNG"
    raise UnsupportedFormatError(f"cannot infer image format from extension {ext!r}")


def encode(img, fmt: str, replicate: bool = False) -> bytes:
    """Serialize to netpbm bytes (PNG goes through :func:`write_image`)."""
    if fmt == "P6":
        if not is_rgb(img):
            if not replicate:
                raise FormatMismatchError("gray image to PPM needs replicate=True")
            img = np.stack([as_gray(img)] * 3, axis=-1)
        img = as_rgb(img)
    elif fmt in ("P5", "P2"):
        if is_rgb(img):
            raise FormatMismatchError(f"{fmt} stores gray images only")
        img = as_gray(img)
    else:
        raise UnsupportedFormatError(f"no netpbm encoding for {fmt!r}")
    h, w = img.shape[:2]
    header = f"{fmt}\n{w} {h}\n255\n".encode("ascii")
    if fmt == "P2":
        rows = (" ".join(str(int(v)) for v in row) for row in img)
        return header + ("\n".join(rows) + "\n").encode("ascii")
    return header + np.ascontiguousarray(img).tobytes()


def write_image(img, path, fmt: str | None = None, replicate: bool = False) -> None:
    """Write ``img`` to ``path``; ``fmt`` defaults to the one implied by the extension."""
    path = Path(path)
    fmt = fmt or format_for_path(path)
    if fmt not in FORMATS:
        raise UnsupportedFormatError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "PNG":
        from PIL import Image

        im = Image.fromarray(as_rgb(img) if is_rgb(img) else as_gray(img))
        # PNG metadata is empty, so repeated writes are byte-identical
        im.save(path, format="PNG", optimize=False)
        return
    data = encode(img, fmt, replicate)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)
