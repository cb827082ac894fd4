"""Binary tensor files, PGM image stacks and CSV metrics."""

import csv
import os
import struct
from pathlib import Path

import numpy as np

from ._validation import check_tensor3
from .exceptions import FormatError, IngestError

MAGIC = b"TNS3"
VERSION = 1
_HEADER = struct.Struct("<4sIQQQ")


def write_tns3(path, A):
    """Write ``A`` as a TNS3 file: header then little-endian float64, first index fastest."""
    A = check_tensor3(A)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, *A.shape))
        fh.write(np.asarray(A, dtype="<f8").ravel(order="F").tobytes())


def read_tns3(path):
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise FormatError(f"{path}: truncated header", len(data))
    magic, version, n1, n2, n3 = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}", 0)
    if version != VERSION:
        raise FormatError(f"{path}: unsupported version {version}", 4)
    if min(n1, n2, n3) < 1:
        raise FormatError(f"{path}: empty dimension {(n1, n2, n3)}", 8)
    expected = _HEADER.size + 8 * n1 * n2 * n3
    if len(data) != expected:
        what = "truncated payload" if len(data) < expected else "trailing bytes"
        raise FormatError(f"{path}: {what}, expected {expected} bytes", len(data))
    flat = np.frombuffer(data, dtype="<f8", offset=_HEADER.size)
    bad = np.flatnonzero(~np.isfinite(flat))
    if bad.size:
        raise FormatError(f"{path}: non-finite value", _HEADER.size + 8 * int(bad[0]))
    return flat.reshape((n1, n2, n3), order="F").astype(np.float64)


def _pgm_tokens(data, path):
    """Yield the four header tokens of a P5 file and the payload offset."""
    tokens, pos = [], 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise IngestError(f"{path}: truncated PGM header")
        tokens.append(data[start:pos])
    return tokens, pos + 1


def read_pgm(path):
    """Binary (P5) PGM image scaled to [0, 1]."""
    data = Path(path).read_bytes()
    if data[:2] != b"P5":
        raise IngestError(f"{path}: not a binary PGM (P5) file")
    tokens, offset = _pgm_tokens(data, path)
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise IngestError(f"{path}: malformed PGM header") from None
    if not 0 < maxval <= 65535 or width < 1 or height < 1:
        raise IngestError(f"{path}: unsupported PGM header {width}x{height} maxval {maxval}")
    dtype = np.dtype("u1") if maxval < 256 else np.dtype(">u2")
    count = width * height
    if len(data) - offset < count * dtype.itemsize:
        raise IngestError(f"{path}: truncated PGM payload")
    pixels = np.frombuffer(data, dtype=dtype, count=count, offset=offset)
    return pixels.reshape(height, width).astype(np.float64) / maxval


def _list_images(source):
    if isinstance(source, (str, os.PathLike)) and Path(source).is_dir():
        files = sorted(p for p in Path(source).iterdir() if p.suffix.lower() == ".pgm")
    elif isinstance(source, (str, os.PathLike)):
        files = [Path(source)]
    else:
        files = sorted(Path(p) for p in source)
    if not files:
        raise IngestError(f"no PGM files found in {source}")
    return files


def read_pgm_stack(source, layout="lateral"):
    """Stack PGM images (lexicographic file order) into a tensor.

    ``layout="lateral"``: image ``j`` (h x w) becomes ``A[:, j, :]``, giving
    an ``h x f x w`` tensor.  ``layout="frontal"``: image ``k`` becomes
    ``A[:, :, k]``, giving ``h x w x f``.
    """
    if layout not in ("lateral", "frontal"):
        raise ValueError(f"layout must be 'lateral' or 'frontal', got {layout!r}")
    files = _list_images(source)
    images = []
    for f in files:
        img = read_pgm(f)
        if images and img.shape != images[0].shape:
            raise IngestError(
                f"{f}: image is {img.shape[0]}x{img.shape[1]}, expected "
                f"{images[0].shape[0]}x{images[0].shape[1]}"
            )
        images.append(img)
    axis = 1 if layout == "lateral" else 2
    return np.stack(images, axis=axis)


def video_tensor(channels):
    """``(h*w) x f x c`` tensor from ``c`` frontal stacks of shape ``h x w x f``."""
    channels = [np.asarray(c, dtype=float) for c in channels]
    if any(c.shape != channels[0].shape for c in channels):
        raise ValueError("all channel stacks must share a shape")
    h, w, f = channels[0].shape
    return np.stack([c.reshape(h * w, f) for c in channels], axis=2)


def write_pgm(path, image, maxval=255):
    """Write a [0, 1] image as a binary PGM (used for fixtures and frame export)."""
    image = np.clip(np.asarray(image, dtype=float), 0.0, 1.0)
    dtype = "u1" if maxval < 256 else ">u2"
    pixels = np.rint(image * maxval).astype(dtype)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{image.shape[1]} {image.shape[0]}\n{maxval}\n".encode())
        fh.write(pixels.tobytes())


METRIC_FIELDS = [
    "method", "seed", "b", "q", "tau", "K", "p", "lambda", "mu0",
    "multirank", "nu", "re", "re_oracle", "iters", "converged", "time_s",
]


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple, np.ndarray)):
        return ";".join(str(int(v)) for v in value)
    return str(value)


def write_metrics(path_or_file, rows, fields=METRIC_FIELDS):
    """Write metric dicts as CSV with a header row; missing keys become empty cells."""
    def emit(fh):
        writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(row.get(k)) for k in fields})

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            emit(fh)
