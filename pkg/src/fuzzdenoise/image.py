"""Grayscale image container, bit-exact PGM I/O, and filter-window extraction.

Images are 8-bit, single channel, stored row-major.  The filter pipeline
works on a normalized float view (intensity / 255), so the salt and pepper
extremes 0 and 255 map exactly onto 0.0 and 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PgmParseError(ValueError):
    """Malformed PGM input.  ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class GrayImage:
    """Immutable 8-bit grayscale raster.

    Parameters
    ----------
    data : array_like
        2-D array of integers in [0, 255], shape (height, width).
    """

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.asarray(data)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("width and height must each be at least 1")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError(f"pixel values must be integers, got dtype {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("pixel values must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.setflags(write=False)
        self.data = arr

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def normalized(self) -> np.ndarray:
        """Float64 view of the pixels divided by 255 (0 and 255 become 0.0 and 1.0)."""
        return self.data / 255.0

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


@dataclass(frozen=True)
class Window:
    """A (2H+1) x (2H+1) pixel neighborhood in normalized intensities.

    ``pixels`` holds the N = (2H+1)**2 values in raster order with the center
    pixel at index (N-1)//2; ``sorted_pixels`` is the same multiset ascending.
    """

    half_size: int
    center: tuple[int, int]
    pixels: np.ndarray
    sorted_pixels: np.ndarray

    @property
    def size(self) -> int:
        return int(self.pixels.size)

    @property
    def center_index(self) -> int:
        return (self.size - 1) // 2


def _reflect_index(i: int, n: int) -> int:
    """Mirror an out-of-range index about the borders without repeating the edge."""
    if n == 1:
        return 0
    period = 2 * n - 2
    i %= period
    return period - i if i >= n else i


def extract_window(img: GrayImage, row: int, col: int, half_size: int) -> Window:
    """Extract the normalized neighborhood around (row, col).

    Coordinates falling outside the image are resolved by mirror reflection
    (the edge pixel is not repeated), so the window always contains real
    image intensities.  ``half_size`` may not exceed min(width, height) - 1,
    beyond which the reflection would leave the mirrored image.
    """
    if not (0 <= row < img.height and 0 <= col < img.width):
        raise ValueError(f"center ({row}, {col}) outside {img!r}")
    if half_size < 1:
        raise ValueError("half_size must be at least 1")
    cap = min(img.width, img.height) - 1
    if half_size > cap:
        raise ValueError(
            f"half_size {half_size} exceeds the reflection limit {cap} "
            f"for a {img.width}x{img.height} image"
        )
    rows = [_reflect_index(row + q, img.height) for q in range(-half_size, half_size + 1)]
    cols = [_reflect_index(col + l, img.width) for l in range(-half_size, half_size + 1)]
    block = img.normalized()[np.ix_(rows, cols)]
    pixels = block.reshape(-1)
    return Window(half_size, (row, col), pixels, np.sort(pixels))


def _skip_header_space(buf: bytes, pos: int) -> int:
    """Advance past whitespace and '#' comments inside a PGM header."""
    n = len(buf)
    while pos < n:
        c = buf[pos : pos + 1]
        if c in _WHITESPACE:
            pos += 1
        elif c == b"#":
            while pos < n and buf[pos : pos + 1] != b"\n":
                pos += 1
        else:
            break
    return pos


def _read_header_int(buf: bytes, pos: int, what: str) -> tuple[int, int]:
    pos = _skip_header_space(buf, pos)
    start = pos
    while pos < len(buf) and buf[pos : pos + 1].isdigit():
        pos += 1
    if pos == start:
        raise PgmParseError(f"expected {what}", start)
    return int(buf[start:pos]), pos


def read_pgm(path) -> GrayImage:
    """Read a P5 (binary) or P2 (ASCII) PGM file with maxval 255.

    Header comments introduced by '#' are skipped.  Malformed input raises
    :class:`PgmParseError` naming the offending byte offset.
    """
    with open(path, "rb") as fh:
        buf = fh.read()
    magic = buf[:2]
    if magic not in (b"P5", b"P2"):
        raise PgmParseError(f"malformed magic number {magic!r}, expected P5 or P2", 0)
    width, pos = _read_header_int(buf, 2, "width")
    height, pos = _read_header_int(buf, pos, "height")
    pos_before_maxval = _skip_header_space(buf, pos)
    maxval, pos = _read_header_int(buf, pos_before_maxval, "maxval")
    if maxval != 255:
        raise PgmParseError(f"unsupported maxval {maxval}, only 255 is accepted", pos_before_maxval)
    if width < 1 or height < 1:
        raise PgmParseError(f"invalid dimensions {width}x{height}", 2)
    count = width * height

    if magic == b"P5":
        if pos >= len(buf) or buf[pos : pos + 1] not in _WHITESPACE:
            raise PgmParseError("expected a single whitespace byte after maxval", pos)
        pos += 1
        payload = buf[pos : pos + count]
        if len(payload) < count:
            raise PgmParseError(
                f"truncated pixel payload: expected {count} bytes, found {len(payload)}",
                pos + len(payload),
            )
        flat = np.frombuffer(payload, dtype=np.uint8, count=count)
    else:
        values = np.empty(count, dtype=np.uint8)
        for i in range(count):
            try:
                v, pos = _read_header_int(buf, pos, f"pixel value {i}")
            except PgmParseError:
                raise PgmParseError(
                    f"truncated pixel payload: expected {count} values, found {i}", pos
                ) from None
            if v > 255:
                raise PgmParseError(f"pixel value {v} exceeds 255", pos)
            values[i] = v
        flat = values
    return GrayImage(flat.reshape(height, width))


def write_pgm(img: GrayImage, path, ascii: bool = False) -> None:
    """Write ``img`` as P5 (default) or P2 when ``ascii`` is set, maxval 255.

    ``read_pgm`` inverts the output bit-exactly.
    """
    header = f"{'P2' if ascii else 'P5'}\n{img.width} {img.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        if ascii:
            flat = img.data.reshape(-1)
            # keep lines comfortably under the conventional 70-character limit
            for i in range(0, flat.size, 16):
                line = " ".join(str(int(v)) for v in flat[i : i + 16])
                fh.write(line.encode("ascii") + b"\n")
        else:
            fh.write(img.data.tobytes())
