"""Small shared helpers: atomic file output, complex (de)serialization."""

from __future__ import annotations

import os
import tempfile


def atomic_write_text(path: str, text: str) -> None:
    """Write text to `path` via a temp file + rename in the same directory."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cplx_to_pair(z: complex) -> list[float]:
    """Complex -> [re, im], the on-disk format for complex scalars."""
    z = complex(z)
    return [z.real, z.imag]


def pair_to_cplx(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    if isinstance(pair, (list, tuple)) and len(pair) == 2:
        return complex(float(pair[0]), float(pair[1]))
    raise ValueError(f"expected [re, im] pair, got {pair!r}")


def parse_complex(text: str) -> complex:
    """Parse the human CLI format `a+bi` (also `a`, `bi`, `i`, `-i`).

    Spaces are allowed around signs; `i` and `j` are both accepted.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ValueError(f"cannot parse complex literal {text!r}") from None


def format_float(x: float) -> str:
    """Shortest round-trip decimal form; deterministic for identical bits."""
    return repr(float(x))
