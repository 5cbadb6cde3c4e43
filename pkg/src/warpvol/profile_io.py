"""CSV exchange format for warping profiles.

Comment lines start with ``#``; a comment of the form ``# key=value key=value``
carries metadata (``n`` is picked up when present).  The first non-comment
line must be the header ``t,f``.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Dict, Optional, TextIO, Tuple, Union

import numpy as np

from .errors import ProfileValidationError
from .warped import WarpProfile


class ProfileFormatError(ProfileValidationError):
    """Malformed profile CSV; ``line`` is 1-based."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def write_profile_csv(profile: WarpProfile, dest: Union[str, Path, TextIO],
                      meta: Optional[Dict[str, object]] = None) -> None:
    meta = dict(meta or {})
    meta.setdefault("n", profile.n)
    meta.setdefault("grid", len(profile.t))
    header = "# " + " ".join(f"{k}={_fmt(v)}" for k, v in meta.items())
    lines = [header, "t,f"]
    lines += [f"{t!r},{f!r}" for t, f in zip(profile.t.tolist(), profile.f.tolist())]
    text = "\n".join(lines) + "\n"
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text)
    else:
        dest.write(text)


def _fmt(v):
    return repr(v) if isinstance(v, float) else str(v)


def parse_profile_csv(text: str) -> Tuple[np.ndarray, np.ndarray, Dict[str, str]]:
    """(t, f, metadata) from CSV text, validating monotone t and f >= 0 row by row."""
    meta: Dict[str, str] = {}
    ts, fs = [], []
    header_seen = False
    prev_t = None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if row[0].lstrip().startswith("#"):
            comment = ",".join(row).lstrip()[1:]
            for token in comment.split():
                if "=" in token:
                    k, v = token.split("=", 1)
                    meta[k.strip()] = v.strip()
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            if cells != ["t", "f"]:
                raise ProfileFormatError(f"expected header 't,f', got {','.join(cells)!r}", lineno)
            header_seen = True
            continue
        if len(cells) != 2:
            raise ProfileFormatError(f"expected 2 columns, got {len(cells)}", lineno)
        try:
            t, f = float(cells[0]), float(cells[1])
        except ValueError:
            raise ProfileFormatError(f"non-numeric value in {','.join(cells)!r}", lineno) from None
        if not (np.isfinite(t) and np.isfinite(f)):
            raise ProfileFormatError("non-finite value", lineno)
        if f < 0:
            raise ProfileFormatError(f"f = {f!r} is negative", lineno)
        if prev_t is not None and t <= prev_t:
            raise ProfileFormatError(f"t = {t!r} does not increase (previous {prev_t!r})", lineno)
        prev_t = t
        ts.append(t)
        fs.append(f)
    if not header_seen:
        raise ProfileFormatError("missing header 't,f'")
    return np.array(ts), np.array(fs), meta


def read_profile_csv(source: Union[str, Path], n: Optional[int] = None) -> WarpProfile:
    """Load a sampled profile; ``n`` overrides the ``n=`` metadata comment."""
    t, f, meta = parse_profile_csv(Path(source).read_text())
    if n is None:
        if "n" not in meta:
            raise ProfileFormatError("dimension n not given and no 'n=' metadata comment")
        n = int(meta["n"])
    return WarpProfile(n=n, t=t, f=f, tag=f"csv:{Path(source).name}")
