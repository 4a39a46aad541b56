"""Shifted products c_n = a(n) a(n+r) and their sign/non-vanishing statistics."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass

from .errors import TruncationError

__all__ = [
    "ShiftedSeq",
    "ScanStats",
    "shifted_products",
    "nonvanishing_stats",
    "corollary_hypothesis",
    "scan",
    "SCAN_COLUMNS",
    "scan_csv",
]

SCAN_COLUMNS = (
    "form_id",
    "k",
    "r",
    "M",
    "count_zero",
    "count_nonzero",
    "count_positive",
    "count_negative",
    "first_sign_change",
)


def _sign(x):
    s = getattr(x, "sign", None)
    if s is not None:
        return s()
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ShiftedSeq:
    r: int
    c: tuple  # c[0] is c_1
    source: str = "f"

    @property
    def M(self):
        return len(self.c)

    def __getitem__(self, n):
        """``c_n`` with the 1-based index used throughout."""
        if not 1 <= n <= len(self.c):
            raise IndexError(n)
        return self.c[n - 1]


@dataclass(frozen=True)
class ScanStats:
    count_zero: int
    count_nonzero: int
    count_positive: int
    count_negative: int
    first_sign_change_index: int | None


def shifted_products(f, r, M=None):
    """``c_n = a(n) a(n+r)`` for ``n = 1..M`` (default: as many as the form allows)."""
    if r < 1:
        raise ValueError("shift r must be a positive integer")
    if M is None:
        M = f.trunc_order - r
    if M + r > f.trunc_order:
        raise TruncationError(
            f"{M} products with shift {r} need the form to q^{M + r}, have q^{f.trunc_order}",
            required=M + r,
        )
    a = f.series.coeffs
    return ShiftedSeq(r, tuple(a[n] * a[n + r] for n in range(1, M + 1)), f.label)


def nonvanishing_stats(seq):
    zero = pos = neg = 0
    first_change = None
    for n, c in enumerate(seq.c, start=1):
        sg = _sign(c)
        if sg == 0:
            zero += 1
            continue
        if sg > 0:
            pos += 1
            if neg and first_change is None:
                first_change = n
        else:
            neg += 1
            if pos and first_change is None:
                first_change = n
    return ScanStats(zero, pos + neg, pos, neg, first_change)


def corollary_hypothesis(f, r):
    """True iff a(r+1) != 0."""
    if f.trunc_order < r + 1:
        raise TruncationError(f"need a({r + 1}), form known to q^{f.trunc_order}", required=r + 1)
    return f.series[r + 1] != 0


def _scan_one(args):
    f, r, M = args
    st = nonvanishing_stats(shifted_products(f, r, M))
    return (f.label, f.weight, r, M) + astuple(st)


def scan(f, rs, Ms, jobs=1):
    """Rows of :data:`SCAN_COLUMNS`, ordered by ``(r, M)`` whatever ``jobs`` is."""
    tasks = [(f, r, M) for r in sorted(set(rs)) for M in sorted(set(Ms))]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_one, tasks))
    else:
        rows = [_scan_one(t) for t in tasks]
    return rows


def scan_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for row in rows:
        w.writerow(["" if v is None else v for v in row])
    return buf.getvalue()
