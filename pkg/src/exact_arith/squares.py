"""
QuarticPell Square Detection

Exact perfect-square and integer-root tests for the sequence scans.
Candidates are rejected by quadratic residues modulo 64, 63, 65 and 11
before any integer square root is taken.
"""
from __future__ import annotations

from typing import Optional

import gmpy2


def _residue_table(modulus: int) -> bytes:
    table = bytearray(modulus)
    for r in range(modulus):
        table[(r * r) % modulus] = 1
    return bytes(table)


_SQ64 = _residue_table(64)
_SQ63 = _residue_table(63)
_SQ65 = _residue_table(65)
_SQ11 = _residue_table(11)


def passes_residue_filter(n: int) -> bool:
    """False when n is certainly not a square; True means "maybe"."""
    if not _SQ64[n & 63]:
        return False
    # one big reduction, then the three small moduli
    r = n % 45045  # 63 * 65 * 11
    return bool(_SQ63[r % 63] and _SQ65[r % 65] and _SQ11[r % 11])


def is_perfect_square(n: int) -> Optional[int]:
    """
    Return the nonnegative square root of n if n is a perfect square.

    Returns None for negative n and for non-squares. No floating point is
    involved at any stage.
    """
    if n < 0:
        return None
    if n < 2:
        return n
    if not passes_residue_filter(n):
        return None
    root, rem = gmpy2.isqrt_rem(n)
    if rem:
        return None
    return int(root)


def integer_root(n: int, k: int) -> tuple[int, bool]:
    """floor(n^(1/k)) for n >= 0, and whether the root is exact."""
    if n < 0:
        raise ValueError("integer_root needs n >= 0")
    root, exact = gmpy2.iroot(gmpy2.mpz(n), k)
    return int(root), bool(exact)
