"""Exact rational parsing and canonical formatting.

The package computes with ``gmpy2.mpq``, exported here as ``Q``. It
compares and hashes equal to ``fractions.Fraction``, which is accepted on
input everywhere.
"""

from __future__ import annotations

import numbers

from gmpy2 import mpq as Q

from aoc.verdict import AocError


class ParseError(AocError, ValueError):
    def __init__(self, text: str, offset: int, reason: str):
        self.text = text
        self.offset = offset
        self.reason = reason
        super().__init__(f"cannot parse {text!r} as a rational at byte {offset}: {reason}")


def parse_rational(text: str) -> Q:
    """Parse ``-?\\d+(/[1-9]\\d*)?`` into an exact rational.

    A zero denominator is rejected by the grammar itself, so the error
    points at the offending ``0``.
    """
    data = text.encode("utf-8")
    n = len(data)
    i = 0
    if i < n and data[i:i + 1] == b"-":
        i += 1
    start = i
    while i < n and data[i:i + 1].isdigit():
        i += 1
    if i == start:
        raise ParseError(text, i, "expected a digit")
    if i == n:
        return Q(int(text))
    if data[i:i + 1] != b"/":
        raise ParseError(text, i, "expected '/' or end of input")
    i += 1
    if i == n or not (b"1" <= data[i:i + 1] <= b"9"):
        raise ParseError(text, i, "denominator must start with a nonzero digit")
    den_start = i
    while i < n and data[i:i + 1].isdigit():
        i += 1
    if i != n:
        raise ParseError(text, i, "trailing characters")
    num = int(data[:den_start - 1].decode())
    den = int(data[den_start:].decode())
    return Q(num, den)


def as_rational(value) -> Q:
    """Coerce ints, rationals and rational strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Q):
        return value
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, numbers.Rational):
        return Q(int(value.numerator), int(value.denominator))
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(value) -> str:
    """Canonical lowest-terms text: ``"3/4"``, ``"-2"``."""
    return str(as_rational(value))
