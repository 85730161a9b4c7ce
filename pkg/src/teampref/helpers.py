"""
helpers.py

Various generic helper functions

Created on 17 Oct 2026

@author: teampref contributors
"""

from teampref.exceptions import GuardError


def bits_to_int(bits):
    """
    Interpret a bit sequence as an unsigned integer, first bit most significant.
    """

    value = 0
    for bit in bits:
        value = (value << 1) | (1 if bit else 0)
    return value


def int_to_bits(value, width):
    """
    Inverse of bits_to_int for a fixed width.
    """

    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


def bitstring(bits):
    """
    Render a bit sequence as a '0'/'1' string.
    """

    return "".join("1" if b else "0" for b in bits)


def submasks(mask):
    """
    Yield every submask of mask (including 0 and mask itself), largest first.
    """

    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def iter_bits(mask):
    """
    Yield the indices of the set bits of mask in ascending order.
    """

    for i, digit in enumerate(reversed(bin(mask)[2:])):
        if digit == "1":
            yield i


def popcount(mask):
    """
    Number of set bits.
    """

    return bin(mask).count("1")


def check_guard(value, limit, what):
    """
    Raise GuardError if value exceeds limit.
    """

    if limit is not None and value > limit:
        raise GuardError(f"{what} = {value} exceeds guard {limit}")
