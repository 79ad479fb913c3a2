# cython: language_level=3
"""Compiled scalar kernel.

Same contract as ``pure.py``: scalars are (tuple-of-int, positive int)
pairs with gcd 1, reduced against the field's reduction rows.  Numerators
stay Python ints (arbitrary precision is required for exactness), so the
speedup over the pure version comes from loop and dispatch overhead, not
machine arithmetic.
"""

from math import gcd


def knorm(nums, den):
    """Normalize so gcd(*nums, den) == 1 and den > 0."""
    cdef Py_ssize_t i, n = len(nums)
    g = den if den > 0 else -den
    for i in range(n):
        g = gcd(g, nums[i])
        if g == 1:
            break
    if den < 0:
        g = -g
    if g != 1:
        return tuple([nums[i] // g for i in range(n)]), den // g
    return tuple(nums), den


def kadd(an, ad, bn, bd):
    cdef Py_ssize_t i, n = len(an)
    if ad == bd:
        return knorm(tuple([an[i] + bn[i] for i in range(n)]), ad)
    return knorm(tuple([an[i] * bd + bn[i] * ad for i in range(n)]), ad * bd)


def ksub(an, ad, bn, bd):
    cdef Py_ssize_t i, n = len(an)
    if ad == bd:
        return knorm(tuple([an[i] - bn[i] for i in range(n)]), ad)
    return knorm(tuple([an[i] * bd - bn[i] * ad for i in range(n)]), ad * bd)


def kneg(an, ad):
    cdef Py_ssize_t i, n = len(an)
    return tuple([-an[i] for i in range(n)]), ad


def kmul(an, ad, bn, bd, red):
    """Multiply: integer convolution, reduce by red rows, normalize."""
    cdef Py_ssize_t i, j, k, deg = len(an)
    conv = [0] * (2 * deg - 1)
    for i in range(deg):
        x = an[i]
        if x:
            for j in range(deg):
                y = bn[j]
                if y:
                    conv[i + j] = conv[i + j] + x * y
    nums = conv[:deg]
    for k in range(deg, 2 * deg - 1):
        c = conv[k]
        if c:
            row = red[k - deg]
            for j in range(deg):
                r = row[j]
                if r:
                    nums[j] = nums[j] + c * r
    return knorm(tuple(nums), ad * bd)


def krow_axpy(dst, src, cn, cd, red):
    """In-place ``dst[col] -= c*src[col]`` over the columns of src."""
    cdef Py_ssize_t i
    for col, e_src in src.items():
        tn, td = kmul(e_src[0], e_src[1], cn, cd, red)
        e = dst.get(col)
        if e is None:
            if any(tn):
                dst[col] = (tuple([-x for x in tn]), td)
        else:
            rn, rd = ksub(e[0], e[1], tn, td)
            if any(rn):
                dst[col] = (rn, rd)
            else:
                del dst[col]
