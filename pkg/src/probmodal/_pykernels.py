"""Pure-Python subset kernels.

Every kernel works on a table ``values`` of length ``2**n`` indexed by
bitmask, holding integer numerators over a common (implicit) denominator.
Python ints never overflow, so this backend is always exact.
"""


def zeta(values, n):
    """Subset sums: ``out[A] = sum(values[B] for B subset of A)``."""
    a = list(values)
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                a[mask] += a[mask ^ bit]
    return a


def mobius(values, n):
    """Inverse of :func:`zeta`."""
    a = list(values)
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                a[mask] -= a[mask ^ bit]
    return a


def monotonicity_violation(values, n):
    """First ``(mask, bit)`` with ``values[mask | bit] < values[mask]``, else None."""
    for mask in range(1 << n):
        v = values[mask]
        for i in range(n):
            bit = 1 << i
            if not mask & bit and values[mask | bit] < v:
                return mask, bit
    return None


def superadditivity_violation(values, n):
    """First disjoint ``(A, B)`` with ``values[A|B] < values[A] + values[B]``.

    Scans every union ``U`` and every split of it, 3**n pairs in total.
    """
    for union in range(1, 1 << n):
        vu = values[union]
        sub = (union - 1) & union
        while sub:
            rest = union ^ sub
            if sub < rest and vu < values[sub] + values[rest]:
                return sub, rest
            sub = (sub - 1) & union
    return None


def additivity_violation(values, n):
    """First disjoint ``(A, B)`` with ``values[A|B] != values[A] + values[B]``.

    A table with ``values[0] == 0`` is additive over all disjoint pairs iff
    every set is the sum of its singletons, so only that is scanned; on a
    failure the lowest member is split off repeatedly until a failing pair
    turns up.
    """
    singles = [values[1 << i] for i in range(n)]
    for mask in range(1, 1 << n):
        if mask & (mask - 1) == 0:
            continue
        total = 0
        m = mask
        while m:
            low = m & -m
            total += singles[low.bit_length() - 1]
            m ^= low
        if total != values[mask]:
            m = mask
            while True:
                low = m & -m
                rest = m ^ low
                if values[m] != values[low] + values[rest]:
                    return low, rest
                m = rest
    return None


def minimal_positive(values, n):
    """Masks with a positive value whose immediate subsets are all non-positive.

    For monotone tables these are exactly the inclusion-minimal positive sets.
    """
    out = []
    for mask in range(1, 1 << n):
        if values[mask] <= 0:
            continue
        m = mask
        ok = True
        while m:
            low = m & -m
            if values[mask ^ low] > 0:
                ok = False
                break
            m ^= low
        if ok:
            out.append(mask)
    return out


def threshold_family(values, n, scale, bound, strict):
    """Bitset (as int) of masks with ``values[mask] * scale >= bound`` (``>`` if strict)."""
    fam = 0
    if strict:
        for mask in range(1 << n):
            if values[mask] * scale > bound:
                fam |= 1 << mask
    else:
        for mask in range(1 << n):
            if values[mask] * scale >= bound:
                fam |= 1 << mask
    return fam
