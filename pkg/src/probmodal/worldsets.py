"""World sets as int bitmasks: bit ``i`` set means world ``i`` is a member."""

MAX_WORLDS = 16


class ModelTooLarge(ValueError):
    """Raised when a subset-enumerating operation would exceed the world cap."""


def check_size(n, limit=MAX_WORLDS):
    if n > limit:
        raise ModelTooLarge(f"{n} worlds exceeds the cap of {limit} for powerset tables")


def full(n):
    return (1 << n) - 1


def from_indices(indices):
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def members(mask):
    """Indices of the set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def size(mask):
    return mask.bit_count()


def submasks(mask):
    """Every subset of ``mask``, the empty set included, in descending order."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def is_subset(a, b):
    return a & ~b == 0


def family_members(family):
    """Decode a family bitset (bit ``X`` set means set ``X`` is in the family)."""
    return members(family)


def upset(mask, n):
    """Family bitset of all supersets of ``mask`` within ``n`` worlds."""
    fam = 0
    rest = full(n) & ~mask
    for extra in submasks(rest):
        fam |= 1 << (mask | extra)
    return fam


def key_for(mask, worlds):
    """Space-separated world names in world-list order; ``""`` for the empty set."""
    return " ".join(worlds[i] for i in members(mask))


def parse_key(key, index):
    """Inverse of :func:`key_for`; ``index`` maps world name to position."""
    mask = 0
    for name in key.split():
        if name not in index:
            raise KeyError(name)
        bit = 1 << index[name]
        if mask & bit:
            raise ValueError(f"world {name!r} repeated in subset key {key!r}")
        mask |= bit
    return mask


def show(mask, worlds):
    return "{" + ", ".join(worlds[i] for i in members(mask)) + "}"
