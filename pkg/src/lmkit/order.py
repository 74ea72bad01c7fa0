"""Finite posets and bounded distributive lattices.

Elements carry stable string names but every computation runs on dense
integer indices; subsets are ``int`` bitmasks over those indices.
"""

from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .errors import CycleError, NotALattice, NotDistributive, UnknownElement


def members(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask):
    return bin(mask).count("1")


@dataclass(frozen=True)
class Poset:
    """A finite partial order.

    ``up[x]`` is the mask of all ``y`` with ``x <= y`` and ``down[x]`` the
    mask of all ``y`` with ``y <= x``.
    """

    names: tuple
    up: tuple
    down: tuple

    @classmethod
    def from_leq(cls, names, leq):
        """Build from a callable ``leq(i, j)`` already known to be an order."""
        m = len(names)
        up = tuple(sum(1 << j for j in range(m) if leq(i, j)) for i in range(m))
        down = tuple(sum(1 << j for j in range(m) if leq(j, i)) for i in range(m))
        return cls(tuple(names), up, down)

    @property
    def size(self):
        return len(self.names)

    @property
    def full(self):
        return (1 << len(self.names)) - 1

    @cached_property
    def index(self):
        return {name: i for i, name in enumerate(self.names)}

    def leq(self, x, y):
        return (self.up[x] >> y) & 1 == 1

    def lookup(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def mask_of(self, items):
        """Mask of a collection of element names or indices."""
        mask = 0
        for item in items:
            i = item if isinstance(item, int) else self.lookup(item)
            mask |= 1 << i
        return mask

    def names_of(self, mask):
        return [self.names[i] for i in members(mask)]

    @cached_property
    def linear_extension(self):
        """Indices listed bottom first (by number of elements below, then index)."""
        return tuple(sorted(range(self.size), key=lambda i: (popcount(self.down[i]), i)))

    @cached_property
    def strict_up(self):
        return tuple(u & ~(1 << i) for i, u in enumerate(self.up))

    @cached_property
    def covers(self):
        """Hasse edges ``(x, y)`` with ``y`` covering ``x``, sorted."""
        edges = []
        for x in range(self.size):
            above = self.strict_up[x]
            for y in members(above):
                # y covers x when nothing strictly between them
                if above & self.down[y] & ~(1 << y) == 0:
                    edges.append((x, y))
        return tuple(edges)

    def is_chain(self, mask):
        ms = members(mask)
        return all(self.leq(a, b) or self.leq(b, a) for a in ms for b in ms)


def build_poset(elements, pairs):
    """Reflexive-transitive closure of ``pairs`` over the declared ``elements``.

    >>> build_poset(["0", "e", "1"], [("0", "e"), ("e", "1")]).leq(0, 2)
    True
    """
    names = tuple(elements)
    if len(set(names)) != len(names):
        raise UnknownElement("duplicate element names")
    index = {name: i for i, name in enumerate(names)}
    m = len(names)
    up = [1 << i for i in range(m)]
    for a, b in pairs:
        if a not in index:
            raise UnknownElement(f"unknown element {a!r}")
        if b not in index:
            raise UnknownElement(f"unknown element {b!r}")
        up[index[a]] |= 1 << index[b]
    # Warshall on rows: if k is above i, everything above k is above i
    for k in range(m):
        bit = 1 << k
        for i in range(m):
            if up[i] & bit:
                up[i] |= up[k]
    for i in range(m):
        for j in members(up[i]):
            if j != i and (up[j] >> i) & 1:
                raise CycleError(f"{names[i]!r} and {names[j]!r} lie on a cycle")
    down = [0] * m
    for i in range(m):
        for j in members(up[i]):
            down[j] |= 1 << i
    return Poset(names, tuple(up), tuple(down))


def up_set(P, Y):
    """``[Y)``: every element above some member of ``Y``."""
    out = 0
    for y in members(Y):
        out |= P.up[y]
    return out


def down_set(P, Y):
    """``(Y]``: every element below some member of ``Y``."""
    out = 0
    for y in members(Y):
        out |= P.down[y]
    return out


def is_increasing(P, Y):
    return up_set(P, Y) == Y


def is_decreasing(P, Y):
    return down_set(P, Y) == Y


def is_convex(P, Y):
    # z lies between two members exactly when z is in [Y) and (Y]
    return up_set(P, Y) & down_set(P, Y) & ~Y == 0


def increasing_sets(P):
    """All up-closed subsets of ``P`` as sorted masks."""
    return kernels.upsets(P.size, P.strict_up, P.linear_extension)


@dataclass(frozen=True)
class DistLattice:
    poset: Poset
    join: tuple
    meet: tuple
    bottom: int
    top: int

    @property
    def size(self):
        return self.poset.size

    @property
    def names(self):
        return self.poset.names

    @cached_property
    def flat_join(self):
        return tuple(v for row in self.join for v in row)

    @cached_property
    def flat_meet(self):
        return tuple(v for row in self.meet for v in row)

    def join_all(self, items):
        out = self.bottom
        for x in items:
            out = self.join[out][x]
        return out

    def meet_all(self, items):
        out = self.top
        for x in items:
            out = self.meet[out][x]
        return out


def _bound(P, mask, above):
    """Least element of ``mask`` (``above=True``) or greatest, if it exists."""
    for z in members(mask):
        reach = P.down[z] if not above else P.up[z]
        if mask & ~reach == 0:
            return z
    return None


def lattice_from_poset(P):
    """Derive join and meet tables from the order and check distributivity."""
    m = P.size
    if m == 0:
        raise NotALattice("empty poset")
    join = []
    meet = []
    for x in range(m):
        jrow = []
        mrow = []
        for y in range(m):
            j = _bound(P, P.up[x] & P.up[y], above=True)
            if j is None:
                raise NotALattice(f"{P.names[x]!r} and {P.names[y]!r} have no join")
            mt = _bound(P, P.down[x] & P.down[y], above=False)
            if mt is None:
                raise NotALattice(f"{P.names[x]!r} and {P.names[y]!r} have no meet")
            jrow.append(j)
            mrow.append(mt)
        join.append(tuple(jrow))
        meet.append(tuple(mrow))
    bottom = _bound(P, P.full, above=True)
    top = _bound(P, P.full, above=False)
    L = DistLattice(P, tuple(join), tuple(meet), bottom, top)
    bad = distributivity_failure(L)
    if bad is not None:
        raise NotDistributive(
            "distributivity fails at " + ", ".join(P.names[i] for i in bad)
        )
    return L


def distributivity_failure(L):
    """First triple breaking either distributive law, or ``None``."""
    J, M = L.join, L.meet
    r = range(L.size)
    for x in r:
        for y in r:
            for z in r:
                if M[x][J[y][z]] != J[M[x][y]][M[x][z]]:
                    return (x, y, z)
                if J[x][M[y][z]] != M[J[x][y]][J[x][z]]:
                    return (x, y, z)
    return None


def lattice_of_sets(sets, names=None):
    """The lattice of the given masks under inclusion, union and intersection.

    ``sets`` must be closed under union and intersection and contain a least
    and a greatest member.
    """
    sets = list(sets)
    where = {s: i for i, s in enumerate(sets)}
    if names is None:
        names = [str(i) for i in range(len(sets))]
    P = Poset.from_leq(names, lambda i, j: sets[i] & ~sets[j] == 0)
    join = tuple(tuple(where[a | b] for b in sets) for a in sets)
    meet = tuple(tuple(where[a & b] for b in sets) for a in sets)
    bottom = min(range(len(sets)), key=lambda i: popcount(sets[i]))
    top = max(range(len(sets)), key=lambda i: popcount(sets[i]))
    return DistLattice(P, join, meet, bottom, top)


@dataclass(frozen=True)
class FilterPoset:
    """Prime filters of a lattice, ordered by inclusion.

    ``filters[k]`` is the member mask of the filter at point ``k`` of
    ``poset``.
    """

    poset: Poset
    filters: tuple


def is_filter(L, F):
    """Nonempty up-set closed under meets (the whole lattice counts)."""
    if F == 0 or not is_increasing(L.poset, F):
        return False
    ms = members(F)
    return all((F >> L.meet[a][b]) & 1 for a in ms for b in ms)


def is_prime_filter(L, F):
    if not is_filter(L, F) or (F >> L.bottom) & 1:
        return False
    outside = [a for a in range(L.size) if not (F >> a) & 1]
    return all(not (F >> L.join[a][b]) & 1 for a in outside for b in outside)


def prime_filters(L):
    """Every prime filter of ``L``, found by scanning all up-sets.

    Points are sorted by filter size, then mask; each is named ``[p)`` after
    its least member ``p``.
    """
    found = [F for F in increasing_sets(L.poset) if is_prime_filter(L, F)]
    found.sort(key=lambda F: (popcount(F), F))
    names = tuple(f"[{L.names[L.meet_all(members(F))]})" for F in found)
    P = Poset.from_leq(names, lambda i, j: found[i] & ~found[j] == 0)
    return FilterPoset(P, tuple(found))


def sigma(L, a, filters):
    """Mask of the prime filters (indices into ``filters``) containing ``a``."""
    out = 0
    for k, F in enumerate(filters.filters if isinstance(filters, FilterPoset) else filters):
        if (F >> a) & 1:
            out |= 1 << k
    return out


def principal_filter(L, a):
    """``[a)`` as a mask."""
    return L.poset.up[a]
