"""Dual spaces of LM_n-algebras and the way back.

A finite l_nP-space is a finite poset with self-maps ``f_1 .. f_{n-1}``.
Its Priestley topology is generated by the clopen up-sets and their
complements; on a finite carrier this is discrete, which
:func:`topological_closure` computes rather than assumes.
"""

import weakref
from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .algebra import LMnAlgebra, Violation, homomorphism_failure
from .errors import NotAHomomorphism, RoundTripFailure, TheoremViolation
from .order import (
    Poset,
    increasing_sets,
    lattice_of_sets,
    members,
    prime_filters,
)


@dataclass(frozen=True, eq=False)
class LnPSpace:
    """``maps[i - 1][x]`` is ``f_i(x)``.

    ``filters`` holds the member masks of the prime filters when the space
    was built from an algebra, so point ``k`` is the filter ``filters[k]``.
    """

    poset: Poset
    n: int
    maps: tuple
    filters: tuple = None
    name: str = ""

    @property
    def size(self):
        return self.poset.size

    @property
    def names(self):
        return self.poset.names

    @property
    def full(self):
        return self.poset.full

    @property
    def indices(self):
        return range(1, self.n)

    def f(self, i, x):
        return self.maps[i - 1][x]

    def image(self, i, Y):
        out = 0
        t = self.maps[i - 1]
        for y in members(Y):
            out |= 1 << t[y]
        return out

    def preimage(self, i, Y):
        t = self.maps[i - 1]
        out = 0
        for x in range(self.size):
            if (Y >> t[x]) & 1:
                out |= 1 << x
        return out

    def images(self, Y):
        """Union of the images of ``Y`` under every map."""
        out = 0
        for i in self.indices:
            out |= self.image(i, Y)
        return out

    def preimages(self, Y):
        """Union of the preimages of ``Y`` under every map."""
        out = 0
        for i in self.indices:
            out |= self.preimage(i, Y)
        return out

    def common_preimage(self, Y):
        """Intersection of the preimages of ``Y`` under every map."""
        out = self.full
        for i in self.indices:
            out &= self.preimage(i, Y)
        return out

    @cached_property
    def clopen_upsets(self):
        return increasing_sets(self.poset)

    def __repr__(self):
        return f"<LnPSpace {self.name}: n={self.n}, {self.size} points>"


_dual_cache = weakref.WeakKeyDictionary()
_sigma_cache = weakref.WeakKeyDictionary()


def dual_space(A):
    """Prime filters of ``A`` with ``f_i(P) = phi_i^{-1}(P)``."""
    cached = _dual_cache.get(A)
    if cached is not None:
        return cached
    FP = prime_filters(A.lattice)
    where = {F: k for k, F in enumerate(FP.filters)}
    maps = []
    for i in A.indices:
        row = []
        for F in FP.filters:
            pre = 0
            for x in range(A.size):
                if (F >> A.phi_at(i, x)) & 1:
                    pre |= 1 << x
            if pre not in where:
                raise TheoremViolation("A2", f"phi_{i}^-1 of a prime filter is not prime")
            row.append(where[pre])
        maps.append(tuple(row))
    X = LnPSpace(FP.poset, A.n, tuple(maps), FP.filters, f"X({A.name})" if A.name else "")
    _dual_cache[A] = X
    return X


def sigma_table(A):
    """``sigma_table(A)[a]`` is the mask of prime filters containing ``a``."""
    cached = _sigma_cache.get(A)
    if cached is not None:
        return cached
    X = dual_space(A)
    table = tuple(
        sum(1 << k for k, F in enumerate(X.filters) if (F >> a) & 1) for a in range(A.size)
    )
    _sigma_cache[A] = table
    return table


def set_name(X, Y):
    return "{" + ",".join(X.names[k] for k in members(Y)) + "}"


def co_dual(X):
    """The algebra of up-sets of ``X`` with ``phi_i(U) = f_i^{-1}(U)``."""
    ups = X.clopen_upsets
    where = {U: k for k, U in enumerate(ups)}
    L = lattice_of_sets(ups, [set_name(X, U) for U in ups])
    phi = []
    for i in X.indices:
        row = []
        for U in ups:
            pre = X.preimage(i, U)
            if pre not in where:
                raise TheoremViolation("A1", f"f_{i}^-1 of an up-set is not an up-set")
            row.append(where[pre])
        phi.append(tuple(row))
    return LMnAlgebra(L, X.n, tuple(phi), f"D({X.name})" if X.name else "")


def topological_closure(X, D):
    """Closure of ``D`` in the topology generated by the clopen up-sets and
    their complements.

    A point lies in the closure when its smallest basic neighbourhood meets
    ``D``.
    """
    out = 0
    ups = X.clopen_upsets
    for x in range(X.size):
        nbhd = X.full
        for U in ups:
            nbhd &= U if (U >> x) & 1 else ~U
        if nbhd & D:
            out |= 1 << x
    return out


def is_dense_in(X, D, S):
    """``D`` is a dense subset of ``S`` in the relative topology."""
    return D & ~S == 0 and S & ~topological_closure(X, D) == 0


def chain_decomposition(X):
    """The maximal chains ``{f_i(x)}``, one per block, sorted by least member."""
    blocks = set()
    for x in range(X.size):
        b = 0
        for i in X.indices:
            b |= 1 << X.f(i, x)
        blocks.add(b)
    return sorted(blocks, key=lambda b: (b & -b, b))


def _lnp6(X):
    return X.images(X.full) == X.full


def _lnp7(X):
    return kernels.preimage_collision(X.size, X.maps) is None


def _lnp8(X):
    return all(any(X.f(i, x) == x for i in X.indices) for x in range(X.size))


def validate_space(X, max_subset_points=20):
    """Violated axioms of an l_nP-space, each with a witness.

    lP3-lP5, l_nP6, l_nP7, l_nP8, lP7 (restricted to up-sets), lP8-lP10 and
    the segment decomposition lP11 are evaluated separately.  When lP3-lP5
    hold, l_nP6, l_nP7 and l_nP8 must agree; a disagreement raises
    ``TheoremViolation``.  l_nP7 scans every subset and is skipped above
    ``max_subset_points`` points.
    """
    out = []
    P = X.poset
    nm = X.names
    I = list(X.indices)
    m = X.size
    if len(X.maps) != X.n - 1 or any(len(t) != m for t in X.maps):
        return [Violation("maps", (), "one total map per index 1..n-1 required")]
    if any(not 0 <= v < m for t in X.maps for v in t):
        return [Violation("maps", (), "map value outside the carrier")]

    def first(axiom, gen):
        for witness, msg in gen:
            out.append(Violation(axiom, witness, msg))
            return True
        return False

    def lp3():
        for x in range(m):
            for y in members(P.up[x]):
                for i in I:
                    if X.f(i, x) != X.f(i, y):
                        yield (i, nm[x], nm[y]), f"x <= y but f_{i}(x) != f_{i}(y)"

    def lp4():
        for i in I:
            for j in I:
                if i <= j:
                    for x in range(m):
                        if not P.leq(X.f(i, x), X.f(j, x)):
                            yield (i, j, nm[x]), f"f_{i}(x) not <= f_{j}(x)"

    def lp5():
        for i in I:
            for j in I:
                for x in range(m):
                    if X.f(i, X.f(j, x)) != X.f(i, x):
                        yield (i, j, nm[x]), f"f_{i} f_{j} != f_{i}"

    base_bad = [first("lP3", lp3()), first("lP4", lp4()), first("lP5", lp5())]

    p6 = _lnp6(X)
    p8 = _lnp8(X)
    p7 = _lnp7(X) if m <= max_subset_points else None
    if not p6:
        missing = X.full & ~X.images(X.full)
        out.append(Violation("lnP6", (nm[members(missing)[0]],), "point outside every image"))
    if p7 is False:
        y, z = kernels.preimage_collision(X.size, X.maps)
        out.append(
            Violation("lnP7", (set_name(X, y), set_name(X, z)), "distinct sets, equal preimages")
        )
    if not p8:
        x = next(x for x in range(m) if all(X.f(i, x) != x for i in I))
        out.append(Violation("lnP8", (nm[x],), "no f_i fixes this point"))
    if not any(base_bad):
        verdicts = {v for v in (p6, p7, p8) if v is not None}
        if len(verdicts) > 1:
            raise TheoremViolation(
                "lnP6-lnP8", f"equivalent conditions disagree: {p6}, {p7}, {p8}"
            )

    def lp7():
        seen = {}
        for U in X.clopen_upsets:
            key = tuple(X.preimage(i, U) for i in I)
            if key in seen:
                yield (set_name(X, seen[key]), set_name(X, U)), "up-sets with equal preimages"
            seen[key] = U

    def lp8():
        for i in I:
            for x in range(m):
                fx = X.f(i, x)
                if not (P.leq(x, fx) or P.leq(fx, x)):
                    yield (i, nm[x]), f"x and f_{i}(x) incomparable"

    def lp9():
        lo = I[0]
        for x in range(m):
            fx = X.f(lo, x)
            minimal_below = [z for z in members(P.down[x]) if P.down[z] == 1 << z]
            if not P.leq(fx, x) or minimal_below != [fx]:
                yield (lo, nm[x]), f"f_{lo}(x) is not the unique minimal element below x"

    def lp10():
        hi = I[-1]
        for x in range(m):
            fx = X.f(hi, x)
            maximal_above = [z for z in members(P.up[x]) if P.up[z] == 1 << z]
            if not P.leq(x, fx) or maximal_above != [fx]:
                yield (hi, nm[x]), f"f_{hi}(x) is not the unique maximal element above x"

    def lp11():
        segs = set()
        for x in range(m):
            a, b = X.f(I[0], x), X.f(I[-1], x)
            segs.add(P.up[a] & P.down[b])
        covered = 0
        for s in segs:
            if s & covered:
                yield (set_name(X, s),), "segments overlap"
                return
            covered |= s
            # cardinal sum: nothing outside the segment is comparable to it
            reach = 0
            for z in members(s):
                reach |= P.up[z] | P.down[z]
            if reach & ~s:
                yield (set_name(X, s),), "segment comparable to an outside point"
                return
        if covered != X.full:
            yield (set_name(X, X.full & ~covered),), "segments do not cover X"

    first("lP7", lp7())
    first("lP8", lp8())
    first("lP9", lp9())
    first("lP10", lp10())
    first("lP11", lp11())
    return out


@dataclass(frozen=True)
class RoundTrip:
    """``sigma[a]`` indexes ``D(X(A))``; ``epsilon[x]`` indexes ``X(D(X))``."""

    algebra_side: LMnAlgebra
    space_side: LnPSpace
    sigma: tuple
    epsilon: tuple


def round_trip(A):
    """Verify that ``sigma_A`` and ``epsilon_X`` are isomorphisms."""
    X = dual_space(A)
    DA = co_dual(X)
    ups = X.clopen_upsets
    where = {U: k for k, U in enumerate(ups)}
    sig = sigma_table(A)
    if len(ups) != A.size:
        raise RoundTripFailure(f"|D(X(A))| = {len(ups)} but |A| = {A.size}")
    if any(s not in where for s in sig):
        raise RoundTripFailure("sigma(a) is not an up-set")
    smap = tuple(where[s] for s in sig)
    if len(set(smap)) != A.size:
        raise RoundTripFailure("sigma is not injective")
    bad = homomorphism_failure(A, DA, smap)
    if bad is not None:
        raise RoundTripFailure(f"sigma does not preserve {bad[0]} at {bad[1]}", bad)

    XX = dual_space(DA)
    fwhere = {F: k for k, F in enumerate(XX.filters)}
    eps = []
    for x in range(X.size):
        F = sum(1 << k for k, U in enumerate(ups) if (U >> x) & 1)
        if F not in fwhere:
            raise RoundTripFailure(f"epsilon({X.names[x]}) is not a prime filter")
        eps.append(fwhere[F])
    eps = tuple(eps)
    if len(set(eps)) != X.size or XX.size != X.size:
        raise RoundTripFailure("epsilon is not a bijection")
    for x in range(X.size):
        for y in range(X.size):
            if X.poset.leq(x, y) != XX.poset.leq(eps[x], eps[y]):
                raise RoundTripFailure(
                    f"epsilon is not an order isomorphism at {X.names[x]}, {X.names[y]}"
                )
        for i in X.indices:
            if eps[X.f(i, x)] != XX.f(i, eps[x]):
                raise RoundTripFailure(f"epsilon does not commute with f_{i} at {X.names[x]}")
    return RoundTrip(DA, XX, smap, eps)


def dual_hom(A, B, h):
    """``P -> h^{-1}(P)`` from ``X(B)`` to ``X(A)`` for a homomorphism ``h: A -> B``."""
    h = tuple(B.el(v) for v in h)
    bad = homomorphism_failure(A, B, h)
    if bad is not None:
        raise NotAHomomorphism(f"{bad[2]} (witness {bad[1]})", bad)
    XA, XB = dual_space(A), dual_space(B)
    where = {F: k for k, F in enumerate(XA.filters)}
    out = []
    for F in XB.filters:
        pre = sum(1 << a for a in range(A.size) if (F >> h[a]) & 1)
        if pre not in where:
            raise TheoremViolation("duality", "preimage of a prime filter is not prime")
        out.append(where[pre])
    out = tuple(out)
    for p in range(XB.size):
        for q in members(XB.poset.up[p]):
            if not XA.poset.leq(out[p], out[q]):
                raise TheoremViolation("duality", "dual map is not increasing")
        for i in A.indices:
            if XA.f(i, out[p]) != out[XB.f(i, p)]:
                raise TheoremViolation("duality", f"dual map does not commute with f_{i}")
    return out


def compose_maps(g, h):
    """``g`` after ``h`` for maps given as index tuples."""
    return tuple(g[v] for v in h)


def space_from_chains(lengths, n, name=""):
    """Cardinal sum of chains ``c_0 < c_1 < ...`` with the standard maps.

    A chain of length ``k`` (``1 <= k <= n - 1``) is the dual of the
    subalgebra of ``C_n`` on ``k + 1`` elements; ``f_i`` sends each point to
    the chain member picked by threshold ``i``.  Useful for building spaces
    without an algebra, e.g. in benchmarks.
    """
    names = []
    up = []
    offsets = []
    base = 0
    for c, k in enumerate(lengths):
        offsets.append(base)
        for j in range(k):
            names.append(f"c{c}.{j}")
        base += k
    m = base
    for c, k in enumerate(lengths):
        o = offsets[c]
        for j in range(k):
            up.append(sum(1 << (o + t) for t in range(j, k)))
    down = [sum(1 << y for y in range(m) if (up[y] >> x) & 1) for x in range(m)]
    P = Poset(tuple(names), tuple(up), tuple(down))
    maps = []
    for i in range(1, n):
        row = []
        for c, k in enumerate(lengths):
            # spread the chain's k points over the n - 1 indices, monotone in i
            pick = min(k - 1, (i - 1) * k // (n - 1))
            row.extend([offsets[c] + pick] * k)
        maps.append(tuple(row))
    return LnPSpace(P, n, tuple(maps), None, name)
