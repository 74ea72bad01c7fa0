"""Finite n-valued Lukasiewicz-Moisil algebras (without negation).

An algebra is a bounded distributive lattice together with endomorphisms
``phi_1 .. phi_{n-1}``.  The dual operations ``phi_bar_i`` are never given
as input: each is the lattice complement of ``phi_i``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as cartesian

from .errors import ArityMismatch, InvalidInput, InvalidN, L6EquivalenceFailure, ValidationError
from .order import DistLattice, Poset, build_poset, lattice_from_poset, members


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    message: str

    def as_dict(self):
        return {"axiom": self.axiom, "witness": list(self.witness), "message": self.message}


@dataclass(frozen=True, eq=False)
class LMnAlgebra:
    """``phi[i - 1][x]`` is the value of ``phi_i`` at element index ``x``."""

    lattice: DistLattice
    n: int
    phi: tuple
    name: str = ""

    @property
    def size(self):
        return self.lattice.size

    @property
    def names(self):
        return self.lattice.names

    @property
    def poset(self):
        return self.lattice.poset

    @property
    def indices(self):
        return range(1, self.n)

    def el(self, item):
        """Element index from a name or an index."""
        if isinstance(item, int):
            return item
        return self.poset.lookup(item)

    def phi_at(self, i, x):
        return self.phi[i - 1][x]

    def phi_bar_at(self, i, x):
        return self.phi_bar[i - 1][x]

    def join(self, x, y):
        return self.lattice.join[x][y]

    def meet(self, x, y):
        return self.lattice.meet[x][y]

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    @cached_property
    def complements(self):
        """``complements[x]`` is the complement of ``x`` or ``None``."""
        return tuple(complement_of(self, x) for x in range(self.size))

    @cached_property
    def phi_bar(self):
        """Derived ``phi_bar``; entries are ``None`` where ``phi_i x`` has no complement."""
        comp = self.complements
        return tuple(tuple(comp[v] for v in row) for row in self.phi)

    @cached_property
    def boolean_mask(self):
        return boolean_elements(self)

    def __repr__(self):
        label = self.name or "LMnAlgebra"
        return f"<{label}: n={self.n}, {self.size} elements>"


def complement_of(A, x):
    """The unique complement of ``x`` in the lattice of ``A``, or ``None``."""
    L = A.lattice if isinstance(A, LMnAlgebra) else A
    for y in range(L.size):
        if L.join[x][y] == L.top and L.meet[x][y] == L.bottom:
            return y
    return None


def validate_axioms(A):
    """Every violated axiom among L1-L5, each with its first witness.

    An empty list means ``A`` is an LM_n-algebra.
    """
    out = []
    L = A.lattice
    m = A.size
    if A.n < 2:
        return [Violation("n", (A.n,), "n must be at least 2")]
    if len(A.phi) != A.n - 1 or any(len(row) != m for row in A.phi):
        return [Violation("tables", (), "phi must give one total table per index 1..n-1")]
    if any(not 0 <= v < m for row in A.phi for v in row):
        return [Violation("tables", (), "phi value outside the carrier")]
    I = list(A.indices)
    nm = A.names

    def first(axiom, gen):
        for witness, msg in gen:
            out.append(Violation(axiom, witness, msg))
            return

    def l1():
        for i in I:
            f = A.phi[i - 1]
            if f[L.bottom] != L.bottom:
                yield (i, nm[L.bottom]), f"phi_{i} does not fix 0"
            if f[L.top] != L.top:
                yield (i, nm[L.top]), f"phi_{i} does not fix 1"
            for x in range(m):
                for y in range(m):
                    if f[L.join[x][y]] != L.join[f[x]][f[y]]:
                        yield (i, nm[x], nm[y]), f"phi_{i} does not preserve join"
                    if f[L.meet[x][y]] != L.meet[f[x]][f[y]]:
                        yield (i, nm[x], nm[y]), f"phi_{i} does not preserve meet"

    def l2():
        comp = A.complements
        for i in I:
            for x in range(m):
                if comp[A.phi[i - 1][x]] is None:
                    yield (i, nm[x]), f"phi_{i}({nm[x]}) has no complement"

    def l3():
        for i in I:
            for j in I:
                for x in range(m):
                    if A.phi[i - 1][A.phi[j - 1][x]] != A.phi[j - 1][x]:
                        yield (i, j, nm[x]), f"phi_{i} phi_{j} x != phi_{j} x"

    def l4():
        P = L.poset
        for i in I:
            for j in I:
                if i <= j:
                    for x in range(m):
                        if not P.leq(A.phi[i - 1][x], A.phi[j - 1][x]):
                            yield (i, j, nm[x]), f"phi_{i} x > phi_{j} x"

    def l5():
        seen = {}
        for x in range(m):
            key = tuple(A.phi[i - 1][x] for i in I)
            if key in seen:
                yield (nm[seen[key]], nm[x]), "distinct elements share every phi value"
            else:
                seen[key] = x

    first("L1", l1())
    first("L2", l2())
    first("L3", l3())
    first("L4", l4())
    first("L5", l5())
    return out


def check_algebra(A):
    """Return ``A`` unchanged, or raise ``ValidationError`` listing violations."""
    bad = validate_axioms(A)
    if bad:
        detail = "; ".join(f"{v.axiom} at {v.witness}: {v.message}" for v in bad)
        raise ValidationError(f"not an LM_{A.n}-algebra: {detail}", bad)
    return A


def boolean_elements(A):
    """Mask of the complemented elements, cross-checked against L6.

    Besides complementation, membership is evaluated as: fixed by some
    ``phi_i``; fixed by every ``phi_i``; in the image of some ``phi_i``;
    in the image of some ``phi_bar_i``.  All five must agree.
    """
    I = list(A.indices)
    img = set()
    img_bar = set()
    for i in I:
        img.update(A.phi[i - 1])
        img_bar.update(v for v in A.phi_bar[i - 1] if v is not None)
    mask = 0
    for x in range(A.size):
        conds = {
            "complemented": A.complements[x] is not None,
            "image of some phi_i": x in img,
            "image of some phi_bar_i": x in img_bar,
            "fixed by some phi_i": any(A.phi[i - 1][x] == x for i in I),
            "fixed by every phi_i": all(A.phi[i - 1][x] == x for i in I),
        }
        if len(set(conds.values())) != 1:
            raise L6EquivalenceFailure(f"conditions disagree at {A.names[x]}: {conds}", A.names[x])
        if conds["complemented"]:
            mask |= 1 << x
    return mask


def _fraction_name(j, n):
    return str(Fraction(j, n - 1))


def make_chain(n, values=None):
    """The Moisil chain ``{0, 1/(n-1), ..., 1}`` as an LM_n-algebra.

    ``phi_i(j/(n-1))`` is 1 when ``i + j >= n`` and 0 otherwise.  ``values``
    selects a subchain by numerators (it must contain 0 and ``n - 1``), e.g.
    ``make_chain(3, [0, 2])`` is the two-element Boolean LM_3-algebra.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidN(f"n must be an integer >= 2, got {n!r}")
    if values is None:
        values = list(range(n))
    values = sorted(set(values))
    if values[0] != 0 or values[-1] != n - 1 or any(not 0 <= v < n for v in values):
        raise InvalidInput("a subchain must contain 0 and n-1 and stay within 0..n-1")
    m = len(values)
    names = [_fraction_name(j, n) for j in values]
    P = Poset.from_leq(names, lambda a, b: a <= b)
    join = tuple(tuple(max(a, b) for b in range(m)) for a in range(m))
    meet = tuple(tuple(min(a, b) for b in range(m)) for a in range(m))
    L = DistLattice(P, join, meet, 0, m - 1)
    phi = tuple(
        tuple(m - 1 if i + values[k] >= n else 0 for k in range(m)) for i in range(1, n)
    )
    label = f"C{n}" if m == n else f"C{n}{{{','.join(names)}}}"
    return LMnAlgebra(L, n, phi, label)


def make_product(A, B):
    """Componentwise product of two LM_n-algebras with the same ``n``."""
    if A.n != B.n:
        raise ArityMismatch(f"cannot multiply an LM_{A.n}- and an LM_{B.n}-algebra")
    if A.size < 2 or B.size < 2:
        raise InvalidInput("factors must have 0 != 1")
    pairs = list(cartesian(range(A.size), range(B.size)))
    where = {p: k for k, p in enumerate(pairs)}
    names = [f"({A.names[a]},{B.names[b]})" for a, b in pairs]
    PA, PB = A.poset, B.poset
    P = Poset.from_leq(
        names, lambda u, v: PA.leq(pairs[u][0], pairs[v][0]) and PB.leq(pairs[u][1], pairs[v][1])
    )
    LA, LB = A.lattice, B.lattice
    join = tuple(
        tuple(where[(LA.join[a][c], LB.join[b][d])] for c, d in pairs) for a, b in pairs
    )
    meet = tuple(
        tuple(where[(LA.meet[a][c], LB.meet[b][d])] for c, d in pairs) for a, b in pairs
    )
    L = DistLattice(P, join, meet, where[(LA.bottom, LB.bottom)], where[(LA.top, LB.top)])
    phi = tuple(
        tuple(where[(A.phi[i - 1][a], B.phi[i - 1][b])] for a, b in pairs)
        for i in range(1, A.n)
    )
    label = f"{A.name or 'A'}x{B.name or 'B'}"
    return LMnAlgebra(L, A.n, phi, label)


def make_power(A, k):
    """``A`` multiplied with itself ``k`` times."""
    out = A
    for _ in range(k - 1):
        out = make_product(out, A)
    return out


def algebra_from_tables(elements, leq_pairs, n, phi, name=""):
    """Build (without validating) from an order and per-index phi maps.

    ``phi`` maps each index ``i`` in ``1..n-1`` to a dict from element name
    to element name.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidN(f"n must be an integer >= 2, got {n!r}")
    P = build_poset(elements, leq_pairs)
    L = lattice_from_poset(P)
    if sorted(phi) != list(range(1, n)):
        raise InvalidInput(f"phi must be given for exactly the indices 1..{n - 1}")
    rows = []
    for i in range(1, n):
        table = phi[i]
        if set(table) != set(P.names):
            raise InvalidInput(f"phi_{i} must be total on the carrier")
        rows.append(tuple(P.lookup(table[x]) for x in P.names))
    return LMnAlgebra(L, n, tuple(rows), name)


def homomorphism_failure(A, B, h):
    """First operation that ``h`` (a sequence A-index -> B-index) fails to preserve."""
    LA, LB = A.lattice, B.lattice
    if len(h) != A.size or any(not 0 <= v < B.size for v in h):
        return ("map", (), "h must be a total map into B")
    if A.n != B.n:
        return ("arity", (A.n, B.n), "algebras have different n")
    if h[LA.bottom] != LB.bottom:
        return ("0", (A.names[LA.bottom],), "0 not preserved")
    if h[LA.top] != LB.top:
        return ("1", (A.names[LA.top],), "1 not preserved")
    for x in range(A.size):
        for y in range(A.size):
            if h[LA.join[x][y]] != LB.join[h[x]][h[y]]:
                return ("join", (A.names[x], A.names[y]), "join not preserved")
            if h[LA.meet[x][y]] != LB.meet[h[x]][h[y]]:
                return ("meet", (A.names[x], A.names[y]), "meet not preserved")
    for i in A.indices:
        for x in range(A.size):
            if h[A.phi_at(i, x)] != B.phi_at(i, h[x]):
                return (f"phi_{i}", (A.names[x],), f"phi_{i} not preserved")
    return None


def boolean_names(A):
    return [A.names[x] for x in members(A.boolean_mask)]
