"""Congruences and theta-congruences of finite LM_n-algebras.

Two independent routes are kept apart on purpose:

* the dual route reads congruences off subsets of the dual space
  (``Theta_S(Y)``: ``a ~ b`` iff ``sigma(a)`` and ``sigma(b)`` agree on ``Y``);
* the oracle route closes a set of generating pairs under the operations
  (:func:`generate_congruence_oracle`) and never looks at the dual space.

Every closed-form principal congruence is computed along several dual
formulas and compared against the oracle.  In a finite space every subset
is clopen, so "closed", "open" and "clopen" qualifiers impose nothing and
closures are computed with :func:`lmkit.duality.topological_closure`.
"""

import weakref
from dataclasses import dataclass, field

from . import kernels
from .duality import dual_space, is_dense_in, sigma_table, topological_closure
from .errors import (
    AlgebraMismatch,
    ComplementNotSemimodal,
    NotAFilter,
    NotSemimodal,
    TheoremViolation,
)
from .order import is_convex, is_decreasing, is_filter, is_increasing, members

LM = "LM"
THETA = "theta"

DEFAULT_MAX_SPACE_SIZE = 20


class Congruence:
    """A partition of the carrier stored as canonical labels.

    ``labels[x]`` is the least element index in the class of ``x``, so two
    congruences of the same algebra are equal exactly when their label
    tuples are.
    """

    __slots__ = ("labels", "algebra", "__weakref__")

    def __init__(self, algebra, labels):
        self.algebra = algebra
        self.labels = tuple(labels)

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.algebra is other.algebra and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"Congruence({self.describe()})"

    def related(self, a, b):
        return self.labels[a] == self.labels[b]

    def blocks(self):
        """Classes as lists of indices, ordered by least member."""
        out = {}
        for x, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(x)
        return [out[k] for k in sorted(out)]

    def class_of(self, x):
        lab = self.labels[x]
        return [y for y, other in enumerate(self.labels) if other == lab]

    @property
    def num_classes(self):
        return len(set(self.labels))

    def is_identity(self):
        return self.num_classes == len(self.labels)

    def is_total(self):
        return self.num_classes == 1

    def __le__(self, other):
        """Set inclusion of the relations."""
        _same_algebra(self, other)
        seen = {}
        for lab, olab in zip(self.labels, other.labels):
            if seen.setdefault(lab, olab) != olab:
                return False
        return True

    def __ge__(self, other):
        return other.__le__(self)

    def describe(self):
        names = self.algebra.names
        return " | ".join("{" + ",".join(names[x] for x in b) + "}" for b in self.blocks())

    def pairs(self):
        lab = self.labels
        m = len(lab)
        return [(x, y) for x in range(m) for y in range(m) if lab[x] == lab[y]]

    def is_lattice_congruence(self):
        A, lab = self.algebra, self.labels
        reps = self.blocks()
        for block in reps:
            for x in block:
                for y in block:
                    for c in range(A.size):
                        if lab[A.join(x, c)] != lab[A.join(y, c)]:
                            return False
                        if lab[A.meet(x, c)] != lab[A.meet(y, c)]:
                            return False
        return True

    def is_lm_compatible(self):
        """Classes are preserved by every ``phi_i`` and ``phi_bar_i``."""
        A, lab = self.algebra, self.labels
        for block in self.blocks():
            for x in block:
                for y in block:
                    for i in A.indices:
                        if lab[A.phi_at(i, x)] != lab[A.phi_at(i, y)]:
                            return False
                        bx, by = A.phi_bar_at(i, x), A.phi_bar_at(i, y)
                        if bx is None or by is None or lab[bx] != lab[by]:
                            return False
        return True

    def is_congruence(self):
        return self.is_lattice_congruence() and self.is_lm_compatible()

    def is_theta_congruence(self):
        """A lattice congruence with ``x ~ y`` iff ``phi_i x ~ phi_i y`` for all i."""
        if not self.is_lattice_congruence():
            return False
        A, lab = self.algebra, self.labels
        for x in range(A.size):
            for y in range(A.size):
                same_phi = all(lab[A.phi_at(i, x)] == lab[A.phi_at(i, y)] for i in A.indices)
                if same_phi != (lab[x] == lab[y]):
                    return False
        return True


def _same_algebra(c1, c2):
    if c1.algebra is not c2.algebra:
        raise AlgebraMismatch("congruences belong to different algebras")


def identity(A):
    return Congruence(A, range(A.size))


def total(A):
    return Congruence(A, [0] * A.size)


def meet(c1, c2):
    """Intersection of two congruences."""
    _same_algebra(c1, c2)
    return Congruence(c1.algebra, kernels.partition_labels(list(zip(c1.labels, c2.labels))))


def join(c1, c2):
    """Transitive closure of the union of two congruences."""
    _same_algebra(c1, c2)
    m = len(c1.labels)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab in (c1.labels, c2.labels):
        for x in range(m):
            rx, ry = find(x), find(lab[x])
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    return Congruence(c1.algebra, [find(x) for x in range(m)])


# -- subsets of the dual space -------------------------------------------------


@dataclass(frozen=True)
class SubsetFlags:
    increasing: bool
    decreasing: bool
    convex: bool
    semimodal: bool
    modal: bool
    theta_subset: bool
    chain_union: bool


def maximal_chains_by_order(X):
    """Connected components of the comparability graph of ``X``.

    Computed from the order alone; on a valid space these are the maximal
    chains.
    """
    P = X.poset
    seen = 0
    comps = []
    for x in range(X.size):
        if (seen >> x) & 1:
            continue
        comp = 1 << x
        frontier = comp
        while frontier:
            reach = 0
            for y in members(frontier):
                reach |= P.up[y] | P.down[y]
            frontier = reach & ~comp
            comp |= reach
        seen |= comp
        comps.append(comp)
    return comps


def is_semimodal(X, Y):
    return X.images(Y) & ~Y == 0


def is_modal(X, Y):
    return all(X.preimage(i, Y) == Y for i in X.indices)


def is_theta_subset(X, Y):
    img = X.images(Y)
    return img & ~Y == 0 and Y & ~topological_closure(X, img) == 0


def classify_subset(X, Y, check=True):
    """Flags for ``Y``; with ``check`` the equivalence of semimodal, modal and
    "union of maximal chains" is enforced for nonempty ``Y``."""
    chain_union = all(c & Y in (0, c) for c in maximal_chains_by_order(X))
    flags = SubsetFlags(
        increasing=is_increasing(X.poset, Y),
        decreasing=is_decreasing(X.poset, Y),
        convex=is_convex(X.poset, Y),
        semimodal=is_semimodal(X, Y),
        modal=is_modal(X, Y),
        theta_subset=is_theta_subset(X, Y),
        chain_union=chain_union,
    )
    if check and Y and len({flags.semimodal, flags.modal, flags.chain_union}) != 1:
        raise TheoremViolation(
            "semimodal-modal-chains",
            f"semimodal={flags.semimodal}, modal={flags.modal}, "
            f"chain_union={flags.chain_union} disagree",
            Y,
        )
    return flags


def theta_from_subset(A, Y):
    """``Theta_S(Y)``: ``a ~ b`` iff ``sigma(a) & Y == sigma(b) & Y``."""
    X = dual_space(A)
    if not is_semimodal(X, Y):
        raise NotSemimodal("the dual subset must be semimodal")
    return _theta_s(A, Y)


def _theta_s(A, Y):
    sig = sigma_table(A)
    return Congruence(A, kernels.partition_labels([s & Y for s in sig]))


def congruence_from_open(A, G):
    """``Theta_OS(G)``: ``a ~ b`` iff ``sigma(a)`` and ``sigma(b)`` differ only inside ``G``."""
    X = dual_space(A)
    if not is_semimodal(X, X.full & ~G):
        raise ComplementNotSemimodal("the complement of G must be semimodal")
    return _theta_s(A, X.full & ~G)


def dual_open_set(A, theta):
    """Union of ``sigma(a) ^ sigma(b)`` over related pairs, checked to give back ``theta``."""
    sig = sigma_table(A)
    G = 0
    for block in theta.blocks():
        s0 = sig[block[0]]
        for x in block[1:]:
            G |= s0 ^ sig[x]
    if _theta_s(A, dual_space(A).full & ~G) != theta:
        raise TheoremViolation("Theta_OS", "dual open set does not reproduce the congruence")
    return G


# -- the oracle ----------------------------------------------------------------


def generate_congruence_oracle(A, pairs, mode=LM):
    """Least congruence (``mode="LM"``) or theta-congruence (``mode="theta"``)
    containing ``pairs``, by fixpoint closure on the algebra itself."""
    L = A.lattice
    if mode == LM:
        unary = list(A.phi) + list(A.phi_bar)
        labels = kernels.congruence_closure(A.size, L.flat_join, L.flat_meet, unary, pairs)
    elif mode == THETA:
        labels = kernels.congruence_closure(
            A.size, L.flat_join, L.flat_meet, list(A.phi), pairs, reflect=list(A.phi)
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return Congruence(A, labels)


# -- principal congruences -----------------------------------------------------


_caches = weakref.WeakKeyDictionary()


def _cache(A):
    c = _caches.get(A)
    if c is None:
        c = _caches[A] = {}
    return c


def subsets_of_kind(A, kind, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """All semimodal / modal / theta subsets of ``X(A)``, or ``None`` above the cap."""
    X = dual_space(A)
    if X.size > max_space_size:
        return None
    key = ("subsets", kind)
    c = _cache(A)
    if key not in c:
        code = {"semimodal": kernels.SEMIMODAL, "modal": kernels.MODAL, "theta": kernels.THETA}
        found = kernels.scan_subsets(X.size, X.maps, code[kind])
        if kind == "theta":
            # the kernel tests Y == union of images; confirm against the
            # topological definition
            found = [Y for Y in found if is_theta_subset(X, Y)]
        c[key] = tuple(found)
    return c[key]


def _ordered(A, a, b):
    a, b = A.el(a), A.el(b)
    return A.meet(a, b), A.join(a, b)


def _least_containing(candidates, D):
    """Least set among ``candidates`` containing ``D``; it must be unique."""
    above = [G for G in candidates if D & ~G == 0]
    least = [G for G in above if all(G & ~H == 0 for H in above)]
    if len(least) != 1:
        raise TheoremViolation("least element", "no unique least candidate set")
    return least[0]


def principal_forms(A, a, b, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """Every dual description of ``Theta(a, b)``.

    Returns ``(open_sets, congruences)``.  ``open_sets`` maps a form name to
    the dual open set ``G``; ``congruences`` maps a form name to the
    congruence it yields, including the filter form and the oracle.
    """
    a, b = _ordered(A, a, b)
    X = dual_space(A)
    sig = sigma_table(A)
    I = list(A.indices)
    D = sig[b] & ~sig[a]
    G = {}
    G["set"] = D | X.preimages(D)
    G["sigma"] = D
    for i in I:
        G["sigma"] |= sig[A.meet(A.phi_at(i, b), A.phi_bar_at(i, a))]
    G["modal"] = X.preimages(D)
    G["join"] = sig[A.lattice.join_all(A.meet(A.phi_at(i, b), A.phi_bar_at(i, a)) for i in I)]
    semimodal = subsets_of_kind(A, "semimodal", max_space_size)
    if semimodal is not None:
        G["least"] = _least_containing([X.full & ~Y for Y in semimodal], D)
        modal = subsets_of_kind(A, "modal", max_space_size)
        G["least modal"] = _least_containing(modal, D)
    cong = {name: _theta_s(A, X.full & ~g) for name, g in G.items()}
    gen = filter_generator(A, a, b)
    cong["filter"] = filter_congruence(A, A.poset.up[gen])
    cong["oracle"] = generate_congruence_oracle(A, [(a, b)], LM)
    return G, cong


def filter_generator(A, a, b):
    """The element ``meet_i (phi_bar_i b v phi_i a)`` whose filter gives ``Theta(a, b)``."""
    a, b = _ordered(A, a, b)
    return A.lattice.meet_all(A.join(A.phi_bar_at(i, b), A.phi_at(i, a)) for i in A.indices)


def principal_congruence(A, a, b, check=True, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """``Theta(a, b)``; with ``check`` every dual form must match the oracle."""
    if not check:
        a, b = _ordered(A, a, b)
        return generate_congruence_oracle(A, [(a, b)], LM)
    G, cong = principal_forms(A, a, b, max_space_size)
    if len(set(G.values())) != 1:
        raise TheoremViolation("principal", f"open-set forms disagree: {G}", (a, b))
    if len(set(cong.values())) != 1:
        names = {k: v.describe() for k, v in cong.items()}
        raise TheoremViolation("principal", f"congruence forms disagree: {names}", (a, b))
    return cong["oracle"]


def principal_theta_forms(A, a, b, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """Every dual description of ``Theta_theta(a, b)``; see :func:`principal_forms`."""
    a, b = _ordered(A, a, b)
    X = dual_space(A)
    sig = sigma_table(A)
    I = list(A.indices)
    full = X.full
    D = sig[b] & ~sig[a]
    G = D | X.preimages(D)
    H = {}
    H["complement"] = full & ~topological_closure(X, X.images(full & ~G))
    H["preimage"] = full & ~topological_closure(X, X.images(X.common_preimage(full & ~D)))
    inter = full
    for i in I:
        inter &= sig[A.join(A.phi_at(i, a), A.phi_bar_at(i, b))]
    H["sigma"] = full & ~topological_closure(X, X.images(inter))
    thetas = subsets_of_kind(A, "theta", max_space_size)
    if thetas is not None:
        H["least"] = _least_containing([full & ~Y for Y in thetas], D)
    cong = {name: _theta_s(A, full & ~h) for name, h in H.items()}
    cong["oracle"] = generate_congruence_oracle(A, [(a, b)], THETA)
    return H, cong


def principal_theta_congruence(A, a, b, check=True, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """``Theta_theta(a, b)``; with ``check`` every dual form must match the oracle."""
    if not check:
        a, b = _ordered(A, a, b)
        return generate_congruence_oracle(A, [(a, b)], THETA)
    H, cong = principal_theta_forms(A, a, b, max_space_size)
    if len(set(H.values())) != 1:
        raise TheoremViolation("principal theta", f"open-set forms disagree: {H}", (a, b))
    if len(set(cong.values())) != 1:
        names = {k: v.describe() for k, v in cong.items()}
        raise TheoremViolation("principal theta", f"congruence forms disagree: {names}", (a, b))
    return cong["oracle"]


def comparable_pairs(A):
    """All ``(a, b)`` with ``a <= b``, in index order."""
    P = A.poset
    return [(a, b) for a in range(A.size) for b in members(P.up[a])]


def principal_table(A, mode=LM):
    """Map from each principal (theta-)congruence to its first generating pair."""
    key = ("principal", mode)
    c = _cache(A)
    if key not in c:
        table = {}
        for a, b in comparable_pairs(A):
            theta = generate_congruence_oracle(A, [(a, b)], mode)
            table.setdefault(theta, (a, b))
        c[key] = table
    return c[key]


@dataclass(frozen=True)
class PrincipalWitness:
    """``Theta(a, b)`` equals the congruence; ``R`` is a convex set with
    ``G = R | union_i f_i^{-1}(R)`` for the congruence's dual open set ``G``."""

    a: int
    b: int
    R: int
    G: int


def is_principal(A, theta, mode=LM):
    """Generating pair of ``theta`` with its convex-set certificate, or ``None``."""
    hit = principal_table(A, mode).get(theta)
    if hit is None:
        return None
    a, b = hit
    X = dual_space(A)
    sig = sigma_table(A)
    R = sig[b] & ~sig[a]
    if not is_convex(X.poset, R):
        raise TheoremViolation("convex R", "sigma(b) minus sigma(a) is not convex", hit)
    if mode == LM:
        G = dual_open_set(A, theta)
        if G != R | X.preimages(R):
            raise TheoremViolation("convex R", "G != R | union f_i^-1(R)", hit)
        if not is_modal(X, G):
            raise TheoremViolation("modal G", "open set of a principal congruence is not modal", hit)
    else:
        full = X.full
        G = full & ~topological_closure(X, X.images(X.common_preimage(full & ~R)))
        if _theta_s(A, full & ~G) != theta:
            raise TheoremViolation("convex R", "theta form from R does not give the congruence", hit)
    return PrincipalWitness(a, b, R, G)


# -- filters -------------------------------------------------------------------


def filter_congruence(A, F):
    """``{(x, y) : x ^ f == y ^ f for some f in F}``.

    When ``Y_F`` (the prime filters containing all of ``F``) is semimodal the
    result must equal ``Theta_S(Y_F)``.  Otherwise it is only guaranteed to
    be a lattice congruence; use :meth:`Congruence.is_lm_compatible`.
    """
    L = A.lattice
    if not is_filter(L, F):
        raise NotAFilter("F must be a nonempty up-set closed under meets")
    fs = members(F)
    m = A.size
    labels = list(range(m))
    for x in range(m):
        for y in range(x):
            if labels[y] == y and any(L.meet[x][f] == L.meet[y][f] for f in fs):
                labels[x] = y
                break
    theta = Congruence(A, labels)
    X = dual_space(A)
    sig = sigma_table(A)
    YF = X.full
    for f in fs:
        YF &= sig[f]
    if is_semimodal(X, YF) and _theta_s(A, YF) != theta:
        raise TheoremViolation("filter", "Theta(F) differs from Theta_S(Y_F)", F)
    return theta


def filter_of_subset(A, Y):
    """``F_Y``: elements whose sigma contains ``Y``."""
    sig = sigma_table(A)
    return sum(1 << a for a in range(A.size) if Y & ~sig[a] == 0)


# -- whole lattices ------------------------------------------------------------


@dataclass(eq=False)
class CongruenceLattice:
    """All (theta-)congruences of an algebra.

    ``subsets[k]`` is the closed dual subset of ``congruences[k]`` when the
    dual space was small enough to enumerate, else ``None``.
    """

    algebra: object
    mode: str
    congruences: tuple
    subsets: tuple = None
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {c: k for k, c in enumerate(self.congruences)}

    def __len__(self):
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __contains__(self, c):
        return c in self._index

    def index(self, c):
        return self._index[c]

    def leq(self, j, k):
        return self.congruences[j] <= self.congruences[k]

    def hasse(self):
        """Cover pairs ``(j, k)`` with ``congruences[j] < congruences[k]``."""
        m = len(self.congruences)
        below = [[j for j in range(m) if j != k and self.leq(j, k)] for k in range(m)]
        edges = []
        for k in range(m):
            for j in below[k]:
                if not any(j in below[t] for t in below[k]):
                    edges.append((j, k))
        return edges

    def meet(self, c1, c2):
        return meet(c1, c2)

    def join(self, c1, c2):
        """Join inside this lattice: the theta-closure for theta-congruences."""
        j = join(c1, c2)
        if self.mode == THETA:
            gens = [(x, lab) for x, lab in enumerate(j.labels) if x != lab]
            j = generate_congruence_oracle(self.algebra, gens, THETA)
        return j

    def complements(self, c):
        A = self.algebra
        bottom, top = identity(A), total(A)
        return [d for d in self.congruences if meet(c, d) == bottom and self.join(c, d) == top]


def _sort_key(c):
    return (-c.num_classes, c.labels)


def principal_join_closure(A, mode=LM):
    """Every congruence, as joins of principal ones built by the oracle."""
    principals = list(principal_table(A, mode))
    found = {identity(A)} | set(principals)
    frontier = list(found)
    while frontier:
        new = []
        for c in frontier:
            for p in principals:
                j = join(c, p)
                if mode == THETA:
                    gens = [(x, lab) for x, lab in enumerate(j.labels) if x != lab]
                    j = generate_congruence_oracle(A, gens, THETA)
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    return found


def all_congruences(A, mode=LM, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """The congruence lattice (``mode="LM"``) or theta-congruence lattice.

    Dual route: every semimodal (resp. theta) subset ``Y`` of ``X(A)`` mapped
    through ``Theta_S``.  The map is checked to be injective and
    order-reversing in both directions, and its image must equal the set
    built by joining principal congruences from the oracle.  For LM_n the
    semimodal subsets must also be exactly the modal ones.
    """
    key = ("lattice", mode, max_space_size)
    c = _cache(A)
    if key in c:
        return c[key]
    oracle_side = principal_join_closure(A, mode)
    kind = "semimodal" if mode == LM else "theta"
    subsets = subsets_of_kind(A, kind, max_space_size)
    if subsets is None:
        congs = sorted(oracle_side, key=_sort_key)
        lat = CongruenceLattice(A, mode, tuple(congs), None)
        c[key] = lat
        return lat
    if mode == LM:
        modal = subsets_of_kind(A, "modal", max_space_size)
        if set(modal) != set(subsets):
            raise TheoremViolation("modal subsets", "semimodal and modal subsets differ")
    image = {}
    for Y in subsets:
        theta = _theta_s(A, Y)
        if theta in image:
            raise TheoremViolation("Theta_S", "two dual subsets give one congruence", (image[theta], Y))
        image[theta] = Y
    for t1, Y1 in image.items():
        for t2, Y2 in image.items():
            if (Y1 & ~Y2 == 0) != (t2 <= t1):
                raise TheoremViolation("Theta_S", "map is not an order anti-isomorphism", (Y1, Y2))
    if set(image) != oracle_side:
        raise TheoremViolation(
            "Theta_S", f"{len(image)} congruences from subsets, {len(oracle_side)} from the oracle"
        )
    congs = sorted(image, key=_sort_key)
    lat = CongruenceLattice(A, mode, tuple(congs), tuple(image[t] for t in congs))
    c[key] = lat
    return lat


def all_theta_congruences(A, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    return all_congruences(A, THETA, max_space_size)


def dual_subset(A, theta):
    """The closed semimodal subset ``Y`` with ``Theta_S(Y) == theta``."""
    return dual_space(A).full & ~dual_open_set(A, theta)


# -- vacuity of the non-principality criterion ---------------------------------


def convex_subsets(X):
    """Every convex subset of ``X`` (each is clopen in a finite space)."""
    P = X.poset
    return [Y for Y in range(1 << X.size) if is_convex(P, Y)]


def nonprincipal_hypothesis_witnesses(X):
    """Pairs ``(R1, R2)`` of convex sets meeting the hypothesis of the
    non-principal intersection criterion.

    With ``T = R1 - (R2 | U f_i^-1(R1))`` and ``Q = T & U f_i^-1(R2)`` the
    hypothesis asks for ``Q`` to be a proper dense subset of ``T``.  Density
    is evaluated in the computed topology.
    """
    out = []
    conv = convex_subsets(X)
    pre = {R: X.preimages(R) for R in conv}
    for R1 in conv:
        for R2 in conv:
            T = R1 & ~(R2 | pre[R1])
            Q = T & pre[R2]
            if Q != T and is_dense_in(X, Q, T):
                out.append((R1, R2))
    return out
