"""Boolean congruences: the complemented elements of the congruence lattice."""

from dataclasses import dataclass

from .congruence import (
    DEFAULT_MAX_SPACE_SIZE,
    LM,
    THETA,
    Congruence,
    _theta_s,
    all_congruences,
    dual_subset,
    filter_congruence,
    identity,
    is_modal,
    is_semimodal,
    join,
    meet,
    principal_congruence,
    subsets_of_kind,
    total,
)
from .duality import dual_space, sigma_table, topological_closure
from .errors import NotBoolean, TheoremViolation
from .order import members, popcount


def is_boolean(A, theta, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """Complement of ``theta`` in ``Con(A)``, or ``None``.

    The complement is searched for in the congruence lattice.  Independently,
    ``theta`` is Boolean exactly when its dual subset ``Y`` and ``X - Y`` are
    both semimodal (equivalently ``Y`` is modal); a disagreement raises
    ``TheoremViolation``.
    """
    lattice = all_congruences(A, LM, max_space_size)
    comps = lattice.complements(theta)
    X = dual_space(A)
    Y = dual_subset(A, theta)
    by_subsets = is_semimodal(X, Y) and is_semimodal(X, X.full & ~Y)
    if by_subsets != is_modal(X, Y) or by_subsets != bool(comps):
        raise TheoremViolation(
            "Boolean congruence",
            f"complement search says {bool(comps)}, dual subset criterion says {by_subsets}",
            theta.describe(),
        )
    return comps[0] if comps else None


def boolean_set(lattice):
    """Complemented members of a congruence lattice (LM or theta)."""
    A = lattice.algebra
    bottom, top = identity(A), total(A)
    out = set()
    for c in lattice:
        for d in lattice:
            if meet(c, d) == bottom and lattice.join(c, d) == top:
                out.add(c)
                break
    return out


@dataclass(frozen=True)
class BooleanCongruenceRecord:
    congruence: Congruence
    dual_subset: int
    generator: int
    complement_congruence: Congruence


def boolean_congruences(A, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """One record per modal subset ``Y`` of ``X(A)``.

    Each ``Y`` is ``sigma(c)`` for exactly one Boolean ``c``; the number of
    records must equal ``|C(A)|``.
    """
    X = dual_space(A)
    sig = sigma_table(A)
    modal = subsets_of_kind(A, "modal", max_space_size)
    if modal is None:
        # above the cap the modal sets are read off the Boolean elements
        modal = sorted(sig[c] for c in members(A.boolean_mask))
    inverse = {}
    for a, s in enumerate(sig):
        inverse.setdefault(s, []).append(a)
    records = []
    for Y in modal:
        gens = inverse.get(Y, [])
        if len(gens) != 1 or not (A.boolean_mask >> gens[0]) & 1:
            raise TheoremViolation("modal = sigma(C(A))", "modal set is not sigma of a Boolean element", Y)
        records.append(
            BooleanCongruenceRecord(_theta_s(A, Y), Y, gens[0], _theta_s(A, X.full & ~Y))
        )
    if len(records) != popcount(A.boolean_mask):
        raise TheoremViolation(
            "|Con_b| = |C(A)|", f"{len(records)} records, {popcount(A.boolean_mask)} Boolean elements"
        )
    records.sort(key=lambda r: (-r.congruence.num_classes, r.congruence.labels))
    return records


def boolean_from_element(A, c, i=1):
    """``Theta([phi_i c))`` for a Boolean element ``c``; the same for every ``i``."""
    c = A.el(c)
    theta = filter_congruence(A, A.poset.up[A.phi_at(i, c)])
    if not (A.boolean_mask >> c) & 1:
        raise NotBoolean(
            f"{A.names[c]} is not Boolean; Theta([phi_{i} c)) is "
            f"{'' if theta.is_lm_compatible() else 'not '}LM-compatible"
        )
    for j in A.indices:
        if filter_congruence(A, A.poset.up[A.phi_at(j, c)]) != theta:
            raise TheoremViolation("Theta([phi_i a))", "depends on i for a Boolean element", c)
    return theta


def compose(c1, c2):
    """``c1 ; c2`` as a set of pairs ``(x, y)`` with ``x c1 z c2 y`` for some ``z``."""
    out = set()
    for block in c1.blocks():
        reach = set()
        for z in block:
            reach.update(c2.class_of(z))
        out.update((x, y) for x in block for y in reach)
    return out


def check_permutable(A, c1, c2):
    return compose(c1, c2) == compose(c2, c1)


@dataclass(frozen=True)
class UniformityReport:
    generator: int
    class_sizes: tuple
    uniform: bool
    class_shape: bool
    zero_class: bool

    @property
    def ok(self):
        return self.uniform and self.class_shape and self.zero_class


def uniformity_report(A, theta):
    """Class sizes and the class-shape formula for a Boolean congruence.

    With ``a`` the Boolean generator (``theta = Theta([a))``) and ``a'`` its
    complement, the class of ``b`` must be ``{(b ^ a) v c : c <= a'}`` and the
    class of 0 must be ``(a']``.
    """
    sig = sigma_table(A)
    Y = dual_subset(A, theta)
    gens = [x for x in members(A.boolean_mask) if sig[x] == Y]
    if len(gens) != 1:
        raise NotBoolean("congruence has no Boolean generator")
    a = gens[0]
    ac = A.complements[a]
    below = members(A.poset.down[ac])
    sizes = tuple(len(b) for b in theta.blocks())
    shape = all(
        set(theta.class_of(b)) == {A.join(A.meet(b, a), c) for c in below} for b in range(A.size)
    )
    zero = set(theta.class_of(A.bottom)) == set(below)
    return UniformityReport(a, sizes, len(set(sizes)) == 1, shape, zero)


@dataclass(frozen=True)
class BooleanCertificate:
    """``generator`` is the Boolean element with ``Theta(a, b) = Theta([generator))``;
    ``indices`` is a smallest set of indices whose preimages already cover ``G``."""

    generator: int
    open_set: int
    indices: tuple


def principal_is_boolean(A, a, b, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """Decide whether ``Theta(a, b)`` is Boolean and certify the answer.

    The following are evaluated separately and must agree: the congruence has
    a complement; ``G = U_i sigma(phi_i b ^ phi_bar_i a)`` is closed;
    ``G = sigma(v_i (phi_i b ^ phi_bar_i a))`` with ``sigma(b) - sigma(a)``
    inside ``G``; ``Theta(a, b) = Theta([^_i (phi_bar_i b v phi_i a)))``.
    """
    a, b = A.meet(A.el(a), A.el(b)), A.join(A.el(a), A.el(b))
    X = dual_space(A)
    sig = sigma_table(A)
    I = list(A.indices)
    theta = principal_congruence(A, a, b, max_space_size=max_space_size)
    parts = [A.meet(A.phi_at(i, b), A.phi_bar_at(i, a)) for i in I]
    G = 0
    for p in parts:
        G |= sig[p]
    D = sig[b] & ~sig[a]
    gen = A.lattice.meet_all(A.join(A.phi_bar_at(i, b), A.phi_at(i, a)) for i in I)
    verdicts = {
        "complemented": is_boolean(A, theta, max_space_size) is not None,
        "G closed": topological_closure(X, G) == G,
        "G = sigma(join)": G == sig[A.lattice.join_all(parts)] and D & ~G == 0,
        "filter form": filter_congruence(A, A.poset.up[gen]) == theta,
    }
    if len(set(verdicts.values())) != 1:
        raise TheoremViolation("principal is Boolean", f"criteria disagree: {verdicts}", (a, b))
    best = None
    for mask in range(1, 1 << len(I)):
        chosen = [I[k] for k in range(len(I)) if (mask >> k) & 1]
        cover = 0
        for i in chosen:
            cover |= X.preimage(i, D)
        if cover == G and (best is None or len(chosen) < len(best)):
            best = chosen
    if verdicts["complemented"] and not (A.boolean_mask >> gen) & 1:
        raise TheoremViolation("principal is Boolean", "generator is not Boolean", (a, b))
    return verdicts["complemented"], BooleanCertificate(gen, G, tuple(best or ()))


def boolean_theta_set(A, max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """Complemented members of the theta-congruence lattice."""
    return boolean_set(all_congruences(A, THETA, max_space_size))


__all__ = [
    "BooleanCertificate",
    "BooleanCongruenceRecord",
    "UniformityReport",
    "boolean_congruences",
    "boolean_from_element",
    "boolean_set",
    "boolean_theta_set",
    "check_permutable",
    "compose",
    "is_boolean",
    "join",
    "principal_is_boolean",
    "uniformity_report",
]
