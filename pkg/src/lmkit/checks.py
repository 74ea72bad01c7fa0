"""Theorem-regression harness.

Each registered theorem is a function ``check(A, ctx)`` returning the number
of instances it examined and a list of ``(witness, message)`` failures.
:func:`run_suite` runs a selection of theorems over a corpus of algebra
specs and assembles a :class:`CheckReport`.
"""

import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

from .algebra import boolean_elements, homomorphism_failure, validate_axioms
from .boolean import (
    boolean_congruences,
    boolean_from_element,
    boolean_set,
    check_permutable,
    is_boolean,
    principal_is_boolean,
    uniformity_report,
)
from .congruence import (
    DEFAULT_MAX_SPACE_SIZE,
    LM,
    THETA,
    all_congruences,
    classify_subset,
    comparable_pairs,
    convex_subsets,
    dual_subset,
    filter_congruence,
    filter_of_subset,
    generate_congruence_oracle,
    is_modal,
    is_principal,
    maximal_chains_by_order,
    meet,
    nonprincipal_hypothesis_witnesses,
    principal_congruence,
    principal_table,
    principal_theta_congruence,
)
from .duality import (
    chain_decomposition,
    co_dual,
    compose_maps,
    dual_hom,
    dual_space,
    round_trip,
    set_name,
    sigma_table,
    validate_space,
)
from .errors import LMKitError, TheoremViolation
from .formats import FORMAT, algebra_from_dict
from .order import down_set, increasing_sets, is_convex, members, popcount, up_set

SUITES = ("duality", "principal", "boolean")

# subsets are classified one by one only up to this many points
CLASSIFY_LIMIT = 14


@dataclass(frozen=True)
class Context:
    max_space_size: int = DEFAULT_MAX_SPACE_SIZE


@dataclass(frozen=True)
class Theorem:
    id: str
    suite: str
    anchor: str
    check: object


REGISTRY = []


def theorem(id, suite, anchor):
    def register(fn):
        REGISTRY.append(Theorem(id, suite, anchor, fn))
        return fn

    return register


def _names(A, items):
    return [A.names[x] for x in items]


# -- duality -------------------------------------------------------------------


@theorem("lm-axioms", "duality", "L1-L5 hold; the five Boolean-element conditions agree")
def _axioms(A, ctx):
    fails = [(v.witness, f"{v.axiom}: {v.message}") for v in validate_axioms(A)]
    C = boolean_elements(A)
    cs = members(C)
    for x in cs:
        for y in cs:
            if not (C >> A.join(x, y)) & 1 or not (C >> A.meet(x, y)) & 1:
                fails.append(((A.names[x], A.names[y]), "C(A) is not a sublattice"))
        if not (C >> A.complements[x]) & 1:
            fails.append(((A.names[x],), "C(A) not closed under complement"))
    for i in A.indices:
        for x in range(A.size):
            if not (C >> A.phi_at(i, x)) & 1:
                fails.append(((i, A.names[x]), "phi_i x is not Boolean"))
    return A.size, fails


@theorem("representation", "duality", "sigma is a lattice embedding onto the up-sets of X(A)")
def _representation(A, ctx):
    X = dual_space(A)
    sig = sigma_table(A)
    fails = []
    for x in range(A.size):
        for y in range(A.size):
            if sig[A.join(x, y)] != sig[x] | sig[y]:
                fails.append(((A.names[x], A.names[y]), "sigma does not preserve join"))
            if sig[A.meet(x, y)] != sig[x] & sig[y]:
                fails.append(((A.names[x], A.names[y]), "sigma does not preserve meet"))
    if len(set(sig)) != A.size:
        fails.append(((), "sigma is not injective"))
    ups = increasing_sets(X.poset)
    if len(ups) != A.size or set(ups) != set(sig):
        fails.append(((len(ups), A.size), "up-sets of X(A) are not exactly the sigma images"))
    return A.size * A.size, fails


@theorem("round-trip", "duality", "sigma_A and epsilon_X are isomorphisms; |D(X(A))| = |A|")
def _round_trip(A, ctx):
    rt = round_trip(A)
    fails = []
    if rt.algebra_side.size != A.size:
        fails.append(((rt.algebra_side.size, A.size), "|D(X(A))| != |A|"))
    return 1, fails


@theorem(
    "space-axioms",
    "duality",
    "X(A) satisfies lP3-lP5, lP7-lP11 and the equivalent conditions lnP6, lnP7, lnP8",
)
def _space_axioms(A, ctx):
    X = dual_space(A)
    bad = validate_space(X, max_subset_points=ctx.max_space_size)
    return X.size, [(v.witness, f"{v.axiom}: {v.message}") for v in bad]


@theorem(
    "chain-decomposition",
    "duality",
    "X(A) is the cardinal sum of the chains {f_i(x)}, each of size at most n-1",
)
def _chains(A, ctx):
    X = dual_space(A)
    blocks = chain_decomposition(X)
    fails = []
    covered = 0
    for b in blocks:
        if b & covered:
            fails.append(((set_name(X, b),), "chains overlap"))
        covered |= b
        if not X.poset.is_chain(b):
            fails.append(((set_name(X, b),), "block is not a chain"))
        if popcount(b) > A.n - 1:
            fails.append(((set_name(X, b),), "chain longer than n-1"))
        if not is_convex(X.poset, b) or not is_modal(X, b):
            fails.append(((set_name(X, b),), "chain is not convex and modal"))
    if covered != X.full:
        fails.append(((), "chains do not cover X"))
    if sorted(blocks) != sorted(maximal_chains_by_order(X)):
        fails.append(((), "chains differ from the comparability components"))
    return len(blocks), fails


@theorem("dual-morphisms", "duality", "dualizing homomorphisms reverses composition")
def _dual_morphisms(A, ctx):
    X = dual_space(A)
    D = co_dual(X)
    sig = sigma_table(A)
    where = {U: k for k, U in enumerate(X.clopen_upsets)}
    h = tuple(where[s] for s in sig)
    back = [0] * A.size
    for a, k in enumerate(h):
        back[k] = a
    back = tuple(back)
    fails = []
    if homomorphism_failure(D, A, back) is not None:
        fails.append(((), "inverse of sigma is not a homomorphism"))
        return 1, fails
    ident = tuple(range(A.size))
    d_h, d_back = dual_hom(A, D, h), dual_hom(D, A, back)
    d_id = dual_hom(A, A, compose_maps(back, h))
    if d_id != tuple(range(X.size)):
        fails.append(((), "dual of the identity is not the identity"))
    if compose_maps(back, h) != ident or d_id != compose_maps(d_h, d_back):
        fails.append(((), "dual of a composite is not the reversed composite of duals"))
    return 2, fails


# -- principal -----------------------------------------------------------------


@theorem(
    "semimodal-correspondence",
    "principal",
    "Y -> Theta_S(Y) is an order-reversing bijection from semimodal subsets onto Con(A)",
)
def _correspondence(A, ctx):
    lat = all_congruences(A, LM, ctx.max_space_size)
    fails = []
    for c in lat:
        if not c.is_congruence():
            fails.append(((c.describe(),), "member of Con(A) is not a congruence"))
    X = dual_space(A)
    checked = len(lat)
    if X.size <= min(ctx.max_space_size, CLASSIFY_LIMIT):
        for Y in range(1, 1 << X.size):
            flags = classify_subset(X, Y)
            if flags.modal and not is_modal(X, X.full & ~Y):
                fails.append(((set_name(X, Y),), "complement of a modal set is not modal"))
        checked += 1 << X.size
    return checked, fails


@theorem(
    "theta-correspondence",
    "principal",
    "theta-subsets correspond to theta-congruences, and Con_theta(A) is inside Con(A)",
)
def _theta_correspondence(A, ctx):
    lat = all_congruences(A, THETA, ctx.max_space_size)
    con = all_congruences(A, LM, ctx.max_space_size)
    fails = []
    for c in lat:
        if not c.is_theta_congruence():
            fails.append(((c.describe(),), "not a theta-congruence"))
        if c not in con:
            fails.append(((c.describe(),), "theta-congruence is not an LM-congruence"))
    return len(lat), fails


@theorem(
    "principal-forms",
    "principal",
    "every dual and filter description of Theta(a, b) equals the generated congruence",
)
def _principal_forms(A, ctx):
    fails = []
    pairs = comparable_pairs(A)
    for a, b in pairs:
        try:
            principal_congruence(A, a, b, max_space_size=ctx.max_space_size)
        except TheoremViolation as exc:
            fails.append((_names(A, (a, b)), str(exc)))
    # incomparable pairs reduce to (a ^ b, a v b)
    for a, b in combinations(range(A.size), 2):
        if generate_congruence_oracle(A, [(a, b)]) != generate_congruence_oracle(
            A, [(A.meet(a, b), A.join(a, b))]
        ):
            fails.append((_names(A, (a, b)), "Theta(a, b) != Theta(a ^ b, a v b)"))
    return len(pairs), fails


@theorem(
    "principal-theta-forms",
    "principal",
    "every dual description of Theta_theta(a, b) equals the generated theta-congruence",
)
def _principal_theta_forms(A, ctx):
    fails = []
    pairs = comparable_pairs(A)
    for a, b in pairs:
        try:
            principal_theta_congruence(A, a, b, max_space_size=ctx.max_space_size)
        except TheoremViolation as exc:
            fails.append((_names(A, (a, b)), str(exc)))
    return len(pairs), fails


@theorem(
    "convex-criterion",
    "principal",
    "a congruence is principal iff its open set is R u U f_i^-1(R) for a convex R",
)
def _convex(A, ctx):
    fails = []
    lat = all_congruences(A, LM, ctx.max_space_size)
    for c in lat:
        w = is_principal(A, c, LM)
        if w is None:
            fails.append(((c.describe(),), "no generating pair"))
    X = dual_space(A)
    checked = len(lat)
    if X.size <= min(ctx.max_space_size, CLASSIFY_LIMIT):
        P = X.poset
        for R in convex_subsets(X):
            pre = X.preimages(R)
            if R & ~pre == 0 and pre != down_set(P, R) | up_set(P, R):
                fails.append(((set_name(X, R),), "U f_i^-1(R) != (R] u [R)"))
            checked += 1
    return checked, fails


def _intersections(A, mode):
    table = principal_table(A, mode)
    principals = list(table)
    fails = []
    checked = 0
    for c1, c2 in combinations(principals, 2):
        m = meet(c1, c2)
        checked += 1
        if m not in table:
            fails.append(((c1.describe(), c2.describe()), "meet of principal congruences is not principal"))
        elif generate_congruence_oracle(A, [table[m]], mode) != m:
            fails.append(((m.describe(),), "witness pair does not generate the meet"))
    return checked, fails


@theorem("theta-intersections", "principal", "two principal theta-congruences meet in a principal one")
def _theta_intersections(A, ctx):
    return _intersections(A, THETA)


@theorem("lm-intersections", "principal", "two principal LM_n-congruences meet in a principal one")
def _lm_intersections(A, ctx):
    return _intersections(A, LM)


@theorem("filter-correspondence", "principal", "Theta(F) = Theta_S(Y_F) and F_{Y_F} = F")
def _filters(A, ctx):
    # every filter of a finite lattice is some [a), and then Y_F = sigma(a);
    # filter_congruence itself compares against Theta_S(Y_F) when Y_F is semimodal
    sig = sigma_table(A)
    fails = []
    for a in range(A.size):
        F = A.poset.up[a]
        theta = filter_congruence(A, F)
        if not theta.is_lattice_congruence():
            fails.append(((A.names[a],), "Theta([a)) is not a lattice congruence"))
        if filter_of_subset(A, sig[a]) != F:
            fails.append(((A.names[a],), "F_{Y_F} != F"))
    return A.size, fails


@theorem(
    "nonprincipal-vacuity",
    "principal",
    "no pair of convex sets meets the proper-dense-subset hypothesis in a finite space",
)
def _vacuity(A, ctx):
    X = dual_space(A)
    if X.size > min(ctx.max_space_size, CLASSIFY_LIMIT):
        return 0, []
    found = nonprincipal_hypothesis_witnesses(X)
    fails = [((set_name(X, r1), set_name(X, r2)), "hypothesis satisfied") for r1, r2 in found[:5]]
    n = len(convex_subsets(X))
    return n * n, fails


@theorem("congruence-count", "principal", "Con(A) has 2^k members for k maximal chains; chains are simple")
def _count(A, ctx):
    lat = all_congruences(A, LM, ctx.max_space_size)
    k = len(chain_decomposition(dual_space(A)))
    fails = []
    if len(lat) != 1 << k:
        fails.append(((len(lat), k), "|Con(A)| != 2^(number of chains)"))
    if A.poset.is_chain(A.poset.full) and len(lat) != 2:
        fails.append(((len(lat),), "a chain is not simple"))
    return 1, fails


# -- boolean -------------------------------------------------------------------


@theorem("boolean-count", "boolean", "Boolean congruences are Theta_S(sigma(c)), c in C(A); |Con_b| = |C(A)|")
def _boolean_count(A, ctx):
    recs = boolean_congruences(A, ctx.max_space_size)
    fails = []
    if len(recs) != popcount(A.boolean_mask):
        fails.append(((len(recs), popcount(A.boolean_mask)), "|Con_b(A)| != |C(A)|"))
    for r in recs:
        if not meet(r.congruence, r.complement_congruence).is_identity():
            fails.append(((A.names[r.generator],), "record and complement do not meet in Delta"))
    return len(recs), fails


@theorem(
    "boolean-criteria",
    "boolean",
    "complemented in Con(A) iff the dual subset is modal iff Theta([phi_i c)) for a Boolean c",
)
def _boolean_criteria(A, ctx):
    fails = []
    lat = all_congruences(A, LM, ctx.max_space_size)
    X = dual_space(A)
    sig = sigma_table(A)
    by_element = {}
    for c in members(A.boolean_mask):
        theta = boolean_from_element(A, c)
        by_element[c] = theta
        if is_boolean(A, theta, ctx.max_space_size) is None:
            fails.append(((A.names[c],), "Theta([c)) is not Boolean"))
    for c1, t1 in by_element.items():
        for c2, t2 in by_element.items():
            if A.poset.leq(c1, c2) != (t2 <= t1):
                fails.append(((A.names[c1], A.names[c2]), "c -> Theta([c)) is not order-reversing"))
    for theta in lat:
        comp = is_boolean(A, theta, ctx.max_space_size)
        Y = dual_subset(A, theta)
        if (comp is not None) != is_modal(X, Y):
            fails.append(((theta.describe(),), "complement search and modal criterion disagree"))
        if comp is not None:
            gens = [c for c, t in by_element.items() if t == theta]
            if len(gens) != 1 or sig[gens[0]] != Y:
                fails.append(((theta.describe(),), "Boolean congruence not Theta([c)) for a unique c"))
    return len(lat), fails


@theorem("boolean-theta", "boolean", "Boolean congruences are exactly the Boolean theta-congruences")
def _boolean_theta(A, ctx):
    b_lm = boolean_set(all_congruences(A, LM, ctx.max_space_size))
    b_th = boolean_set(all_congruences(A, THETA, ctx.max_space_size))
    fails = []
    if b_lm != b_th:
        diff = sorted(c.describe() for c in b_lm ^ b_th)
        fails.append((tuple(diff), "Boolean sets differ"))
    return len(b_lm), fails


@theorem("boolean-principal", "boolean", "every Boolean congruence is principal and theta-principal")
def _boolean_principal(A, ctx):
    fails = []
    lm, th = principal_table(A, LM), principal_table(A, THETA)
    recs = boolean_congruences(A, ctx.max_space_size)
    for r in recs:
        if r.congruence not in lm:
            fails.append(((r.congruence.describe(),), "Boolean congruence is not principal"))
        if r.congruence not in th:
            fails.append(((r.congruence.describe(),), "Boolean congruence is not theta-principal"))
    return len(recs), fails


@theorem("permutability", "boolean", "Boolean congruences permute")
def _permutable(A, ctx):
    recs = boolean_congruences(A, ctx.max_space_size)
    fails = []
    checked = 0
    for r1 in recs:
        for r2 in recs:
            checked += 1
            if not check_permutable(A, r1.congruence, r2.congruence):
                fails.append(((A.names[r1.generator], A.names[r2.generator]), "do not permute"))
    return checked, fails


@theorem("class-uniformity", "boolean", "classes of a Boolean congruence share one size and one shape")
def _uniformity(A, ctx):
    recs = boolean_congruences(A, ctx.max_space_size)
    fails = []
    for r in recs:
        rep = uniformity_report(A, r.congruence)
        if not rep.ok:
            fails.append(((A.names[r.generator],), f"uniformity report failed: {rep}"))
    return len(recs), fails


@theorem(
    "principal-is-boolean",
    "boolean",
    "Theta(a, b) is Boolean iff U sigma(phi_i b ^ phi_bar_i a) is closed iff it is a single sigma",
)
def _principal_is_boolean(A, ctx):
    fails = []
    pairs = comparable_pairs(A)
    for a, b in pairs:
        try:
            ok, cert = principal_is_boolean(A, a, b, ctx.max_space_size)
        except TheoremViolation as exc:
            fails.append((_names(A, (a, b)), str(exc)))
            continue
        if not ok:
            fails.append((_names(A, (a, b)), "principal congruence is not Boolean"))
    return len(pairs), fails


@theorem("boolean-equals-principal", "boolean", "Boolean and principal congruences coincide")
def _coincide(A, ctx):
    principal = set(principal_table(A, LM))
    boolean = {r.congruence for r in boolean_congruences(A, ctx.max_space_size)}
    fails = []
    if principal != boolean:
        fails.append(((len(principal), len(boolean)), "principal and Boolean sets differ"))
    return len(principal), fails


# -- corpus --------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    spec: dict

    def build(self):
        return algebra_from_dict(self.spec)


def _chain(n, values=None):
    spec = {"format": FORMAT, "kind": "chain", "n": n}
    if values is not None:
        spec["values"] = list(values)
    return spec


def bundled_specs():
    """Hand-written explicit algebras shipped with the package."""
    out = []
    folder = resources.files("lmkit") / "data" / "corpus"
    for item in sorted(folder.iterdir(), key=lambda p: p.name):
        if item.name.endswith(".json"):
            spec = json.loads(item.read_text(encoding="utf-8"))
            out.append(CorpusEntry(spec.get("name") or item.name[:-5], spec))
    return out


def _subchains(n):
    """Numerator sets of every subchain of ``C_n`` (0 and n-1 always included)."""
    inner = list(range(1, n - 1))
    out = []
    for mask in range(1 << len(inner)):
        out.append([0] + [v for k, v in enumerate(inner) if (mask >> k) & 1] + [n - 1])
    out.sort(key=lambda vs: (-len(vs), vs))
    return out


def _chain_label(n, values):
    if len(values) == n:
        return f"C{n}"
    return f"C{n}[{','.join(map(str, values))}]"


def default_corpus(max_elements=25, seed=None, include_bundled=True):
    """Chains for n = 2..5, pairwise products with at most ``max_elements``
    elements, and the bundled explicit algebras.

    Factors of a product must share ``n``, so besides ``C_n x C_n`` the
    products pair subchains of ``C_n`` (e.g. a 3-element chain viewed as an
    LM_5-algebra), which covers every pair of chain lengths.  With ``seed``
    the entries are shuffled; this only changes the order of checking.
    """
    entries = [CorpusEntry(f"C{n}", _chain(n)) for n in range(2, 6)]
    for n in range(2, 6):
        subs = _subchains(n)
        for j, s in enumerate(subs):
            for t in subs[j:]:
                if len(s) * len(t) <= max_elements:
                    label = f"{_chain_label(n, s)}x{_chain_label(n, t)}"
                    spec = {
                        "format": FORMAT,
                        "kind": "product",
                        "name": label,
                        "factors": [_chain(n, None if len(s) == n else s), _chain(n, None if len(t) == n else t)],
                    }
                    entries.append(CorpusEntry(label, spec))
    if include_bundled:
        entries.extend(bundled_specs())
    if seed is not None:
        random.Random(seed).shuffle(entries)
    return entries


# -- reports -------------------------------------------------------------------


@dataclass
class TheoremResult:
    id: str
    suite: str
    anchor: str
    instances: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self):
        return not self.failures

    def as_dict(self, timing=True):
        out = {
            "id": self.id,
            "suite": self.suite,
            "anchor": self.anchor,
            "instances": self.instances,
            "failures": self.failures,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class CheckReport:
    suite: str
    algebras: list
    skipped: list
    results: list

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    @property
    def failure_count(self):
        return sum(len(r.failures) for r in self.results)

    def result(self, theorem_id):
        for r in self.results:
            if r.id == theorem_id:
                return r
        raise KeyError(theorem_id)

    def as_dict(self, timing=True):
        return {
            "format": "lmkit-report/1",
            "suite": self.suite,
            "ok": self.ok,
            "algebras": self.algebras,
            "skipped": self.skipped,
            "theorems": [r.as_dict(timing) for r in self.results],
        }

    def to_json(self, timing=True):
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=False) + "\n"

    def to_text(self):
        lines = [f"suite {self.suite}: {len(self.algebras)} algebras, {len(self.skipped)} skipped"]
        for s in self.skipped:
            lines.append(f"  skipped {s['algebra']}: {s['error']}")
        for r in self.results:
            status = "ok  " if r.ok else "FAIL"
            lines.append(f"  {status} {r.id:<26} {r.instances:>7} instances  {r.elapsed:7.3f}s")
            for f in r.failures[:5]:
                lines.append(f"       {f['algebra']}: {f['message']} {f['witness']}")
            if len(r.failures) > 5:
                lines.append(f"       ... {len(r.failures) - 5} more")
        lines.append("all checks passed" if self.ok else f"{self.failure_count} failure(s)")
        return "\n".join(lines) + "\n"


def theorems_for(suite):
    if suite == "all":
        return list(REGISTRY)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected all, {', '.join(SUITES)}")
    return [t for t in REGISTRY if t.suite == suite]


def _jsonable(w):
    if isinstance(w, (list, tuple)):
        return [_jsonable(v) for v in w]
    if isinstance(w, (str, int, float, bool)) or w is None:
        return w
    return str(w)


def run_suite(corpus=None, suite="all", max_space_size=DEFAULT_MAX_SPACE_SIZE):
    """Run the selected theorems over ``corpus`` (a list of :class:`CorpusEntry`
    or already-built algebras).

    Entries that fail to build are skipped and listed in the report.  A
    ``TheoremViolation`` or any other lmkit error raised inside a check is
    recorded as a failure of that theorem on that algebra.
    """
    theorems = theorems_for(suite)
    if corpus is None:
        corpus = default_corpus()
    ctx = Context(max_space_size)
    built = []
    skipped = []
    for entry in corpus:
        if isinstance(entry, CorpusEntry):
            try:
                built.append((entry.label, entry.build()))
            except LMKitError as exc:
                skipped.append({"algebra": entry.label, "error": f"{type(exc).__name__}: {exc}"})
        else:
            built.append((entry.name or repr(entry), entry))
    results = [TheoremResult(t.id, t.suite, t.anchor) for t in theorems]
    for label, A in built:
        for t, res in zip(theorems, results):
            start = time.perf_counter()
            try:
                count, fails = t.check(A, ctx)
            except LMKitError as exc:
                count, fails = 1, [((), f"{type(exc).__name__}: {exc}")]
            res.elapsed += time.perf_counter() - start
            res.instances += count
            for witness, message in fails:
                res.failures.append({"algebra": label, "witness": _jsonable(witness), "message": message})
    return CheckReport(suite, [label for label, _ in built], skipped, results)
