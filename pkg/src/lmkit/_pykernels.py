"""Pure-Python implementations of the hot loops.

The compiled module ``lmkit._ckernels`` exports the same functions with the
same signatures; :mod:`lmkit.kernels` picks one of the two at import time.

Conventions shared by both backends:

* subsets of a carrier of size ``m`` are ``int`` bitmasks over ``range(m)``;
* binary operation tables are flat sequences of length ``m * m`` indexed
  ``x * m + y``;
* unary operation tables are sequences of length ``m``.
"""

SEMIMODAL = 0
MODAL = 1
THETA = 2


def congruence_closure(size, join, meet, unary, pairs, reflect=None):
    """Least equivalence containing ``pairs`` that is compatible with the
    lattice operations and every table in ``unary``.

    When ``reflect`` is given, the result is additionally closed under the
    rule: if ``(t[x], t[y])`` is related for every ``t`` in ``reflect`` then
    ``(x, y)`` is related.

    Returns canonical labels: ``labels[x]`` is the least index in the class
    of ``x``.
    """
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    stack = [(int(x), int(y)) for x, y in pairs]

    def drain():
        while stack:
            x, y = stack.pop()
            rx = find(x)
            ry = find(y)
            if rx == ry:
                continue
            # the smaller index stays the root so labels come out canonical
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry
            bx = x * size
            by = y * size
            for c in range(size):
                stack.append((join[bx + c], join[by + c]))
                stack.append((meet[bx + c], meet[by + c]))
            for t in unary:
                stack.append((t[x], t[y]))

    drain()
    if reflect:
        changed = True
        while changed:
            changed = False
            for x in range(size):
                for y in range(x + 1, size):
                    if find(x) == find(y):
                        continue
                    if all(find(t[x]) == find(t[y]) for t in reflect):
                        stack.append((x, y))
                        drain()
                        changed = True
    return tuple(find(x) for x in range(size))


def partition_labels(keys):
    """Label each index by the first index carrying an equal key."""
    first = {}
    return tuple(first.setdefault(k, i) for i, k in enumerate(keys))


def upsets(size, strict_up, order):
    """All up-closed subsets of a finite poset.

    ``strict_up[x]`` is the mask of elements strictly above ``x`` and
    ``order`` is a linear extension listed bottom first.  Elements are
    decided from the top down, so every branch yields an up-set.
    """
    out = []
    top_down = list(reversed(order))
    depth = len(top_down)

    def rec(k, cur):
        if k == depth:
            out.append(cur)
            return
        x = top_down[k]
        rec(k + 1, cur)
        if strict_up[x] & ~cur == 0:
            rec(k + 1, cur | (1 << x))

    rec(0, 0)
    out.sort()
    return out


def scan_subsets(npoints, maps, kind):
    """Every subset ``Y`` of ``range(npoints)`` with the requested property.

    ``kind`` is ``SEMIMODAL`` (images of ``Y`` stay in ``Y``), ``MODAL``
    (``Y`` equals each preimage of itself) or ``THETA`` (``Y`` equals the
    union of its images).  Returns masks in increasing order.
    """
    single = [0] * npoints
    for t in maps:
        for x in range(npoints):
            single[x] |= 1 << t[x]
    out = []
    total = 1 << npoints
    if kind == MODAL:
        for y in range(total):
            ok = True
            for t in maps:
                for x in range(npoints):
                    if ((y >> x) & 1) != ((y >> t[x]) & 1):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(y)
        return out
    img = [0] * total
    for y in range(1, total):
        low = y & -y
        img[y] = img[y ^ low] | single[low.bit_length() - 1]
        if kind == SEMIMODAL:
            if img[y] & ~y == 0:
                out.append(y)
        elif img[y] == y:
            out.append(y)
    # the empty set qualifies for every kind
    out.insert(0, 0)
    return out


def preimage_collision(npoints, maps):
    """First pair of distinct subsets with identical preimages under every map.

    Returns ``None`` when ``Y -> (t^-1(Y))_t`` is injective on all subsets.
    """
    seen = {}
    for y in range(1 << npoints):
        sig = []
        for t in maps:
            pre = 0
            for x in range(npoints):
                if (y >> t[x]) & 1:
                    pre |= 1 << x
            sig.append(pre)
        sig = tuple(sig)
        if sig in seen:
            return seen[sig], y
        seen[sig] = y
    return None
