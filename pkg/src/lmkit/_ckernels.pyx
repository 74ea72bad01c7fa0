# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counterparts of :mod:`lmkit._pykernels`.

Same signatures and results.  Bitmask kernels require carriers of at most
63 points; :mod:`lmkit.kernels` routes larger inputs to the Python code.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int64_t

SEMIMODAL = 0
MODAL = 1
THETA = 2
MAX_MASK_BITS = 63


cdef inline Py_ssize_t _find(Py_ssize_t* parent, Py_ssize_t x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef Py_ssize_t* _table(seq, Py_ssize_t n) except NULL:
    cdef Py_ssize_t* out = <Py_ssize_t*> malloc(max(n, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef void _drain(Py_ssize_t size, Py_ssize_t* parent, Py_ssize_t* stack,
                 Py_ssize_t* top, Py_ssize_t* join, Py_ssize_t* meet,
                 Py_ssize_t* un, Py_ssize_t nun) nogil:
    cdef Py_ssize_t x, y, rx, ry, c, k, bx, by
    while top[0] > 0:
        top[0] -= 2
        x = stack[top[0]]
        y = stack[top[0] + 1]
        rx = _find(parent, x)
        ry = _find(parent, y)
        if rx == ry:
            continue
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        bx = x * size
        by = y * size
        for c in range(size):
            stack[top[0]] = join[bx + c]
            stack[top[0] + 1] = join[by + c]
            stack[top[0] + 2] = meet[bx + c]
            stack[top[0] + 3] = meet[by + c]
            top[0] += 4
        for k in range(nun):
            stack[top[0]] = un[k * size + x]
            stack[top[0] + 1] = un[k * size + y]
            top[0] += 2


def congruence_closure(Py_ssize_t size, join, meet, unary, pairs, reflect=None):
    pairs = [(int(a), int(b)) for a, b in pairs]
    cdef Py_ssize_t nun = len(unary)
    cdef Py_ssize_t nref = len(reflect) if reflect else 0
    cdef Py_ssize_t npairs = len(pairs)
    # every push happens on a successful union: at most size - 1 of them,
    # plus one pair per reflection merge and the initial pairs
    cdef Py_ssize_t cap = 2 * (npairs + size + (size + 1) * (2 * size + nun) + 4)
    cdef Py_ssize_t* cjoin = _table(join, size * size)
    cdef Py_ssize_t* cmeet = _table(meet, size * size)
    cdef Py_ssize_t* cun = _table([v for t in unary for v in t], nun * size)
    cdef Py_ssize_t* cref = _table([v for t in (reflect or ()) for v in t], nref * size)
    cdef Py_ssize_t* parent = <Py_ssize_t*> malloc(max(size, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* stack = <Py_ssize_t*> malloc(cap * sizeof(Py_ssize_t))
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t i, x, y, k
    cdef bint changed, same
    try:
        for i in range(size):
            parent[i] = i
        for i in range(npairs):
            stack[top] = pairs[i][0]
            stack[top + 1] = pairs[i][1]
            top += 2
        _drain(size, parent, stack, &top, cjoin, cmeet, cun, nun)
        if nref:
            changed = True
            while changed:
                changed = False
                for x in range(size):
                    for y in range(x + 1, size):
                        if _find(parent, x) == _find(parent, y):
                            continue
                        same = True
                        for k in range(nref):
                            if _find(parent, cref[k * size + x]) != _find(parent, cref[k * size + y]):
                                same = False
                                break
                        if same:
                            stack[top] = x
                            stack[top + 1] = y
                            top += 2
                            _drain(size, parent, stack, &top, cjoin, cmeet, cun, nun)
                            changed = True
        return tuple([_find(parent, i) for i in range(size)])
    finally:
        free(cjoin)
        free(cmeet)
        free(cun)
        free(cref)
        free(parent)
        free(stack)


def partition_labels(keys):
    first = {}
    return tuple([first.setdefault(k, i) for i, k in enumerate(keys)])


cdef void _upsets(Py_ssize_t k, Py_ssize_t depth, Py_ssize_t* top_down,
                  uint64_t* strict_up, uint64_t cur, list out):
    cdef Py_ssize_t x
    while k < depth:
        x = top_down[k]
        if strict_up[x] & ~cur == 0:
            _upsets(k + 1, depth, top_down, strict_up, cur | ((<uint64_t> 1) << x), out)
        k += 1
    out.append(cur)


def upsets(Py_ssize_t size, strict_up, order):
    if size > MAX_MASK_BITS:
        raise OverflowError("carrier too large for the compiled kernel")
    cdef Py_ssize_t depth = len(order)
    cdef Py_ssize_t* td = _table(list(reversed(order)), depth)
    cdef uint64_t* su = <uint64_t*> malloc(max(size, 1) * sizeof(uint64_t))
    cdef Py_ssize_t i
    out = []
    try:
        for i in range(size):
            su[i] = strict_up[i]
        _upsets(0, depth, td, su, 0, out)
    finally:
        free(td)
        free(su)
    out.sort()
    return out


def scan_subsets(Py_ssize_t npoints, maps, int kind):
    if npoints > MAX_MASK_BITS:
        raise OverflowError("space too large for the compiled kernel")
    cdef Py_ssize_t nm = len(maps)
    cdef Py_ssize_t* cm = _table([v for t in maps for v in t], nm * npoints)
    cdef uint64_t* single = <uint64_t*> malloc(max(npoints, 1) * sizeof(uint64_t))
    cdef uint64_t total = (<uint64_t> 1) << npoints
    cdef uint64_t y, img, rest, low
    cdef Py_ssize_t x, k
    cdef bint ok
    out = []
    try:
        for x in range(npoints):
            single[x] = 0
            for k in range(nm):
                single[x] |= (<uint64_t> 1) << cm[k * npoints + x]
        y = 0
        while y < total:
            if kind == MODAL:
                ok = True
                for k in range(nm):
                    for x in range(npoints):
                        if ((y >> x) & 1) != ((y >> cm[k * npoints + x]) & 1):
                            ok = False
                            break
                    if not ok:
                        break
            else:
                img = 0
                rest = y
                while rest:
                    low = rest & (~rest + 1)
                    rest ^= low
                    x = 0
                    while (low >> x) != 1:
                        x += 1
                    img |= single[x]
                if kind == SEMIMODAL:
                    ok = (img & ~y) == 0
                else:
                    ok = img == y
            if ok:
                out.append(y)
            y += 1
    finally:
        free(cm)
        free(single)
    return out


def preimage_collision(Py_ssize_t npoints, maps):
    if npoints > MAX_MASK_BITS:
        raise OverflowError("space too large for the compiled kernel")
    cdef Py_ssize_t nm = len(maps)
    cdef Py_ssize_t* cm = _table([v for t in maps for v in t], nm * npoints)
    cdef uint64_t total = (<uint64_t> 1) << npoints
    cdef uint64_t y, pre
    cdef Py_ssize_t x, k
    seen = {}
    try:
        y = 0
        while y < total:
            sig = []
            for k in range(nm):
                pre = 0
                for x in range(npoints):
                    if (y >> cm[k * npoints + x]) & 1:
                        pre |= (<uint64_t> 1) << x
                sig.append(pre)
            key = tuple(sig)
            if key in seen:
                return seen[key], y
            seen[key] = y
            y += 1
    finally:
        free(cm)
    return None
