# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Same functions and outputs as asaw._kernel_pure, with the walk DFS and the
per-walk interaction work in C.  Vertices are packed into an int64, one
byte per coordinate with offset 128; differences of packed points decode
uniquely in balanced base 256 because every coordinate difference stays
far below 128 under the enumeration caps.  All accumulators are 64-bit and
exact for every size reachable under those caps (interaction kernels are
guarded to n <= 9, where graph counts keep coefficients below 2^63).  The
hot loops release the GIL so callers can thread over walk prefixes.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset

ctypedef long long i64

DEF NMAX = 22          # max steps per walk
DEF DMAXDIM = 5        # max dimension
DEF SMAX = 256         # max support size
DEF PHIST = 128        # adjacency-pair histogram width
DEF POLW = 64          # polynomial width in t = 1+kappa
DEF NJMAX = 9          # cap for the interaction kernels (overflow guard)


# ---------------------------------------------------------------------------
# small open-addressing hash map: int64 key -> slot index

cdef struct HMap:
    i64* keys
    i64* slot
    char* used
    Py_ssize_t cap
    Py_ssize_t size


cdef int hmap_init(HMap* h, Py_ssize_t cap) nogil:
    h.cap = cap
    h.size = 0
    h.keys = <i64*> malloc(cap * sizeof(i64))
    h.slot = <i64*> malloc(cap * sizeof(i64))
    h.used = <char*> calloc(cap, 1)
    return h.keys != NULL and h.slot != NULL and h.used != NULL


cdef void hmap_free(HMap* h) nogil:
    free(h.keys)
    free(h.slot)
    free(h.used)


cdef Py_ssize_t hmap_find(HMap* h, i64 key) nogil:
    """Slot of key, or -(insert position)-1 when absent."""
    cdef unsigned long long u = <unsigned long long> key
    u = (u ^ (u >> 33)) * 0xff51afd7ed558ccdULL
    u = (u ^ (u >> 33)) * 0xc4ceb9fe1a85ec53ULL
    u ^= u >> 33
    cdef Py_ssize_t i = <Py_ssize_t> (u % <unsigned long long> h.cap)
    while h.used[i]:
        if h.keys[i] == key:
            return i
        i += 1
        if i == h.cap:
            i = 0
    return -i - 1


# ---------------------------------------------------------------------------
# step table

cdef class _Steps:
    cdef int d
    cdef int count
    cdef int nshift
    cdef i64 pk[SMAX]                        # packed displacement
    cdef i64 x0[SMAX]                        # first-coordinate increment
    cdef int axis[SMAX]                      # unit axis or -1
    cdef i64 shift_pk[DMAXDIM][2 * DMAXDIM]  # perpendicular unit shifts

    def __init__(self, int d, steps):
        cdef int k, i, s
        self.d = d
        self.count = len(steps)
        if self.count > SMAX:
            raise ValueError("step support too large for compiled kernel")
        for k, vec in enumerate(steps):
            nz = [(i, c) for i, c in enumerate(vec) if c]
            self.axis[k] = nz[0][0] if len(nz) == 1 and abs(nz[0][1]) == 1 else -1
            self.pk[k] = _pack_disp(vec)
            self.x0[k] = vec[0]
        self.nshift = 2 * (d - 1)
        for a in range(d):
            s = 0
            for b in range(d):
                if b == a:
                    continue
                for sign in (1, -1):
                    disp = [0] * d
                    disp[b] = sign
                    self.shift_pk[a][s] = _pack_disp(disp)
                    s += 1


def _pack_disp(disp):
    out = 0
    for i, c in enumerate(disp):
        out += c << (8 * i)
    return out


def _unpack_pt(i64 pk, int d):
    return tuple(<int> (((pk >> (8 * i)) & 0xff) - 128) for i in range(d))


cdef inline int _decode_unit_off_axis(i64 disp, int a, int d) nogil:
    """disp is +-1 along a single axis different from a (balanced base 256)."""
    cdef int i, found = -1
    cdef i64 r = disp, c
    for i in range(d):
        c = r & 0xff
        if c >= 128:
            c -= 256
        r = (r - c) >> 8
        if c != 0:
            if found >= 0 or (c != 1 and c != -1):
                return 0
            found = i
    return found >= 0 and found != a


cdef inline int _decode_linf_one(i64 disp, int d) nogil:
    """disp has sup-norm exactly 1."""
    cdef int i, seen = 0
    cdef i64 r = disp, c
    for i in range(d):
        c = r & 0xff
        if c >= 128:
            c -= 256
        r = (r - c) >> 8
        if c > 1 or c < -1:
            return 0
        if c != 0:
            seen = 1
    return seen


# ---------------------------------------------------------------------------
# SAW profiles

cdef struct SawState:
    int n_max
    int nstep
    int nshift
    i64* step_pk
    int* step_ax
    i64* step_x0
    i64* shift_pk        # [axis * nshift + s]
    i64 vp[NMAX + 2]
    i64 x0[NMAX + 2]
    i64 elo[NMAX + 2]
    i64 ehi[NMAX + 2]
    int ne
    i64* hist_saw        # [n * PHIST + pairs]
    i64* hist_bridge
    i64* hist_hs
    HMap emap
    i64* evals
    int want_end
    int oom


cdef void _end_add(SawState* st, i64 key) nogil:
    cdef Py_ssize_t i = hmap_find(&st.emap, key)
    cdef HMap old
    cdef i64* evals2
    cdef Py_ssize_t j, cap2
    if i >= 0:
        st.evals[i] += 1
        return
    if st.emap.size * 10 >= st.emap.cap * 7:
        old = st.emap
        cap2 = old.cap * 2
        if not hmap_init(&st.emap, cap2):
            st.emap = old
            st.oom = 1
            return
        evals2 = <i64*> calloc(cap2, sizeof(i64))
        if evals2 == NULL:
            hmap_free(&st.emap)
            st.emap = old
            st.oom = 1
            return
        for j in range(old.cap):
            if old.used[j]:
                i = hmap_find(&st.emap, old.keys[j])
                i = -i - 1
                st.emap.keys[i] = old.keys[j]
                st.emap.used[i] = 1
                st.emap.slot[i] = i
                st.emap.size += 1
                evals2[i] = st.evals[<Py_ssize_t> old.slot[j]]
        free(st.evals)
        st.evals = evals2
        hmap_free(&old)
    i = hmap_find(&st.emap, key)
    i = -i - 1
    st.emap.keys[i] = key
    st.emap.used[i] = 1
    st.emap.slot[i] = i
    st.emap.size += 1
    st.evals[i] += 1


cdef void _saw_rec(SawState* st, int n, int pairs, i64 min1, i64 max1) nogil:
    cdef int k, s, dpairs, hit
    cdef i64 u, v, lo, hi, plo, phi, dpk, x1
    cdef Py_ssize_t e
    st.hist_saw[n * PHIST + pairs] += 1
    if st.want_end:
        _end_add(st, (st.vp[n] << 14) | (n << 7) | pairs)
        if st.oom:
            return
    if n == 0 or min1 > 0:
        st.hist_hs[n * PHIST + pairs] += 1
        if st.x0[n] == max1:
            st.hist_bridge[n * PHIST + pairs] += 1
    if n == st.n_max:
        return
    u = st.vp[n]
    for k in range(st.nstep):
        v = u + st.step_pk[k]
        hit = 0
        for s in range(n + 1):
            if st.vp[s] == v:
                hit = 1
                break
        if hit:
            continue
        dpairs = 0
        if st.step_ax[k] >= 0:
            if u <= v:
                lo = u
                hi = v
            else:
                lo = v
                hi = u
            for s in range(st.nshift):
                dpk = st.shift_pk[st.step_ax[k] * st.nshift + s]
                plo = lo + dpk
                phi = hi + dpk
                for e in range(st.ne):
                    if st.elo[e] == plo and st.ehi[e] == phi:
                        dpairs += 1
                        break
            st.elo[st.ne] = lo
            st.ehi[st.ne] = hi
            st.ne += 1
        st.vp[n + 1] = v
        x1 = st.x0[n] + st.step_x0[k]
        st.x0[n + 1] = x1
        _saw_rec(st, n + 1, pairs + dpairs,
                 min1 if min1 < x1 else x1,
                 max1 if max1 > x1 else x1)
        if st.step_ax[k] >= 0:
            st.ne -= 1
        if st.oom:
            return


def saw_profiles(int d, steps, int n_max, prefix=(), bint want_end=True):
    if d < 2 or d > DMAXDIM:
        raise ValueError("compiled kernel supports 2 <= d <= 5")
    if n_max > NMAX:
        raise ValueError("n_max too large for compiled kernel")
    steps = tuple(tuple(s) for s in steps)
    cdef _Steps T = _Steps(d, steps)
    cdef SawState st
    memset(&st, 0, sizeof(st))
    st.n_max = n_max
    st.nstep = T.count
    st.nshift = T.nshift
    st.want_end = 1 if want_end else 0
    cdef int i, k
    st.step_pk = <i64*> malloc(T.count * sizeof(i64))
    st.step_ax = <int*> malloc(T.count * sizeof(int))
    st.step_x0 = <i64*> malloc(T.count * sizeof(i64))
    st.shift_pk = <i64*> malloc(d * T.nshift * sizeof(i64))
    for k in range(T.count):
        st.step_pk[k] = T.pk[k]
        st.step_ax[k] = T.axis[k]
        st.step_x0[k] = T.x0[k]
    for i in range(d):
        for k in range(T.nshift):
            st.shift_pk[i * T.nshift + k] = T.shift_pk[i][k]
    st.hist_saw = <i64*> calloc((n_max + 1) * PHIST, sizeof(i64))
    st.hist_bridge = <i64*> calloc((n_max + 1) * PHIST, sizeof(i64))
    st.hist_hs = <i64*> calloc((n_max + 1) * PHIST, sizeof(i64))
    hmap_init(&st.emap, 1 << 12)
    st.evals = <i64*> calloc(1 << 12, sizeof(i64))

    st.vp[0] = 0
    for i in range(d):
        st.vp[0] |= (<i64> 128) << (8 * i)
    st.x0[0] = 0
    cdef int n0 = 0, pairs0 = 0, dpairs, kk, hit
    cdef i64 min1 = 1 << 60
    cdef i64 max1 = 0
    cdef i64 u, v, lo, hi, dpk
    cdef int ok = 1
    cdef Py_ssize_t e
    for sraw in prefix:
        if n0 >= n_max:
            ok = 0
            break
        kk = steps.index(tuple(sraw))
        u = st.vp[n0]
        v = u + st.step_pk[kk]
        hit = 0
        for i in range(n0 + 1):
            if st.vp[i] == v:
                hit = 1
                break
        if hit:
            ok = 0
            break
        dpairs = 0
        if st.step_ax[kk] >= 0:
            if u <= v:
                lo = u
                hi = v
            else:
                lo = v
                hi = u
            for i in range(st.nshift):
                dpk = st.shift_pk[st.step_ax[kk] * st.nshift + i]
                for e in range(st.ne):
                    if st.elo[e] == lo + dpk and st.ehi[e] == hi + dpk:
                        dpairs += 1
                        break
            st.elo[st.ne] = lo
            st.ehi[st.ne] = hi
            st.ne += 1
        st.vp[n0 + 1] = v
        st.x0[n0 + 1] = st.x0[n0] + st.step_x0[kk]
        n0 += 1
        pairs0 += dpairs
        if st.x0[n0] < min1:
            min1 = st.x0[n0]
        if st.x0[n0] > max1:
            max1 = st.x0[n0]

    if ok:
        with nogil:
            _saw_rec(&st, n0, pairs0, min1, max1)
    oom = st.oom

    saw = {}
    bridge = {}
    hs = {}
    cdef int n, p
    for n in range(n_max + 1):
        for p in range(PHIST):
            if st.hist_saw[n * PHIST + p]:
                saw[(n, p)] = st.hist_saw[n * PHIST + p]
            if st.hist_bridge[n * PHIST + p]:
                bridge[(n, p)] = st.hist_bridge[n * PHIST + p]
            if st.hist_hs[n * PHIST + p]:
                hs[(n, p)] = st.hist_hs[n * PHIST + p]
    end = None
    cdef Py_ssize_t j
    cdef i64 key
    if want_end:
        end = {}
        for j in range(st.emap.cap):
            if st.emap.used[j]:
                key = st.emap.keys[j]
                end[(_unpack_pt(key >> 14, d), <int> ((key >> 7) & 0x7f),
                     <int> (key & 0x7f))] = st.evals[<Py_ssize_t> st.emap.slot[j]]
    free(st.step_pk)
    free(st.step_ax)
    free(st.step_x0)
    free(st.shift_pk)
    free(st.hist_saw)
    free(st.hist_bridge)
    free(st.hist_hs)
    hmap_free(&st.emap)
    free(st.evals)
    if oom:
        raise MemoryError("kernel hash map allocation failed")
    return saw, bridge, hs, end


# ---------------------------------------------------------------------------
# all-walk odometer and pair classification

cdef struct WalkIter:
    int n
    int npfx
    int nstep
    i64* step_pk
    int* step_ax
    int idx[NMAX + 2]
    i64 vp[NMAX + 2]
    int ax[NMAX + 2]
    int live


cdef void _witer_start(WalkIter* it) nogil:
    cdef int k
    for k in range(it.npfx, it.n):
        it.idx[k] = 0
        it.vp[k + 1] = it.vp[k] + it.step_pk[0]
        it.ax[k] = it.step_ax[0]
    it.live = 1


cdef void _witer_next(WalkIter* it) nogil:
    cdef int p = it.n - 1
    cdef int k
    while p >= it.npfx and it.idx[p] == it.nstep - 1:
        it.idx[p] = 0
        p -= 1
    if p < it.npfx:
        it.live = 0
        return
    it.idx[p] += 1
    for k in range(p, it.n):
        it.vp[k + 1] = it.vp[k] + it.step_pk[it.idx[k]]
        it.ax[k] = it.step_ax[it.idx[k]]


cdef void _classify_pairs(i64* vp, int* ax, int n, int d, char* cls) nogil:
    """cls[i*(n+1)+j] = 1 coincidence, 2 adjacent pair, 0 otherwise."""
    cdef int i, j, a
    cdef i64 d1, d2
    memset(cls, 0, (n + 1) * (n + 1))
    for j in range(2, n + 1):
        for i in range(j - 1):
            if vp[i] == vp[j]:
                cls[i * (n + 1) + j] = 1
                continue
            if j < i + 3:
                continue
            a = ax[i]
            if a < 0 or ax[j - 1] < 0:
                continue
            if vp[i + 1] == vp[j - 1]:
                continue
            d1 = vp[j - 1] - vp[i]
            if vp[j] - vp[i + 1] == d1 and _decode_unit_off_axis(d1, a, d):
                cls[i * (n + 1) + j] = 2
                continue
            d2 = vp[j] - vp[i]
            if vp[j - 1] - vp[i + 1] == d2 and _decode_unit_off_axis(d2, a, d):
                cls[i * (n + 1) + j] = 2


cdef int _setup_witer(WalkIter* it, _Steps T, int n, steps, prefix) except -1:
    cdef int k
    memset(it, 0, sizeof(WalkIter))
    it.n = n
    it.npfx = len(prefix)
    it.nstep = T.count
    it.step_pk = <i64*> malloc(T.count * sizeof(i64))
    it.step_ax = <int*> malloc(T.count * sizeof(int))
    for k in range(T.count):
        it.step_pk[k] = T.pk[k]
        it.step_ax[k] = T.axis[k]
    it.vp[0] = 0
    for k in range(T.d):
        it.vp[0] |= (<i64> 128) << (8 * k)
    for j, sraw in enumerate(prefix):
        k = steps.index(tuple(sraw))
        it.idx[j] = k
        it.vp[j + 1] = it.vp[j] + T.pk[k]
        it.ax[j] = T.axis[k]
    return 0


# ---------------------------------------------------------------------------
# polynomial accumulator: key -> row of POLW coefficients

cdef struct PolyMap:
    HMap map
    i64* rows
    int oom


cdef int _pmap_init(PolyMap* pm, Py_ssize_t cap) nogil:
    pm.oom = 0
    if not hmap_init(&pm.map, cap):
        return 0
    pm.rows = <i64*> calloc(cap * POLW, sizeof(i64))
    return pm.rows != NULL


cdef void _pmap_free(PolyMap* pm) nogil:
    hmap_free(&pm.map)
    free(pm.rows)


cdef i64* _pmap_row(PolyMap* pm, i64 key) nogil:
    cdef Py_ssize_t i = hmap_find(&pm.map, key)
    cdef HMap old
    cdef i64* rows2
    cdef Py_ssize_t j, w, cap2, slot_old
    if i >= 0:
        return pm.rows + <Py_ssize_t> pm.map.slot[i] * POLW
    if pm.map.size * 10 >= pm.map.cap * 7:
        old = pm.map
        cap2 = old.cap * 2
        if not hmap_init(&pm.map, cap2):
            pm.map = old
            pm.oom = 1
            return pm.rows
        rows2 = <i64*> calloc(cap2 * POLW, sizeof(i64))
        if rows2 == NULL:
            hmap_free(&pm.map)
            pm.map = old
            pm.oom = 1
            return pm.rows
        for j in range(old.cap):
            if old.used[j]:
                i = hmap_find(&pm.map, old.keys[j])
                i = -i - 1
                pm.map.keys[i] = old.keys[j]
                pm.map.used[i] = 1
                pm.map.slot[i] = i
                pm.map.size += 1
                slot_old = <Py_ssize_t> old.slot[j]
                for w in range(POLW):
                    rows2[i * POLW + w] = pm.rows[slot_old * POLW + w]
        free(pm.rows)
        pm.rows = rows2
        hmap_free(&old)
    i = hmap_find(&pm.map, key)
    i = -i - 1
    pm.map.keys[i] = key
    pm.map.used[i] = 1
    pm.map.slot[i] = i
    pm.map.size += 1
    return pm.rows + i * POLW


cdef object _pmap_to_dict(PolyMap* pm, int d, bint with_m):
    out = {}
    cdef Py_ssize_t j
    cdef i64 key
    cdef i64* row
    cdef int k, top
    for j in range(pm.map.cap):
        if not pm.map.used[j]:
            continue
        key = pm.map.keys[j]
        row = pm.rows + <Py_ssize_t> pm.map.slot[j] * POLW
        top = -1
        for k in range(POLW):
            if row[k]:
                top = k
        if top < 0:
            continue
        coeffs = tuple(row[k] for k in range(top + 1))
        if with_m:
            out[(_unpack_pt(key >> 7, d), <int> (key & 0x7f))] = coeffs
        else:
            out[_unpack_pt(key, d)] = coeffs
    return out


# ---------------------------------------------------------------------------
# J profile

def j_profile(int d, steps, int n, prefix=()):
    if d < 2 or d > DMAXDIM:
        raise ValueError("compiled kernel supports 2 <= d <= 5")
    if n > NJMAX:
        raise ValueError("interaction kernels are guarded to n <= 9")
    steps = tuple(tuple(s) for s in steps)
    cdef _Steps T = _Steps(d, steps)
    cdef WalkIter it
    _setup_witer(&it, T, n, steps, prefix)
    cdef PolyMap pm
    if not _pmap_init(&pm, 1 << 10):
        raise MemoryError()
    cdef char* cls = <char*> malloc((n + 1) * (n + 1))
    cdef int* kexp = <int*> malloc((n + 1) * (n + 1) * sizeof(int))
    cdef i64* jtab = <i64*> malloc((n + 1) * (n + 1) * POLW * sizeof(i64))
    cdef i64 jpoly[POLW]
    cdef i64* row
    cdef int k
    if it.npfx <= n:
        with nogil:
            _witer_start(&it)
            while it.live and not pm.oom:
                if _j_poly_c(it.vp, it.ax, n, d, cls, kexp, jtab, jpoly):
                    row = _pmap_row(&pm, it.vp[n])
                    for k in range(POLW):
                        row[k] += jpoly[k]
                _witer_next(&it)
    oom = pm.oom
    out = _pmap_to_dict(&pm, d, False) if not oom else None
    _pmap_free(&pm)
    free(cls)
    free(kexp)
    free(jtab)
    free(it.step_pk)
    free(it.step_ax)
    if oom:
        raise MemoryError("kernel accumulator allocation failed")
    return out


cdef int _j_poly_c(i64* vp, int* ax, int n, int d, char* cls, int* kexp,
                   i64* jtab, i64* out) nogil:
    """J_[0,n] in t-coefficients; returns 0 when identically zero."""
    cdef int a, b, i, jj, e, dead, length, k, ke
    cdef i64* poly
    cdef i64* sub
    cdef int W = n + 1
    cdef char c
    _classify_pairs(vp, ax, n, d, cls)
    for a in range(n + 1):
        kexp[a * W + a] = 0
        if a + 1 <= n:
            kexp[a * W + a + 1] = 0
        for b in range(a + 2, n + 1):
            if kexp[a * W + b - 1] < 0:
                kexp[a * W + b] = -1
                continue
            e = kexp[a * W + b - 1]
            dead = 0
            for i in range(a, b - 1):
                c = cls[i * W + b]
                if c == 1:
                    dead = 1
                    break
                if c == 2:
                    e += 1
            kexp[a * W + b] = -1 if dead else e
    for a in range(n + 1):
        for b in range(a, a + 2):
            if b > n:
                break
            poly = jtab + (a * W + b) * POLW
            memset(poly, 0, POLW * sizeof(i64))
            poly[0] = 1
    for length in range(2, n + 1):
        for a in range(0, n + 1 - length):
            b = a + length
            poly = jtab + (a * W + b) * POLW
            memset(poly, 0, POLW * sizeof(i64))
            ke = kexp[a * W + b]
            if ke >= 0:
                poly[ke] += 1
            ke = kexp[(a + 1) * W + b]
            if ke >= 0:
                poly[ke] -= 1
            for jj in range(a + 2, b):
                ke = kexp[jj * W + b]
                if ke < 0:
                    continue
                sub = jtab + (a * W + jj) * POLW
                for k in range(POLW - ke):
                    if sub[k]:
                        poly[k + ke] -= sub[k]
    poly = jtab + n * POLW  # (0, n)
    dead = 1
    for k in range(POLW):
        out[k] = poly[k]
        if poly[k]:
            dead = 0
    return not dead


# ---------------------------------------------------------------------------
# per-lace-size profile

def lace_profile(int d, steps, int n, lace_pack, prefix=()):
    if d < 2 or d > DMAXDIM:
        raise ValueError("compiled kernel supports 2 <= d <= 5")
    if n > NJMAX:
        raise ValueError("interaction kernels are guarded to n <= 9")
    steps = tuple(tuple(s) for s in steps)
    cdef _Steps T = _Steps(d, steps)
    cdef WalkIter it
    _setup_witer(&it, T, n, steps, prefix)

    cdef int nl = len(lace_pack)
    cdef int* lm = <int*> malloc(max(1, nl) * sizeof(int))
    cdef int* le_off = <int*> malloc((nl + 1) * sizeof(int))
    cdef int* ce_off = <int*> malloc((nl + 1) * sizeof(int))
    les = []
    ces = []
    for idx, (m, ledges, cedges) in enumerate(lace_pack):
        lm[idx] = m
        le_off[idx] = len(les)
        ce_off[idx] = len(ces)
        les.extend(ledges)
        ces.extend(cedges)
    le_off[nl] = len(les)
    ce_off[nl] = len(ces)
    cdef int* le = <int*> malloc(max(1, 2 * len(les)) * sizeof(int))
    cdef int* ce = <int*> malloc(max(1, 2 * len(ces)) * sizeof(int))
    for idx, ab in enumerate(les):
        le[2 * idx] = ab[0]
        le[2 * idx + 1] = ab[1]
    for idx, ab in enumerate(ces):
        ce[2 * idx] = ab[0]
        ce[2 * idx + 1] = ab[1]
    cdef i64* binom = _signed_binom_table(n + 2)

    cdef PolyMap pm
    if not _pmap_init(&pm, 1 << 10):
        raise MemoryError()
    cdef char* cls = <char*> malloc((n + 1) * (n + 1))
    cdef int W = n + 1
    cdef int li, t, sign, p, q, dead, ii
    cdef char c
    cdef i64* row
    if it.npfx <= n:
        with nogil:
            _witer_start(&it)
            while it.live and not pm.oom:
                _classify_pairs(it.vp, it.ax, n, d, cls)
                for li in range(nl):
                    sign = 1
                    p = 0
                    dead = 0
                    for t in range(le_off[li], le_off[li + 1]):
                        c = cls[le[2 * t] * W + le[2 * t + 1]]
                        if c == 1:
                            sign = -sign
                        elif c == 2:
                            p += 1
                        else:
                            dead = 1
                            break
                    if dead:
                        continue
                    q = 0
                    for t in range(ce_off[li], ce_off[li + 1]):
                        c = cls[ce[2 * t] * W + ce[2 * t + 1]]
                        if c == 1:
                            dead = 1
                            break
                        if c == 2:
                            q += 1
                    if dead:
                        continue
                    row = _pmap_row(&pm, (it.vp[n] << 7) | lm[li])
                    if pm.oom:
                        break
                    for ii in range(p + 1):
                        row[q + ii] += sign * binom[p * (p + 1) // 2 + ii]
                _witer_next(&it)
    oom = pm.oom
    out = _pmap_to_dict(&pm, d, True) if not oom else None
    _pmap_free(&pm)
    free(cls)
    free(lm)
    free(le_off)
    free(ce_off)
    free(le)
    free(ce)
    free(binom)
    free(it.step_pk)
    free(it.step_ax)
    if oom:
        raise MemoryError("kernel accumulator allocation failed")
    return out


cdef i64* _signed_binom_table(int pmax):
    """Row p at offset p(p+1)/2: coefficients of (t-1)^p."""
    cdef i64* tab = <i64*> calloc((pmax + 1) * (pmax + 2) // 2, sizeof(i64))
    cdef int p, i, off, prev
    tab[0] = 1
    for p in range(1, pmax + 1):
        off = p * (p + 1) // 2
        prev = (p - 1) * p // 2
        for i in range(p):
            tab[off + i] -= tab[prev + i]
            tab[off + i + 1] += tab[prev + i]
    return tab


# ---------------------------------------------------------------------------
# coefficient-wise diagrammatic bound profile

def pim_bound_profile(int d, steps, int n, comp_pack, prefix=()):
    if d < 2 or d > DMAXDIM:
        raise ValueError("compiled kernel supports 2 <= d <= 5")
    if n > NJMAX:
        raise ValueError("interaction kernels are guarded to n <= 9")
    if len(comp_pack) == 0:
        return {}
    steps = tuple(tuple(s) for s in steps)
    cdef _Steps T = _Steps(d, steps)
    cdef WalkIter it
    _setup_witer(&it, T, n, steps, prefix)

    cdef int nc = len(comp_pack)
    cdef int m = len(comp_pack[0][0])
    cdef int nk = 2 * m - 1
    cdef int* lace_ij = <int*> malloc(nc * m * 2 * sizeof(int))
    cdef int* sub_r = <int*> malloc(nc * nk * 2 * sizeof(int))
    cdef int* eta_r = <int*> malloc(nc * nk * 2 * sizeof(int))
    cdef int* ck_off = <int*> malloc((nc * nk + 1) * sizeof(int))
    cks = []
    for ci, entry in enumerate(comp_pack):
        ledges, subs, etas, comp_by_k = entry
        for t, ab in enumerate(ledges):
            lace_ij[(ci * m + t) * 2] = ab[0]
            lace_ij[(ci * m + t) * 2 + 1] = ab[1]
        for t in range(nk):
            sub_r[(ci * nk + t) * 2] = subs[t][0]
            sub_r[(ci * nk + t) * 2 + 1] = subs[t][1]
            if etas[t] is None:
                eta_r[(ci * nk + t) * 2] = -1
                eta_r[(ci * nk + t) * 2 + 1] = -1
            else:
                eta_r[(ci * nk + t) * 2] = etas[t][0]
                eta_r[(ci * nk + t) * 2 + 1] = etas[t][1]
            ck_off[ci * nk + t] = len(cks)
            cks.extend(comp_by_k[t])
    ck_off[nc * nk] = len(cks)
    cdef int* ck = <int*> malloc(max(1, 2 * len(cks)) * sizeof(int))
    for idx, ab in enumerate(cks):
        ck[2 * idx] = ab[0]
        ck[2 * idx + 1] = ab[1]
    cdef i64* binom = _signed_binom_table(m + 1)

    cdef int nshift = T.nshift
    cdef i64* shift_pk = <i64*> malloc(d * nshift * sizeof(i64))
    cdef int i, k
    for i in range(d):
        for k in range(nshift):
            shift_pk[i * nshift + k] = T.shift_pk[i][k]

    cdef PolyMap pm
    if not _pmap_init(&pm, 1 << 10):
        raise MemoryError()
    cdef int ci2, t2, p, Q, ok2, kk2, lo, hi, a2, b2, elo2, ehi2, ii
    cdef i64 diff
    cdef i64 contrib[POLW]
    cdef i64* row
    cdef int any_contrib
    if it.npfx <= n:
        with nogil:
            _witer_start(&it)
            while it.live and not pm.oom:
                memset(contrib, 0, POLW * sizeof(i64))
                any_contrib = 0
                for ci2 in range(nc):
                    p = 0
                    ok2 = 1
                    for t2 in range(m):
                        a2 = lace_ij[(ci2 * m + t2) * 2]
                        b2 = lace_ij[(ci2 * m + t2) * 2 + 1]
                        diff = it.vp[b2] - it.vp[a2]
                        if diff != 0:
                            if not _decode_linf_one(diff, d):
                                ok2 = 0
                                break
                            p += 1
                    if not ok2:
                        continue
                    Q = 0
                    for kk2 in range(nk):
                        lo = sub_r[(ci2 * nk + kk2) * 2]
                        hi = sub_r[(ci2 * nk + kk2) * 2 + 1]
                        if not _range_saw(it.vp, lo, hi):
                            ok2 = 0
                            break
                        for t2 in range(ck_off[ci2 * nk + kk2],
                                        ck_off[ci2 * nk + kk2 + 1]):
                            if it.vp[ck[2 * t2]] == it.vp[ck[2 * t2 + 1]]:
                                ok2 = 0
                                break
                        if not ok2:
                            break
                        Q += _range_pairs(it.vp, it.ax, lo, hi, nshift,
                                          shift_pk)
                        elo2 = eta_r[(ci2 * nk + kk2) * 2]
                        ehi2 = eta_r[(ci2 * nk + kk2) * 2 + 1]
                        if elo2 >= 0:
                            Q += _cross_pairs(it.vp, it.ax, lo, hi, elo2,
                                              ehi2, nshift, shift_pk)
                    if not ok2:
                        continue
                    any_contrib = 1
                    for ii in range(p + 1):
                        contrib[Q + ii] += binom[p * (p + 1) // 2 + ii]
                if any_contrib:
                    row = _pmap_row(&pm, it.vp[n])
                    if not pm.oom:
                        for ii in range(POLW):
                            row[ii] += contrib[ii]
                _witer_next(&it)
    oom = pm.oom
    out = _pmap_to_dict(&pm, d, False) if not oom else None
    _pmap_free(&pm)
    free(lace_ij)
    free(sub_r)
    free(eta_r)
    free(ck_off)
    free(ck)
    free(binom)
    free(shift_pk)
    free(it.step_pk)
    free(it.step_ax)
    if oom:
        raise MemoryError("kernel accumulator allocation failed")
    return out


cdef inline int _range_saw(i64* vp, int lo, int hi) nogil:
    cdef int i, j
    for i in range(lo, hi + 1):
        for j in range(i + 1, hi + 1):
            if vp[i] == vp[j]:
                return 0
    return 1


cdef int _range_pairs(i64* vp, int* ax, int lo, int hi, int nshift,
                      i64* shift_pk) nogil:
    """Adjacency pairs among the unit edges of steps lo..hi-1 (SAW range)."""
    cdef int t1, t2, s, cnt = 0
    cdef i64 alo, ahi, blo, bhi, tmp, dpk
    for t1 in range(lo, hi):
        if ax[t1] < 0:
            continue
        alo = vp[t1]
        ahi = vp[t1 + 1]
        if ahi < alo:
            tmp = alo
            alo = ahi
            ahi = tmp
        for t2 in range(t1 + 1, hi):
            if ax[t2] < 0:
                continue
            blo = vp[t2]
            bhi = vp[t2 + 1]
            if bhi < blo:
                tmp = blo
                blo = bhi
                bhi = tmp
            for s in range(nshift):
                dpk = shift_pk[ax[t1] * nshift + s]
                if blo == alo + dpk and bhi == ahi + dpk:
                    cnt += 1
                    break
    return cnt


cdef int _cross_pairs(i64* vp, int* ax, int lo, int hi, int elo, int ehi,
                      int nshift, i64* shift_pk) nogil:
    """Adjacent pairs between the sub range's edges and eta's edge SET.

    The eta range may repeat an edge; duplicates count once, so each sub
    edge tests each distinct partner location for membership.
    """
    cdef int t1, t2, s, cnt = 0, found
    cdef i64 alo, ahi, plo, phi, blo, bhi, tmp, dpk
    for t1 in range(lo, hi):
        if ax[t1] < 0:
            continue
        alo = vp[t1]
        ahi = vp[t1 + 1]
        if ahi < alo:
            tmp = alo
            alo = ahi
            ahi = tmp
        for s in range(nshift):
            dpk = shift_pk[ax[t1] * nshift + s]
            plo = alo + dpk
            phi = ahi + dpk
            found = 0
            for t2 in range(elo, ehi):
                if ax[t2] < 0:
                    continue
                blo = vp[t2]
                bhi = vp[t2 + 1]
                if bhi < blo:
                    tmp = blo
                    blo = bhi
                    bhi = tmp
                if blo == plo and bhi == phi:
                    found = 1
                    break
            if found:
                cnt += 1
    return cnt
