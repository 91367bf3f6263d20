# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled streaming kernel: the fast lane.

Operation-for-operation mirror of ``_kernel_py``; see the note there about
bit parity.  The module is built with -ffp-contract=off and without
-ffast-math so every floating-point operation rounds exactly like the
interpreter's.
"""

from libc.math cimport cos, fabs, floor, isfinite, log, pow, sin, tan
from libc.stdint cimport int64_t, uint64_t

from cpython.mem cimport PyMem_Free, PyMem_Malloc

from array import array

LANE = "cython"

cdef double PI = 3.141592653589793
cdef double M_E_ = 2.718281828459045
cdef double INV_2_53 = 1.0 / 9007199254740992.0
cdef double INV_2_52 = 1.0 / 4503599627370496.0
cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15U


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = z + GOLDEN
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9U
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBU
    return z ^ (z >> 31)


cdef struct LawParams:
    int kind
    double p0, p1, p2, p3, p4, p5


cdef class StreamKernel:
    """See _kernel_py.StreamKernel; same contract, compiled loop."""

    cdef LawParams law1, law2
    cdef double g_c, g_p, g_m
    cdef uint64_t s0, s1, s2, s3
    cdef double us, uc, vs, vc
    cdef int64_t k, prev_t1

    def __init__(self, law1, law2, g_coeffs, seed):
        _fill_law(&self.law1, law1)
        _fill_law(&self.law2, law2)
        self.g_c, self.g_p, self.g_m = g_coeffs
        cdef uint64_t sm = <uint64_t> (seed & 0xFFFFFFFFFFFFFFFF)
        cdef uint64_t st[4]
        cdef int i
        for i in range(4):
            st[i] = _mix64(sm)
            sm = sm + GOLDEN
        if st[0] == 0 and st[1] == 0 and st[2] == 0 and st[3] == 0:
            st[0] = GOLDEN
        self.s0, self.s1, self.s2, self.s3 = st[0], st[1], st[2], st[3]
        self.us = self.uc = 0.0
        self.vs = self.vc = 0.0
        self.k = 0
        self.prev_t1 = 0

    cdef inline uint64_t _next_u64(self) nogil:
        cdef uint64_t s0 = self.s0, s1 = self.s1, s2 = self.s2, s3 = self.s3
        cdef uint64_t tmp = s0 + s3
        cdef uint64_t result = _rotl(tmp, 23) + s0
        cdef uint64_t t = s1 << 17
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0 = s0
        self.s1 = s1
        self.s2 = s2
        self.s3 = s3
        return result

    cdef inline double _draw(self, LawParams *law) nogil:
        cdef double u, w, x, t1, t2
        if law.kind == 0:
            return 0.0
        if law.kind == 1:
            # p0=alpha p1=one_minus_alpha p2=inv_alpha p3=cms_exp p4=scale_mult
            u = PI * ((((self._next_u64() >> 12) + 0.5) * INV_2_52) - 0.5)
            w = -log(((self._next_u64() >> 12) + 0.5) * INV_2_52)
            if law.p0 == 1.0:
                x = tan(u)
            else:
                t1 = sin(law.p0 * u) / pow(cos(u), law.p2)
                t2 = cos(law.p1 * u) / w
                x = t1 * pow(t2, law.p3)
            return law.p4 * x
        # p0=inv_alpha p1=p_body p2=p_plus_hi p3=c_plus p4=c_minus p5=cutoff
        u = (self._next_u64() >> 11) * INV_2_53
        if u < law.p1:
            return law.p5 * (2.0 * (u / law.p1) - 1.0)
        if u < law.p2:
            w = law.p2 - u
            return pow(law.p3 / w, law.p0)
        w = 1.0 - u
        return -pow(law.p4 / w, law.p0)

    def advance(self, k_to):
        """Process indices current+1 .. k_to.  Returns -1, or the first
        index at which an accumulator went non-finite."""
        cdef int64_t kt = k_to
        cdef int64_t k = self.k, prev_t1 = self.prev_t1, t1i
        cdef double g_c = self.g_c, g_p = self.g_p, g_m = self.g_m
        cdef double us = self.us, uc = self.uc, vs = self.vs, vc = self.vc
        cdef double kf, g, x, t
        cdef int64_t abort = -1
        with nogil:
            while k < kt:
                k += 1
                kf = <double> k
                g = g_c * pow(kf, g_p)
                if g_m != 0.0:
                    g = g * pow(log(kf + M_E_), -g_m)
                t1i = <int64_t> floor(g)
                if t1i > k:
                    t1i = k
                if t1i > prev_t1:
                    prev_t1 = t1i
                    x = self._draw(&self.law1)
                    t = us + x
                    if fabs(us) >= fabs(x):
                        uc += (us - t) + x
                    else:
                        uc += (x - t) + us
                    us = t
                    if not isfinite(us):
                        abort = k
                        break
                else:
                    x = self._draw(&self.law2)
                    t = vs + x
                    if fabs(vs) >= fabs(x):
                        vc += (vs - t) + x
                    else:
                        vc += (x - t) + vs
                    vs = t
                    if not isfinite(vs):
                        abort = k
                        break
        self.us, self.uc, self.vs, self.vc = us, uc, vs, vc
        self.prev_t1 = prev_t1
        self.k = k
        return abort

    @property
    def index(self):
        return self.k

    @property
    def tau1(self):
        return self.prev_t1

    def u_value(self):
        return self.us + self.uc

    def v_value(self):
        return self.vs + self.vc

    def s_value(self):
        return (self.us + self.uc) + (self.vs + self.vc)


cdef int _fill_law(LawParams *lp, params) except -1:
    lp.kind = params[0]
    lp.p0 = params[1]
    lp.p1 = params[2]
    lp.p2 = params[3]
    lp.p3 = params[4]
    lp.p4 = params[5]
    lp.p5 = params[6]
    return 0


def sample_law_many(law, seed, n):
    """n straight draws from one law (validation helper)."""
    cdef StreamKernel kern = StreamKernel(law, law, (1.0, 1.0, 0.0), seed)
    cdef Py_ssize_t count = n
    out = array("d", bytes(8 * count))
    cdef double[::1] view = out
    cdef Py_ssize_t i
    for i in range(count):
        view[i] = kern._draw(&kern.law1)
    return out
