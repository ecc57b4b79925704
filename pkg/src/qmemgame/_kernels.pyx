# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closed-form payoff kernels; same API as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos

cnp.import_array()


cdef inline double _payoff(const double* tab, const double* k,
                           double c1, double s1, double sn1, double a1, double b1,
                           double c2, double s2, double sn2, double a2, double b2) noexcept nogil:
    cdef double p00 = tab[0], p01 = tab[1], p10 = tab[2], p11 = tab[3]
    cdef double eta = k[0], chi = k[1], xi = k[2], mup1 = k[3], mup2 = k[4]
    cdef double sd = k[5], sg = k[6], sgn = k[7]
    cdef double phase = mup1 * mup2 * xi
    cdef double coh = sn1 * sn2 * 0.25
    cdef double v
    v = c1 * c2 * (eta * p00 + chi * p11 + (p00 - p11) * phase * cos(2 * (a1 + a2)))
    v += s1 * s2 * (eta * p11 + chi * p00 - (p00 - p11) * phase * cos(2 * (b1 + b2)))
    v += c1 * s2 * (eta * p01 + chi * p10 + sgn * (p01 - p10) * phase * cos(2 * (a1 - b2)))
    v += c2 * s1 * (eta * p10 + chi * p01 - sgn * (p01 - p10) * phase * cos(2 * (a2 - b1)))
    if coh != 0.0:
        v += mup2 * (p00 - p11) * sd * coh * sin(a1 + a2 + b1 + b2)
        v += sgn * mup2 * (p10 - p01) * sd * coh * sin(a1 - a2 + b1 - b2)
        v += mup1 * (p01 + p10 - p00 - p11) * sg * coh * sin(a1 + a2 - b1 - b2)
    return v


cdef void _unpack(table, consts, double* tab, double* k) except *:
    cdef int i
    for i in range(4):
        tab[i] = float(table[i])
    for i in range(8):
        k[i] = float(consts[i])


def payoff_batch(table, consts, t1, a1, b1, t2, a2, b2):
    cdef double tab[4]
    cdef double k[8]
    _unpack(table, consts, tab, k)
    arrs = np.broadcast_arrays(*(np.asarray(x, dtype=np.float64) for x in (t1, a1, b1, t2, a2, b2)))
    shape = arrs[0].shape
    cdef cnp.ndarray[cnp.float64_t, ndim=1] T1 = np.ascontiguousarray(arrs[0]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] A1 = np.ascontiguousarray(arrs[1]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] B1 = np.ascontiguousarray(arrs[2]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] T2 = np.ascontiguousarray(arrs[3]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] A2 = np.ascontiguousarray(arrs[4]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] B2 = np.ascontiguousarray(arrs[5]).ravel()
    cdef Py_ssize_t n = T1.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double h1, h2
    with nogil:
        for i in range(n):
            h1 = 0.5 * T1[i]
            h2 = 0.5 * T2[i]
            o[i] = _payoff(tab, k,
                           cos(h1) * cos(h1), sin(h1) * sin(h1), sin(T1[i]), A1[i], B1[i],
                           cos(h2) * cos(h2), sin(h2) * sin(h2), sin(T2[i]), A2[i], B2[i])
    return out.reshape(shape)


def response_grid(table, consts, fixed, int responder, thetas, alphas, betas):
    cdef double tab[4]
    cdef double k[8]
    _unpack(table, consts, tab, k)
    cdef double[::1] th = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] al = np.ascontiguousarray(alphas, dtype=np.float64)
    cdef double[::1] be = np.ascontiguousarray(betas, dtype=np.float64)
    cdef Py_ssize_t nt = th.shape[0], na = al.shape[0], nb = be.shape[0]
    cdef Py_ssize_t i, j, m
    cdef double ft = float(fixed[0]), fa = float(fixed[1]), fb = float(fixed[2])
    cdef double fc = cos(0.5 * ft) ** 2, fs = sin(0.5 * ft) ** 2, fsn = sin(ft)
    cdef double c, s, sn, h
    out = np.empty((nt, na, nb), dtype=np.float64)
    cdef double[:, :, ::1] o = out
    with nogil:
        for i in range(nt):
            h = 0.5 * th[i]
            c = cos(h) * cos(h)
            s = sin(h) * sin(h)
            sn = sin(th[i])
            for j in range(na):
                for m in range(nb):
                    if responder == 0:
                        o[i, j, m] = _payoff(tab, k, c, s, sn, al[j], be[m], fc, fs, fsn, fa, fb)
                    else:
                        o[i, j, m] = _payoff(tab, k, fc, fs, fsn, fa, fb, c, s, sn, al[j], be[m])
    return out
