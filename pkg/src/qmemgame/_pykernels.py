"""Vectorised numpy implementation of the closed-form payoff kernels.

Used when the compiled ``_kernels`` extension is unavailable. The signatures
mirror the Cython module exactly.

``table`` is ``(p00, p01, p10, p11)`` for one player. ``consts`` is
``(eta, chi, xi, mup1, mup2, sin_delta, sin_gamma, cross_phase)``.
"""

import numpy as np


def payoff_batch(table, consts, t1, a1, b1, t2, a2, b2):
    p00, p01, p10, p11 = (float(x) for x in table)
    eta, chi, xi, mup1, mup2, sd, sg, sgn = (float(x) for x in consts)
    t1, a1, b1, t2, a2, b2 = np.broadcast_arrays(
        *(np.asarray(x, dtype=np.float64) for x in (t1, a1, b1, t2, a2, b2))
    )
    c1, s1 = np.cos(t1 / 2) ** 2, np.sin(t1 / 2) ** 2
    c2, s2 = np.cos(t2 / 2) ** 2, np.sin(t2 / 2) ** 2
    phase = mup1 * mup2 * xi
    coh = np.sin(t1) * np.sin(t2) / 4

    out = c1 * c2 * (eta * p00 + chi * p11 + (p00 - p11) * phase * np.cos(2 * (a1 + a2)))
    out += s1 * s2 * (eta * p11 + chi * p00 - (p00 - p11) * phase * np.cos(2 * (b1 + b2)))
    out += c1 * s2 * (eta * p01 + chi * p10 + sgn * (p01 - p10) * phase * np.cos(2 * (a1 - b2)))
    out += c2 * s1 * (eta * p10 + chi * p01 - sgn * (p01 - p10) * phase * np.cos(2 * (a2 - b1)))
    out += mup2 * (p00 - p11) * sd * coh * np.sin(a1 + a2 + b1 + b2)
    out += sgn * mup2 * (p10 - p01) * sd * coh * np.sin(a1 - a2 + b1 - b2)
    out += mup1 * (p01 + p10 - p00 - p11) * sg * coh * np.sin(a1 + a2 - b1 - b2)
    return out


def response_grid(table, consts, fixed, responder, thetas, alphas, betas):
    """Responder's payoff on the outer-product grid, shape ``(nt, na, nb)``.

    ``fixed`` is the other player's ``(theta, alpha, beta)``; ``responder``
    is 0 for Alice and 1 for Bob.
    """
    th = np.asarray(thetas, dtype=np.float64)[:, None, None]
    al = np.asarray(alphas, dtype=np.float64)[None, :, None]
    be = np.asarray(betas, dtype=np.float64)[None, None, :]
    ft, fa, fb = (float(x) for x in fixed)
    if responder == 0:
        return payoff_batch(table, consts, th, al, be, ft, fa, fb)
    return payoff_batch(table, consts, ft, fa, fb, th, al, be)
