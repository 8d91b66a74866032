"""Hot loops: the per-wavenumber product of impurity transfer steps.

Two interchangeable implementations are provided.  The numba one runs the
impurity recursion per wavenumber in compiled code (parallel over k); the
numpy one vectorises over wavenumbers and loops over impurities in Python.
Set ``QUASIBOUND_DISABLE_NUMBA=1`` to force the numpy path.  Both return the
product scaled so its largest entry stays below ``_RESCALE_AT``, together
with the natural log of the removed scale.
"""

from __future__ import annotations

import os

import numpy as np

_RESCALE_AT = 1e150


def _flag_disabled() -> bool:
    return os.environ.get("QUASIBOUND_DISABLE_NUMBA", "").strip().lower() in {
        "1", "true", "yes", "on",
    }


def transfer_products_numpy(ks, xs, b, j, n_imp):
    """Accumulate M = S_{N-1} ... S_1 S_0 for every k.

    ``S_n = [[1 + X, X e^{-2i th}], [-X e^{2i th}, 1 - X]]`` with
    ``th = k b j n``: the impurity step at site ``n j`` written in global
    plane-wave amplitudes.
    """
    ks = np.ascontiguousarray(ks, dtype=np.float64)
    xs = np.ascontiguousarray(xs, dtype=np.complex128)
    nk = ks.shape[0]
    m11 = np.ones(nk, dtype=np.complex128)
    m12 = np.zeros(nk, dtype=np.complex128)
    m21 = np.zeros(nk, dtype=np.complex128)
    m22 = np.ones(nk, dtype=np.complex128)
    log_scale = np.zeros(nk)
    one_p = 1.0 + xs
    one_m = 1.0 - xs
    for n in range(n_imp):
        th = ks * (b * j * n)
        ph = np.exp(-2j * th)
        s12 = xs * ph
        s21 = -xs * np.conj(ph)
        n11 = one_p * m11 + s12 * m21
        n12 = one_p * m12 + s12 * m22
        n21 = s21 * m11 + one_m * m21
        n22 = s21 * m12 + one_m * m22
        m11, m12, m21, m22 = n11, n12, n21, n22
        big = np.maximum(np.maximum(np.abs(m11), np.abs(m12)),
                         np.maximum(np.abs(m21), np.abs(m22)))
        over = big > _RESCALE_AT
        if over.any():
            s = np.where(over, big, 1.0)
            m11, m12, m21, m22 = m11 / s, m12 / s, m21 / s, m22 / s
            log_scale += np.log(s)
    out = np.empty((nk, 2, 2), dtype=np.complex128)
    out[:, 0, 0] = m11
    out[:, 0, 1] = m12
    out[:, 1, 0] = m21
    out[:, 1, 1] = m22
    return out, log_scale


try:
    import numba as _nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    _nb = None
else:
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the system TBB is often older than numba accepts; avoid the probe warning
        _nb.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


if _nb is not None:

    @_nb.njit(inline="always")
    def _abs2(z):
        return z.real * z.real + z.imag * z.imag

    @_nb.njit(parallel=True, cache=True)
    def _transfer_products_jit(ks, xs, b, j, n_imp):
        nk = ks.shape[0]
        out = np.empty((nk, 2, 2), dtype=np.complex128)
        log_scale = np.zeros(nk)
        for i in _nb.prange(nk):
            x = xs[i]
            k = ks[i]
            m11 = 1.0 + 0j
            m12 = 0j
            m21 = 0j
            m22 = 1.0 + 0j
            acc = 0.0
            for n in range(n_imp):
                th = k * (b * j * n)
                ph = complex(np.cos(2.0 * th), -np.sin(2.0 * th))
                s12 = x * ph
                s21 = -x * ph.conjugate()
                n11 = (1.0 + x) * m11 + s12 * m21
                n12 = (1.0 + x) * m12 + s12 * m22
                n21 = s21 * m11 + (1.0 - x) * m21
                n22 = s21 * m12 + (1.0 - x) * m22
                m11 = n11
                m12 = n12
                m21 = n21
                m22 = n22
                # squared moduli: no hypot on the common path
                big2 = max(max(_abs2(m11), _abs2(m12)), max(_abs2(m21), _abs2(m22)))
                if big2 > _RESCALE_AT * _RESCALE_AT:
                    big = np.sqrt(big2)
                    m11 /= big
                    m12 /= big
                    m21 /= big
                    m22 /= big
                    acc += np.log(big)
            out[i, 0, 0] = m11
            out[i, 0, 1] = m12
            out[i, 1, 0] = m21
            out[i, 1, 1] = m22
            log_scale[i] = acc
        return out, log_scale

    def transfer_products_numba(ks, xs, b, j, n_imp):
        ks = np.ascontiguousarray(ks, dtype=np.float64)
        xs = np.ascontiguousarray(xs, dtype=np.complex128)
        return _transfer_products_jit(ks, xs, float(b), int(j), int(n_imp))

else:  # pragma: no cover
    transfer_products_numba = None


USE_NUMBA = transfer_products_numba is not None and not _flag_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


def transfer_products(ks, xs, b, j, n_imp):
    if USE_NUMBA:
        return transfer_products_numba(ks, xs, b, j, n_imp)
    return transfer_products_numpy(ks, xs, b, j, n_imp)
