"""Compiled inner loops for Hecke multiplication (numba, int64 coefficients).

Callers must check that keys and coefficient sums fit in 62 bits first; the
exact pure-Python path in :mod:`iwahori.hecke` handles everything else.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

AVAILABLE = njit is not None
LIMIT = 1 << 62
_FLIMIT = float(1 << 61)

_EMPTY = np.iinfo(np.int64).min
_GOLD = np.uint64(0x9E3779B97F4A7C15)


if AVAILABLE:

    @njit(cache=True)
    def _slot(keys, key, mask, shift):
        h = np.int64((np.uint64(key) * _GOLD) >> np.uint64(shift)) & mask
        while keys[h] != _EMPTY and keys[h] != key:
            h = (h + 1) & mask
        return h

    @njit(cache=True)
    def _shift_for(cap):
        bits = 0
        while (1 << bits) < cap:
            bits += 1
        return 64 - bits

    @njit(cache=True)
    def _nonzero(keys, vals):
        n = 0
        for i in range(keys.shape[0]):
            if keys[i] != _EMPTY and vals[i] != 0:
                n += 1
        ok = np.empty(n, np.int64)
        ov = np.empty(n, np.int64)
        n = 0
        for i in range(keys.shape[0]):
            if keys[i] != _EMPTY and vals[i] != 0:
                ok[n] = keys[i]
                ov[n] = vals[i]
                n += 1
        return ok, ov

    @njit(cache=True)
    def _next_pow2(n):
        cap = 16
        while cap < 2 * n:
            cap *= 2
        return cap

    @njit(cache=True)
    def _decode(ok, K, n_w, D, R, r, k_lo):
        n = ok.shape[0]
        kap = np.empty((n, r), np.int64)
        xs = np.empty(n, np.int64)
        ks = np.empty(n, np.int64)
        for a in range(n):
            key = ok[a]
            ks[a] = key % K + k_lo
            key //= K
            xs[a] = key % n_w
            key //= n_w
            for j in range(r):
                kap[a, j] = key % D - R
                key //= D
        return kap, xs, ks

    @njit(cache=True)
    def _grow(keys, vals):
        cap = 2 * keys.shape[0]
        mask = cap - 1
        sh = _shift_for(cap)
        nk = np.full(cap, _EMPTY, np.int64)
        nv = np.zeros(cap, np.int64)
        for i in range(keys.shape[0]):
            if keys[i] != _EMPTY:
                h = _slot(nk, keys[i], mask, sh)
                nk[h] = keys[i]
                nv[h] = vals[i]
        return nk, nv

    @njit(cache=True)
    def _ins(keys, vals, key, c, mask, sh):
        """Add ``c`` at ``key``; returns 1 if the key is new."""
        h = _slot(keys, key, mask, sh)
        vals[h] += c
        if keys[h] == _EMPTY:
            keys[h] = key
            return 1
        return 0

    @njit(cache=True)
    def apply_left(word, kap, xs, ks, cs, roots, coroots, lmul, lengths, R, n_w):
        """``T_w * h`` for ``h = sum c v^k Theta_kappa T_x`` and ``w`` given by ``word``
        (0-based letters), one simple reflection at a time from the right end.

        Every ``kappa`` of ``h`` and of the result lies in ``[-R, R]^rank``.  The last
        return value is False if a coefficient could leave int64 (result unusable).
        """
        r = kap.shape[1]
        D = 2 * R + 1
        for t in range(word.shape[0] - 1, -1, -1):
            i = word[t]
            n = kap.shape[0]
            if n == 0:
                break
            k_lo = ks.min()
            K = ks.max() - k_lo + 3
            maxm = 0
            norm = 0.0
            for a in range(n):
                m = 0
                for j in range(r):
                    m += roots[i, j] * kap[a, j]
                if abs(m) > maxm:
                    maxm = abs(m)
                norm += abs(cs[a])
            if norm * (3 + 2 * maxm) >= _FLIMIT:
                return kap, xs, ks, cs, False
            keys = np.full(_next_pow2(2 * n), _EMPTY, np.int64)
            vals = np.zeros(keys.shape[0], np.int64)
            mask = keys.shape[0] - 1
            sh = _shift_for(keys.shape[0])
            used = 0
            for a in range(n):
                m = 0
                for j in range(r):
                    m += roots[i, j] * kap[a, j]
                while 2 * (used + 3 + 2 * abs(m)) > keys.shape[0]:
                    keys, vals = _grow(keys, vals)
                    mask = keys.shape[0] - 1
                    sh = _shift_for(keys.shape[0])
                x = xs[a]
                k = ks[a] - k_lo
                c = cs[a]
                # Theta_{s kappa} T_s T_x
                base = 0
                for j in range(r - 1, -1, -1):
                    base = base * D + (kap[a, j] - m * coroots[i, j] + R)
                sx = lmul[i, x]
                if lengths[sx] > lengths[x]:
                    used += _ins(keys, vals, (base * n_w + sx) * K + k, c, mask, sh)
                else:
                    used += _ins(keys, vals, (base * n_w + sx) * K + k + 2, c, mask, sh)
                    used += _ins(keys, vals, (base * n_w + x) * K + k + 2, c, mask, sh)
                    used += _ins(keys, vals, (base * n_w + x) * K + k, -c, mask, sh)
                # (q - 1) times the alpha-string between kappa and s kappa
                if m > 0:
                    lo, hi, sgn, step = 0, m - 1, 1, -1
                else:
                    lo, hi, sgn, step = 1, -m, -1, 1
                if m != 0:
                    for jj in range(lo, hi + 1):
                        base = 0
                        for j in range(r - 1, -1, -1):
                            base = base * D + (kap[a, j] + step * jj * coroots[i, j] + R)
                        used += _ins(keys, vals, (base * n_w + x) * K + k + 2, sgn * c, mask, sh)
                        used += _ins(keys, vals, (base * n_w + x) * K + k, -sgn * c, mask, sh)
            ok, cs = _nonzero(keys, vals)
            kap, xs, ks = _decode(ok, K, n_w, D, R, r, k_lo)
        return kap, xs, ks, cs, True

    @njit(cache=True)
    def right_t(u, kap, xs, ks, cs, p0_off, p0_y, p0_k, p0_c, p0_norm, R, n_w):
        """``h * T_u`` using the finite multiplication table; ``p0_norm`` bounds a row's 1-norm."""
        n = kap.shape[0]
        if u == 0 or n == 0:
            return kap, xs, ks, cs, True
        norm = 0.0
        for a in range(n):
            norm += abs(cs[a])
        if norm * p0_norm >= _FLIMIT:
            return kap, xs, ks, cs, False
        r = kap.shape[1]
        D = 2 * R + 1
        k_lo = ks.min()
        K = ks.max() - k_lo + p0_k.max() + 1
        keys = np.full(_next_pow2(2 * n), _EMPTY, np.int64)
        vals = np.zeros(keys.shape[0], np.int64)
        mask = keys.shape[0] - 1
        sh = _shift_for(keys.shape[0])
        used = 0
        for a in range(n):
            row = xs[a] * n_w + u
            while 2 * (used + p0_off[row + 1] - p0_off[row]) > keys.shape[0]:
                keys, vals = _grow(keys, vals)
                mask = keys.shape[0] - 1
                sh = _shift_for(keys.shape[0])
            base = 0
            for j in range(r - 1, -1, -1):
                base = base * D + (kap[a, j] + R)
            for p in range(p0_off[row], p0_off[row + 1]):
                key = (base * n_w + p0_y[p]) * K + ks[a] - k_lo + p0_k[p]
                used += _ins(keys, vals, key, cs[a] * p0_c[p], mask, sh)
        ok, ov = _nonzero(keys, vals)
        kap, xs, ks = _decode(ok, K, n_w, D, R, r, k_lo)
        return kap, xs, ks, ov, True

    @njit(cache=True)
    def accumulate(a_off, a_part, a_c, b_off, b_part, b_c, p_off, p_part, p_c, size_hint):
        """``sum over groups (ga, gb)`` of all ``a x b x push`` contributions.

        Keys are additive: ``a_part[i] + b_part[j] + p_part[p]``.
        """
        n_a = a_off.shape[0] - 1
        n_b = b_off.shape[0] - 1
        keys = np.full(_next_pow2(size_hint), _EMPTY, np.int64)
        vals = np.zeros(keys.shape[0], np.int64)
        mask = keys.shape[0] - 1
        sh = _shift_for(keys.shape[0])
        used = 0
        for ga in range(n_a):
            for gb in range(n_b):
                g = ga * n_b + gb
                p0, p1 = p_off[g], p_off[g + 1]
                for i in range(a_off[ga], a_off[ga + 1]):
                    for j in range(b_off[gb], b_off[gb + 1]):
                        while 2 * (used + p1 - p0) > keys.shape[0]:
                            keys, vals = _grow(keys, vals)
                            mask = keys.shape[0] - 1
                            sh = _shift_for(keys.shape[0])
                        s = a_part[i] + b_part[j]
                        c0 = a_c[i] * b_c[j]
                        for p in range(p0, p1):
                            used += _ins(keys, vals, s + p_part[p], c0 * p_c[p], mask, sh)
        return _nonzero(keys, vals)
