"""Translation matrices re-expanding multipoles between sphere centers.

For two centers separated by d along the z axis, an outgoing scalar
multipole about one center is a convergent sum of regular multipoles about
the other.  With modified spherical Bessel functions i_l, k_l (all real
and positive on the imaginary frequency axis) the re-expansion reads

    k_l(kappa r_2) Y_lm(2) = -sum_{l'} U_{l'l}(m) i_{l'}(kappa r_1) Y_{l'm}(1)

valid for r_1 < d.  U depends only on |m| and on which center is the
source; the two directions are related by U^{21} = (U^{12})^T.

Electromagnetic (vector) multipoles translate through the same scalar
matrices after recoupling orbital and spin angular momentum, giving a
2x2 polarization structure per (l', l) pair in which the magnetic/electric
mixing terms vanish for m = 0.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .specfun import ThreeJArgs, bessel_ik_half_chain, threej_family, wigner3j

__all__ = [
    "TranslationBlock",
    "u_scalar",
    "u_em",
    "translation_block",
    "translation_block_em",
]


@dataclass(frozen=True)
class TranslationBlock:
    """Dense translation matrix at fixed azimuthal index m.

    Attributes
    ----------
    m : int
        Azimuthal index (entries depend on |m| only).
    entries : ndarray
        U[l_out - l_lo, l_in - l_lo] with l_lo = |m| for scalar blocks and
        l_lo = max(1, |m|) for electromagnetic ones; for the latter the
        array has shape (n, n, 2, 2) with polarization order (M, E).
    direction : str
        "12" or "21"; which center plays the source role.
    """

    m: int
    entries: np.ndarray
    direction: str


def _check_direction(direction):
    if direction not in ("12", "21"):
        raise ValueError("direction must be '12' or '21', got %r" % (direction,))


# cache of 3j product tensors: (l_max, m) -> (sign int8, log|W|) arrays of
# shape (l_max+1, l_max+1, 2*l_max+1) indexed [l_out, l_in, l''].
_W_CACHE = {}


def _w_tensor(l_max, m):
    """W[l', l, l''] = (2l''+1) 3j(l l' l''; 0 0 0) 3j(l l' l''; m -m 0)."""
    key = (l_max, m)
    hit = _W_CACHE.get(key)
    if hit is not None:
        return hit
    n = l_max + 1
    nw = 2 * l_max + 1
    sgn = np.zeros((n, n, nw), dtype=np.int8)
    logw = np.full((n, n, nw), -np.inf)
    for l_in in range(m, n):
        for l_out in range(m, n):
            jmin, f000 = threej_family(l_in, l_out, 0, 0)
            if m == 0:
                fm = f000
            else:
                jmin_m, fm = threej_family(l_in, l_out, m, -m)
                assert jmin_m == jmin  # both families start at |l_in - l_out|
            w = f000 * fm
            idx = np.arange(jmin, l_in + l_out + 1)
            vals = w * (2.0 * idx + 1.0)
            nz = vals != 0.0
            sgn[l_out, l_in, idx[nz]] = np.sign(vals[nz]).astype(np.int8)
            logw[l_out, l_in, idx[nz]] = np.log(np.abs(vals[nz]))
    _W_CACHE[key] = (sgn, logw)
    return sgn, logw


def u_log_block(l_max, m, x, direction="12"):
    """Scaled scalar translation block in signed-log form.

    Returns (sign, logmag) arrays of shape (l_max+1, l_max+1), indexed
    [l_out, l_in], with sign * exp(logmag) = U^{direction}_{l_out,l_in}(m)
    * e^{+x}.  The e^{+x} factor removes the overall decay of the k_{l''}
    kernel so the block stays representable at large x; callers reattach
    it against the rest of their exponentials.
    """
    _check_direction(direction)
    if direction == "21":
        s, lg = u_log_block(l_max, m, x, "12")
        return s.T.copy(), lg.T.copy()
    m = abs(m)
    chain = bessel_ik_half_chain(2 * l_max, x)
    # log of k_{l''}(x) e^{+x} with the spherical normalization
    logkt = chain.log_k + 0.5 * math.log(2.0 / (math.pi * x))
    sgn, logw = _w_tensor(l_max, m)
    terms = logw + logkt[None, None, :]
    peak = np.max(terms, axis=2)
    ok = np.isfinite(peak)
    acc = np.zeros_like(peak)
    safe_peak = np.where(ok, peak, 0.0)
    with np.errstate(under="ignore"):
        acc[ok] = np.sum(sgn * np.exp(terms - safe_peak[:, :, None]),
                         axis=2)[ok]
    # global prefactor -(-1)^{l_in} (-1)^m sqrt((2 l_in + 1)(2 l_out + 1))
    lvec = np.arange(l_max + 1)
    pref_sign = -np.where(lvec % 2 == 0, 1.0, -1.0) * (1.0 if m % 2 == 0 else -1.0)
    halflog = 0.5 * np.log(2.0 * lvec + 1.0)
    sign = np.sign(acc) * pref_sign[None, :]
    with np.errstate(divide="ignore"):
        logmag = np.where(acc != 0.0, np.log(np.abs(acc)), -np.inf) \
            + peak + halflog[:, None] + halflog[None, :]
    logmag[~ok] = -np.inf
    sign[~ok] = 0.0
    return sign, logmag


def u_scalar(l_out, l_in, m, kappa_d, direction="12"):
    """Scalar translation matrix element U^{direction}_{l_out,l_in}(m).

    Parameters
    ----------
    l_out, l_in : int
        Target (regular-wave) and source (outgoing-wave) orbital indices.
    m : int
        Common azimuthal index; the element depends on |m| only.
    kappa_d : float
        Dimensionless center separation kappa*d > 0.
    direction : str
        "12" or "21".  The two are transposes of each other.

    Returns
    -------
    float
        Real matrix element; exactly 0.0 when |m| exceeds either order.

    Notes
    -----
    The element decays like e^{-kappa_d} at large separation; for the
    scaled form used in determinant assembly see `u_log_block`.
    """
    _check_direction(direction)
    if l_out < 0 or l_in < 0:
        raise ValueError("orbital indices must be non-negative")
    if not kappa_d > 0.0:
        raise ValueError("kappa_d must be positive, got %r" % (kappa_d,))
    if abs(m) > min(l_out, l_in):
        return 0.0
    lm = max(l_out, l_in)
    sign, logmag = u_log_block(lm, abs(m), kappa_d, direction)
    return float(sign[l_out, l_in] * np.exp(logmag[l_out, l_in] - kappa_d))


def translation_block(l_max, m, kappa_d, direction="12"):
    """Dense scalar translation block over l = |m| .. l_max.

    Returns a TranslationBlock whose entries are the unscaled matrix
    elements; intended for moderate kappa_d where e^{-kappa_d} is
    representable.
    """
    _check_direction(direction)
    m_abs = abs(m)
    if l_max < m_abs:
        raise ValueError("l_max=%r below |m|=%r" % (l_max, m_abs))
    sign, logmag = u_log_block(l_max, m_abs, kappa_d, direction)
    with np.errstate(under="ignore"):
        full = sign * np.exp(logmag - kappa_d)
    return TranslationBlock(m=m, entries=full[m_abs:, m_abs:], direction=direction)


# ---------------------------------------------------------------------------
# Electromagnetic (vector multipole) translation
# ---------------------------------------------------------------------------
#
# Conventions: magnetic multipoles M_Jm = f_J(kappa r) Y_JJm with the vector
# spherical harmonics Y_JLm = sum_q <L,m-q;1,q|Jm> Y_{L,m-q} e_q, and electric
# multipoles N_Jm = (1/(i kappa)) curl M_Jm.  On the imaginary frequency axis
# the electric waves decompose with real constants,
#
#   N^reg_Jm  = +aR(J) i_{J-1} Y_{J,J-1,m} + bR(J) i_{J+1} Y_{J,J+1,m}
#   N^out_Jm  = -aR(J) k_{J-1} Y_{J,J-1,m} - bR(J) k_{J+1} Y_{J,J+1,m}
#
# with aR = sqrt((J+1)/(2J+1)), bR = sqrt(J/(2J+1)).  Translating the scalar
# components with U and recoupling gives the 2x2 polarization blocks below;
# the longitudinal (gradient-type) content cancels identically, which lets
# the electric target amplitude be read off the orbital J'-1 channel alone.


def _cg(j1, m1, j2, m2, jj, mm):
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | jj mm>."""
    if m1 + m2 != mm:
        return 0.0
    w = wigner3j(ThreeJArgs(j1, j2, jj, m1, m2, -mm))
    s = -1.0 if (j1 - j2 + mm) % 2 else 1.0
    return s * math.sqrt(2.0 * jj + 1.0) * w


@lru_cache(maxsize=1024)
def _em_weights(l_max, m):
    """Recoupling weight vectors for the four polarization blocks.

    For q in (-1, 0, +1) and J = 0..l_max+1 returns
    w0[q][J] = <J,   m-q; 1, q | J m>,
    wm[q][J] = <J-1, m-q; 1, q | J m>,
    wp[q][J] = <J+1, m-q; 1, q | J m>,
    plus the electric decomposition constants aR, bR.
    """
    n = l_max + 2
    w0 = np.zeros((3, n))
    wm = np.zeros((3, n))
    wp = np.zeros((3, n))
    for iq, q in enumerate((-1, 0, 1)):
        mu = m - q
        for jj in range(max(1, abs(m)), n):
            if abs(mu) <= jj:
                w0[iq, jj] = _cg(jj, mu, 1, q, jj, m)
            if abs(mu) <= jj - 1:
                wm[iq, jj] = _cg(jj - 1, mu, 1, q, jj, m)
            if abs(mu) <= jj + 1:
                wp[iq, jj] = _cg(jj + 1, mu, 1, q, jj, m)
    jv = np.arange(n, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        a_r = np.sqrt((jv + 1.0) / (2.0 * jv + 1.0))
        b_r = np.sqrt(jv / (2.0 * jv + 1.0))
    return w0, wm, wp, a_r, b_r


def _signed_log_sum(parts):
    """Sum [(coef, sign, logmag)] -> (sign, logmag) elementwise."""
    peak = None
    for coef, sgn, lg in parts:
        with np.errstate(invalid="ignore"):
            cand = np.where(coef != 0.0, lg + np.log(np.abs(np.where(
                coef != 0.0, coef, 1.0))), -np.inf)
        peak = cand if peak is None else np.maximum(peak, cand)
    ok = np.isfinite(peak)
    safe = np.where(ok, peak, 0.0)
    acc = np.zeros_like(peak)
    for coef, sgn, lg in parts:
        with np.errstate(under="ignore", invalid="ignore"):
            term = np.where(sgn != 0, coef * sgn * np.exp(lg - safe), 0.0)
        acc += term
    sign = np.sign(acc)
    with np.errstate(divide="ignore"):
        logmag = np.where(acc != 0.0, np.log(np.abs(np.where(
            acc != 0.0, acc, 1.0))) + peak, -np.inf)
    logmag[~ok] = -np.inf
    sign[~ok] = 0.0
    return sign, logmag


def em_log_blocks(l_max, m, x, direction="12"):
    """Scaled EM translation blocks in signed-log form.

    Returns a dict with keys "MM", "MN", "NM", "NN"; each value is a pair
    (sign, logmag) of (l_max+1, l_max+1) arrays indexed [J_out, J_in] with
    sign*exp(logmag) = G^{PP'} e^{+x}.  Rows/columns below max(1, |m|) are
    zero.  "MN" and "NM" vanish identically for m = 0.
    """
    _check_direction(direction)
    if direction == "21":
        # source on the -z side: every scalar element of composite order
        # L+L' picks up (-1)^{L+L'}, which reduces to an entrywise parity
        # factor together with a sign flip of the polarization-mixing blocks
        fwd = em_log_blocks(l_max, m, x, "12")
        jv = np.arange(l_max + 1)
        par = np.where((jv[:, None] + jv[None, :]) % 2 == 0, 1.0, -1.0)
        out = {}
        for key, flip in (("MM", 1.0), ("MN", -1.0), ("NM", -1.0), ("NN", 1.0)):
            s, lg = fwd[key]
            out[key] = (s * par * flip, lg)
        return out
    m = int(m)
    n = l_max + 1
    w0, wm, wp, a_r, b_r = _em_weights(l_max, m)
    # scalar blocks at shifted projections, one order deeper for J+-1 slices,
    # front-padded with a zero row/column so J-1 = -1 slices read as zero
    ublocks = {}
    for mu in {abs(m - 1), abs(m), abs(m + 1)}:
        s, lg = u_log_block(l_max + 1, mu, x, "12")
        sp = np.zeros((l_max + 3, l_max + 3))
        lp = np.full((l_max + 3, l_max + 3), -np.inf)
        sp[1:, 1:] = s
        lp[1:, 1:] = lg
        ublocks[mu] = (sp, lp)
    jlo = max(1, abs(m))

    def upart(mu, roff, coff):
        s, lg = ublocks[abs(mu)]
        return (s[1 + roff:1 + roff + n, 1 + coff:1 + coff + n],
                lg[1 + roff:1 + roff + n, 1 + coff:1 + coff + n])

    jv = np.arange(n, dtype=float)
    a_o = -a_r[:n]
    b_o = -b_r[:n]
    blocks = {}
    for key in ("MM", "MN", "NM", "NN"):
        parts = []
        for iq, q in enumerate((-1, 0, 1)):
            mu = m - q
            if key == "MM":
                w_t = w0[iq, :n]
                s, lg = upart(mu, 0, 0)
                parts.append((np.outer(w_t, w0[iq, :n]), s, lg))
            elif key == "NM":
                w_t = wm[iq, :n] / np.where(a_r[:n] > 0, a_r[:n], 1.0)
                s, lg = upart(mu, -1, 0)  # rows J'-1
                parts.append((np.outer(w_t, w0[iq, :n]), s, lg))
            elif key == "MN":
                w_t = w0[iq, :n]
                s, lg = upart(mu, 0, -1)  # cols J-1
                parts.append((np.outer(w_t, a_o * wm[iq, :n]), s, lg))
                s, lg = upart(mu, 0, +1)  # cols J+1
                parts.append((np.outer(w_t, b_o * wp[iq, :n]), s, lg))
            else:  # NN
                w_t = wm[iq, :n] / np.where(a_r[:n] > 0, a_r[:n], 1.0)
                s, lg = upart(mu, -1, -1)
                parts.append((np.outer(w_t, a_o * wm[iq, :n]), s, lg))
                s, lg = upart(mu, -1, +1)
                parts.append((np.outer(w_t, b_o * wp[iq, :n]), s, lg))
        sign, logmag = _signed_log_sum(parts)
        if m == 0 and key in ("MN", "NM"):
            # exact selection rule: the q and -q contributions cancel
            # identically at m = 0, so suppress the rounding residue
            sign = np.zeros_like(sign)
            logmag = np.full_like(logmag, -np.inf)
        sign[:jlo, :] = 0.0
        sign[:, :jlo] = 0.0
        logmag[:jlo, :] = -np.inf
        logmag[:, :jlo] = -np.inf
        blocks[key] = (sign, logmag)
    return blocks


def u_em(l_out, l_in, m, kappa_d, direction="12"):
    """Electromagnetic translation matrix element as a 2x2 block.

    Parameters
    ----------
    l_out, l_in : int
        Target and source total angular momenta, both >= max(1, |m|).
    m : int
        Azimuthal index.
    kappa_d : float
        Dimensionless separation kappa*d > 0.
    direction : str
        "12" or "21".

    Returns
    -------
    ndarray, shape (2, 2)
        [[MM, MN], [NM, NN]] coupling source polarization (columns, order
        magnetic/electric) to target polarization (rows).  The magnetic-
        electric mixing entries are exactly zero for m = 0.
    """
    _check_direction(direction)
    jlo = max(1, abs(m))
    if l_out < jlo or l_in < jlo:
        raise ValueError("l_out and l_in must be >= max(1, |m|)")
    if not kappa_d > 0.0:
        raise ValueError("kappa_d must be positive, got %r" % (kappa_d,))
    lm = max(l_out, l_in)
    blocks = em_log_blocks(lm, m, kappa_d, direction)
    out = np.empty((2, 2))
    with np.errstate(under="ignore"):
        for i, prow in enumerate("MN"):
            for j, pcol in enumerate("MN"):
                s, lg = blocks[prow + pcol]
                out[i, j] = s[l_out, l_in] * np.exp(lg[l_out, l_in] - kappa_d)
    return out


def translation_block_em(l_max, m, kappa_d, direction="12"):
    """Dense EM translation block over J = max(1,|m|) .. l_max.

    Entries have shape (n, n, 2, 2) with the same polarization layout as
    `u_em`; unscaled, so intended for moderate kappa_d.
    """
    _check_direction(direction)
    jlo = max(1, abs(m))
    if l_max < jlo:
        raise ValueError("l_max=%r below max(1, |m|)=%r" % (l_max, jlo))
    blocks = em_log_blocks(l_max, m, kappa_d, direction)
    n = l_max + 1 - jlo
    ent = np.zeros((n, n, 2, 2))
    with np.errstate(under="ignore"):
        for i, prow in enumerate("MN"):
            for j, pcol in enumerate("MN"):
                s, lg = blocks[prow + pcol]
                ent[:, :, i, j] = (s * np.exp(lg - kappa_d))[jlo:, jlo:]
    return TranslationBlock(m=m, entries=ent, direction=direction)
