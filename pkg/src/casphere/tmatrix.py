"""Single-sphere scattering T-matrices on the imaginary frequency axis.

Supported laws: the Robin family (Dirichlet, Neumann, Robin with zeta =
lambda/R >= 0) for a scalar field, and dielectric or perfectly conducting
spheres for the electromagnetic field.  All multipoles decouple, so each
T-matrix is diagonal in (l, m) with entries independent of m.

Internally every entry is evaluated in the scaled form T_l e^{-2 kappa R}
through ratio chains of scaled Bessel functions; the ratios keep every
bracket a sum of same-sign terms (no cancellation), which is what makes
l ~ 40-60 at small kappa R feasible.  Public functions return the unscaled
values, with the (-1)^l prefactor convention of the imaginary-frequency
scattering amplitude.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import spherical_jn, spherical_yn

from .specfun import bessel_ik_half_chain

__all__ = [
    "Robin",
    "Dirichlet",
    "Neumann",
    "Dielectric",
    "PerfectConductor",
    "Dispersive",
    "SphereSpec",
    "TDiagonal",
    "phase_shift",
    "t_scalar_imag",
    "t_em_imag",
    "t_diagonal",
    "t_low_kappa_series",
]


# ---------------------------------------------------------------------------
# boundary/material laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Robin:
    """Robin condition phi - zeta R d_n phi = 0 with zeta = lambda/R >= 0.

    zeta = 0 is Dirichlet, zeta = +inf is Neumann.  Negative zeta in
    (-1, 0) produces T-matrix poles (bound states) and is rejected.
    """

    zeta: float


@dataclass(frozen=True)
class Dirichlet:
    pass


@dataclass(frozen=True)
class Neumann:
    pass


@dataclass(frozen=True)
class Dielectric:
    """Frequency-independent permittivity and permeability, both > 0."""

    eps: float
    mu: float


@dataclass(frozen=True)
class PerfectConductor:
    pass


@dataclass(frozen=True)
class Dispersive:
    """Extension point: eps_mu(kappa) -> (eps, mu), both > 0 at every kappa.

    The core treats the callable opaquely, resolving it pointwise on the
    imaginary axis; only constant materials carry low-frequency series.
    """

    eps_mu: object


_SCALAR_LAWS = (Robin, Dirichlet, Neumann)
_EM_LAWS = (Dielectric, PerfectConductor, Dispersive)


def is_scalar_law(law):
    return isinstance(law, _SCALAR_LAWS)


def is_em_law(law):
    return isinstance(law, _EM_LAWS)


@dataclass(frozen=True)
class SphereSpec:
    """A sphere of given radius with a boundary/material law."""

    radius: float
    law: object

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError("radius must be positive, got %r" % (self.radius,))
        law = self.law
        if isinstance(law, Robin):
            if law.zeta < 0.0:
                raise ValueError(
                    "Robin zeta must be >= 0 (zeta in (-1, 0) has bound-state "
                    "poles on the imaginary axis), got %r" % (law.zeta,))
        elif isinstance(law, Dielectric):
            if not (law.eps > 0.0 and law.mu > 0.0):
                raise ValueError("dielectric requires eps > 0 and mu > 0")
        elif isinstance(law, Dispersive):
            if not callable(law.eps_mu):
                raise ValueError("Dispersive.eps_mu must be callable")
        elif not isinstance(law, (Dirichlet, Neumann, PerfectConductor)):
            raise ValueError("unsupported law %r" % (law,))


@dataclass(frozen=True)
class TDiagonal:
    """Diagonal T-matrix of one sphere at fixed imaginary wavenumber.

    entries maps (l, polarization) to the real value T_l; polarization is
    "scalar" for Robin-family laws and "M"/"E" for electromagnetic ones.
    A single value per (l, polarization) serves all |m| <= l.
    """

    kappa: float
    entries: dict


def _effective_zeta(law):
    """Robin parameter with Dirichlet/Neumann folded in; None means Neumann."""
    if isinstance(law, Dirichlet):
        return 0.0
    if isinstance(law, Neumann):
        return None
    if isinstance(law, Robin):
        return None if math.isinf(law.zeta) else law.zeta
    raise TypeError("scalar T-matrix requires a Robin-family law, got %r"
                    % (law,))


# ---------------------------------------------------------------------------
# real-frequency phase shifts
# ---------------------------------------------------------------------------

def phase_shift(spec, l, k):
    """Scattering phase shift delta_l(k) of a Robin-family sphere.

    Parameters
    ----------
    spec : SphereSpec
        Must carry a scalar law.
    l : int
        Partial wave index, l >= 0.
    k : float
        Real wavenumber, k > 0.

    Returns
    -------
    float
        delta_l with cot(delta_l) = [n_l(x) - zeta x n_l'(x)] /
        [j_l(x) - zeta x j_l'(x)], x = kR, evaluated through atan2 so a
        vanishing denominator (resonance, delta = pi/2) is a regular
        value rather than an error.
    """
    if not k > 0.0:
        raise ValueError("wavenumber must be positive, got %r" % (k,))
    if l < 0:
        raise ValueError("l must be >= 0")
    zeta = _effective_zeta(spec.law)
    x = k * spec.radius
    j, dj = spherical_jn(l, x), spherical_jn(l, x, derivative=True)
    y, dy = spherical_yn(l, x), spherical_yn(l, x, derivative=True)
    if zeta is None:  # Neumann: the 1/zeta terms drop out of the ratio
        num, den = dy, dj
    else:
        num, den = y - zeta * x * dy, j - zeta * x * dj
    delta = math.atan2(den, num)
    # fold into the principal branch (-pi/2, pi/2]
    if delta <= -0.5 * math.pi:
        delta += math.pi
    elif delta > 0.5 * math.pi:
        delta -= math.pi
    return delta


# ---------------------------------------------------------------------------
# scaled diagonal entries (imaginary frequency)
# ---------------------------------------------------------------------------

def t_scalar_log(spec, l_max, kappa):
    """Scaled scalar entries: (sign, log|.|) of T_l e^{-2 kappa R}.

    Here T_l carries the internal sign convention T_l = -(-1)^l T_l^{print}
    in which the Dirichlet diagonal is negative for every l; the energy
    determinant is invariant under this relabeling and it keeps all
    downstream products sign-transparent.
    """
    if not kappa > 0.0:
        raise ValueError("kappa must be positive, got %r" % (kappa,))
    zeta = _effective_zeta(spec.law)
    z = kappa * spec.radius
    ch = bessel_ik_half_chain(l_max, z)
    lv = np.arange(l_max + 1, dtype=float)
    # log of (i_l/k_l) e^{-2z} = (pi/2) (I e^{-z})/(K e^{+z})
    log_ratio = math.log(math.pi / 2.0) + ch.log_i - ch.log_k
    zrho = z * ch.rho          # z i'_l/i_l - l  (positive)
    zsig_l = z * ch.sigma - lv  # l - z k'_l/k_l  (>= l + 1, no cancellation)
    if zeta == 0.0:  # Dirichlet: T = -i_l/k_l
        sign = -np.ones(l_max + 1)
        logmag = log_ratio
    elif zeta is None:  # Neumann: T = +(i_l/k_l)(l + z rho)/(z sigma - l)
        sign = np.ones(l_max + 1)
        logmag = log_ratio + np.log(lv + zrho) - np.log(zsig_l)
    else:
        # T = -(i_l/k_l) (1 - zeta l - zeta z rho)/(1 + zeta (z sigma - l))
        num = 1.0 - zeta * (lv + zrho)
        den = 1.0 + zeta * zsig_l
        sign = -np.sign(num)
        with np.errstate(divide="ignore"):
            logmag = log_ratio + np.where(num != 0.0,
                                          np.log(np.abs(num)), -np.inf) \
                - np.log(den)
    return sign, logmag


def _em_log_parts(l_max, z):
    """Per-order logs used by the electromagnetic brackets at argument z."""
    ch = bessel_ik_half_chain(l_max, z)
    lv = np.arange(l_max + 1, dtype=float)
    log_i = ch.log_i + 0.5 * math.log(math.pi / (2.0 * z))   # log i_l e^{-z}
    log_k = ch.log_k + 0.5 * math.log(2.0 / (math.pi * z))   # log k_l e^{+z}
    log_wi = log_i + np.log(1.0 + lv + z * ch.rho)           # (z i_l)' e^{-z} > 0
    log_wk = log_k + np.log(z * ch.sigma - lv - 1.0)         # |(z k_l)'| e^{+z}
    return log_i, log_k, log_wi, log_wk


def t_em_log(spec, l_max, kappa):
    """Scaled EM entries: {"M": (sign, log), "E": (sign, log)} of T e^{-2z}.

    Same internal sign convention as `t_scalar_log`; index l = 0 is zeroed
    (no monopole radiation).
    """
    if not kappa > 0.0:
        raise ValueError("kappa must be positive, got %r" % (kappa,))
    law = spec.law
    z = kappa * spec.radius
    out = {}
    if isinstance(law, PerfectConductor):
        ch = bessel_ik_half_chain(l_max, z)
        lv = np.arange(l_max + 1, dtype=float)
        log_ratio = math.log(math.pi / 2.0) + ch.log_i - ch.log_k
        # magnetic: -i_l/k_l ; electric: -(z i_l)'/(z k_l)' > 0
        sign_m = -np.ones(l_max + 1)
        logm = log_ratio
        sign_e = np.ones(l_max + 1)
        loge = log_ratio + np.log(1.0 + lv + z * ch.rho) \
            - np.log(z * ch.sigma - lv - 1.0)
    elif isinstance(law, (Dielectric, Dispersive)):
        if isinstance(law, Dispersive):
            eps, mu = law.eps_mu(kappa)
            if not (eps > 0.0 and mu > 0.0):
                raise ValueError("eps_mu(kappa) must return positive values")
        else:
            eps, mu = law.eps, law.mu
        n = math.sqrt(eps * mu)
        li_z, lk_z, lwi_z, lwk_z = _em_log_parts(l_max, z)
        li_n, _, lwi_n, _ = _em_log_parts(l_max, n * z)
        sign_m = np.empty(l_max + 1)
        logm = np.empty(l_max + 1)
        sign_e = np.empty(l_max + 1)
        loge = np.empty(l_max + 1)
        for pol, sgn_arr, log_arr in (("M", sign_m, logm), ("E", sign_e, loge)):
            eta = math.sqrt(eps / mu) if pol == "M" else math.sqrt(mu / eps)
            log_eta = 0.5 * (math.log(eps) - math.log(mu))
            if pol == "E":
                log_eta = -log_eta
            log_n = 0.5 * (math.log(eps) + math.log(mu))
            # numerator: eta i(z) Wi(nz) - n i(nz) Wi(z), may cancel
            t1 = log_eta + li_z + lwi_n
            t2 = log_n + li_n + lwi_z
            hi = np.maximum(t1, t2)
            with np.errstate(under="ignore"):
                num = np.exp(t1 - hi) - np.exp(t2 - hi)
            # denominator: eta k(z) Wi(nz) + n i(nz) |Wk(z)|, all positive
            d1 = log_eta + lk_z + lwi_n
            d2 = log_n + li_n + lwk_z
            logden = np.logaddexp(d1, d2)
            sgn_arr[:] = -np.sign(num)
            with np.errstate(divide="ignore"):
                log_arr[:] = np.where(num != 0.0,
                                      np.log(np.abs(num)), -np.inf) \
                    + hi - logden
    else:
        raise TypeError("EM T-matrix requires Dielectric, Dispersive or "
                        "PerfectConductor, got %r" % (law,))
    sign_m[0] = 0.0
    sign_e[0] = 0.0
    logm[0] = -np.inf
    loge[0] = -np.inf
    out["M"] = (sign_m, logm)
    out["E"] = (sign_e, loge)
    return out


# ---------------------------------------------------------------------------
# public unscaled entries
# ---------------------------------------------------------------------------

def t_scalar_imag(spec, l, kappa):
    """Scalar T-matrix element T_l(i kappa) of a Robin-family sphere.

    Returns (-1)^l (pi/2) [(1/zeta + 1/2) I_nu(z) - z I'_nu(z)] /
    [(1/zeta + 1/2) K_nu(z) - z K'_nu(z)] with nu = l + 1/2, z = kappa R;
    Dirichlet is the zeta -> 0 limit and Neumann drops the 1/zeta terms.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    sign, logmag = t_scalar_log(spec, l, kappa)
    z = kappa * spec.radius
    pref = -1.0 if l % 2 == 0 else 1.0  # -(-1)^l undoes the internal sign
    return pref * float(sign[l]) * math.exp(float(logmag[l]) + 2.0 * z)


def t_em_imag(spec, l, kappa):
    """EM T-matrix elements (T_M, T_E) of a dielectric or PEC sphere.

    T_M is the magnetic (TE) channel; T_E follows by interchanging eps
    and mu.  Both vanish identically for eps = mu = 1.
    """
    if l < 1:
        raise ValueError("EM multipoles start at l = 1")
    blocks = t_em_log(spec, l, kappa)
    z = kappa * spec.radius
    pref = -1.0 if l % 2 == 0 else 1.0
    out = []
    for pol in ("M", "E"):
        sign, logmag = blocks[pol]
        out.append(pref * float(sign[l]) * math.exp(float(logmag[l]) + 2.0 * z))
    return tuple(out)


def t_diagonal(spec, l_max, kappa):
    """All diagonal entries up to l_max as a TDiagonal container."""
    entries = {}
    if is_scalar_law(spec.law):
        sign, logmag = t_scalar_log(spec, l_max, kappa)
        z = kappa * spec.radius
        for l in range(l_max + 1):
            pref = -1.0 if l % 2 == 0 else 1.0
            entries[(l, "scalar")] = pref * float(sign[l]) \
                * math.exp(float(logmag[l]) + 2.0 * z)
    else:
        blocks = t_em_log(spec, l_max, kappa)
        z = kappa * spec.radius
        for pol in ("M", "E"):
            sign, logmag = blocks[pol]
            for l in range(1, l_max + 1):
                pref = -1.0 if l % 2 == 0 else 1.0
                entries[(l, pol)] = pref * float(sign[l]) \
                    * math.exp(float(logmag[l]) + 2.0 * z)
    return TDiagonal(kappa=kappa, entries=entries)


# ---------------------------------------------------------------------------
# exact low-frequency series (Robin family and PEC are rational)
# ---------------------------------------------------------------------------

def _fact(n):
    return math.factorial(n)


def _dfact(n):
    # (2k+1)!! etc.; n = -1 gives 1
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _series_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[:n - i]):
            if bj != 0:
                out[i + j] += ai * bj
    return out


def _series_inv(a, n):
    if a[0] == 0:
        raise ZeroDivisionError("series has no constant term")
    inv = [Fraction(0)] * n
    inv[0] = 1 / a[0]
    for k in range(1, n):
        s = Fraction(0)
        for j in range(1, min(k, len(a) - 1) + 1):
            s += a[j] * inv[k - j]
        inv[k] = -s / a[0]
    return inv


def t_scalar_series_fractions(law, l, n_terms, channel=None):
    """Exact Taylor coefficients of the internal-sign T_l(i kappa).

    Returns [c_0, c_1, ...] with T_l = sum_k c_k z^{2l+1+k}, z = kappa R,
    as Fractions.  `channel` selects "M"/"E" for PerfectConductor; Robin
    zeta enters through its exact binary value.
    """
    n = n_terms + 2 * l + 2  # padding for intermediate products
    # regular kernel: i_l = z^l sum_j a_j z^{2j}
    a = [Fraction(0)] * n
    j = 0
    while 2 * j < n:
        a[2 * j] = Fraction(1, (2 ** j) * _fact(j) * _dfact(2 * l + 2 * j + 1))
        j += 1
    # z i_l' = z^l sum_j (l+2j) a_j z^{2j}
    b = [Fraction(0)] * n
    j = 0
    while 2 * j < n:
        b[2 * j] = (l + 2 * j) * a[2 * j]
        j += 1
    # outgoing kernel: k_l = e^{-z} z^{-(l+1)} P(z), P of degree l
    p = [Fraction(0)] * (l + 2)
    for i in range(l + 1):
        c_i = Fraction(_fact(l + i), _fact(i) * _fact(l - i) * 2 ** i)
        p[l - i] = c_i
    # z k_l' = e^{-z} z^{-(l+1)} [z P' - z P - (l+1) P]
    q = [Fraction(0)] * (l + 2)
    for i in range(l + 1):
        q[i] -= (l + 1) * p[i]
        if i + 1 <= l + 1:
            q[i + 1] -= p[i]
    for i in range(1, l + 1):
        q[i] += i * p[i]

    def bracket(zeta_frac, num_side):
        if num_side:
            if zeta_frac is None:  # Neumann: z i'
                return b
            return [ai - zeta_frac * bi for ai, bi in zip(a, b)]
        if zeta_frac is None:  # Neumann: z k'
            return list(q)
        return [pi - zeta_frac * qi
                for pi, qi in zip(p + [Fraction(0)] * (n - len(p)),
                                  q + [Fraction(0)] * (n - len(q)))]

    if isinstance(law, (Robin, Dirichlet, Neumann)):
        zeta = _effective_zeta(law)
        zf = None if zeta is None else Fraction(zeta)
        num = bracket(zf, True)
        den = bracket(zf, False)
    elif isinstance(law, PerfectConductor):
        if channel == "M":
            num, den = a, list(p)
        elif channel == "E":
            # (z i)' = i + z i' ; (z k)' = k + z k'
            num = [ai + bi for ai, bi in zip(a, b)]
            den = [pi + qi for pi, qi in zip(p + [Fraction(0)], q)]
        else:
            raise ValueError("PEC series requires channel 'M' or 'E'")
    else:
        raise TypeError("rational series requires Robin-family or PEC law")

    # T = -z^{2l+1} e^{z} num(z)/den(z)
    e = [Fraction(1, _fact(k)) for k in range(n)]
    den_full = den + [Fraction(0)] * (n - len(den))
    series = _series_mul(_series_mul(num, e, n), _series_inv(den_full, n), n)
    return [-c for c in series[:n_terms]]


def _alpha_em(eps_like, l, radius):
    """Static multipole polarizability [(x-1)/(x + (l+1)/l)] R^{2l+1}."""
    return (eps_like - 1.0) / (eps_like + (l + 1.0) / l) * radius ** (2 * l + 1)


def _gamma13(mu_like, eps_like, radius):
    return -(4.0 + mu_like * (eps_like * mu_like + mu_like - 6.0)) \
        / (5.0 * (mu_like + 2.0) ** 2) * radius ** 5


def _gamma14(mu_like, radius):
    return (4.0 / 9.0) * ((mu_like - 1.0) / (mu_like + 2.0)) ** 2 * radius ** 6


def t_low_kappa_series(spec, l, order):
    """Low-frequency expansion of the T-matrix entries.

    Parameters
    ----------
    spec : SphereSpec
    l : int
        Partial wave (l >= 1 for EM laws).
    order : int
        Number of powers beyond the leading kappa^{2l+1}; 0 <= order <= 4.
        EM laws support order <= 3 for l = 1 (the printed gamma
        coefficients) and order <= 1 otherwise.

    Returns
    -------
    dict
        channel -> {power: coefficient} with T_channel(i kappa) =
        sum coeff * kappa^power; channels are "scalar" or "M"/"E".
        The kappa^{2l+2} coefficient of the EM channels is exactly zero.
    """
    if order < 0 or order > 4:
        raise ValueError("unsupported order %r" % (order,))
    law = spec.law
    base = 2 * l + 1
    if is_scalar_law(law):
        fr = t_scalar_series_fractions(law, l, order + 1)
        pref = -1.0 if l % 2 == 0 else 1.0  # undo internal sign
        coeffs = {base + k: pref * float(c) * spec.radius ** (base + k)
                  for k, c in enumerate(fr)}
        return {"scalar": coeffs}
    if l < 1:
        raise ValueError("EM multipoles start at l = 1")
    pref = -1.0 if l % 2 == 0 else 1.0  # undo internal sign
    if isinstance(law, PerfectConductor):
        out = {}
        for pol in ("M", "E"):
            fr = t_scalar_series_fractions(law, l, order + 1, channel=pol)
            out[pol] = {base + k: pref * float(c) * spec.radius ** (base + k)
                        for k, c in enumerate(fr)}
        return out
    if isinstance(law, Dispersive):
        raise ValueError("low-frequency series requires a constant material")
    # dielectric: printed static coefficients (gammas known for l = 1 only)
    if order > (3 if l == 1 else 1):
        raise ValueError("unsupported order %r for dielectric l=%d"
                         % (order, l))
    alpha = {"E": _alpha_em(law.eps, l, spec.radius),
             "M": _alpha_em(law.mu, l, spec.radius)}
    g13 = {"M": _gamma13(law.mu, law.eps, spec.radius),
           "E": _gamma13(law.eps, law.mu, spec.radius)}
    g14 = {"M": _gamma14(law.mu, spec.radius),
           "E": _gamma14(law.eps, spec.radius)}
    lead_sign = -1.0 if l % 2 == 0 else 1.0  # (-1)^{l-1}
    out = {}
    for pol in ("M", "E"):
        coeffs = {base: lead_sign * (l + 1.0) * alpha[pol]
                  / (l * _dfact(2 * l + 1) * _dfact(2 * l - 1))}
        if order >= 1:
            coeffs[base + 1] = 0.0
        if order >= 2:
            coeffs[base + 2] = g13[pol]
        if order >= 3:
            coeffs[base + 3] = g14[pol]
        out[pol] = coeffs
    return out
