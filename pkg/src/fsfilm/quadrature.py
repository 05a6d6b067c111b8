"""Fuchs-Sondheimer integral over [1, inf) for complex decay parameter.

The integral

    I(w, p) = int_1^inf (t^-3 - t^-5) (1 - exp(-w t)) / (1 - p exp(-w t)) dt

is split at ``t_cut``: adaptive Gauss-Kronrod (7/15) on ``[1, t_cut]`` and the
closed-form tail of ``t^-3 - t^-5`` beyond it, where the exponential ratio is
within ``rel_tol / 10`` of one.

For complex ``w`` the path runs along the ray ``t = 1 + s conj(w)/|w|``
instead of the real axis. On that ray ``w t`` is real, so ``exp(-w t)`` decays
at rate ``|w|`` without oscillating. The integrand is analytic and pole-free
in the sector between the ray and the real axis (``Re(w t) > 0`` there, while
the poles of the exponential ratio sit at ``Re(w t) = ln p < 0``), and it
decays like ``t^-3``, so the value is unchanged.
"""
import math
import threading

import numpy as np

DEFAULT_REL_TOL = 1e-10
MIN_REL_TOL = 1e-14
MAX_REL_TOL = 1e-4
MIN_RE_W = 1e-6
MAX_EVALUATIONS = 1_000_000

# Kronrod 15-point nodes on [-1, 1]; odd-indexed entries are the Gauss 7 nodes.
_XK = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144845693013,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_WG = np.zeros(15)
_WG[1::2] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
]


_TINY = np.finfo(float).tiny


class QuadratureError(ArithmeticError):
    """The adaptive rule did not reach the requested tolerance within budget."""


_calls = 0
_calls_lock = threading.Lock()


def call_count():
    """Number of :func:`fuchs_integral` invocations since the last reset."""
    return _calls


def reset_call_count():
    global _calls
    with _calls_lock:
        _calls = 0


def _integrand(s, w, p):
    """Integrand at ``t = 1 + s conj(w)/|w|``, where ``w t = w + s |w|``."""
    absw = np.abs(w)
    t = 1.0 + s * (np.conj(w) / absw)
    t2 = t * t
    weight = (t2 - 1.0) / (t2 * t2 * t)
    # m = expm1(-w t) assembled from real parts; numpy's complex expm1 is slow
    x = -(w.real + s * absw)
    y = -w.imag
    m = np.empty(np.broadcast(x, y).shape, dtype=complex)
    m.real = np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2
    m.imag = np.exp(x) * np.sin(y)
    return weight * m / (p - 1.0 + p * m)


def _error_estimate(f, kronrod, gauss, half):
    # QUADPACK scaling of |K - G| against the integrand's variation on the panel
    resasc = half * (np.abs(f - (kronrod / (2.0 * half))[:, None]) @ _WK)
    raw = np.abs(kronrod - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * raw / resasc) ** 1.5)
    return np.where(resasc > 0.0, scaled, raw)


def cutoff(w, p, rel_tol):
    """Path length ``s_cut`` beyond which the exponential ratio is within rel_tol/10 of 1.

    On the integration ray ``|exp(-w t)| = exp(-Re(w) - s |w|)``; for real
    ``w`` this is ``t_cut - 1`` with ``t_cut = ln(10 (1+p) / ((1-p) rel_tol)) / w``.
    """
    bound = math.log(10.0 * (1.0 + p) / ((1.0 - p) * rel_tol))
    return max(0.0, (bound - w.real) / abs(w))


def tail(t_cut):
    """int_{t_cut}^inf (t^-3 - t^-5) dt; ``t_cut`` may be complex."""
    return 1.0 / (2.0 * t_cut ** 2) - 1.0 / (4.0 * t_cut ** 4)


def _check(w, p, rel_tol):
    if not (w.real >= MIN_RE_W):
        raise ValueError(f"Re(w) = {w.real!r} is outside the validated range Re(w) >= {MIN_RE_W}")
    if not (0.0 <= p < 1.0):
        raise ValueError(f"p = {p!r} must lie in [0, 1) for quadrature")
    if not (MIN_REL_TOL <= rel_tol <= MAX_REL_TOL):
        raise ValueError(f"rel_tol = {rel_tol!r} must lie in [{MIN_REL_TOL}, {MAX_REL_TOL}]")


def fuchs_integral(w, p, rel_tol=DEFAULT_REL_TOL):
    """Evaluate I(w, p) to relative accuracy ``rel_tol``.

    Parameters
    ----------
    w : complex
        Thickness over (complex) mean free path; ``Re(w)`` must be positive.
    p : float
        Specularity in ``[0, 1)``. The specular case is handled analytically
        by :func:`phi_inverse`.
    rel_tol : float
        Target relative error in ``[1e-14, 1e-4]``.

    Returns
    -------
    complex

    Raises
    ------
    QuadratureError
        If the evaluation budget runs out before convergence.
    """
    return complex(fuchs_integral_many([w], p, rel_tol)[0])


def fuchs_integral_many(ws, p, rel_tol=DEFAULT_REL_TOL):
    """Vectorised :func:`fuchs_integral` over an array of ``w`` values.

    Each ``w`` is refined and summed independently, so every entry is
    bit-identical to the scalar call for the same arguments.
    """
    global _calls
    ws = np.atleast_1d(np.asarray(ws, dtype=complex))
    p = float(p)
    for w in ws:
        _check(complex(w), p, rel_tol)
    with _calls_lock:
        _calls += len(ws)

    n = len(ws)
    direction = np.conj(ws) / np.abs(ws)
    s_cut = np.array([cutoff(complex(w), p, rel_tol) for w in ws])
    tails = tail(1.0 + s_cut * direction)
    result = tails.copy()

    # geometric starting partition in 1 + s: the integrand decays like t^-3
    owners, lo, hi = [], [], []
    for k in range(n):
        if s_cut[k] == 0.0:
            continue
        n_init = max(1, math.ceil(math.log2(1.0 + s_cut[k])))
        edges = np.geomspace(1.0, 1.0 + s_cut[k], n_init + 1) - 1.0
        edges[0] = 0.0
        owners.append(np.full(n_init, k))
        lo.append(edges[:-1])
        hi.append(edges[1:])
    if not owners:
        return result
    owner = np.concatenate(owners)
    lo = np.concatenate(lo)
    hi = np.concatenate(hi)

    accepted = np.zeros(n, dtype=complex)
    accepted_err = np.zeros(n)
    evaluations = np.zeros(n, dtype=np.int64)
    while len(owner):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        nodes = mid[:, None] + half[:, None] * _XK[None, :]
        f = _integrand(nodes, ws[owner][:, None], p)
        # dt = direction ds, |direction| = 1
        f = f * direction[owner][:, None]
        kronrod = half * (f * _WK).sum(axis=1)
        gauss = half * (f * _WG).sum(axis=1)
        err = _error_estimate(f, kronrod, gauss, half)

        active = np.unique(owner)
        evaluations += 15 * np.bincount(owner, minlength=n)
        panel_sum = _group_sum(owner, kronrod, n)
        err_sum = np.bincount(owner, weights=err, minlength=n)
        count = np.bincount(owner, minlength=n)

        estimate = accepted + panel_sum + tails
        budget = 0.5 * rel_tol * np.maximum(np.abs(estimate), _TINY)
        converged = np.zeros(n, dtype=bool)
        converged[active] = accepted_err[active] + err_sum[active] <= budget[active]
        result[converged] = estimate[converged]

        stuck = ~converged & (evaluations >= MAX_EVALUATIONS)
        if stuck.any():
            k = int(np.flatnonzero(stuck)[0])
            raise QuadratureError(
                f"no convergence for w={complex(ws[k])!r}, p={p!r} after {evaluations[k]} "
                f"evaluations (error estimate {accepted_err[k] + err_sum[k]:.3e}, "
                f"target {budget[k]:.3e})"
            )

        # freeze panels well inside their share of the remaining error budget
        share = 0.5 * np.maximum(budget - accepted_err, 0.0) / np.maximum(count, 1)
        live = ~converged[owner]
        done = live & (err <= share[owner])
        accepted += _group_sum(owner[done], kronrod[done], n)
        accepted_err += np.bincount(owner[done], weights=err[done], minlength=n)

        split = live & ~done
        owner = np.concatenate([owner[split], owner[split]])
        lo, hi = np.concatenate([lo[split], mid[split]]), np.concatenate([mid[split], hi[split]])
        # keep each owner's panels contiguous and in t order
        order = np.lexsort((lo, owner))
        owner, lo, hi = owner[order], lo[order], hi[order]
    return result


def _group_sum(owner, values, n):
    return (np.bincount(owner, weights=values.real, minlength=n)
            + 1j * np.bincount(owner, weights=values.imag, minlength=n))


def phi_inverse(w, p, rel_tol=DEFAULT_REL_TOL):
    """1/Phi(w) for the Fuchs film conductivity.

    Exactly ``1/w`` when ``p == 1``; the integral is not evaluated then.
    """
    w = complex(w)
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p = {p!r} must lie in [0, 1]")
    if p == 1.0:
        return 1.0 / w
    return combine(w, p, fuchs_integral(w, p, rel_tol))


def combine(w, p, integral):
    """1/Phi(w) from an already evaluated Fuchs integral."""
    return 1.0 / w - 1.5 / (w * w) * (1.0 - p) * integral
