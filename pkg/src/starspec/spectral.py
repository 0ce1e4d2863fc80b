"""Entire-function primitives of the star-graph delay operator.

The building blocks are the two solutions of -y'' = lam*y normalized at 0,

    S(0, x, lam) = sin(rho*x)/rho,      S(1, x, lam) = cos(rho*x),

with rho**2 = lam.  Both are entire functions of lam (even in rho, so the
square-root branch never matters), and every quantity in this module is
assembled from them:

* boundary_form(nu, lam, H)   -- the Robin form S'(nu,1,lam) + H*S(nu,1,lam),
* char_det_unperturbed(...)   -- the characteristic determinant of the
                                 potential-free, H=0 problem,
* unperturbed_eigenvalues(..) -- its zero set, in closed form,
* boundary_form_zeros(...)    -- certified zeros of the nu=0 Robin form,
                                 which carry the per-edge moment nodes.

All evaluators accept scalars or arrays for ``lam`` (real or complex) and
switch to a Maclaurin series in lam*x**2 near the origin where the closed
trigonometric forms lose digits to cancellation.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .config import ProblemConfig
from .errors import ConfigError, RootSearchError

# Series is used when |lam*x^2| < _SERIES_U_MAX, i.e. |rho*x| < 0.5.
_SERIES_U_MAX = 0.25
_SERIES_TERMS = 12

_C_S0 = np.array([1.0 / math.factorial(2 * k + 1) for k in range(_SERIES_TERMS)])
_C_S1 = np.array([1.0 / math.factorial(2 * k) for k in range(_SERIES_TERMS)])
_C_T0 = np.array([(k + 1) / math.factorial(2 * k + 3) for k in range(_SERIES_TERMS)])


def _horner(coeffs: np.ndarray, w):
    acc = np.zeros_like(w) + coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = c + acc * w
    return acc


def _split_small(x, lam):
    """Broadcast x and lam; return (x, lam, u, small-mask) with u = lam*x^2."""
    x = np.asarray(x)
    lam = np.asarray(lam)
    x, lam = np.broadcast_arrays(x, lam)
    u = lam * x * x
    return x, lam, u, np.abs(u) < _SERIES_U_MAX


def _from_rho(nu: int, x, rho):
    """Raw evaluation from rho itself (test hook for evenness in rho)."""
    x = np.asarray(x, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    z = rho * x
    if nu == 1:
        return np.cos(z)
    small = np.abs(z) < 0.5
    out = np.empty(np.broadcast(x, rho).shape, dtype=complex)
    out[small] = (x * _horner(_C_S0, -(z * z)))[small]
    big = ~small
    out[big] = (np.sin(z) / np.where(big, rho, 1.0))[big]
    return out if out.ndim else out[()]


def S(nu: int, x, lam):
    """S(0,x,lam) = sin(rho x)/rho, S(1,x,lam) = cos(rho x); entire in lam."""
    if nu not in (0, 1):
        raise ValueError(f"nu must be 0 or 1, got {nu!r}")
    x, lam, u, small = _split_small(x, lam)
    if np.iscomplexobj(lam) or np.iscomplexobj(x):
        rho = np.sqrt(lam.astype(complex))
        z = rho * x
        out = np.empty(np.broadcast(x, lam).shape, dtype=complex)
        w = -u
        if nu == 0:
            out[small] = (x * _horner(_C_S0, w))[small]
            big = ~small
            # |z| >= 0.5 on the big branch, so rho != 0 there
            out[big] = (np.sin(z) / np.where(big, rho, 1.0))[big]
        else:
            out[small] = _horner(_C_S1, w)[small]
            out[~small] = np.cos(z)[~small]
        return out if out.ndim else out[()]

    x = x.astype(float)
    lam = lam.astype(float)
    out = np.empty(np.broadcast(x, lam).shape, dtype=float)
    w = -u
    pos = (~small) & (lam >= 0)
    neg = (~small) & (lam < 0)
    r = np.sqrt(np.where(pos, lam, 1.0))
    t = np.sqrt(np.where(neg, -lam, 1.0))
    if nu == 0:
        out[small] = (x * _horner(_C_S0, w))[small]
        out[pos] = (np.sin(r * x) / r)[pos]
        out[neg] = (np.sinh(t * x) / t)[neg]
    else:
        out[small] = _horner(_C_S1, w)[small]
        out[pos] = np.cos(r * x)[pos]
        out[neg] = np.cosh(t * x)[neg]
    return out if out.ndim else out[()]


def S_x(nu: int, x, lam):
    """d/dx of S.  S_x(0,...) = cos(rho x); S_x(1,...) = -lam * S(0,...)."""
    if nu == 0:
        return S(1, x, lam)
    if nu == 1:
        return -np.asarray(lam) * S(0, x, lam)
    raise ValueError(f"nu must be 0 or 1, got {nu!r}")


def S_lam(nu: int, x, lam, order: int = 1):
    """d^order/dlam^order of S, for order in {0, 1}.

    Only simple zeros are ever differentiated in this artifact, so higher
    orders are rejected.
    """
    if order == 0:
        return S(nu, x, lam)
    if order != 1:
        raise ValueError("lambda-derivatives of order >= 2 are not supported")
    if nu == 1:
        # d/dlam cos(rho x) = -x sin(rho x)/(2 rho) = -(x/2) S(0,x,lam)
        return -0.5 * np.asarray(x) * S(0, x, lam)
    if nu != 0:
        raise ValueError(f"nu must be 0 or 1, got {nu!r}")
    x, lam, u, small = _split_small(x, lam)
    dtype = complex if (np.iscomplexobj(lam) or np.iscomplexobj(x)) else float
    out = np.empty(np.broadcast(x, lam).shape, dtype=dtype)
    out[small] = (-(x**3) * _horner(_C_T0, -u))[small]
    big = ~small
    if np.any(big):
        lam_safe = np.where(big, lam, 1.0)
        closed = (x * S(1, x, lam) - S(0, x, lam)) / (2.0 * lam_safe)
        out[big] = closed[big]
    return out if out.ndim else out[()]


def boundary_form(nu: int, lam, H: float):
    """Robin form v(lam) = S'(nu, 1, lam) + H * S(nu, 1, lam)."""
    return S_x(nu, 1.0, lam) + H * S(nu, 1.0, lam)


def boundary_form_dlam(lam, H: float):
    """d/dlam of the nu=0 Robin form (used for Newton polishing of its zeros)."""
    return S_lam(1, 1.0, lam) + H * S_lam(0, 1.0, lam)


def edge_boundary_form(j: int, nu: int, lam, cfg: ProblemConfig):
    """v_{nu,j}(lam) for edge j of the configured graph."""
    return boundary_form(nu, lam, cfg.H_of(j))


def char_det_unperturbed(nu: int, lam, m: int):
    """Characteristic determinant of the zero-potential, H=0 problem.

    Assembled exactly as S'(nu,1)cos^{m-1} + (1-m) S(nu,1) cos^{m-2} rho sin rho,
    written through the stable evaluators (rho*sin(rho) = lam*S(0,1,lam)).
    """
    lam = np.asarray(lam)
    c = S(1, 1.0, lam)
    rs = lam * S(0, 1.0, lam)  # rho*sin(rho)
    if m == 2:
        cm2 = np.ones_like(c)
    else:
        cm2 = c ** (m - 2)
    return S_x(nu, 1.0, lam) * cm2 * c + (1 - m) * S(nu, 1.0, lam) * cm2 * rs


def char_det_unperturbed_factored(nu: int, lam, m: int):
    """Factored closed forms of the same determinant.

    nu=0:  cos^{m-2}(rho) * (m cos^2(rho) - (m-1))
    nu=1:  -m * lam * S(0,1,lam) * cos^{m-1}(rho)

    Products of stable factors; keeps full relative accuracy near the zeros,
    which is what the spectrum-product reconstruction needs.
    """
    lam = np.asarray(lam)
    c = S(1, 1.0, lam)
    if nu == 0:
        core = m * c * c - (m - 1)
        return core if m == 2 else c ** (m - 2) * core
    if nu == 1:
        return -m * lam * S(0, 1.0, lam) * c ** (m - 1)
    raise ValueError(f"nu must be 0 or 1, got {nu!r}")


def char_det_unperturbed_deflated(lam, m: int):
    """The nu=1 factored determinant with its root at lam=0 divided out."""
    lam = np.asarray(lam)
    return m * S(0, 1.0, lam) * S(1, 1.0, lam) ** (m - 1)


# ---------------------------------------------------------------------------
# closed-form zero sets of the unperturbed determinant


def _branches(nu: int, m: int):
    """Zero branches as (name, rho_of_k callable over k=1,2,..., multiplicity).

    The lam=0 root of the nu=1 determinant is handled separately.
    """
    if nu == 0:
        r0 = 0.5 * math.acos((m - 2) / m)
        branches = [
            ("phase_lo", lambda k: r0 + math.pi * (k - 1), 1),
            ("phase_hi", lambda k: math.pi - r0 + math.pi * (k - 1), 1),
        ]
        if m > 2:
            branches.append(("cos", lambda k: math.pi * (k - 0.5), m - 2))
        return branches
    if nu == 1:
        return [
            ("sin", lambda k: math.pi * k, 1),
            ("cos", lambda k: math.pi * (k - 0.5), m - 1),
        ]
    raise ValueError(f"nu must be 0 or 1, got {nu!r}")


def branch_zeros(branch: str, nu: int, cfg: ProblemConfig, count: int) -> np.ndarray:
    """First ``count`` zeros (in lam) of one named branch.

    Raises for a branch that is absent at this m (the cos branch of the
    nu=0 determinant has multiplicity m-2, i.e. it does not exist for m=2).
    """
    if nu == 1 and branch == "zero":
        return np.zeros(min(count, 1))
    for name, rho_of, _mult in _branches(nu, cfg.m):
        if name == branch:
            return np.array([rho_of(k) ** 2 for k in range(1, count + 1)])
    raise ConfigError(
        f"branch {branch!r} does not exist for nu={nu}, m={cfg.m} "
        "(its multiplicity there is zero)"
    )


def unperturbed_eigenvalue_groups(nu: int, cfg: ProblemConfig, N: int):
    """First distinct zeros of the unperturbed determinant as (lam, mult) pairs.

    Pairs are ascending in lam and cover at least N zeros counted with
    multiplicity.
    """
    m = cfg.m
    groups = []
    if nu == 1:
        groups.append((0.0, 1))
    total = sum(g[1] for g in groups)
    branches = _branches(nu, m)
    k = 1
    while total < N:
        for _name, rho_of, mult in branches:
            groups.append((rho_of(k) ** 2, mult))
        total += sum(b[2] for b in branches)
        k += 1
    groups.sort(key=lambda g: g[0])
    out = []
    run = 0
    for lam, mult in groups:
        out.append((lam, mult))
        run += mult
        if run >= N:
            break
    return out


def unperturbed_eigenvalues(nu: int, cfg: ProblemConfig, N: int) -> np.ndarray:
    """First N zeros of the unperturbed determinant, ascending, repeated
    according to multiplicity."""
    if N < 1:
        raise ValueError("N must be >= 1")
    flat = []
    for lam, mult in unperturbed_eigenvalue_groups(nu, cfg, N):
        flat.extend([lam] * mult)
    return np.array(flat[:N])


# ---------------------------------------------------------------------------
# zeros of the nu=0 Robin form (the moment nodes xi_{n,j})


def _robin_profile(eta: np.ndarray, H: float) -> np.ndarray:
    """cos(eta) + H*sin(eta)/eta, continuous at eta=0."""
    return np.cos(eta) + H * np.sinc(eta / math.pi)


def boundary_form_zeros(j: int, cfg: ProblemConfig, N: int, *, newton_steps: int = 3):
    """First N zeros xi_{n,j} = eta^2 of the nu=0 Robin form of edge j.

    Returns (xi, eta) with xi real ascending.  All zeros of this form are
    real and simple for real H (they are the eigenvalues of a regular
    self-adjoint problem): for H < -1 there is exactly one negative zero,
    for H = -1 the first zero sits at lam = 0, and the rest are positive.
    ``eta`` is the principal square root of xi (complex dtype only when a
    negative zero is present).

    Raises RootSearchError if a refinement fails to converge or if two
    returned zeros collide, which would contradict simplicity.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    H = cfg.H_of(j)
    xs: list[float] = []

    if H < -1.0:
        # one negative zero: cosh(t) + H*sinh(t)/t = 0
        f = lambda t: math.cosh(t) + H * (math.sinh(t) / t)
        t_hi = 1.0
        while f(t_hi) < 0:
            t_hi *= 2.0
            if t_hi > 1e3:  # pragma: no cover - |H| would have to be astronomical
                raise RootSearchError("negative-zero bracket not found")
        t0 = brentq(f, 1e-12, t_hi, xtol=1e-15, rtol=8.8e-16)
        xs.append(-t0 * t0)
    elif abs(1.0 + H) < 1e-14:
        xs.append(0.0)

    # positive zeros: bracket scan on eta with the asymptotic spacing pi
    need = N - len(xs)
    grid_step = math.pi / 16.0
    eta_hi = math.pi * (need + 2) + abs(H) + 2.0
    grid = np.arange(0.0, eta_hi, grid_step)
    vals = _robin_profile(grid, H)
    start = 1 if abs(1.0 + H) < 1e-14 else 0  # skip the exact zero at eta=0
    g = grid[start:]
    v = vals[start:]
    sign_change = np.nonzero((v[:-1] == 0.0) | (np.sign(v[:-1]) != np.sign(v[1:])))[0]
    etas = []
    for i in sign_change:
        lo, hi = g[i], g[i + 1]
        if v[i] == 0.0:
            etas.append(lo)
            continue
        etas.append(brentq(lambda e: _robin_profile(np.array(e), H), lo, hi, xtol=1e-15, rtol=8.8e-16))
        if len(etas) >= need:
            break
    if len(etas) < need:  # pragma: no cover - eta_hi padding covers this
        raise RootSearchError("positive-zero scan exhausted before reaching N zeros")
    xs.extend(e * e for e in etas[:need])
    xi = np.array(sorted(xs))

    # Newton polish in lam using the analytic derivative
    for _ in range(newton_steps):
        vv = boundary_form(0, xi, H)
        dv = boundary_form_dlam(xi, H)
        dv_safe = np.where(dv == 0.0, 1.0, dv)
        xi = xi - np.where(dv != 0.0, vv / dv_safe, 0.0)

    # certification: residual, simplicity, separation
    scale = np.abs(S_x(0, 1.0, xi)) + abs(H) * np.abs(S(0, 1.0, xi)) + 1.0
    res = np.abs(boundary_form(0, xi, H))
    if np.any(res > 1e-12 * scale):
        raise RootSearchError(
            f"Robin-form zero refinement did not converge (max residual {res.max():.3e})"
        )
    if np.any(np.abs(boundary_form_dlam(xi, H)) < 1e-6 / (1.0 + np.abs(xi))):
        raise RootSearchError("Robin-form zero appears multiple; expected simple zeros")
    gaps = np.diff(xi)
    if np.any(gaps <= 1e-8 * (1.0 + np.abs(xi[1:]))):
        raise RootSearchError("two Robin-form zeros collided; expected simple zeros")

    if np.any(xi < 0):
        eta = np.sqrt(xi.astype(complex))
    else:
        eta = np.sqrt(xi)
    return xi, eta
