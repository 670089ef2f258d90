"""Zeros of Yamada-polynomial families and the regions where they accumulate.

The families are rings of ``n`` beads, each bead a theta graph ``Theta_s``
(plain, or with every edge replaced by the one-crossing bead).  Their
polynomials have the two-term shape ``lam1^n + sigma * lam2^n``, so limit
points of zeros lie where ``|lam1| = |lam2|``.
"""

from __future__ import annotations

import cmath
import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .hpoly import h_closed
from .ring import InexactDivisionError, LaurentPoly, eval_complex, eval_normalized, sigma
from .yamada import FamilySpec, r_replace, r_uniform

__all__ = [
    "RootSet",
    "RootFindingError",
    "SingularPointError",
    "find_roots",
    "family_roots",
    "relative_residual",
    "family_lambdas",
    "family_polynomial",
    "bkw_residual",
    "bkw_sides",
    "region_membership",
    "REGIONS",
    "density_scan",
    "grid_region",
    "region_svg",
    "SINGULAR_POINTS",
]

SIGMA = sigma()
OMEGA3 = cmath.exp(2j * math.pi / 3)
# zeros of sigma: the BKW quotient and the second amplitude are singular there
SINGULAR_POINTS = (OMEGA3, OMEGA3.conjugate())

FAMILIES = ("theta", "inf+", "inf-")
FORM_TOL_FLOOR = 1e-8
_FAMILY_ALIASES = {
    "theta": "theta", "theta_beads": "theta",
    "inf+": "inf+", "infplus": "inf+", "theta_inf_plus": "inf+",
    "inf-": "inf-", "infminus": "inf-", "theta_inf_minus": "inf-",
}


class RootFindingError(RuntimeError):
    def __init__(self, message: str, partial: "RootSet"):
        super().__init__(message)
        self.partial = partial


class SingularPointError(ZeroDivisionError):
    pass


@dataclass
class RootSet:
    roots: list[complex]
    residuals: list[float]
    source: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.roots)


# -- root finding ------------------------------------------------------------------


def relative_residual(p: LaurentPoly, z: complex) -> float:
    """``|p(z)| / max_k |c_k z^k|``, evaluated term by term in log space."""
    value, _ = eval_normalized(p, z)
    return abs(value)


def _initial_guesses(logmag: np.ndarray, nonzero: np.ndarray) -> np.ndarray:
    """Points on circles given by the upper Newton polygon of ``log|c_k|``."""
    ks = np.flatnonzero(nonzero)
    hull: list[int] = []
    for k in ks:
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            # drop j if it lies on or below the segment i -> k
            if (logmag[j] - logmag[i]) * (k - i) <= (logmag[k] - logmag[i]) * (j - i):
                hull.pop()
            else:
                break
        hull.append(int(k))
    guesses = []
    for seg, (i, j) in enumerate(zip(hull, hull[1:])):
        m = j - i
        r = math.exp((logmag[i] - logmag[j]) / m)
        offset = 0.4 + 0.9 * seg
        for t in range(m):
            guesses.append(r * cmath.exp(1j * (2 * math.pi * t / m + offset)))
    return np.array(guesses, dtype=complex)


def _newton_ratio(c: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``p(z)/p'(z)`` and ``|p(z)|`` relative to the coefficient scale.

    Inside the unit disc Horner runs on ``c``; outside it runs on the reversed
    coefficients in ``1/z`` so nothing overflows.
    """
    d = len(c) - 1
    inside = np.abs(z) <= 1
    ratio = np.empty_like(z)
    res = np.empty(z.shape)
    if inside.any():
        x = z[inside]
        p = np.full(x.shape, c[-1], dtype=complex)
        dp = np.zeros(x.shape, dtype=complex)
        for a in c[-2::-1]:
            dp = dp * x + p
            p = p * x + a
        ratio[inside] = p / dp
        res[inside] = np.abs(p)
    out = ~inside
    if out.any():
        x = z[out]
        w = 1 / x
        rc = c[::-1]
        q = np.full(w.shape, rc[-1], dtype=complex)
        dq = np.zeros(w.shape, dtype=complex)
        for a in rc[-2::-1]:
            dq = dq * w + q
            q = q * w + a
        # p(z) = z^d q(1/z)  =>  p'/p = w (d - w q'(w)/q(w))
        ratio[out] = 1 / (w * (d - w * dq / q))
        res[out] = np.abs(q)
    return ratio, res


@dataclass(frozen=True)
class TwoTermForm:
    """``p = lam1^n + sigma^(1-n) * mu^n`` where ``mu = sigma * lam2``."""

    lam1: LaurentPoly
    mu: LaurentPoly
    n: int

    def _logs(self, z: np.ndarray):
        v1, d1 = _laurent_eval(self.lam1, z)
        v2, d2 = _laurent_eval(self.mu, z)
        vs, ds = _laurent_eval(SIGMA, z)
        n = self.n
        with np.errstate(all="ignore"):
            l1 = n * d1 / v1
            l2 = n * d2 / v2 + (1 - n) * ds / vs
            # log of the ratio between the two terms
            logt = n * (np.log(v2) - np.log(v1)) + (1 - n) * np.log(vs)
        return l1, l2, logt

    def log_derivative(self, z: np.ndarray) -> np.ndarray:
        l1, l2, logt = self._logs(z)
        with np.errstate(all="ignore"):
            small = logt.real <= 0
            t = np.exp(np.where(small, logt, -logt))
            return np.where(small, (l1 + t * l2) / (1 + t), (t * l1 + l2) / (t + 1))

    def relative_residual(self, z: complex) -> float:
        """``|p(z)| / (|first term| + |second term|)``."""
        _, _, logt = self._logs(np.array([z], dtype=complex))
        u = complex(logt[0])
        t = cmath.exp(-u if u.real > 0 else u)
        return abs(1 + t) / (1 + abs(t))


def _laurent_eval(p: LaurentPoly, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Value and derivative of a short Laurent polynomial, vectorised."""
    c = np.array(p.coeffs[::-1], dtype=float)
    core = np.polyval(c, z)
    dcore = np.polyval(np.polyder(c), z) if len(c) > 1 else np.zeros_like(z)
    zl = z ** p.lo
    return zl * core, zl * dcore + p.lo * z ** (p.lo - 1) * core


def _aberth(newton: Callable[[np.ndarray], np.ndarray], z: np.ndarray, max_iter: int) -> np.ndarray:
    """Refine ``z`` in place; returns a mask of approximations that never converged."""
    d = len(z)
    active = np.ones(d, dtype=bool)
    eps = np.finfo(float).eps
    for it in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        ratio = newton(z[idx])
        diff = z[idx, None] - z[None, :]
        diff[np.arange(idx.size), idx] = 1.0
        inv = 1.0 / diff
        inv[np.arange(idx.size), idx] = 0.0
        step = ratio / (1 - ratio * inv.sum(axis=1))
        bad = ~np.isfinite(step)
        # a non-finite step means overflow or a collision; nudge and keep going
        step[bad] = -1e-3 * (1 + np.abs(z[idx][bad])) * np.exp(1j * (1.0 + it))
        z[idx] = z[idx] - step
        scale = np.maximum(np.abs(z[idx]), 1e-300)
        # a tiny Aberth step alone can mean a stall next to a neighbour, so the
        # plain Newton correction has to be tiny as well.  Once that correction
        # is below 1e-12 the step just taken lands at the noise floor of the
        # evaluation (quadratic convergence), which may sit above 4 eps.
        tiny_ratio = np.abs(ratio) <= 1e-12 * scale
        small = ~bad & (tiny_ratio | ((np.abs(step) <= 4 * eps * scale) & (np.abs(ratio) <= 1e-9 * scale)))
        active[idx[small]] = False
    return active


def find_roots(
    p: LaurentPoly,
    tol: float = 1e-10,
    max_iter: int = 1000,
    max_degree: int = 5000,
    source: Optional[dict] = None,
    restarts: int = 8,
    form: Optional["TwoTermForm"] = None,
) -> RootSet:
    """All non-zero roots of ``p`` by simultaneous (Aberth-Ehrlich) iteration.

    ``p`` is first multiplied by a power of ``A`` so that it becomes an ordinary
    polynomial with non-zero constant term; the roots at ``A = 0`` this would
    otherwise introduce never appear.  Starting points come from the Newton
    polygon of the coefficient moduli and are fully deterministic.

    Horner on the expanded coefficients is only trustworthy when they do not
    cancel badly.  The family polynomials cancel catastrophically inside the
    unit disc, so callers holding ``p = lam1^n + sigma * lam2^n`` pass ``form``
    and the Newton corrections are computed from the factors instead.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if p.span() > max_degree:
        raise ValueError(f"degree {p.span()} exceeds root-finding limit {max_degree}")
    src = dict(source or {})
    # Powers of sigma are split off exactly.  Their roots are known in closed
    # form, and as an m-fold root they would only be resolved to ~eps^(1/m).
    mult = 0
    q = p
    while q.span() >= 2:
        try:
            q = q.exact_div(SIGMA)
        except InexactDivisionError:
            break
        mult += 1
    src["sigma_multiplicity"] = mult
    fixed = [OMEGA3, OMEGA3.conjugate()] * mult
    coeffs = list(q.coeffs)
    d = len(coeffs) - 1
    if d == 0:
        return RootSet(fixed, [relative_residual(p, x) for x in fixed], src)
    big = max(abs(x) for x in coeffs)
    c = np.array([x / big for x in coeffs], dtype=complex)
    logmag = np.array([math.log(abs(x)) if x else -np.inf for x in coeffs])
    z = _initial_guesses(logmag, np.array([x != 0 for x in coeffs]))
    if form is None:
        newton = lambda x: _newton_ratio(c, x)[0]  # noqa: E731
    else:
        def newton(x):
            sig_log = (1 - 1 / x ** 2) / (x + 1 + 1 / x)
            return 1 / (form.log_derivative(x) - mult * sig_log - q.lo / x)
    rng = np.random.default_rng(d)
    for attempt in range(restarts + 1):
        with np.errstate(all="ignore"):
            stuck = _aberth(newton, z, max_iter)
        if not stuck.any() or attempt == restarts:
            break
        # stalled approximations (parked outside a cluster they cannot enter)
        # are reseeded near the bulk of the converged ones
        good = np.abs(z[~stuck])
        radii = rng.choice(good if good.size else np.ones(1), size=int(stuck.sum()))
        z[stuck] = radii * np.exp(2j * np.pi * rng.random(int(stuck.sum())))
    roots = [complex(x) for x in z if abs(x) > 1e-8] + fixed
    residuals = [relative_residual(p, x) for x in roots]
    result = RootSet(roots, residuals, src)
    worst = max(residuals, default=0.0)
    if form is not None:
        # the factored form is singular where sigma vanishes; those roots are
        # judged by the coefficient residual alone
        regular = [x for x in roots if abs(x + 1 + 1 / x) > 1e-6]
        src["form_residual"] = max((form.relative_residual(x) for x in regular), default=0.0)
        # the factored residual carries roughly n * eps from the n-th powers,
        # so it is held to a looser floor than the coefficient residual
        if src["form_residual"] > max(tol, FORM_TOL_FLOOR):
            raise RootFindingError(f"factored residual {src['form_residual']:.3e} too large",
                                   RootSet(roots, residuals, src))
    if worst > tol:
        raise RootFindingError(f"root residual {worst:.3e} above tolerance {tol:.1e}", result)
    return result


# -- BKW machinery -------------------------------------------------------------------


def _family(name: str) -> str:
    try:
        return _FAMILY_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected one of {FAMILIES}") from None


def theta_bead_values(family: str, s: int) -> tuple[LaurentPoly, LaurentPoly]:
    """``(R[bead], R[bead'])`` for the theta bead of a family."""
    family = _family(family)
    if family == "theta":
        return h_closed("theta", s), h_closed("bouquet", s)
    bead = "infplus" if family == "inf+" else "infminus"
    return r_uniform(FamilySpec("theta", s, bead)), r_uniform(FamilySpec("bouquet", s, bead))


def family_lambdas(family: str, s: int) -> tuple[LaurentPoly, LaurentPoly]:
    """``(lam1, sigma * lam2)`` with ``R[C_n] = lam1^n + sigma * lam2^n``."""
    r, rp = theta_bead_values(family, s)
    return -r, r + rp


def family_polynomial(family: str, s: int, n: int) -> LaurentPoly:
    return r_replace("cycle", [theta_bead_values(family, s)] * n)


def family_roots(family: str, s: int, n: int, tol: float = 1e-10, max_degree: int = 5000) -> RootSet:
    """Roots of ``R[C_n(bead)]``, refined through the factored two-term form."""
    family = _family(family)
    lam1, lam2s = family_lambdas(family, s)
    return find_roots(family_polynomial(family, s, n), tol=tol, max_degree=max_degree,
                      source={"family": family, "s": s, "n": n}, form=TwoTermForm(lam1, lam2s, n))


def is_degenerate(family: str, s: int) -> bool:
    """True when a dominant term vanishes or both terms have proportional moduli."""
    lam1, lam2s = family_lambdas(family, s)
    if lam1.is_zero() or lam2s.is_zero():
        return True
    lhs = lam1 * SIGMA
    return lhs == lam2s or lhs == -lam2s


def _check_z(z: complex) -> complex:
    z = complex(z)
    if z == 0:
        raise ZeroDivisionError("z must be non-zero")
    return z


def _sigma_at(z: complex) -> complex:
    sz = z + 1 + 1 / z
    if abs(sz) <= 1e-14 * max(1.0, abs(z), 1 / abs(z)):
        raise SingularPointError(f"sigma vanishes at z = {z}")
    return sz


def bkw_residual(family: str, s: int, z: complex, form: str = "simplified") -> float:
    """Distance from the equal-modulus condition at ``z``.

    ``form="lambda"`` gives ``| |lam1(z)| - |lam2(z)| |`` directly.  That gap
    grows with ``|lam|`` and the equal-modulus curves run off to infinity, so
    the default ``"simplified"`` form divides both moduli by
    ``|sigma|^s / |sigma + 1|`` first; see :func:`bkw_sides`.
    """
    if form == "simplified":
        a, b = bkw_sides(family, s, z)
        return abs(a - b)
    if form != "lambda":
        raise ValueError(f"unknown residual form {form!r}")
    z = _check_z(z)
    sz = _sigma_at(z)
    lam1, lam2s = family_lambdas(family, s)
    return abs(abs(eval_complex(lam1, z)) - abs(eval_complex(lam2s, z) / sz))


def bkw_sides(family: str, s: int, z: complex) -> tuple[float, float]:
    """Both sides of the simplified equal-modulus condition.

    For the plain theta family these are ``|1 + sigma x|`` and ``|1 - x|`` with
    ``x = (-sigma)^-s``; for the infinity families ``x = G^s`` with
    ``G = ((sigma + 1) A^-2 + 1) / (-sigma)`` (at ``1/z`` for ``inf-``).
    """
    family = _family(family)
    z = _check_z(z)
    if family == "inf-":
        z = 1 / z
    sz = _sigma_at(z)
    if family == "theta":
        x = (-sz) ** (-s)
    else:
        x = (((sz + 1) / z ** 2 + 1) / (-sz)) ** s
    return abs(1 + sz * x), abs(1 - x)


# -- regions -----------------------------------------------------------------------

REGIONS = ("sigma_ge_1", "plus_region", "minus_region", "omega")
_REGION_ALIASES = {
    "sigma": "sigma_ge_1", "sigma_ge_1": "sigma_ge_1",
    "plus": "plus_region", "plus_region": "plus_region",
    "minus": "minus_region", "minus_region": "minus_region",
    "omega": "omega",
}


def region_name(which: str) -> str:
    try:
        return _REGION_ALIASES[which]
    except KeyError:
        raise ValueError(f"unknown region {which!r}") from None


def _moduli(z: complex) -> tuple[float, float, float]:
    """``|sigma|``, ``|z^3 + 2z^2 + z + 1|`` and ``|1 + z^-1 + 2z^-2 + z^-3|``."""
    w = 1 / z
    m_sigma = abs(z + 1 + w)
    m_minus = abs(((z + 2) * z + 1) * z + 1)
    m_plus = abs(((w + 2) * w + 1) * w + 1)
    return m_sigma, m_minus, m_plus


def region_membership(which: str, z: complex) -> bool:
    """Non-strict inequalities, exactly as the density theorems state them."""
    which = region_name(which)
    z = _check_z(z)
    m_sigma, m_minus, m_plus = _moduli(z)
    if which == "sigma_ge_1":
        return m_sigma >= 1
    if which == "plus_region":
        return m_plus <= m_sigma
    if which == "minus_region":
        return m_minus <= m_sigma
    return m_sigma >= min(1.0, m_minus, m_plus)


# limits as z -> 0: |sigma| and |z^-3 ...| blow up like 1/|z| and 1/|z|^3
_AT_ZERO = {"sigma_ge_1": True, "plus_region": False, "minus_region": True, "omega": True}


def grid_region(
    which: str,
    re_range: tuple[float, float],
    im_range: tuple[float, float],
    resolution: int,
) -> list[list[bool]]:
    """Membership at cell centres; row 0 is the top row (largest imaginary part)."""
    which = region_name(which)
    if not 1 <= resolution <= 4096:
        raise ValueError("resolution must be between 1 and 4096")
    a, b = re_range
    c, d = im_range
    dx = (b - a) / resolution
    dy = (d - c) / resolution
    rows = []
    for i in range(resolution):
        y = d - (i + 0.5) * dy
        row = []
        for j in range(resolution):
            z = complex(a + (j + 0.5) * dx, y)
            row.append(_AT_ZERO[which] if z == 0 else region_membership(which, z))
        rows.append(row)
    return rows


def region_svg(
    grid: Sequence[Sequence[bool]],
    re_range: tuple[float, float],
    im_range: tuple[float, float],
    roots: Iterable[complex] = (),
    px_per_unit: float = 100.0,
    fill: str = "#3b6ea5",
    opacity: float = 0.45,
) -> str:
    a, b = re_range
    c, d = im_range
    width = (b - a) * px_per_unit
    height = (d - c) * px_per_unit
    ny = len(grid)
    nx = len(grid[0]) if ny else 0
    cw = width / nx if nx else 0
    ch = height / ny if ny else 0
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        f'<rect x="0" y="0" width="{width:.2f}" height="{height:.2f}" fill="white"/>',
        f'<g fill="{fill}" fill-opacity="{opacity}" stroke="none">',
    ]
    for i, row in enumerate(grid):
        for j, inside in enumerate(row):
            if inside:
                out.append(f'<rect x="{j * cw:.3f}" y="{i * ch:.3f}" width="{cw:.3f}" height="{ch:.3f}"/>')
    out.append("</g>")
    # axes
    if a < 0 < b:
        x0 = -a * px_per_unit
        out.append(f'<line x1="{x0:.2f}" y1="0" x2="{x0:.2f}" y2="{height:.2f}" stroke="#888" stroke-width="0.5"/>')
    if c < 0 < d:
        y0 = d * px_per_unit
        out.append(f'<line x1="0" y1="{y0:.2f}" x2="{width:.2f}" y2="{y0:.2f}" stroke="#888" stroke-width="0.5"/>')
    pts = [r for r in roots if a <= r.real <= b and c <= r.imag <= d]
    if pts:
        out.append('<g fill="#c0392b" stroke="none">')
        for r in pts:
            x = (r.real - a) * px_per_unit
            y = (d - r.imag) * px_per_unit
            out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="1.5"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- density scan ------------------------------------------------------------------

CSV_HEADER = ["family", "s", "n", "re", "im", "residual", "bkw_residual", "in_omega"]


def near_singular(z: complex, radius: float = 1e-3) -> bool:
    return any(abs(z - w) < radius for w in SINGULAR_POINTS)


def scan_one(family: str, s: int, n: int, tol: float = 1e-10, max_degree: int = 5000,
             exclusion: float = 1e-3) -> dict:
    """Roots of one family member with their residuals and region flags."""
    family = _family(family)
    rs = family_roots(family, s, n, tol=tol, max_degree=max_degree)
    p = family_polynomial(family, s, n)
    rows = []
    worst = 0.0
    excluded = 0
    for z, res in zip(rs.roots, rs.residuals):
        if near_singular(z, exclusion):
            bkw = math.nan
            excluded += 1
        else:
            bkw = bkw_residual(family, s, z)
            worst = max(worst, bkw)
        rows.append([family, s, n, z.real, z.imag, res, bkw, region_membership("omega", z)])
    return {
        "n": n,
        "degree": p.span(),
        "roots": len(rs),
        "max_residual": max(rs.residuals, default=0.0),
        "max_bkw_residual": worst,
        "excluded_near_singular": excluded,
        "rows": rows,
    }


def density_scan(
    family: str,
    s: int,
    n_list: Sequence[int],
    out: Optional[Path] = None,
    tol: float = 1e-10,
    threads: int = 1,
    max_degree: int = 5000,
    exclusion: float = 1e-3,
) -> dict:
    """Scan ``R[C_n(bead)]`` for each ``n``; write ``roots.csv`` and ``summary.json``.

    Degenerate families (one term vanishing identically) are flagged and not
    scanned.
    """
    family = _family(family)
    summary: dict = {"family": family, "s": s, "n": list(n_list), "degenerate": is_degenerate(family, s)}
    results: list[dict] = []
    if not summary["degenerate"]:
        if threads > 1 and len(n_list) > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=threads) as pool:
                k = len(n_list)
                results = list(pool.map(scan_one, [family] * k, [s] * k, n_list, [tol] * k,
                                        [max_degree] * k, [exclusion] * k))
        else:
            results = [scan_one(family, s, n, tol, max_degree, exclusion) for n in n_list]
    summary["per_n"] = [{k: v for k, v in r.items() if k != "rows"} for r in results]
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "roots.csv", "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for r in results:
                for row in r["rows"]:
                    writer.writerow([row[0], row[1], row[2], repr(row[3]), repr(row[4]),
                                     f"{row[5]:.6e}", f"{row[6]:.6e}", int(row[7])])
        with open(out / "summary.json", "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    summary["results"] = results
    return summary
