"""Closed-form probabilities, lower-bound evaluators and numerical audits.

All arithmetic runs in a private mpmath context at 192 bits so that factors
such as ``e**52`` and ``2**(2n)`` neither overflow nor hide a failing
inequality.  Public results keep the mpmath values; convert with ``float``
where double precision is enough.

Conventions used throughout: ``d = (1 - p) / 2`` is the density threshold,
``C = binom(n - 1, k - 1)`` and ``T = (1 - eps_f)**-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

import mpmath

__all__ = [
    "PREC",
    "mp",
    "ProbReport",
    "BoundValue",
    "BoundReport",
    "FactorSet",
    "AuditRow",
    "InequalityAudit",
    "order_stat_cdf",
    "order_stat_cdf_mp",
    "order_stat_cdf_quad",
    "p_dense_exact",
    "p_badpair_upper",
    "p_badpair_single_vertex",
    "badpair_bound_coarse",
    "dense_bound_per_edge",
    "bounds_report",
    "factor_audit",
    "inequality_audit",
    "admissible_ks",
    "epsilon_window",
    "eps_crossover",
    "ordering_bound_mp",
    "degree_limit_mp",
]

PREC = 192
mp = mpmath.MPContext()
mp.prec = PREC


def _mpf(x) -> mpmath.mpf:
    return mp.mpf(x)


def _log2(x) -> float:
    x = _mpf(x)
    if x <= 0:
        return -math.inf
    return float(mp.log(x, 2))


def _dec(x, digits: int = 40) -> str:
    return mp.nstr(_mpf(x), digits)


def _sum_binom_lt(n: int, k: int) -> int:
    return sum(comb(n, j) for j in range(k))


def _in_region(n: int, k: int) -> bool:
    return n >= 30 and k >= 2 and k * k * math.log(n) <= n


def admissible_ks(n: int) -> list[int]:
    """All ``k >= 2`` with ``k <= sqrt(n / ln n)``."""
    return [k for k in range(2, n) if k * k * math.log(n) <= n]


# --------------------------------------------------------------------------
# order statistics
# --------------------------------------------------------------------------


def order_stat_cdf_mp(n: int, k: int, t) -> mpmath.mpf:
    """``P(l <= t)`` for ``l`` the ``(n-k+1)``-th smallest of ``n`` uniforms.

    Repeated integration by parts turns the density integral into a finite
    sum of ``k`` terms ``c_i t**(n-k+1+i) (1-t)**(k-1-i)``.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    t = _mpf(t)
    if t < 0 or t > 1:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    coef = _mpf(1) / (n - k + 1)
    total = _mpf(0)
    for i in range(k):
        if i:
            coef = coef * (k - i) / (n - k + 1 + i)
        total += coef * t ** (n - k + 1 + i) * (1 - t) ** (k - 1 - i)
    return n * comb(n - 1, k - 1) * total


def order_stat_cdf(n: int, k: int, t: float) -> float:
    return float(order_stat_cdf_mp(n, k, t))


def order_stat_cdf_quad(n: int, k: int, t) -> mpmath.mpf:
    """Same probability by adaptive quadrature of the order-statistic density."""
    t = _mpf(t)
    c = n * comb(n - 1, k - 1)
    return c * mp.quad(lambda x: x ** (n - k) * (1 - x) ** (k - 1), [0, t])


# --------------------------------------------------------------------------
# dense-edge probability
# --------------------------------------------------------------------------


@dataclass
class ProbReport:
    analytic: mpmath.mpf
    components: dict[str, mpmath.mpf] = field(default_factory=dict)
    method: str = "closed-form"
    is_bound: bool = False

    def __float__(self) -> float:
        return float(self.analytic)

    def to_dict(self) -> dict:
        return {
            "analytic": _dec(self.analytic),
            "components": {k: _dec(v) for k, v in self.components.items()},
            "method": self.method,
            "is_bound": self.is_bound,
        }


def _dense_parts(n: int, k: int, d) -> tuple[mpmath.mpf, mpmath.mpf]:
    """``(P(l <= d), P(l - f <= d, l > d))`` for threshold ``d`` in [0, 1]."""
    low = order_stat_cdf_mp(n, k, d)
    c = n * comb(n - 1, k - 1)
    gap = _mpf(0)
    for i in range(k):
        w = _mpf(comb(n - k, i) * factorial(k - 1) * factorial(i)) / factorial(i + k)
        gap += w * d ** (n - k - i) * (1 - d) ** (i + k)
    return low, c * gap


def p_dense_exact(n: int, k: int, p) -> ProbReport:
    """Exact probability that an edge of ``n`` i.i.d. uniforms is dense.

    The event splits into ``l <= d`` and ``{l - f <= d, l > d}``; both parts
    are finite sums.
    """
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    p = _mpf(p)
    d = (1 - p) / 2
    if d <= 0:
        zero = _mpf(0)
        return ProbReport(zero, {"lower_tail": zero, "gap_above": zero})
    if d >= 1:
        one = _mpf(1)
        return ProbReport(one, {"lower_tail": one, "gap_above": _mpf(0)})
    low, gap = _dense_parts(n, k, d)
    return ProbReport(low + gap, {"lower_tail": low, "gap_above": gap})


def dense_bound_per_edge(n: int, k: int) -> mpmath.mpf:
    """Per-edge upper bound on the dense probability at ``p = 2k ln n / n``:
    ``e^13 C 2^-n nk/(n-k+1) n^-2k + e^26 T C 2^-n n^k (k-1)!/(2k-1)! n^-2k``.
    """
    C = comb(n - 1, k - 1)
    T = _mpf(n - 2 * k) / (n - 4 * k)
    two_n = mp.power(2, -n)
    first = mp.e**13 * C * two_n * _mpf(n * k) / (n - k + 1) / mp.power(n, 2 * k)
    second = (
        mp.e**26 * T * C * two_n * mp.power(n, k)
        * _mpf(factorial(k - 1)) / factorial(2 * k - 1) / mp.power(n, 2 * k)
    )
    return first + second


# --------------------------------------------------------------------------
# bad-pair probability
# --------------------------------------------------------------------------


def _tail_table(N1: int, y, cmin: int, cmax: int) -> dict[int, mpmath.mpf]:
    """``P(Bin(N1, y) >= c)`` for every ``c`` in ``[cmin, cmax]``, ``0 <= y <= 1/2``.

    One forward pass over the pmf from ``cmin``; past ``cmax`` the pass stops
    once terms drop below the working precision.
    """
    y = _mpf(y)
    cmin = max(cmin, 0)
    out: dict[int, mpmath.mpf] = {}
    if y <= 0:
        return {c: (_mpf(1) if c <= 0 else _mpf(0)) for c in range(cmin, cmax + 1)}
    r = y / (1 - y)
    term = mp.binomial(N1, cmin) * y**cmin * (1 - y) ** (N1 - cmin)
    pmf = [term]
    j = cmin
    eps = mp.power(2, -PREC - 8)
    running = term
    while j < N1:
        term = term * (N1 - j) / (j + 1) * r
        j += 1
        pmf.append(term)
        running += term
        if j > cmax and term < running * eps:
            break
    acc = _mpf(0)
    suffix = [None] * len(pmf)
    for i in range(len(pmf) - 1, -1, -1):
        acc += pmf[i]
        suffix[i] = acc
    for c in range(cmin, cmax + 1):
        i = c - cmin
        out[c] = suffix[i] if i < len(suffix) else _mpf(0)
    return out


def _badpair_sum(n: int, k: int, h: int, lo) -> mpmath.mpf:
    """Sum over the ranks of the shared vertex ``v0`` (one vertex, no factor h)
    with its weight in ``[lo, 1 - lo]``, ``0 <= lo <= 1/2``.

    Each term integrates ``x**a (1-x)**b`` with ``a + b = 2n - h - 1`` fixed,
    using ``integral_0^y = B(a+1, b+1) P(Bin(a+b+1, y) >= a+1)`` and
    ``P(Bin(N1, 1-lo) >= c) = 1 - P(Bin(N1, lo) >= N1 - c + 1)``.
    """
    lo = _mpf(lo)
    Nab = 2 * n - h - 1
    N1 = Nab + 1
    # integer coefficient of each exponent a, summed over (t, i, j)
    coef: dict[int, int] = {}
    for t in range(max(0, h - k), min(k - 1, h - 1) + 1):
        ct = comb(h - 1, t)
        for i in range(0, k - h + t + 1):
            ci = ct * comb(n - h, i)
            for j in range(0, k - t):
                a = n - h - i + t + j
                coef[a] = coef.get(a, 0) + ci * comb(n - h, j)
    if not coef:
        return _mpf(0)
    needed = {a + 1 for a in coef} | {N1 - a for a in coef}
    tail = _tail_table(N1, lo, min(needed), max(needed))
    total = _mpf(0)
    for a, c in sorted(coef.items()):
        upper_hi = 1 - tail[N1 - a]
        total += c * (upper_hi - tail[a + 1]) / (N1 * mp.binomial(Nab, a))
    return total


@lru_cache(maxsize=4096)
def _eq_window_sum(n: int, k: int, h: int, p_key: str) -> mpmath.mpf:
    p = _mpf(p_key)
    if h >= 2 * k or p <= 0:
        return _mpf(0)
    lo = max(_mpf(0), (1 - p) / 2)
    return h * _badpair_sum(n, k, h, lo)


def _window_bound(n: int, k: int, h: int, p) -> mpmath.mpf:
    return _eq_window_sum(n, k, h, mp.nstr(_mpf(p), 60))


def p_badpair_single_vertex(n: int, k: int, h: int) -> mpmath.mpf:
    """Exact ``P(v0 in L(f) & F(s))`` for a fixed shared vertex, no window.

    With ``h = 1`` this is exactly the probability that the two edges form a
    bad pair.
    """
    if h >= 2 * k:
        return _mpf(0)
    return _badpair_sum(n, k, h, _mpf(0))


def _alpha_gamma(n: int, k: int):
    alpha = _mpf(k) / (n - 3 * k)
    gamma = _mpf(4 * k) / (n - k)
    return alpha, gamma


def _badpair_tsum_bound(n: int, k: int, h: int, p) -> mpmath.mpf:
    """Bound after collapsing the sums over i, j and h (sum over t remains)."""
    alpha, _ = _alpha_gamma(n, k)
    p = _mpf(p)
    s = _mpf(0)
    for t in range(max(0, h - k), min(k - 1, h - 1) + 1):
        s += (t + 1) * comb(n - t - 1, k - 1 - t) * comb(n - t - 1, k - 1) * mp.power(2, t + 2)
    return mp.e**30 / (1 - alpha) ** 2 * s * p / mp.power(2, 2 * n)


def _badpair_top_term_bound(n: int, k: int, p) -> mpmath.mpf:
    alpha, gamma = _alpha_gamma(n, k)
    R = 1 / ((1 - alpha) ** 2 * (1 - gamma))
    return mp.e**30 * R * _mpf(comb(n - 1, k - 1)) ** 2 * _mpf(p) * mp.power(2, 2 - 2 * n)


def badpair_bound_coarse(n: int, k: int) -> mpmath.mpf:
    """``3 e^30 C^2 2^(2-2n) (2k ln n / n)``, valid throughout the admissible region."""
    C = comb(n - 1, k - 1)
    return 3 * mp.e**30 * _mpf(C) ** 2 * mp.power(2, 2 - 2 * n) * 2 * k * mp.log(n) / n


def p_badpair_upper(n: int, k: int, h: int, p) -> ProbReport:
    """Union-bound estimate of ``P(M(f, s))`` for two edges sharing ``h`` vertices.

    ``analytic`` is the triple sum with the shared vertex's weight confined to
    ``[(1-p)/2, (1+p)/2]``; the coarser collapsed bounds are reported as
    components (``coarse`` uses ``p = 2k ln n / n`` regardless of the input).
    """
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    if not 1 <= h <= n:
        raise ValueError(f"need 1 <= h <= n, got h={h}")
    if h >= 2 * k:
        zero = _mpf(0)
        return ProbReport(zero, {"window_sum": zero}, is_bound=True)
    main = _window_bound(n, k, h, p)
    comps = {"window_sum": main}
    if n > 4 * k:
        comps["t_sum"] = _badpair_tsum_bound(n, k, h, p)
        comps["top_term"] = _badpair_top_term_bound(n, k, p)
        comps["coarse"] = badpair_bound_coarse(n, k)
    return ProbReport(main, comps, method="closed-form", is_bound=True)


# --------------------------------------------------------------------------
# bound evaluators
# --------------------------------------------------------------------------


def ordering_bound_mp(n: int, k: int) -> mpmath.mpf:
    """``12/e^26 * sqrt(n / (k ln n)) * 2^(n-1) / C(n-1, k-1)``."""
    return (
        12 / mp.e**26 * mp.sqrt(_mpf(n) / (k * mp.log(n)))
        * mp.power(2, n - 1) / comb(n - 1, k - 1)
    )


def _intersecting_denominator(n: int, k: int, h: int) -> mpmath.mpf:
    return mp.sqrt(
        mp.power(2, h - k) * (h - k + 1) * comb(n - 1, k - 1) * comb(n - 1, 2 * k - 1 - h)
    )


def ordering_bound_Ah_mp(n: int, k: int, h: int) -> mpmath.mpf:
    return (
        12 / mp.e**26 * mp.sqrt(_mpf(n) / (k * mp.log(n)))
        * mp.power(2, n - 1) / _intersecting_denominator(n, k, h)
    )


def degree_limit_mp(n: int, k: int) -> mpmath.mpf:
    """Largest admissible intersection degree plus one (may be below 1)."""
    return (
        5 / (3 * mp.e**26) * mp.sqrt(_mpf(n) / (k * mp.log(n)))
        * mp.power(2, n - 1) / comb(n - 1, k - 1)
    )


@dataclass
class BoundValue:
    value: mpmath.mpf
    flags: dict[str, bool]
    shape_only: bool = False

    @property
    def value_log2(self) -> float:
        return _log2(self.value)

    @property
    def vacuous(self) -> bool:
        return self.value < 1

    def to_dict(self) -> dict:
        return {
            "value": _dec(self.value),
            "value_log2": self.value_log2,
            "flags": dict(sorted(self.flags.items())),
            "shape_only": self.shape_only,
            "vacuous": bool(self.vacuous),
        }


@dataclass
class BoundReport:
    n: int
    k: int
    h: int | None
    eps: float | None
    constants: dict[str, float]
    bounds: dict[str, BoundValue]

    def __getitem__(self, name: str) -> BoundValue:
        return self.bounds[name]

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.n, "k": self.k, "h": self.h, "eps": self.eps,
                       "constants": dict(sorted(self.constants.items()))},
            "bounds": {name: b.to_dict() for name, b in sorted(self.bounds.items())},
        }

    def rows(self) -> list[tuple[str, float, str]]:
        """``(name, value_log2, flags)`` rows for CSV output."""
        out = []
        for name, b in sorted(self.bounds.items()):
            flags = ";".join(f"{f}={int(v)}" for f, v in sorted(b.flags.items()))
            out.append((name, b.value_log2, flags))
        return out


DEFAULT_CONSTANTS = {"psi": 1.0, "c_logk": 1.0, "c_eps": 1.0, "c_Ah": 1.0,
                     "c1": 1.0, "c2": 1.0, "delta": 1.0}


def bounds_report(
    n: int,
    k: int,
    h: int | None = None,
    eps: float | None = None,
    constants: dict[str, float] | None = None,
) -> BoundReport:
    """Evaluate every known lower/upper bound for ``m(n)``, ``m_k(n)``,
    ``m_{k,eps}(n)``, ``m_{k,h}(n)`` and the simple-hypergraph variants.

    Bounds with unspecified constants take them from ``constants`` (default
    1) and are marked ``shape_only``.  Hypothesis flags never suppress
    evaluation.
    """
    if n < max(2 * k, 2) or k < 1:
        raise ValueError(f"need k >= 1 and n >= max(2k, 2); got n={n}, k={k}")
    if h is not None and h >= 2 * k:
        raise ValueError(
            f"h={h} >= 2k={2 * k}: every hypergraph with that intersection property has "
            "property B_k, so the quantity is undefined"
        )
    if h is not None and h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    cst = dict(DEFAULT_CONSTANTS)
    cst.update(constants or {})
    N = _mpf(n)
    ln = mp.log(N)
    S = _mpf(_sum_binom_lt(n, k))
    C = _mpf(comb(n - 1, k - 1))
    two = lambda e: mp.power(2, e)  # noqa: E731
    region = {
        "n>=30": n >= 30,
        "k>=2": k >= 2,
        "k<=sqrt(n/ln n)": k * k * math.log(n) <= n,
    }
    tight = {"2k^2(n-k)<=(n-2k)^2": 2 * k * k * (n - k) <= (n - 2 * k) ** 2}
    b: dict[str, BoundValue] = {}

    b["mB_lower_union"] = BoundValue(two(n - 1), {})
    b["mB_upper_random"] = BoundValue(mp.e * mp.log(2) / 4 * N**2 * two(n), {}, True)
    b["mB_lower_rs"] = BoundValue(_mpf("0.1") * two(n) * mp.sqrt(N / ln), {})
    b["mk_lower_union"] = BoundValue(two(n - 1) / S, {"n>=2k": n >= 2 * k})
    b["mk_upper_random"] = BoundValue(
        mp.e * mp.log(2) / 4 * N**2 * two(n) / S * cst["psi"], {}, True
    )
    b["mk_lower_logk"] = BoundValue(
        cst["c_logk"] * mp.sqrt(N / ln) * mp.exp(-_mpf(k) / 2) / mp.sqrt(2 * k - 1)
        * two(n - k) / comb(n, k - 1),
        {},
        True,
    )
    b["mk_lower_quarter"] = BoundValue(_mpf("0.19") * N ** _mpf("0.25") * two(n - 1) / C, {})
    b["mk_lower_ordering"] = BoundValue(ordering_bound_mp(n, k), dict(region))

    if eps is not None:
        e = _mpf(eps)
        lo, hi, _ = epsilon_window(n, k, cst.get("R", 1.0))
        eflags = {"eps_below_trivial": e < hi}
        b["mke_lower_logk"] = BoundValue(
            cst["c_eps"] * e * (N / ln) * two(2 * n) / S**2 * two(-2 * k) * mp.exp(-k) / (2 * k - 1),
            dict(eflags),
            True,
        )
        b["mke_lower_sqrt"] = BoundValue(
            _mpf("0.0361") * e * mp.sqrt(N) * two(2 * n - 2) / C**2,
            {"n>=14": n >= 14, "k>=2": k >= 2, **tight, **eflags},
        )
        b["mke_lower_ordering"] = BoundValue(
            1 / (3 * mp.e**35) * two(2 * n - 2) / C**2 * N / mp.log(N ** (2 * k) * ln) * e / 2,
            {**region, **eflags},
        )

    if h is not None:
        hflags = {"h<2k": h < 2 * k, "k<h": k < h}
        b["mkh_lower_shape"] = BoundValue(
            cst["c_Ah"] * (3 * N / (2 * h * ln)) ** (_mpf(h) / 3) * two(n - 1) / comb(n, k - 1),
            dict(hflags),
            True,
        )
        denom = _intersecting_denominator(n, k, h)
        b["mkh_lower_quarter"] = BoundValue(
            _mpf("0.19") * N ** _mpf("0.25") * two(n - 1) / denom,
            {**hflags, "2k^2(n-k)<(n-2k)^2": 2 * k * k * (n - k) < (n - 2 * k) ** 2},
        )
        b["mkh_lower_ordering"] = BoundValue(
            ordering_bound_Ah_mp(n, k, h), {**region, **hflags, "k>2": k > 2}
        )

    if n >= 2 * k + 1:
        C2 = _mpf(comb(n - 2, k - 1))
        b["mstar_k_lower_quarter"] = BoundValue(
            _mpf("0.19") ** 2 / (8 * mp.e) * two(2 * n - 2) / ((N - 1) ** _mpf(1.5) * C2**2),
            {"2k^2(n-k-1)<(n-2k-1)^2": 2 * k * k * (n - k - 1) < (n - 2 * k - 1) ** 2},
        )
        b["mstar_k_lower_ordering"] = BoundValue(
            25 / (18 * mp.e**52) * two(2 * n - 2) / (k * (N - 1) * mp.log(N - 1) * C2**2),
            dict(region),
        )
    b["mstar_lower_shape"] = BoundValue(cst["c1"] * mp.power(4, n) / N**3, {}, True)
    b["mstar_upper_shape"] = BoundValue(cst["c2"] * N**4 * mp.power(4, n), {}, True)
    b["mstar_lower_subpoly"] = BoundValue(mp.power(4, n) * N ** (-_mpf(cst["delta"])), {}, True)
    b["degree_limit_plus_one"] = BoundValue(degree_limit_mp(n, k), dict(region))
    return BoundReport(n, k, h, eps, cst, b)


# --------------------------------------------------------------------------
# factor audit
# --------------------------------------------------------------------------

FACTOR_CAPS = {"alpha": 0.15, "gamma": 0.5, "epsilon_f": 0.25, "R": 3.0, "T": 4 / 3}


@dataclass
class FactorSet:
    n: int
    k: int
    alpha: float | None
    gamma: float | None
    epsilon_f: float | None
    beta: float | None
    R: float | None
    T: float | None
    degenerate: bool
    in_region: bool
    caps: dict[str, bool]

    @property
    def caps_hold(self) -> bool:
        return all(self.caps.values())

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def factor_audit(n: int, k: int) -> FactorSet:
    """Compute ``alpha, gamma, eps_f, beta, R, T`` and check their numeric caps.

    Caps are only checked inside the admissible region (``n >= 30``,
    ``2 <= k <= sqrt(n / ln n)``); outside it ``caps`` is empty.
    """
    region = _in_region(n, k)
    if n <= 4 * k:
        # some factor has a zero or negative denominator or exceeds 1
        return FactorSet(n, k, None, None, None, None, None, None, True, region, {})
    alpha = k / (n - 3 * k)
    gamma = 4 * k / (n - k)
    eps_f = 2 * k / (n - 2 * k)
    beta = (n - 2 * k) ** 2 / (2 * k * k * (n - k))
    R = (1 - alpha) ** -2 / (1 - gamma)
    T = 1 / (1 - eps_f)
    caps = {}
    if region:
        caps = {
            "alpha<=0.15": alpha <= 0.15,
            "gamma<=0.5": gamma <= 0.5,
            "epsilon_f<=0.25": eps_f <= 0.25,
            "beta>1": beta > 1,
            "R<=3": R <= 3,
            "T<=4/3": T <= 4 / 3,
        }
    return FactorSet(n, k, alpha, gamma, eps_f, beta, R, T, False, region, caps)


# --------------------------------------------------------------------------
# inequality audit
# --------------------------------------------------------------------------


@dataclass
class AuditRow:
    name: str
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    holds: bool
    strict: bool = True

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": _dec(self.lhs), "rhs": _dec(self.rhs),
                "holds": self.holds, "relation": "<" if self.strict else "<="}


@dataclass
class InequalityAudit:
    n: int
    k: int
    h: int | None
    flags: dict[str, bool]
    rows: list[AuditRow]

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.rows)

    def failures(self) -> list[AuditRow]:
        return [r for r in self.rows if not r.holds]

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "h": self.h, "flags": self.flags,
                "all_hold": self.all_hold, "rows": [r.to_dict() for r in self.rows]}


class _Rows(list):
    def lt(self, name, lhs, rhs):
        lhs, rhs = _mpf(lhs), _mpf(rhs)
        self.append(AuditRow(name, lhs, rhs, bool(lhs < rhs), True))

    def le(self, name, lhs, rhs):
        lhs, rhs = _mpf(lhs), _mpf(rhs)
        self.append(AuditRow(name, lhs, rhs, bool(lhs <= rhs), False))


# Edge counts are evaluated a hair below their supremum, the worst case of
# every "|E| < bound" hypothesis.
_BELOW_SUP = 1 - mp.power(2, -64)


def _dense_lower_terms(n: int, k: int, d) -> list[mpmath.mpf]:
    coef = _mpf(1) / (n - k + 1)
    out = []
    for i in range(k):
        if i:
            coef = coef * (k - i) / (n - k + 1 + i)
        out.append(coef * d ** (n - k + 1 + i) * (1 - d) ** (k - 1 - i))
    return out


def _dense_gap_terms(n: int, k: int, d) -> list[mpmath.mpf]:
    return [
        _mpf(comb(n - k, i) * factorial(k - 1) * factorial(i)) / factorial(i + k)
        * d ** (n - k - i) * (1 - d) ** (i + k)
        for i in range(k)
    ]


def inequality_audit(n: int, k: int, h: int | None = None) -> InequalityAudit:
    """Replay every numeric inequality of the ordering-based argument at ``(n, k)``.

    The number of edges is set just below the largest value the argument
    allows, so each row is checked at its worst case.  Rows evaluate actual
    probabilities (exact or union-bound sums) next to the closed forms that
    bound them.  With ``h`` given, the intersecting-edges variant is replayed
    as well.
    """
    flags = {
        "n>=30": n >= 30,
        "k>=2": k >= 2,
        "k<=sqrt(n/ln n)": k * k * math.log(n) <= n,
    }
    if h is not None:
        flags.update({"k<h<2k": k < h < 2 * k, "k>2": k > 2})
    rows = _Rows()
    N = _mpf(n)
    ln = mp.log(N)
    C = _mpf(comb(n - 1, k - 1))
    e = mp.e
    if n <= 4 * k:
        flags["degenerate"] = True
        return InequalityAudit(n, k, h, flags, list(rows))

    alpha, gamma = _alpha_gamma(n, k)
    eps_f = _mpf(2 * k) / (n - 2 * k)
    T = 1 / (1 - eps_f)
    beta = _mpf(n - 2 * k) ** 2 / (2 * k * k * (n - k))
    p = 2 * k * ln / N
    d = (1 - p) / 2
    m_sup = ordering_bound_mp(n, k)
    m = m_sup * _BELOW_SUP
    sq = mp.sqrt(N / (k * ln))

    # -- dense edges: lower tail --------------------------------------------
    lt = _dense_lower_terms(n, k, d)
    ratios = [lt[i + 1] / lt[i] for i in range(k - 1)]
    rows.le("lower_tail_terms_nonincreasing", max(ratios, default=_mpf(0)), 1)
    low = n * C * sum(lt)
    top = n * C * k * lt[0]
    rows.le("lower_tail_by_top_term", m * low, m * top)
    exp_k1 = mp.exp(2 * p * (k - 1) / (1 - p))
    S1 = 6 / e**26 * sq * N * k / (n - k + 1) / mp.power(N, 2 * k) * exp_k1
    rows.le("lower_tail_top_term_closed_form", m * top, S1)
    rows.lt("exp_factor_below_e13", exp_k1, e**13)
    rows.le("exp_factor_exponent_region", 4 * k * k * ln / (n - 2 * k * ln),
            4 / (1 - 2 * mp.sqrt(ln / N)))
    c30 = 4 / (1 - 2 * mp.sqrt(mp.log(30) / 30))
    rows.le("exp_factor_exponent_monotone", 4 / (1 - 2 * mp.sqrt(ln / N)), c30)
    rows.lt("exp_factor_exponent_at_30", c30, 13)
    S1_e13 = 6 / e**13 * sq * N * k / (n - k + 1) / mp.power(N, 2 * k)
    rows.lt("lower_tail_S1_after_e13", S1, S1_e13)
    rows.lt("lower_tail_total", S1_e13, 1 / (45 * e**13))
    rows.lt("lower_tail_constant", 6 / (27 * mp.sqrt(30 * mp.log(30))), _mpf(1) / 45)

    # -- dense edges: gap above threshold --------------------------------------
    gt = _dense_gap_terms(n, k, d)
    gap_ratio = max((gt[i] / gt[i + 1] for i in range(k - 1)), default=_mpf(0))
    rows.lt("gap_term_ratio_below_eps", gap_ratio, eps_f)
    rows.lt("eps_below_one", eps_f, 1)
    gap = n * C * sum(gt)
    rows.le("gap_sum_by_top_term", gap, T * n * C * gt[-1])
    rows.lt("exp_factor_gap_below_e26", mp.exp(2 * p * (2 * k - 1) / (1 - p)), e**26)
    S2_closed = 6 * T * sq * factorial(k - 1) / (factorial(2 * k - 1) * mp.power(N, k))
    rows.le("gap_total_closed_form", m * T * n * C * gt[-1], S2_closed)
    rows.lt("gap_closed_form_sqrt", S2_closed, 6 * T / mp.sqrt(N * ln))
    rows.lt("gap_total", 6 * T / mp.sqrt(N * ln), _mpf(3) / 5 * T)

    dense_total = m * (low + gap)
    rows.lt("dense_union_total", dense_total, 1 / (45 * e**13) + _mpf(3) / 5 * T)
    rows.le("dense_union_T_cap", 1 / (45 * e**13) + _mpf(3) / 5 * T, 1 / (45 * e**13) + _mpf(4) / 5)

    # -- bad pairs ------------------------------------------------------------
    rows.le("alpha_ratio_i", max(_mpf(i + 1) / (n - hh - i)
                                 for hh in range(1, 2 * k) for i in range(k)), alpha)
    rows.lt("alpha_below_one", alpha, 1)
    beta_min = None
    for hh in range(1, 2 * k - 1):
        for t in range(max(0, hh - k), min(k - 1, hh - 1) + 1):
            den = 2 * (hh + 1) * (k - hh + t) * (n - hh - k + t + 1)
            if den <= 0:
                continue
            r = _mpf((n - hh) ** 2 * (hh - t)) / den
            beta_min = r if beta_min is None else min(beta_min, r)
    if beta_min is not None:
        rows.le("h_ratio_at_least_beta", beta, beta_min)
    rows.lt("beta_above_one", 1, beta)
    rows.lt("beta_numerator_margin", 0, ln - 2 - 4 * mp.sqrt(ln / N))
    g_min = min(
        _mpf((t + 1) * (n - t - 1) ** 2) / (2 * (t + 2) * (k - 1 - t) * (n - t - k))
        for t in range(k - 1)
    ) if k >= 2 else None
    if g_min is not None:
        rows.le("t_ratio_at_least_inverse_gamma", 1 / gamma, g_min)
    rows.lt("gamma_below_one", gamma, 1)

    coarse = badpair_bound_coarse(n, k)
    top_b = _badpair_top_term_bound(n, k, p)
    worst = _mpf(0)
    for hh in range(1, 2 * k):
        w = _window_bound(n, k, hh, p)
        worst = max(worst, w)
        ts = _badpair_tsum_bound(n, k, hh, p)
        rows.le(f"badpair_window_le_tsum[h={hh}]", w, ts)
        rows.le(f"badpair_tsum_le_top[h={hh}]", ts, top_b)
    rows.le("badpair_top_le_coarse", top_b, coarse)
    rows.lt("badpair_union_total", m * m * coarse, 864 / e**22)
    rows.lt("final_constant", 864 / e**22 + 1 / (45 * e**13) + _mpf(4) / 5, 1)
    rows.lt("replay_union_total", dense_total + m * m * worst, 1)

    # -- fraction-of-edges variant ------------------------------------------------
    pe = mp.log(mp.power(N, 2 * k) * ln) / N
    de = (1 - pe) / 2
    lnln = mp.log(ln)
    rows.lt("eps_p_power_below_e5", (1 + pe) ** (2 * k), e**5)
    rows.le("eps_p_power_exponent", 4 * k * k * ln / N + 2 * k * lnln / N,
            4 + 2 * lnln / mp.sqrt(N * ln))
    rows.lt("eps_p_power_constant", 4 + 2 * mp.log(mp.log(30)) / mp.sqrt(30 * mp.log(30)), 5)
    rows.lt("eps_p_ratio_below_e15", ((1 + pe) / (1 - pe)) ** k, e**15)
    low_e, gap_e = _dense_parts(n, k, de)
    lower_cap = e**15 / (mp.power(N, k) * mp.power(2, n) * ln)
    gap_cap = 2 * e**30 / 9 / (mp.power(2, n) * N * ln)
    rows.lt("eps_lower_tail_per_edge", low_e, lower_cap)
    rows.lt("eps_gap_per_edge", gap_e, gap_cap)
    rows.lt("eps_lower_below_gap_cap", lower_cap, gap_cap)
    cap35 = 3 * e**35 * C**2 * mp.power(2, 2 - 2 * n) * pe
    worst_e = max(_window_bound(n, k, hh, pe) for hh in range(1, 2 * k))
    rows.le("eps_badpair_bound", worst_e, cap35)

    # -- intersection-restricted variant ------------------------------------------
    if h is not None and k < h < 2 * k:
        denom = _intersecting_denominator(n, k, h)
        m4 = ordering_bound_Ah_mp(n, k, h) * _BELOW_SUP
        rhs42 = (
            e**13 * m4 * C * mp.power(2, -n) * N * k / (n - k + 1) / mp.power(N, 2 * k)
            + e**26 * T * m4 * C * mp.power(2, -n) * mp.power(N, k)
            * factorial(k - 1) / factorial(2 * k - 1) / mp.power(N, 2 * k)
        )
        dense4 = m4 * (low + gap)
        rows.le("Ah_dense_union_bound", dense4, rhs42)
        rows.lt("Ah_edge_factor", m4 * C * mp.power(2, -n),
                6 / e**26 * sq * mp.power(N, _mpf(h - k) / 2))
        rows.lt("Ah_dense_total", rhs42, 1 / (45 * e**13) + _mpf(3) / 5 * T)
        Ah_pair = (
            6 * e**30 * mp.power(2, 2 - 2 * n) * (h - k + 1) * comb(n - 1, 2 * k - 1 - h)
            * C * mp.power(2, h - k) * k * ln / N
        )
        worst4 = max(_window_bound(n, k, ll, p) for ll in range(h, 2 * k))
        rows.le("Ah_badpair_bound", worst4, Ah_pair)
        rows.lt("Ah_badpair_union_total", m4 * m4 * Ah_pair, 864 / e**22)
        rows.lt("Ah_replay_union_total", dense4 + m4 * m4 * worst4, 1)
        del denom

    # -- bounded intersection degree ----------------------------------------------
    D1 = degree_limit_mp(n, k)
    per_edge = dense_bound_per_edge(n, k)
    rows.le("degree_dense_exact_le_bound", low + gap, per_edge)
    lll_sum = 4 * D1**2 * coarse + 2 * D1 * per_edge
    rows.lt("degree_local_sum", lll_sum, 200 / (3 * e**22) + 1 / (162 * e**13) + _mpf(2) / 9)
    rows.lt("degree_constant", 200 / (3 * e**22) + 1 / (162 * e**13) + _mpf(2) / 9, _mpf(1) / 4)
    return InequalityAudit(n, k, h, flags, list(rows))


# --------------------------------------------------------------------------
# epsilon window
# --------------------------------------------------------------------------


def epsilon_window(n: int, k: int, R_const: float = 1.0, S_const: float | None = None):
    """Range of ``eps`` where ``m_{k,eps}(n)`` is a meaningful quantity.

    Returns ``(lo, hi, remark_hi)``: ``lo = R * Sigma * 2^(1-n) / n^2``,
    ``hi = Sigma * 2^(1-n)`` and, when ``S_const`` is given,
    ``remark_hi = S * Sigma * 2^(1-n) / sqrt(n)``; ``Sigma`` sums
    ``binom(n, j)`` for ``j < k``.
    """
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    S = _mpf(_sum_binom_lt(n, k))
    base = S * mp.power(2, 1 - n)
    lo = _mpf(R_const) * base / _mpf(n) ** 2
    rem = None if S_const is None else _mpf(S_const) * base / mp.sqrt(n)
    return lo, base, rem


def _I_minus_J_log(n, k: int, R_const) -> mpmath.mpf:
    """``log I - log J`` at (possibly huge, real) ``n``."""
    n = _mpf(n)
    S = sum(mp.binomial(n, j) for j in range(k))
    logI = mp.log(R_const) + mp.log(S) - (n + 1) * mp.log(2) - 2 * mp.log(n)
    logJ = mp.log(2 * mp.e**30 / 9) - n * mp.log(2) - mp.log(n) - mp.log(mp.log(n))
    return logI - logJ


def eps_feasible(n: int, k: int, R_const: float = 1.0) -> bool:
    """Whether ``I >= J`` holds at ``n`` (the lower window end clears the gap bound)."""
    return bool(_I_minus_J_log(n, k, R_const) >= 0)


def eps_crossover(k: int, R_const: float = 1.0, n_max=10**60):
    """Smallest ``n >= 30`` from which ``I >= J`` holds, located by doubling
    then bisection; ``None`` if it lies beyond ``n_max``.

    ``log I - log J`` is eventually increasing in ``n`` for ``k >= 2``, so the
    search assumes a single crossover past ``n = 30``.
    """
    lo = 30
    if eps_feasible(lo, k, R_const):
        return lo
    hi = 60
    while not eps_feasible(hi, k, R_const):
        if hi > n_max:
            return None
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if eps_feasible(mid, k, R_const):
            hi = mid
        else:
            lo = mid
    return hi
