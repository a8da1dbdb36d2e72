"""Machine-checkable evaluation of the explicit inequality expressions.

Bound right-hand sides mix certified series values with p raised to rational
exponents; comparisons happen either on BoundReal enclosures or, for the
astronomically large nested sums, in log_p space with exact big-integer
storage of the sums themselves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .freelie import dn_dim
from .qcombin import BoundReal, c_series, d_series, exact, gauss_binom, pow_real


# ---------------------------------------------------------------------------
# profile bound for normal subgroups


def normalthm_bound(g: Sequence[int], u: Sequence[int], v: Optional[Sequence[int]],
                    w: Optional[Sequence[int]], p: int):
    """Upper bound on the number of normal subgroups with series profile u.

    Exact value: the product of q-binomials and p-powers with the given
    lower-bound profiles v (derived-subgroup dims) and w (power-commutator
    dims); v = w = 0 is always a legitimate choice.  Returns an int when all
    exponents are nonnegative, otherwise an exact Fraction.
    """
    n = len(g)
    v = list(v) if v is not None else [0] * n
    w = list(w) if w is not None else [0] * n
    if not (len(u) == len(v) == len(w) == n):
        raise ValueError("profile lengths must agree")
    if any(not 0 <= u[i] <= g[i] for i in range(n)):
        raise ValueError("u must satisfy 0 <= u_i <= g_i")
    out = Fraction(gauss_binom(g[0], u[0], p))
    for i in range(2, n + 1):
        coef = gauss_binom(g[i - 1] - w[i - 1], u[i - 1] - w[i - 1], p)
        expo = (g[i - 1] - u[i - 1]) * (sum(u[: i - 1]) - sum(v[: i - 1]))
        out *= Fraction(coef) * Fraction(p) ** expo
    return int(out) if out.denominator == 1 else out


def fnormal_bound(p: int, d: int, n: int, u: Sequence[int], reading: str = "standard") -> BoundReal:
    """Bound on profile counts in the relatively free group, u = (u_2 .. u_n).

    reading="standard" uses exponent (u_i - u_{i-1}/2)(d_i - u_i); the
    "alternate" reading replaces the leading u_i by d_i.  Both appear in the
    literature, so both are exposed for comparison.
    """
    if d < 3 or n < 3:
        raise ValueError("requires d >= 3 and n >= 3")
    if len(u) != n - 1:
        raise ValueError("u must list u_2 .. u_n")
    dims = {i: dn_dim(d, i) for i in range(1, n + 1)}
    uu = {1: 0}
    for i in range(2, n + 1):
        uu[i] = u[i - 2]
    out = d_series(p).powi(n - 1)
    for i in range(2, n + 1):
        if reading == "standard":
            expo = (Fraction(uu[i]) - Fraction(uu[i - 1], 2)) * (dims[i] - uu[i])
        elif reading == "alternate":
            expo = (Fraction(dims[i]) - Fraction(uu[i - 1], 2)) * (dims[i] - uu[i])
        else:
            raise ValueError("reading must be 'standard' or 'alternate'")
        out = out * pow_real(p, expo)
    return out


# ---------------------------------------------------------------------------
# exact values of the form (a + b sqrt(p)) * p^(shift/2)


@dataclass
class SqrtNum:
    """Exact positive number a + b*sqrt(p) times p^(half_shift/2)."""

    p: int
    half_shift: int
    a: int
    b: int

    @classmethod
    def one(cls, p: int) -> "SqrtNum":
        return cls(p, 0, 1, 0)

    def shifted(self, half_units: int) -> "SqrtNum":
        return SqrtNum(self.p, self.half_shift + half_units, self.a, self.b)

    def __add__(self, other: "SqrtNum") -> "SqrtNum":
        assert self.p == other.p
        lo, hi = (self, other) if self.half_shift <= other.half_shift else (other, self)
        delta = hi.half_shift - lo.half_shift
        p = self.p
        if delta % 2 == 0:
            scale = p ** (delta // 2)
            return SqrtNum(p, lo.half_shift, lo.a + hi.a * scale, lo.b + hi.b * scale)
        scale = p ** ((delta - 1) // 2)
        # (a + b sqrt p) * sqrt p = b p + a sqrt p
        return SqrtNum(p, lo.half_shift, lo.a + hi.b * p * scale, lo.b + hi.a * scale)

    def log_p(self) -> float:
        la = _log_bigint(self.a) if self.a else -math.inf
        lb = (_log_bigint(self.b) + 0.5 * math.log(self.p)) if self.b else -math.inf
        if la == -math.inf and lb == -math.inf:
            return -math.inf
        m = max(la, lb)
        total = m + math.log(math.exp(la - m) + math.exp(lb - m))
        return self.half_shift / 2.0 + total / math.log(self.p)


def _log_bigint(x: int) -> float:
    if x <= 0:
        raise ValueError("log of nonpositive integer")
    if x < 2**52:
        return math.log(x)
    k = x.bit_length() - 52
    return math.log(x >> k) + k * math.log(2)


# ---------------------------------------------------------------------------
# the nested profile sums and their bound


@dataclass(frozen=True)
class PowSum:
    """Exact finite sum of c_k * p^(k/2), stored as parallel (k, c) arrays.

    Coefficients are term-multiplicity counts, far below 2^53, so the float64
    bincount merges stay exact.
    """

    p: int
    exps: "np.ndarray"  # half-unit exponents, int64, strictly increasing
    counts: "np.ndarray"  # positive int64

    def log_p(self) -> float:
        if self.exps.size == 0:
            return -math.inf
        kmax = int(self.exps[-1])
        rel = (self.exps - kmax) / 2.0 * math.log(self.p)
        total = float(np.sum(self.counts * np.exp(rel)))
        return kmax / 2.0 + math.log(total) / math.log(self.p)

    def to_sqrtnum(self) -> SqrtNum:
        out = SqrtNum(self.p, 0, 0, 0)
        for k, c in zip(self.exps.tolist(), self.counts.tolist()):
            out = out + SqrtNum(self.p, int(k), int(c), 0)
        return out


@dataclass(frozen=True)
class AiReport:
    p: int
    d: int
    n: int
    i: int
    u_i: int
    lhs_log_p: float
    rhs_log_p: float
    holds: bool
    hypothesis_ok: bool
    exact: PowSum


def _hypothesis_ok(d: int, n: int) -> bool:
    return (n >= 3 and d >= 6) or (n >= 10 and d >= 5)


def gaussprods_tables(p: int, d: int, n: int) -> Dict[int, List[PowSum]]:
    """Exact vectors A_j(u_j) for j = 1..n-1, u_j = 0..d_j, by backward recursion.

    Term exponents are tracked in half-units of log_p; each A_j(u_j) is an
    exact multiset of exponents merged with bincount.
    """
    dims = {j: dn_dim(d, j) for j in range(1, n + 1)}
    inner_lo = {j: 0 for j in range(2, n + 1)}
    inner_lo[n - 1] = 1
    inner_lo[n] = 2
    one = PowSum(p, np.array([0], dtype=np.int64), np.array([1], dtype=np.int64))
    tables: Dict[int, List[PowSum]] = {n: [one] * (dims[n] + 1)}
    for j in range(n - 1, 0, -1):
        nxt = tables[j + 1]
        vec = []
        for u_j in range(dims[j] + 1):
            exp_chunks = []
            cnt_chunks = []
            for u in range(inner_lo[j + 1], dims[j + 1] + 1):
                half = (dims[j + 1] - u) * (2 * u - u_j)
                exp_chunks.append(nxt[u].exps + half)
                cnt_chunks.append(nxt[u].counts)
            if not exp_chunks:
                vec.append(PowSum(p, np.array([], dtype=np.int64), np.array([], dtype=np.int64)))
                continue
            exps = np.concatenate(exp_chunks)
            cnts = np.concatenate(cnt_chunks)
            lo = int(exps.min())
            merged = np.bincount(exps - lo, weights=cnts.astype(np.float64))
            nz = np.flatnonzero(merged)
            vec.append(PowSum(p, (nz + lo).astype(np.int64), merged[nz].astype(np.int64)))
        tables[j] = vec
    return tables


def gaussprods_tables_bigint(p: int, d: int, n: int) -> Dict[int, List[SqrtNum]]:
    """Big-integer reference implementation of gaussprods_tables (slow oracle)."""
    dims = {j: dn_dim(d, j) for j in range(1, n + 1)}
    inner_lo = {j: 0 for j in range(2, n + 1)}
    inner_lo[n - 1] = 1
    inner_lo[n] = 2
    tables: Dict[int, List[SqrtNum]] = {n: [SqrtNum.one(p)] * (dims[n] + 1)}
    for j in range(n - 1, 0, -1):
        nxt = tables[j + 1]
        vec = []
        for u_j in range(dims[j] + 1):
            acc: Optional[SqrtNum] = None
            for u in range(inner_lo[j + 1], dims[j + 1] + 1):
                half = (dims[j + 1] - u) * (2 * u - u_j)
                term = nxt[u].shifted(half)
                acc = term if acc is None else acc + term
            vec.append(acc if acc is not None else SqrtNum(p, 0, 0, 0))
        tables[j] = vec
    return tables


def gaussprods_ai(
    p: int,
    d: int,
    n: int,
    i: int,
    u_i: int,
    tables: Optional[Dict[int, List[SqrtNum]]] = None,
) -> AiReport:
    """Exact nested sum A_i(u_i) next to its stated upper bound, in log_p space.

    For i <= n-2 the bound is the stated one; for i = n-1 the single-sum bound
    C(p) p^((d_n - u_{n-1}/2)^2 / 4) from the inductive base applies instead.
    """
    if not 1 <= i <= n - 1:
        raise ValueError("i must be in 1..n-1")
    dims = {j: dn_dim(d, j) for j in range(1, n + 1)}
    if not 0 <= u_i <= dims[i]:
        raise ValueError("u_i out of range")
    if tables is None:
        tables = gaussprods_tables(p, d, n)
    val = tables[i][u_i]
    lhs = val.log_p()
    cp = c_series(p)
    if i <= n - 2:
        c15 = c_series(p ** Fraction(15, 16))
        rhs = (
            math.log(c15.hi) / math.log(p)
            + (n - i - 1) * math.log(cp.hi) / math.log(p)
            + float(
                Fraction(-15, 16)
                + Fraction(dims[n] ** 2, 4)
                + dims[n - 1]
                - Fraction(dims[n], 4)
            )
            - u_i * (dims[i + 1] - 1) / 2.0
        )
    else:
        rhs = math.log(cp.hi) / math.log(p) + (dims[n] - u_i / 2.0) ** 2 / 4.0
    holds = lhs <= rhs + 1e-9
    return AiReport(
        p=p, d=d, n=n, i=i, u_i=u_i,
        lhs_log_p=lhs, rhs_log_p=rhs, holds=holds,
        hypothesis_ok=_hypothesis_ok(d, n), exact=val,
    )


# ---------------------------------------------------------------------------
# the two orbit-ratio limit bounds


@dataclass(frozen=True)
class LimitReport:
    value: BoundReal
    hypothesis_ok: bool
    warnings: tuple = ()


def limit1_bound(p: int, d: int, n: int) -> LimitReport:
    """Upper bound on the orbit-count ratio controlled by normal-subgroup counts."""
    warns = []
    hyp = _hypothesis_ok(d, n)
    if not hyp:
        warns.append("outside stated hypotheses")
    dims = {j: dn_dim(d, j) for j in (n - 1, n)}
    expo = (
        Fraction(dims[n - 1])
        - Fraction(dims[n], 4)
        + Fraction(d * d)
        - Fraction(11, 16)
    )
    c15 = c_series(p ** Fraction(15, 16))
    term = c15 * c_series(p).powi(n - 2) * d_series(p).powi(n - 2) * pow_real(p, expo)
    return LimitReport(exact(1) + term, hyp, tuple(warns))


def limit2_constants(p: int, d: int, n: int) -> Tuple[BoundReal, Fraction]:
    """Piecewise constants (c1, c2) of the orbit-regularity bound."""
    if n == 2:
        if d < 10:
            raise ValueError("n = 2 requires d >= 10")
        c1 = c_series(p).powi(5) * d_series(p).powi(4) * pow_real(p, Fraction(17, 4))
        c2 = Fraction(-d)
    elif n >= 3:
        if d < 3:
            raise ValueError("n >= 3 requires d >= 3")
        c1 = c_series(p).powi(2) * d_series(p) * pow_real(p, Fraction(3, 4))
        c2 = Fraction(d * d) - Fraction(dn_dim(d, n), 2)
    else:
        raise ValueError("n must be at least 2")
    return c1, c2


@dataclass(frozen=True)
class Limit2Report:
    bound_a: BoundReal
    bound_b: Optional[BoundReal]
    vacuous_b: bool


def limit2_bounds(p: int, d: int, n: int) -> Limit2Report:
    """1 + c1 p^c2 and its two-sided companion; the latter is vacuous when
    c1 p^c2 >= 1."""
    c1, c2 = limit2_constants(p, d, n)
    t = c1 * pow_real(p, c2)
    bound_a = exact(1) + t
    if t.hi >= 1:
        return Limit2Report(bound_a=bound_a, bound_b=None, vacuous_b=True)
    denom = 1.0 - t.value
    value = bound_a.value / denom
    err = (bound_a.abs_error + bound_a.hi * t.abs_error / denom) / denom + abs(value) * 1e-12
    return Limit2Report(bound_a=bound_a, bound_b=BoundReal(value, err), vacuous_b=False)


# ---------------------------------------------------------------------------
# dimension-sequence inequalities


def dn_inequalities(d: int, n: int) -> Tuple[bool, bool, bool]:
    """Exact rational checks of the three dimension-gap inequalities."""
    if n < 3:
        raise ValueError("n must be at least 3")
    dn = Fraction(dn_dim(d, n))
    dn1 = Fraction(dn_dim(d, n - 1))
    dn2 = Fraction(dn_dim(d, n - 2))
    first = dn - 4 * dn1 - 2 * dn2 >= Fraction(-15, 2)
    second = dn - 2 * dn1 - Fraction(2, n - 2) * dn2 >= -1
    third = dn - 4 * dn1 - 4 * d * d + Fraction(11, 16) > 0
    return first, second, third


def dn_upper(d: int, n: int) -> bool:
    """Exact check of d_n <= (10/7) d^n / n."""
    if d < 5:
        raise ValueError("requires d >= 5")
    return Fraction(dn_dim(d, n)) <= Fraction(10 * d**n, 7 * n)


# ---------------------------------------------------------------------------
# grid scan rows (CSV-ready)


@dataclass(frozen=True)
class GridRow:
    p: int
    d: int
    n: int
    profile: str
    lhs: str
    rhs: str
    holds: bool
    warnings: str


def limit1_grid(ps: Sequence[int], ds: Sequence[int], ns: Sequence[int]) -> List[GridRow]:
    rows = []
    for p in sorted(ps):
        for d in sorted(ds):
            for n in sorted(ns):
                rep = limit1_bound(p, d, n)
                rows.append(
                    GridRow(
                        p=p, d=d, n=n, profile="",
                        lhs="1", rhs=f"{rep.value.value:.12g}",
                        holds=rep.value.lo >= 1.0 - 1e-9,
                        warnings=";".join(rep.warnings),
                    )
                )
    return sorted(rows, key=lambda r: (r.p, r.d, r.n))
