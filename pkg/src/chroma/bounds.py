"""The linear program on neighbour class sizes, the inequality sweeps, the k=4
refinement, and the per-graph bound chain.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .chromatic import DEFAULT_GUARD, chromatic_number, colorings_array, count_colorings
from .criticality import radiant_rows
from .graph import Graph, is_clique, two_core
from .overprediction import (
    global_T_bound,
    log_t_rows,
    log_x_pi_rows,
    make_star,
    profile_rows,
)

CLOSED_FORM_TOL = 1e-12
LOG_TOL = 1e-9
DEFAULT_JMAX = 12


# -- the linear program ------------------------------------------------------


@dataclass(frozen=True)
class LPInstance:
    """Maximise sum a_j/(j+1) s.t. sum a_j = x, sum j a_j = k-1, sum j^2 a_j <= S, a >= 0."""

    x: int
    k: int
    S: float

    def __post_init__(self):
        if not self.x >= self.k >= 4:
            raise ValueError(f"need x >= k >= 4, got x={self.x}, k={self.k}")
        if self.S < self.k - 1:
            raise ValueError(f"S={self.S} below k-1={self.k - 1}: infeasible")


@dataclass(frozen=True)
class LPSolution:
    value: float
    argmax: list[tuple[int, int]]
    solution: tuple[float, float, float]


def lp_closed_form(inst: LPInstance) -> float:
    x, k, S = inst.x, inst.k, inst.S
    if not k - 1 <= S <= 3 * k - 3:
        raise ValueError(f"S={S} outside [k-1, 3k-3] = [{k - 1}, {3 * k - 3}]")
    if S <= 2 * k - 2:
        return x - (4 * (k - 1) - S) / 6
    return x - (6 * (k - 1) - S) / 12


def _pair_value(x: int, k: int, S: float, j0: int, j1: int) -> float:
    return x - ((k - 1) * (j0 + j1 + 1) - S) / ((j0 + 1) * (j1 + 1))


def _pair_solution(x: int, k: int, S: float, j0: int, j1: int) -> tuple[float, float, float]:
    a0_ = ((k - 1) * j1 - S) / (j0 * j1 - j0 * j0)
    a1_ = (S - (k - 1) * j0) / (j1 * j1 - j0 * j1)
    return x - a0_ - a1_, a0_, a1_


def lp_brute_force(inst: LPInstance, jmax: int = DEFAULT_JMAX) -> LPSolution:
    """Optimum over basic solutions supported on {0, j0, j1} with 0 < j0 < j1 <= jmax.

    All pairs within 1e-12 of the optimum are returned in ``argmax``.
    """
    if jmax < 3:
        raise ValueError("jmax must be at least 3")
    x, k, S = inst.x, inst.k, inst.S
    ratio = S / (k - 1)
    scored = []
    for j0 in range(1, jmax):
        for j1 in range(j0 + 1, jmax + 1):
            if j0 <= ratio <= j1:
                scored.append((_pair_value(x, k, S, j0, j1), (j0, j1)))
    if not scored:
        raise ValueError(f"no admissible (j0, j1) with j1 <= {jmax} for S/(k-1) = {ratio}")
    best = max(v for v, _ in scored)
    argmax = [p for v, p in scored if v >= best - CLOSED_FORM_TOL]
    sol = _pair_solution(x, k, S, *argmax[0])
    if min(sol) < -CLOSED_FORM_TOL:
        raise AssertionError(f"basic solution {sol} for pair {argmax[0]} is infeasible")
    j0, j1 = argmax[0]
    objective = sol[0] + sol[1] / (j0 + 1) + sol[2] / (j1 + 1)
    if abs(objective - best) > 1e-9 * max(1.0, abs(best)):
        raise AssertionError(f"objective {objective} disagrees with pair formula {best}")
    return LPSolution(best, argmax, sol)


# -- the large-n chain -------------------------------------------------------


def radiant_T_bound(k: int) -> float:
    """(k!)^(1/k)."""
    if k < 1:
        raise ValueError("k must be positive")
    return math.exp(math.lgamma(k + 1) / k)


def s_for(n: int, k: int) -> float:
    if n <= k:
        raise ValueError(f"need n > k, got n={n}, k={k}")
    return (k - 1) + n * (k - 2) / (n - k)


def theorem9_rhs(n: int, k: int) -> float:
    """Per-vertex base of the large-n bound, i.e. the LP optimum at x = k, S = s_for(n, k)."""
    if n < 2 * k - 1:
        raise ValueError(f"need n >= 2k-1 = {2 * k - 1}, got n={n}")
    if n <= k * k - k:
        return (7 * k + 5) / 12 + n * (k - 2) / (12 * (n - k))
    return (k + 1) / 2 + n * (k - 2) / (6 * (n - k))


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked, "passed": self.passed, "violations": self.violations}


def sweep_theorem9(kmax: int, kmin: int = 5) -> SweepReport:
    """Check theorem9_rhs(n, k) < k-1 on 2k-1 <= n <= max(k^2-k, 4k), plus the n -> oo limit."""
    if kmax < 5:
        raise ValueError("kmax must be at least 5")
    rep = SweepReport("theorem9")
    for k in range(kmin, kmax + 1):
        for n in range(2 * k - 1, max(k * k - k, 4 * k) + 1):
            rep.checked += 1
            if not theorem9_rhs(n, k) < k - 1:
                rep.violations.append({"k": k, "n": n, "rhs": theorem9_rhs(n, k)})
        limit = (k + 1) / 2 + (k - 2) / 6
        rep.checked += 1
        if not limit < k - 1:
            rep.violations.append({"k": k, "n": "inf", "rhs": limit})
    return rep


def edge_count_quadratic(n: int, k: int) -> int:
    return n * n + (1 - 3 * k) * n + (2 * k * k - k + 1)


def sweep_edge_count(kmax: int) -> SweepReport:
    """Check the quadratic is <= 0 for 4 <= k <= kmax and k+1 <= n <= 2k-2."""
    if kmax < 4:
        raise ValueError("kmax must be at least 4")
    rep = SweepReport("edge_count")
    for k in range(4, kmax + 1):
        for n in range(k + 1, 2 * k - 1):
            rep.checked += 1
            q = edge_count_quadratic(n, k)
            if q > 0:
                rep.violations.append({"k": k, "n": n, "value": q})
    return rep


# -- k = 4 -------------------------------------------------------------------


class K4Class(enum.IntEnum):
    S1 = 1
    S2 = 2
    S3 = 3


K4_REPRESENTATIVE = {K4Class.S1: (3, 0, 0, 0), K4Class.S2: (2, 1, 0, 0), K4Class.S3: (1, 1, 1, 0)}
K4_PAIRS = {K4Class.S1: 3, K4Class.S2: 1, K4Class.S3: 0}


def k4_class_of(profile: Sequence[int]) -> K4Class:
    if sum(profile) != 3 or len(profile) != 4:
        raise ValueError(f"{tuple(profile)} is not a starred k=4 profile (length 4, sum 3)")
    return K4Class(sum(1 for c in profile if c))


def k4_tstar(cls: K4Class) -> float:
    cls = K4Class(cls)
    if cls is K4Class.S1:
        return 4 ** 0.25 * 3 ** 0.75
    if cls is K4Class.S2:
        return 4 ** 0.25 * 3 ** (1 / 3) * 2 ** (5 / 12)
    return 24 ** 0.25


def _k4_objective(s1, s2, s3):
    return s1 * math.log(k4_tstar(1)) + s2 * math.log(k4_tstar(2)) + s3 * math.log(k4_tstar(3))


def k4_s_lp(n: int, pair_budget: float | None = None) -> tuple[float, float, float]:
    """Maximiser of sum s_j ln T*_j with s1+s2+s3 = n-4, 3 s1 + s2 <= budget, s >= 0.

    With the default budget ``n`` and n >= 6 this is (2, n-6, 0); otherwise
    the vertices of the feasible polygon are enumerated.
    """
    budget = n if pair_budget is None else pair_budget
    N = n - 4
    if N < 0:
        raise ValueError("need n >= 4")
    if pair_budget is None and n >= 6:
        return (2.0, float(n - 6), 0.0)
    # lines a*s1 + b*s2 = c bounding the (s1, s2) polygon
    lines = [(1, 0, 0), (0, 1, 0), (1, 1, N), (3, 1, budget)]
    best = None
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        s1 = (c1 * b2 - c2 * b1) / det
        s2 = (a1 * c2 - a2 * c1) / det
        s3 = N - s1 - s2
        if min(s1, s2, s3) < -1e-12 or 3 * s1 + s2 > budget + 1e-12:
            continue
        val = _k4_objective(s1, s2, s3)
        if best is None or val > best[0] + 1e-12:
            best = (val, (s1 + 0.0, s2 + 0.0, max(s3, 0.0) + 0.0))
    if best is None:
        raise ValueError(f"infeasible: n={n}, budget={budget}")
    return best[1]


def k4_s_lp_grid(n: int, pair_budget: float | None = None, step: float = 0.01) -> tuple[float, float, float]:
    """Grid-search oracle for :func:`k4_s_lp` on the (s1, s2) simplex."""
    budget = n if pair_budget is None else pair_budget
    N = n - 4
    m = int(round(N / step))
    s1, s2 = np.meshgrid(np.arange(m + 1) * step, np.arange(m + 1) * step, indexing="ij")
    s3 = N - s1 - s2
    ok = (s3 >= -1e-9) & (3 * s1 + s2 <= budget + 1e-9)
    val = np.where(ok, _k4_objective(s1, s2, np.maximum(s3, 0)), -np.inf)
    i, j = np.unravel_index(np.argmax(val), val.shape)
    return float(s1[i, j]), float(s2[i, j]), float(max(s3[i, j], 0.0))


def k4_final_bound(n: int) -> float:
    """4! * 3^((2n-3)/6) * 2^((11n-54)/12)."""
    if n < 6:
        raise ValueError("need n >= 6")
    return 24 * 3 ** ((2 * n - 3) / 6) * 2 ** ((11 * n - 54) / 12)


def k4_final_beats_tomescu(n: int) -> bool:
    """Strict comparison with 4! 3^(n-4), done in log space."""
    lhs = (2 * n - 3) / 6 * math.log(3) + (11 * n - 54) / 12 * math.log(2)
    return lhs < (n - 4) * math.log(3)


def sweep_k4_final(nmax: int = 1000) -> SweepReport:
    """The k=4 bound must beat 4! 3^(n-4) for every 8 <= n <= nmax and fail at n = 7."""
    rep = SweepReport("k4_final")
    for n in range(7, nmax + 1):
        rep.checked += 1
        if k4_final_beats_tomescu(n) != (n >= 8):
            rep.violations.append({"n": n, "beats": k4_final_beats_tomescu(n)})
    return rep


def lp_grid_check(ks=range(4, 11), points: int = 200, jmax: int = DEFAULT_JMAX) -> SweepReport:
    """Closed form against the basic-solution enumeration on an S grid."""
    rep = SweepReport("lp_grid")
    for k in ks:
        for x in (k, k + 3):
            for S in np.linspace(k - 1, 3 * k - 3, points):
                S = float(S)
                inst = LPInstance(x, k, S)
                closed = lp_closed_form(inst)
                brute = lp_brute_force(inst, jmax)
                ratio = S / (k - 1)
                rep.checked += 1
                bad = abs(closed - brute.value) > CLOSED_FORM_TOL
                if ratio <= 2 and (1, 2) not in brute.argmax:
                    bad = True
                if ratio >= 2 and (2, 3) not in brute.argmax:
                    bad = True
                if bad:
                    rep.violations.append({"k": k, "x": x, "S": S, "closed": closed, "brute": brute.value,
                                           "argmax": brute.argmax})
    return rep


# -- the bound chain ---------------------------------------------------------


@dataclass(frozen=True)
class Stage:
    name: str
    value: float
    certified: bool


@dataclass
class BoundChainReport:
    graph_id: str
    n: int
    k: int
    exact: int
    stages: list[Stage]
    tomescu_rhs: int
    equality_case: bool
    core_is_clique: bool
    radiant_factor: float | None
    measured: dict = field(default_factory=dict)

    def certified_ok(self, rel: float = LOG_TOL) -> bool:
        return all(s.value >= self.exact * (1 - rel) for s in self.stages if s.certified)

    def stage(self, name: str) -> Stage:
        return next(s for s in self.stages if s.name == name)

    def as_dict(self) -> dict:
        return {
            "id": self.graph_id,
            "n": self.n,
            "k": self.k,
            "exact": str(self.exact),
            "stages": [{"name": s.name, "value": s.value, "certified": s.certified} for s in self.stages],
            "tomescu_rhs": str(self.tomescu_rhs),
            "equality_case": self.equality_case,
            "core_is_clique": self.core_is_clique,
            "radiant_factor": self.radiant_factor,
            "measured": self.measured,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def tomescu_rhs(n: int, k: int) -> int:
    return math.factorial(k) * (k - 1) ** (n - k)


def core_is_clique(G: Graph, k: int) -> bool:
    core, _ = two_core(G)
    return core.n == k and is_clique(core)


def bound_chain(
    G: Graph,
    k: int,
    pi_samples: int = 8,
    seed: int = 0,
    all_orderings: bool = False,
    graph_id: str = "",
    guard: int = DEFAULT_GUARD,
    star_rule="lowest",
) -> BoundChainReport:
    """Exact count and every bound stage for a k-chromatic graph.

    Certified stages are upper bounds on P_G(k) for every graph; hypothetical
    stages reproduce steps that presume a minimal counterexample.
    """
    chi = chromatic_number(G)
    if chi != k:
        raise ValueError(f"bound chain needs chi(G) = k, got chi = {chi}, k = {k}")
    n = G.n
    exact = count_colorings(G, k)
    arr = colorings_array(G, k, guard)
    stages = [Stage("exact", float(exact), True)]
    measured: dict = {}

    if all_orderings:
        orderings = list(itertools.permutations(range(n)))
    else:
        rng = np.random.default_rng(seed)
        orderings = [tuple(int(v) for v in rng.permutation(n)) for _ in range(pi_samples)]
    log_bounds = []
    for i, order in enumerate(orderings):
        lb = math.fsum(log_x_pi_rows(G, k, order, arr)) / len(arr)
        log_bounds.append(lb)
        if not all_orderings:
            stages.append(Stage(f"overprediction[{i}]", math.exp(lb), True))
    if all_orderings:
        stages.append(Stage("overprediction_geomean_all", math.exp(math.fsum(log_bounds) / len(log_bounds)), True))
    else:
        measured["orderings"] = [list(o) for o in orderings]

    stages.append(Stage("global_T", global_T_bound(G, k, arr), True))

    factor = None
    if G.min_degree() < k - 1:
        measured["skipped"] = "min degree < k-1: no k-1 neighbour subsets"
    else:
        star = make_star(G, k, star_rule)
        factor = radiant_T_bound(k)
        rad = radiant_rows(G, k, arr)
        if (rad < 0).any():
            raise AssertionError("a coloring has a color class without a radiant vertex")
        P = len(arr)
        is_rad = np.zeros((P, n), dtype=bool)
        for c in range(k):
            is_rad[np.arange(P), rad[:, c]] = True
        log_nonrad = np.zeros(P)
        a_counts = [0] * k
        class_counts = {cls: 0 for cls in K4Class}
        for v in range(n):
            nonrad = ~is_rad[:, v]
            log_nonrad += np.where(nonrad, log_t_rows(arr, star[v], k), 0.0)
            prof = profile_rows(arr[nonrad], star[v], k)
            for j in range(k):
                a_counts[j] += int(np.count_nonzero(prof == j))
            if k == 4:
                hit = np.count_nonzero(prof, axis=1)
                for cls in K4Class:
                    class_counts[cls] += int(np.count_nonzero(hit == int(cls)))
        radiant_log = k * math.log(factor)
        stages.append(Stage("radiant_split", math.exp(radiant_log + math.fsum(log_nonrad) / P), True))

        if n > k and k >= 4:
            pairs_total = P * (n - k)
            a = [Fraction(c, pairs_total) for c in a_counts]
            S_meas = sum(j * j * aj for j, aj in enumerate(a))
            pair_stat = (S_meas - (k - 1)) / 2
            hypothesis_bound = Fraction(n * (k - 2), 2 * (n - k))
            measured.update(
                a_j=[str(x) for x in a],
                sum_a=str(sum(a)),
                sum_j_a=str(sum(j * aj for j, aj in enumerate(a))),
                S_measured=float(S_meas),
                pair_statistic=float(pair_stat),
                pair_hypothesis_bound=float(hypothesis_bound),
                pair_hypothesis_holds=pair_stat < hypothesis_bound,
            )
            jmax = max(DEFAULT_JMAX, k)
            lp_meas = lp_brute_force(LPInstance(k, k, float(S_meas)), jmax).value
            stages.append(Stage("wstar_lp", math.factorial(k) * lp_meas ** (n - k), False))
            lp_hyp = lp_brute_force(LPInstance(k, k, s_for(n, k)), jmax).value
            stages.append(Stage("wstar_lp_pairbound", math.factorial(k) * lp_hyp ** (n - k), False))
            if k == 4:
                measured["s_j"] = {cls.name: class_counts[cls] / P for cls in K4Class}
                if n >= 6:
                    s = k4_s_lp(n)
                    stages.append(Stage("k4_final", 24 * math.exp(_k4_objective(*s)), False))
    rhs = tomescu_rhs(n, k)
    return BoundChainReport(
        graph_id=graph_id,
        n=n,
        k=k,
        exact=exact,
        stages=stages,
        tomescu_rhs=rhs,
        equality_case=exact == rhs,
        core_is_clique=core_is_clique(G, k),
        radiant_factor=factor,
        measured=measured,
    )
