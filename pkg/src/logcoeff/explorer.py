"""Sampling and optimization over Schwarz functions.

Class members are generated from random Schur parameters: each parameter is
uniform on the closed unit disk, and a fifth of the samples put one parameter
on the unit circle (which ends the Schur recursion and makes ``phi`` a finite
Blaschke product times ``z``).

Every trial draws from its own generator seeded by ``(seed, trial)``, so the
results do not depend on how trials are split across workers.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import bounds as B
from .classes import ClassSpec, member_from_schwarz, schwarz_from_schur
from .coefficients import log_coefficients, weighted_energy
from .series import EXACT, FLOAT

DEFAULT_DEPTH = 6
BOUNDARY_FRACTION = 0.2
FLOAT_TOL = 1e-9
ENERGY_ORDER = 64
DEFAULT_BUDGET = 20000
# F3_energy spends one order-64 member per unit of budget
DEFAULT_BUDGETS = {"F3_pointwise": DEFAULT_BUDGET, "G_general": DEFAULT_BUDGET, "F3_energy": 2000}
CONJECTURE_LABEL = "conjectural - violation would be a finding, not a bug"
PHI = (math.sqrt(5) - 1) / 2


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("LOGCOEFF_THREADS")
    return max(1, int(env)) if env else 1


# ---------------------------------------------------------------------------
# Sampling


def sample_schur(rng: np.random.Generator, depth: int = DEFAULT_DEPTH, boundary_fraction: float = BOUNDARY_FRACTION) -> list[complex]:
    r = np.sqrt(rng.random(depth))
    ph = rng.uniform(-math.pi, math.pi, depth)
    lam = [complex(x) for x in r * np.exp(1j * ph)]
    if rng.random() < boundary_fraction:
        j = int(rng.integers(depth))
        lam[j] = cmath.exp(1j * ph[j])
        lam = lam[: j + 1]
    return lam


def sample_schur_exact(rng: np.random.Generator, depth: int = DEFAULT_DEPTH, denom: int = 8) -> list[Fraction]:
    """Real rational Schur parameters ``k/denom`` in ``[-1, 1]``."""
    return [Fraction(int(k), denom) for k in rng.integers(-denom, denom + 1, depth)]


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(trial)])


def member_gammas(spec: ClassSpec, params: Sequence, N: int, backend: str = FLOAT, theta: float = 0.0):
    """``gamma_1 .. gamma_N`` of the member of ``spec`` driven by ``params``."""
    phi = schwarz_from_schur(params, N, backend)
    if theta:
        spec = ClassSpec(spec.kind, **spec.params, twist=spec.twist, theta=theta)
    f = member_from_schwarz(spec, phi, N, backend)
    return log_coefficients(f, N)


def _serial(params) -> list:
    out = []
    for l in params:
        if isinstance(l, Fraction):
            out.append([str(l), "0"])
        else:
            z = complex(l)
            out.append([z.real, z.imag])
    return out


# ---------------------------------------------------------------------------
# Bound verification


@dataclass
class CheckRow:
    check: str  # "gamma" or "energy"
    index: str  # n, or the weight label
    citation: str
    bound: object
    max_observed: float = 0.0
    argmax_trial: int = -1
    violations: list = field(default_factory=list)

    @property
    def margin(self) -> float:
        return float(self.bound) - float(self.max_observed)

    def to_dict(self) -> dict:
        b = self.bound
        return {
            "check": self.check,
            "index": self.index,
            "citation": self.citation,
            "bound": str(b) if isinstance(b, Fraction) else float(b),
            "max_observed": str(self.max_observed) if isinstance(self.max_observed, Fraction) else float(self.max_observed),
            "margin": self.margin,
            "argmax_trial": self.argmax_trial,
            "violations": self.violations,
        }


@dataclass
class BoundReport:
    spec: ClassSpec
    N: int
    samples: int
    seed: int
    backend: str
    depth: int
    energy_order: int
    rows: list
    skipped: list
    wall_clock: float = 0.0

    @property
    def violations(self) -> list:
        return [v for r in self.rows for v in r.violations]

    @property
    def ok(self) -> bool:
        return not self.violations

    def row(self, check: str, index, citation: str | None = None) -> CheckRow:
        for r in self.rows:
            if r.check == check and r.index == str(index) and (citation is None or r.citation == citation):
                return r
        raise KeyError((check, index, citation))

    def header(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "N": self.N,
            "samples": self.samples,
            "seed": self.seed,
            "backend": self.backend,
            "depth": self.depth,
            "energy_order": self.energy_order,
        }

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "header": self.header(),
            "ok": self.ok,
            "rows": [r.to_dict() for r in self.rows],
            "skipped": self.skipped,
        }
        if include_timing:
            d["wall_clock"] = self.wall_clock
        return d

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "index", "citation", "bound", "max_observed", "margin", "violations"])
        for r in self.rows:
            d = r.to_dict()
            w.writerow([d["check"], d["index"], d["citation"], d["bound"], d["max_observed"], repr(d["margin"]), len(r.violations)])
        return buf.getvalue()


def _plan_checks(spec: ClassSpec, N: int):
    gamma_checks, energy_checks, skipped = [], [], []
    for n in range(1, N + 1):
        for b in B.gamma_bounds(spec, n):
            if b.status != B.PROVEN:
                continue
            if not b.applicable:
                skipped.append({"check": "gamma", "index": str(n), "citation": b.citation, "reason": b.reason})
                continue
            gamma_checks.append((n, b))
    for label, b in B.energy_bounds(spec).items():
        if b.status != B.PROVEN:
            continue
        if not b.applicable:
            skipped.append({"check": "energy", "index": label, "citation": b.citation, "reason": b.reason})
            continue
        energy_checks.append((label, b))
    return gamma_checks, energy_checks, skipped


def _energy(gam, label: str):
    if label.startswith("n_plus_1_pow_t:"):
        t = float(label.split(":", 1)[1])
        return weighted_energy(gam, "n_plus_1_pow_t", t).total
    return weighted_energy(gam, label).total


def _leq(observed, bound, backend) -> bool:
    if math.isinf(float(bound)):
        return True
    if backend == EXACT and isinstance(observed, Fraction) and isinstance(bound, Fraction):
        return observed <= bound
    return float(observed) <= float(bound) + FLOAT_TOL


def _run_trials(job) -> list:
    spec, trials, seed, N, depth, backend, energy_order, gamma_checks, energy_checks, fixed = job
    out = []
    for trial in trials:
        if fixed is not None:
            params = fixed[trial]
        elif backend == EXACT:
            params = sample_schur_exact(trial_rng(seed, trial), depth)
        else:
            params = sample_schur(trial_rng(seed, trial), depth)
        order = max(N, energy_order)
        gam = member_gammas(spec, params, order, backend)
        gvals = [gam.abs_exact(n) for n in range(1, N + 1)]
        en = {label: _energy(gam, label) for label, _ in energy_checks}
        out.append((trial, params, gvals, en))
    return out


def verify_bounds(
    spec: ClassSpec,
    N: int,
    K: int,
    seed: int = 0,
    *,
    depth: int = DEFAULT_DEPTH,
    backend: str = FLOAT,
    energy_order: int | None = None,
    samples: Sequence[Sequence] | None = None,
    workers: int | None = None,
) -> BoundReport:
    """Check every applicable proven bound on ``K`` generated members of ``spec``.

    ``samples`` replaces the random draw with explicit Schur parameter lists.
    Energy sums are truncated at ``energy_order`` (64 on the float backend),
    which under-estimates the left side and keeps the check one-sided.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if energy_order is None:
        energy_order = ENERGY_ORDER if backend == FLOAT else N
    start = time.perf_counter()
    gamma_checks, energy_checks, skipped = _plan_checks(spec, N)
    rows = [CheckRow("gamma", str(n), b.citation, b.value) for n, b in gamma_checks]
    rows += [CheckRow("energy", label, b.citation, b.value) for label, b in energy_checks]
    fixed = None
    if samples is not None:
        fixed = [list(s) for s in samples]
        K = len(fixed)
    w = worker_count(workers)
    chunks = [list(range(i, K, w)) for i in range(w)] if w > 1 else [list(range(K))]
    jobs = [(spec, ch, seed, N, depth, backend, energy_order, gamma_checks, energy_checks, fixed) for ch in chunks if ch]
    if len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=len(jobs)) as ex:
            results = [r for part in ex.map(_run_trials, jobs) for r in part]
    else:
        results = _run_trials(jobs[0])
    results.sort(key=lambda r: r[0])

    for trial, params, gvals, en in results:
        i = 0
        for n, b in gamma_checks:
            row = rows[i]
            obs = gvals[n - 1]
            if obs > row.max_observed or row.argmax_trial < 0:
                row.max_observed, row.argmax_trial = obs, trial
            if not _leq(obs, b.value, backend):
                row.violations.append({"trial": trial, "schur": _serial(params), "observed": float(obs)})
            i += 1
        for label, b in energy_checks:
            row = rows[i]
            obs = en[label]
            if obs > row.max_observed or row.argmax_trial < 0:
                row.max_observed, row.argmax_trial = obs, trial
            if not _leq(obs, b.value, backend):
                row.violations.append({"trial": trial, "schur": _serial(params), "observed": float(obs)})
            i += 1
    return BoundReport(spec, N, K, seed, backend, depth, energy_order, rows, skipped, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Extremal search


def golden_max(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-7, max_evals: int = 60, endpoints: bool = True):
    """Maximize a unimodal-ish ``f`` on ``[lo, hi]`` by golden-section search.

    The endpoints are evaluated as well, since optima of the searches here
    often sit on the boundary of the parameter box. Returns
    ``(x, f(x), evaluations)``.
    """
    evals = 0
    best_x, best_f = None, -math.inf
    if endpoints:
        for x in (lo, hi):
            if evals >= max_evals:
                break
            fx = f(x)
            evals += 1
            if fx > best_f:
                best_x, best_f = x, fx
    a, b = lo, hi
    x1, x2 = b - PHI * (b - a), a + PHI * (b - a)
    if evals + 2 > max_evals:
        return best_x, best_f, evals
    f1, f2 = f(x1), f(x2)
    evals += 2
    while evals < max_evals and (b - a) > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + PHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - PHI * (b - a)
            f1 = f(x1)
        evals += 1
    for x, fx in ((x1, f1), (x2, f2)):
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f, evals


class _Budget:
    def __init__(self, total: int):
        self.total, self.used = total, 0

    @property
    def left(self) -> int:
        return self.total - self.used


class _Exhausted(Exception):
    pass


def coordinate_search(
    objective: Callable[[np.ndarray], float],
    bounds_: Sequence[tuple[float, float]],
    budget: int,
    rng: np.random.Generator,
    start_sampler: Callable[[np.random.Generator], np.ndarray],
    x0: np.ndarray | None = None,
    line_evals: int = 40,
):
    """Random restarts plus per-coordinate golden-section refinement (maximization).

    Returns ``(best_x, best_value, trajectory, evaluations_used)`` where the
    trajectory lists ``(evaluations, incumbent value)`` at each improvement.
    """
    bud = _Budget(budget)
    best = {"x": None, "f": -math.inf}
    traj: list = []

    def ev(x):
        if bud.left <= 0:
            raise _Exhausted
        bud.used += 1
        v = objective(x)
        if v > best["f"]:
            best["x"], best["f"] = np.array(x, dtype=float), v
            traj.append((bud.used, float(v)))
        return v

    try:
        cur = np.array(x0 if x0 is not None else start_sampler(rng), dtype=float)
        fcur = ev(cur)
        while True:
            improved = True
            while improved:
                improved = False
                for i in rng.permutation(len(cur)):
                    lo, hi = bounds_[i]

                    def line(t, i=i):
                        y = cur.copy()
                        y[i] = t
                        return ev(y)

                    n_line = min(line_evals, bud.left)
                    if n_line <= 0:
                        raise _Exhausted
                    t, ft, _ = golden_max(line, lo, hi, max_evals=n_line)
                    if t is not None and ft > fcur + 1e-13:
                        cur[i], fcur, improved = t, ft, True
            cur = np.array(start_sampler(rng), dtype=float)
            fcur = ev(cur)
    except _Exhausted:
        pass
    return best["x"], best["f"], traj, bud.used


def _decode(x: np.ndarray, depth: int) -> tuple[list[complex], float]:
    params = [float(x[2 * j]) * cmath.exp(1j * float(x[2 * j + 1])) for j in range(depth)]
    # unimodular parameters end the recursion; snap to exact modulus 1
    for j, r in enumerate(x[0 : 2 * depth : 2]):
        if r >= 1.0:
            params[j] = cmath.exp(1j * float(x[2 * j + 1]))
            params = params[: j + 1]
            break
    return params, float(x[2 * depth])


def _encode(params: Sequence[complex], depth: int, theta: float = 0.0) -> np.ndarray:
    x = np.zeros(2 * depth + 1)
    for j, l in enumerate(list(params)[:depth]):
        x[2 * j], x[2 * j + 1] = abs(l), cmath.phase(l)
    x[-1] = theta
    return x


@dataclass
class SearchResult:
    spec: ClassSpec
    n: int
    best_value: float
    best_params: list
    best_theta: float
    trajectory: list
    budget_used: int
    seed: int

    def replay(self) -> float:
        g = member_gammas(self.spec, self.best_params, self.n, FLOAT, self.best_theta)
        return abs(complex(g[self.n]))

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "n": self.n,
            "best_value": self.best_value,
            "best_schur": _serial(self.best_params),
            "best_theta": self.best_theta,
            "trajectory": [list(t) for t in self.trajectory],
            "budget_used": self.budget_used,
            "seed": self.seed,
        }


def search_extremal(spec: ClassSpec, n: int, budget: int, seed: int = 0, depth: int | None = None) -> SearchResult:
    """Maximize ``|gamma_n|`` over Schur parameters (modulus, phase) and a rotation.

    The first evaluation is the all-zero start (``phi = 0``, ``f(z) = z``).
    ``gamma_n`` only depends on ``c_1 .. c_n``, so ``depth`` defaults to ``n``.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    depth = depth or n
    rng = np.random.default_rng([int(seed), 7919, n])
    box = [(0.0, 1.0), (-math.pi, math.pi)] * depth + [(-math.pi, math.pi)]

    def objective(x):
        params, theta = _decode(x, depth)
        g = member_gammas(spec, params, n, FLOAT, theta)
        return abs(complex(g[n]))

    def start(r):
        return _encode(sample_schur(r, depth), depth, float(r.uniform(-math.pi, math.pi)))

    x, fx, traj, used = coordinate_search(objective, box, budget, rng, start, x0=np.zeros(2 * depth + 1))
    params, theta = _decode(x, depth)
    return SearchResult(spec, n, float(fx), params, theta, traj, used, seed)


# ---------------------------------------------------------------------------
# Prokhorov-Szynal oracle


def schur_head3(l0: complex, l1: complex, l2: complex) -> tuple[complex, complex, complex]:
    """``c_1, c_2, c_3`` of ``phi = z psi`` from the first three Schur parameters."""
    a0 = 1 - abs(l0) ** 2
    return l0, a0 * l1, a0 * ((1 - abs(l1) ** 2) * l2 - l0.conjugate() * l1 * l1)


def ps_functional(c1, c2, c3, mu, upsilon) -> float:
    return abs(c3 + mu * c1 * c2 + upsilon * c1**3)


@dataclass
class PSOracleResult:
    mu: float
    upsilon: float
    value: float
    schur: list
    coefficients: tuple
    closed_form: float | None
    region: str | None
    budget_used: int

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "upsilon": self.upsilon,
            "oracle": self.value,
            "closed_form": self.closed_form,
            "region": self.region,
            "schur": _serial(self.schur),
            "budget_used": self.budget_used,
        }


def ps_oracle(mu: float, upsilon: float, budget: int, seed: int = 0) -> PSOracleResult:
    """Maximize ``|c_3 + mu c_1 c_2 + upsilon c_1^3|`` over three Schur parameters.

    Replacing ``phi(z)`` by ``e^{-i b} phi(e^{i b} z)`` multiplies the
    functional by a unimodular constant, so ``c_1 = lambda_0`` is taken real
    and nonnegative. The coefficients of the winner are recomputed through
    :func:`schwarz_from_schur` before reporting.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    mu, upsilon = float(mu), float(upsilon)
    rng = np.random.default_rng([int(seed), 104729])
    box = [(0.0, 1.0), (0.0, 1.0), (-math.pi, math.pi), (0.0, 1.0), (-math.pi, math.pi)]

    def lams(x):
        l0 = complex(x[0])
        l1 = x[1] * cmath.exp(1j * x[2])
        l2 = x[3] * cmath.exp(1j * x[4])
        return l0, l1, l2

    def objective(x):
        return ps_functional(*schur_head3(*lams(x)), mu, upsilon)

    def start(r):
        rad = np.sqrt(r.random(3))
        if r.random() < BOUNDARY_FRACTION:
            rad[int(r.integers(3))] = 1.0
        return np.array([rad[0], rad[1], r.uniform(-math.pi, math.pi), rad[2], r.uniform(-math.pi, math.pi)])

    x, fx, _, used = coordinate_search(objective, box, budget, rng, start, x0=np.zeros(5))
    l0, l1, l2 = lams(x)
    params = [l0, l1, l2]
    for j, l in enumerate(params):
        if abs(l) >= 1.0:
            params = params[: j + 1]
            break
    phi = schwarz_from_schur(params, 3, FLOAT)
    c1, c2, c3 = phi.coefficients(3)
    value = ps_functional(c1, c2, c3, mu, upsilon)
    try:
        cf, region = B.ps_phi(mu, upsilon)
    except B.UncoveredRegionError:
        cf, region = None, None
    return PSOracleResult(mu, upsilon, value, params, (c1, c2, c3), cf, region, used)


# ---------------------------------------------------------------------------
# Conjecture probes

CONJECTURES = ("F3_pointwise", "F3_energy", "G_general")
G_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


@dataclass
class ConjectureReport:
    which: str
    budget: int
    seed: int
    entries: list
    label: str = CONJECTURE_LABEL

    @property
    def findings(self) -> list:
        return [e for e in self.entries if e["violation"]]

    @property
    def status(self) -> str:
        return "finding" if self.findings else "consistent"

    def to_dict(self) -> dict:
        return {
            "header": {"conjecture": self.which, "budget": self.budget, "seed": self.seed, "backend": FLOAT},
            "label": self.label,
            "status": self.status,
            "entries": self.entries,
        }


def _search_entry(spec: ClassSpec, n: int, bound, budget: int, seed: int) -> dict:
    res = search_extremal(spec, n, budget, seed)
    return {
        "class": spec.label(),
        "n": n,
        "bound": float(bound),
        "best_found": res.best_value,
        "ratio": res.best_value / float(bound),
        "violation": res.best_value > float(bound) + FLOAT_TOL,
        "best_schur": _serial(res.best_params),
        "best_theta": res.best_theta,
        "budget_used": res.budget_used,
        "label": CONJECTURE_LABEL,
    }


def conjecture_report(which: str, budget: int | None = None, seed: int = 0, n_max: int | None = None) -> ConjectureReport:
    """Probe one of the conjectured bounds with the given total evaluation budget."""
    if budget is None:
        if which not in DEFAULT_BUDGETS:
            raise ValueError(f"unknown conjecture {which!r}; expected one of {CONJECTURES}")
        budget = DEFAULT_BUDGETS[which]
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if which == "F3_pointwise":
        n_max = n_max or 8
        spec = ClassSpec.F(3)
        per = max(1, budget // n_max)
        entries = [_search_entry(spec, n, B.conjecture_f3(n), per, seed) for n in range(1, n_max + 1)]
        return ConjectureReport(which, budget, seed, entries)
    if which == "G_general":
        n_max = n_max or 6
        per = max(1, budget // (len(G_GRID) * n_max))
        entries = [
            _search_entry(ClassSpec.G(c), n, B.conjecture_g(c, n), per, seed)
            for c in G_GRID
            for n in range(1, n_max + 1)
        ]
        return ConjectureReport(which, budget, seed, entries)
    if which == "F3_energy":
        spec = ClassSpec.F(3)
        const = B.conjecture_f3_energy()
        candidates = [[1]] + [sample_schur(trial_rng(seed, k), DEFAULT_DEPTH) for k in range(budget - 1)]
        best, best_params = -1.0, None
        for params in candidates:
            gam = member_gammas(spec, params, ENERGY_ORDER, FLOAT)
            e = weighted_energy(gam, "ones").total
            if e > best:
                best, best_params = e, params
        entry = {
            "class": spec.label(),
            "n": f"sum_{{n<={ENERGY_ORDER}}}",
            "bound": const,
            "best_found": best,
            "ratio": best / const,
            "violation": best > const + FLOAT_TOL,
            "best_schur": _serial(best_params),
            "samples": len(candidates),
            "note": "truncated sums are lower estimates of the full square-sum",
            "label": CONJECTURE_LABEL,
        }
        return ConjectureReport(which, budget, seed, [entry])
    raise ValueError(f"unknown conjecture {which!r}; expected one of {CONJECTURES}")
