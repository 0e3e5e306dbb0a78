"""Property-based acceptance suite at desk scale.

Each criterion draws seeded random instances, exercises the full pipeline
and reports a pass/fail with the worst observed violation.  The pytest
acceptance module runs these functions at their default (full) counts; the
CLI ``self-test`` command runs the same functions, optionally scaled down.

All randomness is derived from an explicit seed, so runs are reproducible.
"""

import math
import random
import time
from dataclasses import dataclass

from . import certify
from .geodesic import (
    angle_at_zero,
    check_constant_speed,
    curvature_comparison,
    geodesic_path,
    interpolate,
)
from .measures import (
    DiscreteMeasure,
    diagram_to_measure,
    new_diagram,
    new_measure,
    p_energy,
    truncate,
    zero_measure,
)
from .oracle import brute_force_diagram, brute_force_wb
from .pairs import EuclideanBoxPair, HalfPlanePair
from .plans import compose, cost as plan_cost, glue, new_plan, projection_12, projection_23
from .solver import diagram_distance, solve, solve_detail, wb_distance

DEFAULT_SEED = 20260811

_HALF_PLANE = HalfPlanePair()
_BOX = EuclideanBoxPair((0.0, 0.0), (4.0, 4.0))


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    worst: float
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} criterion {self.number:2d} {self.name:<22s} "
            f"worst={self.worst:.3e} ({self.seconds:.1f}s) {self.detail}"
        )


def _random_point(rng, pair):
    if pair.kind == "half_plane":
        a = rng.uniform(-3.0, 3.0)
        return (a, a + rng.uniform(0.08, 4.0))
    lo, hi = pair.lo, pair.hi
    return tuple(rng.uniform(l + 0.08 * (h - l), h - 0.08 * (h - l)) for l, h in zip(lo, hi))


def _random_measure(rng, pair, max_atoms, unit_mass=False, min_atoms=0):
    n = rng.randint(min_atoms, max_atoms)
    atoms = [
        (_random_point(rng, pair), 1.0 if unit_mass else rng.uniform(0.1, 3.0))
        for _ in range(n)
    ]
    return new_measure(pair, atoms) if atoms else zero_measure(pair)


def _random_diagram(rng, max_points):
    return new_diagram([_random_point(rng, _HALF_PLANE) for _ in range(rng.randint(0, max_points))])


# Instance streams shared between criteria (criterion 5 re-certifies the
# plans produced by criteria 1-3, so the streams must be deterministic).

def _oracle_instances(seed, count):
    rng = random.Random(seed * 1000 + 1)
    for k in range(count):
        p = (1, 1.5, 2, 3)[k % 4]
        mu = _random_measure(rng, _HALF_PLANE, 4, unit_mass=True)
        nu = _random_measure(rng, _HALF_PLANE, 4, unit_mass=True)
        yield mu, nu, p


def _diagram_instances(seed, count):
    rng = random.Random(seed * 1000 + 2)
    for k in range(count):
        p = (1, 2)[k % 2]
        yield _random_diagram(rng, 4), _random_diagram(rng, 4), p


def _triple_instances(seed, count, max_atoms=6, unit_mass=False):
    rng = random.Random(seed * 1000 + 3)
    for k in range(count):
        pair = _HALF_PLANE if k % 2 == 0 else _BOX
        p = (1, 1.5, 2, 3)[k % 4]
        yield (
            _random_measure(rng, pair, max_atoms, unit_mass),
            _random_measure(rng, pair, max_atoms, unit_mass),
            _random_measure(rng, pair, max_atoms, unit_mass),
            p,
        )


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def criterion_oracle_equivalence(seed=DEFAULT_SEED, count=500) -> CriterionResult:
    """Solver agrees with the brute-force oracle on small unit-mass instances."""
    def run():
        worst = 0.0
        for mu, nu, p in _oracle_instances(seed, count):
            got = solve(mu, nu, p).wb ** p
            want = brute_force_wb(mu, nu, p).value
            worst = max(worst, abs(got - want))
        return worst

    worst, secs = _timed(run)
    return CriterionResult(1, "oracle-equivalence", worst <= 1e-9, worst, f"{count} instances", secs)


def criterion_embedding(seed=DEFAULT_SEED, count=200) -> CriterionResult:
    """Diagram distance equals Wb_p on embedded measures and the oracle value."""
    def run():
        worst = 0.0
        for sigma, tau, p in _diagram_instances(seed, count):
            dp, _ = diagram_distance(sigma, tau, p)
            via_measures = solve(diagram_to_measure(sigma), diagram_to_measure(tau), p).wb
            worst = max(worst, abs(dp - via_measures))
            want = brute_force_diagram(sigma, tau, p).value
            worst = max(worst, abs(dp ** p - want))
        return worst

    worst, secs = _timed(run)
    return CriterionResult(2, "diagram-embedding", worst <= 1e-9, worst, f"{count} diagram pairs", secs)


def criterion_metric_axioms(seed=DEFAULT_SEED, count=200) -> CriterionResult:
    """Symmetry, vanishing self-distance, triangle inequality.

    Each axiom has its own tolerance (1e-10, 1e-10 and 1e-9 * (1 + scale));
    the reported worst value is the largest violation measured in units of
    its tolerance, so passing means worst <= 1.
    """
    def run():
        worst = 0.0
        for mu1, mu2, mu3, p in _triple_instances(seed, count):
            d12 = wb_distance(mu1, mu2, p)
            d21 = wb_distance(mu2, mu1, p)
            d23 = wb_distance(mu2, mu3, p)
            d13 = wb_distance(mu1, mu3, p)
            d11 = wb_distance(mu1, mu1, p)
            scale = 1.0 + max(d12, d23, d13)
            worst = max(worst, abs(d12 - d21) / 1e-10)
            worst = max(worst, d11 / 1e-10)
            worst = max(worst, (d13 - d12 - d23) / (1e-9 * scale))
        return worst

    worst, secs = _timed(run)
    return CriterionResult(
        3, "metric-axioms", worst <= 1.0, worst, f"{count} triples (worst in tolerance units)", secs
    )


def criterion_distance_to_zero(seed=DEFAULT_SEED, count=100) -> CriterionResult:
    """Wb_p(mu, 0)^p equals the p-energy of mu."""
    def run():
        rng = random.Random(seed * 1000 + 4)
        worst = 0.0
        for k in range(count):
            pair = _HALF_PLANE if k % 2 == 0 else _BOX
            p = (1, 1.5, 2, 3)[k % 4]
            mu = _random_measure(rng, pair, 6)
            got = wb_distance(mu, zero_measure(pair), p) ** p
            want = p_energy(mu, p)
            worst = max(worst, abs(got - want) / (1.0 + want))
        return worst

    worst, secs = _timed(run)
    return CriterionResult(4, "distance-to-zero", worst <= 1e-10, worst, f"{count} measures", secs)


def _perturb_swap(rng, plan):
    """Mass-preserving target swap between two interior entries, or None."""
    interior = [e for e in plan.entries if not plan.pair.in_A(e[0]) and not plan.pair.in_A(e[1])]
    distinct = [
        (a, b)
        for i, a in enumerate(interior)
        for b in interior[i + 1 :]
        if a[1] != b[1]
    ]
    if not distinct:
        return None
    (x1, y1, m1), (x2, y2, m2) = rng.choice(distinct)
    m = min(m1, m2)
    entries = [e for e in plan.entries if e not in ((x1, y1, m1), (x2, y2, m2))]
    entries.append((x1, y2, m))
    entries.append((x2, y1, m))
    if m1 > m:
        entries.append((x1, y1, m1 - m))
    if m2 > m:
        entries.append((x2, y2, m2 - m))
    return new_plan(plan.pair, entries, plan.p)


def criterion_certificates(seed=DEFAULT_SEED, count1=500, count2=200, count3=200) -> CriterionResult:
    """Optimality certificates hold for every solver plan from criteria 1-3,
    and mass-preserving single-edge perturbations are rejected."""
    def run():
        worst = 0.0
        failed = []

        def certify_one(mu, nu, p, tag):
            nonlocal worst
            wb, plan, duals = solve(mu, nu, p)
            conc = certify.concentration_violation(plan, p)
            mono = max(certify.cyclical_monotonicity_violation(plan, p, 4).values(), default=0.0)
            pots = certify.potentials_violation(plan, duals, p)
            ship = certify.boundary_shipping_violation(plan)
            worst = max(worst, conc, mono, pots, ship)
            if conc > 1e-8 or mono > 1e-8 or pots > 1e-9 or ship > 1e-9:
                failed.append(tag)
            return plan, duals

        plans = []
        for k, (mu, nu, p) in enumerate(_oracle_instances(seed, count1)):
            plan, duals = certify_one(mu, nu, p, f"c1#{k}")
            plans.append((mu, nu, p, plan, duals))
        for k, (sigma, tau, p) in enumerate(_diagram_instances(seed, count2)):
            mu, nu = diagram_to_measure(sigma), diagram_to_measure(tau)
            plan, duals = certify_one(mu, nu, p, f"c2#{k}")
            plans.append((mu, nu, p, plan, duals))
        for k, (mu1, mu2, mu3, p) in enumerate(_triple_instances(seed, count3)):
            for a, b in ((mu1, mu2), (mu2, mu3)):
                plan, duals = certify_one(a, b, p, f"c3#{k}")
                plans.append((a, b, p, plan, duals))

        # Perturbation sensitivity.
        rng = random.Random(seed * 1000 + 5)
        tried = rejected = 0
        for mu, nu, p, plan, duals in plans:
            perturbed = _perturb_swap(rng, plan)
            if perturbed is None:
                continue
            increase = plan_cost(perturbed, p) - plan_cost(plan, p)
            if increase <= 1e-6:
                continue
            tried += 1
            report = certify.certify_optimal(mu, nu, perturbed, duals, p, tol=1e-8)
            if not report.all_passed():
                rejected += 1
        sensitivity_ok = tried == 0 or rejected >= 0.95 * tried
        detail = f"{len(plans)} plans, {len(failed)} cert failures; {rejected}/{tried} perturbations rejected"
        return worst, (not failed) and sensitivity_ok, detail

    (worst, ok, detail), secs = _timed(run)
    return CriterionResult(5, "optimality-certificates", ok, worst, detail, secs)


def _recovers(got: DiscreteMeasure, want: DiscreteMeasure) -> bool:
    """Exact atom points; masses to 1 ulp (plan masses are rounded exact flows)."""
    if len(got.atoms) != len(want.atoms):
        return False
    for (pa, ma), (pb, mb) in zip(got.atoms, want.atoms):
        if pa != pb or abs(ma - mb) > 1e-12 * (1.0 + max(ma, mb)):
            return False
    return True


def criterion_geodesics(seed=DEFAULT_SEED, count=50) -> CriterionResult:
    """Constant speed, endpoint recovery and interior atoms off A."""
    def run():
        rng = random.Random(seed * 1000 + 6)
        grid = [i / 10 for i in range(11)]
        worst = 0.0
        recovery_ok = True
        interior_ok = True
        for k in range(count):
            pair = _HALF_PLANE if k % 2 == 0 else _BOX
            p = (1, 1.5, 2, 3)[k % 4]
            mu0 = _random_measure(rng, pair, 4)
            mu1 = _random_measure(rng, pair, 4)
            path = geodesic_path(mu0, mu1, p)
            violation = check_constant_speed(path, grid)
            worst = max(worst, violation / (1.0 + path.length))
            if not _recovers(interpolate(path, 0.0), mu0) or not _recovers(
                interpolate(path, 1.0), mu1
            ):
                recovery_ok = False
            for t in grid[1:-1]:
                for x, y, _ in path.plan.entries:
                    if pair.in_A(x) or pair.in_A(y):
                        continue
                    if pair.dist_to_A(pair.geo_point(x, y, t)) <= 1e-12:
                        interior_ok = False
        ok = worst <= 1e-8 and recovery_ok and interior_ok
        return worst, ok, f"{count} paths, recovery={recovery_ok}, interior={interior_ok}"

    (worst, ok, detail), secs = _timed(run)
    return CriterionResult(6, "geodesics", ok, worst, detail, secs)


def criterion_curvature(seed=DEFAULT_SEED, count=100) -> CriterionResult:
    """Non-negative curvature comparison margin at p = 2."""
    def run():
        rng = random.Random(seed * 1000 + 7)
        grid = [i / 10 for i in range(11)]
        min_margin = math.inf
        for k in range(count):
            pair = _HALF_PLANE if k % 2 == 0 else _BOX
            mu_p = _random_measure(rng, pair, 3)
            mu_q = _random_measure(rng, pair, 3)
            mu_r = _random_measure(rng, pair, 3)
            min_margin = min(min_margin, curvature_comparison(mu_p, mu_q, mu_r, grid))
        return min_margin

    margin, secs = _timed(run)
    return CriterionResult(7, "non-negative-curvature", margin >= -1e-8, margin, f"{count} triples", secs)


def criterion_angle_at_zero(seed=DEFAULT_SEED, count=200) -> CriterionResult:
    """No obtuse angles at the zero measure."""
    def run():
        rng = random.Random(seed * 1000 + 8)
        min_value = math.inf
        for k in range(count):
            pair = _HALF_PLANE if k % 2 == 0 else _BOX
            mu = _random_measure(rng, pair, 5)
            nu = _random_measure(rng, pair, 5)
            min_value = min(min_value, angle_at_zero(mu, nu))
        return min_value

    value, secs = _timed(run)
    return CriterionResult(8, "angle-at-zero", value >= -1e-10, value, f"{count} pairs", secs)


def criterion_truncation(seed=DEFAULT_SEED, count=50) -> CriterionResult:
    """Truncation distance is monotone, tail-bounded and eventually zero."""
    def run():
        rng = random.Random(seed * 1000 + 9)
        radii = [2.0 ** (-k) for k in range(9)]  # 1, 0.5, ..., 2^-8
        worst = 0.0
        ok = True
        for k in range(count):
            pair = _HALF_PLANE if k % 2 == 0 else _BOX
            p = (1, 2)[k % 2]
            mu = _random_measure(rng, pair, 6, min_atoms=1)
            min_gap = min(pair.dist_to_A(pt) for pt, _ in mu.atoms)
            previous = math.inf
            for r in radii:
                w = wb_distance(mu, truncate(mu, r), p)
                if w > previous + 1e-10:
                    ok = False
                worst = max(worst, w - previous)
                previous = w
                tail = sum(
                    m * pair.dist_to_A(pt) ** p for pt, m in mu.atoms if pair.dist_to_A(pt) <= r
                )
                if w ** p > tail + 1e-9 * (1.0 + tail):
                    ok = False
                if r < min_gap and w != 0.0:
                    ok = False
        return max(worst, 0.0), ok

    (worst, ok), secs = _timed(run)
    return CriterionResult(9, "truncation", ok, worst, f"{count} measures, 9 radii", secs)


def criterion_gluing(seed=DEFAULT_SEED, count=100) -> CriterionResult:
    """Glued projections recover the inputs; composition obeys the triangle bound."""
    def run():
        worst = 0.0
        ok = True
        for mu1, mu2, mu3, p in _triple_instances(seed + 1, count, max_atoms=4):
            r12 = solve(mu1, mu2, p)
            r23 = solve(mu2, mu3, p)
            glued = glue(r12.plan, r23.plan)

            back12, _ = projection_12(glued)
            back23, _ = projection_23(glued)
            for got, want in ((back12, r12.plan), (back23, r23.plan)):
                got_d = {(s, d): m for s, d, m in got.entries}
                want_d = {(s, d): m for s, d, m in want.entries}
                for key in set(got_d) | set(want_d):
                    a, b = got_d.get(key, 0.0), want_d.get(key, 0.0)
                    if abs(a - b) > 1e-10 * (1.0 + max(a, b)):
                        ok = False

            lhs = plan_cost(compose(glued), p) ** (1.0 / p)
            rhs = r12.wb + r23.wb
            worst = max(worst, lhs - rhs)
        return worst, ok and worst <= 1e-9

    (worst, ok), secs = _timed(run)
    return CriterionResult(10, "gluing-composition", ok, worst, f"{count} triples", secs)


CRITERIA = (
    criterion_oracle_equivalence,
    criterion_embedding,
    criterion_metric_axioms,
    criterion_distance_to_zero,
    criterion_certificates,
    criterion_geodesics,
    criterion_curvature,
    criterion_angle_at_zero,
    criterion_truncation,
    criterion_gluing,
)

_QUICK_COUNTS = {
    criterion_oracle_equivalence: {"count": 50},
    criterion_embedding: {"count": 20},
    criterion_metric_axioms: {"count": 20},
    criterion_distance_to_zero: {"count": 20},
    criterion_certificates: {"count1": 50, "count2": 20, "count3": 20},
    criterion_geodesics: {"count": 5},
    criterion_curvature: {"count": 10},
    criterion_angle_at_zero: {"count": 20},
    criterion_truncation: {"count": 10},
    criterion_gluing: {"count": 10},
}


def run_all(seed=DEFAULT_SEED, quick=False):
    results = []
    for fn in CRITERIA:
        kwargs = _QUICK_COUNTS[fn] if quick else {}
        results.append(fn(seed=seed, **kwargs))
    return results
