"""Independent verification that a transport plan is optimal.

The checks mirror the equivalent optimality conditions for partial
transport: support inside the set S where the direct cost equals the
reduced cost, reduced-cost cyclical monotonicity of the support augmented
with a virtual boundary pair, existence of feasible complementary-slack
dual potentials vanishing on A, and nearest-point boundary shipping.  A
final cross-check re-solves the instance and compares costs.

All tolerances are applied in absolute-plus-relative form: a comparison
fails when the raw violation exceeds ``tol * (1 + magnitude)``.
"""

import random
from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import (
    InadmissiblePlanError,
    MissingPotentialError,
    PairMismatchError,
    check_exponent,
)
from .measures import DiscreteMeasure
from .plans import TransportPlan, cost as plan_cost, decompose, marginals
from . import solver

#: Plans with at most this many entries get exhaustive subset enumeration in
#: the cyclical-monotonicity check; larger plans are sampled.
EXHAUSTIVE_ENTRY_LIMIT = 8
#: Number of random subsets per cycle length when sampling.
SAMPLED_SUBSETS_PER_SIZE = 500


@dataclass
class CertificateReport:
    """Aggregated outcome of all optimality checks."""

    concentrated_on_S: bool
    cyclically_monotone_up_to: dict  # cycle length k -> bool
    potentials_valid: bool
    boundary_shipping: bool
    cost_optimal: bool  # plan cost matches an independent re-solve
    worst_violation: float

    def all_passed(self) -> bool:
        return (
            self.concentrated_on_S
            and all(self.cyclically_monotone_up_to.values())
            and self.potentials_valid
            and self.boundary_shipping
            and self.cost_optimal
        )


def _scaled(violation: float, magnitude: float) -> float:
    return violation / (1.0 + abs(magnitude))


def concentration_violation(plan: TransportPlan, p) -> float:
    """Worst scaled gap c - c_tilde over interior entries (0 when empty)."""
    p = check_exponent(p)
    pair = plan.pair
    interior, _, _ = decompose(plan)
    worst = 0.0
    for x, y, _ in interior.entries:
        direct = solver.cost_c(pair, x, y, p)
        reduced = solver.cost_ctilde(pair, x, y, p)
        worst = max(worst, _scaled(direct - reduced, reduced))
    return worst


def check_concentrated_on_S(plan: TransportPlan, p, tol: float = 1e-8) -> bool:
    """True iff every interior entry lies in S within tol; boundary entries pass."""
    return concentration_violation(plan, p) <= tol


def _virtual_cost_matrix(plan: TransportPlan, p):
    """Pairwise reassignment costs over entries plus one virtual A x A pair.

    Diagonal cells carry the actual cost of each support pair, off-diagonal
    cells the reduced cost of reassigning a source to another entry's
    target; interactions with the virtual pair use boundary distances.  For
    plans concentrated on S the diagonal agrees with the reduced cost, so
    the check coincides with reduced-cost cyclical monotonicity of the
    support together with A x A.
    """
    pair = plan.pair
    entries = plan.entries
    n = len(entries)
    row_boundary = [pair.dist_to_A(x) ** p for x, _, _ in entries]
    col_boundary = [pair.dist_to_A(y) ** p for _, y, _ in entries]
    size = n + 1
    matrix = [[0.0] * size for _ in range(size)]
    for a, (xa, ya, _) in enumerate(entries):
        for b, (_, yb, _) in enumerate(entries):
            if a == b:
                matrix[a][b] = pair.distance(xa, ya) ** p
            else:
                matrix[a][b] = min(
                    pair.distance(xa, yb) ** p, row_boundary[a] + col_boundary[b]
                )
        matrix[a][n] = row_boundary[a]
        matrix[n][a] = col_boundary[a]
    return matrix


def cyclical_monotonicity_violation(
    plan: TransportPlan,
    p,
    k_max: int = 4,
    seed: int = 0,
    samples: int = SAMPLED_SUBSETS_PER_SIZE,
) -> dict:
    """Worst scaled improvement per cycle length k in 2..k_max.

    Enumerates subsets of the support pairs augmented with one virtual
    A x A pair; within each subset all permutations are tried for k <= 4 and
    all cyclic shifts beyond.  Exhaustive over all subsets when the plan has
    at most ``EXHAUSTIVE_ENTRY_LIMIT`` entries, otherwise ``samples`` seeded
    random subsets per size.
    """
    p = check_exponent(p)
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    matrix = _virtual_cost_matrix(plan, p)
    n_items = len(plan.entries) + 1  # + virtual pair
    rng = random.Random(seed)
    exhaustive = len(plan.entries) <= EXHAUSTIVE_ENTRY_LIMIT

    worst = {}
    for k in range(2, k_max + 1):
        worst_k = 0.0
        if k > n_items:
            worst[k] = worst_k
            continue
        if exhaustive:
            subsets = combinations(range(n_items), k)
        else:
            pool = range(n_items)
            subsets = (tuple(sorted(rng.sample(pool, k))) for _ in range(samples))
        for subset in subsets:
            base = sum(matrix[a][a] for a in subset)
            if k <= 4:
                reassignments = permutations(subset)
            else:
                rest = subset[1:]
                reassignments = (
                    (subset[0],) + shifted for shifted in permutations(rest)
                )
            for sigma in reassignments:
                total = 0.0
                for a, b in zip(subset, sigma):
                    total += matrix[a][b]
                worst_k = max(worst_k, _scaled(base - total, base))
        worst[k] = worst_k
    return worst


def check_cyclical_monotonicity(plan: TransportPlan, p, k_max: int = 4, tol: float = 1e-8) -> bool:
    """True iff no reassignment of <= k_max support pairs lowers the cost by tol."""
    worst = cyclical_monotonicity_violation(plan, p, k_max)
    return all(w <= tol for w in worst.values())


def potentials_violation(plan: TransportPlan, duals, p) -> float:
    """Worst scaled violation of dual feasibility and complementary slackness.

    Feasibility is checked on all atom pairs of the plan's marginals and
    against the boundary (phi <= d(., A)^p and psi <= d(., A)^p, the
    vanish-on-A condition moved to the edges); slackness on every entry
    carrying mass.
    """
    p = check_exponent(p)
    pair = plan.pair
    mu, nu = marginals(plan)
    for pt, _ in mu.atoms:
        if pt not in duals.phi:
            raise MissingPotentialError(f"no source potential for atom {pt!r}")
    for pt, _ in nu.atoms:
        if pt not in duals.psi:
            raise MissingPotentialError(f"no sink potential for atom {pt!r}")

    worst = 0.0
    for x, _ in mu.atoms:
        bc = pair.dist_to_A(x) ** p
        worst = max(worst, _scaled(duals.phi[x] - bc, bc))
        for y, _ in nu.atoms:
            c = pair.distance(x, y) ** p
            worst = max(worst, _scaled(duals.phi[x] + duals.psi[y] - c, c))
    for y, _ in nu.atoms:
        bc = pair.dist_to_A(y) ** p
        worst = max(worst, _scaled(duals.psi[y] - bc, bc))

    interior, outgoing, incoming = decompose(plan)
    for x, y, _ in interior.entries:
        c = pair.distance(x, y) ** p
        worst = max(worst, _scaled(abs(duals.phi[x] + duals.psi[y] - c), c))
    for x, a, _ in outgoing.entries:
        c = pair.distance(x, a) ** p
        worst = max(worst, _scaled(abs(duals.phi[x] - c), c))
    for a, y, _ in incoming.entries:
        c = pair.distance(a, y) ** p
        worst = max(worst, _scaled(abs(duals.psi[y] - c), c))
    return worst


def check_potentials(plan: TransportPlan, duals, p, tol: float = 1e-9) -> bool:
    """True iff the potentials are feasible and complementarily slack within tol."""
    return potentials_violation(plan, duals, p) <= tol


def boundary_shipping_violation(plan: TransportPlan) -> float:
    """Worst scaled |d(x, y) - d(x, A)| over boundary entries."""
    pair = plan.pair
    _, outgoing, incoming = decompose(plan)
    worst = 0.0
    for x, a, _ in outgoing.entries:
        d = pair.dist_to_A(x)
        worst = max(worst, _scaled(abs(pair.distance(x, a) - d), d))
    for a, y, _ in incoming.entries:
        d = pair.dist_to_A(y)
        worst = max(worst, _scaled(abs(pair.distance(a, y) - d), d))
    return worst


def check_boundary_shipping(plan: TransportPlan, tol: float = 1e-9) -> bool:
    """True iff all boundary entries ship to/from nearest boundary points."""
    return boundary_shipping_violation(plan) <= tol


def _marginals_match(got: DiscreteMeasure, want: DiscreteMeasure, mass_tol: float) -> bool:
    got_d = got.mass_by_point()
    want_d = want.mass_by_point()
    for pt in set(got_d) | set(want_d):
        a = got_d.get(pt, 0.0)
        b = want_d.get(pt, 0.0)
        if abs(a - b) > mass_tol * (1.0 + max(abs(a), abs(b))):
            return False
    return True


def certify_optimal(
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    plan: TransportPlan,
    duals,
    p,
    tol: float = 1e-8,
    k_max: int = 4,
    marginal_tol: float = 1e-10,
) -> CertificateReport:
    """Run all optimality checks against the prescribed marginals.

    Raises :class:`InadmissiblePlanError` when the plan's marginals do not
    match mu and nu; otherwise returns the aggregated report, including an
    independent re-solve cost comparison.
    """
    p = check_exponent(p)
    if plan.pair != mu.pair or plan.pair != nu.pair:
        raise PairMismatchError("plan and measures live on different metric pairs")
    got_mu, got_nu = marginals(plan)
    if not _marginals_match(got_mu, mu, marginal_tol) or not _marginals_match(got_nu, nu, marginal_tol):
        raise InadmissiblePlanError("plan marginals do not match the prescribed measures")

    conc = concentration_violation(plan, p)
    mono = cyclical_monotonicity_violation(plan, p, k_max)
    pots = potentials_violation(plan, duals, p)
    ship = boundary_shipping_violation(plan)

    c = plan_cost(plan, p)
    resolved = solver.wb_distance(mu, nu, p) ** p
    cost_gap = _scaled(c - resolved, resolved)

    return CertificateReport(
        concentrated_on_S=conc <= tol,
        cyclically_monotone_up_to={k: w <= tol for k, w in mono.items()},
        potentials_valid=pots <= tol,
        boundary_shipping=ship <= tol,
        cost_optimal=cost_gap <= tol,
        worst_violation=max(conc, max(mono.values(), default=0.0), pots, ship, cost_gap),
    )
