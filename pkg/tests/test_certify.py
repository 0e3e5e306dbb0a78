"""Tests for the optimality certificates."""

import random

import pytest

from partialot import (
    DualPotentials,
    HalfPlanePair,
    InadmissiblePlanError,
    MissingPotentialError,
    certify_optimal,
    check_boundary_shipping,
    check_concentrated_on_S,
    check_cyclical_monotonicity,
    check_potentials,
    new_measure,
    new_plan,
    solve,
    zero_measure,
)
from partialot.certify import cyclical_monotonicity_violation

HP = HalfPlanePair()


def test_concentrated_on_S_examples():
    mu = new_measure(HP, [((0, 1), 1.0)])
    nu = new_measure(HP, [((0, 3), 1.0)])
    r = solve(mu, nu, 2)
    assert check_concentrated_on_S(r.plan, 2)

    bad = new_plan(HP, [((0, 1), (0, 5), 1.0)], 2)
    assert not check_concentrated_on_S(bad, 2)

    assert check_concentrated_on_S(new_plan(HP, [], 2), 2)


def test_boundary_entries_pass_S_vacuously():
    shipping = new_plan(HP, [((0, 5), (2.5, 2.5), 1.0)], 2)
    assert check_concentrated_on_S(shipping, 2)


def test_cyclical_monotonicity_solver_output():
    rng = random.Random(11)
    for _ in range(10):
        mu = new_measure(
            HP, [((rng.uniform(-2, 2), rng.uniform(3, 5)), 1.0) for _ in range(3)]
        )
        nu = new_measure(
            HP, [((rng.uniform(-2, 2), rng.uniform(3, 5)), 1.0) for _ in range(3)]
        )
        r = solve(mu, nu, 2)
        assert check_cyclical_monotonicity(r.plan, 2, k_max=4)


def test_cyclical_monotonicity_detects_swap():
    # optimal: monotone matching; swapped targets raise the cost
    mu = new_measure(HP, [((0, 1), 1.0), ((0, 2), 1.0)])
    nu = new_measure(HP, [((0, 1.5), 1.0), ((0, 2.5), 1.0)])
    r = solve(mu, nu, 2)
    assert check_cyclical_monotonicity(r.plan, 2, k_max=2)
    swapped = new_plan(
        HP, [((0, 1), (0, 2.5), 1.0), ((0, 2), (0, 1.5), 1.0)], 2
    )
    assert not check_cyclical_monotonicity(swapped, 2, k_max=2)
    worst = cyclical_monotonicity_violation(swapped, 2, k_max=2)
    assert worst[2] > 1e-3


def test_cyclical_monotonicity_single_entry_vs_virtual():
    # in S: the two-cycle against the virtual boundary pair cannot improve
    good = new_plan(HP, [((0, 1), (0, 3), 1.0)], 2)
    assert check_cyclical_monotonicity(good, 2, k_max=2)
    # off S: rerouting via the boundary beats the direct edge
    bad = new_plan(HP, [((0, 1), (0, 5), 1.0)], 2)
    assert not check_cyclical_monotonicity(bad, 2, k_max=2)


def test_potentials_examples():
    mu = new_measure(HP, [((0, 1), 1.0), ((2, 6), 2.0)])
    nu = new_measure(HP, [((0, 3), 1.5)])
    r = solve(mu, nu, 2)
    assert check_potentials(r.plan, r.duals, 2)

    # all-zero potentials break slackness whenever the plan has positive cost
    zeros = DualPotentials(
        {pt: 0.0 for pt, _ in mu.atoms}, {pt: 0.0 for pt, _ in nu.atoms}
    )
    assert not check_potentials(r.plan, zeros, 2)

    z = zero_measure(HP)
    rz = solve(z, z, 2)
    assert check_potentials(rz.plan, rz.duals, 2)


def test_potentials_missing_atom():
    mu = new_measure(HP, [((0, 1), 1.0)])
    nu = new_measure(HP, [((0, 3), 1.0)])
    r = solve(mu, nu, 2)
    with pytest.raises(MissingPotentialError):
        check_potentials(r.plan, DualPotentials({}, {}), 2)


def test_boundary_shipping_examples():
    good = new_plan(HP, [((0, 5), (2.5, 2.5), 1.0)], 2)
    assert check_boundary_shipping(good)
    # (0,0) is on A but is not the nearest boundary point to (0,5)
    bad = new_plan(HP, [((0, 5), (0, 0), 1.0)], 2)
    assert not check_boundary_shipping(bad)
    assert check_boundary_shipping(new_plan(HP, [((0, 1), (0, 2), 1.0)], 2))


def test_certify_optimal_solver_output():
    mu = new_measure(HP, [((0, 1), 1.0), ((2, 6), 2.0)])
    nu = new_measure(HP, [((0, 3), 1.5), ((1, 2), 0.5)])
    for p in (1, 2, 3):
        r = solve(mu, nu, p)
        report = certify_optimal(mu, nu, r.plan, r.duals, p)
        assert report.all_passed(), report
        assert report.worst_violation < 1e-10


def test_certify_optimal_rejects_canonical_suboptimal_plan():
    mu = new_measure(HP, [((0, 1), 1.0)])
    nu = new_measure(HP, [((0, 3), 1.0)])
    r = solve(mu, nu, 2)
    # ship everything through the boundary although the direct match is cheaper
    canonical = new_plan(
        HP, [((0, 1), (0.5, 0.5), 1.0), ((1.5, 1.5), (0, 3), 1.0)], 2
    )
    report = certify_optimal(mu, nu, canonical, r.duals, 2)
    assert not report.all_passed()
    assert not report.cost_optimal
    assert not report.cyclically_monotone_up_to[2]


def test_certify_optimal_zero_vs_zero():
    z = zero_measure(HP)
    r = solve(z, z, 2)
    report = certify_optimal(z, z, r.plan, r.duals, 2)
    assert report.all_passed()


def test_certify_optimal_rejects_inadmissible():
    mu = new_measure(HP, [((0, 1), 1.0)])
    nu = new_measure(HP, [((0, 3), 1.0)])
    r = solve(mu, nu, 2)
    other = new_plan(HP, [((0, 1), (1, 4), 1.0)], 2)
    with pytest.raises(InadmissiblePlanError):
        certify_optimal(mu, nu, other, r.duals, 2)


def test_sensitivity_to_perturbation():
    rng = random.Random(12)
    rejected = tried = 0
    for _ in range(30):
        mu = new_measure(
            HP, [((rng.uniform(-2, 2), rng.uniform(3, 5)), 1.0) for _ in range(3)]
        )
        nu = new_measure(
            HP, [((rng.uniform(-2, 2), rng.uniform(3, 5)), 1.0) for _ in range(3)]
        )
        r = solve(mu, nu, 2)
        interior = [e for e in r.plan.entries if not HP.in_A(e[0]) and not HP.in_A(e[1])]
        pairs = [
            (a, b)
            for i, a in enumerate(interior)
            for b in interior[i + 1 :]
            if a[1] != b[1]
        ]
        if not pairs:
            continue
        (x1, y1, m1), (x2, y2, m2) = rng.choice(pairs)
        m = min(m1, m2)
        entries = [e for e in r.plan.entries if e not in ((x1, y1, m1), (x2, y2, m2))]
        entries += [(x1, y2, m), (x2, y1, m)]
        if m1 > m:
            entries.append((x1, y1, m1 - m))
        if m2 > m:
            entries.append((x2, y2, m2 - m))
        perturbed = new_plan(HP, entries, 2)
        from partialot.plans import cost

        if cost(perturbed, 2) - cost(r.plan, 2) <= 1e-6:
            continue
        tried += 1
        report = certify_optimal(mu, nu, perturbed, r.duals, 2)
        if not report.all_passed():
            rejected += 1
    assert tried > 0
    assert rejected >= 0.95 * tried
