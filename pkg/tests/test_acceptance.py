"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Every tolerance is exact rational equality; there is no floating
point anywhere.
"""

import itertools
import math
import random
import time
from fractions import Fraction

from lchkit.buildings import (
    BuildingType,
    Edge,
    GeneratorLabel,
    MapType,
    PerturbationSheets,
    Vertex,
    VertexDecoration,
    action_balance,
    boundary_strata,
    canonical_encoding,
    domain_dim,
    is_stable,
    merge_sheets,
    pullback_sheets,
)
from lchkit.chords import MorseModel, action, enumerate_chords, generator_set
from lchkit.contact import lift_exists
from lchkit.lattice import is_lattice_basis_of_span, smith_normal_form
from lchkit.tameness import (
    ball_blowup,
    check_tame,
    harvey_lawson_filling,
    scenario_verdict,
    symplectization_truncation,
    trivial_cobordism,
)

from oracles import chord_actions_by_rotation, row_reduce_divisors
from typelib import enumerate_stable_types, undecorated

HL_TRIPLE = [(-1, -1, 2, 0), (1, -2, 1, 1), (-2, 1, 1, 1)]


def report(number: str, ok: bool, note: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {number}] {status}: {note}")


# -- criterion 1: tameness worked examples -------------------------------------


def test_criterion_1_tameness_examples():
    start = time.monotonic()
    ok = True
    for n in range(2, 7):
        trivial = scenario_verdict(trivial_cobordism(n))
        ok &= trivial.verdict.lambda_minus == n - 1
        ok &= trivial.verdict.lambda_plus == 1
        ok &= trivial.tame == (n > 2)
        hl = check_tame(harvey_lawson_filling(n))
        ok &= hl.lambda_minus == n - 1
        ok &= hl.p3_vacuous
        blowup = check_tame(ball_blowup(n))
        ok &= not blowup.p2
        ok &= blowup.certificate["p2_log_pairings"]["fiber"] == 1
    elapsed = time.monotonic() - start
    ok &= elapsed < 1.0
    report("1", ok, f"worked tameness constants reproduced exactly ({elapsed:.3f}s)")
    assert ok


# -- criterion 2: truncated symplectization constants ---------------------------


def test_criterion_2_truncation_grid():
    taus_y = [Fraction(3), Fraction(10, 3), Fraction(7, 2), Fraction(5), Fraction(10)]
    taus_z = [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5)]
    grid = list(itertools.product(taus_y, taus_z))
    assert len(grid) == 20
    ok = True
    for tau_y, tau_z in grid:
        verdict = check_tame(symplectization_truncation(tau_y, tau_z, Fraction(2), Fraction(3)))
        ok &= verdict.lambda_minus == tau_y + tau_z - 1
        ok &= verdict.lambda_plus == tau_z
        ok &= verdict.p1
    bad = check_tame(
        symplectization_truncation(Fraction(3), Fraction(1), Fraction(1), Fraction(3, 2))
    )
    ok &= not bad.p1
    report("2", ok, "lambda_- = tau_Y + tau_Z - 1 and lambda_+ = tau_Z on a 20-point grid")
    assert ok


# -- criterion 3: lift criterion -------------------------------------------------


def test_criterion_3_lift_criterion():
    ok = True
    for n in range(1, 13):
        ok &= lift_exists([Fraction(1, n)]).fiber_order_divisor == n
    rng = random.Random(17)
    for _ in range(1000):
        areas = [
            Fraction(rng.randint(1, 24), rng.randint(1, 12))
            for _ in range(rng.randint(1, 5))
        ]
        den = math.lcm(*[a.denominator for a in areas])
        oracle = Fraction(math.gcd(*[int(a * den) for a in areas]), den).denominator
        ok &= lift_exists(areas).fiber_order_divisor == oracle
    report("3", ok, "fiber-order divisors match the gcd oracle (1000 random sets)")
    assert ok


# -- criterion 4: chord spectra ---------------------------------------------------


def test_criterion_4_chord_spectra():
    ok = True
    caps = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(7, 2), Fraction(4)]
    for k in range(1, 7):
        for cap in caps:
            ours = enumerate_chords(k, cap)
            sim = chord_actions_by_rotation(k, cap)
            sim_zero = sorted((e, t) for (s, e, t) in sim if s == 0)
            ok &= sorted((c.end_sheet, action(c)) for c in ours) == sim_zero
            ok &= len(sim) == k * len(ours)
    for k in (1, 2, 3, 4):
        for rank in (0, 1, 2, 3):
            gens = generator_set(k, MorseModel(rank=rank), Fraction(2))
            n_chords = len(enumerate_chords(k, Fraction(2)))
            ok &= len(gens.white) == n_chords * 2**rank
            ok &= len(gens.black) == 2**rank
            ok &= len(gens) == n_chords * 2**rank + 2**rank
    report("4", ok, "chord spectra match the rotation oracle; generator counts exact")
    assert ok


# -- criterion 5: reduction smoothness arithmetic ---------------------------------


def test_criterion_5_snf_oracle_agreement():
    rng = random.Random(20260808)
    ok = True
    for _ in range(500):
        rows = [
            [rng.randint(-9, 9) for _ in range(rng.randint(1, 5))]
        ]
        cols = len(rows[0])
        for _ in range(rng.randint(0, 4)):
            rows.append([rng.randint(-9, 9) for _ in range(cols)])
        ok &= smith_normal_form(rows) == row_reduce_divisors(rows)
    report("5", ok, "Smith form agrees with the row-reduction oracle on 500 matrices")
    assert ok


def test_criterion_5_harvey_lawson_triple():
    divisors, rank = smith_normal_form(HL_TRIPLE)
    passes = is_lattice_basis_of_span(HL_TRIPLE)
    report(
        "5",
        passes,
        f"HL reduction triple lattice-basis test (computed divisors {divisors}, rank {rank})",
    )
    # As stated, the criterion requires the triple to pass.  It cannot:
    # (0,0,0,1) = -1/2 (nu1+nu2,0) + 1/2 (nu1,1) + 1/2 (nu2,1) lies in the
    # rational span with half-integer coefficients, so the triple spans an
    # index-6 sublattice of its saturation and the divisors are [1,1,6].
    assert rank == 3
    assert passes, (
        "the triple {(-1,-1,2,0),(1,-2,1,1),(-2,1,1,1)} is not a lattice basis "
        f"of its span: Smith divisors are {divisors}"
    )


# -- criterion 6: building calculus over the desk-scale library -------------------


def test_criterion_6_building_calculus():
    start = time.monotonic()
    library = enumerate_stable_types()
    one_dim = [t for t in library if domain_dim(t) == 1]
    assert len(library) > 100
    assert one_dim

    ok_a = True
    ok_b = True
    for t in one_dim:
        m = undecorated(t)
        result = boundary_strata(m)
        for fake in result.fake_boundaries:
            # (a) exactly two adjacent one-dimensional strata
            ok_a &= len(fake.adjacent) == 2
            positive, glued = fake.adjacent
            ok_a &= domain_dim(positive.building) == 1
            ok_a &= domain_dim(glued.building) == 1
            ok_a &= bool(is_stable(positive.building))
            ok_a &= bool(is_stable(glued.building))
            ok_a &= canonical_encoding(positive) != canonical_encoding(glued)
        for true_b in result.true_boundaries:
            # (b) two-level splits and broken-trajectory splits only
            broken = [e for e in true_b.building.internal_edges() if e.length == "broken"]
            ok_b &= len(broken) == 1
            levels = {v.level for v in true_b.building.vertices}
            if len(levels) == 2:
                lo, hi = sorted(levels)
                ok_b &= hi - lo == 1
                ends = broken[0].ends
                ok_b &= (
                    true_b.building.vertex(ends[0]).level
                    != true_b.building.vertex(ends[1]).level
                )
            else:
                ok_b &= levels == {0}
                ok_b &= broken[0].cls == "L"
            ok_b &= bool(is_stable(true_b.building, true_b.decorations))

    # (c) out <= in with equality exactly at zero base area
    ok_c = True
    rng = random.Random(5)
    for t in one_dim[:50]:
        m = undecorated(t)
        ins = sum(
            lab.action for _, lab in m.puncture_leaves() if lab.direction == "in"
        )
        outs = sum(
            lab.action for _, lab in m.puncture_leaves() if lab.direction == "out"
        )
        if ins is None or ins < outs:
            continue
        # distribute area = in - out over the vertices: consistent by construction
        area_left = ins - outs
        decorations = {}
        vids = [v.id for v in t.vertices]
        for vid in vids[:-1]:
            piece = area_left * Fraction(rng.randint(0, 2), 4)
            piece = min(piece, area_left)
            decorations[vid] = VertexDecoration(area=piece)
            area_left -= piece
        decorations[vids[-1]] = VertexDecoration(area=area_left)
        decorated = MapType(building=t, decorations=decorations, labels=m.labels)
        balance = action_balance(decorated)
        ok_c &= balance.consistent
        ok_c &= balance.out_sum <= balance.in_sum
        ok_c &= (balance.out_sum == balance.in_sum) == (ins - outs == 0)
    # violation: positive area with equal sums is flagged
    probe = BuildingType(
        vertices=(Vertex("v", "disk"),),
        edges=(
            Edge("i", ("v",), "white-"),
            Edge("o", ("v",), "white+"),
            Edge("b", ("v",), "L"),
        ),
    )
    bad = MapType(
        building=probe,
        decorations={"v": VertexDecoration(area=Fraction(1))},
        labels={
            "i": GeneratorLabel(kind="chord", direction="in", action=Fraction(1)),
            "o": GeneratorLabel(kind="chord", direction="out", action=Fraction(1)),
            "b": GeneratorLabel(kind="interior"),
        },
    )
    ok_c &= not action_balance(bad).consistent

    # (d) pull-backs: weight sum exactly one, k1 k2 sheets before merging
    ok_d = True
    rng = random.Random(6)
    for _ in range(200):
        k1, k2 = rng.randint(1, 6), rng.randint(1, 6)

        def random_sheets(k, tag):
            raw = [rng.randint(1, 9) for _ in range(k)]
            total = sum(raw)
            return PerturbationSheets(
                sheets=tuple(
                    (Fraction(raw[i], total), f"{tag}{i % max(1, k - 1)}")
                    for i in range(k)
                )
            )

        p1 = random_sheets(k1, "a")
        p2 = random_sheets(k2, "b")
        prod = pullback_sheets(p1, p2)
        ok_d &= prod.count() == k1 * k2
        ok_d &= prod.weight_sum() == 1
        ok_d &= merge_sheets(prod).weight_sum() == 1

    elapsed = time.monotonic() - start
    ok = ok_a and ok_b and ok_c and ok_d and elapsed < 60.0
    report(
        "6",
        ok,
        f"library of {len(library)} stable types, {len(one_dim)} one-dimensional; "
        f"(a) fake adjacency {'ok' if ok_a else 'BAD'}, (b) split shapes {'ok' if ok_b else 'BAD'}, "
        f"(c) balance {'ok' if ok_c else 'BAD'}, (d) sheets {'ok' if ok_d else 'BAD'} "
        f"({elapsed:.1f}s)",
    )
    assert ok


# -- criterion 7: curve counting is out of scope ----------------------------------


def test_criterion_7_out_of_scope_note():
    report(
        "7",
        True,
        "holomorphic-curve counting is out of scope by design; covered by criteria 1-6",
    )
