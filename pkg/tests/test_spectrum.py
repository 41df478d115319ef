"""Parameter classification, the two character sums and the closed form."""

import pytest

from nhspectrum import charsums as cs
from nhspectrum import ness
from nhspectrum import spectrum as sp
from nhspectrum import solution_census as cn
from nhspectrum.field import InconsistencyError


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def test_classify_base_field_flag(f3):
    cls = sp.classify_u(f3, 0)
    assert cls.label == "F3"
    assert cls.chi_u_plus_1 == 1 and cls.chi_u_minus_1 == -1  # pattern still differs
    assert not cls.in_theorem_scope
    assert sp.classify_u(f3, 1).label == "F3"
    assert sp.classify_u(f3, 2).label == "F3"


def test_classify_patterns(f3, f5):
    for ctx in (f3, f5):
        for u in ctx.elements():
            cls = sp.classify_u(ctx, u)
            if u in (0, 1, 2):
                continue
            chi_p = ctx.chi(ctx.add(u, 1))
            chi_m = ctx.chi(ctx.sub(u, 1))
            chi_u = ctx.chi(u)
            if chi_p != chi_m:
                assert cls.label == "U0_nonF3"
            elif chi_u != chi_p:
                assert cls.label == "U10"
            else:
                assert cls.label == "U11"


def test_classes_partition_field(f3, f5):
    for ctx in (f3, f5):
        counts = {"F3": 0, "U0_nonF3": 0, "U10": 0, "U11": 0}
        for u in ctx.elements():
            counts[sp.classify_u(ctx, u).label] += 1
        assert counts["F3"] == 3
        assert sum(counts.values()) == ctx.q
        assert counts["U0_nonF3"] == len(sp.u0_nonf3_elements(ctx))


def test_scope_list_matches_classifier(f3):
    for u in sp.u0_nonf3_elements(f3):
        assert sp.classify_u(f3, u).in_theorem_scope
        assert cs.in_theorem_scope(f3, u)


# ---------------------------------------------------------------------------
# gamma sums
# ---------------------------------------------------------------------------


def test_gamma_dual_forms_agree(f3, f5):
    for ctx in (f3, f5):
        for u in sp.u0_nonf3_elements(ctx):
            assert sp.gamma3(ctx, u) == sp.gamma3_from_products(ctx, u)
            assert sp.gamma4(ctx, u) == sp.gamma4_from_products(ctx, u)


def test_gamma_example_values_reachable(f3, f5):
    g3_values = {sp.gamma3(f3, u) for u in sp.u0_nonf3_elements(f3)}
    g4_values = {sp.gamma4(f3, u) for u in sp.u0_nonf3_elements(f3)}
    assert -4 in g3_values and 4 in g4_values
    g4_n5 = {sp.gamma4(f5, u) for u in sp.u0_nonf3_elements(f5)}
    assert 12 in g4_n5


def test_gamma_requires_scope(f3):
    with pytest.raises(ValueError):
        sp.gamma3(f3, 1)
    with pytest.raises(ValueError):
        sp.gamma4(f3, 0)


# ---------------------------------------------------------------------------
# epsilon
# ---------------------------------------------------------------------------


def test_epsilon_values_reachable(f3, f5):
    eps3 = {sp.epsilon(f3, u) for u in sp.u0_nonf3_elements(f3)}
    eps5 = {sp.epsilon(f5, u) for u in sp.u0_nonf3_elements(f5)}
    assert 0 in eps3
    assert 1 in eps5


def test_epsilon_equals_three_solution_indicator(f3, f5):
    # epsilon = 1 exactly when one of z = 1 +- u predicts three solutions,
    # i.e. carries chi(g4) = chi(g5) = 1 on top of the special-point hit.
    for ctx in (f3, f5):
        for u in sp.u0_nonf3_elements(ctx):
            hits = 0
            for z in (ctx.add(1, u), ctx.sub(1, u)):
                s = cn.g_signs(ctx, u, z)
                if s[3] == 1 and s[4] == 1:
                    hits += 1
            assert sp.epsilon(ctx, u) == hits


def test_epsilon_matches_census_at_special_rows(f3):
    for u in sp.u0_nonf3_elements(f3):
        pred = cn.prediction_by_z(f3, u)
        three_rows = sum(int(pred[z]) == 3 for z in (f3.add(1, u), f3.sub(1, u)))
        assert sp.epsilon(f3, u) == three_rows


# ---------------------------------------------------------------------------
# the closed form
# ---------------------------------------------------------------------------


def test_closed_form_matches_bruteforce_n3(f3):
    for u in sp.u0_nonf3_elements(f3):
        closed = sp.spectrum_closed_form(f3, u)
        brute = ness.spectrum_bruteforce(f3, u)
        assert closed.omegas == brute.omegas


def test_closed_form_frozen_paper_examples(f3, f5):
    by_triple_3 = {}
    for u in sp.u0_nonf3_elements(f3):
        ins = sp.closed_form_inputs(f3, u)
        by_triple_3[(ins.epsilon, ins.gamma3, ins.gamma4)] = sp.spectrum_closed_form(
            f3, u
        ).omegas
    assert by_triple_3[(0, -4, 4)] == (286, 208, 156, 26, 26)

    for u in sp.u0_nonf3_elements(f5):
        ins = sp.closed_form_inputs(f5, u)
        if (ins.epsilon, ins.gamma3, ins.gamma4) == (1, -4, 12):
            assert sp.spectrum_closed_form(f5, u).omegas == (
                27346, 11616, 14278, 3630, 1936,
            )
            break
    else:
        pytest.fail("no u at n=5 realises the (1, -4, 12) parameter triple")


def test_closed_form_counting_identities(f3, f5):
    for ctx in (f3, f5):
        for u in sp.u0_nonf3_elements(ctx):
            assert sp.spectrum_closed_form(ctx, u).counting_identities_hold(ctx.q)


def test_closed_form_divisibility(f3, f5):
    for ctx in (f3, f5):
        q = ctx.q
        for u in sp.u0_nonf3_elements(ctx):
            ins = sp.closed_form_inputs(ctx, u)
            assert (15 * q - 17 - ins.gamma4) % 32 == 0
            assert (3 * q + 3 + 2 * ins.gamma3 + ins.gamma4) % 16 == 0
            assert (q - 7 - ins.gamma3) % 4 == 0
            assert (q + 1 + 2 * ins.gamma3 - ins.gamma4) % 16 == 0
            assert (q + 1 + ins.gamma4) % 32 == 0


def test_closed_form_last_entry_positive(f3, f5):
    for ctx in (f3, f5):
        for u in sp.u0_nonf3_elements(ctx):
            assert sp.spectrum_closed_form(ctx, u).omegas[4] > 0


def test_closed_form_source_label(f3):
    u = sp.u0_nonf3_elements(f3)[0]
    assert sp.spectrum_closed_form(f3, u).source == "closed-form"


def test_closed_form_rejects_out_of_scope(f3):
    for u in (0, 1, 2):
        with pytest.raises(ValueError):
            sp.spectrum_closed_form(f3, u)
    outside = next(
        u for u in f3.elements() if sp.classify_u(f3, u).label in ("U10", "U11")
    )
    with pytest.raises(ValueError):
        sp.spectrum_closed_form(f3, outside)


def test_verify_theorem_record_shape(f3):
    u = sp.u0_nonf3_elements(f3)[0]
    rec = sp.verify_theorem_record(f3, u)
    assert set(rec) == {
        "u", "class", "epsilon", "gamma3", "gamma4",
        "closed_form", "brute_force", "match",
    }
    assert rec["match"] is True
    assert rec["class"] == "U0_nonF3"
