"""Spectral pipeline: spectra, counters, degrees, guarantees, parities."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqdeg.burnside import BurnsideElement
from eqdeg.degrees import basic_degree, degree_for_character
from eqdeg.errors import InputError, ValidationError
from eqdeg.reps import fold_frequency, maximal_orbit_types, time_irrep_indices
from eqdeg.spectral import (EigenvalueEntry, GammaSpec, ProblemConfig,
                            SpectralTable, build_symmetry_context,
                            check_nondegeneracy, count_beta_eta_rho,
                            existence_degree, interpret, j_max, lambda_value,
                            matrix_spectrum, parity_predictions,
                            spectral_table, validate_problem)

from .conftest import case_config

SIGMA_M3 = [(0, -2, Fraction(-2)), (1, -2, Fraction(-17, 10)),
            (2, -2, Fraction(-14, 13)), (3, -2, Fraction(-1, 2)),
            (4, -2, Fraction(-2, 25)), (0, -0.5, Fraction(-1, 2)),
            (1, -0.5, Fraction(-7, 20)), (2, -0.5, Fraction(-1, 26))]

SIGMA_M4 = [(0, -2, Fraction(-2)), (1, -2, Fraction(-31, 17)),
            (2, -2, Fraction(-7, 5)), (3, -2, Fraction(-23, 25)),
            (4, -2, Fraction(-1, 2)), (5, -2, Fraction(-7, 41)),
            (0, -0.5, Fraction(-1, 2)), (1, -0.5, Fraction(-7, 17)),
            (2, -0.5, Fraction(-1, 5))]


def trivial_config(m, entries, **kwargs):
    spectrum = tuple((Fraction(x), mult) for x, mult in entries)
    k = sum(mult for _x, mult in entries)
    return ProblemConfig(m=m, k=k, spectrum=spectrum, **kwargs)


# ---------------------------------------------------------------------------
# configuration validation

def test_rejects_small_m():
    with pytest.raises(ValidationError):
        validate_problem(case_config(1))


def test_rejects_matrix_and_spectrum_together():
    cfg = case_config(3, spectrum=((Fraction(-2), 3),))
    with pytest.raises(ValidationError):
        validate_problem(cfg)


def test_rejects_spectrum_with_spatial_symmetry():
    cfg = ProblemConfig(m=3, k=3, gamma=GammaSpec(type="dihedral", n=3),
                        spectrum=((Fraction(-2), 3),))
    with pytest.raises(ValidationError):
        validate_problem(cfg)


def test_rejects_unknown_gamma_type():
    cfg = ProblemConfig(m=3, k=3, gamma=GammaSpec(type="wreath"),
                        a_matrix=((1.0,),))
    with pytest.raises(InputError):
        validate_problem(cfg)


def test_action_degree_must_match_k():
    cfg = ProblemConfig(m=3, k=4, gamma=GammaSpec(type="dihedral", n=3),
                        a_matrix=tuple((0.0,) * 4 for _ in range(4)))
    with pytest.raises(ValidationError):
        build_symmetry_context(cfg)


# ---------------------------------------------------------------------------
# spectrum of A

def test_matrix_spectrum_with_isotypic_split(ctx_m3):
    table = matrix_spectrum(ctx_m3.config, ctx_m3)
    assert [e.mult for e in table.eigenvalues] == [1, 2]
    assert abs(table.eigenvalues[0].mu + 2) < 1e-9
    assert abs(table.eigenvalues[1].mu + 0.5) < 1e-9
    assert table.eigenvalues[0].gamma_mults == (1, 0)
    assert table.eigenvalues[1].gamma_mults == (0, 1)


def test_exact_spectrum_bypasses_floating_point():
    cfg = trivial_config(3, [("-2", 1), ("-1/2", 2)])
    ctx = build_symmetry_context(cfg)
    table = matrix_spectrum(cfg, ctx)
    assert [e.mu_exact for e in table.eigenvalues] == \
        [Fraction(-2), Fraction(-1, 2)]
    assert [e.gamma_mults for e in table.eigenvalues] == [(1,), (2,)]


def test_exact_spectrum_multiplicities_must_sum_to_k():
    cfg = ProblemConfig(m=3, k=4, spectrum=((Fraction(-2), 1),
                                            (Fraction(-1, 2), 2)))
    ctx = build_symmetry_context(cfg)
    with pytest.raises(ValidationError):
        matrix_spectrum(cfg, ctx)


def test_close_eigenvalues_cluster():
    cfg = ProblemConfig(m=3, k=2,
                        a_matrix=((-1.0, 0.0), (0.0, -1.0 - 5e-8)))
    ctx = build_symmetry_context(cfg)
    table = matrix_spectrum(cfg, ctx)
    assert len(table.eigenvalues) == 1
    assert table.eigenvalues[0].mult == 2


def test_ambiguous_cluster_is_rejected():
    cfg = ProblemConfig(m=3, k=2,
                        a_matrix=((-1.0, 0.0), (0.0, -1.0 - 5e-7)))
    ctx = build_symmetry_context(cfg)
    with pytest.raises(ValidationError):
        matrix_spectrum(cfg, ctx)


def test_asymmetric_matrix_rejected():
    cfg = ProblemConfig(m=3, k=2, a_matrix=((-1.0, 0.5), (0.0, -1.0)))
    ctx = build_symmetry_context(cfg)
    with pytest.raises(ValidationError, match=r"\(A5\)"):
        matrix_spectrum(cfg, ctx)


def test_noncommuting_matrix_rejected():
    cfg = ProblemConfig(m=3, k=3, gamma=GammaSpec(type="dihedral", n=3),
                        a_matrix=((-1.0, 0.0, 0.0), (0.0, -2.0, 0.0),
                                  (0.0, 0.0, -3.0)))
    ctx = build_symmetry_context(cfg)
    with pytest.raises(ValidationError, match=r"\(A4\)"):
        matrix_spectrum(cfg, ctx)


# ---------------------------------------------------------------------------
# lambda, j_max, nondegeneracy

def test_lambda_value_is_exact_on_fractions():
    assert lambda_value(3, Fraction(-2), 3) == Fraction(-1, 2)
    assert lambda_value(0, Fraction(-1, 2), 3) == Fraction(-1, 2)
    assert lambda_value(4, Fraction(-2), 3) == Fraction(-2, 25)


@pytest.mark.parametrize("mu,m,expected", [
    (-2.0, 3, 4), (-0.5, 3, 2), (-2.0, 4, 5), (-0.5, 4, 2),
    (-2.0, 6, 8), (-0.5, 6, 4),
])
def test_j_max_values(mu, m, expected):
    assert j_max(mu, m) == expected


def test_j_max_rejects_boundary():
    with pytest.raises(ValidationError):
        j_max(-1.0, 3)          # 3^2 = 9 = -m^2 mu exactly


def test_j_max_needs_negative_eigenvalue():
    with pytest.raises(ValidationError):
        j_max(0.25, 3)


def test_nondegeneracy_scan_finds_zero_lambda():
    table = SpectralTable(eigenvalues=[EigenvalueEntry(-1.0, 1, (1,))])
    assert check_nondegeneracy(table, 3) == [(3, -1.0)]
    clean = SpectralTable(eigenvalues=[EigenvalueEntry(-2.0, 1, (1,))])
    assert check_nondegeneracy(clean, 3) == []


def test_degenerate_configuration_raises(ctx_m3):
    cfg = ProblemConfig(m=3, k=2, a_matrix=((-1.0, 0.0), (0.0, -1.0)))
    ctx = build_symmetry_context(cfg)
    with pytest.raises(ValidationError, match=r"\(A5\)"):
        spectral_table(cfg, ctx)


# ---------------------------------------------------------------------------
# negative spectrum and counters

@pytest.mark.parametrize("m,expected", [(3, SIGMA_M3), (4, SIGMA_M4)])
def test_negative_spectrum_values_and_order(m, expected, ctx_m3, ctx_m4):
    ctx = ctx_m3 if m == 3 else ctx_m4
    table = spectral_table(case_config(m), ctx)
    assert len(table.negative_lambdas) == len(expected)
    for (j, mu, lam), (ej, emu, elam) in zip(table.negative_lambdas, expected):
        assert j == ej
        assert abs(mu - emu) < 1e-9
        assert abs(lam - float(elam)) < 1e-9


def test_negative_spectrum_matches_brute_force(ctx_m4):
    cfg = case_config(4)
    table = spectral_table(cfg, ctx_m4)
    m = cfg.m
    found = {(j, round(e.mu, 9)) for e in table.eigenvalues
             for j in range(m * 5)
             if lambda_value(j, e.mu, m) < 0}
    listed = {(j, round(mu, 9)) for j, mu, _lam in table.negative_lambdas}
    assert found == listed


def test_eta_anchors(ctx_m3, ctx_m4):
    t3 = spectral_table(case_config(3), ctx_m3)
    assert t3.eta == {0: 4, 1: 7, 2: 1}
    t4 = spectral_table(case_config(4), ctx_m4)
    assert t4.eta == {0: 4, 1: 5, 2: 1, 3: 3, 4: 3}


@settings(deadline=None, max_examples=80)
@given(st.integers(min_value=2, max_value=12),
       st.integers(min_value=0, max_value=24),
       st.integers(min_value=1, max_value=3))
def test_beta_counts_match_fold_oracle(m, jm, mult):
    table = SpectralTable(eigenvalues=[EigenvalueEntry(-1.0, mult, (mult,))])
    table.jmax = {-1.0: jm}
    count_beta_eta_rho(table, m)
    for i in time_irrep_indices(m):
        expected = mult * sum(1 for j in range(jm + 1)
                              if i in fold_frequency(j, m))
        assert table.beta[(i, -1.0)] == expected
        assert table.eta[i] == expected


def test_rho_groups_planar_indices_by_gcd():
    table = SpectralTable(eigenvalues=[EigenvalueEntry(-1.0, 1, (1,))])
    table.jmax = {-1.0: 7}
    count_beta_eta_rho(table, 10)
    eta = table.eta
    assert table.rho[1] == table.rho[3] == eta[1] + eta[3]
    assert table.rho[2] == table.rho[4] == eta[2] + eta[4]
    assert table.rho[0] == eta[0]
    assert table.rho[5] == eta[5]       # z-character index passes through


# ---------------------------------------------------------------------------
# degrees and interpretation

def test_every_guarantee_has_nonzero_coefficient(ctx_m3, ctx_m4):
    for ctx, m in ((ctx_m3, 3), (ctx_m4, 4)):
        report = existence_degree(case_config(m), ctx)
        names = dict(report.nonzero_terms)
        for g in report.guarantees:
            assert names.get(g.orbit_type, 0) != 0
            assert g.orbit_type in report.maximal_orbit_types


def test_orbit_size_times_subgroup_order_is_group_order(ctx_m3):
    report = existence_degree(case_config(3), ctx_m3)
    for g in report.guarantees:
        idx = ctx_m3.poset.index_by_name(g.orbit_type)
        cls = ctx_m3.poset.classes[idx]
        assert g.orbit_size * cls.order == ctx_m3.group.order


def test_m3_guarantee_flags(ctx_m3):
    report = existence_degree(case_config(3), ctx_m3)
    flags = {g.orbit_type: (g.nonconstant, g.minimal_period_exceeds_base)
             for g in report.guarantees}
    assert flags == {"D3 x D3^z": (True, True),
                     "D1 x_{Z2}^{D3} D3^p": (False, True)}


def test_full_group_guarantee_is_constant(ctx_m3):
    unit = BurnsideElement.unit(ctx_m3.poset)
    out = interpret(ctx_m3, unit, [ctx_m3.poset.top_index])
    assert len(out) == 1
    assert out[0].orbit_size == 1
    assert not out[0].nonconstant


def test_product_part_involution_and_parity_reduction():
    cfg = trivial_config(6, [("-2", 1), ("-1/2", 1)])
    ctx = build_symmetry_context(cfg)
    report = existence_degree(cfg, ctx)
    unit = BurnsideElement.unit(ctx.poset)
    assert report.product_part * report.product_part == unit
    reduced = unit
    for i in time_irrep_indices(6):
        if report.table.eta[i] % 2:
            reduced = reduced * basic_degree(ctx.poset, ctx.minus(i, 0))
    assert report.product_part == reduced


def test_parity_predictions_m6():
    cfg = trivial_config(6, [("-2", 1), ("-1/2", 1)])
    ctx = build_symmetry_context(cfg)
    report = existence_degree(cfg, ctx)
    preds = parity_predictions(report.table, 6)
    assert [p.candidates for p in preds] == \
        [("D6",), ("D6^z",), ("D2^z", "D6^z")]
    names = dict(report.nonzero_terms)
    for p in preds:
        assert any(names.get(c, 0) != 0 for c in p.candidates), p


def test_parity_predictions_dyadic_pair():
    # eta odd at the planar index 1 = 4/2^2 forces both twisted classes
    table = SpectralTable(eigenvalues=[EigenvalueEntry(-1.0, 1, (1,))])
    table.jmax = {-1.0: 1}
    count_beta_eta_rho(table, 4)
    assert table.rho[1] % 2 == 1
    preds = parity_predictions(table, 4)
    flat = [p.candidates for p in preds]
    assert ("D2^d",) in flat
    assert ("~D2^d",) in flat


def test_maximal_orbit_types_trivial_symmetry():
    expected = {
        3: {"D3", "D3^z"},
        4: {"D4", "D4^z", "D4^d", "D4^dh", "D2^d", "~D2^d"},
        5: {"D5", "D5^z"},
        6: {"D6", "D6^z", "D6^d", "D6^dh"},
        8: {"D8", "D8^z", "D8^d", "D8^dh", "D4^d", "~D4^d", "D2^d", "~D2^d"},
        12: {"D12", "D12^z", "D12^d", "D12^dh", "D6^d", "~D6^d"},
    }
    for m, names in expected.items():
        cfg = trivial_config(m, [("-2", 1)])
        ctx = build_symmetry_context(cfg)
        char = np.zeros(ctx.group.order)
        for i in time_irrep_indices(m):
            char += ctx.minus(i, 0).character
        found = {ctx.poset.classes[i].name
                 for i in maximal_orbit_types(ctx.poset, char)}
        assert found == names, m


def test_m3_maximal_orbit_types_of_function_space(ctx_m3):
    report = existence_degree(case_config(3), ctx_m3)
    assert set(report.maximal_orbit_types) == {
        "D3 x D3", "D3 x D3^z",
        "D1 x_{Z2}^{D3} D3^p", "D1 x_{Z2}^{D3^z} D3^p"}
