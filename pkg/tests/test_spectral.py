#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Тесты счётчика инерции, бисекции и обратных итераций
"""

import itertools

import numpy as np
import pytest

from src.core.errors import DomainError, NumericalError
from src.fractal.spectral import (
    SolverSettings,
    count_below,
    count_below_many,
    counting_function,
    counting_function_many,
    dense_eigenvalues,
    eigenfunction,
    eigenvalue,
    eigenvalues,
    sign_changes,
    spectrum,
)
from src.fractal.selfsimilar import make_params
from src.fractal.stieltjes_string import BoundaryCondition, assemble_pencil, build_string

ORACLE_BCS = [
    BoundaryCondition.neumann(),
    BoundaryCondition.dirichlet(),
    BoundaryCondition.robin(2.0, 2.0),
    BoundaryCondition.robin(6.0, 6.0),
    BoundaryCondition.robin(0.0, 2.0),
]


class TestCountBelow:
    def test_level_one_examples(self, neumann_pencil):
        pencil = neumann_pencil(1)
        assert count_below(pencil, 1.0) == 1
        assert count_below(pencil, 7.0) == 2
        assert count_below(pencil, 0.0) == 0
        assert count_below(pencil, -5.0) == 0

    def test_vectorised_matches_scalar(self, neumann_pencil):
        pencil = neumann_pencil(4)
        lambdas = np.logspace(-1, 5, 50)
        expected = [count_below(pencil, lam) for lam in lambdas]
        np.testing.assert_array_equal(count_below_many(pencil, lambdas), expected)

    def test_non_decreasing(self, boundary_conditions, cantor):
        string = build_string(cantor, 6)
        lambdas = np.logspace(-2, 7, 400)
        for bc in boundary_conditions.values():
            counts = count_below_many(assemble_pencil(string, bc), lambdas)
            assert np.all(np.diff(counts) >= 0)
            assert counts[-1] <= string.size

    def test_zero_pivot_is_perturbed(self, neumann_pencil):
        # λ = 6 совпадает с собственным значением: ведущий элемент может обратиться в ноль
        assert count_below(neumann_pencil(1), 6.0) in (1, 2)

    def test_perturbation_exhaustion(self, neumann_pencil):
        with pytest.raises(NumericalError, match="после 3 сдвигов"):
            count_below(neumann_pencil(1), 3.0, SolverSettings(pivot_floor=np.inf))

    def test_retries_come_from_settings(self, neumann_pencil):
        settings = SolverSettings(pivot_floor=np.inf, perturb_retries=0)
        with pytest.raises(NumericalError, match="после 0 сдвигов"):
            count_below(neumann_pencil(1), 3.0, settings)

    @pytest.mark.parametrize(
        "field,value", [("pivot_floor", 0.0), ("perturb_retries", -1), ("inverse_iterations", 0)]
    )
    def test_settings_validation(self, field, value):
        with pytest.raises(DomainError, match=field):
            SolverSettings(**{field: value})

    def test_settings_from_config(self):
        settings = SolverSettings.from_config({"pivot_floor": 1e-200, "perturb_retries": 5})
        assert settings == SolverSettings(pivot_floor=1e-200, perturb_retries=5, inverse_iterations=5)


class TestCountingFunction:
    def test_excludes_neumann_zero_mode(self, neumann_pencil):
        pencil = neumann_pencil(1)
        assert counting_function(pencil, 1.0) == 0
        assert counting_function(pencil, 7.0) == 1

    def test_dirichlet_equals_count_below(self, cantor):
        pencil = assemble_pencil(build_string(cantor, 5), BoundaryCondition.dirichlet())
        for lam in (3.0, 50.0, 900.0):
            assert counting_function(pencil, lam) == count_below(pencil, lam)

    def test_rejects_non_positive(self, neumann_pencil):
        with pytest.raises(DomainError):
            counting_function(neumann_pencil(1), 0.0)
        with pytest.raises(DomainError):
            counting_function_many(neumann_pencil(1), [1.0, -1.0])

    def test_converged_examples(self, neumann_pencil):
        pencil = neumann_pencil(10)
        assert counting_function(pencil, 36.0) == 1
        assert counting_function(pencil, 6.0) == 0


class TestEigenvalue:
    def test_level_one(self, neumann_pencil):
        assert eigenvalue(neumann_pencil(1), 1, 1e-12) == pytest.approx(6.0, abs=1e-11)

    def test_neumann_zero_mode_exact(self, neumann_pencil):
        assert eigenvalue(neumann_pencil(5), 0) == 0.0

    def test_level_two_cross_level(self, neumann_pencil):
        assert eigenvalue(neumann_pencil(2), 2, 1e-12) == pytest.approx(36.0, abs=1e-10)

    def test_strictly_increasing(self, cantor, boundary_conditions):
        string = build_string(cantor, 6)
        for bc in boundary_conditions.values():
            values = eigenvalues(assemble_pencil(string, bc), range(string.size))
            assert np.all(np.diff(values) > 0.0)

    def test_indices_in_any_order(self, neumann_pencil):
        pencil = neumann_pencil(5)
        forward = eigenvalues(pencil, [1, 4, 9])
        np.testing.assert_allclose(eigenvalues(pencil, [9, 1, 4]), forward[[2, 0, 1]], rtol=1e-10)

    def test_index_out_of_range(self, neumann_pencil):
        with pytest.raises(DomainError):
            eigenvalue(neumann_pencil(1), 2)
        with pytest.raises(DomainError):
            eigenvalue(neumann_pencil(1), -1)

    def test_tolerance_floor(self, neumann_pencil):
        with pytest.raises(DomainError):
            eigenvalue(neumann_pencil(1), 1, 1e-15)

    def test_spectrum_container(self, neumann_pencil):
        spec = spectrum(neumann_pencil(3), 3, 5)
        assert len(spec) == 5
        assert spec[0] == 0.0
        assert spec.level == 3 and spec.bc.is_neumann
        with pytest.raises(DomainError):
            spectrum(neumann_pencil(3), 3, 9)


@pytest.mark.parametrize("kappa,a,levels", [(2, 1 / 3, range(4)), (3, 0.2, range(3)), (2, 0.2, range(4))])
@pytest.mark.parametrize("bc", ORACLE_BCS, ids=lambda bc: bc.label())
def test_dense_oracle(kappa, a, levels, bc):
    params = make_params(kappa, a)
    for level in levels:
        pencil = assemble_pencil(build_string(params, level), bc)
        ours = eigenvalues(pencil, range(pencil.n_eigen), 1e-12)
        np.testing.assert_allclose(ours, dense_eigenvalues(pencil), rtol=1e-9, atol=1e-9)


THIN_TAIL_CASES = [
    (2, 0.1, 9, BoundaryCondition.neumann()),
    (2, 0.1, 9, BoundaryCondition.dirichlet()),
    (2, 0.1, 9, BoundaryCondition.robin(0.0, 2.0)),
    (2, 0.1, 9, BoundaryCondition.robin(2.0, 2.0)),
    (4, 0.05, 5, BoundaryCondition.robin(3.0, 0.0)),
    (5, 0.02, 4, BoundaryCondition.robin(3.0, 0.0)),
]


@pytest.mark.parametrize(
    "kappa,a,level,bc", THIN_TAIL_CASES, ids=lambda v: v.label() if isinstance(v, BoundaryCondition) else str(v)
)
def test_bisection_with_tiny_end_gaps(kappa, a, level, bc):
    # Крайний зазор a^level/2 мал: 1/g у безмассового конца поглощает остальные члены строки
    pencil = assemble_pencil(build_string(make_params(kappa, a), level), bc)
    ours = eigenvalues(pencil, range(40), 1e-10)
    assert np.all(np.diff(ours) > 0.0)
    np.testing.assert_allclose(ours, dense_eigenvalues(pencil)[:40], rtol=1e-6, atol=1e-2)


def test_fifth_neumann_eigenvalue_of_thin_weight():
    pencil = assemble_pencil(build_string(make_params(2, 0.1), 9), BoundaryCondition.neumann())
    assert eigenvalue(pencil, 5, 1e-10) == pytest.approx(1876.375, rel=1e-5)


class TestEigenfunction:
    def test_level_one_antisymmetric_mode(self, neumann_pencil):
        pencil = neumann_pencil(1)
        ef = eigenfunction(pencil, 6.0, 1)
        np.testing.assert_allclose(ef.node_positions, [0.0, 1 / 6, 5 / 6, 1.0], atol=1e-15)
        np.testing.assert_allclose(ef.node_values, [1.0, 1.0, -1.0, -1.0], atol=1e-7)
        assert ef.sign_changes == 1

    def test_neumann_constant_mode(self, neumann_pencil):
        ef = eigenfunction(neumann_pencil(4), 0.0, 0)
        np.testing.assert_allclose(ef.node_values, np.ones(18), atol=1e-7)
        assert ef.sign_changes == 0

    def test_level_ten_fifth_mode(self, neumann_pencil):
        pencil = neumann_pencil(10)
        ef = eigenfunction(pencil, eigenvalue(pencil, 5), 5)
        assert ef.sign_changes == 5

    def test_dirichlet_zero_endpoints(self, cantor):
        pencil = assemble_pencil(build_string(cantor, 5), BoundaryCondition.dirichlet())
        ef = eigenfunction(pencil, eigenvalue(pencil, 2), 2)
        assert ef.node_values[0] == 0.0 and ef.node_values[-1] == 0.0
        assert ef.node_positions.size == pencil.size + 2
        assert ef.sign_changes == 2

    def test_deterministic(self, neumann_pencil):
        pencil = neumann_pencil(6)
        lam = eigenvalue(pencil, 7)
        first = eigenfunction(pencil, lam, 7)
        second = eigenfunction(pencil, lam, 7)
        np.testing.assert_array_equal(first.node_values, second.node_values)

    def test_normalised(self, neumann_pencil):
        pencil = neumann_pencil(6)
        ef = eigenfunction(pencil, eigenvalue(pencil, 3), 3)
        assert np.max(np.abs(ef.node_values)) == pytest.approx(1.0)
        assert ef.node_values[np.flatnonzero(np.abs(ef.node_values) >= 1e-12)[0]] > 0.0
        assert ef.derivative_values.size == ef.node_values.size - 1

    def test_wrong_eigenvalue_fails(self, neumann_pencil):
        pencil = neumann_pencil(4)
        lam = 0.5 * (eigenvalue(pencil, 2) + eigenvalue(pencil, 3))
        with pytest.raises(NumericalError, match="n=2"):
            eigenfunction(pencil, lam, 2)


@pytest.mark.parametrize("name", ["neumann", "gamma2", "gamma6", "dirichlet"])
def test_oscillation(cantor, boundary_conditions, name):
    bc = boundary_conditions[name]
    pencil = assemble_pencil(build_string(cantor, 10), bc)
    values = eigenvalues(pencil, range(31))
    for n, lam in enumerate(values):
        ef = eigenfunction(pencil, lam, n)
        assert ef.sign_changes == n
        if not bc.is_dirichlet:
            assert abs(ef.node_values[0]) > 1e-9
            assert abs(ef.node_values[-1]) > 1e-9


def test_boundary_condition_stability(cantor, boundary_conditions):
    string = build_string(cantor, 10)
    lambdas = np.logspace(0.0, 6.0, 202)[1:-1]
    counts = {
        name: counting_function_many(assemble_pencil(string, bc), lambdas)
        for name, bc in boundary_conditions.items()
    }
    for first, second in itertools.combinations(counts, 2):
        assert np.max(np.abs(counts[first] - counts[second])) <= 2, (first, second)


class TestSignChanges:
    def test_skips_small_values(self):
        assert sign_changes([1.0, 1e-15, -1.0, 0.0, 2.0]) == 2

    def test_constant(self):
        assert sign_changes(np.ones(5)) == 0
