"""Shared fixtures: the oracle-vs-closed-form comparison grid is expensive
(~20 s) and is reused by several acceptance criteria, so it is computed once
per session."""

from __future__ import annotations

import pytest

from unruhcoh import (
    Boundary,
    Dim,
    Motion,
    PhysParams,
    QuadratureConfig,
    ScenarioSpec,
    p_numeric,
    transition,
)

GRID_A = (0.5, 1.0, 2.0)
GRID_OMEGA = (0.5, 1.0)
GRID_BIG_OMEGA = (0.5, 1.0, 2.0)
GRID_Z0_MIRROR = (0.0, 0.3, 1.0)

D1_SCENARIOS = tuple(ScenarioSpec(Dim.D1, m, b) for m in Motion for b in Boundary)


def d1_grid_points(scenario: ScenarioSpec) -> list[PhysParams]:
    z0s = GRID_Z0_MIRROR if scenario.mirror else (0.0,)
    return [PhysParams(a=a, omega=om, Omega=bo, z0=z0)
            for a in GRID_A for om in GRID_OMEGA for bo in GRID_BIG_OMEGA
            for z0 in z0s]


@pytest.fixture(scope="session")
def oracle_grid():
    """[(scenario, params, closed_form, oracle_result), ...] on the standard grid."""
    cfg = QuadratureConfig()
    rows = []
    for scenario in D1_SCENARIOS:
        for p in d1_grid_points(scenario):
            rows.append((scenario, p, transition(scenario, p),
                         p_numeric(scenario, p, cfg)))
    return rows
