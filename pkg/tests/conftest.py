"""Shared fixtures: the figure presets are solved once per session."""

import pytest

from optocorr import figure_preset, run_sweep


@pytest.fixture(scope="session")
def preset_runs():
    """{"fig2"|"fig3"|"fig4": [(spec, reports), ...]}, one entry per curve.

    The discord presets fig5/fig6/fig7 reuse the same specs (every report
    carries both quantities), so only the three distinct families are run.
    """
    return {
        name: [(spec, run_sweep(spec)) for spec in figure_preset(name)]
        for name in ("fig2", "fig3", "fig4")
    }
