"""
Figures Package
Registry of the figure-data builders
"""
import logging

from .builders import (
    FigureData,
    figure_cond_outage,
    figure_fig1,
    figure_fig2,
    figure_fig3,
    figure_fig4,
    figure_fig5,
    figure_fig6,
    figure_fig7,
)

logger = logging.getLogger(__name__)

__all__ = [
    'FigureData'
]

FIGURES = {
    'fig1': {
        'function': figure_fig1,
        'description': 'Diversity polynomial D_5(p, δ) over p and δ',
        'columns': 'p, delta, D5'
    },
    'fig2': {
        'function': figure_fig2,
        'description': 'Conditional success after n successes, δ=1/2, Δ=1/2',
        'columns': 'p, cond_success_n1..n4, baseline'
    },
    'fig3': {
        'function': figure_fig3,
        'description': 'Correlation coefficient, λπr²=1/2, θ=5',
        'columns': 'p, delta, zeta'
    },
    'fig4': {
        'function': figure_fig4,
        'description': 'Conditional success with bounded path gain, δ=1/2, r=1, θ=1, λ=π⁻²',
        'columns': 'p, cond_success_bounded_n1..n4, cond_success_n1..n4, baseline'
    },
    'fig5': {
        'function': figure_fig5,
        'description': 'ψ^(2)(ν) and A + Bν², δ=2/3, Δ̂θ̄^δ=2, p ∈ {1/2, 1/4}',
        'columns': 'nu, psi2_p0.5, approx_p0.5, psi2_p0.25, approx_p0.25'
    },
    'fig6': {
        'function': figure_fig6,
        'description': 'Threshold design at θ̄=10, Δ̂=1/3, p=1/3, δ=2/5',
        'columns': 'nu, psi2, independent, psi2_at_0'
    },
    'fig7': {
        'function': figure_fig7,
        'description': 'Critical probabilities p_c and p_c_ind versus δ, θ=10, λ/μ ∈ {1, 1/4}',
        'columns': 'delta, p_c_ratio*, p_c_ind_ratio*'
    },
    'cond_outage': {
        'function': figure_cond_outage,
        'description': 'Outage after n failures, δ=1/2, Δ=1/2',
        'columns': 'p, cond_outage_n1..n4, baseline'
    },
}


def get_available_figures():
    return {name: {'description': info['description'], 'columns': info['columns']}
            for name, info in FIGURES.items()}


def build_figure(name: str, overrides=None) -> FigureData:
    """
    Build the data table of a figure

    Args:
        name: Figure name (fig1..fig7, cond_outage)
        overrides: Parameter overrides, keys as in the figure's parameter block

    Raises:
        ValueError: If the figure name is unknown
    """
    if name not in FIGURES:
        raise ValueError(f"Figure '{name}' not found. Available figures: {list(FIGURES.keys())}")

    figure = FIGURES[name]['function'](overrides)
    logger.info(f"[FIGURE] Built {name}: {len(figure.frame)} rows x {len(figure.frame.columns)} columns")
    return figure
