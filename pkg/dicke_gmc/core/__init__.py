"""
Core numerics of dicke-gmc: stable kernels, Dicke states and mixtures,
correlation measures and superradiant dynamics.
"""
from .stable_math import (
    NEG_INFINITY,
    compensated_sum,
    h,
    hypergeometric_spectrum,
    hypergeometric_weight,
    log_binomial,
)
from .dicke_core import (
    DickeLabel,
    DickeMixture,
    ReducedSpectrum,
    entropy_of_spectrum,
    mixture_entropy,
    reduced_entropy,
    reduced_spectrum_mixture,
    reduced_spectrum_pure,
)
from .gmc import (
    GmcProfile,
    WeightScheme,
    divisor_profile,
    gmc_higher,
    gmc_higher_mixture,
    gmc_higher_pure,
    gmc_profile,
    total_correlations,
    weaving,
)
from .superradiance import (
    ExtremumReport,
    GmcSeries,
    Quantity,
    RateModel,
    Trajectory,
    correlation_cluster,
    evolve,
    find_time_of_max,
    gmc_time_series,
    population_snapshot,
    radiated_power,
    rate_derivative,
    time_of_max_correlation,
)

__all__ = [
    'NEG_INFINITY', 'compensated_sum', 'h', 'hypergeometric_spectrum', 'hypergeometric_weight', 'log_binomial',
    'DickeLabel', 'DickeMixture', 'ReducedSpectrum', 'entropy_of_spectrum', 'mixture_entropy', 'reduced_entropy',
    'reduced_spectrum_mixture', 'reduced_spectrum_pure',
    'GmcProfile', 'WeightScheme', 'divisor_profile', 'gmc_higher', 'gmc_higher_mixture', 'gmc_higher_pure',
    'gmc_profile', 'total_correlations', 'weaving',
    'ExtremumReport', 'GmcSeries', 'Quantity', 'RateModel', 'Trajectory', 'correlation_cluster', 'evolve',
    'find_time_of_max', 'gmc_time_series', 'population_snapshot', 'radiated_power', 'rate_derivative',
    'time_of_max_correlation',
]
