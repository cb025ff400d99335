"""Shift equivariance vs translation equivariance of 1D convolutional layers."""
from ._validation import ConfigurationError, InputDomainError
from .convnet import ConvLayer, Kernel, apply_layer, convolve, edge_detector_layer
from .equivariance import (PixelDelta, ResidualRecord, SweepSpec,
                           discretization_commutation_residual, lipschitz_estimate,
                           shift_equiv_residual, sweep, translation_equiv_residual)
from .sampling import DiscreteSignal, Grid, discretize, discretize_avg, discretize_sample
from .shifts import shift_frac, shift_int
from .signals import (Constant, ContinuousSignal, Gaussian, Heaviside, Polynomial,
                      Scale, Sinusoid, Sum, Translate, continuous_convolve, evaluate,
                      integrate, translate)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError", "InputDomainError",
    "ConvLayer", "Kernel", "apply_layer", "convolve", "edge_detector_layer",
    "PixelDelta", "ResidualRecord", "SweepSpec", "discretization_commutation_residual",
    "lipschitz_estimate", "shift_equiv_residual", "sweep", "translation_equiv_residual",
    "DiscreteSignal", "Grid", "discretize", "discretize_avg", "discretize_sample",
    "shift_frac", "shift_int",
    "Constant", "ContinuousSignal", "Gaussian", "Heaviside", "Polynomial", "Scale",
    "Sinusoid", "Sum", "Translate", "continuous_convolve", "evaluate", "integrate", "translate",
]
