"""scikit-learn transformers wrapping the discretizer, the layer and the shift operators.

Rows of X are independent 1D signals, so the pieces compose in a Pipeline:

    >>> from sklearn.pipeline import make_pipeline
    >>> from equivprobe.signals import Heaviside, translate
    >>> pipe = make_pipeline(Discretizer(x0=-1.0, dx=0.5, n=4),
    ...                      LayerTransformer(taps=(2.0, -2.0), origin=1, bias=-1.0,
    ...                                       boundary="zero"))
    >>> pipe.fit_transform([Heaviside(0.0), translate(Heaviside(0.0), 0.25)])
    array([[0., 1., 0., 0.],
           [0., 0., 0., 0.]])
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import InputDomainError, check_choice
from .convnet import ConvLayer, Kernel, apply_layer
from .sampling import DISCRETIZERS, Grid, discretize
from .shifts import shift_frac
from .signals import ContinuousSignal

__all__ = ["Discretizer", "LayerTransformer", "FractionalShift"]


def _check_rows(estimator, X, reset):
    X = check_array(X, dtype=float, ensure_all_finite=True)
    if reset:
        estimator.n_features_in_ = X.shape[1]
    elif X.shape[1] != estimator.n_features_in_:
        raise ValueError(f"X has {X.shape[1]} features, but {type(estimator).__name__} "
                         f"is expecting {estimator.n_features_in_} features as input")
    return X


class Discretizer(TransformerMixin, BaseEstimator):
    """Map a sequence of ContinuousSignal objects to an (n_signals, n) pixel array."""

    def __init__(self, x0=-1.0, dx=0.5, n=4, method="avg"):
        self.x0 = x0
        self.dx = dx
        self.n = n
        self.method = method

    def fit(self, X=None, y=None):
        self.grid_ = Grid(self.x0, self.dx, self.n)
        check_choice(self.method, DISCRETIZERS, "method")
        return self

    def transform(self, X):
        check_is_fitted(self, "grid_")
        signals = list(X)
        for s in signals:
            if not isinstance(s, ContinuousSignal):
                raise InputDomainError(f"expected ContinuousSignal rows, got {type(s).__name__}")
        if not signals:
            return np.empty((0, self.grid_.n))
        return np.vstack([discretize(s, self.grid_, self.method).samples for s in signals])

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.two_d_array = False
        tags.requires_fit = True
        return tags


class LayerTransformer(TransformerMixin, BaseEstimator):
    """Apply one convolutional layer to every row of X."""

    def __init__(self, taps=(1.0,), origin=0, bias=0.0, nonlinearity="relu",
                 boundary="circular"):
        self.taps = taps
        self.origin = origin
        self.bias = bias
        self.nonlinearity = nonlinearity
        self.boundary = boundary

    def fit(self, X, y=None):
        _check_rows(self, X, reset=True)
        self.layer_ = ConvLayer(Kernel(tuple(self.taps), self.origin), self.bias,
                                self.nonlinearity, self.boundary)
        return self

    def transform(self, X):
        check_is_fitted(self, "layer_")
        X = _check_rows(self, X, reset=False)
        return np.vstack([apply_layer(self.layer_, row) for row in X])


class FractionalShift(TransformerMixin, BaseEstimator):
    """Shift every row of X by `shift` pixels with an interpolating scheme."""

    def __init__(self, shift=0.5, scheme="linear", boundary="circular"):
        self.shift = shift
        self.scheme = scheme
        self.boundary = boundary

    def fit(self, X, y=None):
        X = _check_rows(self, X, reset=True)
        # surfaces bad scheme/boundary combinations at fit time
        shift_frac(X[0], self.shift, self.scheme, self.boundary)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = _check_rows(self, X, reset=False)
        return np.vstack([shift_frac(row, self.shift, self.scheme, self.boundary) for row in X])
