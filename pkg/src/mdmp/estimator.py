"""Sklearn-style estimator facade over the detection pipelines.

The functional API in :mod:`mdmp.pipeline` stays the source of truth;
this wrapper adds the fit/predict surface plus ``get_params`` and
``set_params`` so the detector composes with scikit-learn tooling
(cloning, grid utilities, pipelines).
"""

from __future__ import annotations

from dataclasses import replace

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .exceptions import InfeasibleError
from .metrics import as_labels
from .pipeline import (
    DetectorConfig,
    default_config,
    detect_semisupervised,
    detect_supervised,
    detect_unsupervised,
)
from .profile import ProfileVariant
from .series import as_series

SETUPS = ("unsupervised", "semisupervised", "supervised")


class MatrixProfileDetector(BaseEstimator):
    """Matrix-profile anomaly detector with a fit/predict interface.

    Parameters
    ----------
    setup : {"unsupervised", "semisupervised", "supervised"}
        Learning setup. Unsupervised scores a series against itself,
        semi-supervised scores test windows against the train series
        given to :meth:`fit`, supervised additionally grid-searches
        hyperparameters on the train labels.
    m, k, variant, dim_select, smooth_window : optional
        Overrides of the per-setup defaults (m=64, pre-max variant,
        first rank column, smoothing window m; k=15 unsupervised, k=1
        semi-supervised). For the supervised setup these are ignored in
        favor of ``grid``.
    grid : list of DetectorConfig, optional
        Supervised search space; defaults to the built-in grid.
    n_jobs : int
        Worker processes per join. Results are identical for any value.

    Examples
    --------
    >>> det = MatrixProfileDetector(m=16, k=1).fit()
    >>> scores = det.predict(series)  # doctest: +SKIP
    """

    def __init__(
        self,
        setup: str = "unsupervised",
        m: int | None = None,
        k: int | None = None,
        variant=None,
        dim_select=None,
        smooth_window: int | None = None,
        grid=None,
        n_jobs: int = 1,
    ):
        self.setup = setup
        self.m = m
        self.k = k
        self.variant = variant
        self.dim_select = dim_select
        self.smooth_window = smooth_window
        self.grid = grid
        self.n_jobs = n_jobs

    def _resolved_config(self) -> DetectorConfig:
        config = default_config(self.setup)
        overrides = {}
        if self.m is not None:
            overrides["m"] = int(self.m)
        if self.k is not None:
            overrides["k"] = int(self.k)
        if self.variant is not None:
            variant = self.variant
            if not isinstance(variant, ProfileVariant):
                variant = ProfileVariant.from_name(variant)
            overrides["variant"] = variant
        if self.dim_select is not None:
            overrides["dim_select"] = self.dim_select
        if self.smooth_window is not None:
            overrides["smooth_window"] = int(self.smooth_window)
        return replace(config, **overrides)

    def fit(self, X=None, y=None):
        """Validate and store the training inputs for this setup.

        Unsupervised detection has nothing to learn, so ``X`` and ``y``
        may be omitted. Semi-supervised requires the train series,
        supervised additionally requires its boolean labels.
        """
        if self.setup not in SETUPS:
            raise InfeasibleError(f"unknown setup {self.setup!r}, expected one of {SETUPS}")
        if self.setup == "unsupervised":
            self.train_ = None
            self.train_labels_ = None
        else:
            if X is None:
                raise InfeasibleError(f"{self.setup} setup requires a train series")
            self.train_ = as_series(X)
            if self.setup == "supervised":
                if y is None:
                    raise InfeasibleError("supervised setup requires train labels")
                self.train_labels_ = as_labels(y)
            else:
                self.train_labels_ = None
        return self

    def predict(self, X):
        """Per-time-step anomaly scores for ``X`` (higher = more anomalous).

        For the supervised setup the winning configuration and its
        train-region AUC-ROC are exposed afterwards as ``config_`` and
        ``train_auc_``.
        """
        if not hasattr(self, "train_"):
            raise NotFittedError("call fit before predict")
        X = as_series(X)
        if self.setup == "unsupervised":
            self.config_ = self._resolved_config()
            return detect_unsupervised(X, self.config_, n_jobs=self.n_jobs)
        if self.setup == "semisupervised":
            self.config_ = self._resolved_config()
            return detect_semisupervised(self.train_, X, self.config_, n_jobs=self.n_jobs)
        result = detect_supervised(
            self.train_, self.train_labels_, X, grid=self.grid, n_jobs=self.n_jobs
        )
        self.config_ = result.config
        self.train_auc_ = result.train_auc
        return result.scores
