"""Anomaly detection pipelines built on multidimensional profiles.

Three learning setups share one scoring tail. A profile is computed
(self-join, query-into-train AB-join, or self-join over train plus
test), one rank column or the column mean is selected, the per-window
scores are smoothed with a centered moving average, and reverse
windowing maps them back onto time steps: the score of step ``t`` is
the mean over every window covering ``t``. Higher scores mean more
anomalous.

The supervised setup grid-searches window length, neighbor rank and
variant by AUC-ROC on the labeled train region of the concatenated
join, then reports scores for the test region under the winning
configuration. Windows straddling the train/test junction belong to
the region of their start index.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    InfeasibleError,
    InvalidWindow,
    NoAnomalyInTrainLabels,
    RankOutOfRange,
    SeriesTooShort,
)
from .metrics import as_labels, auc_roc
from .profile import (
    POST_MAX,
    PRE_MAX,
    MultidimProfile,
    ProfileVariant,
    Reduction,
    mp_ab_join,
    mp_self_join,
)
from .series import as_series, check_same_dims

DimSelect = str | int


@dataclass(frozen=True)
class DetectorConfig:
    """One detection configuration.

    ``dim_select`` is ``"first"``, ``"mean"``, or an integer rank
    column. ``smooth_window`` of ``None`` means "use ``m``", ``0`` or
    ``1`` disables smoothing.
    """

    m: int = 64
    k: int = 15
    variant: ProfileVariant = PRE_MAX
    dim_select: DimSelect = "first"
    smooth_window: int | None = None

    def resolved_smooth(self) -> int:
        return self.m if self.smooth_window is None else self.smooth_window


def default_config(setup: str) -> DetectorConfig:
    """Built-in defaults per learning setup (semi-supervised drops k to 1)."""
    if setup == "unsupervised":
        return DetectorConfig()
    if setup == "semisupervised":
        return DetectorConfig(k=1)
    raise InfeasibleError(f"no single default config for setup {setup!r}")


def default_grid(
    m_grid: Sequence[int] = (16, 32, 64, 128),
    k_grid: Sequence[int] = (1, 5, 15),
    variants: Sequence[ProfileVariant] = (PRE_MAX, POST_MAX),
) -> list[DetectorConfig]:
    """Supervised search space: m x k x {pre-max, post-max}.

    Any axis can be pinned to a single value to restrict the search.
    """
    return [
        DetectorConfig(m=m, k=k, variant=v)
        for m in m_grid
        for k in k_grid
        for v in variants
    ]


@dataclass(frozen=True)
class SupervisedDetection:
    """Test scores plus the configuration that won the train-region search."""

    scores: np.ndarray
    config: DetectorConfig
    train_auc: float


def select_dimension(profile: MultidimProfile, strategy: DimSelect) -> np.ndarray:
    """Collapse a profile to one score per window.

    ``"first"`` reads rank column 0, an integer reads that rank column,
    and ``"mean"`` averages the rank columns of a sorted-variant
    profile (other variants carry a single collapsed column, so a mean
    over ranks does not exist for them).
    """
    if strategy == "first":
        return profile.column(0)
    if strategy == "mean":
        if profile.variant.reduction is not Reduction.SORT_DESC:
            raise RankOutOfRange(
                f"mean over rank columns needs a sorted variant, got {profile.variant.name}"
            )
        return profile.values.mean(axis=1)
    if isinstance(strategy, (int, np.integer)) and not isinstance(strategy, bool):
        return profile.column(int(strategy))
    raise InfeasibleError(f"unknown dimension selection {strategy!r}")


def smooth_scores(scores, window: int) -> np.ndarray:
    """Centered moving average with edge truncation.

    Windows are truncated at the array ends, so edge values average
    fewer points. ``window`` of 0 or 1 returns a copy unchanged; even
    windows extend one step further to the right.
    """
    scores = np.asarray(scores, dtype=np.float64).ravel()
    if window < 0:
        raise InvalidWindow(f"smoothing window {window} invalid: must be >= 0")
    if window <= 1:
        return scores.copy()
    n = scores.shape[0]
    t = np.arange(n)
    lo = np.maximum(t - (window - 1) // 2, 0)
    hi = np.minimum(t + window // 2, n - 1) + 1
    csum = np.concatenate([[0.0], np.cumsum(scores)])
    return (csum[hi] - csum[lo]) / (hi - lo)


def reverse_window(profile_scores, n: int, m: int) -> np.ndarray:
    """Map per-window scores onto time steps by averaging covering windows.

    ``profile_scores`` must have length ``n - m + 1``; output step ``t``
    averages ``profile_scores[i]`` over every ``i`` with
    ``i <= t < i + m``.
    """
    profile_scores = np.asarray(profile_scores, dtype=np.float64).ravel()
    length = profile_scores.shape[0]
    if m < 1:
        raise InvalidWindow(f"window length m={m} invalid: must be >= 1")
    if length != n - m + 1:
        raise InvalidWindow(
            f"expected n - m + 1 = {n - m + 1} window scores for n={n}, m={m}, "
            f"got {length}"
        )
    t = np.arange(n)
    lo = np.maximum(t - m + 1, 0)
    hi = np.minimum(t, length - 1) + 1
    csum = np.concatenate([[0.0], np.cumsum(profile_scores)])
    return (csum[hi] - csum[lo]) / (hi - lo)


def _score_tail(window_scores: np.ndarray, config: DetectorConfig, n: int) -> np.ndarray:
    smoothed = smooth_scores(window_scores, config.resolved_smooth())
    return reverse_window(smoothed, n, config.m)


def detect_unsupervised(series, config: DetectorConfig | None = None, n_jobs: int = 1):
    """Per-time-step anomaly scores from a self-join on ``series``."""
    series = as_series(series)
    if config is None:
        config = default_config("unsupervised")
    profile = mp_self_join(series, config.m, config.k, config.variant, n_jobs=n_jobs)
    return _score_tail(select_dimension(profile, config.dim_select), config, series.n)


def detect_semisupervised(train, test, config: DetectorConfig | None = None, n_jobs: int = 1):
    """Score ``test`` windows by their nearest neighbors within ``train``.

    Anomalies in the (presumed normal) train data cannot raise their own
    scores here, so a single nearest neighbor (``k=1``) is the default.
    """
    train = as_series(train)
    test = as_series(test)
    check_same_dims(train, test)
    if config is None:
        config = default_config("semisupervised")
    if train.n < config.m:
        raise SeriesTooShort(f"train length {train.n} shorter than window m={config.m}")
    profile = mp_ab_join(test, train, config.m, config.k, config.variant, n_jobs=n_jobs)
    return _score_tail(select_dimension(profile, config.dim_select), config, test.n)


def _region_scores(column, config, n_train, n_test, m):
    """Split concatenated-join window scores into per-region time scores."""
    train_rows = column[:n_train]
    test_rows = column[n_train:]
    train_scores = _score_tail(train_rows, config, train_rows.shape[0] + m - 1)[:n_train]
    test_scores = _score_tail(test_rows, config, n_test)
    return train_scores, test_scores


def detect_supervised(
    train,
    train_labels,
    test,
    grid: list[DetectorConfig] | None = None,
    n_jobs: int = 1,
) -> SupervisedDetection:
    """Grid-search on labeled train data, score the test region.

    Each candidate configuration runs one self-join over the
    concatenation of train and test. Train-region windows (start index
    before the junction) are scored with the same smoothing and reverse
    windowing as test scoring and ranked by AUC-ROC against
    ``train_labels``; ties keep the earlier grid entry.
    """
    train = as_series(train)
    test = as_series(test)
    check_same_dims(train, test)
    train_labels = as_labels(train_labels)
    if train_labels.shape[0] != train.n:
        raise NoAnomalyInTrainLabels(
            f"{train_labels.shape[0]} train labels for {train.n} train steps"
        )
    if not train_labels.any():
        raise NoAnomalyInTrainLabels("train labels contain no anomaly")
    if grid is None:
        grid = default_grid()
    if not grid:
        raise InfeasibleError("supervised search grid is empty")

    combined = np.concatenate([train.values, test.values])
    best = None
    for config in grid:
        if test.n < config.m or train.n < config.m:
            raise SeriesTooShort(
                f"window m={config.m} exceeds a region length "
                f"(train {train.n}, test {test.n})"
            )
        profile = mp_self_join(combined, config.m, config.k, config.variant, n_jobs=n_jobs)
        column = select_dimension(profile, config.dim_select)
        train_scores, test_scores = _region_scores(
            column, config, train.n, test.n, config.m
        )
        score = auc_roc(train_scores, train_labels)
        if best is None or score > best.train_auc:
            best = SupervisedDetection(scores=test_scores, config=config, train_auc=score)
    return best
