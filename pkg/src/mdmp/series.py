"""Multivariate series container and input validation helpers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DataError, DimMismatch, NonFiniteValue


@dataclass(frozen=True)
class MultivariateSeries:
    """A real-valued time series with one column per dimension.

    Parameters
    ----------
    values : ndarray of shape (n, d)
        Finite float observations, rows ordered by time.
    dim_names : tuple of str, optional
        Column names carried through from file loading, length ``d``.
    """

    values: np.ndarray
    dim_names: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


def as_series(data, dim_names=None) -> MultivariateSeries:
    """Coerce array-like input to a validated :class:`MultivariateSeries`.

    One-dimensional input is promoted to a single column. Values are
    converted to a C-contiguous float64 array and checked for finiteness.
    """
    if isinstance(data, MultivariateSeries):
        if dim_names is None:
            return data
        data, dim_names = data.values, tuple(dim_names)
    values = np.ascontiguousarray(data, dtype=np.float64)
    if values.ndim == 1:
        values = values.reshape(-1, 1)
    if values.ndim != 2:
        raise DataError(f"series must be 1-D or 2-D, got shape {values.shape}")
    if values.shape[0] < 1 or values.shape[1] < 1:
        raise DataError(f"series must be non-empty, got shape {values.shape}")
    if not np.isfinite(values).all():
        t, c = np.argwhere(~np.isfinite(values))[0]
        raise NonFiniteValue(f"non-finite value at row {t}, dimension {c}")
    if dim_names is not None:
        dim_names = tuple(str(name) for name in dim_names)
        if len(dim_names) != values.shape[1]:
            raise DimMismatch(
                f"{len(dim_names)} dimension names for {values.shape[1]} columns"
            )
    return MultivariateSeries(values, dim_names)


def check_same_dims(a: MultivariateSeries, b: MultivariateSeries) -> None:
    """Raise :class:`DimMismatch` unless both series share a dimension count."""
    if a.d != b.d:
        raise DimMismatch(f"series have {a.d} and {b.d} dimensions")
