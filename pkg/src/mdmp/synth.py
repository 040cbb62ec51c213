"""Seed-deterministic synthetic fixtures with labeled anomalies.

Every generator draws from ``numpy.random.default_rng`` (PCG64), so a
given spec and seed reproduce the same values on any platform. The base
signal is a noisy sinusoid whose period equals ``m_hint``, which keeps
the default window length aligned with the structure. Labels mark the
injected windows.

Kinds
-----
kofn
    Phase-shifted sinusoid channels; one channel gets a window replaced
    by a frequency-warped cycle that occurs nowhere else. The anomaly
    lives in 1 of d dimensions, so all-dimension aggregation dilutes it.
span
    Four distinctly warped anomalies affecting 1, 2, 3 and 4 dimensions
    at disjoint windows, for rank-column sensitivity checks.
correlation
    All channels share one two-harmonic wave; one channel's window is
    replaced by that same channel's signal from half a period away.
    The shifted content and both splices recur verbatim within the
    dimension, so the channel stays individually normal while the
    cross-dimension alignment breaks inside the window.
twin
    One warped segment inserted verbatim at two context-aligned
    windows; each copy is the other's nearest neighbor, so k=1 discords
    miss both.
walk
    A plain random walk with one oscillatory burst added, mostly useful
    for pipeline plumbing and timing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import SpecInvalid
from .io import DatasetFile
from .series import MultivariateSeries

KINDS = ("kofn", "span", "correlation", "twin", "walk")

_KIND_DEFAULTS = {
    "kofn": (4096, 8),
    "span": (3072, 4),
    "correlation": (3072, 3),
    "twin": (3072, 2),
    "walk": (2048, 2),
}

_BASE_NOISE = 0.1


@dataclass(frozen=True)
class Anomaly:
    """An injected window: affected dimensions, start, and length."""

    dims: tuple[int, ...]
    start: int
    length: int

    @property
    def end(self) -> int:
        return self.start + self.length


@dataclass(frozen=True)
class SynthSpec:
    """Description of a fixture to generate.

    ``n`` and ``d`` fall back to per-kind defaults when omitted;
    ``anomalies`` overrides the kind's automatic placement.
    """

    kind: str
    n: int | None = None
    d: int | None = None
    m_hint: int = 64
    seed: int = 0
    anomalies: tuple[Anomaly, ...] | None = None


def _resolve(spec: SynthSpec) -> tuple[int, int, int]:
    if spec.kind not in KINDS:
        raise SpecInvalid(f"unknown fixture kind {spec.kind!r}, expected one of {KINDS}")
    default_n, default_d = _KIND_DEFAULTS[spec.kind]
    n = default_n if spec.n is None else int(spec.n)
    d = default_d if spec.d is None else int(spec.d)
    p = int(spec.m_hint)
    if p < 4:
        raise SpecInvalid(f"m_hint {p} too small: need at least 4")
    if n < 16 * p:
        raise SpecInvalid(f"n={n} too short for m_hint={p}: need n >= {16 * p}")
    if d < 1:
        raise SpecInvalid(f"d={d} invalid")
    return n, d, p


def _check_anomalies(anomalies, n, d):
    taken: list[tuple[int, int]] = []
    for a in anomalies:
        if not 0 <= a.start < a.end <= n:
            raise SpecInvalid(f"anomaly window [{a.start}, {a.end}) outside [0, {n})")
        if not a.dims or any(not 0 <= dim < d for dim in a.dims):
            raise SpecInvalid(f"anomaly dims {a.dims} outside [0, {d})")
        for s, e in taken:
            if a.start < e and s < a.end:
                raise SpecInvalid("anomaly windows overlap")
        taken.append((a.start, a.end))


def _sine_channels(n, d, period, rng, noise=_BASE_NOISE, shared_phase=False):
    t = np.arange(n)
    x = np.empty((n, d))
    for c in range(d):
        phase = 0.0 if shared_phase else 2.0 * np.pi * c / (d + 1)
        x[:, c] = np.sin(2.0 * np.pi * t / period + phase)
    return x + noise * rng.standard_normal((n, d))


def _warped_cycle(length, period, freq, phase, rng, noise=_BASE_NOISE):
    t = np.arange(length)
    return np.sin(2.0 * np.pi * freq * t / period + phase) + noise * rng.standard_normal(
        length
    )


def _labels_for(anomalies, n):
    labels = np.zeros(n, dtype=bool)
    for a in anomalies:
        labels[a.start : a.end] = True
    return labels


def _gen_kofn(n, d, p, rng, anomalies):
    x = _sine_channels(n, d, p, rng)
    if anomalies is None:
        length = 2 * p
        dim = int(rng.integers(d))
        start = int(rng.integers(4 * p, n - 4 * p - length))
        anomalies = (Anomaly((dim,), start, length),)
    for a in anomalies:
        phase = rng.uniform(0.0, 2.0 * np.pi)
        for dim in a.dims:
            x[a.start : a.end, dim] = _warped_cycle(a.length, p, 2.7, phase, rng)
    return x, anomalies


def _gen_span(n, d, p, rng, anomalies):
    if d < 4:
        raise SpecInvalid(f"span fixture needs d >= 4, got d={d}")
    x = _sine_channels(n, d, p, rng)
    if anomalies is None:
        length = 2 * p
        starts = np.linspace(4 * p, n - 4 * p - length, 4).astype(int)
        anomalies = tuple(
            Anomaly(tuple(range(span)), int(start), length)
            for span, start in zip((1, 2, 3, 4), starts)
        )
    for idx, a in enumerate(anomalies):
        freq = 2.6 + 0.7 * idx  # distinct shape per anomaly
        phase = rng.uniform(0.0, 2.0 * np.pi)
        for dim in a.dims:
            x[a.start : a.end, dim] = _warped_cycle(a.length, p, freq, phase, rng)
    return x, anomalies


def _gen_correlation(n, d, p, rng, anomalies):
    if d < 2:
        raise SpecInvalid(f"correlation fixture needs d >= 2, got d={d}")
    if p % 2:
        raise SpecInvalid(f"correlation fixture needs an even period, got p={p}")
    half = p // 2
    if anomalies is None:
        length = p + half
        dim = int(rng.integers(d))
        start = int(rng.integers(2 * p, n - length - 2 * p))
        anomalies = (Anomaly((dim,), start, length),)
    for a in anomalies:
        # An odd multiple of half a period makes the exit splice a verbatim
        # repeat of the entry splice, so the modified dimension keeps an
        # exact twin of every splice-straddling window.
        if a.length % p != half:
            raise SpecInvalid(
                f"correlation window length must be an odd multiple of {half},"
                f" got {a.length}"
            )
    shift = np.zeros((n, d))
    for a in anomalies:
        for dim in a.dims:
            shift[a.start : a.end, dim] = half
    # Two harmonics make the half-period shift orthogonal to the base rather
    # than a negation: the shifted window still recurs within its dimension,
    # but no single alignment matches all dimensions at once.
    theta = (np.arange(n)[:, None] + shift) * (2.0 * np.pi / p)
    x = np.sin(theta) + np.sin(2.0 * theta)
    return x + _BASE_NOISE * rng.standard_normal((n, d)), anomalies


def _gen_twin(n, d, p, rng, anomalies):
    x = _sine_channels(n, d, p, rng, shared_phase=True)
    if anomalies is None:
        length = 2 * p
        dim = int(rng.integers(d))
        first = 2 * p + int(rng.integers((n // 3 - 2 * p) // p)) * p
        second = first + max(length + 2 * p, ((n // 2) // p) * p)
        anomalies = (Anomaly((dim,), first, length), Anomaly((dim,), second, length))
    if len(anomalies) != 2 or anomalies[0].dims != anomalies[1].dims:
        raise SpecInvalid("twin fixture needs exactly two windows on the same dims")
    a, b = anomalies
    if a.length != b.length:
        raise SpecInvalid("twin windows must share a length")
    if b.end + 2 * p > n:
        raise SpecInvalid(f"second twin window [{b.start}, {b.end}) too close to the end")
    # Chirp sweeping through frequencies: shifted copies of it do not match,
    # so only the verbatim twin is a near neighbor.
    t = np.arange(a.length)
    sweep = 2.2 * t + 2.4 * t * t / (2.0 * a.length)
    segment = np.sin(2.0 * np.pi * sweep / p) + _BASE_NOISE * rng.standard_normal(a.length)
    for dim in a.dims:
        x[a.start : a.end, dim] = segment
        x[b.start : b.end, dim] = segment
    return x, anomalies


def _gen_walk(n, d, p, rng, anomalies):
    x = np.cumsum(rng.standard_normal((n, d)), axis=0)
    if anomalies is None:
        length = 2 * p
        dim = int(rng.integers(d))
        start = int(rng.integers(4 * p, n - 4 * p - length))
        anomalies = (Anomaly((dim,), start, length),)
    for a in anomalies:
        t = np.arange(a.length)
        burst = np.sin(2.0 * np.pi * 4.0 * t / p) * 2.0 * np.sqrt(p)
        for dim in a.dims:
            x[a.start : a.end, dim] += burst
    return x, anomalies


_GENERATORS = {
    "kofn": _gen_kofn,
    "span": _gen_span,
    "correlation": _gen_correlation,
    "twin": _gen_twin,
    "walk": _gen_walk,
}


def generate_fixture(spec: SynthSpec) -> DatasetFile:
    """Generate the fixture described by ``spec``.

    Returns a :class:`DatasetFile` whose labels mark the injected
    windows. Deterministic: the same spec and seed give identical values
    (and identical bytes once written).
    """
    n, d, p = _resolve(spec)
    if spec.anomalies is not None:
        _check_anomalies(spec.anomalies, n, d)
    rng = np.random.default_rng(spec.seed)
    values, anomalies = _GENERATORS[spec.kind](n, d, p, rng, spec.anomalies)
    _check_anomalies(anomalies, n, d)
    series = MultivariateSeries(
        np.ascontiguousarray(values), tuple(f"value-{c}" for c in range(d))
    )
    return DatasetFile(
        path=f"synth:{spec.kind}:{spec.seed}",
        series=series,
        labels=_labels_for(anomalies, n),
    )
