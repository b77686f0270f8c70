"""Mutual information and secrecy capacity for uniform finite-constellation input.

The channel pair is y = sqrt(snr) * x + n1 and z = sqrt(snr) * x + n2 with
n1 ~ CN(0, 1) and n2 ~ CN(0, sigma_sq), sigma_sq >= 1, after normalizing the
main-channel noise to unit variance. All rates are in bits per channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import Constellation
from .integrate import (
    HermiteRule,
    MCConfig,
    expect_complex_gaussian,
    gauss_hermite,
    mc_expect_complex_gaussian,
)

LN2 = math.log(2.0)

# Mutual information below 0 or above log2(M) by more than this is treated as
# a numerical failure rather than roundoff to clamp away.
CLAMP_LIMIT = 1e-9


@dataclass(frozen=True)
class WiretapChannel:
    """Normalized channel pair: main-channel SNR and eavesdropper noise ratio."""

    snr: float
    sigma_sq: float

    def __post_init__(self):
        if self.snr < 0.0:
            raise ValueError(f"snr must be nonnegative, got {self.snr}")
        if self.sigma_sq < 1.0:
            raise ValueError(
                "eavesdropper noise ratio must be at least 1 "
                f"(main channel no noisier than the tap), got {self.sigma_sq}"
            )


@dataclass(frozen=True)
class MIEstimate:
    """Mutual information in bits per channel use, with method metadata."""

    bits: float
    method: str
    error_bound: float


def db_to_linear(db: float) -> float:
    """Convert a decibel power ratio to linear scale."""
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a positive linear power ratio to decibels."""
    if x <= 0.0:
        raise ValueError(f"ratio must be positive to express in dB, got {x}")
    return 10.0 * math.log10(x)


def normalize_channel(p0: float, sigma1_sq: float, sigma2_sq: float) -> WiretapChannel:
    """Reduce (transmit power, main noise, tap noise) to the normalized pair.

    Returns WiretapChannel(snr=p0/sigma1_sq, sigma_sq=sigma2_sq/sigma1_sq).
    """
    if sigma1_sq <= 0.0:
        raise ValueError(f"main-channel noise variance must be positive, got {sigma1_sq}")
    if p0 < 0.0:
        raise ValueError(f"transmit power must be nonnegative, got {p0}")
    if sigma2_sq < sigma1_sq:
        raise ValueError(
            "eavesdropper must be at least as noisy as the main channel, got "
            f"sigma2_sq={sigma2_sq} < sigma1_sq={sigma1_sq}"
        )
    return WiretapChannel(p0 / sigma1_sq, sigma2_sq / sigma1_sq)


def conditional_density(y, x: complex, snr: float, variance: float):
    """Channel transition density of y = sqrt(snr) * x + n, n ~ CN(0, variance)."""
    if variance <= 0.0:
        raise ValueError(f"noise variance must be positive, got {variance}")
    if snr < 0.0:
        raise ValueError(f"snr must be nonnegative, got {snr}")
    return np.exp(-np.abs(y - math.sqrt(snr) * x) ** 2 / variance) / (math.pi * variance)


def logsumexp(values) -> float:
    """log(sum(exp(values))) computed without overflow.

    Entries may be -inf (empty mixture components); the input must be
    nonempty and free of +inf and NaN.
    """
    a = np.asarray(values, dtype=float)
    if a.size == 0:
        raise ValueError("logsumexp of an empty sequence")
    peak = float(np.max(a))
    if peak == -math.inf:
        return peak
    return peak + math.log(float(np.sum(np.exp(a - peak))))


def _logsumexp_last(a: np.ndarray) -> np.ndarray:
    """Stable log-sum-exp over the last axis for finite inputs."""
    peak = np.max(a, axis=-1, keepdims=True)
    return np.squeeze(peak, -1) + np.log(np.sum(np.exp(a - peak), axis=-1))


def cc_output_entropy(
    c: Constellation, snr: float, variance: float, rule: HermiteRule
) -> float:
    """Differential entropy (bits) of the channel output under uniform input.

    For y = sqrt(snr) * x + n with x uniform on the constellation and
    n ~ CN(0, variance):

        h(y) = log2(M * pi * variance)
               - (1/M) * sum_i E_n[ log2 sum_j exp(-|n + sqrt(snr)(x_i - x_j)|^2
                                                   / variance) ]

    with the inner sum evaluated through a stable log-sum-exp and the outer
    expectation through the Gauss-Hermite rule.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be nonnegative, got {snr}")
    if variance <= 0.0:
        raise ValueError(f"noise variance must be positive, got {variance}")
    points = c.points
    root = math.sqrt(snr)
    total = 0.0
    for i in range(c.size):
        diffs = root * (points[i] - points)

        def integrand(n, diffs=diffs):
            gaps = np.abs(np.asarray(n)[..., None] + diffs) ** 2
            return _logsumexp_last(-gaps / variance) / LN2

        total += expect_complex_gaussian(integrand, variance, rule)
    return math.log2(c.size) + math.log2(math.pi * variance) - total / c.size


def _clamp_bits(raw: float, upper: float, *, strict: bool) -> tuple[float, float]:
    """Clamp a rate into [0, upper]; reject clamps beyond roundoff if strict."""
    if strict and (raw < -CLAMP_LIMIT or raw > upper + CLAMP_LIMIT):
        raise ValueError(
            f"mutual information {raw!r} outside [0, {upper}] beyond roundoff; "
            "increase the quadrature order"
        )
    bits = min(max(raw, 0.0), upper)
    return bits, abs(bits - raw)


def cc_mutual_information(
    c: Constellation,
    snr: float,
    variance: float,
    rule: HermiteRule,
    audit: bool = False,
) -> MIEstimate:
    """Mutual information (bits) between the constellation input and the output.

    Computed as cc_output_entropy minus the conditional entropy
    log2(pi * e * variance) and clamped to [0, log2 M]. With audit=True the
    value is recomputed at half the quadrature order and the difference is
    reported as the error bound; otherwise the bound only records any clamp.
    """
    raw = cc_output_entropy(c, snr, variance, rule) - math.log2(
        math.pi * math.e * variance
    )
    bits, clamp = _clamp_bits(raw, math.log2(c.size), strict=True)
    gap = 0.0
    if audit:
        half = gauss_hermite(max(1, rule.order // 2))
        raw_half = cc_output_entropy(c, snr, variance, half) - math.log2(
            math.pi * math.e * variance
        )
        gap = abs(raw - raw_half)
    return MIEstimate(bits, f"gauss_hermite(order={rule.order})", max(gap, clamp))


def cc_mutual_information_mc(
    c: Constellation, snr: float, variance: float, cfg: MCConfig
) -> MIEstimate:
    """Monte-Carlo counterpart of cc_mutual_information (same estimand).

    Averages the per-symbol log-sum-exp terms over one shared seeded noise
    stream; the reported error bound is the standard error of the estimate.
    Sampling noise near the rate limits is clamped without complaint.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be nonnegative, got {snr}")
    points = c.points
    root = math.sqrt(snr)
    m = c.size

    def pooled(n):
        n = np.asarray(n)
        acc = 0.0
        for i in range(m):
            gaps = np.abs(n[..., None] + root * (points[i] - points)) ** 2
            acc = acc + _logsumexp_last(-gaps / variance) / LN2
        return acc / m

    mean, stderr = mc_expect_complex_gaussian(pooled, variance, cfg)
    raw = math.log2(m / math.e) - mean
    bits, clamp = _clamp_bits(raw, math.log2(m), strict=False)
    method = f"monte_carlo(samples={cfg.samples}, seed={cfg.seed})"
    return MIEstimate(bits, method, max(stderr, clamp))


def cc_secrecy_capacity(
    c: Constellation, ch: WiretapChannel, rule: HermiteRule, audit: bool = False
) -> MIEstimate:
    """Secrecy capacity (bits) of the constellation over the wiretap pair.

    The difference between the main-channel and eavesdropper mutual
    informations at the channel's SNR, clamped at zero from below.
    """
    main = cc_mutual_information(c, ch.snr, 1.0, rule)
    eve = cc_mutual_information(c, ch.snr, ch.sigma_sq, rule)
    raw = main.bits - eve.bits
    bits = max(raw, 0.0)
    clamp = bits - raw
    gap = 0.0
    if audit:
        half = gauss_hermite(max(1, rule.order // 2))
        raw_half = (
            cc_mutual_information(c, ch.snr, 1.0, half).bits
            - cc_mutual_information(c, ch.snr, ch.sigma_sq, half).bits
        )
        gap = abs(raw - raw_half)
    return MIEstimate(bits, f"gauss_hermite(order={rule.order})", max(gap, clamp))


def gaussian_channel_capacity(snr: float) -> float:
    """Shannon capacity log2(1 + snr) of the complex-AWGN channel."""
    if snr < 0.0:
        raise ValueError(f"snr must be nonnegative, got {snr}")
    return math.log2(1.0 + snr)


def gaussian_secrecy_capacity(ch: WiretapChannel) -> float:
    """Secrecy capacity with a Gaussian codebook at the channel's SNR.

    log2(1 + snr) - log2(1 + snr / sigma_sq); grows to log2(sigma_sq) as the
    SNR increases, and is an upper envelope for any unit-energy constellation.
    """
    return math.log2((1.0 + ch.snr) / (1.0 + ch.snr / ch.sigma_sq))
