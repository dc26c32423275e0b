"""Volume functions and first variation along bending paths.

The derivative of hyperbolic volume along a path of pleated surfaces
is half the sum of length times angle-velocity over the bending locus:
closed cuffs contribute their real translation length, spiral leaves
their horoball-truncated length.  The truncation scale drops out
because the four leaf ends at a cuff turn by opposite amounts on the
two sides.

Volumes of ideal tetrahedra are computed from the Lobachevsky function
via its Clausen-series expansion, accelerated analytically so the tail
is geometric (plain partial sums of the defining Fourier series cannot
reach the tolerances used here).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta as _riemann_zeta

from .errors import (AngleUnwrapFailure, DegenerateTetrahedron,
                     EndpointsMismatch, OrientationTrackingFailure,
                     PleatbendError)
from .moebius import IsometryClass, classify, fixed_points, reduce_angle
from .pleated import (BendingData, EndpointChoice, TruncationConvention,
                      bending_data, realize, resolve_endpoints,
                      track_endpoints)
from .representation import (RepresentationPath, evaluate_word, fingerprint,
                             standard_word_list)
from .topology import (OrientationAssignment, build_lamination,
                       enumerate_orientations)

# ---------------------------------------------------------------------------
# Lobachevsky function and ideal tetrahedra

_ZETA_CACHE: list[float] = []


def _zetas(n: int) -> list[float]:
    while len(_ZETA_CACHE) < n:
        k = len(_ZETA_CACHE) + 1
        _ZETA_CACHE.append(float(_riemann_zeta(2 * k)))
    return _ZETA_CACHE


def _clausen2(x: float) -> float:
    """Clausen function Cl2 on the reduced argument."""
    x = math.remainder(x, 2 * math.pi)
    if x == 0.0:
        return 0.0
    # Cl2(x) = x - x log|x| + sum_n zeta(2n)/(n(2n+1)) x (x/2pi)^{2n}
    acc = x - x * math.log(abs(x))
    r = (x / (2 * math.pi)) ** 2
    zetas = _zetas(80)
    power = x
    for n in range(1, 81):
        power *= r
        term = zetas[n - 1] * power / (n * (2 * n + 1))
        acc += term
        if abs(term) < 1e-17 * (abs(acc) + 1e-300):
            break
    return acc


def lobachevsky(theta: float) -> float:
    """The Lobachevsky function, odd and pi-periodic.

    >>> round(lobachevsky(0.0), 15)
    0.0
    """
    return 0.5 * _clausen2(2 * theta)


def ideal_tetra_volume(z: complex, eps: float = 1e-12) -> float:
    """Signed volume of the ideal tetrahedron (0, infinity, 1, z).

    Positive for Im z > 0, zero for real cross-ratios, negative below
    the axis; degenerate parameters 0, 1, infinity are rejected.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DegenerateTetrahedron("cross-ratio parameter is not finite")
    if abs(z) < eps or abs(z - 1) < eps or abs(z) > 1 / eps:
        raise DegenerateTetrahedron(f"cross-ratio parameter {z} is degenerate")
    return (lobachevsky(cmath.phase(z))
            + lobachevsky(cmath.phase(1 / (1 - z)))
            + lobachevsky(cmath.phase(1 - 1 / z)))


# ---------------------------------------------------------------------------
# Schlafli samples along representation paths


@dataclass(frozen=True)
class SchlafliSample:
    """Lengths and angles of one realized path sample."""

    t: float
    data: BendingData

    def term_keys(self):
        return list(self.data.cuff_angles) + list(self.data.leaf_angles)

    def angle(self, key) -> float:
        if isinstance(key, str):
            return self.data.cuff_angles[key]
        return self.data.leaf_angles[key]

    def length(self, key) -> float:
        if isinstance(key, str):
            return self.data.cuff_lengths[key]
        return self.data.leaf_lengths[key]


def _realized_samples(path: RepresentationPath, indices, zeta_start,
                      conv: TruncationConvention,
                      lam=None) -> list[SchlafliSample]:
    """Realize path samples with the endpoint selection tracked from the
    first requested index."""
    pd = path.pd
    if pd is None:
        raise PleatbendError("path carries no pants decomposition")
    if lam is None:
        lam = build_lamination(pd, OrientationAssignment.all_forward(pd))
    rep0 = path.reps[indices[0]]
    if isinstance(zeta_start, EndpointChoice):
        zeta = resolve_endpoints(rep0, pd, zeta_start)
    else:
        zeta = track_endpoints(rep0, pd, zeta_start)
    out = []
    for i in indices:
        rep = path.reps[i]
        if i != indices[0]:
            zeta = track_endpoints(rep, pd, zeta)
        real = realize(rep, pd, lam, zeta)
        out.append(SchlafliSample(t=path.ts[i], data=bending_data(real, conv)))
    return out


def schlafli_derivative(path: RepresentationPath, t: float,
                        zeta: EndpointChoice | dict,
                        conv: TruncationConvention) -> float:
    """dV/dt at an interior sample of a path, by central differences.

    The endpoint selection is resolved at the sample itself and tracked
    to its neighbors; angle differences are reduced mod 2 pi before
    differencing, so the value is insensitive to the branch each angle
    happens to be reported in.  Cuffs whose length is purely imaginary
    (elliptic crossings) contribute nothing through their own term.
    """
    k = path.index_of(t)
    if k == 0 or k == len(path) - 1:
        raise PleatbendError(
            f"t={t} is an endpoint; the derivative needs an interior sample")
    pd = path.pd
    if pd is None:
        raise PleatbendError("path carries no pants decomposition")
    rep_k = path.reps[k]
    if isinstance(zeta, EndpointChoice):
        zeta_k = resolve_endpoints(rep_k, pd, zeta)
    else:
        zeta_k = track_endpoints(rep_k, pd, zeta)
    lam = build_lamination(pd, OrientationAssignment.all_forward(pd))
    zeta_prev = track_endpoints(path.reps[k - 1], pd, zeta_k)
    zeta_next = track_endpoints(path.reps[k + 1], pd, zeta_k)
    datas = [bending_data(realize(path.reps[i], pd, lam, z), conv)
             for i, z in ((k - 1, zeta_prev), (k, zeta_k), (k + 1, zeta_next))]
    dt = path.ts[k + 1] - path.ts[k - 1]
    total = 0.0
    sample = SchlafliSample(t=path.ts[k], data=datas[1])
    for key in sample.term_keys():
        fwd = reduce_angle(_angle(datas[2], key) - _angle(datas[1], key))
        back = reduce_angle(_angle(datas[1], key) - _angle(datas[0], key))
        for d in (fwd, back):
            if abs(d) >= math.pi * (1 - 1e-9):
                raise AngleUnwrapFailure(
                    f"angle of {key!r} moved {d:.3f} in one step")
        total += sample.length(key) * (fwd + back) / dt
    return 0.5 * total


def _angle(data: BendingData, key) -> float:
    if isinstance(key, str):
        return data.cuff_angles[key]
    return data.leaf_angles[key]


# ---------------------------------------------------------------------------
# integrated volume change


@dataclass(frozen=True)
class VolumePathResult:
    """Integrated first variation of volume along a sampled path.

    delta_v is composite Simpson over the sampled length-weighted angle
    velocity; error_estimate compares against the half-resolution
    subsample and is NaN when the sample count does not allow one.
    """

    delta_v: float
    error_estimate: float
    ts: tuple[float, ...]
    cumulative: tuple[float, ...]
    per_step: tuple[float, ...]

    @property
    def steps(self) -> int:
        return len(self.ts) - 1


def _unwrap_angles(values) -> np.ndarray:
    """Lift a sampled angle sequence to a continuous real sequence.

    Consecutive samples must stay within pi of each other; anything
    larger is an ambiguous branch jump, not data.
    """
    out = [float(values[0])]
    for v in values[1:]:
        d = reduce_angle(v - out[-1])
        if abs(d) >= math.pi * (1 - 1e-9):
            raise AngleUnwrapFailure(
                f"bending angle moved {d:.3f} in one step; refine the path")
        out.append(out[-1] + d)
    return np.array(out)


def _node_derivatives(ts: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Derivative at every node from the local 3-point quadratic."""
    n = len(ts)
    out = np.empty(n)
    for k in range(n):
        j = min(max(k - 1, 0), n - 3)
        t0, t1, t2 = ts[j:j + 3]
        y0, y1, y2 = ys[j:j + 3]
        t = ts[k]
        out[k] = (y0 * (2 * t - t1 - t2) / ((t0 - t1) * (t0 - t2))
                  + y1 * (2 * t - t0 - t2) / ((t1 - t0) * (t1 - t2))
                  + y2 * (2 * t - t0 - t1) / ((t2 - t0) * (t2 - t1)))
    return out


def _quadratic_panel(ts3, fs3, a: float, b: float) -> float:
    """Integral over [a, b] of the quadratic through three samples."""
    tm = ts3[1]
    coeffs = np.polyfit(np.asarray(ts3) - tm, np.asarray(fs3), 2)
    anti = np.polyint(coeffs)
    return float(np.polyval(anti, b - tm) - np.polyval(anti, a - tm))


def _per_step_integrals(ts: np.ndarray, fs: np.ndarray) -> list[float]:
    """Composite Simpson split into per-interval contributions.

    Each pair of intervals carries one interpolating quadratic; its
    restriction to the two half-panels sums back to the Simpson rule
    exactly.  A trailing odd interval reuses the last quadratic.
    """
    n = len(ts)
    per_step: list[float] = []
    k = 0
    while k + 2 < n:
        sl = slice(k, k + 3)
        per_step.append(_quadratic_panel(ts[sl], fs[sl], ts[k], ts[k + 1]))
        per_step.append(_quadratic_panel(ts[sl], fs[sl], ts[k + 1], ts[k + 2]))
        k += 2
    if k + 1 < n:
        sl = slice(n - 3, n)
        per_step.append(_quadratic_panel(ts[sl], fs[sl], ts[-2], ts[-1]))
    return per_step


def _derivative_sequence(samples: list[SchlafliSample]) -> np.ndarray:
    """½ Σ length · angle-velocity at every sample of a realized path."""
    ts = np.array([s.t for s in samples])
    total = np.zeros(len(samples))
    for key in samples[0].term_keys():
        theta = _unwrap_angles([s.angle(key) for s in samples])
        lengths = np.array([s.length(key) for s in samples])
        total += lengths * _node_derivatives(ts, theta)
    return 0.5 * total


def integrate_volume_change(path: RepresentationPath,
                            zeta: EndpointChoice | dict,
                            conv: TruncationConvention,
                            steps: int | None = None, *,
                            lamination=None) -> VolumePathResult:
    """Integrate dV along a path of adapted representations.

    The endpoint selection is resolved at the first sample and tracked
    forward.  The integrand is the per-sample length-weighted angle
    velocity; composite Simpson over the samples, with the error
    estimated by Richardson comparison against the half-resolution
    subsample (NaN when the interval count is odd).  steps optionally
    subsamples the stored path (its interval count must divide the
    stored one).
    """
    n = len(path) - 1
    if steps is None:
        indices = list(range(len(path)))
    else:
        if steps <= 0 or n % steps != 0:
            raise PleatbendError(
                f"cannot take {steps} steps over {n} stored intervals")
        stride = n // steps
        indices = list(range(0, len(path), stride))
    if len(indices) < 3:
        raise PleatbendError("need at least three samples to integrate")
    samples = _realized_samples(path, indices, zeta, conv, lam=lamination)
    ts = np.array([s.t for s in samples])
    fs = _derivative_sequence(samples)
    per_step = _per_step_integrals(ts, fs)
    delta = float(sum(per_step))
    if len(samples) % 2 == 1 and len(samples) >= 5:
        try:
            coarse = samples[::2]
            half = float(sum(_per_step_integrals(
                ts[::2], _derivative_sequence(coarse))))
            err = abs(delta - half) / 3
        except AngleUnwrapFailure:
            err = float("nan")
    else:
        err = float("nan")
    cum = [0.0]
    for c in per_step:
        cum.append(cum[-1] + c)
    return VolumePathResult(delta_v=delta, error_estimate=err,
                            ts=tuple(float(t) for t in ts),
                            cumulative=tuple(cum), per_step=tuple(per_step))


# ---------------------------------------------------------------------------
# orientation-summed volume and loop defects


def orientation_start_endpoints(path: RepresentationPath, ori) -> dict:
    pd = path.pd
    rep0 = path.reps[0]
    zeta = {}
    for bit, cuff in zip(ori.forward, pd.cuffs):
        m = evaluate_word(rep0, cuff.word)
        kind = classify(m)
        if kind != IsometryClass.LOXODROMIC:
            raise OrientationTrackingFailure(
                f"cuff {cuff.id!r} is {kind} at the path start; "
                "orientation endpoints need a loxodromic cuff")
        att, rep_pt = fixed_points(m)
        zeta[cuff.id] = (att, rep_pt) if bit else (rep_pt, att)
    return zeta


def vol_gamma_change(path: RepresentationPath,
                     conv: TruncationConvention) -> float:
    """Change of the orientation-summed volume functional along a path.

    Sums the integrated first variation over all 2^(3g-3) cuff
    orientations, each with its own endpoint selection: forward picks
    the attracting fixed point at the start, backward the repelling
    one, tracked along the path.  Closed loops give 0.
    """
    total, _ = _vol_gamma(path, conv)
    return total


def _vol_gamma(path: RepresentationPath,
               conv: TruncationConvention) -> tuple[float, float]:
    pd = path.pd
    if pd is None:
        raise PleatbendError("path carries no pants decomposition")
    total = 0.0
    err = 0.0
    for ori in enumerate_orientations(pd):
        zeta0 = orientation_start_endpoints(path, ori)
        lam = build_lamination(pd, ori)
        result = integrate_volume_change(path, zeta0, conv, lamination=lam)
        total += result.delta_v
        if not math.isnan(result.error_estimate):
            err += result.error_estimate
    return total, err


@dataclass(frozen=True)
class LoopDefectReport:
    defect: float
    error_estimate: float
    fingerprint_distance: float


def loop_defect(loop: RepresentationPath, conv: TruncationConvention,
                tol: float = 1e-8) -> LoopDefectReport:
    """Orientation-summed volume change around a closed loop.

    Requires the two endpoint representations to have equal character
    fingerprints (they may differ by conjugation); the defect is
    expected to vanish up to quadrature error.
    """
    gens = loop.reps[0].generators
    words = standard_word_list(gens)
    f0 = fingerprint(loop.reps[0], words)
    f1 = fingerprint(loop.reps[-1], words)
    d = f0.distance(f1)
    if d > tol:
        raise EndpointsMismatch(
            f"loop endpoints differ by {d:.3e} in character fingerprint")
    defect, err = _vol_gamma(loop, conv)
    return LoopDefectReport(defect=defect, error_estimate=err,
                            fingerprint_distance=d)
