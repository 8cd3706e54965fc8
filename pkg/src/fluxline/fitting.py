"""Nonlinear least-squares engine and the standard characterization fits.

Levenberg-Marquardt (MINPACK via scipy) behind a small deterministic
wrapper: fixed iteration cap, gradient tolerance 1e-10, covariance from the
Jacobian at the optimum, no randomized restarts.  Every model ships an
analytic Jacobian; the test suite cross-checks them against finite
differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.optimize

from .modulation import DEFAULT_ORDER, harmonic_series
from .specfun import bessel_j0, bessel_j1
from .transmon import FluxPoint, TransmonParams, diagonalize

__all__ = [
    "DataSeries",
    "FitResult",
    "FitError",
    "Model",
    "T1_MODEL",
    "RAMSEY_MODEL",
    "RB_MODEL",
    "LINEAR_MODEL",
    "tuning_curve_model",
    "beta_model",
    "least_squares",
    "fit_t1",
    "fit_ramsey",
    "fit_rb",
    "fit_tuning_curve",
    "fit_beta",
]

MAX_ITERATIONS = 200
GRADIENT_TOL = 1e-10


class FitError(RuntimeError):
    """Structural fit failure (not mere non-convergence)."""


@dataclass(frozen=True)
class DataSeries:
    """(x, y) samples with optional per-point standard deviations."""

    x: np.ndarray
    y: np.ndarray
    sigma: np.ndarray | None = None
    x_unit: str = ""
    y_unit: str = ""

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if x.shape != y.shape or x.ndim != 1:
            raise ValueError("x and y must be 1-d arrays of equal length")
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise ValueError("data contains non-finite values")
        if self.sigma is not None:
            s = np.asarray(self.sigma, dtype=float)
            object.__setattr__(self, "sigma", s)
            if s.shape != x.shape:
                raise ValueError("sigma must match x in length")
            if not (s > 0).all():
                raise ValueError("sigma values must be > 0")


@dataclass(frozen=True)
class FitResult:
    params: dict[str, float]
    std_errors: dict[str, float]
    residual_norm: float
    converged: bool
    iterations: int
    flags: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "params": dict(self.params),
            "std_errors": dict(self.std_errors),
            "residual_norm": self.residual_norm,
            "converged": self.converged,
            "iterations": self.iterations,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class Model:
    """Parametric curve y = fn(x, theta) with analytic Jacobian d fn/d theta."""

    names: tuple[str, ...]
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    jac: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None


def least_squares(
    model: Model,
    data: DataSeries,
    initial_guess,
    flags: tuple[str, ...] = (),
) -> FitResult:
    """Weighted Levenberg-Marquardt fit of a model to a data series."""
    theta0 = np.asarray(initial_guess, dtype=float)
    n_par = len(model.names)
    if theta0.shape != (n_par,):
        raise ValueError(f"initial guess must have {n_par} entries, got {theta0.shape}")
    if data.x.size < n_par:
        raise ValueError(
            f"need at least {n_par} points for {n_par} parameters, got {data.x.size}"
        )
    sig = data.sigma if data.sigma is not None else np.ones_like(data.y)

    def residuals(theta):
        return (model.fn(data.x, theta) - data.y) / sig

    if model.jac is not None:
        jac = lambda theta: model.jac(data.x, theta) / sig[:, None]
    else:
        jac = "2-point"

    res = scipy.optimize.least_squares(
        residuals,
        theta0,
        jac=jac,
        method="lm",
        gtol=GRADIENT_TOL,
        xtol=1e-12,
        ftol=1e-12,
        max_nfev=MAX_ITERATIONS * (n_par + 1),
    )
    converged = res.status > 0

    jtj = res.jac.T @ res.jac
    try:
        cov = np.linalg.inv(jtj)
    except np.linalg.LinAlgError as exc:
        raise FitError("singular Jacobian at the optimum") from exc
    if not np.isfinite(cov).all():
        raise FitError("singular Jacobian at the optimum")
    if data.sigma is None:
        dof = max(data.x.size - n_par, 1)
        cov = cov * (2.0 * res.cost / dof)
    errs = np.sqrt(np.maximum(np.diag(cov), 0.0))

    return FitResult(
        params=dict(zip(model.names, (float(v) for v in res.x))),
        std_errors=dict(zip(model.names, (float(e) for e in errs))),
        residual_norm=float(np.linalg.norm(res.fun)),
        converged=converged,
        iterations=int(res.nfev),
        flags=flags,
    )


def _degenerate(y: np.ndarray) -> bool:
    return float(np.ptp(y)) <= 1e-12 * max(1.0, float(np.abs(y).max()))


def _degenerate_result(model: Model, theta0, data: DataSeries, flag: str) -> FitResult:
    resid = model.fn(data.x, np.asarray(theta0, dtype=float)) - data.y
    return FitResult(
        params=dict(zip(model.names, (float(v) for v in theta0))),
        std_errors={name: math.nan for name in model.names},
        residual_norm=float(np.linalg.norm(resid)),
        converged=False,
        iterations=0,
        flags=(flag,),
    )


# --- exponential relaxation: y = A exp(-t/T1) + B ---------------------------

def _t1_fn(t, th):
    a, t1, b = th
    return a * np.exp(-t / t1) + b


def _t1_jac(t, th):
    a, t1, b = th
    e = np.exp(-t / t1)
    return np.column_stack([e, a * e * t / t1**2, np.ones_like(t)])


T1_MODEL = Model(names=("A", "T1", "B"), fn=_t1_fn, jac=_t1_jac)


# --- Ramsey fringe: y = A exp(-t/T2*) cos(2 pi delta t + phase) + B ----------

def _ramsey_fn(t, th):
    a, t2, delta, phase, b = th
    return a * np.exp(-t / t2) * np.cos(2.0 * np.pi * delta * t + phase) + b


def _ramsey_jac(t, th):
    a, t2, delta, phase, b = th
    e = np.exp(-t / t2)
    arg = 2.0 * np.pi * delta * t + phase
    c, s = np.cos(arg), np.sin(arg)
    return np.column_stack(
        [
            e * c,
            a * e * c * t / t2**2,
            -a * e * s * 2.0 * np.pi * t,
            -a * e * s,
            np.ones_like(t),
        ]
    )


RAMSEY_MODEL = Model(names=("A", "T2_star", "delta_f", "phase", "B"), fn=_ramsey_fn, jac=_ramsey_jac)


# --- benchmarking decay: y = A p^n + B ---------------------------------------

def _rb_fn(n, th):
    a, p, b = th
    return a * np.power(p, n) + b


def _rb_jac(n, th):
    a, p, b = th
    pn = np.power(p, n)
    return np.column_stack([pn, a * n * np.power(p, n - 1), np.ones_like(n)])


RB_MODEL = Model(names=("A", "p", "B"), fn=_rb_fn, jac=_rb_jac)


# --- straight line (engine sanity checks) ------------------------------------

LINEAR_MODEL = Model(
    names=("slope", "intercept"),
    fn=lambda x, th: th[0] * x + th[1],
    jac=lambda x, th: np.column_stack([x, np.ones_like(x)]),
)


def fit_t1(data: DataSeries) -> FitResult:
    """Relaxation fit; time axis in microseconds."""
    if _degenerate(data.y):
        return _degenerate_result(T1_MODEL, [0.0, 1.0, float(np.mean(data.y))], data, "degenerate data: constant signal")
    order = np.argsort(data.x)
    t, y = data.x[order], data.y[order]
    b0 = float(y.min())
    w = y - b0
    keep = w > 0.05 * w.max()
    # log-linear regression on the shifted decay for (A, T1)
    slope, intercept = np.polyfit(t[keep], np.log(w[keep] + 1e-300), 1)
    t1_0 = -1.0 / slope if slope < 0 else float(t[-1] - t[0]) or 1.0
    a0 = math.exp(intercept)
    return least_squares(T1_MODEL, data, [a0, t1_0, b0])


def fit_ramsey(data: DataSeries) -> FitResult:
    """Decaying-cosine fit; time in microseconds, delta_f in MHz."""
    if _degenerate(data.y):
        return _degenerate_result(
            RAMSEY_MODEL, [0.0, 1.0, 0.0, 0.0, float(np.mean(data.y))], data, "degenerate data: constant signal"
        )
    order = np.argsort(data.x)
    t, y = data.x[order], data.y[order]
    b0 = float(np.mean(y))
    centered = y - b0
    # dominant discrete-spectrum peak on a (near) uniform grid
    dt = float(np.mean(np.diff(t)))
    spec = np.fft.rfft(centered)
    freqs = np.fft.rfftfreq(t.size, dt)
    k = 1 + int(np.argmax(np.abs(spec[1:])))
    delta0 = float(freqs[k])
    phase0 = float(np.angle(spec[k]))
    a0 = math.sqrt(2.0) * float(np.std(centered))
    t2_0 = float(t[-1] - t[0]) / 3.0 or 1.0
    return least_squares(RAMSEY_MODEL, data, [a0, t2_0, delta0, phase0, b0])


def fit_rb(data: DataSeries) -> FitResult:
    """Benchmarking decay fit plus the derived average gate fidelity.

    The decay parameter maps to a single-qubit average fidelity
    F = 1 - (1-p)/2 with its standard error propagated from p.
    """
    if not ((data.y >= 0.0).all() and (data.y <= 1.05).all()):
        raise ValueError("benchmarking data must lie in [0, 1.05]")
    if _degenerate(data.y):
        return _degenerate_result(RB_MODEL, [0.0, 0.9, float(np.mean(data.y))], data, "degenerate data: constant signal")
    order = np.argsort(data.x)
    n, y = data.x[order], data.y[order]
    b0 = float(y[-1])
    a0 = float(y[0] - b0)
    mid = len(n) // 2
    if a0 != 0.0 and (y[mid] - b0) / a0 > 0:
        ratio = (y[mid] - b0) / a0
        p0 = float(np.clip(ratio ** (1.0 / max(n[mid] - n[0], 1.0)), 0.5, 0.99999))
    else:
        p0 = 0.99
    if a0 == 0.0:
        a0 = float(np.ptp(y))
    result = least_squares(RB_MODEL, data, [a0, p0, b0])

    p = result.params["p"]
    flags = result.flags
    if not 0.0 < p <= 1.0:
        flags = flags + (f"decay parameter p={p:.6g} outside (0, 1]",)
    params = dict(result.params)
    errs = dict(result.std_errors)
    params["fidelity"] = 1.0 - (1.0 - p) / 2.0
    errs["fidelity"] = errs["p"] / 2.0
    return FitResult(
        params=params,
        std_errors=errs,
        residual_norm=result.residual_norm,
        converged=result.converged,
        iterations=result.iterations,
        flags=flags,
    )


# --- flux tuning curve -------------------------------------------------------

def _tuning_fn_factory(fixed_e_c: float | None):
    def fn(current, th):
        if fixed_e_c is None:
            ej1, ej2, ec, amps_per_phi0, off = th
        else:
            ej1, ej2, amps_per_phi0, off = th
            ec = fixed_e_c
        phi = current / amps_per_phi0 + off
        ej_sq = ej1**2 + ej2**2 + 2.0 * ej1 * ej2 * np.cos(2.0 * np.pi * phi)
        ej = np.sqrt(np.maximum(ej_sq, 1e-12))
        # clip keeps the residuals finite while the optimizer explores
        return np.sqrt(np.maximum(8.0 * ec * ej, 1e-12)) - ec

    def jac(current, th):
        if fixed_e_c is None:
            ej1, ej2, ec, amps_per_phi0, off = th
        else:
            ej1, ej2, amps_per_phi0, off = th
            ec = fixed_e_c
        phi = current / amps_per_phi0 + off
        c2 = np.cos(2.0 * np.pi * phi)
        s2 = np.sin(2.0 * np.pi * phi)
        ej = np.sqrt(np.maximum(ej1**2 + ej2**2 + 2.0 * ej1 * ej2 * c2, 1e-12))
        f_plus_ec = np.sqrt(8.0 * ec * ej)
        df_dej = f_plus_ec / (2.0 * ej)
        dej_d1 = (ej1 + ej2 * c2) / ej
        dej_d2 = (ej2 + ej1 * c2) / ej
        dej_dphi = -2.0 * np.pi * ej1 * ej2 * s2 / ej
        dphi_da = -current / amps_per_phi0**2
        cols = [df_dej * dej_d1, df_dej * dej_d2]
        if fixed_e_c is None:
            cols.append(f_plus_ec / (2.0 * ec) - 1.0)
        cols.extend([df_dej * dej_dphi * dphi_da, df_dej * dej_dphi])
        return np.column_stack(cols)

    names = ("e_j1", "e_j2") + (() if fixed_e_c is not None else ("e_c",)) + ("amps_per_phi0", "phi_offset")
    return Model(names=names, fn=fn, jac=jac)


def tuning_curve_model(fixed_e_c: float | None = None) -> Model:
    return _tuning_fn_factory(fixed_e_c)


def fit_tuning_curve(
    data: DataSeries,
    fixed_e_c: float | None = None,
    use_diagonalization: bool = False,
) -> FitResult:
    """Fit f01 vs bias current with a linear current-to-flux map.

    The closed-form transmon frequency is used for the main optimization;
    with use_diagonalization=True a refinement pass replaces it by the
    exact charge-basis f01.
    """
    if data.x.size < 6:
        raise ValueError("tuning-curve fit needs at least 6 points")
    model = tuning_curve_model(fixed_e_c)
    order = np.argsort(data.x)
    cur, f = data.x[order], data.y[order]

    # period of f(I) from the dominant discrete-spectrum component
    d_i = float(np.mean(np.diff(cur)))
    spec = np.fft.rfft(f - np.mean(f))
    freqs = np.fft.rfftfreq(cur.size, d_i)
    k = 1 + int(np.argmax(np.abs(spec[1:])))
    a0 = 1.0 / freqs[k] if freqs[k] > 0 else float(cur[-1] - cur[0])
    off0 = -cur[int(np.argmax(f))] / a0
    ec0 = fixed_e_c if fixed_e_c is not None else 200.0
    fmax0, fmin0 = float(f.max()), float(f.min())
    ej_sum0 = (fmax0 + ec0) ** 2 / (8.0 * ec0)
    ej_diff0 = (fmin0 + ec0) ** 2 / (8.0 * ec0)
    ej1_0 = max(0.5 * (ej_sum0 - ej_diff0), 1.0)
    ej2_0 = 0.5 * (ej_sum0 + ej_diff0)

    theta0 = [ej1_0, ej2_0] + ([] if fixed_e_c is not None else [ec0]) + [a0, off0]
    result = least_squares(model, data, theta0)

    # span judged with the fitted period: the discrete-spectrum guess can
    # only resolve whole oscillations and is blind to sub-period data.
    # Sub-period data may also alias to a bogus short period, which shows
    # up as an exploding junction-energy covariance instead.
    span_phi0 = (cur[-1] - cur[0]) / abs(result.params["amps_per_phi0"])
    ej_rel_err = max(
        abs(result.std_errors["e_j1"]) / max(abs(result.params["e_j1"]), 1e-12),
        abs(result.std_errors["e_j2"]) / max(abs(result.params["e_j2"]), 1e-12),
    )
    flags: tuple[str, ...] = ()
    if span_phi0 < 0.3 or not math.isfinite(ej_rel_err) or ej_rel_err > 0.5:
        flags = (
            f"insufficient flux span ({span_phi0:.3g} Phi0) or ill-conditioned "
            "fit: junction energies are not reliable",
        )

    if use_diagonalization:
        def diag_fn(current, th):
            if fixed_e_c is None:
                ej1, ej2, ec, amps_per_phi0, off = th
            else:
                ej1, ej2, amps_per_phi0, off = th
                ec = fixed_e_c
            params = TransmonParams(e_c=ec, e_j1=abs(ej1), e_j2=abs(ej2))
            return np.array(
                [
                    diagonalize(params, FluxPoint(phi=c / amps_per_phi0 + off)).f01
                    for c in current
                ]
            )

        refine = Model(names=model.names, fn=diag_fn, jac=None)
        result = least_squares(
            refine, data, [result.params[n] for n in model.names]
        )

    # normalize the junction ordering and fold the flux offset into (-0.5, 0.5]
    params = dict(result.params)
    if params["e_j1"] > params["e_j2"]:
        params["e_j1"], params["e_j2"] = params["e_j2"], params["e_j1"]
        errs = dict(result.std_errors)
        errs["e_j1"], errs["e_j2"] = errs["e_j2"], errs["e_j1"]
    else:
        errs = dict(result.std_errors)
    if params["amps_per_phi0"] < 0:
        params["amps_per_phi0"] = -params["amps_per_phi0"]
        params["phi_offset"] = -params["phi_offset"]
    params["phi_offset"] -= round(params["phi_offset"])
    return FitResult(
        params=params,
        std_errors=errs,
        residual_norm=result.residual_norm,
        converged=result.converged,
        iterations=result.iterations,
        flags=flags,
    )


# --- flux-pulse amplitude calibration ----------------------------------------

def beta_model(params: TransmonParams, phi_dc: float, p: int = DEFAULT_ORDER) -> Model:
    """Time-averaged frequency vs instrument amplitude, parameter beta."""
    series = harmonic_series(params, p)

    def fn(amp, th):
        beta = abs(th[0])
        out = np.zeros_like(amp, dtype=float)
        for n, sn in enumerate(series.s):
            cn = sn * math.cos(2.0 * math.pi * n * phi_dc)
            out += cn * np.array([bessel_j0(2.0 * math.pi * n * beta * a) for a in amp])
        return out

    def jac(amp, th):
        beta = abs(th[0])
        sign = 1.0 if th[0] >= 0 else -1.0
        col = np.zeros_like(amp, dtype=float)
        for n, sn in enumerate(series.s):
            if n == 0:
                continue
            cn = sn * math.cos(2.0 * math.pi * n * phi_dc)
            wn = 2.0 * math.pi * n
            col += cn * np.array(
                [-bessel_j1(wn * beta * a) * wn * a for a in amp]
            )
        return (sign * col)[:, None]

    return Model(names=("beta",), fn=fn, jac=jac)


def fit_beta(
    data: DataSeries,
    params: TransmonParams,
    phi_dc: float = 0.0,
    p: int = DEFAULT_ORDER,
) -> FitResult:
    """Calibrate phi_ac = beta * A_p against measured average frequencies."""
    model = beta_model(params, phi_dc, p)
    amp_max = float(np.abs(data.x).max())
    if amp_max == 0:
        raise ValueError("amplitude axis is identically zero")
    # deterministic coarse scan: the chi^2 landscape in beta is multimodal
    candidates = np.linspace(0.05, 1.5, 30) / amp_max
    sig = data.sigma if data.sigma is not None else np.ones_like(data.y)
    sse = [
        float(np.sum(((model.fn(data.x, np.array([b])) - data.y) / sig) ** 2))
        for b in candidates
    ]
    beta0 = float(candidates[int(np.argmin(sse))])
    result = least_squares(model, data, [beta0])
    beta = abs(result.params["beta"])
    flags = result.flags + (
        f"only the product beta*A_p is constrained; max |phi_ac| covered = {beta * amp_max:.4g} Phi0",
    )
    return FitResult(
        params={"beta": beta},
        std_errors=dict(result.std_errors),
        residual_norm=result.residual_norm,
        converged=result.converged,
        iterations=result.iterations,
        flags=flags,
    )
