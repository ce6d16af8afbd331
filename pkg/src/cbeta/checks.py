"""Verification suites: Monte Carlo estimates compared with closed forms.

Every suite returns a list of :class:`RunReport` records. A suite is a pure
function of its seed and parameters; sub-experiments draw their seeds from
``derive_seed(seed, label)`` so suites never share random streams unless
they explicitly share a sample pass.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy import stats as sps

from . import counting, linstat, montecarlo as mc, oracle, pruefer, sine_beta
from .rng import derive_seed, replica_seeds, stream_uniforms
from .theta_dist import theta_nu_from_uniforms, theta_nu_moments

PI = math.pi


@dataclass
class RunReport:
    command: str
    check: str
    params: dict
    estimate: float
    std_error: float
    predicted: float
    abs_gap: float
    tolerance: float
    wall_time_ms: int = 0
    criterion: Optional[int] = None

    @property
    def passed(self) -> bool:
        return bool(self.abs_gap <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "check": self.check,
            "criterion": self.criterion,
            "params": self.params,
            "estimate": _clean(self.estimate),
            "std_error": _clean(self.std_error),
            "predicted": _clean(self.predicted),
            "abs_gap": _clean(self.abs_gap),
            "tolerance": _clean(self.tolerance),
            "pass": self.passed,
            "wall_time_ms": self.wall_time_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _clean(v):
    v = float(v)
    return v if math.isfinite(v) else None


class _Recorder:
    """Collects reports and stamps them with elapsed time."""

    def __init__(self, command: str, criterion: Optional[int] = None):
        self.command = command
        self.criterion = criterion
        self.reports: List[RunReport] = []
        self._t0 = time.perf_counter()

    def add(self, check, params, estimate, se, predicted, tolerance, gap=None, criterion="default"):
        gap = abs(estimate - predicted) if gap is None else gap
        r = RunReport(
            command=self.command,
            check=check,
            params={k: _param(v) for k, v in params.items()},
            estimate=float(estimate),
            std_error=float(se),
            predicted=float(predicted),
            abs_gap=float(gap),
            tolerance=float(tolerance),
            wall_time_ms=int(round(1000 * (time.perf_counter() - self._t0))),
            criterion=self.criterion if criterion == "default" else criterion,
        )
        self.reports.append(r)
        return r


def _param(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (list, tuple)):
        return [_param(x) for x in v]
    return v


def _mean_se(x):
    return float(np.mean(x)), float(mc.batch_means_se(x))


def _var_se(x):
    return float(np.var(x, ddof=1)), float(mc.batch_means_se(x, statistic=lambda a, axis: np.var(a, axis=axis, ddof=1)))


def _excess(estimate, bound):
    """One-sided gap for upper-bound checks."""
    return max(estimate - bound, 0.0)


# shared sample passes ----------------------------------------------------------


MAIN_BETA = 2.0
MAIN_NS = (16, 64, 256, 1024, 4096)
GRID_NS = (64, 256, 1024, 4096)
SYMMETRY = (1024, PI / 3)


def main_thetas() -> List[float]:
    """Angles recorded by the shared counting pass."""
    thetas = [PI, PI / 8] + [8 * PI / n for n in GRID_NS] + [SYMMETRY[1], 2 * PI - SYMMETRY[1]]
    return thetas


class SampleCache:
    """Holds shared sample passes for one verification session."""

    def __init__(self):
        self._store: Dict[tuple, object] = {}

    def get(self, key, make: Callable):
        if key not in self._store:
            self._store[key] = make()
        return self._store[key]


def counting_pass(seed: int, replicas: int, threads: int, cache: Optional[SampleCache] = None):
    """Phases at every main angle and size for ``beta = 2``; shape ``(sizes, angles, R)``."""

    def make():
        return mc.sample_phases(
            MAIN_BETA, main_thetas(), MAIN_NS, replicas, derive_seed(seed, "counting"), threads
        )

    if cache is None:
        return make()
    return cache.get(("counting", seed, replicas), make)


def _phase_at(data, n, theta):
    psi, eta = data
    return psi[MAIN_NS.index(n), main_thetas().index(theta)], eta


# suites ---------------------------------------------------------------------------


def suite_theta(seed: int = 0, reps: int = 1_000_000, nus: Sequence[float] = (2, 3, 5, 11, 101), threads: int = 1, **_) -> List[RunReport]:
    rec = _Recorder("verify theta", criterion=1)
    for nu in nus:
        s = replica_seeds(derive_seed(seed, f"theta:{nu}"), reps)
        x = theta_nu_from_uniforms(float(nu), stream_uniforms(s, 1), stream_uniforms(s, 2))
        r2 = x.real**2 + x.imag**2
        mom = theta_nu_moments(nu)
        p = dict(nu=nu, reps=reps, seed=seed)
        for name, sample, pred in (
            ("m2", r2, mom.m2),
            ("m4", r2 * r2, mom.m4),
            ("log_moment", -np.log1p(-r2), 2.0 / (nu - 1.0)),
        ):
            est, se = _mean_se(sample)
            rec.add(name, p, est, se, pred, 4 * se)
        for name, part in (("mean_re", x.real), ("mean_im", x.imag)):
            est, se = _mean_se(part)
            rec.add(name, p, est, se, 0.0, 4 * se, criterion=None)
        e = -np.log1p(-r2[:100_000]) * (nu - 1.0) / 2.0
        d = float(sps.kstest(e, "expon").statistic)
        rec.add("log_exponential_ks", dict(p, reps=e.size), d, 0.0, 0.0, 0.01, criterion=None)
    return rec.reports


def suite_moments(seed: int = 0, reps: int = 1_000_000, nus: Sequence[float] = (3, 21), psi: float = 0.7, phi: float = 2.1, threads: int = 1, **_) -> List[RunReport]:
    rec = _Recorder("verify moments", criterion=2)
    for nu in nus:
        s = replica_seeds(derive_seed(seed, f"moments:{nu}"), reps)
        a = theta_nu_from_uniforms(float(nu), stream_uniforms(s, 1), stream_uniforms(s, 2))
        u_psi = pruefer.upsilon(psi, a)
        t_psi = pruefer.upsilon_tilde(psi, a)
        t_phi = pruefer.upsilon_tilde(phi, a)
        p = dict(nu=nu, psi=psi, phi=phi, reps=reps, seed=seed)
        c1, c3 = (nu + 1.0), (nu + 1.0) * (nu + 3.0)
        for name, sample, pred, upper in (
            ("mean_upsilon", u_psi, 0.0, False),
            ("tilde_covariance", t_psi * t_phi, 4.0 * math.cos(psi - phi) / c1, False),
            ("tilde_fourth", t_psi**4, 48.0 / c3, False),
            ("linearization_error", (u_psi - t_psi) ** 2, 16.0 / c3, True),
            ("upsilon_second", u_psi**2, 8.0 / c1, True),
            ("tilde_difference_cube", (t_psi - t_phi) ** 3, 0.0, False),
            ("error_tilde_product", (u_psi - t_psi) * t_phi, 0.0, False),
        ):
            est, se = _mean_se(sample)
            gap = _excess(est, pred) if upper else None
            rec.add(name, dict(p, bound="upper" if upper else "equal"), est, se, pred, 4 * se, gap=gap)
    return rec.reports


def suite_phase(seed: int = 0, reps: int = 100_000, threads: int = 1, **_) -> List[RunReport]:
    rec = _Recorder("verify phase")
    # first moment at (beta, s, theta) = (2, 63, 1)
    s = replica_seeds(derive_seed(seed, "phase:mean"), reps)
    psi, inc = pruefer.phase_trajectories(s, 2.0, 1.0, 63)
    est, se = _mean_se(psi[63])
    rec.add("mean_phase", dict(beta=2.0, s=63, theta=1.0, reps=reps), est, se, 64.0, 4 * se)
    # increment identity between steps k and m on the same replicas
    k, m = 8, 63
    lhs = (psi[m] - psi[k] - (m - k) * 1.0) ** 2
    rhs = np.sum(inc[k:m] ** 2, axis=0)
    est, se = _mean_se(lhs - rhs)
    rec.add("increment_identity", dict(beta=2.0, k=k, m=m, theta=1.0, reps=reps, lhs=float(lhs.mean()), rhs=float(rhs.mean())), est, se, 0.0, 4 * se)
    # second-moment bound on a grid
    small = max(reps // 5, 100)
    for beta in (1.0, 2.0, 4.0):
        for theta in (0.1, 1.0, PI):
            for m in (16, 64):
                s = replica_seeds(derive_seed(seed, f"phase:bound:{beta}:{theta}:{m}"), small)
                psi_m = pruefer.phase_batch(s, beta, [theta], [m + 1])[0, 0]
                est, se = _mean_se((psi_m - (m + 1) * theta) ** 2)
                bound = 8.0 * m * theta / beta
                rec.add("second_moment_bound", dict(beta=beta, theta=theta, m=m, reps=small), est, se, bound, 4 * se, gap=_excess(est, bound))
    # monotonicity on a 1024-point grid
    grid = 2 * PI * np.arange(1, 1024) / 1024
    bad = 0
    draws = 20
    for i, sd in enumerate(replica_seeds(derive_seed(seed, "phase:monotone"), draws)):
        gs = pruefer.draw_gamma_sequence(2.0 if i % 2 else 0.5, 256, int(sd))
        ph, _ = pruefer.phase_and_slope(gs, grid)
        ph = np.concatenate(([0.0], ph, [2 * PI * gs.n]))
        bad += int(not np.all(np.diff(ph) > 0))
    rec.add("monotone_draws", dict(draws=draws, n=256, grid=1024), bad, 0.0, 0.0, 0.0)
    return rec.reports


def suite_seq(seed: int = 0, betas: Sequence[float] = (0.5, 1.0, 2.0, 4.0), k_max: int = 1_000_000, **_) -> List[RunReport]:
    rec = _Recorder("verify seq", criterion=3)
    for beta in betas:
        _, _, gap = counting.epsilon_s_table(beta, k_max)
        est = float(gap.max())
        bound = counting.gap_bound(beta)
        rec.add("sup_gap", dict(beta=beta, k_max=k_max), est, 0.0, bound, 0.0, gap=_excess(est, bound))
    return rec.reports


def _spearman_growth(ns, gaps):
    """One-sided Spearman trend of ``gaps`` against ``ns`` at the 5% level."""
    rho = float(sps.spearmanr(ns, gaps).statistic)
    df = len(gaps) - 2
    t_c = float(sps.t.ppf(0.95, df))
    r_c = t_c / math.sqrt(df + t_c * t_c)
    return rho, r_c


def suite_variance(seed: int = 0, reps: int = 100_000, threads: int = 1, cache: Optional[SampleCache] = None, **_) -> List[RunReport]:
    rec = _Recorder("verify variance")
    data = counting_pass(seed, reps, threads, cache)
    beta = MAIN_BETA
    # mean and symmetry at a third of the circle
    n, th = SYMMETRY
    psi, eta = _phase_at(data, n, th)
    N = counting.count_in_arc(psi, eta)
    est, se = _mean_se(N)
    rec.add("mean_count", dict(beta=beta, n=n, theta=th, reps=reps), est, se, n * th / (2 * PI), 4 * se, criterion=4)
    psi_c, _ = _phase_at(data, n, 2 * PI - th)
    N_c = counting.count_in_arc(psi_c, eta)
    half = reps // 2
    ks = mc.ks_2samp(N_c[:half], n - N[half:])
    rec.add("symmetry_ks", dict(beta=beta, n=n, theta=th, reps=reps, split="disjoint halves"), ks.d_stat, 0.0, 0.0, ks.critical, criterion=4)

    count_gaps, cells = [], []
    for n in GRID_NS:
        for label, th in (("pi", PI), ("pi/8", PI / 8), ("8pi/n", 8 * PI / n)):
            psi, _ = _phase_at(data, n, th)
            N = counting.count_in_arc(psi, eta)
            pred = counting.predictors(beta, n, th)
            p = dict(beta=beta, n=n, theta=th, arc=label, reps=reps)
            v, se = _var_se(N)
            rec.add("count_variance", p, v, se, pred.count_var, 1.0 + 4 * se, criterion=5)
            count_gaps.append(abs(v - pred.count_var))
            cells.append(n)
            x = psi - n * th
            v2, se2 = _var_se(x)
            rec.add("phase_variance", p, v2, se2, pred.phase_var, 4.0 + 4 * se2, criterion=6)
            est, se3 = _mean_se(x)
            rec.add("phase_mean", p, est, se3, 0.0, 4 * se3, criterion=None)
            d, sed = _mean_se((N - pred.mean) ** 2 - x**2 / (2 * PI) ** 2)
            rec.add("decomposition", p, d, sed, 0.5, 0.5 + 4 * sed, criterion=None)
    rho, r_c = _spearman_growth(cells, count_gaps)
    rec.add("count_gap_trend", dict(cells=len(cells), test="spearman one-sided 5%"), rho, 0.0, 0.0, r_c, gap=max(rho, 0.0), criterion=5)
    return rec.reports


def suite_charfn(seed: int = 0, reps: int = 100_000, threads: int = 1, cache: Optional[SampleCache] = None, **_) -> List[RunReport]:
    rec = _Recorder("verify charfn", criterion=7)
    data = counting_pass(seed, reps, threads, cache)
    beta, th = MAIN_BETA, PI
    lambdas = (0.1, 0.2, 0.3, 0.4, 0.5)
    rel = {}
    for n in (256, 1024, 4096):
        psi, eta = _phase_at(data, n, th)
        cf = mc.empirical_char_fn(psi - n * th, lambdas)
        rel[n] = []
        for lam, a, se in zip(lambdas, cf.estimates, cf.ses):
            pred = mc.predicted_char_fn(beta, n, th, lam)
            p = dict(beta=beta, n=n, theta=th, lam=lam, reps=reps)
            crit = 7 if n in (256, 4096) else None
            rec.add("phase_charfn", p, abs(a), se, pred, 0.25 * pred + 4 * se, gap=abs(a - pred), criterion=crit)
            if lam <= 0.3:
                rel[n].append((abs(a - pred) / pred, se / pred))
        N = counting.count_in_arc(psi, eta)
        if n in (256, 4096):
            mean = n * th / (2 * PI)
            cf_n = mc.empirical_char_fn(N - mean, (-1.0, -0.5, 0.5, 1.0))
            for lam, a, se in zip(cf_n.lambdas, cf_n.estimates, cf_n.ses):
                pred = mc.predicted_count_char_fn(beta, n, th, lam)
                rec.add("count_charfn", dict(beta=beta, n=n, theta=th, lam=lam, reps=reps), abs(a), se, pred,
                        0.5 * lam * lam + 4 * se, gap=abs(a - pred), criterion=None)
    worst = {n: max(r for r, _ in v) for n, v in rel.items()}
    slack = 4 * max(s for v in rel.values() for _, s in v)
    rec.add("relative_deviation_growth", dict(ns=[256, 1024, 4096], lam_max=0.3), worst[4096], slack / 4, worst[256],
            slack, gap=_excess(worst[4096], worst[256]), criterion=None)
    return rec.reports


def _ks_decay(rec, label, samples_by_key, noise, final_bound, crit, params):
    keys = list(samples_by_key)
    ks = {k: mc.ks_distance(v).d_stat for k, v in samples_by_key.items()}
    for k in keys:
        rec.add(f"{label}_ks", dict(params, key=k), ks[k], noise, 0.0, math.inf, gap=ks[k], criterion=None)
    worst = max(ks[b] - ks[a] for a, b in zip(keys, keys[1:]))
    rec.add(f"{label}_ks_non_increasing", dict(params, keys=keys), worst, noise, 0.0, 2 * noise, gap=max(worst, 0.0), criterion=crit)
    last = keys[-1]
    rec.add(f"{label}_ks_final", dict(params, key=last), ks[last], noise, final_bound, 0.0, gap=_excess(ks[last], final_bound), criterion=crit)


def suite_clt(seed: int = 0, reps: int = 100_000, threads: int = 1, cache: Optional[SampleCache] = None, **_) -> List[RunReport]:
    rec = _Recorder("verify clt", criterion=8)
    data = counting_pass(seed, reps, threads, cache)
    beta, th = MAIN_BETA, PI
    noise = mc.ks_critical(reps)
    counts, phases = {}, {}
    for n in (16, 256, 4096):
        psi, eta = _phase_at(data, n, th)
        counts[n] = counting.standardize(counting.count_in_arc(psi, eta), beta, n, th)
        phases[n] = counting.standardize_phase(psi, beta, n, th)
    p = dict(beta=beta, theta=th, reps=reps)
    _ks_decay(rec, "count", counts, noise, 0.05, 8, p)
    _ks_decay(rec, "phase", phases, noise, 0.05, None, p)
    return rec.reports


def suite_oracle(seed: int = 0, reps: int = 1_000_000, threads: int = 1, nodes: int = 2048, **_) -> List[RunReport]:
    rec = _Recorder("verify oracle", criterion=9)
    for beta, n in ((1.0, 2), (2.0, 2), (4.0, 2), (2.0, 3)):
        thetas = [PI / 2, PI]
        psi, eta = mc.sample_phases(beta, thetas, [n], reps, derive_seed(seed, f"oracle:{beta}:{n}"), threads)
        rej = oracle.rejection_sample(beta, n, derive_seed(seed, f"rejection:{beta}:{n}"), reps)[0]
        for i, th in enumerate(thetas):
            N = counting.count_in_arc(psi[0, i], eta)
            N_rej = np.sum(rej < th, axis=1)
            p = dict(beta=beta, n=n, theta=th, reps=reps)
            exact = oracle.count_pmf_n2(beta, th, nodes) if n == 2 else None
            for k in range(n + 1):
                ind = (N == k).astype(float)
                ind_rej = (N_rej == k).astype(float)
                est, se = _mean_se(ind)
                est_r, se_r = _mean_se(ind_rej)
                if exact is not None:
                    rec.add("pmf_vs_quadrature", dict(p, k=k), est, se, exact.probs[k], 4 * se + exact.quad_error)
                se_c = math.hypot(se, se_r)
                rec.add("pmf_vs_rejection", dict(p, k=k), est, se_c, est_r, 4 * se_c)
            if beta == 2.0 and n == 2 and th == PI:
                v, se = _var_se(N)
                vq = oracle.count_variance_n2(beta, th, nodes)
                rec.add("variance_vs_quadrature", p, v, se, vq.value, 4 * se + vq.quad_error)
    return rec.reports


def suite_linstat(seed: int = 0, reps: int = 20_000, ns: Sequence[int] = (64, 256, 1024), threads: int = 1, **_) -> List[RunReport]:
    rec = _Recorder("verify linstat", criterion=10)
    beta = 2.0
    funcs = {"2cos(x)": linstat.cosine(1), "2cos(2x)": linstat.cosine(2), "2cos(x)+sin(3x)": linstat.cos_plus_sin3()}
    main = linstat.cosine(1)
    limit = linstat.limit_variance(beta, main).limit_var
    var_table = {}
    for n in ns:
        spectra = linstat.sample_spectra(beta, n, reps, derive_seed(seed, f"linstat:{n}"), threads)
        for name, series in funcs.items():
            x = linstat.series_statistics(spectra, series)
            var_table[(name, n)] = _var_se(x)
            if name == "2cos(x)" and n == max(ns):
                p = dict(beta=beta, n=n, f=name, reps=reps)
                est, se = _mean_se(x)
                rec.add("mean", p, est, se, 0.0, 4 * se, criterion=None)
                v, se = var_table[(name, n)]
                rec.add("variance", p, v, se, limit, max(4 * se, 0.1 * limit))
                d = mc.ks_distance(x / math.sqrt(limit)).d_stat
                rec.add("ks", p, d, mc.ks_critical(reps), 0.0, 0.03)
    n0 = min(ns)
    for name in funcs:
        for n in ns:
            if n == n0:
                continue
            v, se = var_table[(name, n)]
            v0, se0 = var_table[(name, n0)]
            se_c = math.hypot(se, se0)
            rec.add("variance_no_growth", dict(beta=beta, f=name, n=n, n_ref=n0, reps=reps), v, se_c, v0, 4 * se_c, gap=_excess(v, v0))
    # Fejer smoothing of a Lipschitz hat
    f, _ = linstat.hat(1.0)
    x = 2 * PI * np.arange(8192) / 8192
    full = linstat.hat_series(1.0, 4096)
    errs = []
    Ns = (4, 8, 16, 32, 64, 128, 256)
    for N in Ns:
        fN = linstat.fejer_smooth(full, N)
        errs.append(float(np.sqrt(np.mean((fN.derivative(x) - f.derivative(x)) ** 2))))
    worst = max(b - a for a, b in zip(errs, errs[1:]))
    rec.add("fejer_derivative_decreasing", dict(N=list(Ns), errors=errs), worst, 0.0, 0.0, 0.0, gap=max(worst, 0.0), criterion=None)
    smoothed = [linstat.limit_variance(beta, full, fejer_N=N).sigma_sq_smoothed for N in Ns]
    sigma_sq = linstat.limit_variance(beta, full).sigma_sq
    worst = max(a - b for a, b in zip(smoothed, smoothed[1:] + [sigma_sq]))
    rec.add("fejer_variance_increasing", dict(N=list(Ns), values=smoothed, sigma_sq=sigma_sq), worst, 0.0, 0.0, 0.0, gap=max(worst, 0.0), criterion=None)
    return rec.reports


def suite_sine(seed: int = 0, reps: int = 10_000, betas: Sequence[float] = (1.0, 2.0, 4.0), threads: int = 1, **_) -> List[RunReport]:
    rec = _Recorder("verify sine", criterion=11)
    xs = [1.0, 2 * PI, 50.0, 500.0]
    sizes = [sine_beta.default_proxy_size(x) for x in xs]
    doubled = 2 * sine_beta.default_proxy_size(2 * PI)
    for beta in betas:
        all_x = xs + ([2 * PI] if beta == 2.0 else [])
        all_n = sizes + ([doubled] if beta == 2.0 else [])
        counts = sine_beta.sample_sine_counts(beta, all_x, all_n, reps, derive_seed(seed, f"sine:{beta}"), threads)
        for i, (x, n) in enumerate(zip(xs, sizes)):
            p = dict(beta=beta, x=x, n_approx=n, reps=reps)
            v, se = _var_se(counts[i])
            rec.add("variance", p, v, se, sine_beta.predicted_sine_variance(beta, x), 1.0 + 4 * se)
            est, sem = _mean_se(counts[i])
            rec.add("mean", p, est, sem, x / (2 * PI), 4 * sem, criterion=None)
        if beta == 2.0:
            a, b = counts[1].astype(float), counts[-1].astype(float)
            va, vb = np.var(a, ddof=1), np.var(b, ddof=1)

            def var_change(z, axis):
                v = np.var(z, axis=axis, ddof=1)
                return v[1] - v[0]

            # paired batches: both sizes share their leading coefficients
            se = float(mc.batch_means_se(np.stack([a, b]), statistic=var_change))
            rec.add("doubling", dict(beta=beta, x=2 * PI, n_approx=[sizes[1], doubled], reps=reps), vb, se, va, 4 * se)
            std = {x: sine_beta.standardize_sine(counts[i], beta, x) for i, x in enumerate(xs) if x >= 2 * PI}
            _ks_decay(rec, "sine", std, mc.ks_critical(reps), 0.08, 11, dict(beta=beta, reps=reps))
    return rec.reports


SUITES: Dict[str, Callable[..., List[RunReport]]] = {
    "theta": suite_theta,
    "moments": suite_moments,
    "phase": suite_phase,
    "seq": suite_seq,
    "variance": suite_variance,
    "charfn": suite_charfn,
    "clt": suite_clt,
    "oracle": suite_oracle,
    "linstat": suite_linstat,
    "sine": suite_sine,
}

ACCEPTANCE_ORDER = ("theta", "moments", "seq", "variance", "charfn", "clt", "oracle", "linstat", "sine", "phase")


def run_all(seed: int = 0, threads: int = 1, scale: float = 1.0, progress: Optional[Callable[[str], None]] = None) -> List[RunReport]:
    """Every suite at its default size (times ``scale``), sharing one counting pass."""
    cache = SampleCache()
    reports: List[RunReport] = []
    for name in ACCEPTANCE_ORDER:
        if progress:
            progress(name)
        kwargs = dict(seed=seed, threads=threads, cache=cache)
        if scale != 1.0:
            kwargs.update(scaled_sizes(name, scale))
        reports.extend(SUITES[name](**kwargs))
    for r in reports:
        r.command = "verify all"
    return reports


_DEFAULT_REPS = dict(theta=1_000_000, moments=1_000_000, phase=100_000, variance=100_000, charfn=100_000, clt=100_000, oracle=1_000_000, linstat=20_000, sine=10_000)


def scaled_sizes(name: str, scale: float) -> dict:
    if name not in _DEFAULT_REPS:
        return {}
    return dict(reps=max(int(_DEFAULT_REPS[name] * scale), 200))
