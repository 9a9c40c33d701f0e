"""Regression cases built from the worked examples; run by ``llip selftest``."""
from __future__ import annotations

import numpy as np

from . import cases
from .bounds import constant_bound, llip_norm, lip_norm_estimate, minimal_envelope, ratio_function, verify_bound, witness_probes
from .errors import IllDefinedAtPoint
from .extension import ExtensionSpec, extend, extend_and_diagnose
from .grid import GridFunction, constant, make_interval_grid, tabulate
from .operators import SampleOperator, multiplication_operator, sample_to_superposition, saturating_operator


def _jump_envelope():
    T = cases.jump_bound_operator()
    rep = minimal_envelope(T)
    w = T.grid.coords()
    exact = np.array_equal(rep.phi.values, cases.jump_bound_expected(T.grid))
    jumps = sorted({round(0.5 * (w[i] + w[j]), 2) for i, j in rep.continuity.flagged_pairs})
    ok = exact and rep.continuity.is_flagged_discontinuous and jumps == [0.25, 0.75] and rep.max_violation == 0
    return ok, {"exact": exact, "flagged": rep.continuity.is_flagged_discontinuous, "jumps_near": jumps}


def _jump_constant():
    T = cases.jump_bound_operator()
    c = constant_bound(T)
    two = verify_bound(T, constant(T.grid, 2.0))
    half = verify_bound(T, constant(T.grid, 0.5))
    w_bad = float(T.grid.coords()[half.worst[2]]) if half.worst else None
    ok = (
        np.all(c.phi.values == 2.0)
        and two.max_violation == 0.0
        and half.max_violation > 0
        and w_bad is not None
        and 0 <= w_bad < 0.25
    )
    return bool(ok), {"constant": float(c.phi.values[0]), "violation_at_half": half.max_violation, "worst_w": w_bad}


def _multiplication():
    grid = make_interval_grid(-1.0, 1.0, 21)
    h = tabulate(grid, lambda w: w)
    M = multiplication_operator(grid, h)
    f = tabulate(grid, lambda w: 2.0 + w * w)
    g = tabulate(grid, lambda w: -1.0 + w)
    ratio = ratio_function(M, f, g)
    norm = llip_norm(M)
    ok = np.allclose(ratio.values, np.abs(h.values), rtol=0, atol=1e-15) and norm == 1.0
    return bool(ok), {"llip_norm": norm}


def _saturating():
    grid = make_interval_grid(0.0, 1.0, 3)
    out = {}
    ok = True
    for k in (0.5, 1.0, 2.0):
        T = saturating_operator(grid, k)
        at0 = float(T.slices[0](0.0))
        norm = llip_norm(T)
        out[str(k)] = {"value_at_0": at0, "llip_norm": norm}
        ok &= at0 == 1.0 and norm <= 1 / k + 1e-9 and norm >= 1 / k - 1e-3
    return ok, out


def _norm_identity():
    grid = make_interval_grid(0.0, 1.0, 5)
    T = saturating_operator(grid, 1.0)
    norm = llip_norm(T)
    est = lip_norm_estimate(T, witness_probes(T))
    return abs(est - norm) <= 1e-9 * norm, {"llip_norm": norm, "estimate": est}


def _ill_defined():
    grid = make_interval_grid(0.0, 1.0, 5)
    g1 = tabulate(grid, lambda w: w)
    g2 = tabulate(grid, lambda w: 1.0 - w)  # g1 = g2 at w = 0.5
    t1 = tabulate(grid, lambda w: 0.0)
    t2 = tabulate(grid, lambda w: 1.0)
    S = SampleOperator(grid, [(g1, t1), (g2, t2)])
    try:
        sample_to_superposition(S, constant(grid, 10.0))
    except IllDefinedAtPoint as exc:
        return exc.index == 2, {"rejected_at": exc.index}
    return False, {"rejected_at": None}


def _extension(repaired: bool):
    spec, f, expected = cases.extension_case(repaired)
    ext, cont, rep = extend_and_diagnose(spec, f)
    err = float(np.abs(ext.values - expected).max())
    w = spec.source.grid.coords()
    if repaired:
        ok = err <= 1e-12 and not cont.is_flagged_discontinuous and rep.max_violation <= 1e-12
    else:
        at_zero = any(w[i] < 0 <= w[j] for i, j in cont.flagged_pairs)
        ok = err <= 1e-12 and cont.is_flagged_discontinuous and at_zero
    return ok, {"max_abs_error": err, "flagged": cont.is_flagged_discontinuous, "max_violation": rep.max_violation}


def _interpolation():
    spec, _, _ = cases.extension_case(repaired=True)
    ok = True
    for method in ("mcshane", "whitney", "midpoint"):
        s = ExtensionSpec(method, spec.phi, spec.source)
        for g, tg in spec.source.samples():
            ok &= np.array_equal(extend(s, g).values, tg.values)
    return bool(ok), {}


CASES = [
    ("minimal-bound-is-discontinuous", _jump_envelope),
    ("constant-bound-and-verification", _jump_constant),
    ("multiplication-operator-bound", _multiplication),
    ("saturating-operator-bound", _saturating),
    ("norm-identity-witness", _norm_identity),
    ("non-diagonal-sample-rejected", _ill_defined),
    ("extension-discontinuous-bound-fails", lambda: _extension(False)),
    ("extension-continuous-bound-repairs", lambda: _extension(True)),
    ("extension-interpolates-samples", _interpolation),
]


def run_selftest() -> list[dict]:
    results = []
    for name, case in CASES:
        ok, detail = case()
        results.append({"name": name, "passed": bool(ok), "detail": detail})
    return results
