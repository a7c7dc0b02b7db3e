"""Request handlers shared by the CLI and the HTTP service.

Each handler takes parsed numpy inputs and returns a plain JSON-able dict;
front ends only do transport (argument/file parsing or pydantic models).
"""

from __future__ import annotations

import numpy as np

from . import blocks as blocks_mod
from . import clusters as clusters_mod
from . import dft as dft_mod
from . import feasibility as feas_mod
from . import oracle as oracle_mod
from . import witnesses as wit_mod
from .core import DEFAULT_TOL, Tolerances
from .jsonio import complex_pair
from .kd import SupportPair, classify, kd_table


def _support_dict(sp: SupportPair) -> dict:
    return {
        "s_a": list(sp.s_a),
        "s_b": list(sp.s_b),
        "n_a": sp.n_a,
        "n_b": sp.n_b,
    }


def _indexed(values, indices) -> list:
    return [[int(i), float(v)] for i, v in zip(indices, values)]


def table_report(U, psi, tol: Tolerances = DEFAULT_TOL) -> dict:
    table = kd_table(U, psi, tol)
    return {
        "q": [[complex_pair(z) for z in row] for row in table.q],
        "row_marginals": [float(x) for x in table.row_marginals().real],
        "col_marginals": [float(x) for x in table.col_marginals().real],
    }


def classify_report(U, psi, tol: Tolerances = DEFAULT_TOL) -> dict:
    report = classify(U, psi, tol)
    return {
        "classical": report.classical,
        "min_real": report.min_real,
        "max_abs_imag": report.max_abs_imag,
        "offending_cells": [list(cell) for cell in report.offending_cells],
        "support": _support_dict(report.support),
    }


def blocks_report(U, psi=None, rows=None, cols=None, tol: Tolerances = DEFAULT_TOL) -> dict:
    """Decompose U (full window, an explicit window, or a state's supports).

    With a state, the canonical form and its rank relations are included.
    """
    out: dict = {}
    if psi is not None:
        report = classify(U, psi, tol)
        sp = report.support
        cf = blocks_mod.canonical_form(U, sp, tol)
        dec = cf.decomposition
        check = blocks_mod.verify_rank_relations(cf, int(np.asarray(U).shape[0]), tol)
        out["support"] = _support_dict(sp)
        out["classical"] = report.classical
        out["rank_relations"] = {
            "rank_ok": list(check.rank_ok),
            "bound_support": check.bound_support,
            "bound_s": check.bound_s,
        }
    else:
        dec = blocks_mod.decompose(U, rows, cols, tol)
    out["s"] = dec.s
    out["blocks"] = [
        {"rows": list(blk.rows), "cols": list(blk.cols)} for blk in dec.blocks
    ]
    out["row_perm"] = list(dec.row_perm)
    out["col_perm"] = list(dec.col_perm)
    return out


def cluster_report(vectors, tol: Tolerances = DEFAULT_TOL) -> dict:
    decomposition = clusters_mod.cluster(vectors, tol)
    return {
        "clusters": [
            {"members": list(members), "kind": kind}
            for members, kind in decomposition.clusters
        ],
        "dimension_law": clusters_mod.check_dimension_law(decomposition, tol),
        "norms": [float(n) for n in decomposition.norms],
    }


def witness_report(U, psi, tol: Tolerances = DEFAULT_TOL) -> dict:
    report = wit_mod.nonclassicality_witness(U, psi, tol)
    return {
        "n_zeros": report.n_zeros,
        "s_full": report.s_full,
        "z_r": report.z_r,
        "z_c": report.z_c,
        "n_a": report.n_a,
        "n_b": report.n_b,
        "certifies_nonclassical": report.certifies_nonclassical,
        "verdicts": [
            {"name": v.name, "fired": v.fired, "implies": v.implies}
            for v in report.verdicts
        ],
    }


def _refutation_dict(refutation) -> dict:
    if isinstance(refutation, feas_mod.PhaseCycleViolation):
        return {
            "kind": "phase_cycle",
            "j1": refutation.j1,
            "j2": refutation.j2,
            "k1": refutation.k1,
            "k2": refutation.k2,
        }
    if isinstance(refutation, feas_mod.NoPositiveAmplitude):
        return {
            "kind": "no_positive_amplitude",
            "low_confidence": refutation.low_confidence,
        }
    return {
        "kind": "off_support_leak",
        "index": refutation.index,
        "side": refutation.side,
    }


def verify_report(U, s_a, s_b, tol: Tolerances = DEFAULT_TOL) -> dict:
    sp = SupportPair(s_a=tuple(s_a), s_b=tuple(s_b))
    result = feas_mod.construct_classical_state(U, sp, tol)
    out: dict = {"feasible": result.feasible, "support": _support_dict(sp)}
    if result.feasible:
        phases = result.phases
        amps = result.amplitudes
        out["state"] = [complex_pair(z) for z in result.state]
        out["phases"] = {
            "alpha": _indexed([phases.alpha[j] for j in sp.s_a], sp.s_a),
            "beta": _indexed([phases.beta[k] for k in sp.s_b], sp.s_b),
        }
        out["amplitudes"] = {
            "a": _indexed(amps.a, sp.s_a),
            "b": _indexed(amps.b, sp.s_b),
            "null_space_dim": amps.null_space_dim,
            "tolerance_warning": amps.tolerance_warning,
        }
        out["refutation"] = None
    else:
        out["state"] = None
        out["phases"] = None
        out["amplitudes"] = None
        out["refutation"] = _refutation_dict(result.refutation)
    return out


def oracle_report(U, max_d: int = oracle_mod.DEFAULT_MAX_D, tol: Tolerances = DEFAULT_TOL) -> dict:
    # the catalog's wall-clock timing is deliberately not serialized: identical
    # inputs must produce byte-identical reports
    catalog = oracle_mod.brute_force_catalog(U, tol, max_d=max_d)
    return {
        "d": catalog.d,
        "unitary_id": catalog.unitary_id,
        "count": len(catalog.feasible),
        "feasible": [
            {
                "s_a": list(entry.support.s_a),
                "s_b": list(entry.support.s_b),
                "null_space_dim": entry.null_space_dim,
                "state": [complex_pair(z) for z in entry.state],
            }
            for entry in catalog.feasible
        ],
    }


def sweep_report(U, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> dict:
    report = oracle_mod.witness_soundness_sweep(U, trials, seed, tol)
    out = {
        "trials": report.trials,
        "checked": report.checked,
        "fired": report.fired,
        "skipped": report.skipped,
        "reason": report.reason,
        "ok": report.ok,
    }
    if report.violation is not None:
        trial, psi = report.violation
        out["violation"] = {"trial": trial, "state": [complex_pair(z) for z in psi]}
    else:
        out["violation"] = None
    return out


def dft_enum_records(d: int, tol: Tolerances = DEFAULT_TOL) -> list[dict]:
    records = []
    for params, psi in dft_mod.enumerate_classical(d, tol):
        lattice = dft_mod.support_lattice_check(dft_mod.dft_matrix(d), psi, tol)
        records.append(
            {
                "d1": params.d1,
                "d2": params.d2,
                "j0": params.j0,
                "k0": params.k0,
                "coeffs": [complex_pair(z) for z in psi],
                "support_a": list(lattice.s_a),
                "support_b": list(lattice.s_b),
                "verified": True,
            }
        )
    return records
