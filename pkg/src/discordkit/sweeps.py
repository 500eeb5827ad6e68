"""Batch agreement checks between the analytic criteria and the numerical oracle."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .criteria import POSITIVE, ZERO, Tolerances, classify, random_cq, random_qc
from .entangle import merging_report
from .oracle import discord_numeric
from .qstate import sample_random

FAMILIES = ("ginibre", "cq", "qc", "merge")


@dataclass
class SweepResult:
    summary: dict
    samples: dict = field(default_factory=dict)


def _confusion(verdicts, values, threshold):
    out = {"analytic_zero/oracle_zero": 0, "analytic_zero/oracle_positive": 0,
           "analytic_positive/oracle_zero": 0, "analytic_positive/oracle_positive": 0}
    for v, d in zip(verdicts, values):
        a = "analytic_zero" if v == ZERO else "analytic_positive"
        o = "oracle_zero" if d <= threshold else "oracle_positive"
        out[f"{a}/{o}"] += 1
    return out


def sweep_ginibre(rng, count, grid_n, positive_threshold, tol):
    va, vb, da, db = [], [], [], []
    for _ in range(count):
        rho = sample_random("ginibre2q", rng)
        cls = classify(rho, tol)
        va.append(cls.b_given_a)
        vb.append(cls.a_given_b)
        da.append(discord_numeric(rho, "A", grid_n).value)
        db.append(discord_numeric(rho, "B", grid_n).value)
    da, db = np.array(da), np.array(db)
    both = int(sum(a == POSITIVE and b == POSITIVE for a, b in zip(va, vb)))
    oracle_both = int(np.sum((da > positive_threshold) & (db > positive_threshold)))
    summary = {
        "count": count,
        "analytic_both_way_positive": both,
        "oracle_both_sides_above_threshold": oracle_both,
        "oracle_fraction": oracle_both / count if count else None,
        "min_discord_A": float(da.min()) if count else None,
        "min_discord_B": float(db.min()) if count else None,
        "confusion_A": _confusion(va, da, positive_threshold),
        "confusion_B": _confusion(vb, db, positive_threshold),
    }
    return summary, {"ginibre_A": da, "ginibre_B": db}


def sweep_constructed(rng, count, grid_n, zero_threshold, tol, kind):
    sampler, side = (random_cq, "A") if kind == "cq" else (random_qc, "B")
    vals, rows, flagged = [], [], 0
    for _ in range(count):
        s = sampler(rng)
        cls = classify(s.rho, tol)
        verdict = cls.b_given_a if kind == "cq" else cls.a_given_b
        flagged += verdict != ZERO
        vals.append(discord_numeric(s.rho, side, grid_n).value)
        rows.append(s.row)
    vals = np.array(vals)
    summary = {
        "count": count,
        "side": side,
        "analytic_not_zero": int(flagged),
        "oracle_above_threshold": int(np.sum(vals > zero_threshold)),
        "max_discord": float(vals.max()) if count else None,
        "rows": {str(r): rows.count(r) for r in sorted(set(rows))},
    }
    return summary, {kind: vals}


def sweep_merging(rng, count, grid_n):
    resid = []
    for _ in range(count):
        rho = sample_random("pure3q", rng)
        for cut in itertools.permutations("ABC"):
            resid.append(merging_report(rho, *cut, grid_n=grid_n).identity_residual)
    resid = np.array(resid)
    summary = {
        "count": count,
        "cuts_per_state": 6,
        "max_abs_residual": float(np.abs(resid).max()) if count else None,
    }
    return summary, {"merge_residual": resid}


def agreement_sweep(count, seed, grid_n=64, families=FAMILIES, zero_threshold=1e-3,
                    positive_threshold=1e-4, merge_count=None, tol=None):
    """Run the selected family sweeps with independent child generators of ``seed``."""
    tol = tol or Tolerances()
    children = dict(zip(FAMILIES, np.random.SeedSequence(seed).spawn(len(FAMILIES))))
    summary = {
        "seed": seed,
        "grid_n": grid_n,
        "thresholds": {"zero": zero_threshold, "positive": positive_threshold},
        "tolerances": tol.to_dict(),
    }
    samples = {}
    for fam in families:
        rng = np.random.default_rng(children[fam])
        if fam == "ginibre":
            s, raw = sweep_ginibre(rng, count, grid_n, positive_threshold, tol)
        elif fam in ("cq", "qc"):
            s, raw = sweep_constructed(rng, count, grid_n, zero_threshold, tol, fam)
        elif fam == "merge":
            s, raw = sweep_merging(rng, merge_count if merge_count is not None else count, grid_n)
        else:
            raise ValueError(f"unknown sweep family {fam!r}")
        summary[fam] = s
        samples.update(raw)
    return SweepResult(summary, samples)
