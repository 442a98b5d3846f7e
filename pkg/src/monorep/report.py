"""Deterministic JSON analysis reports."""

from __future__ import annotations

import json

from . import __version__
from .characters import DEFAULT_SEED, CharTable, MonoidContext
from .harness import analyze, table_hash
from .monoid import FiniteMonoid

SCHEMA_VERSION = 1


def _table_json(t: CharTable) -> dict:
    return {
        "kind": t.kind,
        "field_characteristic": t.prime,
        "conductor": t.conductor,
        "class_reps": t.reps,
        "labels": t.labels,
        "dims": t.dims,
        "rows": [[str(v) for v in row] for row in t.rows],
    }


def green_summary(M: FiniteMonoid) -> dict:
    g = M.green
    return {
        "j_class_sizes": [len(c) for c in g.j_classes],
        "regular": [bool(r) for r in g.regular],
        "idempotent_reps": [None if e is None else int(e) for e in g.idempotent_rep],
        "max_subgroup_orders": [None if e is None else len(g.h_class(e)) for e in g.idempotent_rep],
        "idempotent_count": len(M.idempotents),
    }


def class_summary(M: FiniteMonoid) -> dict:
    c = M.classes
    return {
        "count": len(c),
        "reps": [int(r) for r in c.reps],
        "sizes": [len(x) for x in c.classes],
        "rep_labels": [M.label(r) for r in c.reps],
    }


def per_prime_block(ctx: MonoidContext, p: int) -> dict:
    A, fc = ctx.algebra_and_field(p)
    cd = A.cartan
    dm = ctx.decomposition(p)
    sq = ctx.cartan_square(p)
    return {
        "field": {"p": fc.p, "degree": fc.degree, "splitting_bound_degree": fc.bound_degree},
        "simples": A.labels,
        "cartan": {"matrix": cd.C, "det": cd.det, "loewy_length": cd.loewy_length},
        "quiver": A.quiver.arrows,
        "decomposition": {"matrix": dm.D, "rows": dm.row_labels, "cols": dm.col_labels},
        "brauer_table": _table_json(ctx.brauer_table(p)),
        "cartan_square_holds": sq.ok,
    }


def analysis_report(M: FiniteMonoid, descriptor: str, primes, seed: int = DEFAULT_SEED, ctx: MonoidContext | None = None) -> dict:
    primes = sorted(set(int(p) for p in primes))
    ctx = ctx or MonoidContext(M, seed)
    pr = ctx.primes
    ell = ctx.ell
    A_ell, fc_ell = ctx.algebra_and_field(ell)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "monorep", "version": __version__},
        "monoid": {"descriptor": descriptor, "name": M.name, "size": M.size, "identity": M.identity, "sha256": table_hash(M)},
        "seed": seed,
        "primes": primes,
        "nonmodular_prime": ell,
        "fields": {str(p): ctx.algebra_and_field(p)[1].degree for p in [*primes, ell]},
        "green": green_summary(M),
        "classes": class_summary(M),
        "prime_report": {
            "group_order_primes": sorted(pr.group_order_primes),
            "sandwich_torsion_primes": sorted(pr.sandwich_torsion_primes),
            "radical_power_torsion": {str(k): sorted(v) for k, v in pr.torsion_by_power.items()},
            "strongly_modular": sorted(pr.strongly_modular),
            "modular": sorted(pr.modular),
            "radical_ranks": ctx.radical.ranks(),
            "loewy_length_rational": pr.loewy_length_Q,
        },
        "ordinary": {
            "cartan": {"matrix": A_ell.cartan.C, "det": A_ell.cartan.det, "loewy_length": A_ell.cartan.loewy_length},
            "table": _table_json(ctx.ordinary_table()),
        },
        "per_prime": {str(p): per_prime_block(ctx, p) for p in primes},
        "verdict": analyze(M, primes, seed, ctx).to_dict(),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)
