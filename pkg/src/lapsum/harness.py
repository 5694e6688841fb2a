"""Bound scans over graph sources, tightness probes, and report serialization.

A scan is a parallel map over graphs with a deterministic ordered merge:
reports are byte-identical across worker counts (the ``runtime_ms`` field is
the only nondeterministic entry). Expensive invariants are computed once per
graph and shared across all requested bounds; size-cap failures become
"skipped" records instead of aborting the run.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

from .bounds import VIOLATION_TOL, aux_requirements, bound_spec, evaluate_bound
from .decomposition import STAR_ARB_EDGE_CAP, star_arboricity_exact
from .graphs import (
    FamilyId,
    GraphSource,
    components_info,
    encode_graph6,
    graph_stream,
    is_bipartite,
    make_family,
    non_isolated_count,
    conjugate_degrees,
)
from .matching import (
    SizeCapError,
    VERTEX_COVER_NU_CAP,
    matching_number,
    min_vertex_cover,
)
from .spectral import eps_profile, spectrum

#: |slack| at or below this counts as an equality case in reports
EQUALITY_TOL = 1e-6
#: equality examples recorded per (bound, k); totals are always exact
EQUALITY_EXAMPLE_CAP = 10
#: graphs per parallel work unit
CHUNK_SIZE = 256


@dataclass(frozen=True)
class KRange:
    """Which k values a scan evaluates per graph.

    modes: ``all`` (1..n), ``list`` (fixed values, k > n allowed when asked
    for explicitly), ``nminus2`` (1..n-2, the improved-matching regime).
    """

    mode: str = "all"
    ks: tuple[int, ...] = ()

    def __post_init__(self):
        if self.mode not in ("all", "list", "nminus2"):
            raise ValueError(f"unknown k-range mode {self.mode!r}")
        if self.mode == "list":
            if not self.ks:
                raise ValueError("list k-range needs at least one value")
            if any(k < 1 for k in self.ks):
                raise ValueError("k values must be >= 1")

    def values(self, n: int) -> tuple[int, ...]:
        if self.mode == "all":
            return tuple(range(1, n + 1))
        if self.mode == "nminus2":
            return tuple(range(1, max(n - 1, 1)))
        return self.ks


def parse_krange(text: str) -> KRange:
    text = text.strip().lower()
    if text == "all":
        return KRange("all")
    if text in ("nminus2", "n-2"):
        return KRange("nminus2")
    try:
        ks = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"bad k range {text!r}; expected 'all' or a list") from None
    return KRange("list", ks)


@dataclass
class BoundKAggregate:
    checked: int = 0
    violations: int = 0
    equalities: int = 0
    min_slack: float = math.inf

    def to_row(self, tag: str, k: int) -> dict:
        return {
            "bound": tag,
            "k": k,
            "checked": self.checked,
            "violations": self.violations,
            "equalities": self.equalities,
            "min_slack": None if self.min_slack == math.inf else self.min_slack,
        }


@dataclass
class ScanReport:
    source: str
    bounds: tuple[str, ...]
    krange: KRange
    graphs: int = 0
    checks: int = 0
    aggregates: dict[tuple[str, int], BoundKAggregate] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    equality_examples: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    max_eps_over_k2: float = -math.inf
    runtime_ms: int = 0

    @property
    def violation_count(self) -> int:
        return sum(a.violations for a in self.aggregates.values())

    def to_json_dict(self) -> dict:
        rows = [
            self.aggregates[key].to_row(*key)
            for key in sorted(self.aggregates, key=lambda t: (t[0], t[1]))
        ]
        return {
            "schema": 1,
            "source": self.source,
            "bounds": list(self.bounds),
            "totals": {
                "graphs": self.graphs,
                "checks": self.checks,
                "violations": self.violation_count,
                "equalities": sum(a.equalities for a in self.aggregates.values()),
                "skipped": len(self.skipped),
                "max_eps_over_k2": None
                if self.max_eps_over_k2 == -math.inf
                else self.max_eps_over_k2,
                "per_bound_k": rows,
            },
            "violations": self.violations,
            "equalities": self.equality_examples,
            "skipped": self.skipped,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["bound,k,checked,violations,equalities,min_slack"]
        for key in sorted(self.aggregates, key=lambda t: (t[0], t[1])):
            r = self.aggregates[key].to_row(*key)
            slack = "" if r["min_slack"] is None else repr(r["min_slack"])
            lines.append(
                f"{r['bound']},{r['k']},{r['checked']},{r['violations']},"
                f"{r['equalities']},{slack}"
            )
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Per-graph evaluation

def _compute_aux(g, needs: set[str]) -> tuple[dict, dict[str, str]]:
    """Shared invariant memo for one graph, plus per-quantity skip reasons."""
    aux: dict = {"eps": eps_profile(g)}
    unavailable: dict[str, str] = {}
    if "conj_degrees" in needs:
        aux["conj_degrees"] = conjugate_degrees(g)
    if "bipartite" in needs:
        aux["bipartite"] = is_bipartite(g)
    if "n_prime" in needs:
        _, aux["n_prime"] = components_info(g)
    if "non_isolated" in needs:
        aux["non_isolated"] = non_isolated_count(g)
    if "nu" in needs or "tau" in needs:
        aux["nu"] = matching_number(g)
    if "tau" in needs:
        if aux["nu"] > VERTEX_COVER_NU_CAP:
            unavailable["tau"] = f"nu={aux['nu']} exceeds exact-cover cap"
        else:
            aux["tau"] = len(min_vertex_cover(g))
    if "sa" in needs:
        if g.m > STAR_ARB_EDGE_CAP:
            unavailable["sa"] = f"|E|={g.m} exceeds exact star-arboricity cap"
        else:
            aux["sa"] = star_arboricity_exact(g)[0]
    return aux, unavailable


def _witness_record(g, aux, result) -> dict:
    """Full serialized witness: graph, spectrum, and every cached invariant."""
    rec = {
        "graph6": encode_graph6(g),
        "n": g.n,
        "m": g.m,
        "bound": result.tag,
        "k": result.k,
        "lhs": result.lhs,
        "rhs": result.rhs,
        "slack": result.slack,
        "spectrum": list(spectrum(g).values),
    }
    for key in sorted(aux):
        if key == "eps":
            rec["eps_profile"] = list(aux[key].eps)
        else:
            rec[key] = aux[key]
    return rec


def _scan_chunk(args):
    (g6_list, bounds, krange) = args
    partial = {
        "graphs": 0,
        "checks": 0,
        "agg": {},  # (tag, k) -> [checked, violations, equalities, min_slack]
        "violations": [],
        "equalities": [],
        "skipped": [],
        "max_ratio": -math.inf,
    }
    from .graphs import parse_graph6

    needs = aux_requirements(bounds)
    for g6 in g6_list:
        g = parse_graph6(g6)
        partial["graphs"] += 1
        try:
            aux, unavailable = _compute_aux(g, needs)
        except SizeCapError as exc:
            for tag in bounds:
                partial["skipped"].append(
                    {"graph6": g6, "bound": tag, "reason": str(exc)}
                )
            continue
        prof = aux["eps"]
        for k in krange.values(g.n):
            ratio = prof.value(k) / (k * k)
            if ratio > partial["max_ratio"]:
                partial["max_ratio"] = ratio
        for tag in bounds:
            missing = [q for q in bound_spec(tag).needs if q in unavailable]
            if missing:
                partial["skipped"].append(
                    {"graph6": g6, "bound": tag, "reason": unavailable[missing[0]]}
                )
                continue
            for k in krange.values(g.n):
                res = evaluate_bound(tag, g, k, aux)
                partial["checks"] += 1
                agg = partial["agg"].setdefault(
                    (tag, k), [0, 0, 0, math.inf]
                )
                agg[0] += 1
                if not res.applicable:
                    continue
                if res.slack < agg[3]:
                    agg[3] = res.slack
                if not res.holds:
                    agg[1] += 1
                    partial["violations"].append(_witness_record(g, aux, res))
                elif abs(res.slack) <= EQUALITY_TOL:
                    agg[2] += 1
                    partial["equalities"].append(
                        {
                            "graph6": g6,
                            "bound": tag,
                            "k": k,
                            "lhs": res.lhs,
                            "rhs": res.rhs,
                            "slack": res.slack,
                        }
                    )
    return partial


def _chunks(iterable, size):
    buf = []
    for item in iterable:
        buf.append(item)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def scan(
    src: GraphSource,
    bounds,
    ks: KRange | None = None,
    jobs: int = 1,
    strict: bool = True,
) -> ScanReport:
    """Evaluate the requested bounds over every graph of the source.

    Results are merged in source order, so the report is identical for any
    worker count. Equality examples are capped per (bound, k) — the first
    few in source order — while the aggregate counts stay exact.
    """
    bounds = tuple(bounds)
    if not bounds:
        raise ValueError("bounds must be non-empty")
    for tag in bounds:
        bound_spec(tag)  # validates the id early
    krange = ks or KRange("all")
    start = time.monotonic()
    report = ScanReport(src.describe(), bounds, krange)
    g6_stream = (encode_graph6(g) for g in graph_stream(src, strict=strict))
    tasks = ((chunk, bounds, krange) for chunk in _chunks(g6_stream, CHUNK_SIZE))
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            partials = list(pool.imap(_scan_chunk, tasks))
    else:
        partials = [_scan_chunk(t) for t in tasks]
    eq_counts: dict[tuple[str, int], int] = {}
    for p in partials:
        report.graphs += p["graphs"]
        report.checks += p["checks"]
        for key, (checked, nviol, neq, mslack) in p["agg"].items():
            agg = report.aggregates.setdefault(key, BoundKAggregate())
            agg.checked += checked
            agg.violations += nviol
            agg.equalities += neq
            if mslack < agg.min_slack:
                agg.min_slack = mslack
        report.violations.extend(p["violations"])
        for eq in p["equalities"]:
            key = (eq["bound"], eq["k"])
            if eq_counts.get(key, 0) < EQUALITY_EXAMPLE_CAP:
                report.equality_examples.append(eq)
                eq_counts[key] = eq_counts.get(key, 0) + 1
        report.skipped.extend(p["skipped"])
        if p["max_ratio"] > report.max_eps_over_k2:
            report.max_eps_over_k2 = p["max_ratio"]
    report.runtime_ms = int((time.monotonic() - start) * 1000)
    return report


# ---------------------------------------------------------------------------
# Tightness probes

@dataclass(frozen=True)
class ProbeRow:
    family: str
    graph6: str
    k: int
    lhs: float
    rhs: float
    slack: float
    applicable: bool

    @property
    def equality(self) -> bool:
        return self.applicable and abs(self.slack) <= EQUALITY_TOL


def tightness_probe(families, bound: str, ks: KRange | None = None) -> list[ProbeRow]:
    """Slack table of one bound over a list of named family graphs."""
    krange = ks or KRange("all")
    needs = aux_requirements([bound])
    rows: list[ProbeRow] = []
    for fam in families:
        g = make_family(fam)
        label = str(fam) if isinstance(fam, FamilyId) else fam
        aux, unavailable = _compute_aux(g, needs)
        if any(q in unavailable for q in needs):
            raise SizeCapError(
                f"probe of {label}: {'; '.join(unavailable.values())}"
            )
        for k in krange.values(g.n):
            res = evaluate_bound(bound, g, k, aux)
            rows.append(
                ProbeRow(
                    label,
                    encode_graph6(g),
                    k,
                    res.lhs,
                    res.rhs,
                    res.slack,
                    res.applicable,
                )
            )
    return rows


def probe_table_csv(rows) -> str:
    lines = ["family,graph6,k,lhs,rhs,slack,equality"]
    for r in rows:
        lines.append(
            f"{r.family},{r.graph6},{r.k},{r.lhs!r},{r.rhs!r},{r.slack!r},"
            f"{int(r.equality)}"
        )
    return "\n".join(lines) + "\n"
