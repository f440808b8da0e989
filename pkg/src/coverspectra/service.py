"""HTTP service exposing the library's reports, one endpoint per command.

The `run_*` functions are the single implementation shared by the HTTP
endpoints and the command-line tool: they take file *contents* (so a remote
service never needs access to client paths), call the core modules, and
return JSON-ready dictionaries.  Mathematical cross-check failures surface
as AssertionError, which the HTTP layer maps to a 500 and the CLI maps to
exit code 1; malformed inputs raise the package's input errors, mapped to
422 / exit code 2.
"""
from __future__ import annotations

import random

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .catalog import NAMED_PAIRS, group_file_text
from .errors import CoverSpectraError, ParseError
from .gassmann import weak_conjugacy
from .gmodules import parse_gmodule
from .graphs import (
    VoltageGraph,
    build_wreath_cover,
    graph_homology_module,
    kernel_multiplicity,
    induced_linear_rep,
    TwistedOperator,
    parse_voltage_graph,
    verify_sunada_bench,
    wreath_cover_bench,
)
from .groups import parse_group_file
from .homwide import seifert_weber, surface_action_character, wideness_report
from .characters import linear_characters
from .wreath import choose_ell, isometry_test, table1, table1_diff

DEFAULT_SEED = 20250825


# ---------------------------------------------------------------------------
# Request / response models
# ---------------------------------------------------------------------------


class GroupRequest(BaseModel):
    group_text: str = Field(description="group file: degree, generators, subgroups")


class GassmannResponse(BaseModel):
    weakly_conjugate: bool
    conjugate: bool
    conjugator: str | None
    class_profile: list[dict]
    a_matrix: list[list[int]]
    group_order: int
    subgroup_orders: list[int]


class IsometryRequest(GroupRequest):
    ell: int | None = None
    pintonello: bool = False


class IsometryResponse(BaseModel):
    equivalent: bool
    witness: dict | None
    conjugator: str | None
    checks_performed: int
    budget: int
    ell: int
    pintonello: bool
    group_order: int
    subgroup_orders: list[int]
    dimension: int


class HomwideRequest(GroupRequest):
    module_text: str
    budget: int = 5**6


class HomwideResponse(BaseModel):
    homologically_wide: bool
    cyclic_vector: list[int] | None
    condition_star: dict
    fixed_vectors: dict


class GraphRequest(GroupRequest):
    graph_text: str
    solo: bool = False
    wreath: bool = False
    ell: int | None = None
    tol: float = 1e-9


class GraphResponse(BaseModel):
    report: dict
    identities: dict
    all_identities_hold: bool


class Table1Request(BaseModel):
    diff: bool = False


class Table1Response(BaseModel):
    rows: list[dict]
    mismatches: list[str]
    all_match: bool


class SelftestRequest(BaseModel):
    seed: int = DEFAULT_SEED


class SelftestResponse(BaseModel):
    checks: dict
    passed: bool


# ---------------------------------------------------------------------------
# Shared handlers
# ---------------------------------------------------------------------------


def _two_subgroups(text: str):
    G, subgroups = parse_group_file(text)
    names = sorted(subgroups)
    if len(names) < 2:
        raise ParseError("need two subgroups in the group file")
    return G, subgroups[names[0]], subgroups[names[1]], subgroups


def run_gassmann(group_text: str) -> dict:
    G, h1, h2, _ = _two_subgroups(group_text)
    return weak_conjugacy(G, h1, h2).to_json()


def run_isometry(group_text: str, ell: int | None = None, pintonello: bool = False) -> dict:
    G, h1, h2, _ = _two_subgroups(group_text)
    return isometry_test(G, h1, h2, ell=ell, pintonello=pintonello).to_json()


def run_homwide(group_text: str, module_text: str, budget: int = 5**6) -> dict:
    G, subgroups = parse_group_file(group_text)
    module = parse_gmodule(module_text, G)
    return wideness_report(G, module, subgroups or None, budget=budget).to_json()


def run_graph(
    group_text: str,
    graph_text: str,
    solo: bool = False,
    wreath: bool = False,
    ell: int | None = None,
    tol: float = 1e-9,
) -> dict:
    G, h1, h2, _ = _two_subgroups(group_text)
    X = parse_voltage_graph(graph_text, G)
    solo_cap = 4096 if not solo else 8192
    report = verify_sunada_bench(G, h1, h2, X, solo_cap=solo_cap, tol=tol)
    identities = {
        "schreier_trace": report["schreier"]["trace_equal"],
        "schreier_trace_square": report["schreier"]["trace_square_equal"],
        "schreier_isospectral": report["schreier"]["isospectral"],
    }
    if report["solo"]["performed"]:
        identities["solo_matches_inner_products"] = report["solo"].get(
            "matches_character_inner_products", True
        )
    if wreath:
        chosen = ell if ell is not None else choose_ell(G)
        wreath_report = wreath_cover_bench(X, h1, h2, chosen)
        report["wreath"] = wreath_report
        identities["wreath_spectral_equals_group_verdict"] = wreath_report["agree"]
    expected_isospectral = report["weakly_conjugate"]
    must_hold = [
        identities["schreier_trace"] or not expected_isospectral,
        identities["schreier_trace_square"] or not expected_isospectral,
        identities["schreier_isospectral"] or not expected_isospectral,
        identities.get("solo_matches_inner_products", True),
        identities.get("wreath_spectral_equals_group_verdict", True),
    ]
    return {
        "report": report,
        "identities": identities,
        "all_identities_hold": all(must_hold),
    }


def run_table1(diff: bool = False) -> dict:
    rows = table1()
    mismatches = table1_diff(rows) if diff else []
    for row in rows:
        row.pop("stored", None)
    return {
        "rows": rows,
        "mismatches": mismatches,
        "all_match": all(row["matches"] for row in rows),
    }


def _selftest_checks(seed: int) -> dict:
    """A compact end-to-end sweep of the package's cross-checked claims."""
    rng = random.Random(seed)
    checks: dict[str, bool] = {}

    rows = table1()
    checks["table_rows_match"] = all(row["matches"] for row in rows)

    text = group_file_text("gassmann")
    G, h1, h2, _ = _two_subgroups(text)
    rep = weak_conjugacy(G, h1, h2)
    checks["gassmann_weakly_conjugate_not_conjugate"] = (
        rep.weakly_conjugate and not rep.conjugate
    )
    verdict = isometry_test(G, h1, h2)
    checks["gassmann_not_isometric"] = not verdict.equivalent

    s3_text = group_file_text("s3_pair")
    G3, a, b, _ = _two_subgroups(s3_text)
    checks["s3_pair_isometric"] = isometry_test(G3, a, b).equivalent

    sw = seifert_weber()
    checks["seifert_weber_traces"] = sw["trace_values_signed"] == [3, -1, 0, 1, -1, 2]
    checks["seifert_weber_order"] = sw["group"].order == 120

    _, wide_verdict = surface_action_character(G3, -6)
    checks["surface_verdict"] = wide_verdict

    X = VoltageGraph.bouquet(G3, G3.generator_indices())
    bench = verify_sunada_bench(G3, a, b, X)
    checks["s3_bench_isospectral"] = bench["schreier"]["isospectral"]
    checks["s3_bench_solo"] = bench["solo"]["solo_equalities"]

    ok = True
    for _ in range(10):
        h = G3.subgroup_from_indices([rng.randrange(G3.order)])
        chi = rng.choice(linear_characters(h))
        rho = induced_linear_rep(G3, h, chi)
        op = TwistedOperator(X, rho)
        ok = ok and kernel_multiplicity(op) == rho.inner_with_trivial()
    checks["random_kernel_multiplicities"] = ok

    module = graph_homology_module(X, 5)
    build = build_wreath_cover(X, a, 5, module=module)
    checks["wreath_cover_deck_conditions"] = (
        build["connected"]
        and build["deck_action_free_and_edge_preserving"]
        and build["quotient_is_group_cover"]
        and build["lift_conjugation_transports_fibers"]
    )
    return checks


def run_selftest(seed: int = DEFAULT_SEED) -> dict:
    checks = _selftest_checks(seed)
    return {"checks": checks, "passed": all(checks.values())}


# ---------------------------------------------------------------------------
# FastAPI wiring
# ---------------------------------------------------------------------------

app = FastAPI(
    title="coverspectra",
    description=(
        "Group-theoretic detection of cover equivalence with exact spectral "
        "verification on finite graph covers."
    ),
)


def _wrap(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except CoverSpectraError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except AssertionError as exc:
        raise HTTPException(
            status_code=500, detail=f"mathematical check failed: {exc}"
        ) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/examples")
def examples() -> dict:
    return {"named_pairs": sorted(NAMED_PAIRS)}


@app.post("/gassmann", response_model=GassmannResponse)
def gassmann_endpoint(req: GroupRequest):
    return _wrap(run_gassmann, req.group_text)


@app.post("/isometry", response_model=IsometryResponse)
def isometry_endpoint(req: IsometryRequest):
    return _wrap(run_isometry, req.group_text, ell=req.ell, pintonello=req.pintonello)


@app.post("/homwide", response_model=HomwideResponse)
def homwide_endpoint(req: HomwideRequest):
    return _wrap(run_homwide, req.group_text, req.module_text, budget=req.budget)


@app.post("/graph", response_model=GraphResponse)
def graph_endpoint(req: GraphRequest):
    return _wrap(
        run_graph,
        req.group_text,
        req.graph_text,
        solo=req.solo,
        wreath=req.wreath,
        ell=req.ell,
        tol=req.tol,
    )


@app.post("/table1", response_model=Table1Response)
def table1_endpoint(req: Table1Request):
    return _wrap(run_table1, diff=req.diff)


@app.post("/selftest", response_model=SelftestResponse)
def selftest_endpoint(req: SelftestRequest):
    return _wrap(run_selftest, seed=req.seed)
