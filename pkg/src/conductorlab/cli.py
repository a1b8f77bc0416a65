"""The ``conductor-lab`` command line tool.

Subcommand per computation kind, JSON in / JSON (or table) out.  Rationals
are serialized exactly, as ``"num/den"`` strings (bare integers stay JSON
numbers on input and output); nothing is ever rendered as a decimal.

Single runs read one payload with ``--input file.json`` (``-`` for stdin)::

    conductor-lab ctame --input graph.json
    conductor-lab quotsing tame --input point.json
    conductor-lab bcc wild-weak --input cover.json --output table

Batch mode reads a job file ``{"version": "1", "jobs": [{"kind": ...,
"label": ..., "payload": {...}}]}``; every payload is schema-checked before
any job runs, jobs are independent, and ``--parallel`` must not change the
output byte for byte::

    conductor-lab batch --jobs jobs.json --parallel

Exit codes: 0 all jobs ok, 1 at least one job errored, 2 usage or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import cover, dualgraph, ramification, singularity, tame
from .exactmath import SymMatrix


class SchemaError(ValueError):
    """Payload does not match the schema for its kind."""


class ParseError(ValueError):
    """Input is not valid JSON or not a valid job file."""


JOB_KINDS = (
    "graph",
    "ctame",
    "pipeline",
    "kodaira",
    "quotsing-tame",
    "quotsing-wild",
    "quotsing-resolve",
    "ramification",
    "bcc-tame-good",
    "bcc-wild-weak",
    "bcc-eval",
)


# ---------------------------------------------------------------------------
# schema helpers

def _expect(payload, context: str) -> dict:
    if not isinstance(payload, dict):
        raise SchemaError(f"{context}: payload must be an object")
    return payload


def _get_int(payload, key, context, minimum=None, default=None, required=True):
    if key not in payload:
        if required:
            raise SchemaError(f"{context}: missing field {key!r}")
        return default
    value = payload[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{context}: field {key!r} must be an integer")
    if minimum is not None and value < minimum:
        raise SchemaError(f"{context}: field {key!r} must be >= {minimum}")
    return value


def _get_str(payload, key, context, required=True, default=None):
    if key not in payload:
        if required:
            raise SchemaError(f"{context}: missing field {key!r}")
        return default
    value = payload[key]
    if not isinstance(value, str):
        raise SchemaError(f"{context}: field {key!r} must be a string")
    return value


def _get_list(payload, key, context, required=True, default=()):
    if key not in payload:
        if required:
            raise SchemaError(f"{context}: missing field {key!r}")
        return list(default)
    value = payload[key]
    if not isinstance(value, list):
        raise SchemaError(f"{context}: field {key!r} must be an array")
    return value


def _rational_in(value, context) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"{context}: booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{context}: bad rational {value!r}: {exc}") from exc
    if isinstance(value, float):
        raise SchemaError(f"{context}: floats are not accepted; "
                          "write rationals as \"num/den\"")
    raise SchemaError(f"{context}: expected an integer or \"num/den\" string")


def encode(value):
    """JSON-safe encoding with exact rationals."""
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    raise TypeError(f"cannot encode {type(value).__name__}")


# ---------------------------------------------------------------------------
# payload parsers (phase 1: schema validation, no computation)

def _unwrap_report(payload):
    # allow piping one command's report straight into the next
    if (isinstance(payload, dict) and "components" not in payload
            and "kodaira" not in payload and isinstance(payload.get("result"), dict)):
        return payload["result"]
    return payload


def _parse_graph_doc(payload, context) -> dualgraph.SncdGraph:
    payload = _expect(_unwrap_report(payload), context)
    comps = []
    for idx, item in enumerate(_get_list(payload, "components", context)):
        item = _expect(item, f"{context}.components[{idx}]")
        comps.append(dualgraph.Component(
            id=_get_str(item, "id", context),
            multiplicity=_get_int(item, "n", context, minimum=1),
            genus=_get_int(item, "g", context, minimum=0, default=0, required=False),
        ))
    edges = []
    for idx, pair in enumerate(_get_list(payload, "edges", context, required=False)):
        if not (isinstance(pair, list) and len(pair) == 2
                and all(isinstance(x, str) for x in pair)):
            raise SchemaError(f"{context}.edges[{idx}]: expected [\"a\", \"b\"]")
        edges.append((pair[0], pair[1]))
    flags = payload.get("flags", {})
    flags = _expect(flags, f"{context}.flags") if flags else {}
    index_one = bool(flags.get("index_one", False))
    try:
        return dualgraph.SncdGraph(tuple(comps), tuple(edges), index_one=index_one)
    except ValueError as exc:
        raise SchemaError(f"{context}: {exc}") from exc


def _parse_graph_or_kodaira(payload, context) -> dualgraph.SncdGraph:
    payload = _expect(_unwrap_report(payload), context)
    if "kodaira" in payload:
        return dualgraph.kodaira_catalog(_get_str(payload, "kodaira", context))
    return _parse_graph_doc(payload, context)


def _parse_kodaira(payload, context) -> str:
    payload = _expect(payload, context)
    label = _get_str(payload, "type", context)
    dualgraph.kodaira_catalog(label)  # reject unknown labels at schema time
    return label


def _parse_quotsing_tame(payload, context) -> singularity.CyclicSingularity:
    payload = _expect(payload, context)
    try:
        return singularity.CyclicSingularity(
            e=_get_int(payload, "e", context, minimum=2),
            r=_get_int(payload, "r", context, minimum=1),
        )
    except ValueError as exc:
        raise SchemaError(f"{context}: {exc}") from exc


def _parse_quotsing_wild(payload, context):
    payload = _expect(payload, context)
    if "e_p" in payload:
        try:
            return singularity.WeakWildSingularity(
                order=_get_int(payload, "e_p", context, minimum=2),
                swan=_get_int(payload, "sw", context, minimum=0),
            )
        except ValueError as exc:
            raise SchemaError(f"{context}: {exc}") from exc
    if "p" in payload:
        convention = _get_str(payload, "convention", context,
                              required=False, default="standard")
        try:
            return singularity.p_cyclic_wild_chart(
                p=_get_int(payload, "p", context, minimum=2),
                s=_get_int(payload, "s", context, minimum=1),
                r_plus=_get_int(payload, "r_plus", context, minimum=1),
                r_minus=_get_int(payload, "r_minus", context, minimum=1),
                convention=convention,
            )
        except ValueError as exc:
            raise SchemaError(f"{context}: {exc}") from exc
    raise SchemaError(f"{context}: supply either e_p/sw or p/s/r_plus/r_minus")


def _parse_quotsing_resolve(payload, context) -> singularity.ResolutionDatum:
    payload = _expect(payload, context)
    genera = _get_list(payload, "genera", context)
    rows = _get_list(payload, "intersection", context)
    matrix_rows = []
    for idx, row in enumerate(rows):
        if not isinstance(row, list):
            raise SchemaError(f"{context}.intersection[{idx}]: expected an array")
        matrix_rows.append([_rational_in(x, f"{context}.intersection[{idx}]") for x in row])
    try:
        return singularity.ResolutionDatum(
            genera=tuple(genera),
            intersection=SymMatrix(matrix_rows),
            p_g=_get_int(payload, "p_g", context, minimum=0, default=0, required=False),
            rational=bool(payload.get("rational", False)),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{context}: {exc}") from exc


def _parse_ramification(payload, context):
    payload = _expect(payload, context)
    sizes = _get_list(payload, "sizes", context)
    p = _get_int(payload, "p", context, minimum=2, required=False)
    try:
        filt = ramification.RamFiltration(tuple(sizes), residue_char=p)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{context}: {exc}") from exc
    rep = None
    if "rep" in payload:
        rep_payload = _expect(payload["rep"], f"{context}.rep")
        try:
            rep = ramification.RepFixedDims(
                dim=_get_int(rep_payload, "dim", context, minimum=0),
                fixed_dims=tuple(_get_list(rep_payload, "fixed_dims", context)),
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{context}: {exc}") from exc
    return filt, rep


def _parse_bcc_tame_good(payload, context) -> cover.TameCoverData:
    payload = _expect(payload, context)
    e = _get_int(payload, "e", context, minimum=2)
    branch = []
    for idx, item in enumerate(_get_list(payload, "branch", context, required=False)):
        item = _expect(item, f"{context}.branch[{idx}]")
        d = _get_int(item, "d", context, minimum=1)
        if e % d != 0 or e // d < 2:
            raise SchemaError(f"{context}.branch[{idx}]: orbit size {d} must "
                              f"properly divide e = {e}")
        try:
            sing = singularity.CyclicSingularity(
                e=e // d, r=_get_int(item, "r", context, minimum=1))
            branch.append(cover.TameBranchLocus(
                orbit_size=d,
                count=_get_int(item, "count", context, minimum=1),
                singularity=sing,
            ))
        except ValueError as exc:
            raise SchemaError(f"{context}.branch[{idx}]: {exc}") from exc
    try:
        return cover.TameCoverData(
            e=e,
            genus=_get_int(payload, "g", context, minimum=0),
            quotient_genus=_get_int(payload, "g_bar", context, minimum=0),
            branch=tuple(branch),
        )
    except ValueError as exc:
        raise SchemaError(f"{context}: {exc}") from exc


def _parse_bcc_wild_weak(payload, context) -> cover.WildCoverData:
    payload = _expect(payload, context)
    branch = []
    for idx, item in enumerate(_get_list(payload, "branch", context, required=False)):
        item = _expect(item, f"{context}.branch[{idx}]")
        sw_locals = _get_list(item, "sw_locals", context)
        count = _get_int(item, "count", context, minimum=1, required=False)
        if count is not None and count != len(sw_locals):
            raise SchemaError(f"{context}.branch[{idx}]: count {count} does not "
                              f"match {len(sw_locals)} sw_locals entries")
        try:
            branch.append(cover.WildBranchLocus(
                type_index=_get_int(item, "i", context, minimum=0),
                swan_locals=tuple(sw_locals),
            ))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{context}.branch[{idx}]: {exc}") from exc
    ordinary = None
    if "ordinary" in payload:
        ord_payload = _expect(payload["ordinary"], f"{context}.ordinary")
        try:
            ordinary = cover.OrdinaryData(
                p_rank=_get_int(ord_payload, "gamma", context, minimum=0),
                quotient_p_rank=_get_int(ord_payload, "gamma_bar", context, minimum=0),
                small_orbit_sizes=tuple(
                    _get_list(ord_payload, "small_orbits", context, required=False)),
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{context}.ordinary: {exc}") from exc
    try:
        return cover.WildCoverData(
            p=_get_int(payload, "p", context, minimum=2),
            r=_get_int(payload, "r", context, minimum=1),
            genus=_get_int(payload, "g", context, minimum=0),
            quotient_genus=_get_int(payload, "g_bar", context, minimum=0),
            sw_extension=_get_int(payload, "sw_ext", context, minimum=0),
            branch=tuple(branch),
            ordinary=ordinary,
        )
    except ValueError as exc:
        raise SchemaError(f"{context}: {exc}") from exc


def _parse_bcc_eval(payload, context):
    payload = _expect(payload, context)
    variant = _get_int(payload, "variant", context)
    if variant not in (1, 2, 3):
        raise SchemaError(f"{context}: variant must be 1, 2 or 3")
    terms_payload = _expect(payload.get("terms", {}), f"{context}.terms")
    terms = {k: _rational_in(v, f"{context}.terms.{k}") for k, v in terms_payload.items()}
    return variant, terms


PARSERS = {
    "graph": _parse_graph_doc,
    "ctame": _parse_graph_or_kodaira,
    "pipeline": _parse_graph_or_kodaira,
    "kodaira": _parse_kodaira,
    "quotsing-tame": _parse_quotsing_tame,
    "quotsing-wild": _parse_quotsing_wild,
    "quotsing-resolve": _parse_quotsing_resolve,
    "ramification": _parse_ramification,
    "bcc-tame-good": _parse_bcc_tame_good,
    "bcc-wild-weak": _parse_bcc_wild_weak,
    "bcc-eval": _parse_bcc_eval,
}


# ---------------------------------------------------------------------------
# runners (phase 2: computation on parsed objects)

def _graph_doc(graph: dualgraph.SncdGraph) -> dict:
    return {
        "components": [
            {"id": c.id, "n": c.multiplicity, "g": c.genus} for c in graph.components
        ],
        "edges": [[a, b] for a, b in graph.edges],
        "flags": {"index_one": graph.index_one},
    }


def _invariants_doc(inv: dualgraph.GraphInvariants) -> dict:
    return {
        "num_components": inv.num_components,
        "num_nodes": inv.num_nodes,
        "betti1": inv.betti1,
        "virtual_nodes": encode(inv.virtual_nodes),
        "r_minus_e": encode(inv.r_minus_e),
        "chi_generic": inv.chi_generic,
        "chi_special": inv.chi_special,
        "genus": inv.genus,
        "abelian_rank": inv.abelian_rank,
        "toric_rank": inv.toric_rank,
        "unipotent_rank": inv.unipotent_rank,
        "art_tame": inv.art_tame,
        "self_intersections": {k: inv.self_intersections[k]
                               for k in sorted(inv.self_intersections)},
    }


def _run_graph(graph):
    problems = dualgraph.validate(graph)
    if problems:
        return (
            {"valid": False,
             "diagnostics": [{"code": d.code, "message": d.message} for d in problems]},
            ["well-formedness rules of the labelled dual graph"],
        )
    return (
        {"valid": True, "diagnostics": [], "invariants": _invariants_doc(dualgraph.invariants(graph))},
        ["chi(special) = sum chi(E_i) - #edges",
         "chi(generic) = sum n_i chi(E_i minus nodes)",
         "art_tame = chi(generic) - chi(special) = -2u - #edges",
         "R = (1/3) sum (n^2 + n'^2 + gcd^2)/(n n')"],
    )


def _run_ctame(graph):
    value = tame.c_tame(graph)
    return (
        {"c_tame": encode(value)},
        ["c_tame = -(art_tame + R)/4 = u/2 - (R - E)/4, both evaluated"],
    )


def _run_pipeline(graph):
    terms = tame.pipeline_terms(graph)
    return (
        {
            "gamma_term_over_e": encode(terms.gamma_term_over_e),
            "art_prime_over_e": encode(terms.art_prime_over_e),
            "art_base": terms.art_base,
            "c": encode(terms.c_result),
        },
        ["-12c = (Gamma^2 + 2 Gamma.omega)/e - Art'/e + art, checked against "
         "the closed form"],
    )


def _run_kodaira(label):
    graph = dualgraph.kodaira_catalog(label)
    return (_graph_doc(graph), ["built-in minimal normal-crossings configurations"])


def _run_quotsing_tame(sing):
    numbers = singularity.tame_cyclic(sing)
    return (
        {
            "e": sing.e,
            "r": sing.r,
            "expansion": list(numbers.expansion.terms),
            "chain_self_intersections": [-a for a in numbers.expansion.terms],
            "mu": encode(numbers.mu_closed),
            "mu_tilde": encode(numbers.mu_tilde),
            "mu_solver": encode(numbers.mu_solver),
        },
        ["mu = 3l - (r/e + sum a_i + r'/e) + 2(1 - 1/e), cross-checked by the "
         "adjunction solver on the resolution chain"],
    )


def _run_quotsing_wild(parsed):
    if isinstance(parsed, singularity.WeakWildSingularity):
        return (
            {"order": parsed.order, "sw": parsed.swan,
             "mu": encode(singularity.weak_wild_milnor(parsed))},
            ["mu = 4 (1 - 1/q + sw/q) for a weakly ramified wild quotient point"],
        )
    chart = parsed
    return (
        {
            "p": chart.p,
            "s": chart.s,
            "alpha": chart.alpha,
            "lambda": encode(chart.lam),
            "convention": chart.convention,
            "plus_chain": list(chart.plus_expansion.terms),
            "minus_chain": list(chart.minus_expansion.terms),
            "k": {str(i): encode(chart.k[i]) for i in sorted(chart.k)},
            "y": {str(j): encode(chart.y[j]) for j in sorted(chart.y)},
            "mu_expected": encode(chart.mu_expected),
            "sw": chart.swan,
        },
        ["x_i = (p P_i + lambda r_i)/p^2, k_i = x_i - 1, "
         "y_j = (alpha - j + 1)/alpha k_0; mu_expected = 4s(1 - 1/p)"],
    )


def _run_quotsing_resolve(datum):
    solved = singularity.discrepancy_solve(datum)
    numbers = singularity.milnor_nu(datum)
    return (
        {
            "coefficients": [encode(c) for c in solved.coefficients],
            "gamma_sq": encode(solved.gamma_sq),
            "mu": encode(numbers.mu),
            "nu": encode(numbers.nu),
        },
        ["Gamma solves M k = (2 g_i - 2 - M_ii); mu = 12 p_g + Gamma^2 "
         "- sum 2 g_i - b1 + V"],
    )


def _run_ramification(parsed):
    filt, rep = parsed
    ext = ramification.swan_extension(filt)
    result = {"sw": ext.sw, "different_exponent": ext.different_exponent}
    notes = ["sw = sum_{i>=1}(|G_i| - 1); different exponent e - 1 + sw"]
    if rep is not None:
        conductors = ramification.swan_artin_rep(filt, rep)
        result["rep"] = {"swan": encode(conductors.swan), "artin": encode(conductors.artin)}
        notes.append("Sw(V) = sum dim(V/V^{G_i})/[G:G_i]; "
                     "Art(V) = dim V - dim V^G + Sw(V)")
    return result, notes


def _report_doc(report: cover.ConductorReport) -> dict:
    return {
        "c_tame": encode(report.c_tame),
        "c_wild": encode(report.c_wild),
        "c": encode(report.c_total),
        "u": report.unipotent_rank,
        "terms": {t.name: encode(t.value) for t in report.terms},
    }


def _run_bcc_tame_good(data):
    report = cover.bcc_tame_good(data)
    return (
        _report_doc(report),
        [t.note for t in report.terms],
    )


def _run_bcc_wild_weak(data):
    report = cover.bcc_wild_weak(data)
    result = _report_doc(report)
    if data.ordinary is not None:
        ds = cover.ds_validate(data)
        result["ds"] = {
            "diagnostics": [{"code": d.code, "message": d.message} for d in ds],
            "ordinary_implies_weakly_ramified":
                cover.ordinary_implies_weakly_ramified(data),
        }
    return (result, [t.note for t in report.terms])


def _run_bcc_eval(parsed):
    variant, terms = parsed
    value = cover.bcc_formula_eval(variant, terms)
    return ({"variant": variant, "c": encode(value)},
            [f"general conductor formula, variant {variant}"])


RUNNERS = {
    "graph": _run_graph,
    "ctame": _run_ctame,
    "pipeline": _run_pipeline,
    "kodaira": _run_kodaira,
    "quotsing-tame": _run_quotsing_tame,
    "quotsing-wild": _run_quotsing_wild,
    "quotsing-resolve": _run_quotsing_resolve,
    "ramification": _run_ramification,
    "bcc-tame-good": _run_bcc_tame_good,
    "bcc-wild-weak": _run_bcc_wild_weak,
    "bcc-eval": _run_bcc_eval,
}


# ---------------------------------------------------------------------------
# job execution

def run_job(kind: str, payload, label: str = "") -> dict:
    """Run one job; errors become structured entries, never exceptions."""
    entry: dict = {"label": label, "kind": kind}
    if kind not in PARSERS:
        entry["status"] = "error"
        entry["error"] = {"type": "SchemaError", "message": f"unknown kind {kind!r}"}
        return entry
    try:
        parsed = PARSERS[kind](payload, context=kind)
    except SchemaError as exc:
        entry["status"] = "error"
        entry["error"] = {"type": "SchemaError", "message": str(exc)}
        return entry
    return _execute(entry, kind, parsed)


def _execute(entry: dict, kind: str, parsed) -> dict:
    try:
        result, provenance = RUNNERS[kind](parsed)
    except Exception as exc:  # structured error reports, never crashes
        entry["status"] = "error"
        entry["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return entry
    entry["status"] = "ok"
    entry["result"] = result
    entry["provenance"] = provenance
    return entry


def batch(jobfile: dict, parallel: bool = False) -> dict:
    """Run a job file; the report is independent of ``parallel``."""
    if not isinstance(jobfile, dict):
        raise ParseError("job file must be a JSON object")
    version = jobfile.get("version", "1")
    if version != "1":
        raise ParseError(f"unsupported job file version {version!r}")
    jobs = jobfile.get("jobs", [])
    if not isinstance(jobs, list):
        raise ParseError("jobs must be an array")

    warnings: list[str] = []
    seen: set[str] = set()
    prepared = []
    for idx, job in enumerate(jobs):
        if not isinstance(job, dict):
            raise ParseError(f"jobs[{idx}] must be an object")
        kind = job.get("kind")
        label = job.get("label", f"job{idx}")
        if not isinstance(label, str):
            raise ParseError(f"jobs[{idx}]: label must be a string")
        if label in seen:
            warnings.append(f"duplicate label {label!r}; both jobs run")
        seen.add(label)
        entry: dict = {"label": label, "kind": kind}
        if kind not in PARSERS:
            entry["status"] = "error"
            entry["error"] = {"type": "SchemaError",
                              "message": f"unknown kind {kind!r}"}
            prepared.append(("done", entry, None))
            continue
        # schema pass: every payload is validated before any job runs
        try:
            parsed = PARSERS[kind](job.get("payload", {}), context=f"{label}/{kind}")
        except SchemaError as exc:
            entry["status"] = "error"
            entry["error"] = {"type": "SchemaError", "message": str(exc)}
            prepared.append(("done", entry, None))
            continue
        prepared.append(("run", entry, parsed))

    def finish(item):
        state, entry, parsed = item
        if state == "done":
            return entry
        return _execute(entry, entry["kind"], parsed)

    if parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(finish, prepared))
    else:
        results = [finish(item) for item in prepared]

    ok = sum(1 for r in results if r["status"] == "ok")
    report = {
        "version": "1",
        "jobs": results,
        "summary": {"total": len(results), "ok": ok, "errors": len(results) - ok},
    }
    if warnings:
        report["warnings"] = warnings
    return report


# ---------------------------------------------------------------------------
# I/O and entry point

def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path!r}: {exc}") from exc


def _emit(doc: dict, output: str) -> None:
    if output == "json":
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        for line in _table_lines(doc, indent=0):
            sys.stdout.write(line + "\n")


def _table_lines(value, indent: int) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_table_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_table_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", default="-", metavar="FILE",
                        help="payload JSON file, or - for stdin (default)")
    parser.add_argument("--output", choices=("json", "table"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conductor-lab",
        description="exact invariants of degenerating curves",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, kind in (
        ("graph", "graph"),
        ("ctame", "ctame"),
        ("pipeline", "pipeline"),
        ("kodaira", "kodaira"),
        ("ramification", "ramification"),
    ):
        p = sub.add_parser(name, help=f"run a {kind} payload")
        p.set_defaults(kind=kind)
        _add_common(p)

    quotsing = sub.add_parser("quotsing", help="quotient-singularity invariants")
    qsub = quotsing.add_subparsers(dest="subcommand", required=True)
    for name, kind in (("tame", "quotsing-tame"), ("wild", "quotsing-wild"),
                       ("resolve", "quotsing-resolve")):
        p = qsub.add_parser(name)
        p.set_defaults(kind=kind)
        _add_common(p)

    bcc = sub.add_parser("bcc", help="base-change conductor engines")
    bsub = bcc.add_subparsers(dest="subcommand", required=True)
    for name, kind in (("tame-good", "bcc-tame-good"), ("wild-weak", "bcc-wild-weak"),
                       ("eval", "bcc-eval")):
        p = bsub.add_parser(name)
        p.set_defaults(kind=kind)
        _add_common(p)

    batch_parser = sub.add_parser("batch", help="run a job file")
    batch_parser.add_argument("--jobs", required=True, metavar="FILE",
                              help="job file JSON, or - for stdin")
    batch_parser.add_argument("--parallel", action="store_true",
                              help="run jobs concurrently (output is identical)")
    batch_parser.add_argument("--output", choices=("json", "table"), default="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "batch":
            report = batch(_read_json(args.jobs), parallel=args.parallel)
            _emit(report, args.output)
            return 0 if report["summary"]["errors"] == 0 else 1
        payload = _read_json(args.input)
        entry = run_job(args.kind, payload, label=args.kind)
        _emit(entry, args.output)
        return 0 if entry["status"] == "ok" else 1
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
