"""
Command-line entry point: `lowestcell --config run.json` or `lowestcell --type A2 --task verify`.

Exit codes: 0 success, 1 a verification failed, 2 usage or configuration error, 3 the ball is too
small or the request is infeasible.
"""

import argparse
import json
import logging
import os
import sys

from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from lowestcell.affine_weyl import EXTENDED, NON_EXTENDED, CellDatum
from lowestcell.based_ring import BasedRing, JRingHomomorphism, gamma_agreement, product_law_check
from lowestcell.cell_property import verify_properties
from lowestcell.cells import LowestCell
from lowestcell.config import CELL_TASKS, TASKS, RunConfig, Task, config_from_dict, load_config
from lowestcell.exceptions import (
    ConfigurationError,
    DomainError,
    ResourceError,
    TruncationError,
    VerificationError,
)
from lowestcell.hecke import HeckeAlgebra
from lowestcell.kl_table import KLTable
from lowestcell.spectra import Spectra, TorusPoint, ScalarField, specialization_from_config, torus_grid, zeta_element

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_TRUNCATION = 3

# Random C-basis pairs on which φ is checked to be multiplicative.
PHI_PAIRS = 50


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="lowestcell",
        description="Compute and verify the lowest two-sided cell of an affine Weyl group with unequal parameters.",
    )
    parser.add_argument("--config", help="Path to a JSON run configuration.")
    parser.add_argument("--type", help="Cartan type such as A1, A2, C2 or G2 (overrides the configuration).")
    parser.add_argument("--mode", choices=[EXTENDED, NON_EXTENDED], help="Extended or non-extended affine Weyl group.")
    parser.add_argument("--task", action="append", choices=TASKS, help="Task to run; may be repeated.")
    parser.add_argument("--radius", type=int, help="Largest length for which the KL basis is computed.")
    parser.add_argument("--out", help="Directory for the JSON reports.")
    parser.add_argument("--threads", type=int, help="Worker threads.")
    parser.add_argument("--props", help="Comma-separated property ids for the verify task, or 'all'.")
    parser.add_argument("--check-gamma", action="store_true", help="Compare γ with tensor multiplicities (basedring).")
    parser.add_argument("--field", help="Target field of the specialisation: Q or a prime.")
    parser.add_argument("--q", help="Specialisation values of the Γ generators, e.g. '2' or '2,3'.")
    parser.add_argument("--torus", help="Torus point, e.g. '3,1/2'.")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="table", action="store_false", help="Print reports as JSON (default).")
    output.add_argument("--table", dest="table", action="store_true", help="Print reports as aligned text.")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log debugging output.")
    verbosity.add_argument("--quiet", action="store_true", help="Only log warnings and hide progress bars.")
    parser.set_defaults(table=False)
    return parser.parse_args(argv)


def build_config(args: argparse.Namespace) -> RunConfig:
    """
    Merges the configuration file with command-line overrides.
    """
    if args.config:
        config = load_config(args.config)
    elif args.type:
        config = config_from_dict({"type": args.type})
    else:
        raise ConfigurationError("give either --config or --type.", field="config")

    spectra = config.spectra
    if args.field is not None or args.q is not None or args.torus is not None:
        overrides = {"field": spectra.field, "q": list(spectra.q), "torus": list(spectra.torus), "grid": list(spectra.grid)}
        if args.field is not None:
            overrides["field"] = int(args.field) if args.field.isdigit() else args.field
        if args.q is not None:
            overrides["q"] = args.q
        if args.torus is not None:
            overrides["torus"] = args.torus
        document = config.to_dict()
        document["spectra"] = overrides
        spectra = config_from_dict(document).spectra

    options = {}
    if args.check_gamma:
        options["check_gamma"] = True
    tasks = tuple(Task(name, options) for name in args.task) if args.task else None
    return config.replace(
        type=args.type.upper() if args.type else None,
        mode=args.mode,
        radius=args.radius,
        output=args.out,
        threads=args.threads,
        tasks=tasks,
        props=tuple(p for p in args.props.split(",") if p) if args.props else None,
        spectra=spectra,
    )


def build_datum(config: RunConfig) -> CellDatum:
    datum = CellDatum(config.type, weights=config.weights, gamma_rank=config.gamma_rank, mode=config.mode)
    minimum = 2 * datum.length(datum.w0)
    if config.radius is not None and config.radius < minimum and any(t.name in CELL_TASKS for t in config.tasks):
        raise ConfigurationError(
            f"tasks on the lowest cell need radius ≥ 2·l(w0) = {minimum}, got {config.radius}.", field="radius"
        )
    return datum


def _check(identity: str, passed: bool, note: str = "") -> dict:
    entry = {"identity": identity, "verdict": "pass" if passed else "fail"}
    if note:
        entry["note"] = note
    return entry


# Tasks. Each returns a JSON report and whether every check passed.


def run_info(config: RunConfig, datum: CellDatum, table: Optional[KLTable], progress: bool) -> Tuple[dict, bool]:
    box = datum.box_elements()
    involutions = sorted(datum.product(w, datum.w0, datum.inverse(w)) for w in box)
    report = {
        "type": datum.root_datum.name,
        "mode": datum.mode,
        "weights": datum.weight_labels(),
        "conjugacy_classes": [sorted(f"s{i}" for i in c) for c in datum.conjugacy_classes()],
        "weyl_group_order": len(datum.weyl_group),
        "coxeter_number": datum.root_datum.coxeter_number,
        "length_w0": datum.length(datum.w0),
        "a": datum.weight_length(datum.w0).to_json(),
        "omega": [str(pi) for pi in datum.omega_elements],
        "box": [str(w) for w in box],
        "distinguished_involutions": [str(d) for d in involutions],
    }
    return report, True


def run_klbasis(config: RunConfig, datum: CellDatum, table: KLTable, progress: bool) -> Tuple[dict, bool]:
    algebra = table.algebra
    w0 = datum.w0
    q_w0 = algebra.q(w0)
    expected = algebra.zero()
    for u in range(len(datum.weyl_group)):
        y = datum.finite_element(u)
        expected = expected + algebra.T(y, algebra.q(y) * q_w0.bar())
    checks = [_check("C_w0 = q_w0^-1 Σ_{y∈W0} T_y", table.C(w0) == expected)]
    if 2 * datum.length(w0) <= table.radius:
        everything = range(1, datum.rank + 1)
        checks.append(_check("h_{w0,w0,w0} = q_w0^-1 Σ_{y∈W0} q_y^2", table.h(w0, w0, w0) == zeta_element(datum, everything)))
    report = {
        "radius": table.radius,
        "elements": len(table.elements()),
        "checks": checks,
        "basis": table.to_json(),
    }
    return report, all(c["verdict"] == "pass" for c in checks)


def run_xi(config: RunConfig, datum: CellDatum, table: KLTable, progress: bool) -> Tuple[dict, bool]:
    failures = []
    second_failures = []
    elements = datum.c0_elements(table.radius)
    for z, (w1, x, w2) in elements.items():
        try:
            residual = table.xi_verify(w1, x, w2, check_second=True)
        except VerificationError as e:
            second_failures.append({"element": str(z), "witness": [str(w1), list(x), str(w2)], "message": str(e)})
            residual = table.xi_verify(w1, x, w2, check_second=False)
        if residual:
            failures.append(str(z))
    report = {
        "radius": table.radius,
        "checked": len(elements),
        "checks": [
            _check("C_{w1 w0 p_x w2^-1} = E_w1 C_w0 S_x F_w2", not failures),
            _check("C_{w1 w0 p_x w2^-1} = C_{w1 w0 w2^-1} S_x", not second_failures),
        ],
        "failures": failures,
        "second_failures": second_failures,
    }
    return report, not failures and not second_failures


def run_verify(config: RunConfig, datum: CellDatum, table: KLTable, progress: bool) -> Tuple[dict, bool]:
    options = {}
    for task in config.tasks:
        if task.name == "verify":
            options = task.options
    reports = verify_properties(
        list(config.props),
        table,
        radius=options.get("ball"),
        sample_size=config.sample_size,
        seed=config.seed,
        threads=config.threads,
        progress=progress,
    )
    report = {"radius": table.radius, "properties": [r.to_json() for r in reports]}
    return report, all(r.passed for r in reports)


def run_basedring(config: RunConfig, datum: CellDatum, table: KLTable, progress: bool) -> Tuple[dict, bool]:
    cell = LowestCell(table)
    ring = BasedRing(datum, table)
    involutions = cell.distinguished_involutions()
    checks = [_check("Σ_{d∈D} t_d is the unit", ring.to_t(ring.unit()) == {d: 1 for d in involutions})]
    report: Dict[str, object] = {"radius": table.radius}

    pairs = [(u, v) for u in cell.elements() for v in cell.elements() if datum.length(u) + datum.length(v) <= table.radius]
    failing_pair = product_law_check(cell, pairs)
    checks.append(_check("t_u t_u' = Σ_z γ_{u,u',z^-1} t_z in Mat_B0(Z)", failing_pair is None))
    if failing_pair is not None:
        report["product_law_witness"] = [str(z) for z in failing_pair]

    check_gamma = any(t.options.get("check_gamma") for t in config.tasks if t.name == "basedring")
    if check_gamma:
        records = gamma_agreement(cell, table.radius, progress=progress)
        mismatches = [r for r in records if not r.agrees]
        checks.append(_check("γ_{u,u',u''} = m(x, x', x''*)", not mismatches))
        report["gamma"] = {
            "checked": len(records),
            "max_multiplicity": max((r.hecke for r in records), default=0),
            "triples": [r.to_json() for r in records if r.hecke or r.predicted],
        }

    hom = JRingHomomorphism(table)
    longest_d = max(datum.length(d) for d in involutions)
    budget = table.radius - longest_d
    if budget >= 0:
        ball = datum.enumerate_ball(budget)
        candidates = [(x, y) for x in ball for y in ball if datum.length(x) + datum.length(y) <= budget]
        rng = np.random.default_rng(config.seed)
        chosen = rng.choice(len(candidates), size=min(PHI_PAIRS, len(candidates)), replace=False)
        sample = [candidates[i] for i in sorted(chosen)]
        checks.append(_check("φ(C_x C_y) = φ(C_x) φ(C_y)", all(hom.is_multiplicative(x, y) for x, y in sample)))
        checks.append(_check("φ(1) is the unit", hom(table.algebra.one()) == hom.unit()))
        rank = hom.injectivity_check(budget, seed=config.seed, progress=progress)
        checks.append(_check("φ is injective on the ball", rank.full_rank))
        report["injectivity"] = rank.to_json()
        centre = [x for x in datum.dominant_translations(budget) if any(x)]
        checks.append(_check("φ(S_x) = S_x·Id", all(hom.is_central_image(x) for x in centre[:3])))
    else:
        report["note"] = f"φ checks skipped: the distinguished involutions reach length {longest_d}."
    report["checks"] = checks
    return report, all(c["verdict"] == "pass" for c in checks)


def run_spectra(config: RunConfig, datum: CellDatum, table: KLTable, progress: bool) -> Tuple[dict, bool]:
    settings = config.spectra
    field = ScalarField.parse(settings.field)
    specialization = specialization_from_config(settings.q, settings.field, datum.gamma_rank)
    spectra = Spectra(table, specialization)
    torus = TorusPoint.from_values(settings.torus or ["2"] * datum.rank, field)
    point = spectra.report(torus)

    grid = torus_grid(settings.grid, datum.rank, field)
    inconsistent = []
    det_mismatches = []
    for t in grid:
        attached = spectra.attached(t)
        if attached != spectra.first_row_nonzero(t) or attached != (spectra.dim_rho(t) > 0):
            inconsistent.append(t.to_json())
        if not spectra.det_rank_agree(t):
            det_mismatches.append(t.to_json())
    roots = spectra.det_roots(grid, progress=progress)
    checks = [
        _check("attached ⟺ C_w0 acts nonzero ⟺ dim ρ > 0", not inconsistent),
        _check("λ(det) ≠ 0 ⟺ dim ρ = |W0|", not det_mismatches),
    ]
    report = {
        **point.to_json(),
        "grid_points": len(grid),
        "det_roots": [t.to_json() for t in roots],
        "inconsistent_points": inconsistent,
        "det_rank_mismatches": det_mismatches,
        "checks": checks,
    }
    return report, not inconsistent and not det_mismatches


TASK_RUNNERS: Dict[str, Callable] = {
    "info": run_info,
    "klbasis": run_klbasis,
    "xi": run_xi,
    "verify": run_verify,
    "basedring": run_basedring,
    "spectra": run_spectra,
}


def _dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _format_table(name: str, report: dict) -> str:
    lines = [f"== {name} =="]
    width = max((len(k) for k in report), default=0)
    for key in sorted(report):
        value = report[key]
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            lines += ["  " + json.dumps(v, sort_keys=True, ensure_ascii=False) for v in value]
        elif isinstance(value, (dict, list)) and len(json.dumps(value)) > 100:
            lines.append(f"{key.ljust(width)}  ({len(value)} entries)")
        else:
            lines.append(f"{key.ljust(width)}  {json.dumps(value, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def run(config: RunConfig, progress: bool = True, table_output: bool = False) -> int:
    """
    Runs every configured task and writes one report per task to the output directory.

    Returns:
        int -- EXIT_OK, or EXIT_VERIFICATION when a check failed.
    """
    datum = build_datum(config)
    radius = config.radius if config.radius is not None else 2 * datum.length(datum.w0) + 2
    config = config.replace(radius=radius)
    cache_dir = os.path.join(config.cache, config.cache_key()) if config.cache else None

    table = None
    outputs: List[Tuple[str, str, bool]] = []
    for task in config.tasks:
        cached = os.path.join(cache_dir, f"{task.name}.json") if cache_dir else None
        if cached and os.path.exists(cached):
            with open(cached, "r", encoding="utf-8") as f:
                text = f.read()
            logger.info(f"Reusing cached report for {task.name}.")
            outputs.append((task.name, text, json.loads(text)["ok"]))
            continue
        if table is None and task.name != "info":
            table = KLTable(HeckeAlgebra(datum), radius, verify=config.verify, threads=config.threads, progress=progress)
        report, ok = TASK_RUNNERS[task.name](config, datum, table, progress)
        report = {"task": task.name, "config": config.to_dict(), "ok": ok, **report}
        text = _dump(report)
        if cached:
            os.makedirs(cache_dir, exist_ok=True)
            with open(cached, "w", encoding="utf-8") as f:
                f.write(text)
        outputs.append((task.name, text, ok))

    os.makedirs(config.output, exist_ok=True)
    for name, text, ok in outputs:
        with open(os.path.join(config.output, f"{name}.json"), "w", encoding="utf-8") as f:
            f.write(text)
        sys.stdout.write(_format_table(name, json.loads(text)) if table_output else text)
        if not ok:
            logger.warning(f"Task {name} reported a failed check.")
    return EXIT_OK if all(ok for _, _, ok in outputs) else EXIT_VERIFICATION


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        config = build_config(args)
        return run(config, progress=not args.quiet, table_output=args.table)
    except (ConfigurationError, DomainError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except VerificationError as e:
        logger.error(f"Verification failed: {e} (witness: {e.witness}).")
        return EXIT_VERIFICATION
    except (TruncationError, ResourceError) as e:
        logger.error(str(e))
        return EXIT_TRUNCATION


if __name__ == "__main__":
    sys.exit(main())
