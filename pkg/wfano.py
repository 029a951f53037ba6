import argparse
import json
import logging
import sys

import autgroup
import cylinders
from ColorLogger import enable_color_logging
from config import ConfigError, load_config
from exactalg import PolynomialError, parse_poly
from famenum import (DatasetError, family_by_number, instantiate, irrational_families,
                     parse_params, search_families, spade_families, use_dataset)
from intlattice import LatticeError
from logging_pool import LoggingPool
from quasismooth import QuasiSmoothError, member_quasismooth
from wps import WeightSystem, WpsError, fano_index

logger = logging.getLogger(__name__)

__version__ = "1.0.0"
REPORT_SCHEMA = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2

INPUT_ERRORS = (PolynomialError, DatasetError, ConfigError, WpsError, LatticeError, QuasiSmoothError,
                autgroup.UnsupportedFamilyError, autgroup.NotQuasiSmoothMemberError,
                cylinders.UnsupportedFamilyError, cylinders.NotQuasiSmoothMemberError)

PASS = "PASS"
FAIL = "FAIL"


class Settings:
    """Computation parameters: the config file with command-line overrides applied."""

    def __init__(self, config, args=None):
        self.max_weight = config["enumeration"]["max_weight"]
        self.max_degree = config["enumeration"]["max_degree"]
        self.processes = config["enumeration"]["processes"]
        self.seed = config["quasismooth"]["seed"]
        self.primes = config["quasismooth"]["primes"]
        self.prime_bits = config["quasismooth"]["prime_bits"]
        self.epsilon = config["stabilizer"]["epsilon"]
        self.precision = config["stabilizer"]["precision"]
        self.dataset = config["dataset"]["path"]
        for name in ("max_weight", "max_degree", "processes", "seed"):
            value = getattr(args, name, None)
            if value is not None:
                setattr(self, name, value)


def weights_argument(text):
    try:
        weights = [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("weights are five integers separated by commas, got `{}`".format(text))
    if len(weights) != 5:
        raise argparse.ArgumentTypeError("expected five weights, got {}".format(len(weights)))
    return weights


def envelope(command, inputs, results, diff=None):
    data = {"schema": REPORT_SCHEMA, "tool": "wfano", "version": __version__, "command": command,
            "input": inputs, "results": results}
    if diff is not None:
        data["diff"] = diff
    return data


def dump(data):
    return json.dumps(data, sort_keys=True, indent=2)


def check(family_no, field, expected, computed):
    return {"family_no": family_no, "field": field, "expected": expected, "computed": computed,
            "status": PASS if expected == computed else FAIL}


def group_check(family_no, case, finite_part):
    c = check(family_no, "W ({})".format(case.description), str(case.group), str(finite_part))
    c["status"] = PASS if finite_part.matches(case.group) else FAIL
    return c


def failures(checks):
    return [c for c in checks if c["status"] == FAIL]


def describe_check(c):
    return "No.{} {}: expected {}, computed {}".format(c["family_no"], c["field"], c["expected"], c["computed"])


def structure_cells(structure):
    return {"dim_aut": structure.dim_aut,
            "unipotent_dim": structure.unipotent_dim,
            "torus_rank": None if structure.nonsolvable else structure.torus_rank,
            "nonsolvable": structure.nonsolvable,
            "reductive": structure.reductive}


def table_one_cells(ws, cylinder, structure):
    """Table 1 columns computed for one member: cylinders and Aut0."""
    a3 = cylinder.a3 == cylinders.A3Verdict.YES
    cells = {"fano_index": fano_index(ws),
             "a2_cylinder": cylinder.a2_cylinder is not None,
             "contains_a3": cylinder.a3,
             "curve_genus": cylinder.curves[0].genus if cylinder.curves else None,
             "ga3_structure": a3,
             "heisenberg_structure": a3 and structure.nonsolvable}
    cells.update(structure_cells(structure))
    return cells


def table_one_expected(record):
    e = record.expected
    return {"fano_index": record.fano_index,
            "a2_cylinder": True,
            "contains_a3": cylinders.A3Verdict.YES if e.contains_a3 else cylinders.A3Verdict.NO,
            "curve_genus": e.curve_genus,
            "ga3_structure": e.ga3_structure,
            "heisenberg_structure": e.heisenberg_structure,
            "dim_aut": e.dim_aut,
            "unipotent_dim": e.unipotent_dim,
            "torus_rank": e.torus_rank,
            "nonsolvable": e.nonsolvable,
            "reductive": e.reductive}


def compare(family_no, expected, computed):
    return [check(family_no, field, expected[field], computed[field]) for field in sorted(expected)]


def table_one_row(family_no, settings):
    use_dataset(settings.dataset)
    record = family_by_number(family_no)
    F = instantiate(record)
    cylinder = cylinders.contains_a3(record.ws, F, seed=settings.seed)
    structure = autgroup.connected_structure(record.ws, F)
    computed = table_one_cells(record.ws, cylinder, structure)
    logger.info("No.{}: A3 {}, Aut0 {}".format(family_no, cylinder.a3, structure))
    return {"family_no": family_no, "weights": list(record.ws.weights), "degree": record.ws.degree,
            "computed": computed, "checks": compare(family_no, table_one_expected(record), computed)}


def table_two_row(family_no, settings):
    use_dataset(settings.dataset)
    record = family_by_number(family_no)
    cases = []
    checks = []
    for case in record.expected.finite_parts:
        F = instantiate(record, case.params, case.poly)
        try:
            aut = autgroup.full_aut(record.ws, F, shape=case.shape or record.shape, seed=settings.seed,
                                    eps=settings.epsilon, precision=settings.precision)
        except autgroup.NotQuasiSmoothMemberError as e:
            logger.error("No.{} case `{}`: {}".format(family_no, case.description, e))
            c = check(family_no, "W ({})".format(case.description), str(case.group), "not quasi-smooth")
            aut0 = None
        else:
            c = group_check(family_no, case, aut.finite_part)
            aut0 = str(aut.structure)
        checks.append(c)
        cases.append({"case": case.description, "polynomial": str(F), "expected": c["expected"],
                      "computed": c["computed"], "aut0": aut0, "status": c["status"]})
    return {"family_no": family_no, "cases": cases, "checks": checks}


def run_rows(task, settings):
    numbers = [record.family_no for record in spade_families()]
    if settings.processes > 1:
        with LoggingPool(settings.processes) as pool:
            return pool.starmap_ordered(task, [(no, settings) for no in numbers])
    return [task(no, settings) for no in numbers]


def cmd_report(args, settings):
    task = table_one_row if args.table == 1 else table_two_row
    rows = run_rows(task, settings)
    checks = [c for row in rows for c in row["checks"]]
    failed = failures(checks)
    failed_rows = {c["family_no"] for c in failed}
    summary = {"table": args.table, "rows": len(rows), "rows_passed": len(rows) - len(failed_rows),
               "checks": len(checks), "checks_failed": len(failed)}
    if args.json:
        print(dump(envelope("report", {"table": args.table, "seed": settings.seed}, {"rows": rows, "summary": summary},
                            checks)))
    else:
        for row in rows:
            bad = [c for c in failed if c["family_no"] == row["family_no"]]
            print("No.{} {}".format(row["family_no"], FAIL if bad else PASS))
            for c in bad:
                print("    " + describe_check(c))
        print("Table {}: {}/{} rows PASS".format(args.table, summary["rows_passed"], summary["rows"]))
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_enumerate(args, settings):
    records, hits = search_families(settings.max_weight, settings.max_degree, settings.processes)
    if hits:
        logger.warning("Families on the search boundary (max weight {}, max degree {}): {}".format(
            settings.max_weight, settings.max_degree, ", ".join(str(r) for r in hits)))
    if args.index is not None:
        records = [r for r in records if r.fano_index == args.index]
    if args.json:
        inputs = {"max_weight": settings.max_weight, "max_degree": settings.max_degree, "index": args.index}
        print(dump(envelope("enumerate", inputs, {"families": [r.to_json() for r in records], "count": len(records),
                                                  "boundary_hits": [r.to_json() for r in hits]})))
    else:
        for r in records:
            label = "No.{}".format(r.family_no) if r.family_no is not None else ""
            weights = ",".join(map(str, r.ws.weights))
            print("{:>7} {:>3} {:>4}  P({})".format(label, r.fano_index, r.ws.degree, weights))
        print("{} families".format(len(records)))
    return EXIT_MISMATCH if hits else EXIT_OK


def print_family_text(record, F, verdict, cylinder, aut, checks):
    print(record)
    print("F = {}".format(F))
    print("quasi-smoothness: {}".format(verdict))
    if cylinder is None:
        return
    print(cylinder)
    print("Aut(X) = {}".format(aut))
    for note in aut.notes:
        print("    {}".format(note))
    for c in checks:
        print("{} {}".format(c["status"], describe_check(c)))


def cmd_family(args, settings):
    irrational = {family.family_no: family for family in irrational_families()}
    if args.no in irrational:
        family = irrational[args.no]
        if args.json:
            print(dump(envelope("family", {"family_no": args.no},
                                {"irrational": {"tag": family.tag, "name": family.name}})))
        else:
            print(family)
        return EXIT_OK

    record = family_by_number(args.no)
    params = parse_params(args.param)
    F = instantiate(record, params, args.poly)
    verdict = member_quasismooth(record.ws, F, seed=settings.seed, primes=settings.primes,
                                 prime_bits=settings.prime_bits)
    inputs = {"family_no": record.family_no, "weights": list(record.ws.weights), "degree": record.ws.degree,
              "polynomial": str(F), "seed": settings.seed}
    results = {"fano_index": record.fano_index, "quasismooth": verdict.status,
               "quasismooth_witness": list(verdict.witness) if verdict.witness else None,
               "quasismooth_confidence": verdict.confidence}
    if not verdict.is_quasi_smooth:
        logger.error("No.{}: {} is not quasi-smooth ({}); classification skipped".format(record.family_no, F,
                                                                                          verdict))
        if args.json:
            print(dump(envelope("family", inputs, results)))
        else:
            print_family_text(record, F, verdict, None, None, [])
        return EXIT_INPUT

    case = record.case_for(params) if args.poly is None else None
    cylinder = cylinders.contains_a3(record.ws, F, seed=settings.seed)
    aut = autgroup.full_aut(record.ws, F, seed=settings.seed, eps=settings.epsilon,
                            precision=settings.precision)
    results.update({"cylinders": cylinder.to_json(), "aut": aut.to_json()})

    checks = []
    if args.poly is None and not params:
        checks = compare(record.family_no, table_one_expected(record),
                         table_one_cells(record.ws, cylinder, aut.structure))
    if case is not None:
        checks.append(group_check(record.family_no, case, aut.finite_part))

    if args.json:
        print(dump(envelope("family", inputs, results, checks)))
    else:
        print_family_text(record, F, verdict, cylinder, aut, checks)
    return EXIT_MISMATCH if failures(checks) else EXIT_OK


def member_from_args(args):
    ws = WeightSystem(args.weights, args.degree)
    return ws, parse_poly(args.poly, ws.variables())


def cmd_aut(args, settings):
    ws, F = member_from_args(args)
    aut = autgroup.full_aut(ws, F, seed=settings.seed, eps=settings.epsilon, precision=settings.precision)
    if args.json:
        inputs = {"weights": list(ws.weights), "degree": ws.degree, "polynomial": str(F), "seed": settings.seed}
        print(dump(envelope("aut", inputs, aut.to_json())))
    else:
        print("Aut(X) = {}".format(aut))
        for note in aut.notes:
            print("    {}".format(note))
    return EXIT_OK


def cmd_cylinder(args, settings):
    ws, F = member_from_args(args)
    report = cylinders.contains_a3(ws, F, seed=settings.seed)
    if args.json:
        inputs = {"weights": list(ws.weights), "degree": ws.degree, "polynomial": str(F), "seed": settings.seed}
        print(dump(envelope("cylinder", inputs, report.to_json())))
    else:
        print(report)
    return EXIT_OK


def cmd_irrational(args, settings):
    families = irrational_families()
    if args.json:
        print(dump(envelope("irrational", {}, {"families": [{"family_no": f.family_no, "tag": f.tag, "name": f.name}
                                                            for f in families]})))
    else:
        for family in families:
            print(family)
    return EXIT_OK


def intro():
    return r"""
    .    ___
    .   /   \   wfano %s
    .  | P^4 |
    .   \___/   Cylinders and automorphisms of weighted Fano threefolds
    """ % __version__


def build_parser():
    parser = argparse.ArgumentParser(prog="wfano",
                                     description="Classify quasi-smooth weighted Fano hypersurface threefolds")
    parser.add_argument('-v', action='store_true', help='Verbose output. Changes log level from INFO to DEBUG.')
    parser.add_argument('--config', help='Specify a configuration file (defaults to ./config.yml, '
                                          'then the shipped config.yml.default)')
    parser.add_argument('-l', '--logfile', help="Log file to append logs to.", default=None)
    commands = parser.add_subparsers(dest="command", required=True)

    enumerate_parser = commands.add_parser("enumerate", help="List the families within the search bounds.")
    enumerate_parser.add_argument("--max-weight", dest="max_weight", type=int)
    enumerate_parser.add_argument("--max-degree", dest="max_degree", type=int)
    enumerate_parser.add_argument("--index", type=int, help="Only families of this Fano index.")
    enumerate_parser.add_argument("--processes", type=int)
    enumerate_parser.add_argument("--json", action="store_true")
    enumerate_parser.set_defaults(handler=cmd_enumerate)

    family_parser = commands.add_parser("family", help="Classify a member of a family from the dataset.")
    family_parser.add_argument("no", type=int)
    family_parser.add_argument("--poly", help="The member's polynomial instead of the normal form.")
    family_parser.add_argument("--param", action="append", default=[], help="Normal form parameter, name=value.")
    family_parser.add_argument("--seed", type=int)
    family_parser.add_argument("--json", action="store_true")
    family_parser.set_defaults(handler=cmd_family)

    for name, handler, text in (("aut", cmd_aut, "Compute the automorphism group of a member."),
                                ("cylinder", cmd_cylinder, "Decide the cylinders of a member.")):
        member_parser = commands.add_parser(name, help=text)
        member_parser.add_argument("--weights", type=weights_argument, required=True, help="a0,a1,a2,a3,a4")
        member_parser.add_argument("--degree", type=int, required=True)
        member_parser.add_argument("--poly", required=True)
        member_parser.add_argument("--seed", type=int)
        member_parser.add_argument("--json", action="store_true")
        member_parser.set_defaults(handler=handler)

    report_parser = commands.add_parser("report", help="Recompute a reference table and diff it.")
    report_parser.add_argument("--table", type=int, choices=(1, 2), required=True)
    report_parser.add_argument("--processes", type=int)
    report_parser.add_argument("--seed", type=int)
    report_parser.add_argument("--json", action="store_true")
    report_parser.set_defaults(handler=cmd_report)

    irrational_parser = commands.add_parser("irrational", help="List the families known not to be rational.")
    irrational_parser.add_argument("--json", action="store_true")
    irrational_parser.set_defaults(handler=cmd_irrational)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging_level = logging.DEBUG if args.v else logging.INFO
    logging.basicConfig(level=logging_level, filename=args.logfile,
                        format="%(asctime)-15s: %(message)s")
    enable_color_logging(debug_lvl=logging_level)
    logger.info(intro())
    try:
        settings = Settings(load_config(args.config), args)
        use_dataset(settings.dataset)
        return args.handler(args, settings)
    except INPUT_ERRORS as e:
        logger.error(str(e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
