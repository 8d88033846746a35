"""
Batch front end.

.. code-block:: text

    usage: kemmer [-v | -q] <subcommand> ...

    positional arguments:
      {verify,spectrum,currents,report}
        verify              Run exact identity suites
        spectrum            Solve Landau level spectra
        currents            Check conserved currents of free superpositions
        report              Summarise report files

Configuration is a JSON object. Rationals are ``[num, den]`` pairs, plain
integers are accepted too:

.. code-block:: json

    {
        "spins": [0, 1],
        "identities": ["1.2", "5.4", "6.1"],
        "fields": [{"kind": "uniform-B", "B": [1, 2]}, "zero"],
        "m": 1,
        "degree": 3
    }

Exit status is 0 when everything passed, 1 on a verification or tolerance
failure and 2 on a usage or configuration error.
"""

import argparse
import csv
import dataclasses
import json
import logging
import sys
import time

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from kemmer import (
    ConfigError,
    FieldError,
    NormError,
    RouteDisagreementError,
    SpectrumError,
    __version__,
)
from kemmer import algebra, currents, operators, reduction, spectra
from kemmer.algebra import IdentityReport, build_representation
from kemmer.fields import KINDS, is_zero_field, make_field, shipped_fields

__all__ = ["RunConfig", "CATALOGUE", "Kemmer", "main", "entry"]

logger = logging.getLogger(__name__)

SCHEMA = 1

PROFILE_COLUMNS = ("spin", "current", "t", "x", "y", "z", "c0", "c1", "c2", "c3")


def _fraction(value, key):
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        if value[1] == 0:
            raise ConfigError(f"{key}: zero denominator")
        return Fraction(*value)
    raise ConfigError(f"{key}: expected an integer or a [num, den] pair, got {value!r}")


def _integer(value, key, minimum=0):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(f"{key}: expected an integer >= {minimum}, got {value!r}")
    return value


def _number(value, key):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
        raise ConfigError(f"{key}: expected a positive number, got {value!r}")
    return float(value)


def _plain(value):
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


@dataclasses.dataclass
class RunConfig:
    """Settings shared by every subcommand.

    An empty ``identities`` selects the whole catalogue; ``fields`` entries
    are either field kinds, ``"shipped"`` for the sweep set, or objects with a
    ``kind`` and its rational parameters. ``oracle_rows`` adds the closed
    form levels to the spectrum CSV next to the numerical ones.
    """

    spins: tuple = (0, 1)
    identities: tuple = ()
    fields: tuple = ("shipped",)
    m: Fraction = Fraction(1)
    e: Fraction = Fraction(1)
    B: Fraction = Fraction(1)
    p_z: Fraction = Fraction(0)
    degree: int = 3
    reduction_degree: int = 2
    samples: int = 3
    n_max: int = 4
    method: str = "fourier-grid"
    size: int = spectra.DEFAULT_SIZE
    box: float = spectra.DEFAULT_BOX
    tolerance: float = spectra.DEFAULT_TOLERANCE
    route_tolerance: float = spectra.DEFAULT_ROUTE_TOLERANCE
    oracle_rows: bool = False
    modes: tuple = ((0, 0, 0), (1, 0, 0))
    kappa: Fraction = Fraction(1)
    profile_points: int = 4
    seed: int = 0
    jobs: int = 1
    out: str = None

    RATIONALS = ("m", "e", "B", "p_z", "kappa")
    COUNTS = ("degree", "reduction_degree", "samples", "n_max", "profile_points", "seed")

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("Config must be a JSON object")

        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")

        values = {}
        for key, value in data.items():
            if key in cls.RATIONALS:
                values[key] = _fraction(value, key)
            elif key in cls.COUNTS:
                values[key] = _integer(value, key)
            elif key in ("size", "jobs"):
                values[key] = _integer(value, key, minimum=1)
            elif key in ("box", "tolerance", "route_tolerance"):
                values[key] = _number(value, key)
            elif key == "oracle_rows":
                if not isinstance(value, bool):
                    raise ConfigError("oracle_rows: expected true or false")
                values[key] = value
            elif key in ("spins", "identities", "fields", "modes"):
                if not isinstance(value, list):
                    raise ConfigError(f"{key}: expected a list")
                values[key] = tuple(value)
            else:
                values[key] = value

        config = cls(**values)
        config.validate()
        return config

    @classmethod
    def load(cls, path):
        try:
            with open(path) as f:
                data = json.load(f)
        except (OSError, ValueError) as e:
            raise ConfigError(f"Cannot read config {path}: {e}")
        return cls.from_dict(data)

    def validate(self):
        if not self.spins or any(s not in (0, 1) for s in self.spins):
            raise ConfigError(f"spins must be a non-empty subset of [0, 1], got {list(self.spins)}")

        unknown = [i for i in self.identities if i not in CATALOGUE]
        if unknown:
            raise ConfigError(f"Unknown identity ids: {', '.join(map(str, unknown))}")

        if self.method not in spectra.METHODS:
            raise ConfigError(f"Unknown method {self.method!r}")

        for entry in self.fields:
            kind = entry.get("kind") if isinstance(entry, dict) else entry
            if kind != "shipped" and kind not in KINDS:
                raise ConfigError(f"Unknown field kind {kind!r}")

        for mode in self.modes:
            if (
                not isinstance(mode, (list, tuple))
                or len(mode) != 3
                or not all(isinstance(k, int) and not isinstance(k, bool) for k in mode)
            ):
                raise ConfigError(f"Modes are integer triples, got {mode!r}")

        if self.m == 0:
            raise ConfigError("m must be nonzero")

    def field_configs(self):
        out = []
        for entry in self.fields:
            if entry == "shipped":
                out.extend(shipped_fields(self.e))
                continue

            params = dict(entry) if isinstance(entry, dict) else {"kind": entry}
            kind = params.pop("kind")
            params = {
                k: tuple(v) if isinstance(v, list) and k != "A" else v for k, v in params.items()
            }
            try:
                out.append(make_field(kind, self.e, **params))
            except (FieldError, TypeError, ValueError) as e:
                raise ConfigError(f"Bad {kind} field: {e}")
        return out

    def to_dict(self):
        return {f.name: _plain(getattr(self, f.name)) for f in dataclasses.fields(self)}


# -- identity catalogue ------------------------------------------------------------

Suite = namedtuple("Suite", ["run", "spins", "per_field"])


def _free_states(config, rep):
    """One free solution per configured mode, each with its own energy label."""
    states = []
    for label, n in enumerate(config.modes):
        solutions = spectra.solve_free(rep, config.m, tuple(n), config.kappa, label=label)
        states.append(solutions[label % len(solutions)])
    return states


def _random_field_strength(rng):
    F = [[0] * 4 for _ in range(4)]
    for mu in range(4):
        for nu in range(mu + 1, 4):
            F[mu][nu] = int(rng.integers(-3, 4))
            F[nu][mu] = -F[mu][nu]
    return F


def _trilinear(config, rep, basis, field):
    return [algebra.verify_trilinear(rep)]


def _metric(config, rep, basis, field):
    return [algebra.verify_adjoint_metric(rep)]


def _projector(config, rep, basis, field):
    return [algebra.verify_beta_projector(rep)]


def _strong(config, rep, basis, field):
    return [algebra.verify_spin0_strong(rep)]


def _omega(config, rep, basis, field):
    return [algebra.build_and_verify_omega(rep)[1]]


def _characterization(config, rep, basis, field):
    return [algebra.verify_spin1_characterization(rep)]


def _covariant(config, rep, basis, field):
    reports = [operators.verify_covariant_commutator(rep, field, basis)]
    if is_zero_field(field):
        psi = [s.psi for s in _free_states(config, rep)]
        reports.append(operators.verify_eq33_on_solutions(rep, field, config.m, psi))
    return reports


def _second_order(config, rep, basis, field):
    report = IdentityReport(
        "3.5",
        f"field derivative term of Omega_1 [{operators.field_label(field)}]",
        expect=True if rep.spin == 0 else None,
    )
    report.record("matrix", operators.field_derivative_term(rep, field))
    return [report]


def _e2_rewriting(config, rep, basis, field):
    rng = np.random.default_rng(config.seed)
    report = IdentityReport("3.7", "quadratic F rewriting on random F", expect=None)
    for _ in range(config.samples):
        report.merge(algebra.verify_e2_rewriting_matrix_part(rep, _random_field_strength(rng)))
    return [report]


def _constraint_identity(config, rep, basis, field):
    return [operators.verify_constraint_identity(rep)]


def _constraint_rows(config, rep, basis, field):
    return [reduction.verify_spin1_constraint_rows(rep, field, config.m, basis)]


def _klein_gordon(config, rep, basis, field):
    label = operators.field_label(field)
    report = IdentityReport("3.11", f"spin-0 lift reduces to Klein-Gordon [{label}]")
    for _, phi5 in operators.test_basis(1, config.degree + 1).elements:
        report.merge(reduction.spin0_lift_and_reduce(rep, field, config.m, phi5))
    return [report]


def _troublesome(config, rep, basis, field):
    reports = [
        reduction.verify_troublesome_term_vanishes(rep, field, config.m, config.reduction_degree)
    ]
    if is_zero_field(field):
        psi = [s.psi for s in _free_states(config, rep)]
        reports.append(reduction.verify_reduced_evolution(rep, field, config.m, psi))
    return reports


def _projector_words(config, rep, basis, field):
    return [reduction.verify_projector_identities(rep)]


def _forms(config, rep, basis, field):
    return reduction.verify_form_equivalence(rep, field, config.m, config.reduction_degree)


def _spin_operators(config, rep, basis, field):
    return [algebra.build_and_verify_spin_operators(rep)]


def _fourth_order(config, rep, basis, field):
    try:
        return [reduction.compare_fourth_order(rep, field, config.m, config.reduction_degree)]
    except FieldError as e:
        report = IdentityReport(
            "4.12", f"fourth order operator [{operators.field_label(field)}]", expect=None
        )
        return [report.note(f"skipped: {e}")]


def _factorization(config, rep, basis, field):
    return [operators.verify_factorization(rep, field, config.m, basis)]


def _free_factorization(config, rep, basis, field):
    return [operators.verify_free_factorization(rep, config.m, basis)]


def _commutator_57(config, rep, basis, field):
    return [operators.verify_commutator_57(rep, field, config.m, basis)]


def _equation_class(config, rep, basis, field):
    return [
        operators.verify_equation_class(rep, field, config.m, basis, printed=True),
        operators.verify_equation_class(rep, field, config.m, basis, printed=False),
    ]


def _commutator_d2(config, rep, basis, field):
    return [operators.verify_commutator_d2(rep, field, config.m, basis)]


def _s_commutator(config, rep, basis, field):
    return [algebra.verify_s_commutator(rep)]


def _aux(config, rep, basis, field):
    return [operators.verify_aux_identities_6(rep, field, config.m, basis)]


def _omega2(config, rep, basis, field):
    return [operators.verify_omega2(rep, field, config.m, basis)]


def _superposition(config, rep):
    states = _free_states(config, rep)
    return currents.superpose(states, [1] * len(states))


def _current_j(config, rep, basis, field):
    psi = _superposition(config, rep)
    current = currents.current_j(rep, psi)
    charge = IdentityReport("1.3", "box charge of j^0 is time independent")
    charge.record("charge", 0 if currents.box_charge(current)[1] else 1)
    return [currents.verify_conservation(current), charge]


def _current_s(config, rep, basis, field):
    psi = _superposition(config, rep)
    return [currents.verify_conservation(currents.current_s(rep, psi))]


BOTH = (0, 1)

CATALOGUE = {
    "1.2": (Suite(_trilinear, BOTH, False),),
    "1.3": (Suite(_metric, BOTH, False), Suite(_current_j, BOTH, False)),
    "1.5": (Suite(_current_s, BOTH, False),),
    "2.1": (Suite(_projector, BOTH, False),),
    "2.2": (Suite(_strong, BOTH, False),),
    "2.4": (Suite(_omega, BOTH, False),),
    "2.5": (Suite(_omega, BOTH, False),),
    "2.6": (Suite(_omega, BOTH, False),),
    "2.7": (Suite(_omega, BOTH, False),),
    "2.8": (Suite(_characterization, BOTH, False),),
    "3.3": (Suite(_covariant, BOTH, True),),
    "3.5": (Suite(_second_order, BOTH, True),),
    "3.7": (Suite(_e2_rewriting, BOTH, False),),
    "3.8": (Suite(_constraint_identity, BOTH, False), Suite(_constraint_rows, (1,), True)),
    "3.11": (Suite(_klein_gordon, (0,), True),),
    "4.2": (Suite(_troublesome, BOTH, True),),
    "4.3": (Suite(_projector_words, BOTH, False),),
    "4.4": (Suite(_forms, BOTH, True),),
    "4.5": (Suite(_spin_operators, (1,), False),),
    "4.6": (Suite(_spin_operators, (1,), False),),
    "4.7": (Suite(_spin_operators, (1,), False),),
    "4.8": (Suite(_spin_operators, (1,), False),),
    "4.9": (Suite(_spin_operators, (1,), False),),
    "4.10": (Suite(_spin_operators, (1,), False),),
    "4.11": (Suite(_forms, (1,), True),),
    "4.12": (Suite(_fourth_order, (1,), True),),
    "5.4": (Suite(_factorization, BOTH, True),),
    "5.6": (Suite(_free_factorization, BOTH, False),),
    "5.7": (Suite(_commutator_57, BOTH, True),),
    "5.9": (Suite(_equation_class, BOTH, True),),
    "6.1": (Suite(_commutator_d2, BOTH, True),),
    "6.2": (Suite(_s_commutator, BOTH, False),),
    "6.3": (Suite(_aux, BOTH, True),),
    "6.4": (Suite(_aux, BOTH, True),),
    "6.6": (Suite(_omega2, BOTH, True),),
}


# -- output ------------------------------------------------------------------------

Row = namedtuple("Row", ["source", "identity", "spin", "field", "verdict", "checked"])


def _verdict(entry):
    if entry.get("expect") is None:
        return "info"
    if entry["passed"]:
        return "pass" if entry["expect"] else "UNEXPECTED PASS"
    return "expected fail" if entry["expect"] is False else "FAIL"


def _print_table(rows):
    if not rows:
        return

    widths = [max(len(str(v)) for v in column) for column in zip(Row._fields, *rows)]
    print(" | ".join(name.ljust(w) for name, w in zip(Row._fields, widths)))
    print("-+-".join("-" * w for w in widths))
    for row in rows:
        print(" | ".join(str(v).ljust(w) for v, w in zip(row, widths)))


def _write_json(document, path):
    if path is None:
        return
    with open(path, "w") as f:
        json.dump(document, f, indent=2)
        f.write("\n")
    logger.info("Wrote %s", path)


def _csv_path(path):
    return None if path is None else Path(path).with_suffix(".csv")


def _document(config, **parts):
    return {
        "schema": SCHEMA,
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": config.to_dict(),
        **parts,
    }


def _entries(reports, spin, label, seconds):
    out = []
    for report in reports:
        entry = report.to_dict()
        entry.update(spin=spin, field=label, as_expected=report.as_expected, seconds=seconds)
        out.append(entry)
        level = logging.INFO if report.as_expected else logging.WARNING
        logger.log(level, "%s spin-%d %s: %s", report.identity, spin, label, _verdict(entry))
    return out


class Kemmer:
    def __init__(self):
        self.config = None

    def _load(self, args):
        config = RunConfig.load(args.config) if args.config else RunConfig()
        for key in ("out", "jobs", "seed"):
            value = getattr(args, key, None)
            if value is not None:
                setattr(config, key, value)
        if getattr(args, "identity", None):
            config.identities = tuple(args.identity)
        config.validate()
        self.config = config
        return config

    def _items(self, config):
        selected = config.identities or tuple(CATALOGUE)
        suites = []
        for identity in selected:
            for suite in CATALOGUE[identity]:
                if suite not in suites:
                    suites.append(suite)

        fields = config.field_configs()
        items = []
        for suite in suites:
            for spin in config.spins:
                if spin not in suite.spins:
                    continue
                for field in fields if suite.per_field else (None,):
                    items.append((suite, spin, field))
        return items

    def _run(self, context, item):
        suite, spin, field = item
        rep, basis = context[spin]
        start = time.perf_counter()
        reports = suite.run(self.config, rep, basis, field)
        seconds = round(time.perf_counter() - start, 3)
        label = "-" if field is None else operators.field_label(field)
        return _entries(reports, spin, label, seconds)

    def verify(self, args):
        config = self._load(args)
        context = {}
        for spin in config.spins:
            rep = build_representation(spin)
            context[spin] = (rep, operators.test_basis(rep.dim, config.degree))
        items = self._items(config)
        logger.info("Running %d suite items on %d workers", len(items), config.jobs)

        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(lambda item: self._run(context, item), items))

        entries = [entry for result in results for entry in result]
        passed = all(entry["as_expected"] for entry in entries)
        _write_json(_document(config, reports=entries, passed=passed), config.out)

        if not getattr(args, "quiet", False):
            _print_table(
                [
                    Row("-", e["identity"], e["spin"], e["field"], _verdict(e), e["checked"])
                    for e in entries
                ]
            )
        return 0 if passed else 1

    def spectrum(self, args):
        config = self._load(args)
        if not config.e * config.B:
            raise ConfigError("Landau levels need a nonzero e B")

        m, e, B, p_z = config.m, config.e, config.B, config.p_z
        results, entries = [], []

        if 0 in config.spins:
            result = spectra.landau_spectrum_spin0(
                m, e, B, p_z, config.n_max, config.method, config.size, config.box,
                tolerance=config.tolerance,
            )
            oracle = spectra.landau_oracle_spin0(m, e, B, p_z, config.n_max)
            values = [level.E2 for level in result.levels]
            delta = spectra.match_levels(values, oracle, config.tolerance)
            results.append(result)
            if config.oracle_rows:
                levels = [
                    spectra.Level(n, float(p_z), None, v, v ** 0.5) for n, v in enumerate(oracle)
                ]
                results.append(spectra.SpectrumResult(0, "oscillator-oracle", levels, 0, 0.0))
            entries.append(_spectrum_entry(result, delta, config.tolerance))

        if 1 in config.spins:
            try:
                spin1 = spectra.landau_spectrum_spin1(
                    build_representation(1),
                    m,
                    e,
                    B,
                    p_z,
                    config.n_max,
                    config.method,
                    config.size,
                    config.box,
                    config.route_tolerance,
                )
            except RouteDisagreementError as error:
                logger.warning("%s", error)
                entries.append(
                    {"spin": 1, "route": "o_red-eigen", "passed": False, "error": str(error)}
                )
                spin1 = []

            oracle = [r for r in spin1 if r.route == "analytic-oracle"]
            for result in spin1:
                if result.route == "analytic-oracle":
                    continue
                delta = None
                if oracle and result.route == "fourth-order":
                    delta = spectra.match_levels(
                        [level.E2 for level in result.levels],
                        [level.E2 for level in oracle[0].levels],
                        config.route_tolerance,
                    )
                entries.append(_spectrum_entry(result, delta, config.route_tolerance))
            results += [r for r in spin1 if config.oracle_rows or r.route != "analytic-oracle"]

        passed = all(entry["passed"] for entry in entries)
        _write_json(_document(config, spectra=entries, passed=passed), config.out)
        if config.out is not None:
            spectra.write_csv(results, _csv_path(config.out))
        return 0 if passed else 1

    def currents(self, args):
        config = self._load(args)
        if not config.modes:
            raise ConfigError("currents needs at least one free mode")

        reports, rows = [], []
        length = 2 * np.pi / float(config.kappa)
        steps = config.profile_points
        points = [
            (a * length / steps, b * length / steps, 0.0, 0.0)
            for a in range(steps)
            for b in range(steps)
        ]

        for spin in config.spins:
            rep = build_representation(spin)
            psi = _superposition(config, rep)
            j = currents.current_j(rep, psi)
            try:
                s = currents.current_s(rep, psi)
            except NormError as e:
                raise ConfigError(str(e))

            charge = IdentityReport("1.3", "box charge of j^0 is time independent")
            charge.record("charge", 0 if currents.box_charge(j)[1] else 1)

            profile = currents.sample_profile(s, points)
            density = IdentityReport("1.5", "s^0 >= 0 at sampled points")
            for row in profile:
                density.record_value(row[:4], max(0.0, -row[4]), 1e-12)

            found = [currents.verify_conservation(j), currents.verify_conservation(s)]
            reports += _entries(found + [charge, density], spin, "zero", None)
            rows += [(spin, "j") + row for row in currents.sample_profile(j, points)]
            rows += [(spin, "s") + row for row in profile]

        passed = all(entry["as_expected"] for entry in reports)
        _write_json(_document(config, reports=reports, passed=passed), config.out)
        if config.out is not None:
            _write_profile(rows, _csv_path(config.out))
        return 0 if passed else 1

    def report(self, args):
        rows, passed = [], True
        for path in args.paths:
            try:
                with open(path) as f:
                    document = json.load(f)
            except (OSError, ValueError) as e:
                raise ConfigError(f"Cannot read report {path}: {e}")

            source = Path(path).name
            passed = passed and bool(document.get("passed"))
            for e in document.get("reports", []):
                rows.append(
                    Row(source, e["identity"], e["spin"], e["field"], _verdict(e), e["checked"])
                )
            for e in document.get("spectra", []):
                verdict = "pass" if e["passed"] else "FAIL"
                levels = len(e.get("levels", []))
                rows.append(Row(source, e["route"], e["spin"], "uniform-B", verdict, levels))

        _print_table(rows)
        return 0 if passed else 1

    def parse_args(self, argv=None):
        parser = argparse.ArgumentParser(prog="kemmer", description="Batch front end.")
        parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
        verbosity = parser.add_mutually_exclusive_group()
        verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
        verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings only")

        subparsers = parser.add_subparsers(title="positional arguments", dest="subcommand")

        def common(sub):
            sub.add_argument("-c", "--config", help="JSON config file")
            sub.add_argument("-o", "--out", help="Report path, CSV goes next to it")
            sub.add_argument("-j", "--jobs", type=int, help="Worker threads")
            sub.add_argument("--seed", type=int, help="Seed for random field strengths")
            return sub

        verify = common(subparsers.add_parser("verify", help="Run exact identity suites"))
        verify.add_argument(
            "-i", "--identity", action="append", help="Identity id, may be repeated"
        )
        common(subparsers.add_parser("spectrum", help="Solve Landau level spectra"))
        common(subparsers.add_parser("currents", help="Check currents of free superpositions"))

        report = subparsers.add_parser("report", help="Summarise report files")
        report.add_argument("paths", nargs="+", help="Report JSON files")

        args = parser.parse_args(argv)
        level = logging.INFO
        if args.verbose:
            level = logging.DEBUG
        elif args.quiet:
            level = logging.WARNING
        logging.basicConfig(
            level=level,
            format="%(levelname)s %(name)s: %(message)s",
        )

        if args.subcommand is None:
            parser.print_help(sys.stderr)
            return 2

        return getattr(self, args.subcommand)(args)


def _spectrum_entry(result, delta, tolerance):
    worst = result.error if delta is None else max(result.error, delta)
    return {
        "spin": result.spin,
        "route": result.route,
        "size": result.size,
        "error": result.error,
        "oracle_delta": delta,
        "levels": [_plain(list(level)) for level in result.levels],
        "passed": worst <= tolerance,
    }


def _write_profile(rows, path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(PROFILE_COLUMNS)
        writer.writerows(rows)


def main(argv=None):
    try:
        return Kemmer().parse_args(argv)
    except ConfigError as e:
        print(f"kemmer: {e}", file=sys.stderr)
        return 2
    except SpectrumError as e:
        print(f"kemmer: {e}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
