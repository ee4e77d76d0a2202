#!/usr/bin/env python3
"""
Command-line driver for Poisson-Nijenhuis verification.

Usage:
    python app.py verify data/examples/so3.pnv
    python app.py verify data/examples/groupoid.pnv --format json --jobs 4
    python app.py fmt data/examples/torsion.pnv

Exit codes: 0 when every verdict passes, 1 when any check fails or errors,
2 for usage errors and unreadable or malformed spec files.
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional

from components.pair_groupoid import AlgebroidData
from components.report import CheckReport
from components.suites import (
    guarded,
    run_algebroid_suite,
    run_axiom_suite,
    run_correspondence,
    run_groupoid_from_base,
    run_oracle_suite,
)
from data.specfile import CheckSpec, SpecFile, format_specfile, parse_specfile
from utils.constants import (
    CONVENTIONS,
    DEFAULT_BIVECTOR_LIFT,
    DEFAULT_CONVENTION,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    EXIT_FAIL,
    EXIT_OK,
    EXIT_USAGE,
    VERDICTS,
)
from utils.errors import SpecFileError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='pnverify',
        description='Exact verification of Poisson-Nijenhuis structures on charts and pair groupoids'
    )
    parser.add_argument(
        '--verbose',
        action='store_true',
        help='Log progress to stderr'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', help='Run every check requested by a spec file')
    verify.add_argument('path', type=Path, help='Spec file to verify')
    verify.add_argument(
        '--format',
        choices=('text', 'json'),
        default='text',
        help='Report format (default: text)'
    )
    verify.add_argument(
        '--seed',
        type=int,
        default=DEFAULT_SEED,
        help=f'Oracle seed for checks that do not set one (default: {DEFAULT_SEED})'
    )
    verify.add_argument(
        '--trials',
        type=int,
        default=DEFAULT_TRIALS,
        help=f'Oracle trials for checks that do not set them (default: {DEFAULT_TRIALS})'
    )
    verify.add_argument(
        '--convention',
        choices=CONVENTIONS,
        default=DEFAULT_CONVENTION,
        help='Invariant-extension convention for checks that do not set one'
    )
    verify.add_argument(
        '--jobs',
        type=int,
        default=1,
        help='Run independent checks on this many worker threads (default: 1)'
    )

    fmt = commands.add_parser('fmt', help='Print the canonical form of a spec file')
    fmt.add_argument('path', type=Path, help='Spec file to format')
    return parser


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )


def load_specfile(path: Path) -> SpecFile:
    """Read and parse a spec file; OSError and SpecFileError propagate."""
    return parse_specfile(path.read_text(encoding='utf-8'))


def execute_check(spec: SpecFile, check: CheckSpec, args: argparse.Namespace) -> CheckReport:
    """Run one check line; verification errors become error verdicts."""
    options = check.option_map
    title = f"line {check.line}: {check.describe()}"
    logger.info("running %s", title)

    if check.suite == 'oracle':
        report = guarded(run_oracle_suite, options.get('trials', args.trials),
                         options.get('seed', args.seed), title=title)
    elif check.suite == 'axioms':
        report = guarded(run_axiom_suite, spec.spaces[check.args[0]], title=title)
    else:
        lam_name, n_name = check.args
        lam = spec.tensor('bivector', lam_name)
        data = AlgebroidData(lam.space, lam, spec.tensor('endo', n_name))
        convention = options.get('convention', args.convention)
        if check.suite == 'algebroid':
            report = guarded(run_algebroid_suite, data, title=title)
        elif check.suite == 'groupoid':
            lift = options.get('lift', DEFAULT_BIVECTOR_LIFT)
            report = guarded(run_groupoid_from_base, data, convention, lift, title=title)
        else:
            report = guarded(run_correspondence, data, convention, title=title)
    report.title = title
    return report


def run_checks(spec: SpecFile, args: argparse.Namespace) -> List[CheckReport]:
    """Reports in file order, whatever the number of worker threads."""
    jobs = max(1, args.jobs)
    if jobs == 1 or len(spec.checks) < 2:
        return [execute_check(spec, check, args) for check in spec.checks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda check: execute_check(spec, check, args), spec.checks))


def overall_summary(reports: List[CheckReport]) -> dict:
    totals = {verdict: 0 for verdict in VERDICTS}
    for report in reports:
        for verdict, count in report.summary.items():
            totals[verdict] += count
    return totals


def exit_code_for(reports: List[CheckReport]) -> int:
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAIL


def render_text(path: Path, reports: List[CheckReport]) -> str:
    blocks = [f"Verifying {path}"]
    blocks.extend(report.format_text() for report in reports)
    totals = overall_summary(reports)
    failed = totals['fail'] + totals['error']
    status = "✓ All checks passed" if not failed else f"✗ {failed} verdicts did not pass"
    blocks.append(f"{status} ({', '.join(f'{totals[v]} {v}' for v in VERDICTS)})")
    return "\n\n".join(blocks)


def render_json(path: Path, spec: SpecFile, reports: List[CheckReport]) -> str:
    checks = []
    for check, report in zip(spec.checks, reports):
        checks.append({
            'line': check.line,
            'suite': check.suite,
            'args': list(check.args),
            'options': check.option_map,
            **report.to_dict(),
        })
    document = {
        'file': str(path),
        'checks': checks,
        'summary': overall_summary(reports),
        'exit_code': exit_code_for(reports),
    }
    return json.dumps(document, indent=2, ensure_ascii=False)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    configure_logging(args.verbose)

    if args.command == 'verify' and (args.jobs < 1 or args.trials < 1):
        print("✗ --jobs and --trials must be at least 1", file=sys.stderr)
        return EXIT_USAGE

    try:
        spec = load_specfile(args.path)
    except OSError as exc:
        print(f"✗ Cannot read {args.path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpecFileError as exc:
        print(f"✗ {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == 'fmt':
        sys.stdout.write(format_specfile(spec))
        return EXIT_OK

    reports = run_checks(spec, args)
    if args.format == 'json':
        print(render_json(args.path, spec, reports))
    else:
        print(render_text(args.path, reports))
    return exit_code_for(reports)


if __name__ == '__main__':
    sys.exit(main())
