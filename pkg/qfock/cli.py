# coding: utf-8
"""
Command line entry point.  Every command prints a JSON report (or writes
it to --out) and exits 0 on success, 1 when a check fails, 2 on bad
input and 3 when a computation contradicts an identity that must hold.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from qfock import __version__
from qfock.coeff import ONE, ratq_str, ratq_to_json
from qfock.config import FAMILIES, SUITES, Settings, config, load_settings
from qfock.crystal import AffineType, affine_type, elem_from_json
from qfock.dtwo import CHECKS, dtwo
from qfock.exceptions import QFockError, TheoremViolation, UsageError
from qfock.fock import fock_space
from qfock.twopoint import gamma_closed, two_point
from qfock.verify import Verifier
from qfock.wedge import STRATEGIES, Generator, WedgeVector, straighten
from qfock.young import young_model


logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_THEOREM = 0, 1, 2, 3

LEVELS = ['ERROR', 'WARNING', 'INFO', 'DEBUG']

Result = Tuple[dict, bool]


def _kappa(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError('not a rational number: {!r}'.format(text))


def _json(text: str, what: str):
    try:
        return json.loads(text)
    except ValueError as exc:
        raise UsageError('{} is not valid JSON: {}'.format(what, exc)) from exc


def _word(text: str, what: str = '--word'):
    data = _json(text, what)
    if not isinstance(data, list):
        raise UsageError('{} must be a list of [letter, z] pairs'.format(what))
    return tuple(elem_from_json(b) for b in data)


def _atype(args) -> AffineType:
    return affine_type(args.type or 'a2even', args.rank, args.level)


# commands

def cmd_straighten(args, settings: Settings) -> Result:
    atype = _atype(args)
    w = WedgeVector.basis(*_word(args.word))
    out = straighten(atype, w, args.strategy)
    return {
        'type': atype.tag,
        'rank': atype.n,
        'strategy': args.strategy,
        'input': w.to_json(),
        'output': out.to_json(),
        'identity': out == w,
    }, True


def cmd_fock_act(args, settings: Settings) -> Result:
    space = fock_space(_atype(args), args.kappa)
    F = space.attach(args.m, {_word(args.prefix, '--prefix'): ONE})
    result = F
    for text in args.generator:
        result = space.act(Generator.parse(text), result)
    weight = result.weight()
    return {
        'type': space.atype.tag,
        'rank': space.atype.n,
        'kappa': space.kappa,
        'generators': args.generator,
        'input': F.to_json(),
        'output': result.to_json(),
        'weight': weight.to_json() if weight is not None else None,
    }, True


def cmd_gamma(args, settings: Settings) -> Result:
    atype = _atype(args)
    space = fock_space(atype, args.kappa)
    computed = space.gamma(args.n, args.m)
    closed = gamma_closed(atype, space.kappa, args.n)
    return {
        'type': atype.tag,
        'rank': atype.n,
        'level': atype.level,
        'kappa': space.kappa,
        'n': args.n,
        'gamma': ratq_to_json(computed),
        'gamma_text': ratq_str(computed),
        'closed_text': ratq_str(closed),
        'agrees': computed == closed,
    }, computed == closed


def cmd_twopoint(args, settings: Settings) -> Result:
    data = two_point(_atype(args), args.kappa).data(settings.worder, settings.qorder)
    return data.to_json(), data.ok


def cmd_young(args, settings: Settings) -> Result:
    model = young_model(args.rank or 1)
    try:
        rows = [int(part) for part in args.diagram.split(',') if part.strip()]
    except ValueError as exc:
        raise UsageError('bad diagram {!r}; give comma separated row lengths'.format(args.diagram)) from exc
    return model.to_json(Generator.parse(args.generator), model.diagram(rows)), True


def cmd_dtwo(args, settings: Settings) -> Result:
    model = dtwo(args.rank or 2)
    if args.check:
        Q = 16 if args.check == 'qkz' else settings.qorder
        ok = model.check(args.check, seed=settings.seed, T=settings.worder, Q=Q)
        return {'n': model.n, 'check': args.check, 'seed': settings.seed, 'worder': settings.worder,
                'qorder': Q, 'passed': ok}, ok
    return model.rbar(args.q, args.z).to_json(), True


def cmd_tables(args, settings: Settings) -> Result:
    return _atype(args).tables(), True


def cmd_verify(args, settings: Settings) -> Result:
    atype = affine_type(args.type, args.rank, args.level) if args.type else None
    verifier = Verifier(settings, atype, args.kappa, deep=args.deep)
    report = verifier.run(args.suite or settings.suites)
    return report.to_json(), report.passed


COMMANDS: Dict[str, Callable[..., Result]] = {
    'straighten': cmd_straighten,
    'fock-act': cmd_fock_act,
    'gamma': cmd_gamma,
    'twopoint': cmd_twopoint,
    'young': cmd_young,
    'dtwo': cmd_dtwo,
    'tables': cmd_tables,
    'verify': cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', help='write the JSON report to this file')
    common.add_argument('-v', '--verbose', action='count', default=0, help='raise the log level (repeatable)')
    common.add_argument('--delta-degree', type=int, help='delta-degree bound for weight spaces')
    common.add_argument('--worder', type=int, help='truncation order T in w (and z)')
    common.add_argument('--qorder', type=int, help='truncation order Q in q')
    common.add_argument('--window', type=int, help='z-window for letters')
    common.add_argument('--seed', type=int, help='seed for sampled checks')

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument('--type', choices=FAMILIES)
    family.add_argument('--rank', type=int)
    family.add_argument('--level', type=int, default=1)
    family.add_argument('--kappa', type=_kappa)

    parser = argparse.ArgumentParser(prog='qfock', description='Exact computations on q-deformed Fock spaces.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    commands = parser.add_subparsers(dest='command', required=True)

    sub = commands.add_parser('straighten', parents=[common, family], help='normal form of a wedge word')
    sub.add_argument('--word', required=True, help='JSON list of [letter, z] pairs')
    sub.add_argument('--strategy', choices=STRATEGIES, default='insert')

    sub = commands.add_parser('fock-act', parents=[common, family], help='apply generators to a Fock vector')
    sub.add_argument('--m', type=int, default=0, help='charge of the Fock space')
    sub.add_argument('--prefix', default='[]', help='JSON prefix word; the vacuum by default')
    sub.add_argument('--generator', action='append', default=[], help='e<i>, f<i>, t<i> or tinv<i>; applied in order')

    sub = commands.add_parser('gamma', parents=[common, family], help='boson commutator gamma_n')
    sub.add_argument('--n', type=int, default=1)
    sub.add_argument('--m', type=int, default=0)

    commands.add_parser('twopoint', parents=[common, family], help='two-point function and its checks')

    sub = commands.add_parser('young', parents=[common, family], help='action on h-restricted diagrams')
    sub.add_argument('--generator', default='f1')
    sub.add_argument('--diagram', default='', help='comma separated row lengths')

    sub = commands.add_parser('dtwo', parents=[common, family], help='R-matrix of D^(2) and its checks')
    sub.add_argument('--check', choices=CHECKS + ('theta',))
    sub.add_argument('--q', type=_fraction, default=Fraction(1, 3))
    sub.add_argument('--z', type=_fraction, default=Fraction(1, 5))

    commands.add_parser('tables', parents=[common, family], help='crystal, energy and ground state tables')

    sub = commands.add_parser('verify', parents=[common, family], help='run the acceptance suites')
    sub.add_argument('--suite', action='append', choices=SUITES + ('all',))
    sub.add_argument('--deep', action='store_true', help='also certify relations lie in N')
    return parser


def _settings(args) -> Settings:
    settings = load_settings(config).replace(
        delta_degree=args.delta_degree,
        worder=args.worder,
        qorder=args.qorder,
        window=args.window,
        seed=args.seed,
    )
    for name in ('delta_degree', 'worder', 'qorder', 'window'):
        if getattr(settings, name) <= 0:
            raise UsageError('--{} must be positive'.format(name.replace('_', '-')))
    index = min(LEVELS.index(settings.log_level) + args.verbose, len(LEVELS) - 1)
    return settings.replace(log_level=LEVELS[index])


def emit(report: dict, out: Optional[str] = None):
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, 'w', encoding='utf-8') as handle:
            handle.write(text + '\n')
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _settings(args)
        logging.basicConfig(level=settings.log_level, format='%(levelname)s %(name)s: %(message)s')
        report, ok = COMMANDS[args.command](args, settings)
    except TheoremViolation as exc:
        logger.error('%s', exc)
        emit({'command': args.command, 'error': str(exc), 'kind': 'theorem-violation'}, args.out)
        return EXIT_THEOREM
    except QFockError as exc:
        print('qfock {}: {}'.format(args.command, exc), file=sys.stderr)
        return EXIT_USAGE
    emit(report, args.out)
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
