"""
Interfaccia a riga di comando di weylforms.

    python -m src.cli euclid "x*d" "x*d"
    python -m src.cli gram --family N --a 0 --k 2 --json
    python -m src.cli check --lemma all
    python -m src.cli conjecture-search --trials 1000 --seed 1

Exit codes: 0 success, 1 failed check or counterexample found, 2 usage or
parse error. Logs go to stderr; stdout carries only the result.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.cli import expression
from src.cli.schemas import (
    BigRatModel, ConjectureReportModel, FubiniRowModel, MatrixModel, MatrixReportModel, PolyModel,
    QSqrt2Model, SuiteReportModel, WeylElementModel, encode_ring_value, text_ring_value,
)
from src.config.check_ranges import FUBINI_MAX_K
from src.configg import get_config
from src.models.matrix import ExactMatrix
from src.models.scalars import QSqrt2, format_rat
from src.models.weyl import WeylElement, compose
from src.services import forms_service as forms
from src.services.conjecture_service import conjecture_search, fubini_table
from src.services.identities_service import CheckOptions, IdentityCheckFactory, run_suite
from src.services.linalg_service import det, is_positive_definite, leading_minors
from src.utils.errors import WeylFormsError
from src.utils.logger_config import setup_logging
from src.utils.metrics import write_metrics

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

GRAM_FAMILIES: Dict[str, Callable[[int, int], ExactMatrix]] = {
    "N": forms.build_N,
    "M": forms.build_M,
    "Mtilde": forms.build_Mtilde,
}


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit(args: argparse.Namespace, text: str, payload: Any) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def _qsqrt2_text(value: QSqrt2, digits: Optional[int]) -> str:
    if digits:
        return f"{value}  (approx {value.approx(digits)}, non esatto)"
    return str(value)


def _qsqrt2_json(value: QSqrt2, digits: Optional[int]) -> Dict[str, Any]:
    return QSqrt2Model.from_domain(value, digits).model_dump(exclude_none=True)


def _element_json(X: WeylElement) -> Dict[str, Any]:
    return WeylElementModel.from_domain(X).model_dump(exclude_none=True)


def _rat_json(value: Fraction) -> Dict[str, Any]:
    return BigRatModel.from_domain(value).model_dump()


def _parse_elements(texts: Sequence[str], n: Optional[int]) -> List[WeylElement]:
    """Parse several expressions into one common arity (the largest seen when n is omitted)."""
    if n is None:
        n = max(expression.parse(t).n for t in texts)
    return [expression.parse(t, n) for t in texts]


def _matrix_lines(m: ExactMatrix, names: Optional[Sequence[str]]) -> List[str]:
    cells = [[m.format_entry(m[i, j], names) for j in range(m.cols)] for i in range(m.rows)]
    width = max(len(c) for row in cells for c in row)
    return ["[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]


def _matrix_report(args: argparse.Namespace, m: ExactMatrix) -> int:
    names = (m.header or {}).get("names")
    determinant = det(m)
    minors = leading_minors(m)
    verdict: Optional[bool] = None
    if m.ring != "poly" and m.is_symmetric():
        verdict = is_positive_definite(m)

    report = MatrixReportModel(
        matrix=MatrixModel.from_domain(m),
        det=encode_ring_value(determinant, args.approx, names),
        leading_minors=[encode_ring_value(v, args.approx, names) for v in minors],
        positive_definite=verdict,
    )
    lines = _matrix_lines(m, names)
    lines.append(f"det: {text_ring_value(determinant, names)}")
    lines.append("leading minors: " + ", ".join(text_ring_value(v, names) for v in minors))
    if verdict is None:
        lines.append("positive definite: n/a")
    else:
        lines.append(f"positive definite: {'yes' if verdict else 'no'}")
    _emit(args, "\n".join(lines), report.model_dump(exclude_none=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_compose(args: argparse.Namespace) -> int:
    X, Y = _parse_elements([args.A, args.B], args.n)
    result = compose(X, Y)
    _emit(args, result.to_text(), _element_json(result))
    return EXIT_OK


def cmd_trace(args: argparse.Namespace) -> int:
    (X,) = _parse_elements([args.A], args.n)
    value = forms.trace(X)
    _emit(args, format_rat(value), _rat_json(value))
    return EXIT_OK


def cmd_frob(args: argparse.Namespace) -> int:
    X, Y = _parse_elements([args.A, args.B], args.n)
    value = forms.frob(X, Y)
    _emit(args, format_rat(value), _rat_json(value))
    return EXIT_OK


def cmd_euclid(args: argparse.Namespace) -> int:
    X, Y = _parse_elements([args.A, args.B], args.n)
    value = forms.euclid(X, Y)
    _emit(args, _qsqrt2_text(value, args.approx), _qsqrt2_json(value, args.approx))
    return EXIT_OK


def cmd_norm2(args: argparse.Namespace) -> int:
    (X,) = _parse_elements([args.A], args.n)
    value = forms.norm2(X)
    _emit(args, _qsqrt2_text(value, args.approx), _qsqrt2_json(value, args.approx))
    return EXIT_OK


def cmd_bar(args: argparse.Namespace) -> int:
    (X,) = _parse_elements([args.A], args.n)
    result = X.bar()
    _emit(args, result.to_text(), _element_json(result))
    return EXIT_OK


def cmd_weight(args: argparse.Namespace) -> int:
    (X,) = _parse_elements([args.A], args.n)
    weight = X.is_homogeneous()
    omega = X.homogeneous_multiweight()
    components = X.weight_components()
    lines = [
        f"weight: {weight if weight is not None else 'inhomogeneous'}",
        f"multiweight: {','.join(map(str, omega)) if omega is not None else 'inhomogeneous'}",
    ]
    if weight is None:
        lines += [f"  l={l}: {part.to_text()}" for l, part in components.items()]
    payload = {
        "weight": weight,
        "multiweight": list(omega) if omega is not None else None,
        "components": [{"weight": l, "element": _element_json(part)} for l, part in components.items()],
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_project(args: argparse.Namespace) -> int:
    (X,) = _parse_elements([args.A], args.n)
    if args.weight is not None:
        result = X.project_weight(args.weight)
    else:
        result = X.project_multiweight(expression.parse_multiweight(args.multiweight))
    _emit(args, result.to_text(), _element_json(result))
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    (X,) = _parse_elements([args.A], args.n)
    p = expression.parse_poly(args.poly, X.n)
    result = X.apply(p)
    _emit(args, result.format(), PolyModel.from_domain(result).model_dump(exclude_none=True))
    return EXIT_OK


def cmd_gram(args: argparse.Namespace) -> int:
    if args.basis is not None:
        elements = expression.parse_monomial_list(args.basis, args.n)
        basis = []
        for element in elements:
            monomials = element.monomials()
            if len(monomials) != 1 or element.coefficient(monomials[0]) != 1:
                raise ValueError(f"Basis entries must be bare monomials, got '{element.to_text()}'")
            basis.append(monomials[0])
        matrix = forms.gram_euclid(basis)
    else:
        if args.a is None or args.k is None:
            raise ValueError("--family requires --a and --k")
        matrix = GRAM_FAMILIES[args.family](args.a, args.k)
    logger.info(f"Gram matrix {matrix.rows}x{matrix.cols} over {matrix.ring}")
    return _matrix_report(args, matrix)


def cmd_matrix(args: argparse.Namespace) -> int:
    with open(args.file, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    matrix = MatrixModel.model_validate(data).to_domain()
    return _matrix_report(args, matrix)


def cmd_check(args: argparse.Namespace) -> int:
    options = CheckOptions(
        max_n=args.max_n, max_a=args.max_a, max_k=args.max_k, max_exp=args.max_exp,
        max_entry=args.max_entry, samples=args.samples, seed=args.seed, n=args.n,
    )
    report = run_suite(args.lemma, options, workers=args.workers)
    lines = []
    for r in report.results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.lemma:<12} cases={r.cases:<6} {r.seconds:.3f}s  {r.description}")
        if not r.passed:
            lines.append(f"     counterexample: {json.dumps(r.counterexample, default=str)}")
    lines.append("all checks passed" if report.passed else f"failed: {report.first_failure().lemma}")
    payload = SuiteReportModel.model_validate(json.loads(json.dumps(report.to_dict(), default=str)))
    _emit(args, "\n".join(lines), payload.model_dump())
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_fubini_table(args: argparse.Namespace) -> int:
    rows = fubini_table(args.k)
    lines = []
    for row in rows:
        values = ", ".join(_qsqrt2_text(v, args.approx) for v in row.values)
        flag = "" if row.independent_of_i and row.matches else "  <- dipende da i"
        lines.append(f"k={row.k:<3} Fubini={row.fubini:<10} [{values}]{flag}")
    payload = [
        FubiniRowModel(
            k=row.k,
            fubini=str(row.fubini),
            values=[QSqrt2Model.from_domain(v, args.approx) for v in row.values],
            independent_of_i=row.independent_of_i,
            matches=row.matches,
        ).model_dump(exclude_none=True)
        for row in rows
    ]
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if all(r.matches for r in rows) else EXIT_FAILURE


def cmd_conjecture_search(args: argparse.Namespace) -> int:
    report = conjecture_search(
        args.trials, seed=args.seed, max_exp=args.max_exp, max_terms=args.max_terms, n=args.n,
    )
    lines = [f"trials={report.trials} seed={report.seed} counterexamples={len(report.counterexamples)}"]
    for c in report.counterexamples:
        lines.append(
            f"trial {c.trial} (n={c.n}): X = {c.X} ; Y = {c.Y} ; "
            f"|X|^2 = {c.norm2_X} ; |Y|^2 = {c.norm2_Y} ; |XoY|^2 = {c.norm2_XY}"
        )
    if not report.found:
        lines.append("no counterexample to |X o Y|^2 >= |X|^2 |Y|^2")
    _emit(args, "\n".join(lines), ConjectureReportModel.from_domain(report).model_dump(exclude_none=True))
    return EXIT_FAILURE if report.found else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _non_negative(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{value}' non è un intero")
    if number < 0:
        raise argparse.ArgumentTypeError(f"'{value}' deve essere >= 0")
    return number


def _positive(value: str) -> int:
    number = _non_negative(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"'{value}' deve essere >= 1")
    return number


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=_positive, default=None,
                        help='Arità dell\'algebra A_n (default: indice massimo nelle espressioni)')
    common.add_argument('--json', action='store_true',
                        help='Output JSON su stdout')
    common.add_argument('--approx', type=_positive, nargs='?', const=20, default=None,
                        help='Aggiunge un\'approssimazione decimale (solo indicativa) ai valori in Q[sqrt2]')
    common.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Livello di log (default: LOG_LEVEL o WARNING)')
    common.add_argument('--metrics-file', default=None,
                        help='Scrive le metriche Prometheus in questo file')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='weylforms',
        description='Algebra di Weyl A_n in aritmetica esatta: composizione, forme di Frobenius ed Euclide, '
                    'matrici di Gram e verifica delle identità',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], int], help_text: str,
            operands: Sequence[str] = ()) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        for operand in operands:
            p.add_argument(operand, help='Espressione, es. "x*d + 1" oppure "x1^2*d2 @ d1"')
        p.set_defaults(handler=handler)
        return p

    add('compose', cmd_compose, 'Composizione A o B', ('A', 'B'))
    add('trace', cmd_trace, 'Traccia T(A)', ('A',))
    add('frob', cmd_frob, 'Forma di Frobenius (A, B) = T(A o B)', ('A', 'B'))
    add('euclid', cmd_euclid, 'Forma euclidea <A, B> in Q[sqrt2]', ('A', 'B'))
    add('norm2', cmd_norm2, 'Norma al quadrato <A, A>', ('A',))
    add('bar', cmd_bar, 'Involuzione aggiunta (scambia x e d)', ('A',))
    add('weight', cmd_weight, 'Peso e multipeso di A', ('A',))

    project = add('project', cmd_project, 'Proiezione su un peso o multipeso', ('A',))
    target = project.add_mutually_exclusive_group(required=True)
    target.add_argument('--weight', type=int, help='Peso l')
    target.add_argument('--multiweight', help='Multipeso "w1,w2,..."')

    apply_parser = add('apply', cmd_apply, 'Azione di A su un polinomio', ('A',))
    apply_parser.add_argument('--poly', required=True,
                              help='Polinomio, es. "2*x^2*y + z" oppure "x1*x2"')

    gram = add('gram', cmd_gram, 'Matrici di Gram: famiglie N, M, Mtilde o base di monomi')
    source = gram.add_mutually_exclusive_group(required=True)
    source.add_argument('--family', choices=sorted(GRAM_FAMILIES), help='Famiglia di matrici')
    source.add_argument('--basis', help='Monomi separati da ";", es. "1;x;d"')
    gram.add_argument('--a', type=_non_negative, default=None, help='Parametro a della famiglia')
    gram.add_argument('--k', type=_non_negative, default=None, help='Dimensione k+1 della famiglia')

    matrix = add('matrix', cmd_matrix, 'Determinante, minori e definitezza di una matrice JSON')
    matrix.add_argument('file', help='File JSON {rows, cols, ring, entries}')

    check = add('check', cmd_check, 'Esegue la suite di verifica delle identità')
    check.add_argument('--lemma', nargs='+', default=['all'],
                       help=f"Verifiche da eseguire: all oppure {', '.join(IdentityCheckFactory.keys())}")
    for flag, help_text in (
        ('--max-n', 'Massimo n (lemma 1, corollario 2, lemmi 100/101)'),
        ('--max-a', 'Massimo a (lemmi 98, 102, 103, 104)'),
        ('--max-k', 'Massimo k (lemmi 98, 102, 103, 104, Fubini)'),
        ('--max-exp', 'Massimo esponente dei monomi campionati'),
        ('--max-entry', 'Massimo valore degli indici (lemma 3)'),
        ('--samples', 'Numero di campioni casuali'),
        ('--seed', 'Seed dei generatori casuali (default: WEYL_DEFAULT_SEED)'),
    ):
        check.add_argument(flag, type=_non_negative, default=None, help=help_text)
    check.add_argument('--workers', type=_positive, default=None,
                       help='Thread per la suite (default: WEYL_CHECK_WORKERS)')

    table = add('fubini-table', cmd_fubini_table, 'Tabella <(xd)^i, (xd)^(k-i)> contro Fubini(k)')
    table.add_argument('--k', type=_non_negative, default=FUBINI_MAX_K,
                       help=f'Massimo k (default: {FUBINI_MAX_K})')

    search = add('conjecture-search', cmd_conjecture_search,
                 'Cerca controesempi a |X o Y| >= |X| |Y|')
    search.add_argument('--trials', type=_non_negative, default=1000, help='Coppie da provare (default: 1000)')
    search.add_argument('--seed', type=int, default=None, help='Seed (default: WEYL_DEFAULT_SEED)')
    search.add_argument('--max-exp', type=_non_negative, default=3, help='Massimo esponente (default: 3)')
    search.add_argument('--max-terms', type=_positive, default=3, help='Massimo numero di termini (default: 3)')

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    logger.debug(f"Command {args.command}")

    try:
        code = args.handler(args)
    except (WeylFormsError, ValueError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_USAGE
    except OSError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_USAGE

    metrics_file = args.metrics_file or get_config().metrics_file
    if metrics_file:
        write_metrics(metrics_file)
    return code


if __name__ == '__main__':
    sys.exit(main())
