"""
Schemi JSON (pydantic) per l'output `--json` e per i file di matrici.

Every exact value is serialized losslessly: rationals as decimal strings
{num, den}, Q[sqrt2] values as {rat, sqrt2}. Each model converts to and
from the domain type through from_domain / to_domain.
"""
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from src.models.matrix import ExactMatrix
from src.models.polynomial import MultiPoly
from src.models.scalars import QSqrt2, format_rat
from src.models.weyl import WeylElement, WeylMonomial


class BigRatModel(BaseModel):
    """Razionale esatto in forma ridotta."""

    num: str = Field(..., description="Numeratore (intero decimale con segno)")
    den: str = Field("1", description="Denominatore positivo")

    @field_validator("num")
    @classmethod
    def _integer(cls, value: str) -> str:
        int(value)
        return value

    @field_validator("den")
    @classmethod
    def _positive(cls, value: str) -> str:
        if int(value) <= 0:
            raise ValueError("den must be a positive integer")
        return value

    @classmethod
    def from_domain(cls, value: Fraction) -> "BigRatModel":
        value = Fraction(value)
        return cls(num=str(value.numerator), den=str(value.denominator))

    def to_domain(self) -> Fraction:
        return Fraction(int(self.num), int(self.den))


class QSqrt2Model(BaseModel):
    """Valore rat + sqrt2 * sqrt(2)."""

    rat: BigRatModel = Field(..., description="Parte razionale")
    sqrt2: BigRatModel = Field(..., description="Coefficiente di sqrt(2)")
    text: Optional[str] = Field(None, description="Forma leggibile, es. '1 + 2*sqrt2'")
    approx: Optional[str] = Field(None, description="Approssimazione decimale, solo indicativa")

    @classmethod
    def from_domain(cls, value: QSqrt2, approx_digits: Optional[int] = None) -> "QSqrt2Model":
        return cls(
            rat=BigRatModel.from_domain(value.rat),
            sqrt2=BigRatModel.from_domain(value.irr),
            text=str(value),
            approx=value.approx(approx_digits) if approx_digits else None,
        )

    def to_domain(self) -> QSqrt2:
        return QSqrt2(self.rat.to_domain(), self.sqrt2.to_domain())


class WeylTermModel(BaseModel):
    alpha: List[int] = Field(..., description="Esponenti delle moltiplicazioni x")
    beta: List[int] = Field(..., description="Esponenti delle derivazioni d")
    coeff: BigRatModel


class WeylElementModel(BaseModel):
    """Elemento di A_n in ordine canonico."""

    n: int = Field(..., ge=1, description="Arità dell'algebra")
    terms: List[WeylTermModel] = Field(default_factory=list)
    text: Optional[str] = Field(None, description="Forma canonica testuale")

    @classmethod
    def from_domain(cls, X: WeylElement) -> "WeylElementModel":
        terms = [
            WeylTermModel(alpha=list(m.alpha), beta=list(m.beta), coeff=BigRatModel.from_domain(c))
            for m, c in X.sorted_terms()
        ]
        return cls(n=X.n, terms=terms, text=X.to_text())

    def to_domain(self) -> WeylElement:
        return WeylElement(self.n, {
            WeylMonomial(tuple(t.alpha), tuple(t.beta)): t.coeff.to_domain() for t in self.terms
        })


class PolyTermModel(BaseModel):
    exponents: List[int]
    coeff: BigRatModel


class PolyModel(BaseModel):
    arity: int = Field(..., ge=1)
    terms: List[PolyTermModel] = Field(default_factory=list)
    text: Optional[str] = None

    @classmethod
    def from_domain(cls, p: MultiPoly, names: Optional[List[str]] = None) -> "PolyModel":
        terms = [PolyTermModel(exponents=list(e), coeff=BigRatModel.from_domain(c)) for e, c in p.sorted_terms()]
        return cls(arity=p.arity, terms=terms, text=p.format(names))

    def to_domain(self) -> MultiPoly:
        return MultiPoly(self.arity, {tuple(t.exponents): t.coeff.to_domain() for t in self.terms})


class MatrixModel(BaseModel):
    """Formato {rows, cols, ring, entries} con intestazione opzionale."""

    rows: int = Field(..., ge=1)
    cols: int = Field(..., ge=1)
    ring: Literal["int", "rat", "qsqrt2", "poly"]
    entries: List[List[Any]] = Field(..., description="Valori riga per riga, codificati secondo l'anello")
    header: Dict[str, Any] = Field(default_factory=dict, description="Metadati: family, a, k oppure basis")

    @classmethod
    def from_domain(cls, m: ExactMatrix) -> "MatrixModel":
        return cls(**m.to_dict())

    def to_domain(self) -> ExactMatrix:
        return ExactMatrix.from_dict(self.model_dump())


def encode_ring_value(value: Any, approx_digits: Optional[int] = None, names: Optional[List[str]] = None) -> Any:
    """JSON form of a determinant or minor, whatever its ring."""
    if isinstance(value, QSqrt2):
        return QSqrt2Model.from_domain(value, approx_digits).model_dump()
    if isinstance(value, MultiPoly):
        return PolyModel.from_domain(value, names).model_dump()
    return BigRatModel.from_domain(Fraction(value)).model_dump()


def text_ring_value(value: Any, names: Optional[List[str]] = None) -> str:
    if isinstance(value, MultiPoly):
        return value.format(names)
    if isinstance(value, (int, Fraction)):
        return format_rat(Fraction(value))
    return str(value)


class MatrixReportModel(BaseModel):
    """Matrice con determinante, minori principali e verdetto di Sylvester."""

    matrix: MatrixModel
    det: Any
    leading_minors: List[Any]
    positive_definite: Optional[bool] = Field(None, description="Assente per matrici polinomiali")


class CheckResultModel(BaseModel):
    lemma: str
    passed: bool
    cases: int
    seconds: float
    description: str = ""
    counterexample: Optional[Dict[str, Any]] = None


class SuiteReportModel(BaseModel):
    passed: bool
    results: List[CheckResultModel]


class FubiniRowModel(BaseModel):
    k: int
    fubini: str = Field(..., description="Numero di Fubini (stringa decimale)")
    values: List[QSqrt2Model] = Field(..., description="<(xd)^i, (xd)^(k-i)> per i = 0..k")
    independent_of_i: bool
    matches: bool


class CounterexampleModel(BaseModel):
    trial: int
    n: int
    X: str
    Y: str
    norm2_X: QSqrt2Model
    norm2_Y: QSqrt2Model
    norm2_XY: QSqrt2Model


class ConjectureReportModel(BaseModel):
    """Esito della ricerca di controesempi a |X o Y| >= |X| |Y|."""

    trials: int
    seed: int
    n: Optional[int] = None
    max_exp: int
    max_terms: int
    found: bool
    counterexamples: List[CounterexampleModel] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, report) -> "ConjectureReportModel":
        return cls(
            trials=report.trials,
            seed=report.seed,
            n=report.n,
            max_exp=report.max_exp,
            max_terms=report.max_terms,
            found=report.found,
            counterexamples=[
                CounterexampleModel(
                    trial=c.trial, n=c.n, X=c.X, Y=c.Y,
                    norm2_X=QSqrt2Model.from_domain(c.norm2_X),
                    norm2_Y=QSqrt2Model.from_domain(c.norm2_Y),
                    norm2_XY=QSqrt2Model.from_domain(c.norm2_XY),
                )
                for c in report.counterexamples
            ],
        )
