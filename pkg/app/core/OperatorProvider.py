from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from app.core.exact_core import ONE, OpMatrix, Poly, as_scalar
from app.core.psi_sequence import PsiSequence, RationalFunction
from app.helpers.errors import IndexOutOfCap, MissingParameter, NotAdmissible, ZeroDenominator

KINDS = (
    "d_psi",
    "x_hat_psi",
    "x_hat",
    "d_classical",
    "dilation",
    "n_hat_psi",
    "d_zero",
    "d_q",
    "d_R",
    "identity",
)

# declared degree shift of each kind
DEGREE_SHIFT = {
    "d_psi": -1,
    "d_classical": -1,
    "d_zero": -1,
    "d_q": -1,
    "d_R": -1,
    "x_hat_psi": 1,
    "x_hat": 1,
    "dilation": 0,
    "n_hat_psi": 0,
    "identity": 0,
}


@dataclass(frozen=True)
class NamedOp:
    """An operator matrix together with the symbol it realizes."""

    matrix: OpMatrix
    kind: str
    psi: Optional[PsiSequence] = None
    q: Optional[Fraction] = None

    @property
    def cap(self) -> int:
        return self.matrix.cap

    def apply(self, p: Poly) -> Poly:
        return self.matrix.apply(p)


class OperatorProvider:
    def __init__(
        self,
        kind: str,
        cap: int,
        psi: Optional[PsiSequence] = None,
        q=None,
        r: Optional[RationalFunction] = None,
    ):
        self.kind = kind
        self.cap = cap
        self.psi = psi
        self.q = None if q is None else as_scalar(q)
        self.r = r

    def _need_psi(self) -> PsiSequence:
        if self.psi is None:
            raise MissingParameter(f"{self.kind} needs a psi sequence")
        return self.psi if self.psi.cap == self.cap else self.psi.with_cap(self.cap)

    def _need_q(self) -> Fraction:
        if self.q is None:
            raise MissingParameter(f"{self.kind} needs q")
        return self.q

    def create(self) -> NamedOp:
        cap = self.cap
        if self.kind == "d_psi":
            psi = self._need_psi()
            return NamedOp(OpMatrix.diagonal(psi.n_psi, shift_by=-1), self.kind, psi)
        elif self.kind == "x_hat_psi":
            psi = self._need_psi()
            values = [Fraction(n + 1) / psi.n_psi[n + 1] for n in range(cap)] + [0]
            return NamedOp(OpMatrix.diagonal(values, shift_by=1, valid_degree=cap - 1), self.kind, psi)
        elif self.kind == "n_hat_psi":
            # n̂ψ x^(n-1) = nψ x^(n-1)
            psi = self._need_psi()
            top = self._top_n_psi(psi)
            values = [psi.n_psi[n + 1] for n in range(cap)] + [top or 0]
            valid = cap if top is not None else cap - 1
            return NamedOp(OpMatrix.diagonal(values, shift_by=0, valid_degree=valid), self.kind, psi)
        elif self.kind == "x_hat":
            return NamedOp(OpMatrix.multiplication(Poly.x(cap)), self.kind)
        elif self.kind == "d_classical":
            return NamedOp(OpMatrix.diagonal(range(cap + 1), shift_by=-1), self.kind)
        elif self.kind == "d_zero":
            return NamedOp(OpMatrix.diagonal([ONE] * (cap + 1), shift_by=-1), self.kind)
        elif self.kind == "dilation":
            q = self._need_q()
            return NamedOp(OpMatrix.diagonal([q**n for n in range(cap + 1)]), self.kind, q=q)
        elif self.kind == "d_q":
            q = self._need_q()
            values = [sum((q**i for i in range(n)), Fraction(0)) for n in range(cap + 1)]
            if any(v == 0 for v in values[1:]):
                raise NotAdmissible(f"q = {q} makes some n_q vanish")
            return NamedOp(OpMatrix.diagonal(values, shift_by=-1), self.kind, q=q)
        elif self.kind == "d_R":
            q = self._need_q()
            if self.r is None:
                raise MissingParameter("d_R needs a rational function R")
            try:
                values = [Fraction(0)] + [self.r(q**n) for n in range(1, cap + 1)]
            except ZeroDenominator as e:
                raise NotAdmissible(str(e)) from e
            return NamedOp(OpMatrix.diagonal(values, shift_by=-1), self.kind, q=q)
        elif self.kind == "identity":
            return NamedOp(OpMatrix.identity(cap), self.kind)
        raise MissingParameter(f"unknown operator kind {self.kind!r}")

    def _top_n_psi(self, psi: PsiSequence) -> Optional[Fraction]:
        # (cap+1)ψ is only known for sequences that can grow
        try:
            return psi.with_cap(self.cap + 1).n_psi[self.cap + 1]
        except IndexOutOfCap:
            return None


def make_named(
    kind: str, psi: Optional[PsiSequence] = None, q=None, r=None, cap: Optional[int] = None
) -> NamedOp:
    """Build a named operator; the cap defaults to the cap of psi, then 16."""
    if cap is None:
        cap = psi.cap if psi is not None else 16
    return OperatorProvider(kind, cap, psi=psi, q=q, r=r).create()
