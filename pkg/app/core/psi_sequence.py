"""Admissible ψ-sequences and the quantities derived from them.

A sequence is stored extensionally: the deformed integers nψ and the values
ψ_n up to the truncation degree. Closed forms only appear in the preset
constructors.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from app.core.exact_core import ONE, ZERO, as_scalar
from app.helpers.errors import (
    IndexOutOfCap,
    KExceedsN,
    MissingParameter,
    NotAdmissible,
    ZeroDenominator,
)

logger = logging.getLogger(__name__)

PRESETS = ("classical", "q-jackson", "ones", "dxd", "custom-R", "custom")


@dataclass(frozen=True)
class RationalFunction:
    """R(x) = num(x) / den(x), coefficient lists ascending by degree."""

    num: Tuple[Fraction, ...]
    den: Tuple[Fraction, ...] = (ONE,)

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(as_scalar(c) for c in self.num))
        object.__setattr__(self, "den", tuple(as_scalar(c) for c in self.den))
        if not any(self.den):
            raise ZeroDenominator("denominator of R is the zero polynomial")

    @classmethod
    def jackson(cls, q) -> "RationalFunction":
        """R(x) = (1 - x) / (1 - q), the choice giving the q-integers."""
        q = as_scalar(q)
        return cls((ONE, -ONE), (ONE - q,))

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls((as_scalar(c),))

    @staticmethod
    def _eval(coeffs, x: Fraction) -> Fraction:
        acc = ZERO
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x) -> Fraction:
        x = as_scalar(x)
        den = self._eval(self.den, x)
        if den == 0:
            raise ZeroDenominator(f"R has a pole at {x}")
        return self._eval(self.num, x) / den


def q_integer(n: int, q) -> Fraction:
    """n_q = 1 + q + ... + q^(n-1) = (1 - q^n)/(1 - q)."""
    q = as_scalar(q)
    return sum((q**i for i in range(n)), ZERO)


@dataclass(frozen=True)
class PsiSequence:
    cap: int
    n_psi: Tuple[Fraction, ...]
    psi_vals: Tuple[Fraction, ...]
    q: Optional[Fraction] = None
    label: str = "custom"
    r: Optional[RationalFunction] = None

    def __post_init__(self):
        if len(self.n_psi) != self.cap + 1 or len(self.psi_vals) != self.cap + 1:
            raise NotAdmissible(f"value tables must have length cap+1 = {self.cap + 1}")
        if self.psi_vals[0] != 1:
            raise NotAdmissible("psi_0 must equal 1")
        if self.n_psi[0] != 0:
            raise NotAdmissible("0_psi must equal 0")
        for n in range(1, self.cap + 1):
            if self.psi_vals[n] == 0 or self.n_psi[n] == 0:
                raise NotAdmissible(f"{n}_psi vanishes (label {self.label})")
            if self.n_psi[n] != self.psi_vals[n - 1] / self.psi_vals[n]:
                raise NotAdmissible(f"n_psi[{n}] is inconsistent with psi_vals")

    @classmethod
    def from_n_psi(
        cls,
        n_psi: Sequence,
        label: str = "custom",
        q=None,
        r: Optional[RationalFunction] = None,
    ) -> "PsiSequence":
        values = [as_scalar(v) for v in n_psi]
        if not values or values[0] != 0:
            raise NotAdmissible("n_psi must start with 0_psi = 0")
        psi_vals = [ONE]
        for n in range(1, len(values)):
            if values[n] == 0:
                raise NotAdmissible(f"{n}_psi = 0 for label {label!r}")
            psi_vals.append(psi_vals[-1] / values[n])
        return cls(
            cap=len(values) - 1,
            n_psi=tuple(values),
            psi_vals=tuple(psi_vals),
            q=None if q is None else as_scalar(q),
            label=label,
            r=r,
        )

    def n(self, n: int) -> Fraction:
        self._check_index(n)
        return self.n_psi[n]

    def _check_index(self, n: int) -> None:
        if not 0 <= n <= self.cap:
            raise IndexOutOfCap(f"index {n} outside 0..{self.cap}")

    def factorial(self, n: int) -> Fraction:
        """nψ! = nψ (n-1)ψ ... 1ψ = 1/ψ_n."""
        self._check_index(n)
        return ONE / self.psi_vals[n]

    def falling(self, n: int, k: int) -> Fraction:
        """nψ (n-1)ψ ... (n-k+1)ψ."""
        self._check_index(n)
        if k < 0:
            raise IndexOutOfCap(f"negative k = {k}")
        if k > n:
            raise KExceedsN(f"k = {k} exceeds n = {n}")
        acc = ONE
        for i in range(k):
            acc *= self.n_psi[n - i]
        return acc

    def binomial(self, n: int, k: int) -> Fraction:
        """(n k)ψ = nψ^(k falling) / kψ!."""
        return self.falling(n, k) / self.factorial(k)

    def same_sequence(self, other: "PsiSequence") -> bool:
        return self.n_psi == other.n_psi

    def with_cap(self, cap: int) -> "PsiSequence":
        """Rebuild at another cap; only presets can grow."""
        if cap <= self.cap:
            return PsiSequence.from_n_psi(self.n_psi[: cap + 1], self.label, self.q, self.r)
        if self.label not in PRESETS or self.label == "custom":
            raise IndexOutOfCap(f"{self.label} sequence only known up to {self.cap}")
        return make_preset(self.label, q=self.q, cap=cap, r=self.r)


def make_preset(
    label: str,
    q=None,
    cap: int = 16,
    r: Optional[RationalFunction] = None,
    n_psi: Optional[Sequence] = None,
) -> PsiSequence:
    """Build and validate a preset ψ up to ``cap``."""
    logger.debug("building preset %s (q=%s, cap=%d)", label, q, cap)
    if label == "classical":
        return PsiSequence.from_n_psi([Fraction(n) for n in range(cap + 1)], label)
    if label == "ones":
        return PsiSequence.from_n_psi([ZERO] + [ONE] * cap, label)
    if label == "dxd":
        return PsiSequence.from_n_psi([Fraction(n * n) for n in range(cap + 1)], label)
    if label == "q-jackson":
        if q is None:
            raise MissingParameter("q-jackson needs q")
        q = as_scalar(q)
        if q == 1:
            raise NotAdmissible("q = 1 is the classical preset")
        values = [q_integer(n, q) for n in range(cap + 1)]
        return PsiSequence.from_n_psi(values, label, q=q, r=RationalFunction.jackson(q))
    if label == "custom-R":
        if r is None or q is None:
            raise MissingParameter("custom-R needs R and q")
        q = as_scalar(q)
        try:
            values = [ZERO] + [r(q**n) for n in range(1, cap + 1)]
        except ZeroDenominator as e:
            raise NotAdmissible(str(e)) from e
        return PsiSequence.from_n_psi(values, label, q=q, r=r)
    if label == "custom":
        if n_psi is None:
            raise MissingParameter("custom preset needs an n_psi list")
        if len(n_psi) < cap + 1:
            raise NotAdmissible(f"custom n_psi has {len(n_psi)} entries, cap {cap} needs {cap + 1}")
        return PsiSequence.from_n_psi(list(n_psi)[: cap + 1], label)
    raise MissingParameter(f"unknown preset {label!r}; choose one of {', '.join(PRESETS)}")


def psi_factorial(psi: PsiSequence, n: int) -> Fraction:
    return psi.factorial(n)


def psi_falling(psi: PsiSequence, n: int, k: int) -> Fraction:
    return psi.falling(n, k)


def psi_binomial(psi: PsiSequence, n: int, k: int) -> Fraction:
    return psi.binomial(n, k)


def identify_preset(psi: PsiSequence) -> Optional[str]:
    """Name the preset that produces exactly these nψ, if any."""
    cap = psi.cap
    for label in ("classical", "ones", "dxd"):
        if make_preset(label, cap=cap).same_sequence(psi):
            return label
    if cap >= 2:
        q = psi.n_psi[2] - 1
        try:
            if q != 1 and make_preset("q-jackson", q=q, cap=cap).same_sequence(psi):
                return f"q-jackson(q={q})"
        except NotAdmissible:
            return None
    return None
