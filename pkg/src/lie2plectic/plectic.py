"""2-plectic forms with constant coefficients and their observable Lie 2-algebras.

Conventions: ``d alpha = -iota_X omega`` for a Hamiltonian 1-form and
``df = -iota_v omega`` for a Hamiltonian pair ``(f, v)``. With constant
coefficients both become constant linear systems with ExpPoly right-hand
sides, solved exactly by pivoted elimination.

Two observable algebras are modelled on finitely presented elements:

* the extended algebra with degree -1 elements ``(ftilde, (f, v))`` and
  degree 0 Hamiltonian forms (:class:`ExtendedObservableAlgebra`),
* the function/form algebra with degree -1 functions (:class:`ObservableAlgebra`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .calculus import (
    DifferentialForm,
    FieldAlgebra,
    MultiVectorField,
    contract,
    differential,
    exterior_derivative,
    lie_derivative,
    schouten,
    wedge,
)
from .laws import check_morphism, check_relations
from .linalg import nullspace, rank, solve_module
from .report import CheckResult, Report
from .ring import ExpPoly

__all__ = [
    "PlecticForm",
    "HamiltonianForm",
    "HamiltonianPair",
    "Observable",
    "NotHamiltonian",
    "check_2plectic",
    "kernel2",
    "solve_hamiltonian_vector",
    "solve_hamiltonian_pair",
    "homotopy_primitive",
    "is_multisymplectic",
    "ExtendedObservableAlgebra",
    "ObservableAlgebra",
    "bracket_L2",
    "bracket_D2t",
    "morphism_I",
    "morphism_Phi",
    "gradient_Psi",
    "verify_gradient",
    "observable_relations",
]


class NotHamiltonian(ValueError):
    """Raised when a form or function has no Hamiltonian field."""


def _function_of(form0: DifferentialForm) -> ExpPoly:
    return form0.coeffs.get((), ExpPoly.zero(form0.dim))


def _pairs(m: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, m + 1), 2))


def _constant(omega: DifferentialForm) -> None:
    if not isinstance(omega, DifferentialForm) or omega.degree != 3 and omega.coeffs:
        raise ValueError("a 2-plectic form must be a differential 3-form")
    if not omega.is_constant():
        raise ValueError("only constant-coefficient 3-forms are supported")


def _vector_matrix(omega: DifferentialForm) -> list[list[Fraction]]:
    """Matrix of X -> iota_X omega; rows are 2-form basis pairs."""
    m = omega.dim
    cols = [contract(MultiVectorField.basis(m, i), omega) for i in range(1, m + 1)]
    return [[_const(c.coefficient(p)) for c in cols] for p in _pairs(m)]


def _bivector_matrix(omega: DifferentialForm) -> list[list[Fraction]]:
    """Matrix of u -> iota_u omega on bivectors; rows are 1-form basis indices."""
    m = omega.dim
    cols = [contract(MultiVectorField.basis(m, p), omega) for p in _pairs(m)]
    return [[_const(c.coefficient((k,))) for c in cols] for k in range(1, m + 1)]


def _const(f: ExpPoly) -> Fraction:
    return f.constant_value() if f else Fraction(0)


def check_2plectic(omega: DifferentialForm) -> Report:
    """Closedness and nondegeneracy of a constant 3-form."""
    _constant(omega)
    m = omega.dim
    rep = Report("2-plectic")
    closed = exterior_derivative(omega).is_zero() if omega.coeffs else True
    rep.add(CheckResult("closed", closed, 1))
    mat = _vector_matrix(omega)
    r = rank(mat, m) if mat else 0
    kernel = nullspace(mat, m) if mat else [[Fraction(int(i == j)) for i in range(m)] for j in range(m)]
    witness = None
    if r < m:
        witness = {"kernel": [str(MultiVectorField(m, 1, {(i + 1,): c for i, c in enumerate(v) if c}))
                              for v in kernel]}
    rep.add(CheckResult("nondegenerate", r == m, m, witness))
    rep.data["rank"] = r
    return rep


def kernel2(omega: DifferentialForm) -> list[MultiVectorField]:
    """Basis of the bivectors u with iota_u omega = 0."""
    _constant(omega)
    m = omega.dim
    pairs = _pairs(m)
    basis = nullspace(_bivector_matrix(omega), len(pairs))
    return [MultiVectorField(m, 2, {p: c for p, c in zip(pairs, v) if c}) for v in basis]


class PlecticForm:
    """A nondegenerate constant-coefficient 3-form on a chart."""

    def __init__(self, omega: DifferentialForm):
        rep = check_2plectic(omega)
        if not rep.passed:
            raise ValueError(f"degenerate 3-form: kernel {rep['nondegenerate'].witness['kernel']}")
        self.omega = omega
        self.dim = omega.dim
        self._vmat = _vector_matrix(omega)
        self._bmat = _bivector_matrix(omega)

    def __eq__(self, other) -> bool:
        return isinstance(other, PlecticForm) and self.omega == other.omega

    def __hash__(self):
        return hash(self.omega)

    def __repr__(self) -> str:
        return f"PlecticForm({self.omega})"

    def contract(self, v: MultiVectorField) -> DifferentialForm:
        return contract(v, self.omega)

    def _solve(self, mat, rhs: list[ExpPoly], ncols: int):
        zero = ExpPoly.zero(self.dim)
        return solve_module(mat, rhs, ncols, zero=zero, is_zero=lambda e: e.is_zero())

    def hamiltonian_vector(self, alpha: DifferentialForm) -> MultiVectorField:
        if not isinstance(alpha, DifferentialForm) or (alpha.coeffs and alpha.degree != 1):
            raise TypeError("a Hamiltonian form must be a 1-form")
        m = self.dim
        target = -exterior_derivative(alpha) if alpha.coeffs else DifferentialForm.zero(m, 2)
        sol = self._solve(self._vmat, [target.coefficient(p) for p in _pairs(m)], m)
        if sol is None:
            raise NotHamiltonian(f"d({alpha}) is not of the form -iota_X omega")
        return MultiVectorField(m, 1, {(i + 1,): c for i, c in enumerate(sol) if c})

    def hamiltonian_bivector(self, f: ExpPoly) -> MultiVectorField:
        m = self.dim
        target = -differential(f)
        pairs = _pairs(m)
        sol = self._solve(self._bmat, [target.coefficient((k,)) for k in range(1, m + 1)], len(pairs))
        if sol is None:
            raise NotHamiltonian(f"d({f}) is not of the form -iota_v omega")
        return MultiVectorField(m, 2, {p: c for p, c in zip(pairs, sol) if c})

    # -- element constructors -------------------------------------------
    def form(self, alpha: DifferentialForm, X: MultiVectorField | None = None) -> "HamiltonianForm":
        if X is None:
            X = self.hamiltonian_vector(alpha)
        return HamiltonianForm.checked(alpha, X, self)

    def pair(self, f: ExpPoly, v: MultiVectorField | None = None) -> "HamiltonianPair":
        if v is None:
            v = self.hamiltonian_bivector(f)
        return HamiltonianPair.checked(f, v, self)

    def observable(self, ftilde: ExpPoly, f: ExpPoly | None = None, v: MultiVectorField | None = None) -> "Observable":
        m = self.dim
        f = f if f is not None else ExpPoly.zero(m)
        if v is None and not f:
            v = MultiVectorField.zero(m, 2)
        return Observable(ftilde, self.pair(f, v))

    def zero_form(self) -> "HamiltonianForm":
        return HamiltonianForm(DifferentialForm.zero(self.dim, 1), MultiVectorField.zero(self.dim, 1))

    def zero_observable(self) -> "Observable":
        z = ExpPoly.zero(self.dim)
        return Observable(z, HamiltonianPair(z, MultiVectorField.zero(self.dim, 2)))


def solve_hamiltonian_vector(alpha: DifferentialForm, omega) -> "HamiltonianForm":
    P = omega if isinstance(omega, PlecticForm) else PlecticForm(omega)
    return P.form(alpha)


def solve_hamiltonian_pair(f: ExpPoly, omega) -> "HamiltonianPair":
    P = omega if isinstance(omega, PlecticForm) else PlecticForm(omega)
    return P.pair(f)


def is_multisymplectic(v: MultiVectorField, omega) -> bool:
    om = omega.omega if isinstance(omega, PlecticForm) else omega
    return lie_derivative(v, om).is_zero()


def homotopy_primitive(beta: DifferentialForm) -> DifferentialForm:
    """Poincare homotopy operator with base point 0 on polynomial forms.

    ``h(beta) = int_0^1 t^(p-1) iota_E beta(t q) dt`` with the Euler field
    ``E``. For closed ``beta`` of degree ``p >= 1``, ``d h(beta) = beta``.
    """
    if beta.has_exponentials():
        raise ValueError("the homotopy operator is only closed over polynomial coefficients")
    m, p = beta.dim, beta.degree
    if p == 0:
        raise ValueError("functions have no primitive")
    euler = MultiVectorField(m, 1, {(i,): ExpPoly.coord(m, i) for i in range(1, m + 1)})
    out = DifferentialForm.zero(m, p - 1)
    for idx, c in beta.coeffs.items():
        for coeff, alpha, _ in c.terms():
            mono = ExpPoly(m, {((0,) * m, alpha): coeff / (sum(alpha) + p)})
            out = out + contract(euler, DifferentialForm(m, p, {idx: mono}))
    return out


@dataclass(frozen=True)
class HamiltonianForm:
    """A 1-form alpha with its Hamiltonian vector field, d alpha = -iota_X omega."""

    alpha: DifferentialForm
    X: MultiVectorField

    @classmethod
    def checked(cls, alpha, X, P: PlecticForm) -> "HamiltonianForm":
        lhs = exterior_derivative(alpha) if alpha.coeffs else DifferentialForm.zero(P.dim, 2)
        rhs = -P.contract(X) if X.coeffs else DifferentialForm.zero(P.dim, 2)
        if lhs != rhs:
            raise NotHamiltonian(f"d alpha != -iota_X omega for alpha = {alpha}, X = {X}")
        return cls(alpha, X)

    def __add__(self, other: "HamiltonianForm") -> "HamiltonianForm":
        return HamiltonianForm(self.alpha + other.alpha, self.X + other.X)

    def __neg__(self) -> "HamiltonianForm":
        return HamiltonianForm(-self.alpha, -self.X)

    def __sub__(self, other: "HamiltonianForm") -> "HamiltonianForm":
        return self + (-other)

    def scale(self, c) -> "HamiltonianForm":
        return HamiltonianForm(self.alpha * Fraction(c), self.X * Fraction(c))

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and self.X.is_zero()

    def __str__(self) -> str:
        return f"<{self.alpha} | X={self.X}>"

    def to_dict(self) -> dict:
        return {"alpha": str(self.alpha), "X": str(self.X)}


@dataclass(frozen=True)
class HamiltonianPair:
    """A function with a bivector field, df = -iota_v omega."""

    f: ExpPoly
    v: MultiVectorField

    @classmethod
    def checked(cls, f, v, P: PlecticForm) -> "HamiltonianPair":
        if v.coeffs and v.degree != 2:
            raise TypeError("the pair needs a bivector field")
        v = v if v.coeffs else MultiVectorField.zero(P.dim, 2)
        if differential(f) != (-P.contract(v) if v.coeffs else DifferentialForm.zero(P.dim, 1)):
            raise NotHamiltonian(f"df != -iota_v omega for f = {f}, v = {v}")
        return cls(f, v)

    def __add__(self, other: "HamiltonianPair") -> "HamiltonianPair":
        return HamiltonianPair(self.f + other.f, self.v + other.v)

    def __neg__(self) -> "HamiltonianPair":
        return HamiltonianPair(-self.f, -self.v)

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.v.is_zero()

    def __str__(self) -> str:
        return f"({self.f}, {self.v})"


@dataclass(frozen=True)
class Observable:
    """Degree -1 observable ``(ftilde, (f, v))``."""

    ftilde: ExpPoly
    pair: HamiltonianPair

    @property
    def f(self) -> ExpPoly:
        return self.pair.f

    @property
    def v(self) -> MultiVectorField:
        return self.pair.v

    def __add__(self, other: "Observable") -> "Observable":
        return Observable(self.ftilde + other.ftilde, self.pair + other.pair)

    def __neg__(self) -> "Observable":
        return Observable(-self.ftilde, -self.pair)

    def __sub__(self, other: "Observable") -> "Observable":
        return self + (-other)

    def scale(self, c) -> "Observable":
        c = Fraction(c)
        return Observable(self.ftilde.scale(c), HamiltonianPair(self.f.scale(c), self.v * c))

    def is_zero(self) -> bool:
        return self.ftilde.is_zero() and self.pair.is_zero()

    def __str__(self) -> str:
        return f"({self.ftilde}, {self.pair})"

    def to_dict(self) -> dict:
        return {"ftilde": str(self.ftilde), "f": str(self.f), "v": str(self.v)}


class _ObservableBrackets:
    """Shared brackets; ``validate=False`` skips re-checking outputs (used when
    inputs are unverified data that is checked separately)."""

    def __init__(self, P: PlecticForm, validate: bool = True):
        self.P = P
        self.dim = P.dim
        self.validate = validate

    def l2p(self, a: HamiltonianForm, b: HamiltonianForm) -> HamiltonianForm:
        form1 = self.P.contract(wedge(a.X, b.X)) if a.X.coeffs and b.X.coeffs \
            else DifferentialForm.zero(self.dim, 1)
        if not self.validate:
            return HamiltonianForm(form1, schouten(a.X, b.X))
        return HamiltonianForm.checked(form1, schouten(a.X, b.X), self.P)

    def _triple(self, a, b, c) -> ExpPoly:
        if not (a.X.coeffs and b.X.coeffs and c.X.coeffs):
            return ExpPoly.zero(self.dim)
        return _function_of(self.P.contract(wedge(wedge(a.X, b.X), c.X)))

    @staticmethod
    def fmt(e) -> str:
        return str(e)


class ExtendedObservableAlgebra(_ObservableBrackets):
    """Brackets on ``(functions x Hamiltonian pairs) + Hamiltonian forms``.

    The stored mixed bracket is
    ``l2m((ftilde, (f, v)), alpha) = (0, (iota_{v ^ X_alpha} omega, [v, X_alpha]_S))``
    and its output pair is re-validated.
    """

    def l1(self, a: Observable) -> HamiltonianForm:
        return HamiltonianForm(differential(a.ftilde), MultiVectorField.zero(self.dim, 1))

    def l2m(self, a: Observable, x: HamiltonianForm) -> Observable:
        if not (a.v.coeffs and x.X.coeffs):
            return self.P.zero_observable()
        f = _function_of(self.P.contract(wedge(a.v, x.X)))
        if self.validate:
            pair = HamiltonianPair.checked(f, schouten(a.v, x.X), self.P)
        else:
            pair = HamiltonianPair(f, schouten(a.v, x.X))
        return Observable(ExpPoly.zero(self.dim), pair)

    def l3(self, a, b, c) -> Observable:
        z = self.P.zero_observable()
        return Observable(-self._triple(a, b, c), z.pair)

    @staticmethod
    def is_zero(e) -> bool:
        return e.is_zero()


class ObservableAlgebra(_ObservableBrackets):
    """Brackets on ``functions + Hamiltonian forms``; the mixed bracket vanishes."""

    def l1(self, f: ExpPoly) -> HamiltonianForm:
        return HamiltonianForm(differential(f), MultiVectorField.zero(self.dim, 1))

    def l2m(self, f: ExpPoly, x: HamiltonianForm) -> ExpPoly:
        return ExpPoly.zero(self.dim)

    def l3(self, a, b, c) -> ExpPoly:
        return -self._triple(a, b, c)

    @staticmethod
    def is_zero(e) -> bool:
        return e.is_zero()


def bracket_L2(P: PlecticForm, kind: str, *args):
    """Evaluate ``l1``, ``l2`` or ``l3`` of the function/form algebra."""
    S = ObservableAlgebra(P)
    if kind == "l1":
        return S.l1(*args)
    if kind == "l2":
        return S.l2p(*args)
    if kind == "l3":
        return S.l3(*args)
    raise ValueError(f"unknown bracket {kind!r}")


def bracket_D2t(P: PlecticForm, kind: str, *args):
    """Evaluate ``l1``, ``l2p``, ``l2m`` or ``l3`` of the extended observable algebra."""
    S = ExtendedObservableAlgebra(P)
    fn = {"l1": S.l1, "l2p": S.l2p, "l2m": S.l2m, "l3": S.l3}.get(kind)
    if fn is None:
        raise ValueError(f"unknown bracket {kind!r}")
    return fn(*args)


def morphism_I(x):
    """Inclusion: functions go to ``(ftilde, (0, 0))``, forms are unchanged."""
    if isinstance(x, HamiltonianForm):
        return x
    if isinstance(x, ExpPoly):
        return Observable(x, HamiltonianPair(ExpPoly.zero(x.dim), MultiVectorField.zero(x.dim, 2)))
    raise TypeError(f"cannot include {type(x).__name__}")


def morphism_Phi(x):
    """Projection onto the first component; forms are unchanged."""
    if isinstance(x, HamiltonianForm):
        return x
    if isinstance(x, Observable):
        return x.ftilde
    raise TypeError(f"cannot project {type(x).__name__}")


def gradient_Psi(x, P: PlecticForm | None = None, psi2: Callable | None = None,
                 samples: tuple[Sequence, Sequence] | None = None) -> MultiVectorField:
    """The 2-plectic gradient on one element: ``(ftilde, (f, v)) -> v`` and ``alpha -> X_alpha``.

    A nonzero ``psi2`` is only accepted after the morphism laws hold on the
    supplied ``samples = (observables, forms)``.
    """
    if psi2 is not None:
        if P is None or samples is None:
            raise ValueError("a non-strict gradient needs the plectic form and samples to check")
        rep = verify_gradient(P, psi2, *samples)
        if not rep.passed:
            raise ValueError(f"psi2 is not a valid gradient: {rep.failures()[0].name}")
    if isinstance(x, Observable):
        return x.v
    if isinstance(x, HamiltonianForm):
        return x.X
    raise TypeError(f"no gradient for {type(x).__name__}")


def verify_gradient(P: PlecticForm, psi2: Callable | None, observables: Sequence, forms: Sequence) -> Report:
    """Morphism laws for ``(Psi1, psi2)`` on sampled elements."""
    S, T = ExtendedObservableAlgebra(P), FieldAlgebra(P.dim)
    zero2 = MultiVectorField.zero(P.dim, 2)
    F2 = psi2 or (lambda a, b: zero2)
    return check_morphism(S, T, lambda x: x.X, lambda a: a.v, F2, list(observables), list(forms),
                          [f"obs{i}" for i in range(len(observables))],
                          [f"form{i}" for i in range(len(forms))], subject="gradient")


def observable_relations(P: PlecticForm, observables: Sequence, forms: Sequence) -> Report:
    return check_relations(ExtendedObservableAlgebra(P), list(observables), list(forms),
                           [f"obs{i}" for i in range(len(observables))],
                           [f"form{i}" for i in range(len(forms))], subject="observables")
