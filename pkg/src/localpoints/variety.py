"""Polynomial systems over the t-line, candidate local points, and verification.

Systems carry equations lhs = rhs plus "!= 0" constraints.  Points bind each
variable to an exact rational function in the local parameter, a truncated
series, or a formal square root of an exact function (legal only when the
variable occurs in even powers).  Verification substitutes and classifies the
residual of every equation and constraint at the point's place.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .errors import ClaimSyntaxError, OddPowerError, ZeroFunctionError
from .exprs import (
    BinOp,
    Expr,
    Neg,
    Num,
    Pow,
    Sym,
    evaluate,
    free_symbols,
    only_even_powers,
    parse_expression,
    to_text,
)
from .field_tower import FieldTower, QQ
from .series import (
    DEFAULT_PRECISION,
    Place,
    PuiseuxSeries,
    RationalFunction,
    is_square_local,
    r_function,
    series_sqrt,
    t_function,
)

LOCAL_PARAMETER = "r"


@dataclass(frozen=True)
class Equation:
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class PolynomialSystem:
    tower: FieldTower
    variables: tuple[str, ...]
    equations: tuple[Equation, ...]
    inequations: tuple[Expr, ...]

    def without_equation(self, index: int) -> PolynomialSystem:
        equations = self.equations[:index] + self.equations[index + 1 :]
        used = set()
        for eq in equations:
            used |= free_symbols(eq.lhs) | free_symbols(eq.rhs)
        for ineq in self.inequations:
            used |= free_symbols(ineq)
        variables = tuple(v for v in self.variables if v in used)
        return PolynomialSystem(self.tower, variables, equations, self.inequations)


def _validate_system_expr(expr: Expr, variables: set[str], line: int) -> None:
    if isinstance(expr, (Num, Sym)):
        return
    if isinstance(expr, Neg):
        _validate_system_expr(expr.operand, variables, line)
        return
    if isinstance(expr, Pow):
        if expr.exponent < 0 and free_symbols(expr.base) & variables:
            raise ClaimSyntaxError("negative power of a variable", line, 1)
        _validate_system_expr(expr.base, variables, line)
        return
    if expr.op == "/" and free_symbols(expr.right) & variables:
        raise ClaimSyntaxError("division by an expression containing variables", line, 1)
    _validate_system_expr(expr.left, variables, line)
    _validate_system_expr(expr.right, variables, line)


def parse_system(text: str, tower: FieldTower = QQ) -> PolynomialSystem:
    """Parse one equation or "!= 0" constraint per line.

    Identifiers that are not t or tower generators become system variables;
    the local parameter r is reserved and rejected here.
    """
    reserved = {"t"} | set(tower.generator_names)
    equations: list[Equation] = []
    inequations: list[Expr] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "!=" in line:
            lhs_text, _, rhs_text = line.partition("!=")
            if rhs_text.strip() != "0":
                raise ClaimSyntaxError("constraints must end in != 0", lineno, line.index("!=") + 1)
            expr = parse_expression(lhs_text, lineno)
            inequations.append(expr)
            seen |= free_symbols(expr)
        elif "=" in line:
            lhs_text, _, rhs_text = line.partition("=")
            lhs = parse_expression(lhs_text, lineno)
            rhs = parse_expression(rhs_text, lineno, column=len(lhs_text) + 2)
            equations.append(Equation(lhs, rhs))
            seen |= free_symbols(lhs) | free_symbols(rhs)
        else:
            raise ClaimSyntaxError("expected '=' or '!= 0'", lineno, 1)
    if LOCAL_PARAMETER in seen:
        raise ClaimSyntaxError("the local parameter r cannot appear in a system", 1, 1)
    variables = tuple(sorted(seen - reserved))
    var_set = set(variables)
    for lineno, eq in enumerate(equations, start=1):
        _validate_system_expr(eq.lhs, var_set, lineno)
        _validate_system_expr(eq.rhs, var_set, lineno)
    for ineq in inequations:
        _validate_system_expr(ineq, var_set, 1)
    return PolynomialSystem(tower, variables, tuple(equations), tuple(inequations))


def print_system(system: PolynomialSystem) -> str:
    lines = [f"{to_text(eq.lhs)} = {to_text(eq.rhs)}" for eq in system.equations]
    lines += [f"{to_text(ineq)} != 0" for ineq in system.inequations]
    return "\n".join(lines)


# -- point assignments -----------------------------------------------------------


@dataclass(frozen=True)
class ExactValue:
    value: RationalFunction


@dataclass(frozen=True)
class SeriesValue:
    value: PuiseuxSeries


@dataclass(frozen=True)
class FormalSqrt:
    """The variable stands for a square root of this exact function."""

    square: RationalFunction


Binding = Union[ExactValue, SeriesValue, FormalSqrt]


@dataclass(frozen=True)
class PointAssignment:
    place: Place
    bindings: Mapping[str, Binding]

    def sqrt_variables(self) -> tuple[str, ...]:
        return tuple(v for v, b in self.bindings.items() if isinstance(b, FormalSqrt))


# -- verification ------------------------------------------------------------------


@dataclass
class EquationResult:
    status: str  # "exact_zero" | "zero_to_precision" | "failed"
    text: str
    precision: int | None = None
    residual_order: int | None = None
    residual_lead: str | None = None
    cleared_by: str | None = None


@dataclass
class InequationResult:
    status: str  # "nonzero" | "zero" | "zero_to_precision"
    text: str
    order: int | None = None
    lead: str | None = None


@dataclass
class VerificationReport:
    mode: str
    place: str
    equations: list[EquationResult] = field(default_factory=list)
    inequations: list[InequationResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.status in ("exact_zero", "zero_to_precision") for e in self.equations) and all(
            i.status == "nonzero" for i in self.inequations
        )

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "place": self.place,
            "passed": self.passed,
            "equations": [vars(e) for e in self.equations],
            "inequations": [vars(i) for i in self.inequations],
        }

    def summary(self) -> str:
        lines = [f"mode={self.mode} place=[{self.place}] -> {'PASS' if self.passed else 'FAIL'}"]
        for k, eq in enumerate(self.equations, start=1):
            detail = eq.status
            if eq.status == "zero_to_precision":
                detail += f" P={eq.precision}"
            if eq.status == "failed":
                detail += f" (residual order {eq.residual_order}, lead {eq.residual_lead})"
            lines.append(f"  eq {k}: {detail}")
        for k, ineq in enumerate(self.inequations, start=1):
            detail = ineq.status
            if ineq.status == "nonzero":
                detail += f" (order {ineq.order}, lead {ineq.lead})"
            lines.append(f"  ineq {k}: {detail}")
        return "\n".join(lines)


def _collect_denominators(expr: Expr, out: list[Expr]) -> None:
    if isinstance(expr, (Num, Sym)):
        return
    if isinstance(expr, Neg):
        _collect_denominators(expr.operand, out)
        return
    if isinstance(expr, Pow):
        if expr.exponent < 0 and free_symbols(expr.base):
            out.append(Pow(expr.base, -expr.exponent))
        _collect_denominators(expr.base, out)
        return
    if expr.op == "/" and free_symbols(expr.right):
        out.append(expr.right)
    _collect_denominators(expr.left, out)
    _collect_denominators(expr.right, out)


def _cleared_sides(eq: Equation) -> tuple[Expr, Expr, Expr | None]:
    """Multiply both sides by every symbol-bearing denominator (i.e. powers of t)."""
    denominators: list[Expr] = []
    _collect_denominators(eq.lhs, denominators)
    _collect_denominators(eq.rhs, denominators)
    if not denominators:
        return eq.lhs, eq.rhs, None
    multiplier = denominators[0]
    for extra in denominators[1:]:
        multiplier = BinOp("*", multiplier, extra)
    return BinOp("*", multiplier, eq.lhs), BinOp("*", multiplier, eq.rhs), multiplier


def _check_even_powers(system: PolynomialSystem, point: PointAssignment) -> None:
    for variable in point.sqrt_variables():
        for eq in system.equations:
            if not (only_even_powers(eq.lhs, variable) and only_even_powers(eq.rhs, variable)):
                raise OddPowerError(
                    f"square-root variable {variable!r} occurs with an odd power"
                )
        for ineq in system.inequations:
            if not only_even_powers(ineq, variable):
                raise OddPowerError(
                    f"square-root variable {variable!r} occurs with an odd power"
                )


def _exact_env(system: PolynomialSystem, point: PointAssignment):
    tower = system.tower
    place = point.place
    env = {"t": t_function(tower, place)}
    for name in tower.generator_names:
        env[name] = RationalFunction.constant(tower, place, tower.gen(name))
    square_env = {}
    for variable, binding in point.bindings.items():
        if isinstance(binding, ExactValue):
            env[variable] = binding.value
        elif isinstance(binding, FormalSqrt):
            square_env[variable] = binding.square
        else:
            raise ValueError(f"exact mode needs exact bindings; {variable!r} is a series")
    const = lambda q: RationalFunction.constant(tower, place, q)  # noqa: E731
    return env, square_env, const


def _series_env(system: PolynomialSystem, point: PointAssignment, precision: int):
    tower = system.tower
    place = point.place
    env = {"t": t_function(tower, place).to_puiseux(precision)}
    for name in tower.generator_names:
        env[name] = PuiseuxSeries.constant(tower, place, tower.gen(name), precision)
    square_env = {}
    for variable, binding in point.bindings.items():
        if isinstance(binding, ExactValue):
            env[variable] = binding.value.to_puiseux(precision)
        elif isinstance(binding, SeriesValue):
            env[variable] = binding.value
        else:
            square_env[variable] = binding.square.to_puiseux(precision)
    const = lambda q: PuiseuxSeries.constant(tower, place, q, precision)  # noqa: E731
    return env, square_env, const


def verify_point(
    system: PolynomialSystem,
    point: PointAssignment,
    mode: str = "exact",
    precision: int = DEFAULT_PRECISION,
) -> VerificationReport:
    """Substitute the point into every equation and constraint and classify.

    Exact mode certifies true zero residuals and true nonzero constraints;
    truncated mode reports agreement to the stated precision, never more.
    """
    if mode not in ("exact", "truncated"):
        raise ValueError(f"unknown mode {mode!r}")
    unbound = [v for v in system.variables if v not in point.bindings]
    if unbound:
        raise ValueError(f"unbound variables: {', '.join(unbound)}")
    _check_even_powers(system, point)
    if mode == "exact":
        env, square_env, const = _exact_env(system, point)
    else:
        env, square_env, const = _series_env(system, point, precision)
    cache: dict = {}

    report = VerificationReport(mode=mode, place=str(point.place))
    for eq in system.equations:
        lhs_expr, rhs_expr, multiplier = _cleared_sides(eq)
        text = f"{to_text(eq.lhs)} = {to_text(eq.rhs)}"
        cleared_by = to_text(multiplier) if multiplier is not None else None
        residual = evaluate(lhs_expr, env, const, square_env, cache) - evaluate(
            rhs_expr, env, const, square_env, cache
        )
        if mode == "exact":
            if residual.is_zero():
                result = EquationResult("exact_zero", text, cleared_by=cleared_by)
            else:
                result = EquationResult(
                    "failed",
                    text,
                    residual_order=residual.order_at_zero(),
                    residual_lead=str(residual.leading_coefficient()),
                    cleared_by=cleared_by,
                )
        else:
            if residual.is_zero():
                result = EquationResult(
                    "zero_to_precision", text, precision=residual.precision, cleared_by=cleared_by
                )
            else:
                result = EquationResult(
                    "failed",
                    text,
                    precision=residual.precision,
                    residual_order=residual.order_at_zero(),
                    residual_lead=str(residual.leading_coefficient()),
                    cleared_by=cleared_by,
                )
        report.equations.append(result)

    for ineq in system.inequations:
        text = f"{to_text(ineq)} != 0"
        value = evaluate(ineq, env, const, square_env, cache)
        if value.is_zero():
            status = "zero" if mode == "exact" else "zero_to_precision"
            report.inequations.append(InequationResult(status, text))
        else:
            report.inequations.append(
                InequationResult(
                    "nonzero",
                    text,
                    order=value.order_at_zero(),
                    lead=str(value.leading_coefficient()),
                )
            )
    return report


# -- squareness and lifting ---------------------------------------------------------


@dataclass
class SquareOutcome:
    kind: str  # "witness" | "nonsquare" | "undecided"
    order: int | None = None
    witness: PuiseuxSeries | None = None
    tower: FieldTower | None = None


def evaluate_at_point(
    system: PolynomialSystem, point: PointAssignment, expr: Expr
) -> RationalFunction:
    """Exact value of an expression under the point's bindings."""
    env, square_env, const = _exact_env(system, point)
    return evaluate(expr, env, const, square_env)


def solve_square(
    system: PolynomialSystem,
    lhs: Expr,
    g: Expr,
    point: PointAssignment,
    mode: str = "over_c",
    precision: int = DEFAULT_PRECISION,
) -> SquareOutcome:
    """Decide whether lhs/g is a local square at the point; witness on success."""
    lhs_value = evaluate_at_point(system, point, lhs)
    g_value = evaluate_at_point(system, point, g)
    if g_value.is_zero():
        raise ZeroDivisionError("square factor vanishes at the point")
    if lhs_value.is_zero():
        raise ZeroFunctionError("left-hand side vanishes at the point")
    quotient = lhs_value / g_value
    check = is_square_local(quotient, mode)
    if check.kind == "no":
        return SquareOutcome("nonsquare", order=check.order)
    if check.kind == "undecided":
        return SquareOutcome("undecided", order=check.order)
    witness, tower = series_sqrt(quotient.to_puiseux(precision))
    return SquareOutcome("witness", order=check.order, witness=witness, tower=tower)


@dataclass
class LiftOutcome:
    kind: str  # "lifts" | "obstructed" | "undecided"
    variable: str
    order: int | None = None
    witness: PuiseuxSeries | None = None
    tower: FieldTower | None = None


def find_cover_equation(
    cover: PolynomialSystem, point: PointAssignment
) -> tuple[int, str, Expr]:
    """Locate the unique equation w^2 = g whose variable the point leaves unbound."""
    for index, eq in enumerate(cover.equations):
        for side, other in ((eq.lhs, eq.rhs), (eq.rhs, eq.lhs)):
            if (
                isinstance(side, Pow)
                and side.exponent == 2
                and isinstance(side.base, Sym)
                and side.base.name in cover.variables
                and side.base.name not in point.bindings
            ):
                return index, side.base.name, other
    raise ValueError("no cover equation w^2 = g with an unbound variable")


def lift_along_cover(
    cover: PolynomialSystem,
    base_point: PointAssignment,
    mode: str = "over_c",
    precision: int = DEFAULT_PRECISION,
    twist: RationalFunction | None = None,
    check_base: bool = True,
) -> LiftOutcome:
    """Try to lift a verified base point along the double cover w^2 = g.

    An odd-valuation g is the obstruction certificate.  A fractional cover
    factor, made integral by ramification, enters as the twist multiplier.
    Callers that already verified the base point can pass check_base=False.
    """
    index, variable, g_expr = find_cover_equation(cover, base_point)
    base = cover.without_equation(index)
    if check_base:
        base_report = verify_point(base, base_point, mode="exact")
        if not base_report.passed:
            raise ValueError("base point does not verify on the base system")
    g_value = evaluate_at_point(base, base_point, g_expr)
    if twist is not None:
        g_value = g_value * twist
    if g_value.is_zero():
        raise ZeroFunctionError("cover factor vanishes at the point")
    check = is_square_local(g_value, mode)
    if check.kind == "no":
        return LiftOutcome("obstructed", variable, order=check.order)
    if check.kind == "undecided":
        return LiftOutcome("undecided", variable, order=check.order)
    witness, tower = series_sqrt(g_value.to_puiseux(precision))
    return LiftOutcome("lifts", variable, order=check.order, witness=witness, tower=tower)


# -- the eight-case valuation split --------------------------------------------------


def valuation_case_predicates(vu: Fraction, vx: Fraction) -> tuple[bool, ...]:
    """The eight mutually exclusive regions of the (v(u), v(x)) plane.

    Transcribed one predicate per case so that totality and disjointness are
    testable facts rather than artifacts of an if-chain.
    """
    half = Fraction(1, 2)
    return (
        vu < -half,
        vu == -half and vx > 0,
        vu == -half and vx == 0,
        vu == -half and vx < 0,
        -half < vu < 0 and 2 * vx < 1 + 2 * vu,
        -half < vu < 0 and 2 * vx >= 1 + 2 * vu,
        vu >= 0 and 2 * vx + 1 <= 0,
        vu >= 0 and 2 * vx + 1 > 0,
    )


def valuation_case(vu: Fraction, vx: Fraction) -> int:
    """Index (1-8) of the unique case region containing (v(u), v(x))."""
    predicates = valuation_case_predicates(vu, vx)
    matches = [k for k, hit in enumerate(predicates, start=1) if hit]
    if len(matches) != 1:
        raise AssertionError(f"case predicates not a partition at ({vu}, {vx}): {matches}")
    return matches[0]


# -- sampled square-lift property ------------------------------------------------------


def _random_laurent(
    rng: random.Random, tower: FieldTower, place: Place, order: int, terms: int
) -> RationalFunction:
    coeffs = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))]
    coeffs += [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(terms - 1)]
    unit = RationalFunction.from_coeffs(tower, place, coeffs)
    shift = r_function(tower, place) ** abs(order)
    return unit * shift if order >= 0 else unit / shift


def sample_square_lift_property(
    samples: int = 500, seed: int = 1, e_max: int = 6, max_numerator: int = 12
) -> dict:
    """Stratified random check: solvable-for-y-and-z forces the cover factor square.

    Draws (v(u), v(x)) from each of the eight case regions in equal proportion,
    with random Laurent polynomial u, x realizing those valuations.  Whenever
    both residual quotients for y^2 and z^2 have even order (squares over the
    complex numbers) and no constraint vanishes, the cover factor u^2 t^2 - t
    must have even order as well.  Counterexamples are returned, expected none.
    """
    rng = random.Random(seed)
    counts = {case: 0 for case in range(1, 9)}
    hypothesis_hits = 0
    degenerate = 0
    counterexamples: list[dict] = []
    for k in range(samples):
        case = k % 8 + 1
        while True:
            e = rng.randint(1, e_max)
            a = rng.randint(-max_numerator, max_numerator)
            b = rng.randint(-max_numerator, max_numerator)
            if valuation_case_predicates(Fraction(a, e), Fraction(b, e))[case - 1]:
                break
        counts[case] += 1
        place = Place.finite(QQ.zero(), e)
        t = t_function(QQ, place)
        u = _random_laurent(rng, QQ, place, a, rng.randint(1, 3))
        x = _random_laurent(rng, QQ, place, b, rng.randint(1, 3))
        g = u * u * t * t - t
        lhs1 = x * x - t * u * u + t
        lhs2_cleared = x * x * t - 2 * t * t * u * u + 1
        if g.is_zero() or lhs1.is_zero() or lhs2_cleared.is_zero():
            degenerate += 1
            continue
        qy = lhs1 / g
        qz = lhs2_cleared / (t * t * g)
        if qy.order_at_zero() % 2 or qz.order_at_zero() % 2:
            continue
        hypothesis_hits += 1
        if g.order_at_zero() % 2:
            counterexamples.append(
                {"e": e, "case": case, "u": str(u), "x": str(x), "g_order": g.order_at_zero()}
            )
    return {
        "samples": samples,
        "seed": seed,
        "case_counts": counts,
        "hypothesis_hits": hypothesis_hits,
        "degenerate": degenerate,
        "counterexamples": counterexamples,
    }
