"""Claim registry, claim-file ingestion, and the batch runner.

A claim binds a named computation to an executable check: point
verifications, cover lift tests, squareness certificates, orbifold and
semigroup facts, and seeded property sweeps.  Builtins cover every explicit
computation in scope; claim files add more through the same line-oriented
language the builtins use.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Mapping

from .errors import (
    ClaimSyntaxError,
    DuplicateClaimError,
    UnknownClaimError,
)
from .exprs import Expr, Neg, Num, Pow, Sym, evaluate, free_symbols, parse_expression
from .field_tower import QQ, AlreadySplit, FieldElement, FieldTower, adjoin_quadratic
from .orbifold import (
    INF,
    MultiplicityProfile,
    OrbifoldCurve,
    degree,
    forced_component,
    is_general_type,
    profile_stats,
    pullback_half_marks,
    semigroup_contains,
)
from .series import (
    DEFAULT_PRECISION,
    Place,
    RationalFunction,
    r_function,
    t_function,
)
from .variety import (
    ExactValue,
    FormalSqrt,
    PointAssignment,
    PolynomialSystem,
    lift_along_cover,
    parse_system,
    sample_square_lift_property,
    solve_square,
    valuation_case_predicates,
    verify_point,
)

KINDS = (
    "point_verification",
    "lift_test",
    "squareness_certificate",
    "orbifold_fact",
    "semigroup_fact",
    "property_test",
)

DEFAULT_SEED = 1


@dataclass(frozen=True)
class ClaimParams:
    precision: int = DEFAULT_PRECISION
    samples: int = 500
    seed: int = DEFAULT_SEED
    mode: str = "exact"


@dataclass
class ClaimOutcome:
    verdict: str  # "pass" | "fail" | "undecided"
    evidence: dict


@dataclass
class Claim:
    name: str
    kind: str
    description: str
    run: Callable[[ClaimParams], ClaimOutcome]
    system_source: str | None = None
    system_tower: FieldTower | None = None  # tower the source's coefficients live in


@dataclass
class ClaimReport:
    name: str
    kind: str
    verdict: str
    evidence: dict
    wall_time: float

    def as_dict(self, with_timing: bool = False) -> dict:
        payload = {
            "name": self.name,
            "kind": self.kind,
            "verdict": self.verdict,
            "evidence": self.evidence,
        }
        if with_timing:
            payload["wall_time"] = self.wall_time
        return payload


def run_claim(
    name: str, registry: Mapping[str, Claim] | None = None, **overrides
) -> ClaimReport:
    registry = registry if registry is not None else builtin_registry()
    if name not in registry:
        raise UnknownClaimError(f"no claim named {name!r}; see `verify list`")
    claim = registry[name]
    params = replace(ClaimParams(), **overrides)
    start = time.perf_counter()
    outcome = claim.run(params)
    elapsed = time.perf_counter() - start
    return ClaimReport(claim.name, claim.kind, outcome.verdict, outcome.evidence, elapsed)


def run_all(
    registry: Mapping[str, Claim] | None = None,
    kind: str | None = None,
    **overrides,
) -> tuple[list[ClaimReport], dict]:
    registry = registry if registry is not None else builtin_registry()
    reports = []
    for name, claim in registry.items():
        if kind is not None and claim.kind != kind:
            continue
        reports.append(run_claim(name, registry, **overrides))
    summary = {
        "total": len(reports),
        "passed": sum(1 for r in reports if r.verdict == "pass"),
        "failed": sum(1 for r in reports if r.verdict == "fail"),
        "undecided": sum(1 for r in reports if r.verdict == "undecided"),
        "failures": [r.name for r in reports if r.verdict == "fail"],
    }
    return reports, summary


# -- claim-file language --------------------------------------------------------------


@dataclass
class ParsedClaim:
    name: str
    line: int
    adjoins: list[tuple[int, str, str]] = field(default_factory=list)  # line, name, minpoly
    system_lines: list[tuple[int, str]] = field(default_factory=list)
    place_line: tuple[int, str] | None = None
    lets: list[tuple[int, str, str, bool]] = field(default_factory=list)
    expect: str = "pass"
    orbifold_line: tuple[int, str] | None = None
    assertions: list[tuple[int, str, str]] = field(default_factory=list)


_KEYWORDS = ("claim ", "adjoin ", "system:", "place:", "let ", "expect:", "orbifold ",
             "degree:", "general_type:")


def parse_claim_file(text: str) -> list[ParsedClaim]:
    claims: list[ParsedClaim] = []
    current: ParsedClaim | None = None
    in_system = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword = next((k for k in _KEYWORDS if line.startswith(k)), None)
        if keyword is None and in_system and current is not None:
            current.system_lines.append((lineno, line))
            continue
        if keyword is None:
            raise ClaimSyntaxError(f"unexpected line {line!r}", lineno, 1)
        if keyword != "system:":
            in_system = False
        if keyword == "claim ":
            name = line[len("claim "):].strip()
            if not name or not name.replace("_", "").isalnum():
                raise ClaimSyntaxError(f"bad claim name {name!r}", lineno, 7)
            if any(c.name == name for c in claims):
                raise DuplicateClaimError(f"claim {name!r} declared twice")
            current = ParsedClaim(name, lineno)
            claims.append(current)
            continue
        if current is None:
            raise ClaimSyntaxError("directives must follow a `claim NAME` line", lineno, 1)
        if keyword == "adjoin ":
            body = line[len("adjoin "):]
            if ":" not in body:
                raise ClaimSyntaxError("adjoin NAME : MINPOLY = 0", lineno, 8)
            gen_name, _, minpoly = body.partition(":")
            minpoly = minpoly.strip()
            if not minpoly.endswith("= 0"):
                raise ClaimSyntaxError("adjoined minimal polynomial must end in = 0", lineno, 1)
            current.adjoins.append((lineno, gen_name.strip(), minpoly[: -len("= 0")].strip()))
        elif keyword == "system:":
            in_system = True
        elif keyword == "place:":
            current.place_line = (lineno, line[len("place:"):].strip())
        elif keyword == "let ":
            body = line[len("let "):]
            var, eq, rhs = body.partition("=")
            if not eq:
                raise ClaimSyntaxError("let VAR = EXPR", lineno, 5)
            rhs = rhs.strip()
            is_sqrt = rhs.startswith("sqrt(") and rhs.endswith(")")
            if is_sqrt:
                rhs = rhs[len("sqrt("):-1]
            current.lets.append((lineno, var.strip(), rhs, is_sqrt))
        elif keyword == "expect:":
            expect = line[len("expect:"):].strip()
            if expect not in ("pass", "obstructed", "nonsquare"):
                raise ClaimSyntaxError(f"unknown expectation {expect!r}", lineno, 9)
            current.expect = expect
        elif keyword == "orbifold ":
            current.orbifold_line = (lineno, line[len("orbifold "):].strip())
        elif keyword == "degree:":
            current.assertions.append((lineno, "degree", line[len("degree:"):].strip()))
        elif keyword == "general_type:":
            current.assertions.append(
                (lineno, "general_type", line[len("general_type:"):].strip())
            )
    return claims


def _univariate(expr: Expr, name: str, tower: FieldTower, lineno: int) -> list[FieldElement]:
    """Dense coefficients of an expression read as a polynomial in `name`."""
    zero = tower.zero()

    def trim(p: list[FieldElement]) -> list[FieldElement]:
        while p and p[-1].is_zero():
            p.pop()
        return p

    def walk(node: Expr) -> list[FieldElement]:
        if isinstance(node, Num):
            return trim([tower.rational(node.value)])
        if isinstance(node, Sym):
            if node.name == name:
                return [zero, tower.one()]
            if node.name in tower.generator_names:
                return [tower.gen(node.name)]
            raise ClaimSyntaxError(f"undeclared identifier {node.name!r}", lineno, 1)
        if isinstance(node, Neg):
            return trim([-c for c in walk(node.operand)])
        if isinstance(node, Pow):
            base = walk(node.base)
            if node.exponent < 0:
                if len(base) != 1:
                    raise ClaimSyntaxError("negative power of the generator", lineno, 1)
                return [base[0] ** node.exponent]
            out = [tower.one()]
            for _ in range(node.exponent):
                out = _poly_mul(out, base, zero)
            return out
        left, right = walk(node.left), walk(node.right)
        if node.op == "+":
            return _poly_add(left, right, zero)
        if node.op == "-":
            return _poly_add(left, [-c for c in right], zero)
        if node.op == "*":
            return _poly_mul(left, right, zero)
        if len(right) != 1:
            raise ClaimSyntaxError("division by the generator", lineno, 1)
        return trim([c / right[0] for c in left])

    def _poly_add(p, q, z):
        out = [z] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] = out[i] + c
        for i, c in enumerate(q):
            out[i] = out[i] + c
        return trim(out)

    def _poly_mul(p, q, z):
        if not p or not q:
            return []
        out = [z] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
        return trim(out)

    return walk(expr)


def _build_tower(parsed: ParsedClaim) -> FieldTower:
    tower = QQ
    for lineno, gen_name, minpoly_text in parsed.adjoins:
        expr = parse_expression(minpoly_text, lineno)
        coeffs = _univariate(expr, gen_name, tower, lineno)
        if len(coeffs) != 3 or coeffs[2] != tower.one():
            raise ClaimSyntaxError(
                f"adjoin needs a monic quadratic in {gen_name!r}", lineno, 1
            )
        result = adjoin_quadratic(tower, gen_name, coeffs[1], coeffs[0])
        if isinstance(result, AlreadySplit):
            raise ClaimSyntaxError(
                f"{gen_name!r} would not extend the field: root {result.witness} exists",
                lineno,
                1,
            )
        tower = result
    return tower


def _build_place(parsed: ParsedClaim, tower: FieldTower) -> Place:
    if parsed.place_line is None:
        raise ClaimSyntaxError(f"claim {parsed.name!r} has no place", parsed.line, 1)
    lineno, text = parsed.place_line
    body = text.strip()
    if not body.startswith("t"):
        raise ClaimSyntaxError("place: t = CENTER ram E", lineno, 1)
    body = body[1:].strip()
    if not body.startswith("="):
        raise ClaimSyntaxError("place: t = CENTER ram E", lineno, 1)
    body = body[1:].strip()
    ram = 1
    if " ram " in f" {body}":
        center_text, _, ram_text = f" {body}".rpartition(" ram ")
        center_text = center_text.strip()
        try:
            ram = int(ram_text.strip())
        except ValueError:
            raise ClaimSyntaxError("ramification must be an integer", lineno, 1) from None
    else:
        center_text = body
    if center_text == "infinity":
        return Place.at_infinity(ram)
    expr = parse_expression(center_text, lineno)
    names = free_symbols(expr)
    if not names <= set(tower.generator_names):
        raise ClaimSyntaxError("place center may use only adjoined generators", lineno, 1)
    env = {g: tower.gen(g) for g in tower.generator_names}
    center = evaluate(expr, env, tower.rational)
    return Place.finite(center, ram)


def _build_bindings(
    parsed: ParsedClaim, tower: FieldTower, place: Place
) -> dict[str, ExactValue | FormalSqrt]:
    env = {"t": t_function(tower, place), "r": r_function(tower, place)}
    for g in tower.generator_names:
        env[g] = RationalFunction.constant(tower, place, tower.gen(g))
    const = lambda q: RationalFunction.constant(tower, place, q)  # noqa: E731
    bindings: dict[str, ExactValue | FormalSqrt] = {}
    for lineno, var, rhs, is_sqrt in parsed.lets:
        expr = parse_expression(rhs, lineno)
        unknown = free_symbols(expr) - set(env)
        if unknown:
            raise ClaimSyntaxError(
                f"undeclared identifier {sorted(unknown)[0]!r} in let", lineno, 1
            )
        value = evaluate(expr, env, const)
        bindings[var] = FormalSqrt(value) if is_sqrt else ExactValue(value)
    return bindings


def _orbifold_outcome(parsed: ParsedClaim) -> ClaimOutcome:
    lineno, text = parsed.orbifold_line
    tokens = text.replace("[", " [ ").split(None, 3)
    if len(tokens) < 4 or tokens[0] != "genus" or tokens[2] != "marks":
        raise ClaimSyntaxError("orbifold genus G marks [m1, ...]", lineno, 1)
    genus = int(tokens[1])
    marks_text = tokens[3].strip()
    if not (marks_text.startswith("[") and marks_text.endswith("]")):
        raise ClaimSyntaxError("marks must be a [..] list", lineno, 1)
    multiplicities = []
    inner = marks_text[1:-1].strip()
    if inner:
        for part in inner.split(","):
            part = part.strip()
            multiplicities.append(INF if part == "inf" else int(part))
    curve = OrbifoldCurve.from_multiplicities(genus, multiplicities)
    checks = {}
    verdict = "pass"
    actual_degree = degree(curve)
    actual_gt = is_general_type(curve)
    checks["degree"] = str(actual_degree)
    checks["general_type"] = actual_gt
    for lineno, key, expected_text in parsed.assertions:
        if key == "degree":
            expected = Fraction(expected_text)
            checks["degree_expected"] = str(expected)
            if actual_degree != expected:
                verdict = "fail"
        else:
            expected_gt = expected_text.strip().lower() == "true"
            checks["general_type_expected"] = expected_gt
            if actual_gt != expected_gt:
                verdict = "fail"
    return ClaimOutcome(verdict, {"curve": str(curve), **checks})


def _claim_from_parsed(
    parsed: ParsedClaim, kind_hint: str | None = None, description: str | None = None
) -> Claim:
    if parsed.orbifold_line is not None:
        return Claim(
            parsed.name,
            "orbifold_fact",
            "orbifold fact from claim file",
            lambda params, p=parsed: _orbifold_outcome(p),
        )

    system_source = "\n".join(text for _, text in parsed.system_lines)
    if parsed.expect == "nonsquare":
        kind = "squareness_certificate"
    elif parsed.expect == "obstructed":
        kind = "lift_test"
    else:
        kind = kind_hint or "point_verification"

    def run(params: ClaimParams, p=parsed) -> ClaimOutcome:
        tower = _build_tower(p)
        place = _build_place(p, tower)
        bindings = _build_bindings(p, tower, place)
        point = PointAssignment(place, bindings)
        if p.expect == "nonsquare":
            if len(p.system_lines) != 1:
                raise ClaimSyntaxError(
                    "a nonsquare claim takes exactly one expression", p.line, 1
                )
            lineno, text = p.system_lines[0]
            target = parse_expression(text, lineno)
            system = PolynomialSystem(tower, tuple(sorted(
                free_symbols(target) - {"t"} - set(tower.generator_names)
            )), (), ())
            outcome = solve_square(system, target, Num(1), point, mode="over_c",
                                   precision=params.precision)
            verdict = "pass" if outcome.kind == "nonsquare" else "fail"
            return ClaimOutcome(
                verdict,
                {"expression": text, "result": outcome.kind, "order": outcome.order},
            )
        system = parse_system(system_source, tower)
        if p.expect == "obstructed":
            outcome = lift_along_cover(system, point, mode="over_c",
                                       precision=params.precision)
            verdict = "pass" if outcome.kind == "obstructed" else "fail"
            return ClaimOutcome(
                verdict,
                {
                    "cover_variable": outcome.variable,
                    "result": outcome.kind,
                    "order": outcome.order,
                },
            )
        report = verify_point(system, point, mode=params.mode, precision=params.precision)
        evidence = report.as_dict()
        evidence["bindings"] = {
            var: (f"sqrt({binding.square})" if isinstance(binding, FormalSqrt)
                  else str(binding.value))
            for var, binding in bindings.items()
        }
        return ClaimOutcome("pass" if report.passed else "fail", evidence)

    return Claim(parsed.name, kind, description or f"claim-file check ({parsed.expect})",
                 run, system_source=system_source or None,
                 system_tower=_build_tower(parsed) if parsed.adjoins else None)


def load_claim_file(path: str, registry: Mapping[str, Claim] | None = None) -> dict[str, Claim]:
    """Parse a claim file and return the session registry extended with it."""
    base = dict(registry if registry is not None else builtin_registry())
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    for parsed in parse_claim_file(text):
        if parsed.name in base:
            raise DuplicateClaimError(f"claim {parsed.name!r} already registered")
        base[parsed.name] = _claim_from_parsed(parsed)
    return base


# -- builtin claims ---------------------------------------------------------------------

BASE_SYSTEM_SOURCE = """\
x^2 - t*u^2 + t = (t^2*u^2 - t)*y^2
(t^2*u^2 - t)*y^2 != 0
x^2 - 2*t*u^2 + 1/t = t*(t^2*u^2 - t)*z^2
t*(t^2*u^2 - t)*z^2 != 0"""

COVER_EQUATION_SOURCE = "w^2 = t^2*u^2 - t"


def _indent(text: str) -> str:
    return "\n".join("  " + line for line in text.splitlines())


def _point_claim_text(name: str, place: str, lets: list[str], cover: bool = False) -> str:
    system = BASE_SYSTEM_SOURCE + ("\n" + COVER_EQUATION_SOURCE if cover else "")
    let_lines = "\n".join(lets)
    return f"""claim {name}
system:
{_indent(system)}
place: {place}
{let_lines}
expect: pass
"""


def _q_family_lets(q: int) -> list[str]:
    half = (q + 1) // 2
    return [
        "let x = 1/r",
        f"let u = 1/r^{half}",
        f"let y = sqrt((1 - r + r^{q + 2})/(r^{q + 1}*(1 - r)))",
        f"let z = sqrt((1 + r^{q - 2} - 2*r^{q - 1})/(r^{3 * q - 1}*(1 - r)))",
    ]


SQRT_T_LETS = ["let u = 0", "let x = 0", "let y = sqrt(-1)", "let z = sqrt(-1/t^3)"]

INFINITY_LETS = [
    "let u = 1",
    "let x = 1",
    "let y = sqrt(1/(t^2 - t))",
    "let z = sqrt((-2/t^2 + 1/t^3 + 1/t^4)/(1 - 1/t))",
]


def _text_claim(
    name: str, text: str, kind_hint: str | None = None, description: str | None = None
) -> Claim:
    parsed_list = parse_claim_file(text)
    assert len(parsed_list) == 1
    return _claim_from_parsed(parsed_list[0], kind_hint, description)


def _cbrt_claim() -> Claim:
    inner = _text_claim("point_cbrt_t", _point_claim_text(
        "point_cbrt_t", "t = 0 ram 3", _q_family_lets(3)))

    def run(params: ClaimParams) -> ClaimOutcome:
        outcome = inner.run(params)
        # the square root in z simplifies: (1 + r - 2r^2)/(1 - r) = 1 + 2r exactly
        place = Place.finite(QQ.zero(), 3)
        quotient = RationalFunction.from_coeffs(QQ, place, [1, 1, -2]) / (
            RationalFunction.from_coeffs(QQ, place, [1, -1])
        )
        simplified = RationalFunction.from_coeffs(QQ, place, [1, 2])
        identity_holds = quotient == simplified
        outcome.evidence["simplification_identity"] = (
            "exact" if identity_holds else "failed"
        )
        if not identity_holds:
            outcome.verdict = "fail"
        return outcome

    return Claim(inner.name, inner.kind, "cube-root point with exact z simplification",
                 run, system_source=inner.system_source)


def _k3_lift_claim(name: str, place: str, lets: list[str], w_let: str) -> Claim:
    text = _point_claim_text(name, place, lets + [w_let], cover=True)
    inner = _text_claim(name, text, kind_hint="lift_test")

    def run(params: ClaimParams) -> ClaimOutcome:
        outcome = inner.run(params)
        if outcome.verdict != "pass":
            return outcome
        parsed = parse_claim_file(text)[0]
        tower = _build_tower(parsed)
        place_obj = _build_place(parsed, tower)
        bindings = _build_bindings(parsed, tower, place_obj)
        w_square = bindings.pop("w").square
        point = PointAssignment(place_obj, bindings)
        cover = parse_system(inner.system_source, tower)
        lift = lift_along_cover(cover, point, precision=params.precision, check_base=False)
        witness_ok = lift.kind == "lifts"
        evidence = dict(outcome.evidence)
        evidence["lift"] = lift.kind
        if lift.witness is not None:
            evidence["witness"] = str(lift.witness)
            evidence["witness_order"] = lift.witness.order_at_zero()
            square = lift.witness * lift.witness
            target = w_square._lift(lift.tower).to_puiseux(square.precision)
            witness_ok = witness_ok and square.matches(target)
            evidence["witness_square_matches"] = square.matches(target)
        return ClaimOutcome("pass" if witness_ok else "fail", evidence)

    return Claim(name, "lift_test", "K3 double-cover lift with explicit witness", run,
                 system_source=inner.system_source)


def _golden_tower() -> tuple[FieldTower, FieldElement, FieldElement]:
    base = adjoin_quadratic(QQ, "alpha", -1, -1)
    tower = adjoin_quadratic(base, "beta", 0, base.gen("alpha"))
    return tower, tower.gen("alpha"), tower.gen("beta")


# the same family in shifted coordinates, expanded at t = r^2
SHIFTED_FORM_TEXT = """\
claim golden_shifted_form
adjoin alpha : alpha^2 - alpha - 1 = 0
adjoin beta : beta^2 + alpha = 0
system:
  x^2 - t*u^2 + alpha*u^2 + t - alpha = (u^2*(t - alpha)^2 - t + alpha)*y^2
  (u^2*(t - alpha)^2 - t + alpha)*y^2 != 0
  x^2 - 2*t*u^2 + 2*alpha*u^2 + 1/(t - alpha) = (t - alpha)*(u^2*(t - alpha)^2 - t + alpha)*z^2
  (t - alpha)*(u^2*(t - alpha)^2 - t + alpha)*z^2 != 0
place: t = 0 ram 2
let u = 1/beta + r
let x = alpha
let y = sqrt((alpha^2 - t*(1/beta + r)^2 + alpha*(1/beta + r)^2 + t - alpha)/((1/beta + r)^2*(t - alpha)^2 - t + alpha))
let z = sqrt((alpha^2 - 2*t*(1/beta + r)^2 + 2*alpha*(1/beta + r)^2 + 1/(t - alpha))/((t - alpha)*((1/beta + r)^2*(t - alpha)^2 - t + alpha)))
expect: pass
"""


def _shifted_form_claim() -> Claim:
    inner = _text_claim(
        "golden_shifted_form",
        SHIFTED_FORM_TEXT,
        kind_hint="squareness_certificate",
        description="shifted-coordinate equations verify; the factor keeps odd order",
    )

    def run(params: ClaimParams) -> ClaimOutcome:
        outcome = inner.run(params)
        tower, alpha, beta = _golden_tower()
        place = Place.finite(tower.zero(), 2)
        r = r_function(tower, place)
        t = t_function(tower, place)
        u = 1 / beta + r
        factor = u * u * (t - alpha) ** 2 - t + alpha
        outcome.evidence["factor_order"] = factor.order_at_zero()
        outcome.evidence["factor_valuation"] = str(Fraction(factor.order_at_zero(), 2))
        if factor.order_at_zero() != 1:
            outcome.verdict = "fail"
        return outcome

    return Claim(inner.name, inner.kind, inner.description, run,
                 system_source=inner.system_source, system_tower=inner.system_tower)


def _golden_nonlift_claim(n: int) -> Claim:
    name = f"golden_nonlift_n{n}"

    def run(params: ClaimParams) -> ClaimOutcome:
        tower, alpha, beta = _golden_tower()
        place = Place.finite(-alpha, 2 * n)
        r = r_function(tower, place)
        t = t_function(tower, place)
        u = 1 / beta + r
        x = RationalFunction.constant(tower, place, alpha)
        g = u * u * t * t - t
        lhs1 = x * x - t * u * u + t
        lhs2 = x * x - 2 * t * u * u + 1 / t
        orders = {
            "cover_factor": g.order_at_zero(),
            "lhs_1": lhs1.order_at_zero(),
            "lhs_2": lhs2.order_at_zero(),
        }
        valuation = str(Fraction(g.order_at_zero(), 2 * n))
        system = parse_system(BASE_SYSTEM_SOURCE, tower)
        point = PointAssignment(place, {"u": ExactValue(u), "x": ExactValue(x)})
        squares = {}
        for label, lhs_text, g_text in (
            ("y", "x^2 - t*u^2 + t", "t^2*u^2 - t"),
            ("z", "x^2 - 2*t*u^2 + 1/t", "t*(t^2*u^2 - t)"),
        ):
            outcome = solve_square(
                system,
                parse_expression(lhs_text),
                parse_expression(g_text),
                point,
                precision=params.precision,
            )
            squares[label] = {
                "result": outcome.kind,
                "quotient_order": outcome.order,
                "witness_precision": outcome.witness.precision if outcome.witness else None,
            }
        cover = parse_system(
            BASE_SYSTEM_SOURCE + "\n" + COVER_EQUATION_SOURCE, tower
        )
        plain = lift_along_cover(cover, point, precision=params.precision, check_base=False)
        twisted = lift_along_cover(
            cover, point, precision=params.precision, twist=r * r, check_base=False
        )
        ok = (
            orders == {"cover_factor": 1, "lhs_1": 1, "lhs_2": 1}
            and all(s["result"] == "witness" for s in squares.values())
            and plain.kind == "obstructed"
            and twisted.kind == "obstructed"
        )
        return ClaimOutcome(
            "pass" if ok else "fail",
            {
                "n": n,
                "ramification": 2 * n,
                "orders": orders,
                "cover_factor_valuation": valuation,
                "square_witnesses": squares,
                "plain_cover": {"result": plain.kind, "order": plain.order},
                "twisted_cover": {"result": twisted.kind, "order": twisted.order},
            },
        )

    return Claim(
        name,
        "squareness_certificate",
        "golden-ratio point: valuation certificates and cover obstructions",
        run,
        system_source=BASE_SYSTEM_SOURCE + "\n" + COVER_EQUATION_SOURCE,
    )


def _two_forms_claim() -> Claim:
    def run(params: ClaimParams) -> ClaimOutcome:
        tower, alpha, beta = _golden_tower()
        place = Place.finite(-alpha, 2)
        r = r_function(tower, place)
        t = t_function(tower, place)
        u = 1 / beta + r
        x = RationalFunction.constant(tower, place, alpha)
        g = u * u * t * t - t
        lhs1 = x * x - t * u * u + t
        lhs2 = x * x - 2 * t * u * u + 1 / t
        point = PointAssignment(
            place,
            {
                "u": ExactValue(u),
                "x": ExactValue(x),
                "y": FormalSqrt(lhs1 / g),
                "z": FormalSqrt(lhs2 / (t * g)),
            },
        )
        cover = parse_system(
            BASE_SYSTEM_SOURCE + "\n" + COVER_EQUATION_SOURCE, tower
        )
        # check_base on: the point really is a point of the base system
        plain = lift_along_cover(cover, point, precision=params.precision)
        twisted = lift_along_cover(
            cover, point, precision=params.precision, twist=r * r, check_base=False
        )
        ok = plain.kind == "obstructed" and twisted.kind == "obstructed"
        return ClaimOutcome(
            "pass" if ok else "fail",
            {
                "plain_form": {"result": plain.kind, "order": plain.order},
                "twisted_form": {"result": twisted.kind, "order": twisted.order},
                "base_point_verified": True,
            },
        )

    return Claim(
        "k3_cover_two_forms_obstructed",
        "lift_test",
        "both double-cover forms obstruct at the golden place",
        run,
        system_source=BASE_SYSTEM_SOURCE + "\n" + COVER_EQUATION_SOURCE,
    )


def _case_partition_claim() -> Claim:
    def run(params: ClaimParams) -> ClaimOutcome:
        violations = []
        points = 0
        for e in range(1, 7):
            for a in range(-12, 13):
                for b in range(-12, 13):
                    points += 1
                    hits = sum(valuation_case_predicates(Fraction(a, e), Fraction(b, e)))
                    if hits != 1:
                        violations.append({"e": e, "vu": f"{a}/{e}", "vx": f"{b}/{e}",
                                           "hits": hits})
        return ClaimOutcome(
            "pass" if not violations else "fail",
            {"grid_points": points, "violations": violations},
        )

    return Claim(
        "lemma91_case_partition",
        "property_test",
        "the eight valuation-case predicates partition the grid",
        run,
    )


def _square_lift_property_claim() -> Claim:
    def run(params: ClaimParams) -> ClaimOutcome:
        result = sample_square_lift_property(samples=params.samples, seed=params.seed)
        return ClaimOutcome(
            "pass" if not result["counterexamples"] else "fail", result
        )

    return Claim(
        "lemma91_property",
        "property_test",
        "solvable equations force the cover factor to be a local square",
        run,
    )


def _gt_threshold_claim() -> Claim:
    def run(params: ClaimParams) -> ClaimOutcome:
        failures = []
        for d in range(1, 51):
            if is_general_type(pullback_half_marks(0, d)) != (d >= 5):
                failures.append({"d": d, "check": "threshold"})
            for genus in range(0, 4):
                expected = 2 * genus - 2 + Fraction(d, 2)
                if degree(pullback_half_marks(genus, d)) != expected:
                    failures.append({"d": d, "genus": genus, "check": "degree"})
        return ClaimOutcome(
            "pass" if not failures else "fail",
            {"degrees_checked": 50, "threshold": "general type iff d >= 5 at genus 0",
             "failures": failures},
        )

    return Claim(
        "orbifold_gt_threshold",
        "orbifold_fact",
        "half-mark pullback is general type exactly from degree five (genus zero)",
        run,
    )


def _pullback_claim() -> Claim:
    def run(params: ClaimParams) -> ClaimOutcome:
        cases = [
            {"genus": 0, "d": 5, "degree": "1/2", "general_type": True},
            {"genus": 1, "d": 1, "degree": "1/2", "general_type": True},
            {"genus": 0, "d": 1, "degree": "-3/2", "general_type": False},
            {"genus": 0, "d": 4, "degree": "0", "general_type": False},
        ]
        failures = []
        for case in cases:
            curve = pullback_half_marks(case["genus"], case["d"])
            if curve.multiplicities != (2,) * case["d"]:
                failures.append({**case, "check": "marks"})
            if str(degree(curve)) != case["degree"]:
                failures.append({**case, "check": "degree", "got": str(degree(curve))})
            if is_general_type(curve) != case["general_type"]:
                failures.append({**case, "check": "general_type"})
        return ClaimOutcome(
            "pass" if not failures else "fail", {"cases": cases, "failures": failures}
        )

    return Claim(
        "pullback_orbifold_bases",
        "orbifold_fact",
        "orbifold bases of pullbacks: d half-marks with the stated degrees",
        run,
    )


def _semigroup_claim() -> Claim:
    def run(params: ClaimParams) -> ClaimOutcome:
        failures = []
        if semigroup_contains(MultiplicityProfile((2, 5)), 3):
            failures.append("3 in <2,5>")
        if not semigroup_contains(MultiplicityProfile((2, 3)), 7):
            failures.append("7 not in <2,3>")
        for a in range(1, 11):
            if not semigroup_contains(MultiplicityProfile((a,)), a):
                failures.append(f"{a} not in <{a}>")
        for pair, expected in (((2, 3), True), ((2, 4), False), ((3, 5), True)):
            if forced_component(*pair) != expected:
                failures.append(f"forced_component{pair} != {expected}")
        mismatches = 0
        for a in range(1, 11):
            for b in range(a, 11):
                profile = MultiplicityProfile((a, b))
                reachable = [False] * 61
                reachable[0] = True
                for k in range(1, 61):
                    reachable[k] = (k >= a and reachable[k - a]) or (
                        k >= b and reachable[k - b]
                    )
                for m in range(61):
                    if semigroup_contains(profile, m) != reachable[m]:
                        mismatches += 1
        if mismatches:
            failures.append(f"{mismatches} DP/bruteforce mismatches")
        return ClaimOutcome(
            "pass" if not failures else "fail",
            {"pairs_checked": 55, "membership_bound": 60, "failures": failures},
        )

    return Claim(
        "semigroup_facts",
        "semigroup_fact",
        "membership dynamic programming against enumeration; forced components",
        run,
    )


def _index_claim() -> Claim:
    def run(params: ClaimParams) -> ClaimOutcome:
        cases = [
            {"profile": (2, 3), "stats": (2, 1, 1)},
            {"profile": (4, 6), "stats": (4, 2, 2)},
            {"profile": (1,), "stats": (1, 1, 1)},
        ]
        failures = []
        for case in cases:
            got = profile_stats(MultiplicityProfile(case["profile"]))
            if got != case["stats"]:
                failures.append({**case, "got": got})
        stats_23 = profile_stats(MultiplicityProfile((2, 3)))
        inf_multiple = stats_23[0] >= 2
        divisible = stats_23[1] >= 2
        if not inf_multiple or divisible:
            failures.append("profile (2,3) should be inf-multiple and non-divisible")
        return ClaimOutcome(
            "pass" if not failures else "fail",
            {
                "cases": [
                    {"profile": list(c["profile"]), "stats": list(c["stats"])}
                    for c in cases
                ],
                "profile_2_3": {"inf_multiple": inf_multiple, "divisible": divisible},
                "failures": failures,
            },
        )

    return Claim(
        "index_facts",
        "semigroup_fact",
        "inf/gcd multiplicities and the index from fibre profiles",
        run,
    )


def _perturbation_claim() -> Claim:
    def run(params: ClaimParams) -> ClaimOutcome:
        from itertools import combinations_with_replacement

        checked = 0
        violations = []
        for genus in range(3):
            for size in range(7):
                for finite in combinations_with_replacement(range(1, 11), size):
                    base = OrbifoldCurve.from_multiplicities(genus, finite)
                    base_degree = degree(base)
                    for n_inf in range(7):
                        checked += 1
                        before = base_degree + n_inf
                        if before <= 0:
                            continue
                        after = base_degree + n_inf * Fraction(6, 7)
                        if after <= 0:
                            violations.append(
                                {"genus": genus, "finite": list(finite), "inf": n_inf}
                            )
        return ClaimOutcome(
            "pass" if not violations else "fail",
            {"curves_checked": checked, "replacement": 7, "violations": violations},
        )

    return Claim(
        "perturbation_sweep",
        "orbifold_fact",
        "replacing infinite marks by 7 preserves positive degree on the sweep",
        run,
    )


def builtin_registry() -> dict[str, Claim]:
    """All built-in claims, keyed by name, in a stable order."""
    claims: list[Claim] = [
        _text_claim(
            "point_sqrt_t",
            _point_claim_text("point_sqrt_t", "t = 0 ram 2", SQRT_T_LETS),
            description="square-root-of-t point verifies exactly",
        ),
        _cbrt_claim(),
    ]
    for q in (3, 5, 7, 9):
        claims.append(
            _text_claim(
                f"point_q_family_q{q}",
                _point_claim_text(f"point_q_family_q{q}", f"t = 0 ram {q}", _q_family_lets(q)),
                description=f"odd-degree point family at ramification {q}",
            )
        )
    claims.append(
        _text_claim(
            "point_infinity",
            _point_claim_text("point_infinity", "t = infinity ram 1", INFINITY_LETS),
            description="local point at t = infinity verifies exactly",
        )
    )
    for n in range(1, 6):
        claims.append(_golden_nonlift_claim(n))
    claims.append(_shifted_form_claim())
    claims.append(_two_forms_claim())
    claims.append(
        _k3_lift_claim("k3_lift_sqrt_t", "t = 0 ram 2", SQRT_T_LETS, "let w = sqrt(-t)")
    )
    claims.append(
        _k3_lift_claim(
            "k3_lift_infinity", "t = infinity ram 1", INFINITY_LETS, "let w = sqrt(t^2 - t)"
        )
    )
    claims.append(_square_lift_property_claim())
    claims.append(_case_partition_claim())
    claims.append(_gt_threshold_claim())
    claims.append(_pullback_claim())
    claims.append(_semigroup_claim())
    claims.append(_index_claim())
    claims.append(_perturbation_claim())
    return {claim.name: claim for claim in claims}
