"""Certificates for the basis-property phenomenon: determinant-criterion
independence checks, combination-coefficient extraction for families that
meet a linear-algebra bound with equality, and exact verification of the
identities that equality forces (modular distance congruences, the maximal
two-distance relation, design congruences, the Ryser degree dichotomy).

Both sides of every identity are computed by independent code paths and
compared exactly; floating point appears only in the optional
coordinate-level checks of two-distance sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .bounds import two_distance_max
from .constructions import GramTwoDistance
from .errors import (
    HypothesisViolationError,
    InternalInconsistencyError,
    MalformedInputError,
    SingularSystemError,
    UnsupportedDegreeError,
)
from .exactfield import (
    QQ,
    ExactMatrix,
    PrimeFieldCtx,
    QuadExt,
    determinant,
    inertia_psd_rank,
    invert,
    rank,
    solve_linear,
)
from .families import SetFamily, VectorSystem, degrees, hamming_distance

FLOAT_TOLERANCE = 1e-9

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Identity:
    name: str
    left: str
    right: str
    holds: bool


@dataclass
class Certificate:
    """Structured verdict: hypothesis clauses, extracted coefficients and
    each derived identity with its two exactly-computed sides."""

    kind: str
    verdict: str
    hypotheses: list[tuple[str, bool]] = dataclass_field(default_factory=list)
    coefficients: list[str] = dataclass_field(default_factory=list)
    identities: list[Identity] = dataclass_field(default_factory=list)
    details: dict = dataclass_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def identity(self, name: str) -> Identity:
        for ident in self.identities:
            if ident.name == name:
                return ident
        raise KeyError(name)

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "hypotheses": [{"clause": c, "holds": h} for c, h in self.hypotheses],
            "coefficients": list(self.coefficients),
            "identities": [
                {"name": i.name, "left": i.left, "right": i.right, "holds": i.holds}
                for i in self.identities
            ],
            "details": self.details,
        }


def _certificate(kind, hypotheses, coefficients, identities, details, not_applicable=False):
    if not_applicable:
        verdict = NOT_APPLICABLE
    else:
        ok = all(h for _, h in hypotheses) and all(i.holds for i in identities)
        verdict = PASS if ok else FAIL
    return Certificate(kind, verdict, hypotheses, coefficients, identities, details)


def _format_list(field, values):
    return "[" + ", ".join(field.format(v) for v in values) + "]"


def _float_close(x: float, y: float, tol: float = FLOAT_TOLERANCE) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


# ---------------------------------------------------------------------------
# Determinant criterion


def certify_independence(b: ExactMatrix) -> Certificate:
    """Nonsingular evaluation matrix implies the evaluated functions are
    linearly independent; pass iff det(B) != 0, with the rank recorded."""
    if not b.is_square():
        raise MalformedInputError("independence certificate needs a square matrix")
    det = determinant(b)
    rk = rank(b)
    size = b.nrows
    ident = Identity(
        "determinant_nonzero", b.field.format(det), "0", not b.field.is_zero(det)
    )
    return _certificate(
        kind="independence",
        hypotheses=[("squareMatrix", True)],
        coefficients=[],
        identities=[ident],
        details={"size": size, "rank": rk, "rank_deficit": size - rk},
    )


# ---------------------------------------------------------------------------
# Tight constant-distance families over F_p


def indicator_poly(a: int, q: int, p: PrimeFieldCtx) -> list[int]:
    """Coefficients over F_p of the minimal-degree polynomial that is 0 at
    a and 1 at every other point of [0, q-1]; degree at most q-1."""
    p_value = p.p if isinstance(p, PrimeFieldCtx) else PrimeFieldCtx(p).p
    if p_value < q:
        raise HypothesisViolationError(f"need p >= q, got p={p_value}, q={q}", clause="pGeqQ")
    if not 0 <= a < q:
        raise MalformedInputError(f"symbol {a} outside [0, {q - 1}]")
    coeffs = [0]
    for t in range(q):
        if t == a:
            continue
        # Lagrange basis polynomial for node t over the nodes [0, q-1].
        basis = [1]
        denom = 1
        for u in range(q):
            if u == t:
                continue
            basis = _poly_mul_linear(basis, (-u) % p_value, p_value)
            denom = denom * (t - u) % p_value
        scale = pow(denom, p_value - 2, p_value)
        basis = [c * scale % p_value for c in basis]
        coeffs = _poly_add(coeffs, basis, p_value)
    for t in range(q):
        expected = 0 if t == a else 1
        if _poly_eval(coeffs, t, p_value) != expected:
            raise InternalInconsistencyError("indicator interpolation failed")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul_linear(coeffs, constant, p):
    # multiply by (x + constant)
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] = (out[i] + c * constant) % p
        out[i + 1] = (out[i + 1] + c) % p
    return out


def _poly_add(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return out


def _poly_eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def hamming_tight_certificate(system: VectorSystem, p, lam: int) -> Certificate:
    """Certificate for a vector system meeting the modular constant-distance
    bound n(q-1) with one extra member.

    Builds f_a(x) = sum_i l_{a_i}(x_i) - lambda over F_p, checks the
    evaluation matrix on the system is nonsingular, extracts the
    coefficients expressing the constant 1 in that basis (each must be
    -1/lambda), re-expands the combination coefficientwise, evaluates the
    member sum at all constant vectors, and checks the forced congruence
    q*lambda = n(q-1)+1 mod p.
    """
    ctx = p if isinstance(p, PrimeFieldCtx) else PrimeFieldCtx(p)
    p_value = ctx.p
    n, q = system.n, system.q
    if p_value < q:
        raise HypothesisViolationError(
            f"need p >= q, got p={p_value}, q={q}", clause="pGeqQ"
        )
    lam_res = lam % p_value
    if lam <= 0 or lam_res == 0:
        raise HypothesisViolationError(
            f"lambda = {lam} is zero mod {p_value}", clause="lambdaNonzero"
        )
    vectors = system.vectors
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            d = hamming_distance(vectors[i], vectors[j])
            if d % p_value != lam_res:
                raise HypothesisViolationError(
                    f"distance {d} between members {i} and {j} is not "
                    f"{lam_res} mod {p_value}",
                    clause="distancesCongruent",
                )

    size_target = n * (q - 1) + 1
    hypotheses = [
        ("pPrime", True),
        ("pGeqQ", True),
        ("lambdaNonzeroModP", True),
        ("distancesCongruentToLambda", True),
        ("sizeEqualsBoundPlusOne", len(vectors) == size_target),
    ]
    details = {
        "n": n,
        "q": q,
        "p": p_value,
        "lambda_residue": lam_res,
        "size": len(vectors),
        "tight_size": size_target,
    }
    if len(vectors) != size_target:
        return _certificate(
            "hamming-tight", hypotheses, [], [], details, not_applicable=True
        )

    indicators = [indicator_poly(a, q, ctx) for a in range(q)]
    member_count = len(vectors)

    def poly_coeff_vector(vec):
        # basis: slot 0 the constant, slot 1+i(q-1)+(j-1) the monomial x_i^j
        coeffs = [0] * size_target
        coeffs[0] = (-lam_res) % p_value
        for i, a_i in enumerate(vec):
            la = indicators[a_i]
            coeffs[0] = (coeffs[0] + la[0]) % p_value
            for j in range(1, q):
                c = la[j] if j < len(la) else 0
                coeffs[1 + i * (q - 1) + (j - 1)] = c
        return coeffs

    def evaluate_member(vec, point):
        acc = (-lam_res) % p_value
        for i, a_i in enumerate(vec):
            acc = (acc + _poly_eval(indicators[a_i], point[i], p_value)) % p_value
        return acc

    evaluation = ExactMatrix(
        ctx,
        [[evaluate_member(f, h) for f in vectors] for h in vectors],
    )
    rk = rank(evaluation)
    identities = [
        Identity("evaluation_matrix_nonsingular", str(rk), str(member_count), rk == member_count)
    ]
    coefficients: list[str] = []
    if rk == member_count:
        alpha = solve_linear(evaluation, [ctx.one] * member_count)
        coefficients = [ctx.format(x) for x in alpha]
        expected_alpha = ctx.neg(ctx.inv(lam_res))
        distinct_alpha = sorted(set(alpha))
        identities.append(
            Identity(
                "coefficients_equal_minus_inverse_lambda",
                _format_list(ctx, distinct_alpha),
                _format_list(ctx, [expected_alpha]),
                distinct_alpha == [expected_alpha],
            )
        )
        combo = [0] * size_target
        for t, vec in enumerate(vectors):
            cv = poly_coeff_vector(vec)
            for k in range(size_target):
                combo[k] = (combo[k] + alpha[t] * cv[k]) % p_value
        identities.append(
            Identity("combination_constant_term", ctx.format(combo[0]), "1", combo[0] == 1 % p_value)
        )
        nonconstant = sum(1 for c in combo[1:] if c)
        identities.append(
            Identity("combination_nonconstant_terms", str(nonconstant), "0", nonconstant == 0)
        )

    minus_lam = (-lam_res) % p_value
    for j in range(q):
        point = (j,) * n
        total = sum(evaluate_member(f, point) for f in vectors) % p_value
        identities.append(
            Identity(
                f"member_sum_at_constant_vector_{j}",
                ctx.format(total),
                ctx.format(minus_lam),
                total == minus_lam,
            )
        )

    left = q * lam_res % p_value
    right = (n * (q - 1) + 1) % p_value
    identities.append(
        Identity("tightness_congruence", ctx.format(left), ctx.format(right), left == right)
    )
    return _certificate("hamming-tight", hypotheses, coefficients, identities, details)


# ---------------------------------------------------------------------------
# Degree-2 polynomials restricted to the unit sphere


@dataclass(frozen=True)
class ReducedPoly:
    """Polynomial supported on the monomials of total degree at most 2 and
    degree at most 1 in the first variable (the unit-sphere reduction of a
    degree-2 polynomial)."""

    n: int
    coeffs: tuple  # ((exponent tuple, scalar), ...) sorted by exponents

    def coeff_dict(self):
        return dict(self.coeffs)

    def evaluate_float(self, point) -> float:
        total = 0.0
        for expo, c in self.coeffs:
            term = float(c)
            for x, e in zip(point, expo):
                term *= x**e
            total += term
        return total


def reduced_monomials(n: int):
    """All exponent tuples of total degree <= 2 with degree <= 1 in the
    first variable; there are n(n+3)/2 of them."""
    zero = (0,) * n
    out = [zero]
    for i in range(n):
        out.append(_unit(n, i))
    for i in range(n):
        for j in range(i, n):
            expo = list(zero)
            expo[i] += 1
            expo[j] += 1
            if expo[0] <= 1:
                out.append(tuple(expo))
    return out


def _unit(n, i):
    expo = [0] * n
    expo[i] = 1
    return tuple(expo)


def sphere_reduce(poly: dict, n: int, field=QQ) -> ReducedPoly:
    """Rewrite a degree-<=2 polynomial modulo the unit-sphere relation
    x_1^2 = 1 - sum_{i>=2} x_i^2; the result agrees with the input on the
    whole unit sphere."""
    coeffs = {}
    for expo, c in poly.items():
        expo = tuple(expo)
        if len(expo) != n:
            raise MalformedInputError(f"exponent tuple {expo} is not length {n}")
        if any(e < 0 for e in expo):
            raise MalformedInputError(f"negative exponent in {expo}")
        if sum(expo) > 2:
            raise UnsupportedDegreeError(f"monomial {expo} has degree above 2")
        c = field.coerce(c)
        if expo in coeffs:
            c = field.add(coeffs[expo], c)
        coeffs[expo] = c

    leading = (2,) + (0,) * (n - 1)
    if leading in coeffs:
        c = coeffs.pop(leading)
        zero = (0,) * n
        coeffs[zero] = field.add(coeffs.get(zero, field.zero), c)
        for i in range(1, n):
            expo = list(zero)
            expo[i] = 2
            expo = tuple(expo)
            coeffs[expo] = field.sub(coeffs.get(expo, field.zero), c)

    cleaned = {e: c for e, c in coeffs.items() if not field.is_zero(c)}
    support = set(reduced_monomials(n))
    for expo in cleaned:
        if expo not in support:
            raise InternalInconsistencyError(f"reduced support leak: {expo}")
    return ReducedPoly(n, tuple(sorted(cleaned.items())))


# ---------------------------------------------------------------------------
# Maximal spherical two-distance sets


def two_distance_certificate(gram: GramTwoDistance) -> Certificate:
    """Certificate for a maximal spherical two-distance set.

    Applicable only at the maximal size N = n(n+3)/2.  Checks that the
    evaluation matrix (<v_s, v_m> - a)(<v_s, v_m> - b) is the nonsingular
    diagonal (1-a)(1-b) I, extracts the combination coefficients of the
    constant 1 (each 1/((1-a)(1-b))), and verifies the forced relation
    N(ab + 1/n) = (1-a)(1-b) exactly.  When floating coordinates are
    attached, the per-axis coordinate sums and the total squared norm are
    checked to relative 1e-9.
    """
    field = gram.field
    a = field.coerce(gram.value_a)
    b = field.coerce(gram.value_b)
    if field.eq(a, field.one) or field.eq(b, field.one):
        raise HypothesisViolationError("inner products equal to 1 are not allowed", clause="valuesNotOne")
    n, count = gram.n, gram.count
    maximal = two_distance_max(n)
    hypotheses = [
        ("valuesDifferFromOne", True),
        ("valuesDistinct", not field.eq(a, b)),
        ("sizeIsMaximal", count == maximal),
    ]
    details = {"n": n, "N": count, "maximal_size": maximal}
    if count != maximal:
        return _certificate(
            "two-distance", hypotheses, [], [], details, not_applicable=True
        )

    identities = []
    off_values = gram.off_diagonal_values()
    two_valued = len(off_values) <= 2 and all(
        field.eq(x, a) or field.eq(x, b) for x in off_values
    )
    identities.append(
        Identity(
            "off_diagonal_values_match_declared",
            _format_list(field, off_values),
            _format_list(field, [a, b]),
            two_valued,
        )
    )

    is_psd, rk = inertia_psd_rank(gram.gram)
    details["gram_rank"] = rk
    hypotheses.append(("gramPositiveSemidefinite", is_psd))
    hypotheses.append(("gramRankAtMostAmbient", rk <= n))

    one = field.one
    target = field.mul(field.sub(one, a), field.sub(one, b))
    evaluation_rows = []
    for s in range(count):
        row = []
        for m in range(count):
            g = gram.gram.entries[s][m]
            row.append(field.mul(field.sub(g, a), field.sub(g, b)))
        evaluation_rows.append(row)
    evaluation = ExactMatrix(field, evaluation_rows)

    off_nonzero = sum(
        1
        for s in range(count)
        for m in range(count)
        if s != m and not field.is_zero(evaluation.entries[s][m])
    )
    identities.append(
        Identity("evaluation_matrix_off_diagonal_zero", str(off_nonzero), "0", off_nonzero == 0)
    )
    diag_values = []
    for s in range(count):
        x = evaluation.entries[s][s]
        if not any(field.eq(x, y) for y in diag_values):
            diag_values.append(x)
    identities.append(
        Identity(
            "evaluation_matrix_diagonal_value",
            _format_list(field, diag_values),
            _format_list(field, [target]),
            len(diag_values) == 1 and field.eq(diag_values[0], target),
        )
    )

    coefficients = []
    try:
        alpha = solve_linear(evaluation, [one] * count)
        coefficients = [field.format(x) for x in alpha]
        expected = field.inv(target) if not field.is_zero(target) else None
        distinct = []
        for x in alpha:
            if not any(field.eq(x, y) for y in distinct):
                distinct.append(x)
        holds = (
            expected is not None
            and len(distinct) == 1
            and field.eq(distinct[0], expected)
        )
        identities.append(
            Identity(
                "coefficients_equal_inverse_product",
                _format_list(field, distinct),
                _format_list(field, [expected] if expected is not None else []),
                holds,
            )
        )
    except SingularSystemError as exc:
        identities.append(
            Identity("coefficients_equal_inverse_product", f"singular (rank {exc.rank})", "", False)
        )

    # N(ab + 1/n) = (1-a)(1-b): left side from N, n, a, b; right side from
    # a, b alone.
    inv_n = field.coerce(Fraction(1, n))
    left = field.mul(field.coerce(count), field.add(field.mul(a, b), inv_n))
    identities.append(
        Identity(
            "maximal_two_distance_relation",
            field.format(left),
            field.format(target),
            field.eq(left, target),
        )
    )

    if gram.coords is not None:
        ab_sum = float(field.add(a, b))
        worst = 0.0
        for i in range(n):
            axis_total = ab_sum * sum(c[i] for c in gram.coords)
            worst = max(worst, abs(axis_total))
        identities.append(
            Identity(
                "coordinate_axis_sums_vanish",
                repr(worst),
                "0.0",
                _float_close(worst, 0.0),
            )
        )
        norm_total = sum(x * x for c in gram.coords for x in c)
        rhs = n * float(target) - n * count * float(field.mul(a, b))
        identities.append(
            Identity(
                "coordinate_norm_total",
                repr(norm_total),
                repr(rhs),
                _float_close(norm_total, rhs) and _float_close(norm_total, float(count)),
            )
        )

    return _certificate("two-distance", hypotheses, coefficients, identities, details)


# ---------------------------------------------------------------------------
# Integrality of the squared-distance ratio


def neumaier_check(n: int, count: int, d1sq, d2sq) -> Certificate:
    """For a two-distance set in dimension n with more than max(2n+1, 5)
    points, the squared-distance ratio must be (m-1)/m for an integer m."""
    d1sq, d2sq = _coerce_distance(d1sq), _coerce_distance(d2sq)
    if _scalar_sign(d1sq) <= 0:
        raise MalformedInputError("squared distances must be positive")
    if not _scalar_less(d1sq, d2sq):
        raise MalformedInputError("expected d1^2 < d2^2 (swap the arguments)")
    threshold = max(2 * n + 1, 5)
    applicable = count > threshold
    hypotheses = [("sizeAboveThreshold", applicable)]
    details = {"n": n, "N": count, "threshold": threshold}
    if not applicable:
        return _certificate("neumaier", hypotheses, [], [], details, not_applicable=True)

    ratio = _scalar_div(d1sq, d2sq)
    m = _ratio_integer_m(ratio)
    details["m"] = m
    if m is not None:
        right = Fraction(m - 1, m)
        ident = Identity(
            "ratio_is_m_minus_one_over_m",
            _format_ratio(ratio),
            f"{right.numerator}/{right.denominator}",
            True,
        )
    else:
        ident = Identity(
            "ratio_is_m_minus_one_over_m", _format_ratio(ratio), "(m-1)/m for integer m", False
        )
    return _certificate("neumaier", hypotheses, [], [ident], details)


def _coerce_distance(x):
    if isinstance(x, QuadExt):
        return x
    return Fraction(x)


def _scalar_sign(x):
    if isinstance(x, QuadExt):
        return x.sign()
    return 0 if x == 0 else (1 if x > 0 else -1)


def _scalar_less(x, y):
    diff_sign = _scalar_sign(_scalar_sub(y, x))
    return diff_sign > 0


def _scalar_sub(x, y):
    if isinstance(x, QuadExt) or isinstance(y, QuadExt):
        if not isinstance(x, QuadExt):
            x = QuadExt(Fraction(x), Fraction(0), y.d)
        return x - y
    return x - y


def _scalar_div(x, y):
    if isinstance(x, QuadExt) or isinstance(y, QuadExt):
        if not isinstance(x, QuadExt):
            x = QuadExt(Fraction(x), Fraction(0), y.d)
        return x / y
    return x / y


def _ratio_integer_m(ratio):
    if isinstance(ratio, QuadExt):
        if ratio.surd != 0:
            return None
        ratio = ratio.rat
    complement = 1 - ratio
    if complement <= 0:
        return None
    m = 1 / complement
    if m.denominator != 1 or m < 2:
        return None
    return int(m)


def _format_ratio(ratio):
    if isinstance(ratio, QuadExt):
        from .exactfield import QuadExtField

        return QuadExtField(ratio.d).format(ratio)
    return QQ.format(ratio)


# ---------------------------------------------------------------------------
# Modular design congruences


def mod_design_certificate(family: SetFamily, p) -> Certificate:
    """For n sets on n points with sizes congruent to k and pairwise
    intersections congruent to lambda mod p (n, k, k-lambda nonzero mod p),
    verify k(k-1) = lambda(n-1) mod p and that every point degree is
    congruent to k."""
    ctx = p if isinstance(p, PrimeFieldCtx) else PrimeFieldCtx(p)
    p_value = ctx.p
    n = family.n
    if len(family) != n or n < 2:
        raise HypothesisViolationError(
            f"need as many sets as points (at least two): {len(family)} sets on [{n}]",
            clause="familySize",
        )
    sizes = family.sizes()
    k = sizes[0] % p_value
    for idx, s in enumerate(sizes):
        if s % p_value != k:
            raise HypothesisViolationError(
                f"sizes of sets 0 and {idx} differ mod {p_value}: {sizes[0]} vs {s}",
                clause="commonSizeResidue",
            )
    lam = None
    masks = family.masks
    for i in range(n):
        for j in range(i + 1, n):
            inter = (masks[i] & masks[j]).bit_count() % p_value
            if lam is None:
                lam = inter
            elif inter != lam:
                raise HypothesisViolationError(
                    f"intersections of pair (0,1) and ({i},{j}) differ mod {p_value}",
                    clause="commonIntersectionResidue",
                )
    for clause, value in (
        ("nNonzero", n % p_value),
        ("kNonzero", k),
        ("kMinusLambdaNonzero", (k - lam) % p_value),
    ):
        if value == 0:
            raise HypothesisViolationError(
                f"{clause} fails mod {p_value}", clause=clause
            )

    hypotheses = [
        ("familySizeEqualsGround", True),
        ("commonSizeResidue", True),
        ("commonIntersectionResidue", True),
        ("nNonzero", True),
        ("kNonzero", True),
        ("kMinusLambdaNonzero", True),
    ]
    left = k * (k - 1) % p_value
    right = lam * (n - 1) % p_value
    identities = [
        Identity("design_congruence", ctx.format(left), ctx.format(right), left == right)
    ]
    degree_residues = sorted({d % p_value for d in degrees(family)})
    identities.append(
        Identity(
            "degrees_congruent_to_size",
            _format_list(ctx, degree_residues),
            _format_list(ctx, [k]),
            degree_residues == [k],
        )
    )
    details = {"n": n, "p": p_value, "k_residue": k, "lambda_residue": lam}
    return _certificate("mod-design", hypotheses, [], identities, details)


# ---------------------------------------------------------------------------
# Ryser dichotomy


def ryser_decompose(family: SetFamily, lam: int) -> Certificate:
    """Exact decomposition certificate for n sets on [n] with constant
    pairwise intersection lambda and all sizes above lambda.

    Expands each coordinate monomial x_i over the member polynomials
    <x, v_j> - lambda plus a constant, i.e. solves A^T theta_i = e_i with
    kappa_i = lambda * sum_j theta_{i,j}; verifies the degree identity
    r_i = kappa_i(n-1) + 1, the per-point and global reciprocal sums, that
    at most two kappa values occur, and classifies the family: one value
    gives the uniform regular alternative, two values give degrees r, r'
    with kappa + kappa' = 1 and r + r' = n + 1.
    """
    n = family.n
    if lam <= 0:
        raise HypothesisViolationError(f"lambda must be positive: {lam}", clause="lambdaPositive")
    count = len(family)
    if count < 2:
        raise HypothesisViolationError("need at least two sets", clause="familySize")
    masks = family.masks
    for i in range(count):
        for j in range(i + 1, count):
            inter = (masks[i] & masks[j]).bit_count()
            if inter != lam:
                raise HypothesisViolationError(
                    f"sets {i} and {j} meet in {inter} points, not {lam}",
                    clause="constantIntersection",
                )
    sizes = family.sizes()
    for idx, s in enumerate(sizes):
        if s <= lam:
            raise HypothesisViolationError(
                f"set {idx} has size {s} <= lambda = {lam}", clause="sizesAboveLambda"
            )
    if count != n:
        raise HypothesisViolationError(
            f"need as many sets as points: {count} != {n}", clause="familySize"
        )

    hypotheses = [
        ("familySizeEqualsGround", True),
        ("lambdaPositive", True),
        ("constantIntersection", True),
        ("sizesAboveLambda", True),
    ]

    incidence = ExactMatrix(
        QQ, [[masks[j] >> i & 1 for i in range(n)] for j in range(n)]
    )
    try:
        theta = invert(incidence)  # theta[i][j] expands x_i over member j
    except SingularSystemError as exc:
        raise InternalInconsistencyError(
            f"incidence matrix is singular (rank {exc.rank}); "
            "input cannot satisfy the stated hypotheses"
        ) from exc

    lam_f = Fraction(lam)
    kappa = [lam_f * sum(theta.entries[i]) for i in range(n)]
    point_degrees = degrees(family)

    identities = []
    # Coefficient-level re-substitution: the linear part of
    # sum_j theta_{i,j} (<x, v_j> - lambda) + kappa_i must be exactly x_i
    # and the constant part must vanish.
    mismatches = 0
    for i in range(n):
        for t in range(n):
            acc = sum(
                theta.entries[i][j] * (masks[j] >> t & 1) for j in range(n)
            )
            if acc != (1 if t == i else 0):
                mismatches += 1
        const = kappa[i] - lam_f * sum(theta.entries[i])
        if const != 0:
            mismatches += 1
    identities.append(
        Identity("monomial_resubstitution_mismatches", str(mismatches), "0", mismatches == 0)
    )

    derived_degrees = [k * (n - 1) + 1 for k in kappa]
    identities.append(
        Identity(
            "degree_from_kappa",
            _format_list(QQ, [Fraction(d) for d in point_degrees]),
            _format_list(QQ, derived_degrees),
            [Fraction(d) for d in point_degrees] == derived_degrees,
        )
    )

    recip = [Fraction(1, s - lam) for s in sizes]
    point_sums = []
    expected_point = []
    for i in range(n):
        total = sum(recip[j] for j in range(n) if masks[j] >> i & 1)
        point_sums.append(total)
        expected_point.append(1 / (1 - kappa[i]) if kappa[i] != 1 else None)
    point_ok = all(
        e is not None and s == e for s, e in zip(point_sums, expected_point)
    )
    identities.append(
        Identity(
            "point_reciprocal_sum",
            _format_list(QQ, point_sums),
            _format_list(QQ, [e if e is not None else Fraction(0) for e in expected_point]),
            point_ok,
        )
    )

    global_sum = sum(recip)
    per_point = []
    for i in range(n):
        if kappa[i] in (0, 1):
            per_point.append(None)
        else:
            per_point.append(1 / kappa[i] + 1 / (1 - kappa[i]) - Fraction(1, lam))
    global_ok = all(v is not None and v == global_sum for v in per_point)
    distinct_global = []
    for v in per_point:
        if v is not None and v not in distinct_global:
            distinct_global.append(v)
    identities.append(
        Identity(
            "global_reciprocal_sum",
            QQ.format(global_sum),
            _format_list(QQ, distinct_global),
            global_ok,
        )
    )

    kappa_values = sorted(set(kappa))
    identities.append(
        Identity("kappa_value_count", str(len(kappa_values)), "1 or 2", len(kappa_values) <= 2)
    )

    details = {
        "n": n,
        "lambda": lam,
        "kappa_values": [QQ.format(k) for k in kappa_values],
        "degrees": point_degrees,
    }
    coefficients = [QQ.format(k) for k in kappa]

    if len(kappa_values) == 1:
        details["alternative"] = "A"
        r = kappa_values[0] * (n - 1) + 1
        details["r"] = QQ.format(r)
        uniform_sizes = sorted(set(sizes))
        identities.append(
            Identity(
                "uniform_size_equals_degree",
                _format_list(QQ, [Fraction(s) for s in uniform_sizes]),
                _format_list(QQ, [r]),
                uniform_sizes == [r],
            )
        )
        degree_set = sorted(set(point_degrees))
        identities.append(
            Identity(
                "degrees_uniform",
                _format_list(QQ, [Fraction(d) for d in degree_set]),
                _format_list(QQ, [r]),
                [Fraction(d) for d in degree_set] == [r],
            )
        )
    elif len(kappa_values) == 2:
        details["alternative"] = "B"
        k1, k2 = kappa_values
        r1 = k1 * (n - 1) + 1
        r2 = k2 * (n - 1) + 1
        details["r"] = QQ.format(r2)
        details["r_prime"] = QQ.format(r1)
        identities.append(
            Identity("kappa_pair_sum", QQ.format(k1 + k2), "1", k1 + k2 == 1)
        )
        identities.append(
            Identity(
                "degree_pair_sum",
                QQ.format(r1 + r2),
                str(n + 1),
                r1 + r2 == n + 1,
            )
        )
        degree_set = sorted(set(point_degrees))
        identities.append(
            Identity(
                "degrees_take_both_values",
                _format_list(QQ, [Fraction(d) for d in degree_set]),
                _format_list(QQ, sorted([r1, r2])),
                [Fraction(d) for d in degree_set] == sorted([r1, r2]),
            )
        )
    else:
        details["alternative"] = "none"

    return _certificate("ryser", hypotheses, coefficients, identities, details)
