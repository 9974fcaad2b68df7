"""Certificates: independence, tight families, two-distance sets, design
congruences and the Ryser dichotomy."""

import math
import random
from fractions import Fraction
from itertools import product

import pytest

from basisbound.certifier import (
    certify_independence,
    hamming_tight_certificate,
    indicator_poly,
    mod_design_certificate,
    neumaier_check,
    reduced_monomials,
    ryser_decompose,
    sphere_reduce,
    two_distance_certificate,
)
from basisbound.constructions import (
    GramTwoDistance,
    fano_plane,
    hadamard_plus_full,
    johnson_pairs,
    lambda_design_type1,
    near_pencil,
    pentagon,
    projective_plane,
    schlafli27,
)
from basisbound.errors import (
    HypothesisViolationError,
    MalformedInputError,
    UnsupportedDegreeError,
)
from basisbound.exactfield import QQ, ExactMatrix, PrimeFieldCtx, QuadExt
from basisbound.families import SetFamily, VectorSystem


# -- independence ------------------------------------------------------------


def test_independence_diagonal_passes():
    cert = certify_independence(ExactMatrix(QQ, [[2, 0], [0, Fraction(1, 3)]]))
    assert cert.passed and cert.details["rank"] == 2


def test_independence_equal_rows_fails_with_deficit():
    cert = certify_independence(ExactMatrix(QQ, [[1, 2], [1, 2]]))
    assert cert.verdict == "fail"
    assert cert.details["rank_deficit"] == 1


def test_independence_pentagon_evaluation_matrix():
    # the evaluation matrix of the pentagon's member polynomials is the
    # diagonal (1-a)(1-b) I, hence nonsingular
    gram = pentagon()
    field = gram.field
    a = field.coerce(gram.value_a)
    b = field.coerce(gram.value_b)
    rows = [
        [(g - a) * (g - b) for g in gram.gram.entries[s]]
        for s in range(gram.count)
    ]
    cert = certify_independence(ExactMatrix(field, rows))
    assert cert.passed and cert.details["rank"] == 5


def test_independence_requires_square():
    with pytest.raises(MalformedInputError):
        certify_independence(ExactMatrix(QQ, [[1, 2]]))


def _brute_independent(rows, p):
    m = len(rows)
    for combo in product(range(p), repeat=m):
        if not any(combo):
            continue
        if all(
            sum(c * row[t] for c, row in zip(combo, rows)) % p == 0 for t in range(m)
        ):
            return False
    return True


def test_independence_matches_bruteforce_enumeration():
    rng = random.Random(99)
    for p in (2, 3, 5):
        ctx = PrimeFieldCtx(p)
        for _ in range(40):
            size = rng.randint(1, 4)
            rows = [[rng.randrange(p) for _ in range(size)] for _ in range(size)]
            cert = certify_independence(ExactMatrix(ctx, rows))
            assert cert.passed == _brute_independent(rows, p)


# -- indicator polynomials ---------------------------------------------------


def test_indicator_poly_binary():
    p5 = PrimeFieldCtx(5)
    assert indicator_poly(0, 2, p5) == [0, 1]  # x
    assert indicator_poly(1, 2, p5) == [1, 4]  # 1 - x


def test_indicator_poly_ternary_values():
    p5 = PrimeFieldCtx(5)
    coeffs = indicator_poly(0, 3, p5)
    assert len(coeffs) <= 3

    def evaluate(x):
        return sum(c * x**k for k, c in enumerate(coeffs)) % 5

    assert evaluate(0) == 0 and evaluate(1) == 1 and evaluate(2) == 1


def test_indicator_poly_needs_p_geq_q():
    with pytest.raises(HypothesisViolationError):
        indicator_poly(0, 3, PrimeFieldCtx(2))


# -- tight constant-distance certificates ------------------------------------


def test_hamming_tight_hadamard_v1():
    system = hadamard_plus_full(1).to_vector_system()
    cert = hamming_tight_certificate(system, 5, 2)
    assert cert.passed
    assert cert.coefficients == ["2"] * 4  # -1/2 = 2 in F_5
    ident = cert.identity("tightness_congruence")
    assert ident.left == ident.right == "4"


def test_hamming_tight_hadamard_v2():
    system = hadamard_plus_full(2).to_vector_system()
    cert = hamming_tight_certificate(system, 7, 4)
    assert cert.passed
    assert set(cert.coefficients) == {"5"}  # -1/4 = 5 in F_7
    ident = cert.identity("tightness_congruence")
    assert ident.left == ident.right == "1"


def test_hamming_tight_combination_is_polynomial_identity():
    system = hadamard_plus_full(1).to_vector_system()
    cert = hamming_tight_certificate(system, 5, 2)
    assert cert.identity("combination_constant_term").holds
    assert cert.identity("combination_nonconstant_terms").holds
    for j in (0, 1):
        assert cert.identity(f"member_sum_at_constant_vector_{j}").holds


def test_hamming_tight_not_applicable_below_bound():
    system = VectorSystem.from_lists(3, 2, [(0, 0, 0), (0, 1, 1), (1, 0, 1)])
    cert = hamming_tight_certificate(system, 5, 2)
    assert cert.verdict == "not-applicable"


def test_hamming_tight_distance_violation_raises():
    system = VectorSystem.from_lists(3, 2, [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)])
    with pytest.raises(HypothesisViolationError) as err:
        hamming_tight_certificate(system, 5, 2)
    assert err.value.clause == "distancesCongruent"


def test_hamming_tight_lambda_zero_raises():
    system = hadamard_plus_full(1).to_vector_system()
    with pytest.raises(HypothesisViolationError):
        hamming_tight_certificate(system, 5, 5)


def test_hamming_tight_congruence_sides_differ_for_failing_parameters():
    """White-box check of the forced-congruence computation: parameters with
    n(q-1) = 0 mod p would not force the congruence, and the two sides then
    disagree (no genuine family realizes this at desk scale)."""
    n, q, p, lam = 6, 2, 3, 1
    left = q * lam % p
    right = (n * (q - 1) + 1) % p
    assert left != right


# -- sphere reduction ---------------------------------------------------------


def test_sphere_reduce_leading_square():
    n = 4
    reduced = sphere_reduce({(2, 0, 0, 0): 1}, n)
    expected = {(0, 0, 0, 0): Fraction(1)}
    for i in range(1, n):
        expo = [0] * n
        expo[i] = 2
        expected[tuple(expo)] = Fraction(-1)
    assert reduced.coeff_dict() == expected


def test_sphere_reduce_constant_unchanged():
    reduced = sphere_reduce({(0, 0, 0): 3}, 3)
    assert reduced.coeff_dict() == {(0, 0, 0): Fraction(3)}


def test_sphere_reduce_binomial_square():
    # (x1 + x2)^2 keeps the cross term, drops x1^2 into 1 - sum x_i^2
    n = 3
    reduced = sphere_reduce({(2, 0, 0): 1, (1, 1, 0): 2, (0, 2, 0): 1}, n)
    assert reduced.coeff_dict() == {
        (0, 0, 0): Fraction(1),
        (1, 1, 0): Fraction(2),
        (0, 0, 2): Fraction(-1),
    }


def test_sphere_reduce_degree_guard():
    with pytest.raises(UnsupportedDegreeError):
        sphere_reduce({(3, 0): 1}, 2)


def test_reduced_monomial_count_matches_two_distance_max():
    from basisbound.bounds import two_distance_max

    for n in range(1, 9):
        assert len(reduced_monomials(n)) == two_distance_max(n)


def test_sphere_reduce_agrees_on_random_unit_vectors():
    """Reduction preserves values on the sphere: 100 random unit vectors."""
    rng = random.Random(7)
    for n in (2, 4, 8):
        poly = {}
        for _ in range(12):
            expo = [0] * n
            for _ in range(rng.randint(0, 2)):
                expo[rng.randrange(n)] += 1
            key = tuple(expo)
            poly[key] = poly.get(key, Fraction(0)) + Fraction(
                rng.randint(-9, 9), rng.randint(1, 9)
            )
        reduced = sphere_reduce(poly, n)
        for _ in range(100):
            v = [rng.gauss(0, 1) for _ in range(n)]
            norm = math.sqrt(sum(x * x for x in v))
            v = [x / norm for x in v]
            direct = sum(
                float(c) * math.prod(x**e for x, e in zip(v, expo))
                for expo, c in poly.items()
            )
            assert abs(direct - reduced.evaluate_float(v)) <= 1e-9 * max(
                1.0, abs(direct)
            )


# -- two-distance certificates ------------------------------------------------


def test_two_distance_pentagon():
    cert = two_distance_certificate(pentagon())
    assert cert.passed
    relation = cert.identity("maximal_two_distance_relation")
    assert relation.left == relation.right == "5/4"
    assert set(cert.coefficients) == {"4/5"}
    assert cert.identity("coordinate_axis_sums_vanish").holds
    assert cert.identity("coordinate_norm_total").holds


def test_two_distance_schlafli():
    cert = two_distance_certificate(schlafli27())
    assert cert.passed
    relation = cert.identity("maximal_two_distance_relation")
    assert relation.left == relation.right == "9/8"
    assert set(cert.coefficients) == {"8/9"}
    assert cert.details["gram_rank"] == 6


def test_two_distance_johnson_not_applicable():
    cert = two_distance_certificate(johnson_pairs(6))
    assert cert.verdict == "not-applicable"
    assert cert.details["N"] == 15 and cert.details["maximal_size"] == 27


def test_two_distance_rejects_value_one():
    gram = ExactMatrix(QQ, [[1, 1], [1, 1]])
    bad = GramTwoDistance(n=1, count=2, value_a=Fraction(1), value_b=Fraction(0), gram=gram)
    with pytest.raises(HypothesisViolationError):
        two_distance_certificate(bad)


def _mutated_schlafli(new_value="1/3"):
    doc = schlafli27().to_json_dict()
    doc["a"] = new_value
    doc["gram"] = [[new_value if x == "1/4" else x for x in row] for row in doc["gram"]]
    return GramTwoDistance.from_json_dict(doc)


def test_two_distance_mutated_gram_fails_relation():
    cert = two_distance_certificate(_mutated_schlafli())
    assert cert.verdict == "fail"
    relation = cert.identity("maximal_two_distance_relation")
    assert not relation.holds
    assert relation.left != relation.right


def test_two_distance_single_mutated_entry_fails():
    doc = schlafli27().to_json_dict()
    doc["gram"][0][1] = "1/3"
    doc["gram"][1][0] = "1/3"
    cert = two_distance_certificate(GramTwoDistance.from_json_dict(doc))
    assert cert.verdict == "fail"
    assert not cert.identity("off_diagonal_values_match_declared").holds


# -- squared-distance ratio ----------------------------------------------------


def test_neumaier_johnson():
    cert = neumaier_check(5, 15, Fraction(1), Fraction(2))
    assert cert.passed and cert.details["m"] == 2


def test_neumaier_inspection_case():
    cert = neumaier_check(5, 12, Fraction(3), Fraction(4))
    assert cert.passed and cert.details["m"] == 4


def test_neumaier_pentagon_not_applicable():
    gram = pentagon()
    a = gram.field.coerce(gram.value_a)
    b = gram.field.coerce(gram.value_b)
    cert = neumaier_check(2, 5, 2 - 2 * a, 2 - 2 * b)
    assert cert.verdict == "not-applicable"


def test_neumaier_irrational_ratio_fails():
    a = QuadExt(Fraction(-1, 4), Fraction(1, 4), 5)
    b = QuadExt(Fraction(-1, 4), Fraction(-1, 4), 5)
    cert = neumaier_check(2, 8, 2 - 2 * a, 2 - 2 * b)
    assert cert.verdict == "fail"


def test_neumaier_rejects_unordered_distances():
    with pytest.raises(MalformedInputError):
        neumaier_check(5, 15, Fraction(2), Fraction(1))
    with pytest.raises(MalformedInputError):
        neumaier_check(5, 15, Fraction(0), Fraction(1))


def test_neumaier_non_integer_ratio_fails():
    cert = neumaier_check(3, 20, Fraction(2), Fraction(5))
    assert cert.verdict == "fail"


# -- modular design congruences -------------------------------------------------


def test_mod_design_fano():
    cert = mod_design_certificate(fano_plane(), 5)
    assert cert.passed
    assert cert.identity("design_congruence").left == "1"  # 6 mod 5
    assert cert.details["k_residue"] == 3


def test_mod_design_pg11_lambda_design():
    cert = mod_design_certificate(lambda_design_type1(projective_plane(11), 0), 5)
    assert cert.passed
    assert (cert.details["n"] % 5, cert.details["k_residue"], cert.details["lambda_residue"]) == (3, 2, 1)


def test_mod_design_fano_p3_k_clause():
    with pytest.raises(HypothesisViolationError) as err:
        mod_design_certificate(fano_plane(), 3)
    assert err.value.clause == "kNonzero"


def test_mod_design_requires_common_residues():
    fam = SetFamily.from_sets(3, [[1], [1, 2], [1, 2, 3]])
    with pytest.raises(HypothesisViolationError) as err:
        mod_design_certificate(fam, 5)
    assert err.value.clause == "commonSizeResidue"


def test_mod_design_requires_square_family():
    fam = SetFamily.from_sets(4, [[1, 2], [2, 3]])
    with pytest.raises(HypothesisViolationError) as err:
        mod_design_certificate(fam, 5)
    assert err.value.clause == "familySize"


@pytest.mark.parametrize("p,r", [(5, 11), (5, 31), (7, 29)])
def test_mod_design_remark_family_sweep(p, r):
    """Type-1 lambda-designs from planes of order r = dp+1 satisfy both
    congruences for every prime r <= 31."""
    design = lambda_design_type1(projective_plane(r), 0)
    cert = mod_design_certificate(design, p)
    assert cert.passed


# -- Ryser dichotomy -------------------------------------------------------------


def test_ryser_fano_alternative_a():
    cert = ryser_decompose(fano_plane(), 1)
    assert cert.passed
    assert cert.details["alternative"] == "A"
    assert cert.details["kappa_values"] == ["1/3"]
    assert cert.details["r"] == "3"
    assert set(cert.coefficients) == {"1/3"}


@pytest.mark.parametrize("n", range(4, 9))
def test_ryser_near_pencil_alternative_b(n):
    cert = ryser_decompose(near_pencil(n), 1)
    assert cert.passed
    assert cert.details["alternative"] == "B"
    assert Fraction(cert.details["r"]) + Fraction(cert.details["r_prime"]) == n + 1
    assert cert.identity("kappa_pair_sum").holds
    assert cert.identity("point_reciprocal_sum").holds
    assert cert.identity("global_reciprocal_sum").holds
    assert len(cert.details["kappa_values"]) == 2


def test_ryser_near_pencil_4_kappas():
    cert = ryser_decompose(near_pencil(4), 1)
    assert cert.details["kappa_values"] == ["1/3", "2/3"]


def test_ryser_fano_lambda_design():
    cert = ryser_decompose(lambda_design_type1(fano_plane(), 0), 2)
    assert cert.passed
    assert cert.details["alternative"] == "B"
    r = Fraction(cert.details["r"])
    r_prime = Fraction(cert.details["r_prime"])
    assert r + r_prime == 8


def test_ryser_resubstitution_identity():
    cert = ryser_decompose(fano_plane(), 1)
    assert cert.identity("monomial_resubstitution_mismatches").left == "0"


def test_ryser_hadamard_plus_full_violates_intersections():
    with pytest.raises(HypothesisViolationError) as err:
        ryser_decompose(hadamard_plus_full(2), 1)
    assert err.value.clause == "constantIntersection"


def test_ryser_rejects_degenerate_and_bad_lambda():
    with pytest.raises(HypothesisViolationError):
        ryser_decompose(SetFamily.from_sets(1, [[1]]), 1)
    with pytest.raises(HypothesisViolationError):
        ryser_decompose(fano_plane(), 0)
    with pytest.raises(HypothesisViolationError):
        ryser_decompose(SetFamily.from_sets(2, [[1], [1]]), 1)  # size = lambda
