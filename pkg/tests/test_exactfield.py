"""Exact scalar arithmetic and matrix routines."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from basisbound.errors import MalformedInputError, SingularSystemError
from basisbound.exactfield import (
    QQ,
    ExactMatrix,
    PrimeFieldCtx,
    QuadExt,
    QuadExtField,
    determinant,
    inertia_psd_rank,
    invert,
    rank,
    solve_linear,
)

F5 = QuadExtField(5)


def quad(r, s):
    return QuadExt(Fraction(r), Fraction(s), 5)


# -- scalar syntax ----------------------------------------------------------


@pytest.mark.parametrize(
    "text,value",
    [
        ("3", Fraction(3)),
        ("-7/2", Fraction(-7, 2)),
        ("0", Fraction(0)),
    ],
)
def test_rational_parse_format_roundtrip(text, value):
    assert QQ.parse(text) == value
    assert QQ.parse(QQ.format(value)) == value


@pytest.mark.parametrize(
    "text",
    ["-1/4+1/4*sqrt(5)", "-1/4-1/4*sqrt(5)", "1*sqrt(5)", "-1*sqrt(5)", "3/2", "0"],
)
def test_quadratic_parse_format_roundtrip(text):
    x = F5.parse(text)
    assert F5.parse(F5.format(x)) == x


def test_quadratic_format_canonical():
    assert F5.format(quad(Fraction(-1, 4), Fraction(1, 4))) == "-1/4+1/4*sqrt(5)"
    assert F5.format(quad(0, Fraction(-1, 4))) == "-1/4*sqrt(5)"
    assert F5.format(quad(Fraction(5, 4), 0)) == "5/4"


@pytest.mark.parametrize("text", ["sqrt(7)", "1/4*sqrt(10)+1", "1/0", "x", "1 2"])
def test_bad_scalar_literals_rejected(text):
    with pytest.raises(MalformedInputError):
        F5.parse(text)


def test_prime_field_parse_range():
    p5 = PrimeFieldCtx(5)
    assert p5.parse("4") == 4
    with pytest.raises(MalformedInputError):
        p5.parse("5")
    with pytest.raises(MalformedInputError):
        p5.parse("-1")


def test_prime_field_requires_prime():
    with pytest.raises(MalformedInputError):
        PrimeFieldCtx(6)
    with pytest.raises(MalformedInputError):
        PrimeFieldCtx(1)


# -- quadratic arithmetic ---------------------------------------------------


def test_quadratic_sign_exact():
    # sqrt(5) is between 2 and 3: 9/4 - sqrt(5) > 0 but 2 - sqrt(5) < 0
    assert quad(Fraction(9, 4), -1).sign() == 1
    assert quad(2, -1).sign() == -1
    assert quad(-2, 1).sign() == 1
    assert quad(Fraction(-9, 4), 1).sign() == -1
    assert quad(0, 0).sign() == 0


def test_quadratic_mixed_radicands_error():
    with pytest.raises(MalformedInputError):
        quad(1, 1) + QuadExt(Fraction(1), Fraction(1), 7)


def test_quadratic_radicand_must_be_squarefree():
    with pytest.raises(MalformedInputError):
        QuadExt(Fraction(1), Fraction(1), 12)
    with pytest.raises(MalformedInputError):
        QuadExtField(9)


rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)
quads = st.builds(quad, rationals, rationals)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert QQ.mul(a, QQ.inv(a)) == 1


@settings(max_examples=200)
@given(quads, quads, quads)
def test_quadratic_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == F5.one


# -- rank -------------------------------------------------------------------


def test_rank_identity_rational():
    assert rank(ExactMatrix.identity(QQ, 3)) == 3


def test_rank_repeated_rows_mod2():
    g = PrimeFieldCtx(2)
    assert rank(ExactMatrix(g, [[1, 1], [1, 1]])) == 1


def test_rank_of_27_line_gram_is_6():
    from basisbound.constructions import schlafli27

    gram = schlafli27().gram
    assert rank(gram) == 6

    # independent oracle: floating eigenvalues of the same matrix
    numpy = pytest.importorskip("numpy")
    dense = numpy.array([[float(x) for x in row] for row in gram.entries])
    eigenvalues = numpy.linalg.eigvalsh(dense)
    assert int((abs(eigenvalues) > 1e-8).sum()) == 6


def _span_size(rows, p, width):
    span = {(0,) * width}
    for row in rows:
        new = set()
        for base in span:
            for c in range(1, p):
                new.add(tuple((b + c * r) % p for b, r in zip(base, row)))
        span |= new
    return len(span)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_rank_matches_row_span_enumeration(p):
    """Elimination rank equals brute-force row-subspace dimension."""
    import random

    rng = random.Random(p * 1009)
    ctx = PrimeFieldCtx(p)
    for _ in range(40):
        size = rng.randint(1, 4)
        rows = [[rng.randrange(p) for _ in range(size)] for _ in range(size)]
        r = rank(ExactMatrix(ctx, rows))
        assert p**r == _span_size(rows, p, size)


# -- solve ------------------------------------------------------------------


def test_solve_identity():
    x = solve_linear(ExactMatrix.identity(QQ, 3), [1, 2, 3])
    assert x == [1, 2, 3]


def test_solve_diagonal_product_system():
    # diag((1-a)(1-b)) alpha = 1 with the pentagon's inner products: each
    # coefficient is 1/((1-a)(1-b)) = 4/5 since (1-a)(1-b) = 5/4
    a = quad(Fraction(-1, 4), Fraction(1, 4))
    b = quad(Fraction(-1, 4), Fraction(-1, 4))
    d = (F5.one - a) * (F5.one - b)
    m = ExactMatrix(F5, [[d if i == j else F5.zero for j in range(3)] for i in range(3)])
    alpha = solve_linear(m, [F5.one] * 3)
    assert all(x == d.inverse() for x in alpha)
    assert F5.format(alpha[0]) == "4/5"


def test_solve_fano_incidence_gives_uniform_kappa():
    """Row sums of the inverted Fano incidence are all 1/3."""
    from basisbound.constructions import fano_plane

    fam = fano_plane()
    a = ExactMatrix(QQ, [[m >> i & 1 for i in range(7)] for m in fam.masks])
    theta = invert(a)
    kappa = [sum(row) for row in theta.entries]
    assert kappa == [Fraction(1, 3)] * 7
    # consistency: degree r = kappa (n-1) + 1 = 3
    assert all(k * 6 + 1 == 3 for k in kappa)


def test_solve_singular_reports_rank():
    with pytest.raises(SingularSystemError) as err:
        solve_linear(ExactMatrix(QQ, [[1, 1], [1, 1]]), [1, 2])
    assert err.value.rank == 1


def test_solve_resubstitutes_exactly():
    import random

    rng = random.Random(11)
    for _ in range(25):
        size = rng.randint(1, 5)
        m = ExactMatrix(
            QQ,
            [
                [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(size)]
                for _ in range(size)
            ],
        )
        rhs = [Fraction(rng.randint(-6, 6)) for _ in range(size)]
        try:
            x = solve_linear(m, rhs)
        except SingularSystemError:
            continue
        for i in range(size):
            assert sum(m.entries[i][j] * x[j] for j in range(size)) == rhs[i]


def test_determinant_matches_cofactor_expansion():
    import random

    def cofactor(rows):
        if len(rows) == 1:
            return rows[0][0]
        total = Fraction(0)
        for j in range(len(rows)):
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor(minor)
        return total

    rng = random.Random(23)
    for _ in range(20):
        size = rng.randint(1, 4)
        rows = [
            [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(size)]
            for _ in range(size)
        ]
        assert determinant(ExactMatrix(QQ, rows)) == cofactor(rows)


# -- inertia ----------------------------------------------------------------


def test_inertia_identity():
    assert inertia_psd_rank(ExactMatrix.identity(QQ, 4)) == (True, 4)


def test_inertia_indefinite_pivots():
    assert inertia_psd_rank(ExactMatrix(QQ, [[1, 2], [2, 1]])) == (False, 2)


def test_inertia_pentagon_gram():
    from basisbound.constructions import pentagon

    assert inertia_psd_rank(pentagon().gram) == (True, 2)


def test_inertia_zero_diagonal_indefinite():
    assert inertia_psd_rank(ExactMatrix(QQ, [[0, 1], [1, 0]])) == (False, 2)


def test_inertia_rank_equals_rank():
    import random

    rng = random.Random(5)
    for _ in range(30):
        size = rng.randint(1, 5)
        half = [[Fraction(rng.randint(-3, 3)) for _ in range(size)] for _ in range(size)]
        sym = [
            [half[i][j] + half[j][i] for j in range(size)] for i in range(size)
        ]
        m = ExactMatrix(QQ, sym)
        assert inertia_psd_rank(m)[1] == rank(m)


def test_inertia_requires_symmetry_and_order():
    with pytest.raises(MalformedInputError):
        inertia_psd_rank(ExactMatrix(QQ, [[1, 2], [3, 4]]))
    with pytest.raises(MalformedInputError):
        inertia_psd_rank(ExactMatrix.identity(PrimeFieldCtx(5), 2))


# -- matrices ---------------------------------------------------------------


def test_matrix_rejects_ragged_and_mixed():
    with pytest.raises(MalformedInputError):
        ExactMatrix(QQ, [[1, 2], [3]])
    with pytest.raises(MalformedInputError):
        ExactMatrix(QQ, [[quad(1, 1)]])
    with pytest.raises(MalformedInputError):
        ExactMatrix(PrimeFieldCtx(5), [[Fraction(1, 2)]])


def test_independence_matrix_size_error():
    with pytest.raises(MalformedInputError):
        solve_linear(ExactMatrix(QQ, [[1, 2]]), [1])
