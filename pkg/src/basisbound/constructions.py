"""Concrete extremal and counterexample configurations: Paley-Hadamard
designs and their full-set extension, projective planes, type-1
lambda-designs, and spherical two-distance sets (pentagon, the 27-line
Schlaefli set, Johnson pair sets).

Every constructor re-verifies its own postconditions (intersection
constancy, distance constancy, positive semidefiniteness, rank) and aborts
with InternalInconsistencyError on failure, so downstream certificates can
trust the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HypothesisViolationError,
    InternalInconsistencyError,
    MalformedInputError,
    UnsupportedOrderError,
)
from .exactfield import (
    QQ,
    ExactMatrix,
    QuadExt,
    QuadExtField,
    inertia_psd_rank,
    is_prime,
)
from .families import SetFamily, distance_set, intersection_profile

MAX_PLANE_ORDER = 31


@dataclass
class GramTwoDistance:
    """Gram matrix of a spherical two-distance point set.

    Exact data first: the matrix has unit diagonal and off-diagonal values
    in {a, b} over Q or Q(sqrt d).  Coordinates are an optional floating
    attachment used only for coordinate-level checks; `affine_dim` records
    the dimension of the affine hull when it is smaller than the ambient
    space (Johnson sets).
    """

    n: int
    count: int
    value_a: object
    value_b: object
    gram: ExactMatrix
    coords: tuple[tuple[float, ...], ...] | None = None
    affine_dim: int | None = None

    def __post_init__(self):
        g = self.gram
        if g.nrows != self.count or g.ncols != self.count:
            raise MalformedInputError(
                f"gram must be {self.count}x{self.count}, got {g.nrows}x{g.ncols}"
            )
        if not g.is_symmetric():
            raise MalformedInputError("gram matrix must be symmetric")
        field = g.field
        one = field.one
        for i in range(self.count):
            if not field.eq(g.entries[i][i], one):
                raise MalformedInputError(f"diagonal entry {i} differs from 1")
        if self.coords is not None and len(self.coords) != self.count:
            raise MalformedInputError("coordinate count does not match point count")

    @property
    def field(self):
        return self.gram.field

    def off_diagonal_values(self):
        """Distinct off-diagonal entries, in first-occurrence order."""
        seen = []
        g = self.gram
        for i in range(self.count):
            for j in range(i + 1, self.count):
                x = g.entries[i][j]
                if not any(g.field.eq(x, y) for y in seen):
                    seen.append(x)
        return seen

    def self_check(self):
        """Full two-distance postcondition; raises on violation."""
        field = self.field
        a = field.coerce(self.value_a)
        b = field.coerce(self.value_b)
        if field.eq(a, b) or field.eq(a, field.one) or field.eq(b, field.one):
            raise InternalInconsistencyError("inner-product values must differ from 1 and each other")
        for x in self.off_diagonal_values():
            if not (field.eq(x, a) or field.eq(x, b)):
                raise InternalInconsistencyError(
                    f"off-diagonal value {field.format(x)} outside the declared pair"
                )
        is_psd, rk = inertia_psd_rank(self.gram)
        if not is_psd:
            raise InternalInconsistencyError("gram matrix is not positive semidefinite")
        if rk > self.n:
            raise InternalInconsistencyError(f"gram rank {rk} exceeds ambient dimension {self.n}")
        return rk

    def to_json_dict(self):
        field = self.field
        doc = {
            "n": self.n,
            "N": self.count,
            "a": field.format(field.coerce(self.value_a)),
            "b": field.format(field.coerce(self.value_b)),
            "gram": [[field.format(x) for x in row] for row in self.gram.entries],
        }
        if self.coords is not None:
            doc["coords"] = [list(c) for c in self.coords]
        if self.affine_dim is not None:
            doc["affine_dim"] = self.affine_dim
        return doc

    @classmethod
    def from_json_dict(cls, doc):
        try:
            n = int(doc["n"])
            count = int(doc["N"])
            scalars = [doc["a"], doc["b"]]
            grid = doc["gram"]
        except (KeyError, TypeError) as exc:
            raise MalformedInputError(f"bad gram document: {exc}") from exc
        flat = [s for row in grid for s in row] + scalars
        field = _detect_field(flat)
        gram = ExactMatrix(field, [[field.parse(s) for s in row] for row in grid])
        coords = doc.get("coords")
        if coords is not None:
            coords = tuple(tuple(float(x) for x in c) for c in coords)
        return cls(
            n=n,
            count=count,
            value_a=field.parse(scalars[0]),
            value_b=field.parse(scalars[1]),
            gram=gram,
            coords=coords,
            affine_dim=doc.get("affine_dim"),
        )


def _detect_field(scalar_strings):
    radicands = set()
    for s in scalar_strings:
        if "sqrt" in s:
            start = s.index("sqrt(") + 5
            radicands.add(int(s[start : s.index(")", start)]))
    if not radicands:
        return QQ
    if len(radicands) > 1:
        raise MalformedInputError(f"mixed radicands in document: {sorted(radicands)}")
    return QuadExtField(radicands.pop())


def projective_plane(r: int) -> SetFamily:
    """Projective plane of prime order r: r^2+r+1 points and as many lines
    of size r+1, any two lines meeting in one point."""
    if not is_prime(r):
        raise HypothesisViolationError(f"plane order must be prime: {r}")
    if r > MAX_PLANE_ORDER:
        raise HypothesisViolationError(f"plane order above desk scale: {r} > {MAX_PLANE_ORDER}")
    points = _projective_points(r)
    index = {pt: k + 1 for k, pt in enumerate(points)}
    n = len(points)
    lines = []
    for a, b, c in points:
        members = [
            index[(x, y, z)]
            for (x, y, z) in points
            if (a * x + b * y + c * z) % r == 0
        ]
        lines.append(members)
    family = SetFamily.from_sets(n, lines)
    _check_design(family, n, r + 1, 1)
    return family


def _projective_points(r):
    pts = [(1, y, z) for y in range(r) for z in range(r)]
    pts += [(0, 1, z) for z in range(r)]
    pts.append((0, 0, 1))
    return pts


def _check_design(family, n_expected, size_expected, lam_expected):
    if family.n != n_expected or len(family) != n_expected:
        raise InternalInconsistencyError("design has wrong point or block count")
    if any(s != size_expected for s in family.sizes()):
        raise InternalInconsistencyError("design blocks have wrong size")
    profile = intersection_profile(family)
    if profile.common_lambda != lam_expected:
        raise InternalInconsistencyError("design intersection profile not constant")


def fano_plane() -> SetFamily:
    return projective_plane(2)


def hadamard_design(v: int) -> SetFamily:
    """Paley construction of a (4v-1, 2v-1, v-1) design: the blocks are the
    translates of the nonzero quadratic residues mod 4v-1.  Only orders
    with 4v-1 prime are supported."""
    if v < 1:
        raise HypothesisViolationError(f"order parameter must be positive: {v}")
    m = 4 * v - 1
    if not is_prime(m):
        raise UnsupportedOrderError(f"4v-1 = {m} is not prime; Paley construction unavailable")
    residues = {(x * x) % m for x in range(1, m)} - {0}
    blocks = [[(x + t) % m + 1 for x in residues] for t in range(m)]
    family = SetFamily.from_sets(m, blocks)
    if v > 1:
        _check_design(family, m, 2 * v - 1, v - 1)
    return family


def hadamard_plus_full(v: int) -> SetFamily:
    """Hadamard design together with the full ground set: 4v sets on
    [4v-1] whose characteristic vectors are pairwise at Hamming distance
    exactly 2v, exceeding the n-set bound for constant-distance families."""
    design = hadamard_design(v)
    m = design.n
    masks = design.masks + ((1 << m) - 1,)
    family = SetFamily(m, masks)
    profile = distance_set(family.to_vector_system())
    if not (profile.is_constant and profile.common_value == 2 * v):
        raise InternalInconsistencyError(
            f"expected constant distance {2 * v}, got {profile.distances}"
        )
    return family


def lambda_design_type1(design: SetFamily, block_index: int = 0) -> SetFamily:
    """Type-1 lambda-design: keep one block B0 of a symmetric design and
    replace every other block C by the symmetric difference C xor B0.

    The output has block sizes k' and 2(k'-lambda') and constant pairwise
    intersection k'-lambda'."""
    n = design.n
    if len(design) != n:
        raise HypothesisViolationError(
            f"symmetric design needs as many blocks as points: {len(design)} != {n}"
        )
    if not 0 <= block_index < len(design):
        raise MalformedInputError(f"block index {block_index} out of range")
    sizes = design.sizes()
    if len(set(sizes)) != 1:
        raise HypothesisViolationError("design blocks are not uniform")
    k = sizes[0]
    if len(design) == 1:
        return design
    profile = intersection_profile(design)
    if profile.common_lambda is None:
        raise HypothesisViolationError("design intersections are not constant")
    lam_prime = profile.common_lambda
    base = design.masks[block_index]
    masks = tuple(m if i == block_index else m ^ base for i, m in enumerate(design.masks))
    family = SetFamily(n, masks)

    lam = k - lam_prime
    expected_sizes = {k, 2 * (k - lam_prime)}
    if set(family.sizes()) - expected_sizes:
        raise InternalInconsistencyError("lambda-design block sizes unexpected")
    out_profile = intersection_profile(family)
    if out_profile.common_lambda != lam:
        raise InternalInconsistencyError("lambda-design intersections not constant")
    return family


def near_pencil(n: int) -> SetFamily:
    """The non-uniform lambda = 1 family on [n]: all pairs {1, x} plus the
    complement of {1}."""
    if n < 3:
        raise MalformedInputError(f"near-pencil needs n >= 3: {n}")
    sets = [[1, x] for x in range(2, n + 1)]
    sets.append(list(range(2, n + 1)))
    return SetFamily.from_sets(n, sets)


def pentagon() -> GramTwoDistance:
    """Regular pentagon on the unit circle: 5 = 2(2+3)/2 points with inner
    products (sqrt5 - 1)/4 between neighbours and -(sqrt5 + 1)/4 otherwise,
    exact over Q(sqrt 5)."""
    field = QuadExtField(5)
    a = QuadExt(Fraction(-1, 4), Fraction(1, 4), 5)
    b = QuadExt(Fraction(-1, 4), Fraction(-1, 4), 5)
    rows = []
    for i in range(5):
        row = []
        for j in range(5):
            if i == j:
                row.append(field.one)
            elif (i - j) % 5 in (1, 4):
                row.append(a)
            else:
                row.append(b)
        rows.append(row)
    coords = tuple(
        (math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5)) for k in range(5)
    )
    gram = GramTwoDistance(
        n=2, count=5, value_a=a, value_b=b, gram=ExactMatrix(field, rows), coords=coords
    )
    rk = gram.self_check()
    if rk != 2:
        raise InternalInconsistencyError(f"pentagon gram rank {rk} != 2")
    return gram


_SCHLAEFLI_MEET = -Fraction(1, 2)
_SCHLAEFLI_SKEW = Fraction(1, 4)


def schlafli27() -> GramTwoDistance:
    """The 27-line two-distance set in dimension 6, built from double-six
    combinatorics: labels a_1..a_6, b_1..b_6 and c_ij (i<j); a_i meets b_j
    iff i != j, a_i and b_i meet c_jk iff i is in {j, k}, and c_ij meets
    c_kl iff the index pairs are disjoint.  Meeting pairs get inner product
    -1/2, all other distinct pairs 1/4; every line meets exactly 10 others
    and the Gram matrix is PSD of rank 6."""
    labels = [("a", i) for i in range(1, 7)]
    labels += [("b", i) for i in range(1, 7)]
    labels += [("c", i, j) for i in range(1, 7) for j in range(i + 1, 7)]

    def meets(x, y):
        if x[0] == "a" and y[0] == "a":
            return False
        if x[0] == "b" and y[0] == "b":
            return False
        if {x[0], y[0]} == {"a", "b"}:
            return x[1] != y[1]
        if x[0] == "c" and y[0] == "c":
            return not ({x[1], x[2]} & {y[1], y[2]})
        if x[0] == "c":
            x, y = y, x
        return x[1] in y[1:]

    count = len(labels)
    rows = []
    for i, x in enumerate(labels):
        row = []
        for j, y in enumerate(labels):
            if i == j:
                row.append(Fraction(1))
            elif meets(x, y):
                row.append(_SCHLAEFLI_MEET)
            else:
                row.append(_SCHLAEFLI_SKEW)
        rows.append(row)

    for i, x in enumerate(labels):
        degree = sum(1 for j, y in enumerate(labels) if i != j and meets(x, y))
        if degree != 10:
            raise InternalInconsistencyError(f"label {x} meets {degree} lines, expected 10")

    gram = GramTwoDistance(
        n=6,
        count=count,
        value_a=_SCHLAEFLI_SKEW,
        value_b=_SCHLAEFLI_MEET,
        gram=ExactMatrix(QQ, rows),
    )
    rk = gram.self_check()
    if rk != 6:
        raise InternalInconsistencyError(f"27-line gram rank {rk} != 6")
    return gram


def johnson_pairs(m: int) -> GramTwoDistance:
    """Unit vectors (e_i + e_j)/sqrt(2) for all pairs i < j in R^m: inner
    products 1/2 when the pairs share an index and 0 otherwise.  The span
    is all of R^m; the affine hull has dimension m-1."""
    if m < 4:
        raise HypothesisViolationError(f"need m >= 4: {m}")
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    count = len(pairs)
    rows = []
    for x in pairs:
        row = []
        for y in pairs:
            if x == y:
                row.append(Fraction(1))
            elif set(x) & set(y):
                row.append(Fraction(1, 2))
            else:
                row.append(Fraction(0))
        rows.append(row)
    inv_sqrt2 = 1 / math.sqrt(2)
    coords = tuple(
        tuple(inv_sqrt2 if k in pair else 0.0 for k in range(m)) for pair in pairs
    )
    gram = GramTwoDistance(
        n=m,
        count=count,
        value_a=Fraction(1, 2),
        value_b=Fraction(0),
        gram=ExactMatrix(QQ, rows),
        coords=coords,
        affine_dim=m - 1,
    )
    rk = gram.self_check()
    if rk != m:
        raise InternalInconsistencyError(f"johnson gram rank {rk} != {m}")
    return gram
