"""Point universes and the distance structures defined on them.

A space is a finite list of points (either bare labels or exact rational
coordinates) or a closed decimal grid [lo, hi] with a fixed step.  On top
of the universe sits a three-argument distance S(x, y, z), given by an
explicit table, by a formula in x, y, z, or generated from an ordinary
two-argument metric d via

    S_d(x, y, z) = d(x, z) + d(y, z).

The two defining laws checked here, over every sampled triple/quadruple:

    S1: S(x, y, z) = 0  iff  x = y = z
    S2: S(x, y, z) <= S(x, x, a) + S(y, y, a) + S(z, z, a)

All checks take a strictness margin ``tol``: a strict inequality must
clear its bound by at least ``tol`` to count as satisfied.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .expr import Formula
from .numeric import DEFAULT_TOL, format_decimal, to_fraction


class SpaceError(Exception):
    """Base class for universe and distance-structure failures."""


class UnknownPointError(SpaceError):
    """A label or coordinate does not resolve inside the universe."""


class MetricAxiomError(SpaceError):
    """A claimed metric failed validation; the message names a witness."""


class UnsupportedSpaceError(SpaceError):
    """The operation requires a space kind other than the one given."""


@dataclass(frozen=True)
class Point:
    """A universe element: a label, plus its coordinate when numeric."""

    label: str
    value: Fraction | None = None

    def __repr__(self) -> str:  # keep test output short
        return f"Point({self.label})"


def as_point(ref: object) -> Point:
    """Build a point from a label, a number, or an existing point."""
    if isinstance(ref, Point):
        return ref
    if isinstance(ref, str):
        return Point(ref)
    value = to_fraction(ref)
    return Point(format_decimal(value), value)


class Metric:
    """Two-argument distance interface."""

    def distance(self, x: Point, y: Point) -> Fraction:
        raise NotImplementedError


class TableMetric(Metric):
    """Metric given by explicit entries keyed on point labels.

    Missing mirror entries are filled by symmetry and missing diagonal
    entries by zero; explicitly supplied values always win so that a bad
    table is still caught by validation.
    """

    def __init__(self, entries: dict[tuple[str, str], Fraction]):
        full = dict(entries)
        for (x, y), v in entries.items():
            full.setdefault((y, x), v)
        for x, y in list(full):
            full.setdefault((x, x), Fraction(0))
            full.setdefault((y, y), Fraction(0))
        self.entries = full

    def distance(self, x: Point, y: Point) -> Fraction:
        try:
            return self.entries[(x.label, y.label)]
        except KeyError:
            raise UnknownPointError(
                f"no metric entry for ({x.label}, {y.label})"
            ) from None


class FormulaMetric(Metric):
    """Metric computed from a formula in x and y."""

    def __init__(self, formula: Formula):
        self.formula = formula

    def distance(self, x: Point, y: Point) -> Fraction:
        return self.formula(_coordinate(x), _coordinate(y))


class SMetric:
    """Three-argument distance interface."""

    def triple(self, x: Point, y: Point, z: Point) -> Fraction:
        raise NotImplementedError


class TableSMetric(SMetric):
    """S given by explicit entries for every ordered triple of labels."""

    def __init__(self, entries: dict[tuple[str, str, str], Fraction]):
        self.entries = dict(entries)

    def triple(self, x: Point, y: Point, z: Point) -> Fraction:
        try:
            return self.entries[(x.label, y.label, z.label)]
        except KeyError:
            raise UnknownPointError(
                f"no S entry for ({x.label}, {y.label}, {z.label})"
            ) from None


class FormulaSMetric(SMetric):
    """S computed from a formula in x, y, z."""

    def __init__(self, formula: Formula):
        self.formula = formula

    def triple(self, x: Point, y: Point, z: Point) -> Fraction:
        return self.formula(_coordinate(x), _coordinate(y), _coordinate(z))


class GeneratedSMetric(SMetric):
    """S built from an ordinary metric: S(x, y, z) = d(x, z) + d(y, z)."""

    def __init__(self, metric: Metric):
        self.metric = metric

    def triple(self, x: Point, y: Point, z: Point) -> Fraction:
        d = self.metric.distance
        return d(x, z) + d(y, z)


def _coordinate(p: Point) -> Fraction:
    if p.value is None:
        raise UnknownPointError(f"point {p.label!r} has no numeric coordinate")
    return p.value


class Space:
    """A universe of points with an S-metric attached.

    ``kind`` is "finite" for an explicit point list and "real_grid" for the
    uniform decimal grid.  A grid universe is still a finite collection;
    the kind controls grid-specific behavior such as snapping map images
    and the default circle-membership tolerance.
    """

    def __init__(
        self,
        kind: str,
        points: tuple[Point, ...],
        smetric: SMetric,
        lo: Fraction | None = None,
        hi: Fraction | None = None,
        step: Fraction | None = None,
    ):
        self.kind = kind
        self.points = points
        self.smetric = smetric
        self.lo = lo
        self.hi = hi
        self.step = step
        self._by_label = {p.label: p for p in points}
        if len(self._by_label) != len(points):
            raise ValueError("duplicate point labels in universe")
        self._by_value = {p.value: p for p in points if p.value is not None}
        self._order = {p.label: i for i, p in enumerate(points)}

    @classmethod
    def finite(cls, points: list[object], smetric: SMetric) -> "Space":
        return cls("finite", tuple(as_point(p) for p in points), smetric)

    @classmethod
    def real_grid(
        cls, lo: object, hi: object, step: object, smetric: SMetric
    ) -> "Space":
        lo_f, hi_f, step_f = to_fraction(lo), to_fraction(hi), to_fraction(step)
        if step_f <= 0:
            raise ValueError("grid step must be positive")
        if hi_f < lo_f:
            raise ValueError("grid needs lo <= hi")
        span = (hi_f - lo_f) / step_f
        count = span.numerator // span.denominator
        points = tuple(
            as_point(lo_f + i * step_f) for i in range(count + 1)
        )
        return cls("real_grid", points, smetric, lo_f, hi_f, step_f)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, ref: object) -> bool:
        try:
            self.resolve(ref)
        except UnknownPointError:
            return False
        return True

    def resolve(self, ref: object) -> Point:
        """Return the universe point for a label, coordinate, or point."""
        if isinstance(ref, Point):
            ref = ref.label if ref.value is None else ref.value
        if isinstance(ref, str):
            try:
                return self._by_label[ref]
            except KeyError:
                raise UnknownPointError(f"unknown point label {ref!r}") from None
        value = to_fraction(ref)
        try:
            return self._by_value[value]
        except KeyError:
            raise UnknownPointError(
                f"no point at coordinate {format_decimal(value)}"
            ) from None

    def coerce(self, ref: object) -> Point:
        """Like :meth:`resolve`, but coordinates off the universe are kept
        as free-standing points so formula distances can still evaluate."""
        if isinstance(ref, Point):
            return self._by_label.get(ref.label, ref)
        if isinstance(ref, str):
            return self.resolve(ref)
        value = to_fraction(ref)
        return self._by_value.get(value) or as_point(value)

    def s(self, x: object, y: object, z: object) -> Fraction:
        return self.smetric.triple(self.coerce(x), self.coerce(y), self.coerce(z))

    def order_key(self, p: Point) -> tuple:
        pos = self._order.get(p.label)
        if pos is not None:
            return (0, pos)
        return (1, p.value if p.value is not None else 0, p.label)

    def nearest(self, value: Fraction) -> tuple[Point, Fraction]:
        """Closest grid point to ``value`` and the distance to it."""
        if self.kind != "real_grid":
            raise UnsupportedSpaceError("nearest() needs a real_grid space")
        assert self.lo is not None and self.step is not None
        offset = (value - self.lo) / self.step
        i = offset.numerator // offset.denominator
        if offset - i > Fraction(1, 2):
            i += 1
        i = min(max(i, 0), len(self.points) - 1)
        point = self.points[i]
        assert point.value is not None
        return point, abs(value - point.value)


def eval_s(space: Space, x: object, y: object, z: object) -> Fraction:
    """S(x, y, z) for universe points, labels, or raw coordinates."""
    return space.s(x, y, z)


@dataclass
class AxiomReport:
    """Outcome of the S1/S2 sweep with every violating tuple listed."""

    s1_violations: list[tuple[tuple[Point, Point, Point], Fraction]]
    s2_violations: list[
        tuple[tuple[Point, Point, Point, Point], Fraction, Fraction]
    ]
    triples_checked: int
    quadruples_checked: int

    @property
    def passed(self) -> bool:
        return not self.s1_violations and not self.s2_violations


def check_axioms(
    space: Space,
    sample: list[object] | None = None,
    tol: object = DEFAULT_TOL,
) -> AxiomReport:
    """Exhaustively test S1 and S2 over a sample (default: the universe).

    S1 demands S = 0 on diagonal triples and S >= tol off the diagonal,
    which also rejects negative values.  S2 is tested over all ordered
    quadruples with additive slack tol.
    """
    tol = to_fraction(tol)
    pts = [space.coerce(p) for p in sample] if sample else list(space.points)
    cache: dict[tuple[int, int, int], Fraction] = {}

    def s(i: int, j: int, k: int) -> Fraction:
        key = (i, j, k)
        if key not in cache:
            cache[key] = space.smetric.triple(pts[i], pts[j], pts[k])
        return cache[key]

    n = len(pts)
    s1: list[tuple[tuple[Point, Point, Point], Fraction]] = []
    for i, j, k in itertools.product(range(n), repeat=3):
        v = s(i, j, k)
        diagonal = i == j == k
        if diagonal and abs(v) > tol:
            s1.append(((pts[i], pts[j], pts[k]), v))
        elif not diagonal and v < tol:
            s1.append(((pts[i], pts[j], pts[k]), v))

    s2: list[tuple[tuple[Point, Point, Point, Point], Fraction, Fraction]] = []
    for i, j, k, a in itertools.product(range(n), repeat=4):
        lhs = s(i, j, k)
        rhs = s(i, i, a) + s(j, j, a) + s(k, k, a)
        if lhs > rhs + tol:
            s2.append(((pts[i], pts[j], pts[k], pts[a]), lhs, rhs))

    return AxiomReport(s1, s2, n**3, n**4)


def check_symmetry(
    space: Space,
    sample: list[object] | None = None,
    tol: object = DEFAULT_TOL,
) -> list[tuple[tuple[Point, Point], Fraction, Fraction]]:
    """Pairs where S(x, x, y) and S(y, y, x) disagree beyond tol.

    Any space satisfying S1 and S2 has none; this probes that directly.
    """
    tol = to_fraction(tol)
    pts = [space.coerce(p) for p in sample] if sample else list(space.points)
    bad = []
    for x, y in itertools.combinations(pts, 2):
        forward = space.smetric.triple(x, x, y)
        backward = space.smetric.triple(y, y, x)
        if abs(forward - backward) > tol:
            bad.append(((x, y), forward, backward))
    return bad


def s_from_metric(
    metric: Metric,
    points: list[object] | None = None,
    tol: object = DEFAULT_TOL,
) -> GeneratedSMetric:
    """Validate ``metric`` on ``points`` and wrap it as an S-metric.

    Raises :class:`MetricAxiomError` naming the first witness when the
    table or formula is not actually a metric.  For table metrics the
    sample defaults to every label in the table.
    """
    tol = to_fraction(tol)
    if points is None:
        if not isinstance(metric, TableMetric):
            raise ValueError("points are required for a formula metric")
        labels = sorted({x for pair in metric.entries for x in pair})
        pts = [Point(lbl) for lbl in labels]
    else:
        pts = [as_point(p) for p in points]

    d = metric.distance
    for x in pts:
        if abs(d(x, x)) > tol:
            raise MetricAxiomError(
                f"d({x.label}, {x.label}) = {format_decimal(d(x, x))}, not 0"
            )
    for x, y in itertools.permutations(pts, 2):
        if d(x, y) < tol:
            raise MetricAxiomError(
                f"d({x.label}, {y.label}) = {format_decimal(d(x, y))} "
                "is not strictly positive"
            )
        if abs(d(x, y) - d(y, x)) > tol:
            raise MetricAxiomError(
                f"asymmetry: d({x.label}, {y.label}) != d({y.label}, {x.label})"
            )
    for x, y, z in itertools.product(pts, repeat=3):
        if d(x, z) > d(x, y) + d(y, z) + tol:
            raise MetricAxiomError(
                f"triangle inequality fails at "
                f"({x.label}, {y.label}, {z.label})"
            )
    return GeneratedSMetric(metric)


def induced_d_s(space: Space, x: object, y: object) -> Fraction:
    """The symmetrized two-argument distance S(x,x,y) + S(y,y,x).

    This need not satisfy the triangle inequality; see
    :func:`check_triangle`.
    """
    return space.s(x, x, y) + space.s(y, y, x)


@dataclass
class TriangleReport:
    violations: list[tuple[tuple[Point, Point, Point], Fraction, Fraction]]
    triples_checked: int

    @property
    def passed(self) -> bool:
        return not self.violations


def check_triangle(
    space: Space,
    sample: list[object] | None = None,
    tol: object = DEFAULT_TOL,
) -> TriangleReport:
    """Test the induced distance for the triangle inequality on triples."""
    tol = to_fraction(tol)
    pts = [space.coerce(p) for p in sample] if sample else list(space.points)
    pair: dict[tuple[int, int], Fraction] = {}

    def ds(i: int, j: int) -> Fraction:
        key = (i, j) if i <= j else (j, i)
        if key not in pair:
            a, b = pts[key[0]], pts[key[1]]
            pair[key] = space.smetric.triple(a, a, b) + space.smetric.triple(
                b, b, a
            )
        return pair[key]

    n = len(pts)
    bad = []
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = ds(i, j)
        rhs = ds(i, k) + ds(k, j)
        if lhs > rhs + tol:
            bad.append(((pts[i], pts[j], pts[k]), lhs, rhs))
    return TriangleReport(bad, n**3)


@dataclass
class GeneratedCheck:
    generated: bool
    witness: tuple[tuple[Point, Point, Point], Fraction, Fraction] | None
    triples_checked: int


def generating_metric_check(
    space: Space,
    sample: list[object] | None = None,
    tol: object = DEFAULT_TOL,
) -> GeneratedCheck:
    """Decide whether S agrees with some metric d via S = d(x,z) + d(y,z).

    Any such d is forced to be d(x, z) = S(x, x, z) / 2, so the check
    reconstructs that candidate and compares it against S on every ordered
    triple of the sample.  Triples with three distinct entries are scanned
    first (in sample order) so the reported witness is an informative one;
    degenerate triples are still checked afterwards.
    """
    tol = to_fraction(tol)
    pts = [space.coerce(p) for p in sample] if sample else list(space.points)
    n = len(pts)
    half: dict[tuple[int, int], Fraction] = {}

    def candidate(i: int, j: int) -> Fraction:
        if (i, j) not in half:
            half[(i, j)] = space.smetric.triple(pts[i], pts[i], pts[j]) / 2
        return half[(i, j)]

    everything = itertools.product(range(n), repeat=3)
    distinct, degenerate = [], []
    for i, j, k in everything:
        (distinct if len({i, j, k}) == 3 else degenerate).append((i, j, k))

    for i, j, k in distinct + degenerate:
        actual = space.smetric.triple(pts[i], pts[j], pts[k])
        expected = candidate(i, k) + candidate(j, k)
        if abs(actual - expected) > tol:
            return GeneratedCheck(
                False, ((pts[i], pts[j], pts[k]), actual, expected), n**3
            )
    return GeneratedCheck(True, None, n**3)


def s_converges(
    space: Space,
    seq: list[object],
    u: object,
    tol: object,
    tail_start: int | None = None,
) -> bool:
    """True when the tail of ``seq`` stays within ``tol`` of ``u``.

    Convergence in S means S(x_n, x_n, u) -> 0; here the whole tail from
    ``tail_start`` (default: halfway) must satisfy S(x_n, x_n, u) <= tol.
    """
    tol = to_fraction(tol)
    pts = [space.coerce(p) for p in seq]
    target = space.coerce(u)
    if tail_start is None:
        tail_start = len(pts) // 2
    return all(
        space.smetric.triple(p, p, target) <= tol for p in pts[tail_start:]
    )


def s_is_cauchy(
    space: Space,
    seq: list[object],
    tol: object,
    tail_start: int | None = None,
) -> bool:
    """True when all tail pairs satisfy S(x_n, x_n, x_m) <= tol."""
    tol = to_fraction(tol)
    pts = [space.coerce(p) for p in seq]
    if tail_start is None:
        tail_start = len(pts) // 2
    tail = pts[tail_start:]
    return all(
        space.smetric.triple(p, p, q) <= tol
        for p, q in itertools.combinations(tail, 2)
    )
