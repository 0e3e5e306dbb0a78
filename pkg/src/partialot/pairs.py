"""Metric pairs (X, A): ambient spaces with a designated boundary subset.

A metric pair couples a metric space X with a closed non-empty subset A.
Measures live on the open complement of A, and mass may be created or
destroyed on A at the price of transporting it there.  This module ships the
concrete catalogue used by the rest of the package:

* :class:`HalfPlanePair`: X = {(a, b) : a <= b} in the plane with A the
  diagonal (the persistence-diagram setting),
* :class:`EuclideanBoxPair`: an axis-aligned box with its topological
  boundary,
* :class:`FinitePair`: an explicit finite metric space with a designated
  index subset, used for exhaustive oracles.

The Euclidean pairs are convex, hence geodesic; the finite pair is not.
Points are plain tuples of floats for the Euclidean pairs and integer
indices for finite pairs.  A point is only meaningful for the pair it was
validated against; mixing pairs raises :class:`InvalidPointError`.

All pair objects are immutable and hashable; they are safe to share between
threads.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidPointError, UnsupportedPairError

Point = "tuple[float, ...] | int"

#: Default tolerance for deciding membership in A.  Interpolated atoms land
#: near A but rarely exactly on it in floating point.
DEFAULT_MEMBERSHIP_TOL = 1e-9

# Slack (relative) admitted when checking that a point lies inside X; covers
# round-off from convex combinations of valid points.
_CONTAINMENT_SLACK = 1e-12

_SQRT2 = math.sqrt(2.0)


class MetricPair:
    """Common interface of the pair catalogue.

    Subclasses provide ``distance``, ``dist_to_A``, ``project_A`` and, when
    ``geodesic_capable``, ``geo_point``.  ``cost_cell``/``boundary_cell``
    return transport costs as exact :class:`~fractions.Fraction` values (the
    float cost converted exactly; genuinely exact arithmetic for p = 2 on
    the Euclidean pairs and integer p on finite pairs).
    """

    kind = "abstract"
    geodesic_capable = False

    def validate_point(self, x) -> Point:
        raise NotImplementedError

    def distance(self, x, y) -> float:
        raise NotImplementedError

    def dist_to_A(self, x) -> float:
        raise NotImplementedError

    def project_A(self, x) -> Point:
        raise NotImplementedError

    def in_A(self, x, tol: float = DEFAULT_MEMBERSHIP_TOL) -> bool:
        """True iff x is within tol of the boundary set A."""
        if tol < 0:
            raise ValueError("membership tolerance must be >= 0")
        return self.dist_to_A(x) <= tol

    def geo_point(self, x, y, t: float) -> Point:
        raise UnsupportedPairError(
            f"pair kind {self.kind!r} does not support geodesic evaluation"
        )

    def cost_cell(self, x, y, p: float) -> Fraction:
        """Transport cost d(x, y)^p as an exact rational."""
        return Fraction(self.distance(x, y) ** p)

    def boundary_cell(self, x, p: float) -> Fraction:
        """Boundary cost d(x, A)^p as an exact rational."""
        return Fraction(self.dist_to_A(x) ** p)

    def describe(self) -> dict:
        raise NotImplementedError


def _as_coords(x, dim: int, pair: MetricPair) -> tuple:
    if isinstance(x, (int, float, Fraction)):
        raise InvalidPointError(
            f"pair kind {pair.kind!r} expects a coordinate sequence, got {x!r}"
        )
    try:
        coords = tuple(float(c) for c in x)
    except (TypeError, ValueError) as exc:
        raise InvalidPointError(f"not a coordinate sequence: {x!r}") from exc
    if len(coords) != dim:
        raise InvalidPointError(
            f"pair kind {pair.kind!r} expects {dim} coordinates, got {len(coords)}"
        )
    if not all(math.isfinite(c) for c in coords):
        raise InvalidPointError(f"non-finite coordinates: {x!r}")
    return coords


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"interpolation parameter must lie in [0, 1], got {t}")
    return t


@dataclass(frozen=True)
class HalfPlanePair(MetricPair):
    """The closed half-plane above the diagonal with A = the diagonal.

    X = {(a, b) in R^2 : a <= b}, A = {(a, a)}.  This is the ambient pair of
    persistence diagrams: the distance to A of a point (a, b) is
    (b - a) / sqrt(2) and its projection is the diagonal midpoint.
    """

    kind = "half_plane"
    geodesic_capable = True

    def validate_point(self, x) -> tuple:
        a, b = _as_coords(x, 2, self)
        if a - b > _CONTAINMENT_SLACK * (1.0 + abs(a) + abs(b)):
            raise InvalidPointError(f"point {x!r} lies below the diagonal")
        return (a, b)

    def distance(self, x, y) -> float:
        return math.dist(self.validate_point(x), self.validate_point(y))

    def dist_to_A(self, x) -> float:
        a, b = self.validate_point(x)
        return max(0.0, b - a) / _SQRT2

    def project_A(self, x) -> tuple:
        a, b = self.validate_point(x)
        mid = 0.5 * (a + b)
        return (mid, mid)

    def geo_point(self, x, y, t: float) -> tuple:
        t = _check_t(t)
        xa, xb = self.validate_point(x)
        ya, yb = self.validate_point(y)
        s = 1.0 - t
        return (s * xa + t * ya, s * xb + t * yb)

    def cost_cell(self, x, y, p: float) -> Fraction:
        if p == 2.0:
            xa, xb = self.validate_point(x)
            ya, yb = self.validate_point(y)
            return (Fraction(xa) - Fraction(ya)) ** 2 + (Fraction(xb) - Fraction(yb)) ** 2
        return Fraction(self.distance(x, y) ** p)

    def boundary_cell(self, x, p: float) -> Fraction:
        if p == 2.0:
            a, b = self.validate_point(x)
            gap = Fraction(b) - Fraction(a)
            if gap < 0:
                gap = Fraction(0)
            return gap * gap / 2
        return Fraction(self.dist_to_A(x) ** p)

    def describe(self) -> dict:
        return {"kind": "half_plane"}


def _canon_box_corner(v) -> tuple:
    return tuple(float(c) for c in v)


@dataclass(frozen=True)
class EuclideanBoxPair(MetricPair):
    """An axis-aligned box [lo, hi] with A its topological boundary.

    The bounded-domain setting: X is the closed box, A = boundary faces,
    Omega the open interior.  The box is convex, so straight segments are
    geodesics and stay in X.
    """

    lo: tuple
    hi: tuple

    kind = "euclidean_box"
    geodesic_capable = True

    def __post_init__(self):
        lo = _canon_box_corner(self.lo)
        hi = _canon_box_corner(self.hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("box corners must be non-empty and of equal length")
        if not all(math.isfinite(c) for c in lo + hi):
            raise ValueError("box corners must be finite")
        if not all(l < h for l, h in zip(lo, hi)):
            raise ValueError("box must satisfy lo < hi in every coordinate")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def validate_point(self, x) -> tuple:
        coords = _as_coords(x, self.dim, self)
        for c, l, h in zip(coords, self.lo, self.hi):
            slack = _CONTAINMENT_SLACK * (1.0 + abs(l) + abs(h))
            if c < l - slack or c > h + slack:
                raise InvalidPointError(f"point {x!r} lies outside the box")
        return coords

    def distance(self, x, y) -> float:
        return math.dist(self.validate_point(x), self.validate_point(y))

    def dist_to_A(self, x) -> float:
        coords = self.validate_point(x)
        best = math.inf
        for c, l, h in zip(coords, self.lo, self.hi):
            best = min(best, c - l, h - c)
        return max(0.0, best)

    def project_A(self, x) -> tuple:
        coords = self.validate_point(x)
        # Among nearest face projections pick the lexicographically smallest
        # projected point, for determinism under exact ties.
        best = None
        for k, (c, l, h) in enumerate(zip(coords, self.lo, self.hi)):
            for face in (l, h):
                cand = coords[:k] + (face,) + coords[k + 1 :]
                key = (abs(c - face), cand)
                if best is None or key < best:
                    best = key
        return best[1]

    def geo_point(self, x, y, t: float) -> tuple:
        t = _check_t(t)
        xs = self.validate_point(x)
        ys = self.validate_point(y)
        s = 1.0 - t
        return tuple(s * a + t * b for a, b in zip(xs, ys))

    def cost_cell(self, x, y, p: float) -> Fraction:
        if p == 2.0:
            xs = self.validate_point(x)
            ys = self.validate_point(y)
            return sum(
                ((Fraction(a) - Fraction(b)) ** 2 for a, b in zip(xs, ys)),
                start=Fraction(0),
            )
        return Fraction(self.distance(x, y) ** p)

    def boundary_cell(self, x, p: float) -> Fraction:
        if p == 2.0:
            coords = self.validate_point(x)
            best = None
            for c, l, h in zip(coords, self.lo, self.hi):
                for d in (Fraction(c) - Fraction(l), Fraction(h) - Fraction(c)):
                    if best is None or d < best:
                        best = d
            if best < 0:
                best = Fraction(0)
            return best * best
        return Fraction(self.dist_to_A(x) ** p)

    def describe(self) -> dict:
        return {"kind": "euclidean_box", "lo": list(self.lo), "hi": list(self.hi)}


@dataclass(frozen=True)
class FinitePair(MetricPair):
    """A finite metric space given by a distance table, with A an index set.

    The table is validated exhaustively at construction: symmetry, zero
    diagonal, positivity off the diagonal and every triangle inequality.
    Finite pairs are not geodesic; geodesic operations reject them.
    """

    table: tuple
    subset: frozenset

    kind = "finite"
    geodesic_capable = False

    def __post_init__(self):
        table = tuple(tuple(float(d) for d in row) for row in self.table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise ValueError("distance table must be square and non-empty")
        for i in range(n):
            if table[i][i] != 0.0:
                raise ValueError(f"diagonal entry ({i},{i}) must be zero")
            for j in range(n):
                d = table[i][j]
                if not math.isfinite(d) or d < 0.0:
                    raise ValueError(f"distance ({i},{j}) must be finite and >= 0")
                if i != j and d == 0.0:
                    raise ValueError(f"distinct points {i},{j} at distance zero")
                if table[j][i] != d:
                    raise ValueError(f"table not symmetric at ({i},{j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if table[i][k] > table[i][j] + table[j][k]:
                        raise ValueError(
                            f"triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})"
                        )
        subset = frozenset(int(a) for a in self.subset)
        if not subset:
            raise ValueError("subset A must be non-empty")
        if not all(0 <= a < n for a in subset):
            raise ValueError("subset A contains out-of-range indices")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "subset", subset)

    @property
    def size(self) -> int:
        return len(self.table)

    def validate_point(self, x) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            raise InvalidPointError(f"finite pair expects an integer index, got {x!r}")
        if not 0 <= x < self.size:
            raise InvalidPointError(f"index {x} out of range for {self.size} points")
        return x

    def distance(self, x, y) -> float:
        return self.table[self.validate_point(x)][self.validate_point(y)]

    def dist_to_A(self, x) -> float:
        i = self.validate_point(x)
        return min(self.table[i][a] for a in self.subset)

    def project_A(self, x) -> int:
        i = self.validate_point(x)
        # Smallest index among nearest boundary points.
        return min(self.subset, key=lambda a: (self.table[i][a], a))

    def cost_cell(self, x, y, p: float) -> Fraction:
        d = self.distance(x, y)
        if float(p).is_integer():
            return Fraction(d) ** int(p)
        return Fraction(d ** p)

    def boundary_cell(self, x, p: float) -> Fraction:
        d = self.dist_to_A(x)
        if float(p).is_integer():
            return Fraction(d) ** int(p)
        return Fraction(d ** p)

    def describe(self) -> dict:
        return {
            "kind": "finite",
            "dist": [list(row) for row in self.table],
            "A": sorted(self.subset),
        }


def pair_from_description(desc: dict) -> MetricPair:
    """Build a pair from its description mapping (see ``describe``)."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError(f"pair description must be a mapping with a 'kind' key: {desc!r}")
    kind = desc["kind"]
    if kind == "half_plane":
        return HalfPlanePair()
    if kind == "euclidean_box":
        try:
            return EuclideanBoxPair(tuple(desc["lo"]), tuple(desc["hi"]))
        except KeyError as exc:
            raise ValueError(f"euclidean_box description missing {exc}") from exc
    if kind == "finite":
        try:
            return FinitePair(tuple(tuple(r) for r in desc["dist"]), frozenset(desc["A"]))
        except KeyError as exc:
            raise ValueError(f"finite description missing {exc}") from exc
    raise ValueError(f"unknown pair kind {kind!r}")
