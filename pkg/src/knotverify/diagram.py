"""Oriented knot diagrams from intersection data, and the Alexander
polynomial computed from them.

A diagram is a Gauss code: the sequence of over/under crossing visits along
the curve by increasing parameter, with a handedness sign per crossing.  The
invariant comes from the arc-based (Wirtinger/Fox-calculus) crossing matrix:
arcs are the maximal runs between consecutive under-passes, each crossing
contributes one row with entries

    over arc: 1 - t,   incoming under arc: t,   outgoing under arc: -1

for a positive crossing (t and -1 swap roles, scaled by a unit, for a
negative one).  Any (k-1)-minor determinant of the k x k matrix is the
Alexander polynomial up to a unit +-t^m; normalization fixes the unit.
All polynomial arithmetic is exact over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .curve_kernel import BezierCurve, Point2
from .errors import DegenerateDiagramError, SingularFrameError, TangentialCrossingError
from .intersections import IntersectionPair

__all__ = [
    "LaurentPolynomial",
    "PolyMatrix",
    "Crossing",
    "KnotDiagram",
    "Verdict",
    "build_diagram",
    "alexander_polynomial",
    "poly_matrix_determinant",
    "normalize_alexander",
    "is_trivial_verdict",
]


class LaurentPolynomial:
    """Integer-coefficient polynomial in t allowing negative exponents.

    Immutable; the zero polynomial stores no terms.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        clean = {int(e): int(c) for e, c in (coeffs or {}).items() if c != 0}
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, *_):
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def t(cls) -> "LaurentPolynomial":
        return cls({1: 1})

    @classmethod
    def term(cls, coeff: int, exp: int = 0) -> "LaurentPolynomial":
        return cls({exp: coeff})

    @classmethod
    def from_coeffs(cls, coeffs, base_exp: int = 0) -> "LaurentPolynomial":
        """Ascending coefficient list starting at exponent `base_exp`."""
        return cls({base_exp + i: c for i, c in enumerate(coeffs)})

    # -- queries ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def min_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return min(self._coeffs)

    def max_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    def coeff_list(self) -> tuple[list[int], int]:
        """(ascending coefficients, base exponent); ([], 0) for zero."""
        if self.is_zero:
            return [], 0
        lo, hi = self.min_exp(), self.max_exp()
        return [self._coeffs.get(e, 0) for e in range(lo, hi + 1)], lo

    def evaluate(self, x):
        return sum(c * x**e for e, c in self._coeffs.items())

    def substitute_inverse(self) -> "LaurentPolynomial":
        """p(1/t)."""
        return LaurentPolynomial({-e: c for e, c in self._coeffs.items()})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                k = e1 + e2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPolynomial(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPolynomial) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._coeffs.items())))

    # -- rendering ---------------------------------------------------------
    def coeff_string(self) -> str:
        """Space-separated ascending coefficients, e.g. '1 -3 1'."""
        coeffs, _ = self.coeff_list()
        return " ".join(str(c) for c in coeffs) if coeffs else "0"

    def to_json_obj(self) -> dict:
        coeffs, base = self.coeff_list()
        return {"base_exp": base, "coeffs": coeffs}

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self._coeffs!r})"


@dataclass(frozen=True)
class PolyMatrix:
    """Rectangular grid of Laurent polynomials."""

    entries: tuple[tuple[LaurentPolynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_ints(cls, grid) -> "PolyMatrix":
        """Build from entries that are ints or (coeff, exp) Laurent terms."""
        rows = []
        for row in grid:
            out = []
            for e in row:
                out.append(e if isinstance(e, LaurentPolynomial) else LaurentPolynomial.term(int(e)))
            rows.append(tuple(out))
        return cls(tuple(rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def drop_columns(self, *cols: int) -> "PolyMatrix":
        keep = [j for j in range(self.cols) if j not in cols]
        return PolyMatrix(tuple(tuple(row[j] for j in keep) for row in self.entries))


def poly_matrix_determinant(m: PolyMatrix) -> LaurentPolynomial:
    """Exact determinant by first-row cofactor expansion, memoized on the
    surviving column set (fine for the desk-scale sizes used here)."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    entries = m.entries
    if m.rows == 0:
        return LaurentPolynomial.one()

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple[int, ...]) -> LaurentPolynomial:
        if len(cols) == 1:
            return entries[row][cols[0]]
        total = LaurentPolynomial.zero()
        for pos, j in enumerate(cols):
            a = entries[row][j]
            if a.is_zero:
                continue
            rest = cols[:pos] + cols[pos + 1 :]
            term = a * minor(row + 1, rest)
            total = total + (term if pos % 2 == 0 else -term)
        return total

    return minor(0, tuple(range(m.cols)))


def normalize_alexander(p: LaurentPolynomial) -> LaurentPolynomial:
    """Multiply by the unit +-t^k that puts the lowest term at exponent 0
    with a positive coefficient; equal invariants normalize identically."""
    if p.is_zero:
        raise DegenerateDiagramError("zero polynomial cannot be normalized")
    coeffs, _ = p.coeff_list()
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return LaurentPolynomial.from_coeffs(coeffs)


class Verdict:
    UNKNOT = "Unknot"
    NONTRIVIAL_KNOT = "NontrivialKnot"
    INCONCLUSIVE = "Inconclusive"


def is_trivial_verdict(p: LaurentPolynomial, crossing_count: int) -> str:
    """Triviality verdict for a normalized Alexander polynomial.

    A trivial polynomial certifies the unknot only for diagrams with at most
    4 crossings (the sole nontrivial knots with such diagrams, 3_1 and 4_1,
    both have nontrivial polynomials); beyond that the answer is honestly
    inconclusive.
    """
    if p != LaurentPolynomial.one():
        return Verdict.NONTRIVIAL_KNOT
    if crossing_count <= 4:
        return Verdict.UNKNOT
    return Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class Crossing:
    """A transversal crossing of the projected curve.

    The strand visited at t_first passes over iff its z exceeds the other
    strand's; the sign is the orientation of (over tangent, under tangent).
    """

    t_first: float
    t_second: float
    point2d: Point2
    z_first: float
    z_second: float
    over_is_first: bool
    sign: int

    def __post_init__(self):
        if not self.t_first < self.t_second:
            raise DegenerateDiagramError("crossing requires t_first < t_second")
        if self.over_is_first != (self.z_first > self.z_second):
            raise DegenerateDiagramError("over/under flag contradicts z data")
        if self.sign not in (-1, 1):
            raise DegenerateDiagramError(f"crossing sign must be +-1, got {self.sign}")


@dataclass(frozen=True)
class KnotDiagram:
    """Crossings plus the Gauss code visiting them by increasing parameter.

    gauss_code entries are (crossing_id, is_over, sign) with ids 1..k
    assigned in order of first visit.
    """

    crossings: tuple[Crossing, ...]
    gauss_code: tuple[tuple[int, bool, int], ...]
    orientation: str = "increasing parameter"

    def __post_init__(self):
        ids = [cid for cid, _, _ in self.gauss_code]
        k = len(self.crossings)
        if len(self.gauss_code) != 2 * k:
            raise DegenerateDiagramError("gauss code length must be twice the crossing count")
        for cid in range(1, k + 1):
            visits = [(o, s) for c, o, s in self.gauss_code if c == cid]
            if len(visits) != 2 or visits[0][0] == visits[1][0]:
                raise DegenerateDiagramError(
                    f"crossing {cid} must appear exactly twice, once over and once under"
                )
            if visits[0][1] != visits[1][1]:
                raise DegenerateDiagramError(f"crossing {cid} has inconsistent signs")
        if sorted(set(ids)) != list(range(1, k + 1)):
            raise DegenerateDiagramError("crossing ids must be 1..k")

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @classmethod
    def from_code(cls, code) -> "KnotDiagram":
        """Diagram from a bare Gauss code [(crossing_id, is_over, sign), ...].

        Synthesizes placeholder geometry (visit positions as parameters,
        z = +-1 by over/under); useful for table knots and generated codes
        where only the combinatorics matter.
        """
        code = tuple((int(c), bool(o), int(s)) for c, o, s in code)
        visits: dict[int, list[int]] = {}
        for pos, (cid, _, _) in enumerate(code):
            visits.setdefault(cid, []).append(pos)
        crossings = []
        span = max(1, len(code))
        for cid in sorted(visits):
            pos = visits[cid]
            if len(pos) != 2:
                raise DegenerateDiagramError(f"crossing {cid} must appear exactly twice")
            p1, p2 = pos
            over_first = code[p1][1]
            crossings.append(
                Crossing(
                    t_first=p1 / span,
                    t_second=p2 / span,
                    point2d=Point2(0.0, 0.0),
                    z_first=1.0 if over_first else -1.0,
                    z_second=-1.0 if over_first else 1.0,
                    over_is_first=over_first,
                    sign=code[p1][2],
                )
            )
        # ids in a bare code may be arbitrary labels; renumber to 1..k by
        # first appearance order of the sorted labels
        relabel = {cid: i + 1 for i, cid in enumerate(sorted(visits))}
        code = tuple((relabel[c], o, s) for c, o, s in code)
        return cls(crossings=tuple(crossings), gauss_code=code)

    def gauss_string(self) -> str:
        """Signed visit sequence, then one +/- per crossing in id order.

        Positive entries are over-passes, negative are under-passes,
        e.g. '1 -2 3 -1 4 -3 2 -4 | - + - +'.
        """
        if not self.gauss_code:
            return "|"
        visits = " ".join(str(cid if over else -cid) for cid, over, _ in self.gauss_code)
        signs = {cid: s for cid, _, s in self.gauss_code}
        tail = " ".join("+" if signs[cid] > 0 else "-" for cid in sorted(signs))
        return f"{visits} | {tail}"


def _tangent_2d(curve: BezierCurve, t: float, step: float) -> np.ndarray:
    lo = max(0.0, t - step)
    hi = min(1.0, t + step)
    d = (curve.point_at_2d(hi) - curve.point_at_2d(lo)) / (hi - lo)
    return d


def build_diagram(
    curve: BezierCurve,
    pairs: list[IntersectionPair],
    z_separation: float = 1e-2,
    tangent_step: float = 1e-5,
) -> KnotDiagram:
    """Classify intersection pairs into an oriented diagram.

    Over/under comes from comparing the z coordinates of the two 3D
    evaluations; a gap below `z_separation` means the frame cannot decide
    the crossing and raises SingularFrameError.  Signs come from
    central-difference tangents of the projection; near-parallel tangents
    raise TangentialCrossingError.
    """
    ordered = sorted(pairs, key=lambda p: (p.t1, p.t2))
    crossings = []
    events = []
    for idx, pair in enumerate(ordered, start=1):
        z1, z2 = pair.p3d_1.z, pair.p3d_2.z
        gap = abs(z1 - z2)
        if gap <= z_separation:
            raise SingularFrameError(
                f"crossing at ({pair.t1:.4f}, {pair.t2:.4f}) has z gap {gap:.3e} "
                f"<= separation threshold {z_separation:.3e}"
            )
        over_is_first = z1 > z2
        d1 = _tangent_2d(curve, pair.t1, tangent_step)
        d2 = _tangent_2d(curve, pair.t2, tangent_step)
        t_over, t_under = (d1, d2) if over_is_first else (d2, d1)
        cross = float(t_over[0] * t_under[1] - t_over[1] * t_under[0])
        norm = float(np.linalg.norm(t_over) * np.linalg.norm(t_under))
        if norm == 0.0 or abs(cross) / norm < 1e-8:
            raise TangentialCrossingError(
                f"tangents nearly parallel at ({pair.t1:.4f}, {pair.t2:.4f})"
            )
        sign = 1 if cross > 0 else -1
        crossings.append(
            Crossing(
                t_first=pair.t1,
                t_second=pair.t2,
                point2d=pair.point2d,
                z_first=z1,
                z_second=z2,
                over_is_first=over_is_first,
                sign=sign,
            )
        )
        events.append((pair.t1, idx, over_is_first, sign))
        events.append((pair.t2, idx, not over_is_first, sign))

    events.sort()
    code = tuple((cid, over, sign) for _, cid, over, sign in events)
    return KnotDiagram(crossings=tuple(crossings), gauss_code=code)


def _wirtinger_matrix(diagram: KnotDiagram) -> PolyMatrix:
    """One row per crossing, one column per arc (k x k)."""
    code = diagram.gauss_code
    k = diagram.crossing_count
    under_positions = [i for i, (_, over, _) in enumerate(code) if not over]
    # arc index for each code position: position p lies on the arc that ends
    # at the next under-pass at or after p (wrapping to arc 0 past the last)
    arc_of_pos = {}
    for p in range(len(code)):
        nxt = next((i for i, u in enumerate(under_positions) if u >= p), 0)
        arc_of_pos[p] = nxt

    over_arc: dict[int, int] = {}
    under_in: dict[int, int] = {}
    under_out: dict[int, int] = {}
    sign_of: dict[int, int] = {}
    for p, (cid, over, sign) in enumerate(code):
        sign_of[cid] = sign
        if over:
            over_arc[cid] = arc_of_pos[p]
        else:
            under_in[cid] = arc_of_pos[p]
            under_out[cid] = (arc_of_pos[p] + 1) % k

    one = LaurentPolynomial.one()
    t = LaurentPolynomial.t()
    one_minus_t = one - t
    rows = []
    for cid in range(1, k + 1):
        row = [LaurentPolynomial.zero()] * k
        o, i, j = over_arc[cid], under_in[cid], under_out[cid]
        row[o] = row[o] + one_minus_t
        if sign_of[cid] > 0:
            row[i] = row[i] + t
            row[j] = row[j] - one
        else:
            row[i] = row[i] - one
            row[j] = row[j] + t
        rows.append(tuple(row))
    return PolyMatrix(tuple(rows))


def alexander_polynomial(diagram: KnotDiagram) -> LaurentPolynomial:
    """Normalized Alexander polynomial of the diagram (1 for no crossings).

    Deletes one row and one column of the crossing/arc matrix (the Wirtinger
    presentation carries one redundant relation; every such minor agrees up
    to a unit) and takes the exact determinant.  The deleted row and column
    are chosen by traversal order, not by label -- the row of the first
    under-passed crossing and the column of the arc ending there -- so
    relabeling crossings cannot change the result.
    """
    if diagram.crossing_count == 0:
        return LaurentPolynomial.one()
    m = _wirtinger_matrix(diagram)
    first_under_cid = next(cid for cid, over, _ in diagram.gauss_code if not over)
    drop_row = first_under_cid - 1
    rows = [row[1:] for i, row in enumerate(m.entries) if i != drop_row]
    det = poly_matrix_determinant(PolyMatrix(tuple(rows)))
    if det.is_zero:
        raise DegenerateDiagramError("diagram matrix minor has zero determinant")
    return normalize_alexander(det)
