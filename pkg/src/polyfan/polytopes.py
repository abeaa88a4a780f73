"""Convex polytopes from exact vertex sets.

Facets are enumerated by brute force over n-element vertex subsets
spanning hyperplanes (with an integer fast path for rational input), the
remaining faces by intersection closure of facet vertex sets.  The face
lattice is validated on construction: full dimension, the vertex
criterion for every listed point, and Euler's relation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .linalg import Matrix, Vector
from .scalars import is_rational, sign, to_fraction


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class FaceLattice:
    """All faces of a polytope as vertex bitmasks, graded by dimension.

    Faces are sorted by (dim, mask); ids are positions in that order.  The
    empty face has dim -1 and the polytope itself dim n.  ``facet_planes``
    maps each facet id to an inequality (u, c) with u.x <= c on P and
    equality exactly on the facet.
    """

    ambient_dim: int
    num_vertices: int
    masks: tuple
    dims: tuple
    facet_planes: dict

    def face_ids(self):
        return range(len(self.masks))

    def faces_of_dim(self, k: int) -> tuple:
        return tuple(i for i, d in enumerate(self.dims) if d == k)

    def proper_face_ids(self) -> tuple:
        n = self.ambient_dim
        return tuple(i for i, d in enumerate(self.dims) if 0 <= d < n)

    def facet_ids(self) -> tuple:
        return self.faces_of_dim(self.ambient_dim - 1)

    def vertices_of(self, face_id: int) -> tuple:
        return _mask_bits(self.masks[face_id])

    def contains(self, small_id: int, big_id: int) -> bool:
        small, big = self.masks[small_id], self.masks[big_id]
        return small & big == small

    def f_vector(self) -> tuple:
        counts = [0] * self.ambient_dim
        for d in self.dims:
            if 0 <= d < self.ambient_dim:
                counts[d] += 1
        return tuple(counts)


def _mask_bits(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class Polytope:
    """A full-dimensional polytope given by its exact vertex list."""

    def __init__(self, vertices):
        vs = tuple(tuple(v) for v in vertices)
        if not vs:
            raise PolytopeError("empty vertex list")
        n = len(vs[0])
        if n < 1:
            raise PolytopeError("ambient dimension must be >= 1")
        if any(len(v) != n for v in vs):
            raise PolytopeError("vertices of mixed dimension")
        if len(set(vs)) != len(vs):
            raise PolytopeError("duplicate vertices")
        self.ambient_dim = n
        self.vertices = vs
        self._lattice = None

    def __repr__(self):
        return f"Polytope(dim={self.ambient_dim}, vertices={len(self.vertices)})"

    def face_lattice(self) -> FaceLattice:
        if self._lattice is None:
            self._lattice = _build_face_lattice(self.vertices, self.ambient_dim)
        return self._lattice

    def f_vector(self) -> tuple:
        return self.face_lattice().f_vector()

    def centroid(self) -> Vector:
        m = len(self.vertices)
        return tuple(sum(col, Fraction(0)) / m for col in zip(*self.vertices))

    def translate(self, shift: Vector) -> "Polytope":
        return Polytope(tuple(linalg.vec_add(v, shift) for v in self.vertices))

    def origin_is_interior(self) -> bool:
        lattice = self.face_lattice()
        return all(
            sign(c) > 0 for (_, c) in (lattice.facet_planes[f] for f in lattice.facet_ids())
        )

    def is_centrally_symmetric(self) -> bool:
        vertex_set = set(self.vertices)
        return all(linalg.vec_neg(v) in vertex_set for v in self.vertices)

    def is_cross_polytope(self) -> bool:
        """Whether P is a linear image of conv(+-e_1, ..., +-e_n)."""
        n = self.ambient_dim
        if len(self.vertices) != 2 * n:
            return False
        vertex_set = set(self.vertices)
        representatives = []
        seen = set()
        for v in self.vertices:
            if v in seen:
                continue
            w = linalg.vec_neg(v)
            if w not in vertex_set or w == v:
                return False
            seen.add(v)
            seen.add(w)
            representatives.append(v)
        if len(representatives) != n:
            return False
        return linalg.rank(linalg.mat(representatives)) == n


def dual_polytope(p: Polytope) -> Polytope:
    """The polytope {u : <u, v> <= -1 for all v in P}; needs 0 interior.

    Its vertices solve <u, v> = -1 across one facet of P each, so the face
    lattice of the result is the order-reversed lattice of P.
    """
    lattice = p.face_lattice()
    if not p.origin_is_interior():
        raise PolytopeError("dual polytope needs the origin strictly interior")
    duals = []
    for f in lattice.facet_ids():
        u, c = lattice.facet_planes[f]
        duals.append(tuple(-x / c for x in u))
    return Polytope(duals)


def ensure_origin_interior(p: Polytope):
    """Return (P', shift) with the origin interior to P'.

    P is returned unchanged (shift None) when the origin is already
    interior; otherwise P is translated by minus the vertex centroid,
    which is always interior for a full-dimensional polytope.
    """
    if p.origin_is_interior():
        return p, None
    shift = linalg.vec_neg(p.centroid())
    return p.translate(shift), shift


# ---------------------------------------------------------------------------
# Facet enumeration


def _build_face_lattice(vertices, n: int) -> FaceLattice:
    if len(vertices) < n + 1:
        raise PolytopeError("not full-dimensional")
    if all(all(is_rational(x) for x in v) for v in vertices):
        facets = _facets_rational(vertices, n)
    else:
        facets = _facets_field(vertices, n)
    if not facets:
        raise PolytopeError("not full-dimensional")
    return _lattice_from_facets(vertices, n, facets)


def _facets_rational(vertices, n: int):
    """Integer fast path: scale coordinates to Z and enumerate there."""
    fracs = [[Fraction(to_fraction(x)) for x in v] for v in vertices]
    scale = math.lcm(*(x.denominator for v in fracs for x in v))
    int_rows = [tuple([1] + [int(x * scale) for x in v]) for v in fracs]
    raw = _facets_int_rows(int_rows, n)
    facets = []
    for mask, u, c in raw:
        facets.append((mask, tuple(Fraction(x) for x in u), Fraction(c, scale)))
    return facets


def _facets_int_rows(rows, n: int):
    """All facets of conv(points) from homogeneous integer rows [1 | x].

    Depth-first search over index-increasing, affinely independent point
    subsets of size n; each such subset spans a candidate hyperplane which
    is kept when every point lies weakly on one side.
    """
    m = len(rows)
    width = n + 1
    seen = {}
    facets = []
    echelon = []
    pivots = []

    def reduce_row(row):
        row = list(row)
        for er, pc in zip(echelon, pivots):
            f = row[pc]
            if f:
                p = er[pc]
                for j in range(width):
                    row[j] = row[j] * p - er[j] * f
        for pc, x in enumerate(row):
            if x:
                return row, pc
        return None, -1

    def kernel_vector():
        # Integer back-substitution: v carries the kernel vector times a
        # positive running scale, rescaled whenever a pivot fails to divide.
        pivot_set = set(pivots)
        free = next(j for j in range(width) if j not in pivot_set)
        v = [0] * width
        v[free] = 1
        for idx in range(len(echelon) - 1, -1, -1):
            er = echelon[idx]
            pc = pivots[idx]
            total = 0
            for j in range(width):
                if j != pc and v[j]:
                    total += er[j] * v[j]
            p = er[pc]
            g = math.gcd(total, p)
            factor = p // g
            if factor != 1:
                for j in range(width):
                    if v[j]:
                        v[j] *= factor
            v[pc] = -(total // g)
        g = math.gcd(*v)
        ints = [x // g for x in v]
        if next(x for x in ints if x) < 0:
            ints = [-x for x in ints]
        return tuple(ints)

    def handle_candidate():
        kern = kernel_vector()
        if kern in seen:
            return
        pos = neg = False
        mask = 0
        for i, row in enumerate(rows):
            s = sum(a * b for a, b in zip(kern, row))
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            else:
                mask |= 1 << i
            if pos and neg:
                seen[kern] = None
                return
        c0, u = kern[0], kern[1:]
        if neg:
            facet = (mask, u, -c0)
        else:
            facet = (mask, tuple(-x for x in u), c0)
        seen[kern] = facet
        facets.append(facet)

    def extend(start: int):
        if len(echelon) == n:
            handle_candidate()
            return
        for i in range(start, m - (n - len(echelon)) + 1):
            row, pc = reduce_row(rows[i])
            if row is None:
                continue
            echelon.append(row)
            pivots.append(pc)
            extend(i + 1)
            echelon.pop()
            pivots.pop()

    # Full-dimension check: homogeneous rank must be n + 1.
    probe = []
    probe_pivots = []
    for r in rows:
        reduced = list(r)
        for er, pc in zip(probe, probe_pivots):
            f = reduced[pc]
            if f:
                p = er[pc]
                for j in range(width):
                    reduced[j] = reduced[j] * p - er[j] * f
        for pc, x in enumerate(reduced):
            if x:
                probe.append(reduced)
                probe_pivots.append(pc)
                break
        if len(probe) == width:
            break
    if len(probe) != width:
        raise PolytopeError("not full-dimensional")

    extend(0)
    return facets


def _facets_field(vertices, n: int):
    """Generic exact path for irrational coordinates; same search as the
    integer path but with normalized field pivots."""
    width = n + 1
    rows = [tuple([Fraction(1)] + list(v)) for v in vertices]
    m = len(rows)
    seen = {}
    facets = []
    echelon = []
    pivots = []

    def reduce_row(row):
        row = list(row)
        for er, pc in zip(echelon, pivots):
            f = row[pc]
            if f != 0:
                for j in range(width):
                    if er[j] != 0:
                        row[j] = row[j] - f * er[j]
        for pc in range(width):
            if row[pc] != 0:
                pv = row[pc]
                return [x / pv for x in row], pc
        return None, -1

    def kernel_vector():
        pivot_set = set(pivots)
        free = next(j for j in range(width) if j not in pivot_set)
        v = [Fraction(0)] * width
        v[free] = Fraction(1)
        for er, pc in zip(reversed(echelon), reversed(pivots)):
            total = Fraction(0)
            for j in range(width):
                if j != pc and v[j] != 0:
                    total = total + er[j] * v[j]
            v[pc] = -total
        lead = next(x for x in v if x != 0)
        return tuple(x / lead for x in v)

    def handle_candidate():
        kern = kernel_vector()
        if kern in seen:
            return
        pos = neg = False
        mask = 0
        for i, row in enumerate(rows):
            s = sign(sum((a * b for a, b in zip(kern, row)), Fraction(0)))
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            else:
                mask |= 1 << i
            if pos and neg:
                seen[kern] = None
                return
        c0, u = kern[0], kern[1:]
        if neg:
            facet = (mask, u, -c0)
        else:
            facet = (mask, tuple(-x for x in u), c0)
        seen[kern] = facet
        facets.append(facet)

    def extend(start: int):
        if len(echelon) == n:
            handle_candidate()
            return
        for i in range(start, m - (n - len(echelon)) + 1):
            row, pc = reduce_row(rows[i])
            if row is None:
                continue
            echelon.append(row)
            pivots.append(pc)
            extend(i + 1)
            echelon.pop()
            pivots.pop()

    if linalg.rank(linalg.mat(rows)) != width:
        raise PolytopeError("not full-dimensional")
    extend(0)
    return facets


def _lattice_from_facets(vertices, n: int, facets) -> FaceLattice:
    full_mask = (1 << len(vertices)) - 1
    facet_masks = [mask for mask, _, _ in facets]
    known = set(facet_masks)
    queue = list(facet_masks)
    while queue:
        mask = queue.pop()
        for fm in facet_masks:
            inter = mask & fm
            if inter not in known:
                known.add(inter)
                queue.append(inter)
    known.add(0)
    known.add(full_mask)
    known.discard(full_mask)  # handled separately with dim n

    dims = {0: -1, full_mask: n}
    facet_set = set(facet_masks)
    for mask in known:
        if mask == 0:
            continue
        if mask in facet_set:
            dims[mask] = n - 1
        else:
            pts = [vertices[i] for i in _mask_bits(mask)]
            base = pts[0]
            if len(pts) == 1:
                dims[mask] = 0
            else:
                diffs = [linalg.vec_sub(q, base) for q in pts[1:]]
                dims[mask] = linalg.rank(linalg.mat(diffs))

    ordered = sorted(known | {full_mask}, key=lambda msk: (dims[msk], msk))
    ids = {mask: i for i, mask in enumerate(ordered)}

    planes = {}
    for mask, u, c in facets:
        planes[ids[mask]] = (tuple(u), c)

    lattice = FaceLattice(
        ambient_dim=n,
        num_vertices=len(vertices),
        masks=tuple(ordered),
        dims=tuple(dims[mask] for mask in ordered),
        facet_planes=planes,
    )
    _validate_lattice(vertices, lattice)
    return lattice


def _validate_lattice(vertices, lattice: FaceLattice) -> None:
    n = lattice.ambient_dim
    euler = sum(
        (-1) ** lattice.dims[i]
        for i in lattice.face_ids()
        if 0 <= lattice.dims[i] < n
    )
    if euler != 1 + (-1) ** (n - 1):
        raise PolytopeError(f"face counts violate Euler's relation (sum {euler})")
    vertex_faces = set()
    for i in lattice.faces_of_dim(0):
        (v,) = lattice.vertices_of(i)
        vertex_faces.add(v)
    for i, v in enumerate(vertices):
        normals = [
            lattice.facet_planes[f][0]
            for f in lattice.facet_ids()
            if lattice.masks[f] >> i & 1
        ]
        if i not in vertex_faces or linalg.rank(linalg.mat(normals)) != n:
            raise PolytopeError(f"listed point #{i} {v} is not a vertex")


# ---------------------------------------------------------------------------
# Generators


def simplex(n: int) -> Polytope:
    """An n-simplex with the origin at the vertex centroid (interior)."""
    if n < 1:
        raise PolytopeError("dimension must be >= 1")
    vs = [linalg.unit(n, i) for i in range(n)]
    vs.append((Fraction(-1),) * n)
    return Polytope(vs)


def cube(n: int) -> Polytope:
    if n < 1:
        raise PolytopeError("dimension must be >= 1")
    vs = []
    for bits in range(1 << n):
        vs.append(tuple(Fraction(1 if bits >> i & 1 else -1) for i in range(n)))
    return Polytope(vs)


def cross_polytope(n: int) -> Polytope:
    if n < 1:
        raise PolytopeError("dimension must be >= 1")
    vs = []
    for i in range(n):
        vs.append(linalg.unit(n, i))
        vs.append(linalg.vec_neg(linalg.unit(n, i)))
    return Polytope(vs)


def product(p: Polytope, q: Polytope) -> Polytope:
    return Polytope(tuple(v + w for v in p.vertices for w in q.vertices))


def free_sum(p: Polytope, q: Polytope) -> Polytope:
    """conv(P x 0 union 0 x Q); both summands need the origin interior."""
    if not (p.origin_is_interior() and q.origin_is_interior()):
        raise PolytopeError("free sum needs the origin interior to both summands")
    a, b = p.ambient_dim, q.ambient_dim
    vs = [v + linalg.zeros(b) for v in p.vertices]
    vs += [linalg.zeros(a) + w for w in q.vertices]
    return Polytope(vs)


def linear_image(p: Polytope, matrix: Matrix) -> Polytope:
    """Image of P under an invertible linear map (rows act on coordinates)."""
    if linalg.rank(matrix) != p.ambient_dim:
        raise PolytopeError("linear image requires an invertible matrix")
    return Polytope(tuple(linalg.mat_vec(matrix, v) for v in p.vertices))


def hull_vertices(points) -> tuple:
    """Extreme points of conv(points), via facet enumeration of the hull."""
    pts = []
    seen = set()
    for p in points:
        t = tuple(p)
        if t not in seen:
            seen.add(t)
            pts.append(t)
    n = len(pts[0])
    if all(all(is_rational(x) for x in v) for v in pts):
        facets = _facets_rational(pts, n)
    else:
        facets = _facets_field(pts, n)
    out = []
    for i, p in enumerate(pts):
        normals = [u for mask, u, _ in facets if mask >> i & 1]
        if normals and linalg.rank(linalg.mat(normals)) == n:
            out.append(p)
    return tuple(out)


def random_cs(n: int, pairs: int, seed: int) -> Polytope:
    """A random centrally symmetric polytope conv(+-p_1, ..., +-p_k).

    Deterministic per (n, pairs, seed); non-extreme points are dropped.
    Raises if the result is degenerate (lower-dimensional or too few
    vertices).
    """
    if pairs < n:
        raise PolytopeError("need at least n point pairs")
    rng = random.Random(f"cs/{n}/{pairs}/{seed}")
    points = []
    for _ in range(pairs):
        p = (Fraction(0),) * n
        while all(x == 0 for x in p):
            p = tuple(Fraction(rng.randint(-4, 4)) for _ in range(n))
        points.append(p)
        points.append(linalg.vec_neg(p))
    if linalg.rank(linalg.mat(points)) != n:
        raise PolytopeError("degenerate: points span a proper subspace")
    verts = hull_vertices(points)
    if len(verts) < n + 1:
        raise PolytopeError("degenerate: too few extreme points")
    return Polytope(sorted(verts))
