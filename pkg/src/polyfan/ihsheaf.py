"""Combinatorial intersection cohomology via minimal extension sheaves.

For a fan the sheaf is built cone by cone over the skeleton: sections
over a boundary fan are the equalizer of the facet restriction maps,
their quotient modulo the degree-two maximal ideal picks the generator
degrees of the next free module, and chosen homogeneous lifts define the
new restriction maps.  On centrally symmetric fans one cone per
antipodal pair is constructed and the other is transported through the
point reflection, so the reflection acts on everything in sight.

All objects are truncated at an even degree cap; linear forms sit in
degree 2, so degree q holds polynomials of ordinary degree q/2.  Every
basis extraction is verified exactly; a failure raises instead of
silently producing wrong dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .fans import ConewiseLinear, Fan, FanError
from .hvector import h_polynomial
from .polynomials import (
    IntPoly,
    RefinedSeries,
    binomial_poly,
    padd,
    pmul,
    psub,
    substitute_t_squared,
    trim,
    truncate_at,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DegreeCapError(RuntimeError):
    """The degree cap is too small to certify the graded bookkeeping."""


class SheafError(RuntimeError):
    """An exact internal consistency check failed."""


# ---------------------------------------------------------------------------
# Monomial calculus


@lru_cache(maxsize=None)
def monomials(nvars: int, deg: int) -> tuple:
    """Exponent tuples of total degree ``deg`` in ``nvars`` variables,
    in a fixed (lexicographically descending) order."""
    if deg < 0:
        return ()
    if nvars == 0:
        return ((),) if deg == 0 else ()
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), deg, nvars)
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_index(nvars: int, deg: int) -> dict:
    return {m: i for i, m in enumerate(monomials(nvars, deg))}


def mul_matrix(poly_coeffs: tuple, poly_deg: int, src_deg: int, nvars: int):
    """Matrix of multiplication by a fixed homogeneous polynomial, from
    degree ``src_deg`` to ``src_deg + poly_deg`` (ordinary degrees)."""
    src = monomials(nvars, src_deg)
    tgt_index = _monomial_index(nvars, src_deg + poly_deg)
    pmono = monomials(nvars, poly_deg)
    rows = [[_ZERO] * len(src) for _ in tgt_index]
    for col, alpha in enumerate(src):
        for coeff, gamma in zip(poly_coeffs, pmono):
            if coeff == 0:
                continue
            target = tuple(a + g for a, g in zip(alpha, gamma))
            rows[tgt_index[target]][col] = rows[tgt_index[target]][col] + coeff
    return tuple(tuple(r) for r in rows)


def subst_matrix(forms: tuple, src_deg: int, tgt_nvars: int):
    """Matrix of the ring map sending source variable i to the linear form
    ``forms[i]`` (a covector in the target variables), in degree
    ``src_deg``."""
    src = monomials(len(forms), src_deg)
    tgt_index = _monomial_index(tgt_nvars, src_deg)
    rows = [[_ZERO] * len(src) for _ in tgt_index]
    unit = ((0,) * tgt_nvars, _ONE)
    for col, alpha in enumerate(src):
        expansion = {unit[0]: unit[1]}
        for i, e in enumerate(alpha):
            for _ in range(e):
                new: dict = {}
                for mono, c in expansion.items():
                    for j, fj in enumerate(forms[i]):
                        if fj == 0:
                            continue
                        key = mono[:j] + (mono[j] + 1,) + mono[j + 1 :]
                        new[key] = new.get(key, _ZERO) + c * fj
                expansion = new
        for mono, c in expansion.items():
            if c != 0:
                rows[tgt_index[mono]][col] = c
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# The sheaf


@dataclass
class ConeModule:
    """Free module data of one cone: generator degrees and, per proper
    face, the image of each generator as a coordinate vector there."""

    cone_id: int
    gen_degrees: tuple
    images: dict  # face_id -> tuple(per generator coefficient vector)


class MinimalExtensionSheaf:
    """Minimal extension sheaf of a fan, truncated at ``cap``."""

    def __init__(self, fan: Fan, cap: int):
        self.fan = fan
        self.cap = cap
        self.modules: dict = {}
        self.antipode: dict | None = None
        self._layout: dict = {}
        self._restr: dict = {}
        self._sections: dict = {}
        self._span_forms: dict = {}
        self._global: dict = {}

    # -- coordinates ------------------------------------------------------

    def nvars(self, cone_id: int) -> int:
        return self.fan.cones[cone_id].dim

    def gen_blocks(self, cone_id: int, q: int):
        """Coordinate layout of E_cone^q: (gen index, gen degree, offset,
        monomial count) per generator, plus the total dimension."""
        key = (cone_id, q)
        cached = self._layout.get(key)
        if cached is None:
            blocks = []
            offset = 0
            nv = self.nvars(cone_id)
            for i, d in enumerate(self.modules[cone_id].gen_degrees):
                if d <= q:
                    count = len(monomials(nv, (q - d) // 2))
                    blocks.append((i, d, offset, count))
                    offset += count
            cached = (tuple(blocks), offset)
            self._layout[key] = cached
        return cached

    def module_dim(self, cone_id: int, q: int) -> int:
        return self.gen_blocks(cone_id, q)[1]

    def span_substitution_forms(self, src_id: int, tgt_id: int) -> tuple:
        """Per source variable, the linear form it restricts to in the
        target cone's coordinates (target must span a subspace of the
        source's span)."""
        key = (src_id, tgt_id)
        cached = self._span_forms.get(key)
        if cached is None:
            _, src_pivots = self.fan.cone_basis(src_id)
            tgt_basis, _ = self.fan.cone_basis(tgt_id)
            cached = tuple(
                tuple(row[j] for row in tgt_basis) for j in src_pivots
            )
            self._span_forms[key] = cached
        return cached

    def ambient_forms(self, cone_id: int) -> tuple:
        """Restrictions of the ambient coordinate functions to the cone's
        span, as covectors in its adapted coordinates."""
        basis, _ = self.fan.cone_basis(cone_id)
        return tuple(
            tuple(row[j] for row in basis) for j in range(self.fan.ambient_dim)
        )

    # -- restriction matrices ----------------------------------------------

    def restriction_matrix(self, src_id: int, tgt_id: int, q: int):
        """Degree-q matrix of the restriction E_src^q -> E_tgt^q."""
        key = (src_id, tgt_id, q)
        cached = self._restr.get(key)
        if cached is not None:
            return cached
        src_blocks, src_dim = self.gen_blocks(src_id, q)
        tgt_blocks, tgt_dim = self.gen_blocks(tgt_id, q)
        rows = [[_ZERO] * src_dim for _ in range(tgt_dim)]
        if tgt_dim and src_dim:
            forms = self.span_substitution_forms(src_id, tgt_id)
            tgt_nv = self.nvars(tgt_id)
            images = self.modules[src_id].images[tgt_id]
            for gi, d_i, src_off, src_cnt in src_blocks:
                sub = subst_matrix(forms, (q - d_i) // 2, tgt_nv)
                image_vec = images[gi]
                img_blocks, _ = self.gen_blocks(tgt_id, d_i)
                for gj, d_j, img_off, img_cnt in img_blocks:
                    piece = image_vec[img_off : img_off + img_cnt]
                    if all(c == 0 for c in piece):
                        continue
                    mm = mul_matrix(piece, (d_i - d_j) // 2, (q - d_i) // 2, tgt_nv)
                    block = linalg.mat_mul(mm, sub)
                    tgt_off = next(
                        off for (g, _, off, _) in tgt_blocks if g == gj
                    )
                    for r, row in enumerate(block):
                        out = rows[tgt_off + r]
                        for c, val in enumerate(row):
                            if val != 0:
                                out[src_off + c] = out[src_off + c] + val
        cached = tuple(tuple(r) for r in rows)
        self._restr[key] = cached
        return cached

    # -- section spaces -----------------------------------------------------

    def section_layout(self, max_ids: tuple, q: int):
        offsets = []
        total = 0
        for cid in max_ids:
            offsets.append(total)
            total += self.module_dim(cid, q)
        return tuple(offsets), total

    def section_space(self, max_ids: tuple, q: int, wall_mode: bool = False):
        """Basis of compatible tuples over the given maximal cones.

        In wall mode only codimension-one contacts are imposed; that is
        complete for global sections of a complete fan and for boundary
        fans, where every wall separates exactly two maximal cones and
        the wall-crossing graph of any star is connected.  Otherwise all
        pairwise contacts are imposed.
        """
        key = (max_ids, q, wall_mode)
        cached = self._sections.get(key)
        if cached is not None:
            return cached
        fan = self.fan
        offsets, total = self.section_layout(max_ids, q)
        offset_of = dict(zip(max_ids, offsets))
        pairs = []
        if wall_mode:
            top = max(fan.cones[cid].dim for cid in max_ids) if max_ids else 0
            walls: dict = {}
            for cid in max_ids:
                if fan.cones[cid].dim != top:
                    raise SheafError("wall mode needs equidimensional cones")
                for f in fan.faces[cid]:
                    if fan.cones[f].dim == top - 1:
                        walls.setdefault(f, []).append(cid)
            for f, incident in sorted(walls.items()):
                if len(incident) == 2:
                    pairs.append((incident[0], incident[1], f))
                elif len(incident) > 2:
                    raise SheafError("wall shared by more than two cones")
        else:
            for i, a in enumerate(max_ids):
                for b in max_ids[i + 1 :]:
                    pairs.append((a, b, fan.common_face(a, b)))
        rows = []
        for a, b, f in pairs:
            if self.module_dim(f, q) == 0:
                continue
            ra = self.restriction_matrix(a, f, q)
            rb = self.restriction_matrix(b, f, q)
            for row_a, row_b in zip(ra, rb):
                row = [_ZERO] * total
                oa, ob = offset_of[a], offset_of[b]
                for c, val in enumerate(row_a):
                    row[oa + c] = val
                for c, val in enumerate(row_b):
                    row[ob + c] = row[ob + c] - val
                rows.append(row)
        if rows:
            basis, free_cols = _kernel_with_free(rows, total)
        else:
            basis = tuple(linalg.unit(total, i) for i in range(total))
            free_cols = tuple(range(total))
        cached = (basis, free_cols)
        self._sections[key] = cached
        return cached

    # -- global data ---------------------------------------------------------

    def global_cone_ids(self) -> tuple:
        return self.fan.maximal_ids

    def global_data(self, q: int) -> dict:
        """Global sections at degree q together with the reduction modulo
        the ambient maximal ideal: a basis, the subspace m*E in basis
        coordinates (as reduced rows), and complement indices whose basis
        vectors represent the quotient."""
        cached = self._global.get(q)
        if cached is not None:
            return cached
        max_ids = self.global_cone_ids()
        basis, free_cols = self.section_space(max_ids, q, wall_mode=True)
        dim = len(basis)
        if q >= 2:
            prev = self.global_data(q - 2)
            products = []
            for vec in prev["basis"]:
                for j in range(self.fan.ambient_dim):
                    products.append(self.multiply_by_ambient(max_ids, q - 2, vec, j))
            coords = [self.to_basis_coords(max_ids, q, basis, free_cols, p) for p in products]
            reduced_rows = [list(r) for r in coords]
            pivots = linalg._rref_inplace(reduced_rows)
            m_rows = tuple(tuple(r) for r in reduced_rows[: len(pivots)])
        else:
            pivots = ()
            m_rows = ()
        complement = tuple(i for i in range(dim) if i not in set(pivots))
        cached = {
            "basis": basis,
            "free_cols": free_cols,
            "m_rows": m_rows,
            "m_pivots": pivots,
            "complement": complement,
        }
        self._global[q] = cached
        return cached

    def multiply_by_ambient(self, max_ids: tuple, q: int, vec, j: int):
        """Multiply a degree-q section by the ambient coordinate x_j."""
        forms = {cid: self.ambient_forms(cid)[j] for cid in max_ids}
        return self._multiply_conewise(max_ids, q, vec, forms)

    def multiply_by_conewise_linear(self, max_ids: tuple, q: int, vec, cl: ConewiseLinear):
        """Multiply a degree-q section by a conewise linear function."""
        forms = {}
        for cid in max_ids:
            basis, _ = self.fan.cone_basis(cid)
            cov = cl.covectors[cid]
            forms[cid] = tuple(linalg.vec_dot(row, cov) for row in basis)
        return self._multiply_conewise(max_ids, q, vec, forms)

    def _multiply_conewise(self, max_ids: tuple, q: int, vec, forms: dict):
        offsets, _ = self.section_layout(max_ids, q)
        out_offsets, out_total = self.section_layout(max_ids, q + 2)
        out = [_ZERO] * out_total
        for cid, off, out_off in zip(max_ids, offsets, out_offsets):
            nv = self.nvars(cid)
            blocks, _ = self.gen_blocks(cid, q)
            out_blocks, _ = self.gen_blocks(cid, q + 2)
            out_index = {g: o for (g, _, o, _) in out_blocks}
            form = forms[cid]
            for gi, d_i, boff, bcnt in blocks:
                piece = vec[off + boff : off + boff + bcnt]
                if all(c == 0 for c in piece):
                    continue
                mm = mul_matrix(form, 1, (q - d_i) // 2, nv)
                target = out_off + out_index[gi]
                for r, row in enumerate(mm):
                    total = _ZERO
                    for c, val in enumerate(row):
                        if val != 0:
                            total = total + val * piece[c]
                    if total != 0:
                        out[target + r] = out[target + r] + total
        return tuple(out)

    def to_basis_coords(self, max_ids, q, basis, free_cols, vec):
        """Coordinates of a vector in the section basis, verified exactly."""
        coords = tuple(vec[c] for c in free_cols)
        residual = list(vec)
        for coeff, bvec in zip(coords, basis):
            if coeff != 0:
                for i, b in enumerate(bvec):
                    if b != 0:
                        residual[i] = residual[i] - coeff * b
        if any(x != 0 for x in residual):
            raise SheafError(
                "vector is not a section (failed exact membership check)"
            )
        return coords

    def reduce_mod_m(self, q: int, coords):
        """Reduce basis coordinates modulo m*E; returns coordinates on the
        complement representing the class in the quotient."""
        data = self.global_data(q)
        res = list(coords)
        for row, p in zip(data["m_rows"], data["m_pivots"]):
            f = res[p]
            if f != 0:
                for i, val in enumerate(row):
                    if val != 0:
                        res[i] = res[i] - f * val
        for p in data["m_pivots"]:
            if res[p] != 0:
                raise SheafError("reduction modulo m failed to clear pivots")
        return tuple(res[i] for i in data["complement"])


def _kernel_with_free(rows: list, total: int):
    pivots = linalg._rref_inplace(rows)
    pivot_set = set(pivots)
    reduced = rows[: len(pivots)]
    basis = []
    free_cols = tuple(f for f in range(total) if f not in pivot_set)
    for f in free_cols:
        v = [_ZERO] * total
        v[f] = _ONE
        for i, p in enumerate(pivots):
            if reduced[i][f] != 0:
                v[p] = -reduced[i][f]
        basis.append(tuple(v))
    return tuple(basis), free_cols


# ---------------------------------------------------------------------------
# Construction


def build_mes(fan: Fan, cap: int | None = None) -> MinimalExtensionSheaf:
    """Build the minimal extension sheaf of a fan up to an even degree cap
    (default 2*(dim+1)).

    Cones are processed by increasing dimension with deterministic lift
    choices; on a centrally symmetric fan one cone per antipodal pair is
    built and the partner transported through the point reflection.
    """
    if cap is None:
        cap = 2 * (fan.dim + 1)
    if cap % 2 != 0:
        raise DegreeCapError("degree cap must be even")
    if cap < 2 * fan.dim:
        raise DegreeCapError(
            f"degree cap {cap} cannot certify a fan of dimension {fan.dim}"
        )
    mes = MinimalExtensionSheaf(fan, cap)
    if fan.is_centrally_symmetric():
        mes.antipode = fan.antipode_map()
    order = sorted(
        fan.cone_ids(), key=lambda cid: (fan.cones[cid].dim, cid)
    )
    for cid in order:
        if cid in mes.modules:
            continue
        if fan.cones[cid].dim == 0:
            mes.modules[cid] = ConeModule(cid, (0,), {})
            continue
        partner = mes.antipode.get(cid) if mes.antipode else None
        if partner is not None and partner != cid and partner in mes.modules:
            mes.modules[cid] = _transport_module(mes, partner, cid)
            continue
        mes.modules[cid] = _construct_module(mes, cid)
    return mes


def _boundary_quotient_data(mes: MinimalExtensionSheaf, sid: int, q: int):
    """Boundary sections of a cone at degree q and the coordinates of the
    maximal-ideal subspace inside them."""
    fan = mes.fan
    facets = fan.facets_of(sid)
    k = fan.cones[sid].dim
    basis, free_cols = mes.section_space(facets, q, wall_mode=True)
    if q < 2:
        return basis, free_cols, []
    prev, _ = mes.section_space(facets, q - 2, wall_mode=True)
    span_forms = tuple(linalg.unit(k, i) for i in range(k))
    products = []
    for vec in prev:
        for form in span_forms:
            products.append(
                mes._multiply_conewise(
                    facets,
                    q - 2,
                    vec,
                    {cid: _restrict_form(mes, sid, cid, form) for cid in facets},
                )
            )
    coords = [mes.to_basis_coords(facets, q, basis, free_cols, p) for p in products]
    return basis, free_cols, coords


def _construct_module(mes: MinimalExtensionSheaf, sid: int) -> ConeModule:
    fan = mes.fan
    facets = fan.facets_of(sid)
    gen_degrees = []
    lifts = []  # (degree, boundary section vector)
    for q in range(0, mes.cap + 2, 2):
        basis, _free, m_coords = _boundary_quotient_data(mes, sid, q)
        rows = [list(r) for r in m_coords]
        pivots = linalg._rref_inplace(rows)
        complement = [i for i in range(len(basis)) if i not in set(pivots)]
        if complement and q == mes.cap:
            raise DegreeCapError(
                f"cone {sid}: quotient of boundary sections is nonzero at the "
                f"degree cap {mes.cap}; raise the cap to certify generators"
            )
        for i in complement:
            gen_degrees.append(q)
            lifts.append((q, basis[i]))
    images: dict = {}
    proper = sorted(fan.faces[sid], key=lambda c: (-fan.cones[c].dim, c))
    for tau in proper:
        per_gen = []
        for d, section in lifts:
            if tau in facets:
                offsets, _total = mes.section_layout(facets, d)
                idx = facets.index(tau)
                start = offsets[idx]
                per_gen.append(
                    tuple(section[start : start + mes.module_dim(tau, d)])
                )
            else:
                host = next(
                    f for f in facets if tau in fan.faces[f]
                )
                offsets, _total = mes.section_layout(facets, d)
                idx = facets.index(host)
                start = offsets[idx]
                block = section[start : start + mes.module_dim(host, d)]
                mat = mes.restriction_matrix(host, tau, d)
                per_gen.append(linalg.mat_vec(mat, block))
        images[tau] = tuple(per_gen)
    return ConeModule(sid, tuple(gen_degrees), images)


def _restrict_form(mes: MinimalExtensionSheaf, sid: int, tgt_id: int, form):
    """Restrict a covector in the source cone's coordinates to a face."""
    forms = mes.span_substitution_forms(sid, tgt_id)
    nv = mes.nvars(tgt_id)
    out = [_ZERO] * nv
    for coeff, f in zip(form, forms):
        if coeff != 0:
            for i, val in enumerate(f):
                out[i] = out[i] + coeff * val
    return tuple(out)


def _transport_module(mes: MinimalExtensionSheaf, rep_id: int, new_id: int) -> ConeModule:
    """Module of -sigma from the module of sigma: same generator degrees,
    images twisted by the point reflection (sign (-1)^m on ordinary
    degree-m polynomial coefficients; spans and adapted coordinates of
    opposite cones coincide)."""
    rep = mes.modules[rep_id]
    anti = mes.antipode
    images: dict = {}
    for tau, vecs in rep.images.items():
        twisted = []
        for gi, vec in enumerate(vecs):
            d = rep.gen_degrees[gi]
            blocks, _ = mes.gen_blocks(tau, d)
            out = list(vec)
            for (_, d_j, off, cnt) in blocks:
                if ((d - d_j) // 2) % 2 == 1:
                    for c in range(off, off + cnt):
                        out[c] = -out[c]
            twisted.append(tuple(out))
        images[anti[tau]] = tuple(twisted)
    return ConeModule(new_id, rep.gen_degrees, images)


# ---------------------------------------------------------------------------
# Graded dimensions and Poincare series


@dataclass(frozen=True)
class SectionBasis:
    """Global sections per even degree: layout metadata plus basis vectors
    in concatenated per-maximal-cone coordinates."""

    sheaf: "MinimalExtensionSheaf"
    max_ids: tuple
    degrees: tuple
    bases: dict  # q -> tuple of vectors

    def dim(self, q: int) -> int:
        return len(self.bases.get(q, ()))

    def components(self, q: int, index: int) -> dict:
        """One basis element decoded as, per maximal cone, a tuple of
        monomial-coefficient vectors (one per module generator)."""
        vec = self.bases[q][index]
        offsets, _ = self.sheaf.section_layout(self.max_ids, q)
        out = {}
        for cid, off in zip(self.max_ids, offsets):
            blocks, _ = self.sheaf.gen_blocks(cid, q)
            out[cid] = tuple(
                tuple(vec[off + boff : off + boff + cnt])
                for (_, _, boff, cnt) in blocks
            )
        return out


def global_sections(mes: MinimalExtensionSheaf) -> SectionBasis:
    """Degreewise bases of the sections over all maximal cones."""
    if not mes.fan.is_complete():
        raise FanError("global sections require a complete fan")
    max_ids = mes.global_cone_ids()
    degrees = tuple(range(0, mes.cap + 2, 2))
    bases = {q: mes.global_data(q)["basis"] for q in degrees}
    return SectionBasis(mes, max_ids, degrees, bases)


def sections_poincare(mes: MinimalExtensionSheaf) -> IntPoly:
    """Graded dimensions of the global sections (a polynomial in t,
    truncated at the cap); the module-level Poincare series."""
    if not mes.fan.is_complete():
        raise FanError("Poincare series require a complete fan")
    out = [0] * (mes.cap + 1)
    for q in range(0, mes.cap + 2, 2):
        if q <= mes.cap:
            out[q] = len(mes.global_data(q)["basis"])
    return trim(out)


def ih_poincare(mes: MinimalExtensionSheaf) -> IntPoly:
    """Graded dimensions of global sections modulo the maximal ideal: the
    Betti numbers of combinatorial intersection cohomology."""
    if not mes.fan.is_complete():
        raise FanError("Poincare series require a complete fan")
    out = [0] * (mes.cap + 1)
    for q in range(0, mes.cap + 2, 2):
        if q <= mes.cap:
            out[q] = len(mes.global_data(q)["complement"])
    return trim(out)


def check_betti_equals_h(mes: MinimalExtensionSheaf, h: IntPoly | None = None) -> bool:
    """Betti numbers equal the h-polynomial evaluated at t^2."""
    if h is None:
        h = h_polynomial(mes.fan)
    expected = truncate_at(substitute_t_squared(h), mes.cap)
    return ih_poincare(mes) == expected


def check_freeness_factorization(mes: MinimalExtensionSheaf) -> bool:
    """Sections = polynomials tensor quotient: v(t) * (1 - t^2)^n = u(t)
    coefficientwise up to the cap."""
    v = sections_poincare(mes)
    u = ih_poincare(mes)
    n = mes.fan.dim
    factor = [0] * (2 * n + 1)
    for k in range(n + 1):
        factor[2 * k] = (-1) ** k * _binom(n, k)
    lhs = truncate_at(pmul(v, trim(factor)), mes.cap)
    return lhs == truncate_at(u, mes.cap)


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# ---------------------------------------------------------------------------
# Local kernels and flabbiness


def kernel_dimensions(mes: MinimalExtensionSheaf) -> dict:
    """Per cone, graded dimensions of the kernel of restriction to its
    boundary fan; verifies surjectivity (flabbiness) along the way."""
    fan = mes.fan
    out = {}
    for cid in fan.cone_ids():
        facets = fan.facets_of(cid)
        dims = [0] * (mes.cap + 1)
        for q in range(0, mes.cap + 2, 2):
            if q > mes.cap:
                continue
            dim_e = mes.module_dim(cid, q)
            if not facets:
                dims[q] = dim_e
                continue
            boundary_basis, _ = mes.section_space(facets, q, wall_mode=True)
            rows = [
                row
                for f in facets
                for row in mes.restriction_matrix(cid, f, q)
            ]
            rk = linalg.rank(linalg.mat(rows)) if rows else 0
            dims[q] = dim_e - rk
            if rk != len(boundary_basis):
                raise SheafError(
                    f"restriction of cone {cid} to its boundary is not "
                    f"surjective in degree {q}"
                )
        out[cid] = trim(dims)
    return out


def check_local_global_dims(mes: MinimalExtensionSheaf, cone_ids) -> bool:
    """Dimension consequence of the characteristic-sheaf decomposition:
    for a subfan, dim of its sections equals the sum of local kernel
    dimensions over its cones, in every degree up to the cap."""
    fan = mes.fan
    ids = set(cone_ids)
    for cid in ids:
        if not fan.faces[cid] <= ids:
            raise FanError("subfan is not face-closed")
    covered = set()
    for cid in ids:
        covered |= fan.faces[cid]
    max_ids = tuple(sorted(cid for cid in ids if cid not in covered))
    kernels = kernel_dimensions(mes)
    from .polynomials import coeff as _coeff

    for q in range(0, mes.cap + 2, 2):
        if q > mes.cap:
            continue
        basis, _ = mes.section_space(max_ids, q, wall_mode=False)
        total = sum(_coeff(kernels[cid], q) for cid in ids)
        if len(basis) != total:
            return False
    return True


# ---------------------------------------------------------------------------
# The point-reflection action


def _phi_permutation(mes: MinimalExtensionSheaf, q: int):
    """The reflection acting on global-section coordinates: a signed
    permutation sending the block of cone sigma to the block of -sigma
    with sign (-1)^m on ordinary polynomial degree m."""
    if mes.antipode is None:
        raise FanError("the fan is not centrally symmetric")
    max_ids = mes.global_cone_ids()
    offsets, total = mes.section_layout(max_ids, q)
    offset_of = dict(zip(max_ids, offsets))
    source = [0] * total
    sign_of = [1] * total
    for cid in max_ids:
        partner = mes.antipode[cid]
        blocks, _ = mes.gen_blocks(cid, q)
        for gi, d, off, cnt in blocks:
            s = -1 if ((q - d) // 2) % 2 else 1
            for c in range(cnt):
                source[offset_of[cid] + off + c] = offset_of[partner] + off + c
                sign_of[offset_of[cid] + off + c] = s
    def apply(vec):
        return tuple(
            (vec[source[i]] if sign_of[i] == 1 else -vec[source[i]])
            for i in range(total)
        )
    return apply


def _involution_on_basis(mes: MinimalExtensionSheaf, q: int):
    """Matrix of the reflection on the section basis at degree q (exact;
    raises if the reflection fails to preserve the section space)."""
    data = mes.global_data(q)
    basis, free_cols = data["basis"], data["free_cols"]
    apply = _phi_permutation(mes, q)
    max_ids = mes.global_cone_ids()
    cols = []
    for b in basis:
        image = apply(b)
        cols.append(mes.to_basis_coords(max_ids, q, basis, free_cols, image))
    # cols[i] are coordinates of phi(basis[i]); matrix with those as columns.
    dim = len(basis)
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


def _eigen_split(matrix, dim: int):
    """Eigenspace dimensions (+1, -1) of an exact involution matrix."""
    if dim == 0:
        return 0, 0
    plus_rows = [
        [matrix[i][j] - (1 if i == j else 0) for j in range(dim)]
        for i in range(dim)
    ]
    minus_rows = [
        [matrix[i][j] + (1 if i == j else 0) for j in range(dim)]
        for i in range(dim)
    ]
    plus = dim - len(linalg._rref_inplace(plus_rows))
    minus = dim - len(linalg._rref_inplace(minus_rows))
    if plus + minus != dim:
        raise SheafError("reflection action is not an involution on sections")
    return plus, minus


def refined_series(mes: MinimalExtensionSheaf):
    """Refined Poincare series (u_refined, v_refined) of the reflection:
    plus-eigenspace dims plus chi times minus-eigenspace dims, on the
    quotient and on the sections respectively."""
    cap = mes.cap
    v_plus = [0] * (cap + 1)
    v_minus = [0] * (cap + 1)
    u_plus = [0] * (cap + 1)
    u_minus = [0] * (cap + 1)
    for q in range(0, cap + 2, 2):
        if q > cap:
            continue
        c = _involution_on_basis(mes, q)
        dim = len(c)
        p, m = _eigen_split(c, dim)
        v_plus[q], v_minus[q] = p, m
        cbar = _involution_on_quotient(mes, q, c)
        dq = len(mes.global_data(q)["complement"])
        pq, mq = _eigen_split(cbar, dq)
        u_plus[q], u_minus[q] = pq, mq
    return (
        RefinedSeries(trim(u_plus), trim(u_minus)),
        RefinedSeries(trim(v_plus), trim(v_minus)),
    )


def _involution_on_quotient(mes: MinimalExtensionSheaf, q: int, c_matrix):
    """The reflection descended to sections modulo m, on the complement
    coordinates of :meth:`global_data`."""
    data = mes.global_data(q)
    complement = data["complement"]
    cols = []
    for idx in complement:
        coords = tuple(c_matrix[i][idx] for i in range(len(c_matrix)))
        cols.append(mes.reduce_mod_m(q, coords))
    k = len(complement)
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def phi_eigenspaces(mes: MinimalExtensionSheaf):
    """Spec-facing name for :func:`refined_series`."""
    return refined_series(mes)


def check_refined_splitting(mes: MinimalExtensionSheaf) -> bool:
    """2*(v_refined - 1) = (1 + chi)*(v - 1) up to the cap: away from
    degree zero the two eigenspaces of the sections have equal size."""
    u_ref, v_ref = refined_series(mes)
    v = sections_poincare(mes)
    one = RefinedSeries.of_int(1)
    lhs = (v_ref - one).scale(2).truncate_at(mes.cap)
    chi_plus_one = RefinedSeries((1,), (1,))
    v_minus_one = RefinedSeries(psub(v, (1,)), ())
    rhs = (chi_plus_one * v_minus_one).truncate_at(mes.cap)
    return lhs == rhs


def check_refined_factorization(mes: MinimalExtensionSheaf) -> bool:
    """v_refined * (1 - chi t^2)^n = u_refined up to the cap."""
    u_ref, v_ref = refined_series(mes)
    n = mes.fan.dim
    base = RefinedSeries((1,), (0, 0, -1))
    factor = base.power(n).truncate_at(mes.cap)
    lhs = (v_ref * factor).truncate_at(mes.cap)
    return lhs == u_ref.truncate_at(mes.cap)


def check_minus_part_formula(mes: MinimalExtensionSheaf) -> bool:
    """2*u_refined = (u + (1+t^2)^n) + chi*(u - (1+t^2)^n) up to the cap."""
    u_ref, _ = refined_series(mes)
    u = ih_poincare(mes)
    n = mes.fan.dim
    binT = substitute_t_squared(binomial_poly(n))
    lhs = u_ref.scale(2).truncate_at(mes.cap)
    rhs = RefinedSeries(
        truncate_at(padd(u, binT), mes.cap), truncate_at(psub(u, binT), mes.cap)
    )
    return lhs == rhs


# ---------------------------------------------------------------------------
# Hard Lefschetz verification


def lefschetz_maps(mes: MinimalExtensionSheaf, s: ConewiseLinear) -> dict:
    """Matrices of multiplication by a strictly concave conewise linear
    function on the quotient, degree q -> q + 2 for even q < cap."""
    if s.fan is not mes.fan:
        raise FanError("support function belongs to a different fan")
    max_ids = mes.global_cone_ids()
    out = {}
    for q in range(0, mes.cap, 2):
        data = mes.global_data(q)
        target = mes.global_data(q + 2)
        cols = []
        for idx in data["complement"]:
            vec = data["basis"][idx]
            product = mes.multiply_by_conewise_linear(max_ids, q, vec, s)
            coords = mes.to_basis_coords(
                max_ids, q + 2, target["basis"], target["free_cols"], product
            )
            cols.append(mes.reduce_mod_m(q + 2, coords))
        rows = len(target["complement"])
        k = len(cols)
        out[q] = tuple(tuple(cols[j][i] for j in range(k)) for i in range(rows))
    return out


def lefschetz_rank_table(mes: MinimalExtensionSheaf, s: ConewiseLinear):
    """Per degree: (dim source, dim target, rank, injective, surjective)."""
    maps = lefschetz_maps(mes, s)
    table = {}
    for q, matrix in sorted(maps.items()):
        src = len(mes.global_data(q)["complement"])
        tgt = len(mes.global_data(q + 2)["complement"])
        rk = linalg.rank(matrix) if (src and tgt) else 0
        table[q] = (src, tgt, rk, rk == src, rk == tgt)
    return table


def check_lefschetz_pattern(mes: MinimalExtensionSheaf, s: ConewiseLinear) -> bool:
    """Multiplication is injective below the middle degree and surjective
    above it: injective for q <= n - 1, surjective for q >= n - 1."""
    n = mes.fan.dim
    table = lefschetz_rank_table(mes, s)
    for q, (src, tgt, rk, inj, sur) in table.items():
        if q <= n - 1 and not inj:
            return False
        if q >= n - 1 and not sur:
            return False
    return True


def minus_lefschetz_table(mes: MinimalExtensionSheaf, s: ConewiseLinear):
    """Lefschetz data restricted to the minus eigenspaces of the
    reflection; also certifies that multiplication preserves them."""
    maps = lefschetz_maps(mes, s)
    table = {}
    minus_bases = {}
    for q in range(0, mes.cap + 2, 2):
        if q > mes.cap:
            continue
        c = _involution_on_basis(mes, q)
        cbar = _involution_on_quotient(mes, q, c)
        dim = len(cbar)
        rows = [
            [cbar[i][j] + (1 if i == j else 0) for j in range(dim)]
            for i in range(dim)
        ]
        minus_bases[q] = linalg.kernel_basis(linalg.mat(rows)) if dim else ()
    for q, matrix in sorted(maps.items()):
        src_basis = minus_bases[q]
        tgt_basis = minus_bases.get(q + 2, ())
        images = [linalg.mat_vec(matrix, v) for v in src_basis]
        for img in images:
            if tgt_basis:
                sol = linalg.solve(linalg.mat(tuple(zip(*tgt_basis))), img)
            else:
                sol = () if all(x == 0 for x in img) else None
            if sol is None:
                raise SheafError(
                    "multiplication does not preserve the minus eigenspace"
                )
        rk = linalg.rank(linalg.mat(images)) if images else 0
        table[q] = (len(src_basis), len(tgt_basis), rk)
    return table


def check_minus_lefschetz_pattern(mes: MinimalExtensionSheaf, s: ConewiseLinear) -> bool:
    n = mes.fan.dim
    table = minus_lefschetz_table(mes, s)
    for q, (src, tgt, rk) in table.items():
        if q <= n - 1 and rk != src:
            return False
        if q >= n - 1 and rk != tgt:
            return False
    return True


# ---------------------------------------------------------------------------
# End-to-end verification on a polytope


def verify_betti_equals_h(fan: Fan, cap: int | None = None) -> bool:
    """Build the sheaf of a complete polytopal fan and compare its Betti
    numbers against the h-polynomial evaluated at t^2."""
    return check_betti_equals_h(build_mes(fan, cap))


@dataclass(frozen=True)
class CSSheafReport:
    """Sheaf-theoretic verification of the lower-bound statement for one
    centrally symmetric polytope."""

    dim: int
    cap: int
    betti: IntPoly  # u
    minus_dims: IntPoly  # minus-eigenspace dims of the quotient
    minus_formula_ok: bool  # 2 * minus = u - (1+t^2)^n
    minus_lefschetz_ok: bool
    difference_nonnegative_even: bool
    difference_unimodal: bool
    difference_palindromic: bool

    def ok(self) -> bool:
        return (
            self.minus_formula_ok
            and self.minus_lefschetz_ok
            and self.difference_nonnegative_even
            and self.difference_unimodal
            and self.difference_palindromic
        )


def sheaf_cs_report(p, cap: int | None = None) -> CSSheafReport:
    """Verify the lower-bound mechanism on a centrally symmetric polytope.

    Checks that twice the minus-eigenspace dimensions of the quotient
    equal u - (1+t^2)^n coefficientwise, that multiplication by the
    support function respects the minus eigenspaces with the injective/
    surjective rank pattern around the middle degree, and that the
    difference polynomial is nonnegative, even, palindromic and unimodal.
    """
    from .fans import face_fan, support_function
    from .polynomials import coeff, is_palindromic, is_unimodal

    if not p.is_centrally_symmetric():
        raise ValueError("sheaf_cs_report requires a centrally symmetric polytope")
    fan = face_fan(p)
    mes = build_mes(fan, cap)
    s = support_function(p, fan)
    n = fan.dim
    u = ih_poincare(mes)
    u_ref, _ = refined_series(mes)
    minus = u_ref.minus
    binT = substitute_t_squared(binomial_poly(n))
    difference = psub(u, binT)
    formula_ok = trim(tuple(2 * c for c in minus)) == trim(difference)
    even_degrees = [coeff(difference, q) for q in range(0, 2 * n + 1, 2)]
    return CSSheafReport(
        dim=n,
        cap=mes.cap,
        betti=u,
        minus_dims=minus,
        minus_formula_ok=formula_ok,
        minus_lefschetz_ok=check_minus_lefschetz_pattern(mes, s),
        difference_nonnegative_even=all(
            c >= 0 and c % 2 == 0 for c in difference
        ),
        difference_unimodal=is_unimodal(tuple(even_degrees)),
        difference_palindromic=is_palindromic(difference, 2 * n),
    )


# ---------------------------------------------------------------------------
# Axiom verification


def check_minimal_extension_axioms(mes: MinimalExtensionSheaf) -> bool:
    """Numerically verify the defining properties on every cone.

    The zero cone carries a single degree-zero generator; each module is
    free by construction; and for every other cone the generator images
    on the boundary reduce to a basis of the boundary sections modulo the
    maximal ideal (the reduction of the restriction map is a degreewise
    isomorphism).  Exact rank computations throughout.
    """
    fan = mes.fan
    if mes.modules[fan.zero_id].gen_degrees != (0,):
        return False
    for cid in fan.cone_ids():
        if cid == fan.zero_id:
            continue
        facets = fan.facets_of(cid)
        module = mes.modules[cid]
        for q in range(0, mes.cap + 2, 2):
            basis, free_cols, m_coords = _boundary_quotient_data(mes, cid, q)
            m_rows = [list(r) for r in m_coords]
            m_rank = len(linalg._rref_inplace(m_rows))
            quotient_dim = len(basis) - m_rank
            gen_ids = [i for i, d in enumerate(module.gen_degrees) if d == q]
            if len(gen_ids) != quotient_dim:
                return False
            if not gen_ids:
                continue
            offsets, total = mes.section_layout(facets, q)
            image_coords = []
            for gi in gen_ids:
                vec = []
                for f in facets:
                    vec.extend(module.images[f][gi])
                if len(vec) != total:
                    return False
                image_coords.append(
                    mes.to_basis_coords(facets, q, basis, free_cols, tuple(vec))
                )
            stacked = m_rows[:m_rank] + [list(r) for r in image_coords]
            if len(linalg._rref_inplace(stacked)) != m_rank + len(gen_ids):
                return False
    return True
