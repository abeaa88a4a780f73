from fractions import Fraction

import pytest

from polyfan import linalg
from polyfan.fans import face_fan, support_function
from polyfan.hvector import g_polynomial, h_polynomial
from polyfan.ihsheaf import (
    DegreeCapError,
    build_mes,
    check_betti_equals_h,
    check_freeness_factorization,
    check_local_global_dims,
    check_lefschetz_pattern,
    check_minus_lefschetz_pattern,
    check_minus_part_formula,
    check_refined_factorization,
    check_refined_splitting,
    global_sections,
    ih_poincare,
    kernel_dimensions,
    lefschetz_rank_table,
    monomials,
    refined_series,
    sections_poincare,
    sheaf_cs_report,
    verify_betti_equals_h,
)
from polyfan.polynomials import coeff, substitute_t_squared
from polyfan.polytopes import cross_polytope, cube, simplex


def F(x):
    return Fraction(x)


class TestMonomials:
    def test_counts(self):
        assert len(monomials(3, 2)) == 6
        assert monomials(0, 0) == ((),)
        assert monomials(0, 3) == ()

    def test_order_deterministic(self):
        assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))


class TestConstruction:
    def test_zero_cone_single_generator(self, sheaf_setups):
        _, fan, mes, _ = sheaf_setups["cube-3"]
        assert mes.modules[fan.zero_id].gen_degrees == (0,)

    def test_simplicial_cones_have_one_generator(self, sheaf_setups):
        _, fan, mes, _ = sheaf_setups["cross-3"]
        for cid in fan.cone_ids():
            assert mes.modules[cid].gen_degrees == (0,)

    def test_square_cone_generators(self, sheaf_setups):
        _, fan, mes, _ = sheaf_setups["cube-3"]
        for cid in fan.cones_of_dim(3):
            assert mes.modules[cid].gen_degrees == (0, 2)

    def test_generator_degrees_match_g(self, sheaf_setups):
        # The generator multiset of each cone matches g(t^2).
        for name in ("cube-3", "prism-over-diamond", "nonrational-bipyramid"):
            _, fan, mes, _ = sheaf_setups[name]
            for cid in fan.cone_ids():
                g = g_polynomial(fan, cid)
                expected = []
                for degree, count in enumerate(g):
                    expected.extend([2 * degree] * count)
                assert list(mes.modules[cid].gen_degrees) == expected, (name, cid)

    def test_axiom_quotient_iso(self, sheaf_setups):
        # Reduction of the boundary restriction is an isomorphism mod m:
        # generator count per degree equals the boundary quotient dim.
        _, fan, mes, _ = sheaf_setups["cube-3"]
        for cid in fan.cone_ids():
            if cid == fan.zero_id:
                continue
            facets = fan.facets_of(cid)
            k = fan.cones[cid].dim
            forms = tuple(linalg.unit(k, i) for i in range(k))
            for q in range(0, mes.cap + 2, 2):
                basis, free_cols = mes.section_space(facets, q, wall_mode=True)
                gens_at_q = sum(
                    1 for d in mes.modules[cid].gen_degrees if d == q
                )
                if q < 2:
                    m_dim = 0
                else:
                    prev, _ = mes.section_space(facets, q - 2, wall_mode=True)
                    products = []
                    for vec in prev:
                        for i in range(k):
                            from polyfan.ihsheaf import _restrict_form

                            products.append(
                                mes._multiply_conewise(
                                    facets,
                                    q - 2,
                                    vec,
                                    {
                                        f: _restrict_form(mes, cid, f, forms[i])
                                        for f in facets
                                    },
                                )
                            )
                    coords = [
                        mes.to_basis_coords(facets, q, basis, free_cols, p)
                        for p in products
                    ]
                    m_dim = linalg.rank(linalg.mat(coords)) if coords else 0
                assert gens_at_q == len(basis) - m_dim

    def test_degree_cap_errors(self):
        fan = face_fan(cube(2))
        with pytest.raises(DegreeCapError):
            build_mes(fan, 3)
        with pytest.raises(DegreeCapError):
            build_mes(fan, 2)


class TestSections:
    def test_one_dim_fan(self):
        fan = face_fan(cube(1))
        mes = build_mes(fan)
        v = sections_poincare(mes)
        assert coeff(v, 0) == 1
        assert coeff(v, 2) == 2

    def test_cross2_conewise_linear(self, sheaf_setups):
        _, _, mes, _ = sheaf_setups["cross-2"]
        assert coeff(sections_poincare(mes), 2) == 4

    def test_constants_one_dimensional(self, sheaf_setups):
        for name, (_, _, mes, _) in sheaf_setups.items():
            assert coeff(sections_poincare(mes), 0) == 1, name

    def test_global_sections_basis_shape(self, sheaf_setups):
        _, fan, mes, _ = sheaf_setups["cube-2"]
        sections = global_sections(mes)
        assert sections.max_ids == fan.maximal_ids
        v = sections_poincare(mes)
        for q in sections.degrees:
            assert sections.dim(q) == coeff(v, q)


class TestPoincare:
    def test_cross3_betti(self, sheaf_setups):
        _, _, mes, _ = sheaf_setups["cross-3"]
        assert ih_poincare(mes) == (1, 0, 3, 0, 3, 0, 1)

    def test_cube3_betti(self, sheaf_setups):
        _, _, mes, _ = sheaf_setups["cube-3"]
        assert ih_poincare(mes) == (1, 0, 5, 0, 5, 0, 1)

    def test_betti_equals_h_everywhere(self, sheaf_setups):
        for name, (_, fan, mes, _) in sheaf_setups.items():
            u = ih_poincare(mes)
            assert u == substitute_t_squared(h_polynomial(fan)), name
            assert check_betti_equals_h(mes), name

    def test_freeness_factorization(self, sheaf_setups):
        for name, (_, _, mes, _) in sheaf_setups.items():
            assert check_freeness_factorization(mes), name

    def test_verify_entry_point(self):
        assert verify_betti_equals_h(face_fan(simplex(2)))


class TestKernels:
    def test_zero_cone_kernel(self, sheaf_setups):
        _, fan, mes, _ = sheaf_setups["cube-2"]
        assert kernel_dimensions(mes)[fan.zero_id] == (1,)

    def test_ray_kernel(self, sheaf_setups):
        _, fan, mes, _ = sheaf_setups["cube-2"]
        ray = fan.cones_of_dim(1)[0]
        dims = kernel_dimensions(mes)[ray]
        for q in range(2, mes.cap + 1, 2):
            assert coeff(dims, q) == 1
        assert coeff(dims, 0) == 0

    def test_local_global_consistency(self, sheaf_setups):
        for name in ("cube-2", "cross-2", "cube-3"):
            _, fan, mes, _ = sheaf_setups[name]
            # Full fan, all skeleta, and all single-cone star subfans.
            assert check_local_global_dims(mes, fan.cone_ids()), name
            for k in range(fan.dim):
                ids = [c for c in fan.cone_ids() if fan.cones[c].dim <= k]
                assert check_local_global_dims(mes, ids), (name, k)
            for cid in fan.cone_ids():
                ids = set(fan.faces[cid]) | {cid}
                assert check_local_global_dims(mes, ids), (name, cid)


class TestReflection:
    def test_refined_series_cross3(self, sheaf_setups):
        _, _, mes, _ = sheaf_setups["cross-3"]
        u_ref, _ = refined_series(mes)
        assert u_ref.minus == ()  # cross-polytope: no minus part

    def test_refined_series_cube3(self, sheaf_setups):
        _, _, mes, _ = sheaf_setups["cube-3"]
        u_ref, _ = refined_series(mes)
        assert u_ref.plus == (1, 0, 4, 0, 4, 0, 1)
        assert u_ref.minus == (0, 0, 1, 0, 1)

    def test_identities(self, sheaf_setups):
        for name, (_, _, mes, _) in sheaf_setups.items():
            assert check_refined_splitting(mes), name
            assert check_refined_factorization(mes), name
            assert check_minus_part_formula(mes), name

    def test_non_cs_fan_rejected(self):
        fan = face_fan(simplex(2))
        mes = build_mes(fan)
        with pytest.raises(Exception, match="symmetric"):
            refined_series(mes)


class TestLefschetz:
    def test_cube3_rank_pattern(self, sheaf_setups):
        _, _, mes, s = sheaf_setups["cube-3"]
        table = lefschetz_rank_table(mes, s)
        assert table[0][:3] == (1, 5, 1)
        assert table[2][:3] == (5, 5, 5)
        assert table[4][:3] == (5, 1, 1)
        assert table[6][:3] == (1, 0, 0)

    def test_patterns_hold(self, sheaf_setups):
        for name, (_, _, mes, s) in sheaf_setups.items():
            assert check_lefschetz_pattern(mes, s), name
            assert check_minus_lefschetz_pattern(mes, s), name


class TestCSReport:
    def test_cross3_zero_minus(self, sheaf_setups):
        p, _, _, _ = sheaf_setups["cross-3"]
        report = sheaf_cs_report(p, 8)
        assert report.minus_dims == ()
        assert report.ok()

    def test_cube3(self, sheaf_setups):
        p, _, _, _ = sheaf_setups["cube-3"]
        report = sheaf_cs_report(p, 8)
        assert report.minus_dims == (0, 0, 1, 0, 1)
        assert report.ok()

    def test_random_cs_consistent_with_bounds(self):
        from polyfan.corpus import random_cs_family
        from polyfan.hvector import check_cs_bounds

        name, p = next(
            (nm, q) for nm, q in random_cs_family() if q.ambient_dim == 3
        )
        sheaf_report = sheaf_cs_report(p, 8)
        bounds = check_cs_bounds(p)
        assert sheaf_report.ok()
        assert bounds.all_bounds_hold()
        assert sheaf_report.difference_unimodal == bounds.difference_unimodal
        assert list(sheaf_report.betti) == list(
            substitute_t_squared(bounds.h)
        )


class TestAxioms:
    def test_axioms_hold_on_sheaf_corpus(self, sheaf_setups):
        from polyfan.ihsheaf import check_minimal_extension_axioms

        for name, (_, _, mes, _) in sheaf_setups.items():
            assert check_minimal_extension_axioms(mes), name


class TestReflectionEquivariance:
    def test_transport_commutes_with_restriction(self, sheaf_setups):
        # For antipodal cones, the restriction matrix to an antipodal face
        # equals the sign-twisted conjugate of the original matrix.
        _, fan, mes, _ = sheaf_setups["cube-3"]
        anti = fan.antipode_map()
        for sid in fan.cones_of_dim(3):
            for tid in fan.facets_of(sid):
                for q in (2, 4):
                    m = mes.restriction_matrix(sid, tid, q)
                    m_anti = mes.restriction_matrix(anti[sid], anti[tid], q)
                    twisted = _conjugate_by_reflection(mes, sid, tid, q, m)
                    assert m_anti == twisted

    def test_refined_series_invariant_under_linear_maps(self):
        import random
        from fractions import Fraction

        from polyfan import linalg
        from polyfan.ihsheaf import build_mes, refined_series
        from polyfan.polytopes import linear_image

        rng = random.Random(5)
        p = cube(2)
        fan = face_fan(p)
        reference = refined_series(build_mes(fan, 6))
        for _ in range(2):
            while True:
                m = linalg.mat(
                    [
                        [Fraction(rng.randint(-2, 2)) for _ in range(2)]
                        for _ in range(2)
                    ]
                )
                if linalg.rank(m) == 2:
                    break
            image_fan = face_fan(linear_image(p, m))
            assert refined_series(build_mes(image_fan, 6)) == reference


def _conjugate_by_reflection(mes, sid, tid, q, matrix):
    """Apply the (-1)^degree coefficient twist on both sides of a
    degreewise restriction matrix."""
    src_blocks, src_dim = mes.gen_blocks(sid, q)
    tgt_blocks, tgt_dim = mes.gen_blocks(tid, q)
    col_sign = [1] * src_dim
    for _, d, off, cnt in src_blocks:
        s = -1 if ((q - d) // 2) % 2 else 1
        for c in range(off, off + cnt):
            col_sign[c] = s
    row_sign = [1] * tgt_dim
    for _, d, off, cnt in tgt_blocks:
        s = -1 if ((q - d) // 2) % 2 else 1
        for r in range(off, off + cnt):
            row_sign[r] = s
    return tuple(
        tuple(row_sign[r] * col_sign[c] * matrix[r][c] for c in range(src_dim))
        for r in range(tgt_dim)
    )


class TestCorpusBettiSweep:
    def test_betti_equals_h_on_all_low_dim_corpus_fans(self):
        # Every corpus fan of dimension <= 3 through the full pipeline.
        from polyfan.corpus import cs_corpus
        from polyfan.ihsheaf import build_mes, check_betti_equals_h

        checked = 0
        for name, p in cs_corpus():
            if p.ambient_dim > 3:
                continue
            fan = face_fan(p)
            assert check_betti_equals_h(build_mes(fan)), name
            checked += 1
        assert checked >= 15
