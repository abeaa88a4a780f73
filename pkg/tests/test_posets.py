from polyfan.posets import FacePoset, IsomorphismMemo, are_isomorphic, certificate


def chain(n):
    """0 < 1 < ... < n-1."""
    return FacePoset.from_relations(
        list(range(n)), [()] + [(i - 1,) for i in range(1, n)]
    )


def diamond(k):
    """Bottom, k incomparable middles, top."""
    dims = [0] + [1] * k + [2]
    lower = [()] + [(0,)] * k + [tuple(range(1, k + 1))]
    return FacePoset.from_relations(dims, lower)


def square_cone_poset():
    """Faces of a cone over a square: 0, four rays, four 2-faces, top."""
    dims = [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]
    lower = [
        (),
        (0,), (0,), (0,), (0,),
        (1, 2), (2, 3), (3, 4), (4, 1),
        (5, 6, 7, 8),
    ]
    return FacePoset.from_relations(dims, lower)


def simplex_cone_poset():
    """Faces of a simplicial 3-cone."""
    dims = [0, 1, 1, 1, 2, 2, 2, 3]
    lower = [
        (),
        (0,), (0,), (0,),
        (1, 2), (2, 3), (1, 3),
        (4, 5, 6),
    ]
    return FacePoset.from_relations(dims, lower)


class TestCertificates:
    def test_isomorphic_relabellings_share_certificate(self):
        p = square_cone_poset()
        # Relabel rays and squares cyclically.
        dims = [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]
        lower = [
            (),
            (0,), (0,), (0,), (0,),
            (2, 3), (3, 4), (4, 1), (1, 2),
            (5, 6, 7, 8),
        ]
        q = FacePoset.from_relations(dims, lower)
        assert certificate(p) == certificate(q)
        assert are_isomorphic(p, q)

    def test_different_posets_distinguished(self):
        assert certificate(square_cone_poset()) != certificate(simplex_cone_poset())
        assert not are_isomorphic(square_cone_poset(), simplex_cone_poset())

    def test_chains_and_diamonds(self):
        assert are_isomorphic(chain(4), chain(4))
        assert not are_isomorphic(chain(4), chain(5))
        assert are_isomorphic(diamond(3), diamond(3))
        assert not are_isomorphic(diamond(3), diamond(4))

    def test_same_fvector_different_structure(self):
        # Two graded posets with equal rank sizes but different covers.
        dims = [0, 1, 1, 2, 2]
        p = FacePoset.from_relations(dims, [(), (0,), (0,), (1,), (2,)])
        q = FacePoset.from_relations(dims, [(), (0,), (0,), (1,), (1,)])
        assert not are_isomorphic(p, q)


class TestMemo:
    def test_hit_requires_isomorphism(self):
        memo = IsomorphismMemo()
        memo.put(square_cone_poset(), "square")
        assert memo.get(square_cone_poset()) == "square"
        assert memo.get(simplex_cone_poset()) is None

    def test_multiple_entries(self):
        memo = IsomorphismMemo()
        memo.put(chain(3), 3)
        memo.put(chain(4), 4)
        assert memo.get(chain(4)) == 4
        assert memo.get(chain(3)) == 3
