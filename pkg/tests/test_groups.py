import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facequotient import (
    AbelianGroup,
    Presentation,
    SchemeError,
    abelianization,
    build_quotient,
    collapse_subcomplex,
    contract_tree,
    fundamental_presentation,
    gamma_tree,
    gen_lens,
    gen_platonic_space,
    gen_trivial_sphere,
    induced_presentation,
    smith_normal_form,
    spanning_tree,
    tietze_simplify,
    triviality_status,
)
from facequotient.groups import cyclic_reduce, exponent_matrix, format_word, free_reduce
from facequotient.quotient import QuotientComplex, closure

from conftest import GALLERY, LENS_PARAMS
from oracles import abelian_from_matrix, determinant_divisors_factors, is_abelian_quotient, sympy_factors


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def det(m):
    # fraction-free elimination (Bareiss)
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


def check_snf(m):
    d, u, v = smith_normal_form(m)
    rows, cols = len(m), len(m[0])
    assert matmul(matmul(u, m), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    diag = []
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert d[i][j] == 0
    diag = [d[i][i] for i in range(min(rows, cols))]
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[: len(nz)] == nz  # zeros trail
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return nz


matrices = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def presentations(max_gens=4, max_rels=4, max_len=6):
    def build(n):
        letter = st.integers(1, n).flatmap(lambda g: st.sampled_from((g, -g)))
        rels = st.lists(st.lists(letter, max_size=max_len).map(tuple), max_size=max_rels)
        return rels.map(lambda rs: Presentation(n, tuple(rs)))
    return st.integers(0, max_gens).flatmap(
        lambda n: build(n) if n else st.just(Presentation(0, ()))
    )


class TestWords:
    def test_free_reduce(self):
        assert free_reduce((1, 2, -2, -1, 3)) == (3,)

    def test_cyclic_reduce(self):
        assert cyclic_reduce((-1, 2, 1)) == (2,)

    def test_format(self):
        assert format_word((1, 1, 1, -2)) == "a^3*b^-1"
        assert str(Presentation(1, ((1,) * 5,))) == "< a | a^5 >"

    def test_bad_generator(self):
        with pytest.raises(ValueError):
            Presentation(1, ((2,),))


class TestFundamental:
    def test_lens(self):
        assert str(fundamental_presentation(build_quotient(gen_lens(5, 2)))) == "< a | a^5 >"

    def test_sphere(self):
        p = fundamental_presentation(build_quotient(gen_trivial_sphere(3)))
        assert p.n_generators == 1 and p.relators == ((1,),)
        assert triviality_status(p) == "trivial"

    def test_poincare_counts(self):
        p = fundamental_presentation(build_quotient(gen_platonic_space("poincare")))
        assert (p.n_generators, len(p.relators)) == (6, 6)

    def test_disconnected(self):
        q = build_quotient(gen_trivial_sphere(3))
        q2 = QuotientComplex((0, 1), (), (), {})
        with pytest.raises(SchemeError, match="disconnected"):
            fundamental_presentation(q2)
        assert fundamental_presentation(q).n_generators == 1

    @pytest.mark.parametrize("q,p", LENS_PARAMS)
    def test_lens_family(self, q, p):
        h = abelianization(fundamental_presentation(build_quotient(gen_lens(q, p))))
        assert h == AbelianGroup(0, (q,))


class TestTietze:
    def test_kill_trivial(self):
        assert tietze_simplify(Presentation(1, ((1, -1),))).n_generators == 1
        out = tietze_simplify(Presentation(1, ((1,),)))
        assert out.n_generators == 0 and out.relators == ()

    def test_unchanged(self):
        p = Presentation(1, ((1,) * 5,))
        assert tietze_simplify(p) == Presentation(1, ((1,) * 5,))

    def test_kill_and_rewrite(self):
        assert str(tietze_simplify(Presentation(2, ((2,), (1, 2, 1))))) == "< a | a^2 >"

    def test_substitution(self):
        # a b^-1 = 1 lets b be replaced by a
        out = tietze_simplify(Presentation(2, ((1, -2), (1, 1, 2))))
        assert str(out) == "< a | a^3 >"

    @settings(max_examples=1000, deadline=None)
    @given(presentations())
    def test_abelianization_invariant(self, p):
        assert abelianization(tietze_simplify(p)) == abelianization(p)


class TestSmith:
    def test_scalar(self):
        assert smith_normal_form([[5]])[0] == [[5]]

    def test_diagonal(self):
        assert check_snf([[2, 0], [0, 2]]) == [2, 2]

    def test_reorders_to_chain(self):
        assert check_snf([[2, 0], [0, 3]]) == [1, 6]

    def test_zero_and_empty(self):
        assert check_snf([[0, 0], [0, 0]]) == []
        assert abelianization(Presentation(2, ())) == AbelianGroup(2)

    def test_quaternion_matrix(self):
        p = fundamental_presentation(build_quotient(gen_platonic_space("quaternion")))
        m = exponent_matrix(p)
        assert [x for x in determinant_divisors_factors(m) if x > 1] == [2, 2]
        assert [x for x in check_snf(m) if x > 1] == [2, 2]

    @settings(max_examples=500, deadline=None)
    @given(matrices)
    def test_postconditions_against_sympy(self, m):
        assert check_snf(m) == sympy_factors(m)

    def test_big_entries_stay_exact(self):
        m = [[10**30 + 1, 3 * 10**30], [7, 21]]
        assert check_snf(m) == sympy_factors(m)


class TestAbelianization:
    def test_cyclic(self):
        for q in (2, 5, 12):
            assert str(abelianization(Presentation(1, ((1,) * q,)))) == f"Z_{q}"

    def test_trivial(self):
        assert abelianization(Presentation(0, ())).is_trivial()

    def test_poincare(self):
        p = fundamental_presentation(build_quotient(gen_platonic_space("poincare")))
        assert abelianization(p).is_trivial()
        assert tietze_simplify(p).n_generators > 0
        assert triviality_status(p) == "unknown"

    def test_quaternion(self):
        p = fundamental_presentation(build_quotient(gen_platonic_space("quaternion")))
        assert str(abelianization(p)) == "Z_2 ⊕ Z_2"

    def test_free_part(self):
        assert str(abelianization(Presentation(3, ((1, 1),)))) == "Z^2 ⊕ Z_2"

    def test_gallery_against_sympy(self, gallery_scheme):
        p = fundamental_presentation(build_quotient(gallery_scheme))
        h = abelianization(p)
        assert (h.free_rank, h.torsion) == abelian_from_matrix(exponent_matrix(p), p.n_generators)

    def test_status(self):
        assert triviality_status(Presentation(1, ((1,) * 5,))) == "nontrivial"


class TestInduced:
    def test_tree_contraction_on_sphere(self):
        q = build_quotient(gen_trivial_sphere(3))
        p = fundamental_presentation(q)
        _, rec = contract_tree(q, spanning_tree(q))
        out = induced_presentation(p, rec)
        assert triviality_status(out) == triviality_status(p) == "trivial"

    def test_identity(self):
        q = build_quotient(gen_lens(5, 2))
        p = fundamental_presentation(q)
        _, rec = collapse_subcomplex(q, vertices=[0])
        out = induced_presentation(p, rec)
        assert (out.n_generators, out.relators) == (p.n_generators, p.relators)

    def test_lineage_mismatch(self):
        p = fundamental_presentation(build_quotient(gen_lens(5, 2)))
        _, rec = contract_tree(build_quotient(gen_trivial_sphere(3)), ())
        with pytest.raises(SchemeError, match="different complexes"):
            induced_presentation(p, rec)

    def test_quaternion_loop_collapse(self):
        q0 = build_quotient(gen_platonic_space("quaternion"))
        p0 = fundamental_presentation(q0)
        q, rec = contract_tree(q0, gamma_tree(q0))
        loop = q.edges[0].id
        _, rec2 = collapse_subcomplex(q, edges=[loop], vertices=[0])
        out = induced_presentation(p0, rec.then(rec2))
        assert out.n_generators == p0.n_generators
        assert len(out.relators) == len(p0.relators) + 1
        assert len(out.relators[-1]) == 1  # the loop's generator is killed
        before, after = abelianization(p0), abelianization(out)
        assert str(after) == "Z_2"
        assert is_abelian_quotient(before, after)

    def test_quaternion_cell_collapse(self):
        q0 = build_quotient(gen_platonic_space("quaternion"))
        p0 = fundamental_presentation(q0)
        q, rec = contract_tree(q0, gamma_tree(q0))
        _, rec2 = collapse_subcomplex(q, *closure(q, [0]))
        out = induced_presentation(p0, rec.then(rec2))
        assert abelianization(out).is_trivial()
        assert is_abelian_quotient(abelianization(p0), abelianization(out))

    def test_quotient_property_on_gallery(self):
        for name, s in GALLERY.items():
            q0 = build_quotient(s)
            p0 = fundamental_presentation(q0)
            q, rec = contract_tree(q0, gamma_tree(q0))
            for c in q.cells:
                _, rec2 = collapse_subcomplex(q, *closure(q, [c.id]))
                out = induced_presentation(p0, rec.then(rec2))
                assert is_abelian_quotient(abelianization(p0), abelianization(out)), name


def test_quotient_oracle_sanity():
    z, z2, z4 = AbelianGroup(1), AbelianGroup(0, (2,)), AbelianGroup(0, (4,))
    assert is_abelian_quotient(z, z4) and is_abelian_quotient(z4, z2)
    assert not is_abelian_quotient(z2, z4) and not is_abelian_quotient(z2, z)
    assert not is_abelian_quotient(AbelianGroup(0, (2, 2)), z4)
