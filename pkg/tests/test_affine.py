import math
from fractions import Fraction

import numpy as np
import pytest

from liegeom import rational as R
from liegeom.affine import (
    Connection,
    ProjectiveHessianData,
    aff_bracket,
    bracket_from_connection,
    check_flat,
    check_lsa,
    check_projective,
    check_radiant,
    check_torsion,
    etale_rep,
    exp_linear_part,
)
from liegeom.catalog import load_example, standard_names
from liegeom.liecore import abelian
from liegeom.report import PreconditionError, StructureError

LSA_NAMES = ["abelian(3)", "affR", "complex_lsa", "quaternion_lsa", "t2cone"]


def bundle(name):
    return load_example(name)


class TestLsa:
    @pytest.mark.parametrize("name", LSA_NAMES)
    def test_catalog_passes(self, name):
        b = bundle(name)
        assert check_lsa(b.algebra, b.connection).passed

    def test_su2_zero_connection_torsion(self):
        b = bundle("su2")
        rep = check_lsa(b.algebra, b.connection)
        assert (0, 1) in rep.witnesses("torsion")

    @pytest.mark.parametrize("name", LSA_NAMES + ["su2"])
    def test_flatness_agrees(self, name):
        b = bundle(name)
        lsa = check_lsa(b.algebra, b.connection).passed
        assert lsa == (check_torsion(b.algebra, b.connection).passed and check_flat(b.algebra, b.connection).passed)

    def test_flat_but_not_left_symmetric_is_caught(self):
        # torsion-free but curved: e1·e2 = e2·e1 = e1 on the abelian plane
        L = abelian(2)
        C = Connection.from_products(L, {(0, 1): {0: 1}, (1, 0): {0: 1}})
        assert not check_lsa(L, C).passed
        assert not check_flat(L, C).passed

    @pytest.mark.parametrize("name", LSA_NAMES)
    def test_bracket_reconstruction(self, name):
        b = bundle(name)
        assert bracket_from_connection(b.connection).same_brackets(b.algebra)


class TestEtale:
    def test_abelian(self):
        b = bundle("abelian(3)")
        rep = etale_rep(b.algebra, b.connection)
        for i in range(3):
            assert rep.linear_part(i) == R.zeros(3)
            assert rep.translation(i) == R.unit(3, i)

    def test_complex(self):
        b = bundle("complex_lsa")
        rep = etale_rep(b.algebra, b.connection)
        assert rep.linear_part(0) == R.identity(2)
        assert rep.linear_part(1) == R.mat([[0, -1], [1, 0]])
        assert rep.translation(0) == (1, 0) and rep.translation(1) == (0, 1)

    def test_affr(self):
        b = bundle("affR")
        assert etale_rep(b.algebra, b.connection).linear_part(0) == R.identity(2)

    @pytest.mark.parametrize("name", LSA_NAMES)
    def test_homomorphism(self, name):
        b = bundle(name)
        rep = etale_rep(b.algebra, b.connection)
        n = b.algebra.dim
        for i in range(n):
            for j in range(n):
                want = R.zeros(n + 1)
                for k, x in enumerate(b.algebra.c[i][j]):
                    want = R.add(want, R.scale(x, rep.mats[k]))
                assert aff_bracket(rep.mats[i], rep.mats[j]) == want
                assert R.commutator(rep.mats[i], rep.mats[j]) == want

    def test_rejects_non_lsa(self):
        b = bundle("su2")
        with pytest.raises(PreconditionError):
            etale_rep(b.algebra, b.connection)


class TestExp:
    def test_zero(self):
        b = bundle("abelian(3)")
        assert exp_linear_part(b.connection, (1, 2, 3)) == R.identity(3)

    def test_rotation(self):
        b = bundle("complex_lsa")
        M = exp_linear_part(b.connection, (0, 1))
        c, s = math.cos(1), math.sin(1)
        assert np.allclose(M, [[c, -s], [s, c]], atol=1e-12)
        assert abs(np.linalg.det(M) - 1) < 1e-9

    def test_nilpotent_exact(self):
        # t2cone: nabla_{E12} is nilpotent
        b = bundle("t2cone")
        N = b.connection.left(1)
        M = exp_linear_part(b.connection, (0, 1, 0))
        assert M == R.add(R.add(R.identity(3), N), R.scale(Fraction(1, 2), R.matmul(N, N)))
        assert R.det(M) == 1


class TestRadiant:
    @pytest.mark.parametrize("name", ["complex_lsa", "quaternion_lsa"])
    def test_unit_is_radiant(self, name):
        b = bundle(name)
        assert check_radiant(b.algebra, b.connection, b.vectors["xi"]).passed

    def test_zero_connection(self):
        L = abelian(2)
        rep = check_radiant(L, Connection.zero(L), (1, 0))
        assert rep.witnesses("radiant")[0] == (0,)


class TestProjective:
    @pytest.mark.parametrize("name", ["complex_lsa", "quaternion_lsa"])
    def test_pass(self, name):
        P = bundle(name).projective_data()
        assert check_projective(P.g_alg, P.conn_hat).passed
        # projective implies radiant with xi = E
        E = R.unit(P.n + 1, P.n)
        assert check_radiant(P.conn_hat.base, P.conn_hat, E).passed

    def test_affr_with_x_as_scaling(self):
        b = bundle("affR")
        # [E, X] = X, so affR is not the product of span(E) with span(X)
        P = ProjectiveHessianData.from_connection(b.connection, 1, R.identity(1))
        with pytest.raises(StructureError):
            check_projective(P.g_alg, P.conn_hat)

    def test_abelian_table_with_x_as_scaling(self):
        # the affR product table on the abelian plane, E := X (index 1)
        L = abelian(2, ("E", "X"))
        C = Connection.from_products(L, {("E", "E"): {"E": 1}, ("E", "X"): {"X": 1}})
        P = ProjectiveHessianData.from_connection(C, 1, R.identity(1))
        rep = check_projective(P.g_alg, P.conn_hat)
        assert (0,) in rep.witnesses("nabla_X_E")

    def test_zero_connection_fails(self):
        L = abelian(2)
        P = ProjectiveHessianData.from_connection(Connection.zero(L), 0, R.identity(1))
        assert not check_projective(P.g_alg, P.conn_hat).passed


@pytest.mark.parametrize("name", standard_names())
def test_connection_dims_match(name):
    b = bundle(name)
    if b.connection is not None:
        assert b.connection.dim == b.algebra.dim
