from fractions import Fraction

import pytest

from quaplectic.algebra import (AlgebraElement, EnvelopingPoly, MetricTensor,
                                Scalar, bracket, casimir_element, eta, gen,
                                generators, jacobi_violations,
                                poincare_closure_defect, poincare_subalgebra,
                                resolve_alias, structure_constant_table,
                                structure_table_lines, table_lookup,
                                to_complex_basis, to_primitive,
                                unitary_casimir_element)


def single(n, kind, a=None, b=None, coeff=1):
    return AlgebraElement.single(n, gen(kind, a, b), coeff)


class TestScalar:
    def test_sqrt2_squares(self):
        s = Scalar.sqrt2()
        assert (s * s) == Scalar.of(2)

    def test_inverse(self):
        x = Scalar(Fraction(1, 3), Fraction(2), Fraction(-1, 2), Fraction(5))
        assert (x * x.inverse()) == Scalar.of(1)

    def test_inv_sqrt2(self):
        v = Scalar.inv_sqrt2()
        assert v * v == Scalar.of(Fraction(1, 2))


class TestBracket:
    def test_xy_eta(self):
        # [X_a, Y_b] = eta_ab I
        assert bracket(single(1, "X", 0), single(1, "Y", 0)) == single(1, "I", coeff=-1)
        assert bracket(single(1, "X", 1), single(1, "Y", 1)) == single(1, "I")
        assert bracket(single(1, "X", 0), single(1, "Y", 1)).is_zero()

    def test_translations_abelian(self):
        assert bracket(single(2, "X", 0), single(2, "X", 2)).is_zero()
        assert bracket(single(2, "Y", 1), single(2, "Y", 2)).is_zero()

    def test_pq_identification(self):
        # [P_1, Q_1] = I and [T, E] = -I with the physical aliases
        assert bracket(single(3, "P", 1), single(3, "Q", 1)) == single(3, "I")
        assert bracket(single(3, "T"), single(3, "E")) == single(3, "I", coeff=-1)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            bracket(single(1, "X", 0), single(2, "X", 0))

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            resolve_alias(gen("X", 3), 1)

    def test_bilinear(self):
        x = single(1, "M", 0, 1, 3) + single(1, "L", 0, 1, Fraction(1, 2))
        y = single(1, "X", 0, 2)
        lhs = bracket(x, y)
        rhs = bracket(single(1, "M", 0, 1, 3), y) + bracket(single(1, "L", 0, 1, Fraction(1, 2)), y)
        assert (lhs - rhs).is_zero()


class TestComplexBasis:
    def test_a_plus_minus_commutator(self):
        # [A+_a, A-_b] = i eta_ab I
        got = to_complex_basis(bracket(single(1, "Ap", 0), single(1, "Am", 0)))
        assert got == AlgebraElement.single(1, gen("I"), Scalar.i(-1))
        got = to_complex_basis(bracket(single(1, "Ap", 1), single(1, "Am", 1)))
        assert got == AlgebraElement.single(1, gen("I"), Scalar.i(1))

    def test_z_with_ladder_index_placement(self):
        # change-of-basis placement: [Z_ab, A+_c] = -i eta_bc A+_a (the
        # alternative eta_ac / A+_b placement fails the Jacobi identity)
        got = to_complex_basis(bracket(single(1, "Z", 0, 1), single(1, "Ap", 1)))
        assert got == AlgebraElement.single(1, gen("Ap", 0), Scalar.i(-1))
        got = to_complex_basis(bracket(single(1, "Z", 0, 1), single(1, "Am", 0)))
        assert got == AlgebraElement.single(1, gen("Am", 1), Scalar.i(-1))

    def test_zz_line(self):
        # [Z_ab, Z_cd] = i (Z_cb eta_ad - Z_ad eta_bc)
        got = to_complex_basis(bracket(single(1, "Z", 0, 1), single(1, "Z", 1, 0)))
        want = AlgebraElement.single(1, gen("Z", 0, 0), Scalar.i(-1)) + \
            AlgebraElement.single(1, gen("Z", 1, 1), Scalar.i(-1))
        assert (got - want).is_zero()

    def test_table_gaussian_rational(self):
        # only even powers of sqrt2 survive in brackets
        table = structure_constant_table(1, "complex")
        for elem in table.values():
            for c in elem.terms.values():
                assert c.is_gaussian_rational()

    def test_zhat_traceless(self):
        n = 2
        acc = AlgebraElement.zero(n)
        for a in range(n + 1):
            acc = acc + AlgebraElement.single(n, gen("Zhat", a, a), eta(a, a))
        assert to_primitive(acc).is_zero()

    def test_u_alias_is_eta_contraction_of_z(self):
        n = 2
        acc = AlgebraElement.zero(n)
        for a in range(n + 1):
            acc = acc + AlgebraElement.single(n, gen("Z", a, a), eta(a, a))
        assert (to_primitive(acc) - to_primitive(single(n, "U"))).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("basis", ["real", "complex"])
def test_jacobi_exact(n, basis):
    assert jacobi_violations(n, basis) == []


class TestMetric:
    def test_forms_square_to_minus_identity(self):
        import numpy as np
        mt = MetricTensor(2)
        for z in (mt.zeta_canonical(), mt.zeta_hat()):
            assert np.array_equal(z @ z, -np.eye(6, dtype=int))
        e = np.diag(mt.eta_diag())
        assert np.array_equal(e @ e, np.eye(3, dtype=int))


class TestEnveloping:
    def test_casimir_beta1_form(self):
        # C_2 = eta^{ab} A+_a A-_b - I U
        c2 = casimir_element(1, 1)
        words = {w: c for w, c in c2.words.items()}
        assert words[(gen("Ap", 0), gen("Am", 0))] == Scalar.of(-1)
        assert words[(gen("Ap", 1), gen("Am", 1))] == Scalar.of(1)
        assert words[(gen("I"), gen("Z", 0, 0))] == Scalar.of(1)
        assert words[(gen("I"), gen("Z", 1, 1))] == Scalar.of(-1)

    def test_casimir_single_index_contraction(self):
        # n = 0: C_2 = -A+_0 A-_0 - I U with U = -Z_00
        c2 = casimir_element(1, 0)
        assert c2.words == {(gen("Ap", 0), gen("Am", 0)): Scalar.of(-1),
                            (gen("I"), gen("Z", 0, 0)): Scalar.of(1)}

    def test_casimir_central_substitution(self):
        class P:
            c = 2
        c2 = casimir_element(1, 1, P())
        assert all(all(g.kind != "I" for g in w) for w in c2.words)

    def test_beta_range(self):
        with pytest.raises(ValueError):
            casimir_element(3, 1)
        with pytest.raises(ValueError):
            unitary_casimir_element(0, 1)

    def test_d1_is_u(self):
        d1 = unitary_casimir_element(1, 1)
        want = {(gen("Z", 0, 0),): Scalar.of(-1), (gen("Z", 1, 1),): Scalar.of(1)}
        assert d1.words == want

    def test_d2_form(self):
        d2 = unitary_casimir_element(2, 1)
        assert d2.words[(gen("Z", 0, 1), gen("Z", 1, 0))] == Scalar.of(-1)
        assert d2.words[(gen("Z", 0, 0), gen("Z", 0, 0))] == Scalar.of(1)

    def test_c2_commutes_symbolically(self):
        n = 1
        table = structure_constant_table(n, "complex")
        c2 = casimir_element(1, n)
        for g in (gen("Z", 0, 1), gen("Ap", 0), gen("Am", 1)):
            w = EnvelopingPoly.from_word(n, (g,))
            assert c2.commutator(w).normal_order(table).is_zero()

    @pytest.mark.parametrize("beta,alpha", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_d_commutes_with_casimirs(self, beta, alpha):
        n = 1
        table = structure_constant_table(n, "complex")
        d = unitary_casimir_element(beta, n)
        c = casimir_element(alpha, n)
        assert d.commutator(c).normal_order(table).is_zero()
        ident = EnvelopingPoly.from_word(n, (gen("I"),))
        assert d.commutator(ident).normal_order(table).is_zero()


class TestPoincareQuads:
    @pytest.mark.parametrize("sel,names", [
        ("velocity-EP", {"J", "K", "E", "P"}),
        ("velocity-TQ", {"J", "K", "T", "Q"}),
        ("force-EQ", {"J", "N", "E", "Q"}),
        ("force-TP", {"J", "N", "T", "P"}),
    ])
    def test_generator_sets(self, sel, names):
        got = {g.kind for g in poincare_subalgebra(sel)}
        assert got == names

    @pytest.mark.parametrize("sel", ["velocity-EP", "velocity-TQ", "force-EQ", "force-TP"])
    def test_closure(self, sel):
        assert poincare_closure_defect(sel) == []

    def test_bad_selector(self):
        with pytest.raises(ValueError):
            poincare_subalgebra("nope")


def test_structure_table_export_lines():
    lines = structure_table_lines(1, "real")
    assert "X(0) Y(0) -1 I" in lines
    assert all(len(line.split()) == 4 for line in lines)


def test_table_antisymmetric_lookup():
    table = structure_constant_table(1, "real")
    fwd = table_lookup(table, gen("X", 0), gen("Y", 0), 1)
    bwd = table_lookup(table, gen("Y", 0), gen("X", 0), 1)
    assert (fwd + bwd).is_zero()


def test_generator_listing():
    gens = generators(1, "complex")
    kinds = [g.kind for g in gens]
    assert kinds.count("Z") == 4 and kinds.count("Ap") == 2 and "I" in kinds
    with pytest.raises(ValueError):
        generators(1, "other")
