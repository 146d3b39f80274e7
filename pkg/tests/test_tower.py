import numpy as np
import pytest

from nscurve import tower as tw
from nscurve.errors import LevelOverflow
from nscurve.tower import KCoordinates, PrimeScalar, TowerScalar

from conftest import rand_nonzero_scalar, rand_poly, rand_scalar, scalars

one, zero, two, t, r = scalars()


class TestPrimeScalar:
    def test_arithmetic(self):
        a = PrimeScalar(2)
        b = PrimeScalar(2)
        assert (a + b).value == 1
        assert (a * b).value == 1
        assert (a - b).value == 0
        assert (a / b).value == 1
        assert a.inverse().value == 2

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            PrimeScalar(1, p=4)

    def test_sqrt(self):
        assert PrimeScalar(1).sqrt().value == 1
        assert PrimeScalar(2).sqrt() is None
        assert PrimeScalar(0).sqrt().value == 0


class TestLift:
    def test_t_to_level_one(self):
        assert t.lift(1) == r**3
        assert t.lift(1).level == 1

    def test_identity(self):
        assert one.lift(2) == one

    def test_fraction(self):
        assert ((t + one) / t).lift(1) == (r**3 + one.lift(1)) / r**3

    def test_lift_preserves_minimal_level(self, rng):
        for _ in range(30):
            x = rand_scalar(rng, level=rng.randrange(2))
            lv = x.level_of()
            assert x.lift(x.level + 1).level_of() == lv

    def test_lift_then_normalize_is_identity(self, rng):
        for _ in range(30):
            x = rand_scalar(rng, level=1)
            assert x.lift(2).normalized() == x

    def test_level_overflow(self):
        with pytest.raises(LevelOverflow):
            t.lift(tw.get_max_level() + 1)


class TestPthRoot:
    def test_examples(self):
        assert tw.p_th_root(t) == r
        assert tw.p_th_root(t).level == 1
        assert tw.p_th_root(t**2 + two * t + one) == r**2 + two * r + one
        assert tw.p_th_root(one) == one

    def test_cube_roundtrip_random(self, rng):
        # 500 random scalars per level m in {0, 1, 2}
        for level in (0, 1, 2):
            for _ in range(500):
                x = rand_scalar(rng, level=level, max_deg=3)
                y = tw.p_th_root(x)
                assert y**3 == x

    def test_overflow(self):
        deep = TowerScalar.generator(tw.get_max_level())
        with pytest.raises(LevelOverflow):
            tw.p_th_root(deep)


class TestLevelOf:
    def test_examples(self):
        assert tw.level_of(t.lift(2)) == 0
        assert tw.level_of(r) == 1
        # d/dr(r^3 + r) = 1 != 0, so the element genuinely needs level 1
        assert tw.level_of(r**3 + r) == 1

    def test_matches_derivative_test(self, rng):
        # derive(x) == 0 at stored level iff the element lives lower
        for _ in range(60):
            x = rand_scalar(rng, level=1)
            if x.is_zero:
                continue
            assert tw.derive(x).is_zero == (x.level_of() < 1)


class TestDerive:
    def test_examples(self):
        assert tw.derive(r) == one
        assert tw.derive(r**3).is_zero
        assert tw.derive(one / r) == two / r**2

    def test_leibniz(self, rng):
        for _ in range(40):
            x = rand_scalar(rng, level=1)
            y = rand_scalar(rng, level=1)
            lhs = tw.derive(x * y)
            rhs = tw.derive(x) * y + x * tw.derive(y)
            assert lhs == rhs


class TestKCoordinates:
    def test_examples(self):
        kc = tw.k_coordinates(r, 1)
        assert [str(c) for c in kc.coords] == ["0", "1", "0"]
        kc = tw.k_coordinates(t.lift(1) + r**2, 1)
        assert [str(c) for c in kc.coords] == ["t", "0", "1"]
        # 1/r = r^2/t
        kc = tw.k_coordinates(one.lift(1) / r, 1)
        assert [str(c) for c in kc.coords] == ["0", "0", "1/t"]

    def test_roundtrip(self, rng):
        for level in (1, 2):
            for _ in range(40):
                x = rand_scalar(rng, level=level, max_deg=5)
                kc = tw.k_coordinates(x, level)
                assert isinstance(kc, KCoordinates)
                assert kc.reconstruct() == x
                assert all(c.level_of() == 0 for c in kc.coords)


class TestSquareRoot:
    def test_examples(self):
        assert list(tw.poly_square_root([1, 2, 1])) == [1, 1]  # (t+1)^2
        assert tw.poly_square_root([0, 1]) is None  # odd degree
        # t^4 + t^2 = t^2 (t^2 + 1); t^2+1 is irreducible, not a square
        assert tw.poly_square_root([0, 0, 1, 0, 1]) is None

    def test_square_roundtrip(self, rng):
        import numpy as np

        from nscurve import fppoly as fp

        hits = 0
        for _ in range(200):
            g = np.array(rand_poly(rng, 5, nonzero=True), dtype=np.int64)
            g = fp.poly_trim(g % 3)
            if fp.is_zero(g):
                continue
            sq = fp.poly_mul(g, g, 3)
            root = tw.poly_square_root(sq)
            assert root is not None
            # canonical root: agrees with g up to overall sign
            assert fp.poly_eq(root, g) or fp.poly_eq(root, fp.poly_neg(g, 3))
            hits += 1
        assert hits > 150

    def test_nonsquare_factor(self, rng):
        import numpy as np

        from nscurve import fppoly as fp

        irr = np.array([1, 0, 1], dtype=np.int64)  # t^2 + 1, irreducible mod 3
        for _ in range(40):
            g = fp.poly_trim(np.array(rand_poly(rng, 4, nonzero=True), dtype=np.int64))
            if fp.is_zero(g):
                continue
            bad = fp.poly_mul(fp.poly_mul(g, g, 3), irr, 3)
            assert tw.poly_square_root(bad) is None

    def test_scalar_square_root(self, rng):
        for _ in range(40):
            x = rand_nonzero_scalar(rng, level=1)
            got = tw.square_root(x * x)
            assert got is not None and got * got == x * x
        assert tw.square_root(t) is None


class TestRowEchelon:
    def test_identity(self):
        m = [[one, zero], [zero, one]]
        rref, pivots = tw.row_echelon(m)
        assert pivots == [0, 1]
        assert rref[0] == [one, zero] and rref[1] == [zero, one]

    def test_proportional_rows(self):
        _, pivots = tw.row_echelon([[t, t], [one, one]])
        assert pivots == [0]

    def test_level_one_rank(self):
        # independent oracle: the determinant r^2 - 1 is nonzero
        det = r * r - one
        assert not det.is_zero
        assert tw.rank([[r, one], [one, r]]) == 2

    def test_rank_invariant_under_row_permutation(self, rng):
        for _ in range(20):
            rows = [[rand_scalar(rng, level=1, max_deg=2) for _ in range(4)] for _ in range(3)]
            base = tw.rank(rows)
            perm = [rows[1], rows[2], rows[0]]
            assert tw.rank(perm) == base

    def test_nullspace_members(self, rng):
        rows = [[one, t, zero], [zero, zero, one]]
        basis = tw.nullspace(rows)
        assert len(basis) == 1
        vec = basis[0]
        for row in rows:
            acc = TowerScalar.zero()
            for a, b in zip(row, vec):
                acc = acc + a * b
            assert acc.is_zero

    def test_pivot_order_parameter(self):
        # prescribing the column order changes which columns carry pivots
        m = [[one, one], [one, one]]
        _, pivots = tw.row_echelon(m, pivot_order=[1, 0])
        assert pivots == [1]
        rows = [[zero, one, t], [one, zero, one]]
        _, pivots = tw.row_echelon(rows, pivot_order=[2, 1, 0])
        assert pivots == [2, 1]

    def test_in_row_space(self):
        rref, pivots = tw.row_echelon([[one, t], [zero, zero]])
        assert tw.in_row_space(rref, pivots, [two, two * t])
        assert not tw.in_row_space(rref, pivots, [zero, one])


class TestGeneralCharacteristic:
    def test_p_five_tower(self):
        p = 5
        t5 = TowerScalar.generator(0, p)
        r5 = TowerScalar.generator(1, p)
        assert tw.p_th_root(t5) == r5
        assert tw.p_th_root(t5) ** 5 == t5
        assert tw.derive(r5**5).is_zero
        kc = tw.k_coordinates(r5**3 + t5.lift(1), 1)
        assert len(kc.coords) == 5
        assert kc.reconstruct() == r5**3 + t5.lift(1)

    def test_mixed_characteristics_rejected(self):
        with pytest.raises(ValueError):
            TowerScalar.generator(0, 5) + t


class TestScalarBasics:
    def test_equality_across_levels(self):
        assert t == t.lift(2)
        assert hash(t) == hash(t.lift(2))

    def test_str_roundtrip_forms(self):
        assert str((t + one) / t) == "(t + 1)/t"
        assert str(two * r**2 + r) == "2*r^2 + r"

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            one / zero

    def test_pow_negative(self):
        assert t**-2 == one / t**2
