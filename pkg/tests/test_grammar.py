import pytest

from nscurve import grammar as gr
from nscurve.errors import ParseError
from nscurve.plane import ProjPoint

from conftest import rand_hompoly, rand_scalar, scalars, xyz

one, zero, two, t, r = scalars()
x, y, z = xyz()


class TestScalars:
    def test_basic(self):
        assert gr.parse_scalar("(t^2+1)/(t+2)") == (t**2 + one) / (t + two)
        assert gr.parse_scalar("r^2 + t*r") == r**2 + t.lift(1) * r
        assert gr.parse_scalar("2") == two
        assert gr.parse_scalar("-1") == two

    def test_level_header_meaning(self):
        assert gr.parse_scalar("r", level=0) == t
        assert gr.parse_scalar("r^3", level=1) == t

    def test_division_by_zero(self):
        with pytest.raises(ParseError):
            gr.parse_scalar("1/(t - t)")

    def test_no_variables_in_scalars(self):
        with pytest.raises(ParseError):
            gr.parse_scalar("x + t")

    def test_roundtrip_printer(self, rng):
        for level in (0, 1):
            for _ in range(40):
                s = rand_scalar(rng, level=level)
                assert gr.parse_scalar(str(s), level=max(level, 1)) == s


class TestPolynomials:
    def test_curve(self):
        assert gr.parse_poly("y^2*z - x^3") == y * y * z - x**3

    def test_coefficients(self):
        f = gr.parse_poly("t*x^3*z + x^2*y^2")
        assert f == (x**3 * z).scale(t) + x * x * y * y

    def test_homogeneity_enforced(self):
        with pytest.raises(ParseError):
            gr.parse_poly("x^2 + y")

    def test_zero_rejected(self):
        with pytest.raises(ParseError):
            gr.parse_poly("x - x")

    def test_division_by_polynomial_rejected(self):
        with pytest.raises(ParseError):
            gr.parse_poly("x / y")

    def test_roundtrip_printer(self, rng):
        for _ in range(25):
            f = rand_hompoly(rng, rng.randrange(1, 5), level=rng.randrange(2))
            assert gr.parse_poly(str(f)) == f

    def test_error_position(self):
        with pytest.raises(ParseError) as err:
            gr.parse_poly("x^2 + $")
        assert "line 1" in str(err.value)


class TestPoints:
    def test_basic(self):
        assert gr.parse_point("(0:0:1)") == ProjPoint(zero, zero, one)
        assert gr.parse_point("(0:r:1)") == ProjPoint(zero, r, one)
        assert gr.parse_point("((t+1)/t:1:0)") == ProjPoint((t + one) / t, one, zero)

    def test_zero_rejected(self):
        with pytest.raises(ParseError):
            gr.parse_point("(0:0:0)")

    def test_shape_required(self):
        with pytest.raises(ParseError):
            gr.parse_point("(1:2)")


class TestFiles:
    def test_header_and_generators(self):
        text = "# an ideal\nlevel 1\nx + r*z\ny^2 - x*z  # trailing comment\n"
        level, polys = gr.parse_generator_file(text)
        assert level == 1
        assert polys[0] == x + z.scale(r)
        assert polys[1] == y * y - x * z

    def test_header_must_come_first(self):
        with pytest.raises(ParseError):
            gr.parse_generator_file("x\nlevel 1\n")

    def test_default_level_one(self):
        level, polys = gr.parse_generator_file("x + r*z\n")
        assert level == 1 and polys[0] == x + z.scale(r)
