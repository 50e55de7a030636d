#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "testutil.hpp"
#include "ybp/errors.hpp"
#include "ybp/expr.hpp"
#include "ybp/linalg.hpp"
#include "ybp/multipoly.hpp"
#include "ybp/rat.hpp"

using namespace ybp;

namespace {

// Independent multiplication oracle: dense mixed-radix exponent boxes and a
// full convolution over every cell, no sparse-term shortcuts.
MultiPoly dense_mul(const MultiPoly& a, const MultiPoly& b) {
  const int nv = static_cast<int>(a.vars().size());
  std::vector<unsigned> abox(nv, 1), bbox(nv, 1);
  for (const auto& [e, c] : a.terms())
    for (int i = 0; i < nv; ++i) abox[i] = std::max(abox[i], e[i] + 1);
  for (const auto& [e, c] : b.terms())
    for (int i = 0; i < nv; ++i) bbox[i] = std::max(bbox[i], e[i] + 1);

  auto cells = [&](const std::vector<unsigned>& box) {
    std::size_t s = 1;
    for (unsigned u : box) s *= u;
    return s;
  };
  auto offset = [&](const std::vector<unsigned>& box, const Exponents& e) {
    std::size_t o = 0;
    for (int i = 0; i < nv; ++i) o = o * box[i] + e[i];
    return o;
  };
  auto decode = [&](const std::vector<unsigned>& box, std::size_t o) {
    Exponents e(nv);
    for (int i = nv - 1; i >= 0; --i) {
      e[i] = static_cast<unsigned>(o % box[i]);
      o /= box[i];
    }
    return e;
  };

  std::vector<Rat> da(cells(abox)), db(cells(bbox));
  for (const auto& [e, c] : a.terms()) da[offset(abox, e)] = c;
  for (const auto& [e, c] : b.terms()) db[offset(bbox, e)] = c;

  MultiPoly out(a.vars_ptr());
  for (std::size_t i = 0; i < da.size(); ++i)
    for (std::size_t j = 0; j < db.size(); ++j) {
      if (da[i].is_zero() || db[j].is_zero()) continue;
      Exponents ea = decode(abox, i), eb = decode(bbox, j), e(nv);
      for (int k = 0; k < nv; ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, da[i] * db[j]);
    }
  return out;
}

VarListPtr xy() { return std::make_shared<const VarList>(VarList{"x", "y"}); }
VarListPtr xyz() { return std::make_shared<const VarList>(VarList{"x", "y", "z"}); }

}  // namespace

TEST_CASE("rationals canonicalize and print in lowest terms") {
  CHECK(Rat(2, 6).str() == "1/3");
  CHECK(Rat(-4, 6).str() == "-2/3");
  CHECK(Rat(4, -6).str() == "-2/3");
  CHECK(Rat(0, 5).str() == "0");
  CHECK(Rat::parse("12/8").str() == "3/2");
  CHECK(Rat::parse("-7").str() == "-7");
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(3, 4) * Rat(2, 3) == Rat(1, 2));
  CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
  CHECK(Rat(-5).abs() == Rat(5));
  CHECK(Rat(2, 3).pow(3) == Rat(8, 27));
  CHECK(Rat(7).sign() == 1);
  CHECK(Rat(-7, 9).sign() == -1);
  CHECK(Rat().is_zero());
}

TEST_CASE("sparse product agrees with the dense convolution oracle") {
  for (unsigned seed = 1; seed <= 40; ++seed) {
    auto g = ybptest::rng(seed);
    auto vars = (seed % 2) ? xy() : xyz();
    MultiPoly a = ybptest::rand_poly(g, vars, 5, 3);
    MultiPoly b = ybptest::rand_poly(g, vars, 5, 3);
    CHECK(a * b == dense_mul(a, b));
  }
}

TEST_CASE("polynomials form a commutative ring") {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto g = ybptest::rng(100 + seed);
    auto vars = xyz();
    MultiPoly a = ybptest::rand_poly(g, vars);
    MultiPoly b = ybptest::rand_poly(g, vars);
    MultiPoly c = ybptest::rand_poly(g, vars);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == MultiPoly(vars));
    CHECK(a * MultiPoly::constant(vars, Rat(1)) == a);
    CHECK((a * MultiPoly(vars)).is_zero());
  }
}

TEST_CASE("differentiation is linear and satisfies the Leibniz rule") {
  auto vars = xyz();
  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto g = ybptest::rng(200 + seed);
    MultiPoly a = ybptest::rand_poly(g, vars, 5, 3);
    MultiPoly b = ybptest::rand_poly(g, vars, 5, 3);
    for (int i = 0; i < 3; ++i) {
      CHECK((a + b).diff(i) == a.diff(i) + b.diff(i));
      CHECK((a * b).diff(i) == a.diff(i) * b + a * b.diff(i));
      for (int j = 0; j < 3; ++j) CHECK(a.diff(i).diff(j) == a.diff(j).diff(i));
    }
  }
  MultiPoly x = MultiPoly::variable(vars, "x");
  CHECK(x.diff("x") == MultiPoly::constant(vars, Rat(1)));
  CHECK(x.diff("y").is_zero());
  CHECK((x * x * x).diff(0) == Rat(3) * x * x);
}

TEST_CASE("evaluation is a ring homomorphism") {
  auto vars = xyz();
  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto g = ybptest::rng(300 + seed);
    MultiPoly a = ybptest::rand_poly(g, vars);
    MultiPoly b = ybptest::rand_poly(g, vars);
    std::vector<Rat> pt = ybptest::rand_vec(g, 3);
    CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
    CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
  }
  MultiPoly p = parse_poly("x^2 + 2*x*y - 3", vars);
  CHECK(p.eval({Rat(2), Rat(1, 2), Rat(0)}) == Rat(3));
  CHECK(p.eval({{"x", Rat(2)}, {"y", Rat(1, 2)}, {"z", Rat(0)}}) == Rat(3));
}

TEST_CASE("expression grammar accepts the documented forms") {
  auto vars = xy();
  MultiPoly x = MultiPoly::variable(vars, "x");
  MultiPoly y = MultiPoly::variable(vars, "y");
  auto c = [&](const Rat& r) { return MultiPoly::constant(vars, r); };
  CHECK(parse_poly("0", vars).is_zero());
  CHECK(parse_poly("-3/2", vars) == c(Rat(-3, 2)));
  CHECK(parse_poly("x", vars) == x);
  CHECK(parse_poly("2*x^2 + 1/3*x*y - y^3", vars) ==
        Rat(2) * x * x + Rat(1, 3) * x * y - y * y * y);
  CHECK(parse_poly("(x + y)^2", vars) == x * x + Rat(2) * x * y + y * y);
  CHECK(parse_poly("-x^2", vars) == -(x * x));
  CHECK(parse_poly("-x * -y", vars) == x * y);
  CHECK(parse_poly("  x\t+ 1 ", vars) == x + c(Rat(1)));
  CHECK(parse_poly("x - -2", vars) == x + c(Rat(2)));
  CHECK(parse_poly("x^0", vars) == c(Rat(1)));
}

TEST_CASE("expression grammar rejects malformed input with positions") {
  auto vars = xy();
  auto expect_error = [&](const std::string& text, const std::string& code,
                          const std::string& fragment) {
    try {
      parse_poly(text, vars);
      FAIL_CHECK("no error for '" << text << "'");
    } catch (const InputError& e) {
      CHECK(e.code == code);
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_error("2x", errcode::expr, "position 1");
  expect_error("x +", errcode::expr, "unexpected end");
  expect_error("(x", errcode::expr, "expected ')'");
  expect_error("x^-1", errcode::expr, "exponent");
  expect_error("1/0", errcode::expr, "denominator");
  expect_error("x y", errcode::expr, "position 2");
  expect_error("z", errcode::unknown_identifier, "'z'");
  expect_error("", errcode::expr, "unexpected end");
}

TEST_CASE("rendering round-trips through the grammar") {
  CHECK(MultiPoly(xy()).str() == "0");
  auto vars = xyz();
  MultiPoly lead = parse_poly("x^2 + x + 1", vars);
  CHECK(lead.str() == "x^2 + x + 1");
  CHECK(parse_poly("-1*x*y + 2", vars).str() == "-1*x*y + 2");
  for (unsigned seed = 1; seed <= 30; ++seed) {
    auto g = ybptest::rng(400 + seed);
    MultiPoly p = ybptest::rand_poly(g, vars, 6, 3);
    CHECK(parse_poly(p.str(), vars) == p);
  }
}

TEST_CASE("exact division returns quotients exactly when they exist") {
  auto vars = xy();
  MultiPoly x = MultiPoly::variable(vars, "x");
  MultiPoly y = MultiPoly::variable(vars, "y");
  auto q = (x * x - y * y).divided_exactly_by(x - y);
  REQUIRE(q.has_value());
  CHECK(*q == x + y);
  CHECK(!x.divided_exactly_by(y).has_value());
  CHECK(!(x * y + MultiPoly::constant(vars, Rat(1))).divided_exactly_by(x).has_value());
  CHECK_THROWS_AS((void)x.divided_exactly_by(MultiPoly(vars)), InputError);
  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto g = ybptest::rng(500 + seed);
    MultiPoly a = ybptest::rand_poly(g, vars, 4, 2);
    MultiPoly b = ybptest::rand_poly(g, vars, 4, 2);
    if (b.is_zero()) continue;
    auto quot = (a * b).divided_exactly_by(b);
    REQUIRE(quot.has_value());
    CHECK(*quot == a);
  }
}

TEST_CASE("total degree and constant queries") {
  auto vars = xy();
  CHECK(MultiPoly(vars).total_degree() == -1);
  CHECK(parse_poly("5", vars).total_degree() == 0);
  CHECK(parse_poly("x^2*y + x", vars).total_degree() == 3);
  CHECK(parse_poly("7/2", vars).is_constant());
  CHECK(parse_poly("7/2", vars).constant_value() == Rat(7, 2));
  CHECK(!parse_poly("x", vars).is_constant());
  CHECK(parse_poly("x + 3", vars).constant_value() == Rat(3));
}

// ---- exact linear algebra ---------------------------------------------------

TEST_CASE("inverse, determinant and solve are exact on random invertible matrices") {
  for (unsigned seed = 1; seed <= 15; ++seed) {
    auto g = ybptest::rng(600 + seed);
    int n = 2 + static_cast<int>(seed % 4);
    RatMat m = ybptest::rand_invertible(g, n);
    auto inv = mat_inverse(m);
    REQUIRE(inv.has_value());
    CHECK(mat_mul(m, *inv) == mat_identity(n));
    CHECK(mat_mul(*inv, m) == mat_identity(n));
    CHECK(mat_det(m) * mat_det(*inv) == Rat(1));
    CHECK(mat_rank(m) == n);
    RatVec b = ybptest::rand_vec(g, n);
    auto x = solve_lowest_pivot(m, b);
    REQUIRE(x.has_value());
    CHECK(mat_apply(m, *x) == b);
  }
}

TEST_CASE("rank, rref and span bookkeeping on singular matrices") {
  RatMat m = {{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}, {Rat(0), Rat(1), Rat(1)}};
  CHECK(mat_rank(m) == 2);
  CHECK(mat_det(m).is_zero());
  CHECK(!mat_inverse(m).has_value());

  auto basis = column_space_basis(m);
  CHECK(basis.size() == 2);
  for (int j = 0; j < 3; ++j) {
    RatVec col = {m[0][j], m[1][j], m[2][j]};
    CHECK(in_span(basis, col));
    auto coords = coordinates_in(basis, col);
    REQUIRE(coords.has_value());
    RatVec rebuilt(3, Rat(0));
    for (std::size_t a = 0; a < basis.size(); ++a)
      rebuilt = vec_add(rebuilt, vec_scale(basis[a], (*coords)[a]));
    CHECK(rebuilt == col);
  }
  CHECK(!in_span(basis, RatVec{Rat(1), Rat(0), Rat(0)}));

  // Inconsistent system has no solution; consistent underdetermined one does.
  RatMat sing = {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK(!solve_lowest_pivot(sing, RatVec{Rat(0), Rat(1)}).has_value());
  auto sol = solve_lowest_pivot(sing, RatVec{Rat(2), Rat(2)});
  REQUIRE(sol.has_value());
  CHECK(mat_apply(sing, *sol) == RatVec{Rat(2), Rat(2)});
  // Lowest-index pivoting zeroes the free variable.
  CHECK(*sol == RatVec{Rat(2), Rat(0)});
}

TEST_CASE("column space basis is canonical under column operations") {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    auto g = ybptest::rng(700 + seed);
    RatMat m = ybptest::rand_invertible(g, 4, 6);
    m[3] = m[2];  // force rank drop in a controlled way
    RatMat shuffled = m;
    std::swap(shuffled[0], shuffled[1]);  // row ops change the space; column ops must not
    for (auto& row : shuffled) std::swap(row[0], row[2]);
    std::swap(shuffled[0], shuffled[1]);  // undo the row swap, keep column swap
    CHECK(column_space_basis(m) == column_space_basis(shuffled));
  }
}

TEST_CASE("antisymmetry recognizer") {
  auto g = ybptest::rng(801);
  RatMat a = ybptest::rand_antisymmetric(g, 5);
  CHECK(mat_is_antisymmetric(a));
  a[2][3] = a[2][3] + Rat(1);
  CHECK(!mat_is_antisymmetric(a));
  RatMat nonsquare = {{Rat(0), Rat(1)}};
  CHECK(!mat_is_antisymmetric(nonsquare));
}
