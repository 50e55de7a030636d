#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "testutil.hpp"
#include "ybp/errors.hpp"
#include "ybp/forms.hpp"

using namespace ybp;

namespace {

std::vector<IdxTuple> increasing_tuples(int n, int k) {
  std::vector<IdxTuple> out;
  IdxTuple cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

KForm rand_form(std::mt19937& g, const Chart& ch, int degree, int terms = 3,
                unsigned max_deg = 2) {
  KForm s(ch, degree);
  for (const auto& idx : increasing_tuples(ch.dim(), degree))
    s.add_term(idx, ybptest::rand_poly(g, ch.vars(), terms, max_deg));
  return s;
}

VectorField rand_field(std::mt19937& g, const Chart& ch, int terms = 3,
                       unsigned max_deg = 2) {
  std::vector<MultiPoly> comps;
  for (int i = 0; i < ch.dim(); ++i)
    comps.push_back(ybptest::rand_poly(g, ch.vars(), terms, max_deg));
  return VectorField(ch, std::move(comps));
}

// Independent Lie-derivative oracle: the Leibniz expansion over each stored
// term, replacing one coframe slot at a time by the differential of the
// matching field component. The production code uses Cartan's formula.
KForm lie_oracle(const VectorField& x, const KForm& s) {
  const Chart& ch = x.chart();
  if (s.degree() == 0) {
    MultiPoly f = s.is_zero() ? MultiPoly(ch.vars()) : s.comps().begin()->second;
    return KForm::from_function(ch, x.apply(f));
  }
  KForm out(ch, s.degree());
  for (const auto& [idx, f] : s.comps()) {
    out.add_term(idx, x.apply(f));
    for (std::size_t m = 0; m < idx.size(); ++m) {
      KForm term = KForm::from_function(ch, f);
      for (std::size_t t = 0; t < idx.size(); ++t)
        term = wedge(term, t == m ? exterior_d(ch, x.comp(idx[t]))
                                  : KForm::d_coord(ch, idx[t]));
      out += term;
    }
  }
  return out;
}

Chart chart2() { return Chart({"x", "y"}); }
Chart chart3() { return Chart({"x", "y", "z"}); }

}  // namespace

TEST_CASE("field bracket: frozen value, antisymmetry and Jacobi") {
  Chart ch = chart2();
  VectorField dx = VectorField::coordinate(ch, 0);
  MultiPoly x = MultiPoly::variable(ch.vars(), 0);
  VectorField xdx = dx.scaled_by(x);
  CHECK(vf_bracket(dx, xdx) == dx);
  for (unsigned seed = 1; seed <= 12; ++seed) {
    auto g = ybptest::rng(2000 + seed);
    Chart c3 = chart3();
    VectorField a = rand_field(g, c3), b = rand_field(g, c3), c = rand_field(g, c3);
    CHECK(vf_bracket(a, b) == -vf_bracket(b, a));
    VectorField jac = vf_bracket(vf_bracket(a, b), c) + vf_bracket(vf_bracket(b, c), a) +
                      vf_bracket(vf_bracket(c, a), b);
    CHECK(jac.is_zero());
  }
}

TEST_CASE("derivation property of fields on products of functions") {
  Chart ch = chart3();
  for (unsigned seed = 1; seed <= 10; ++seed) {
    auto g = ybptest::rng(2100 + seed);
    VectorField x = rand_field(g, ch);
    MultiPoly f = ybptest::rand_poly(g, ch.vars());
    MultiPoly h = ybptest::rand_poly(g, ch.vars());
    CHECK(x.apply(f * h) == x.apply(f) * h + f * x.apply(h));
  }
}

TEST_CASE("exterior derivative squares to zero and obeys the graded Leibniz rule") {
  Chart ch = chart3();
  for (unsigned seed = 1; seed <= 12; ++seed) {
    auto g = ybptest::rng(2200 + seed);
    for (int p = 0; p <= 2; ++p) {
      KForm s = rand_form(g, ch, p);
      CHECK(exterior_d(exterior_d(s)).is_zero());
      for (int q = 0; p + q <= 3; ++q) {
        KForm t = rand_form(g, ch, q);
        KForm lhs = exterior_d(wedge(s, t));
        KForm rhs = wedge(exterior_d(s), t) +
                    (p % 2 ? -wedge(s, exterior_d(t)) : wedge(s, exterior_d(t)));
        CHECK(lhs == rhs);
      }
    }
  }
  MultiPoly xy = MultiPoly::variable(ch.vars(), 0) * MultiPoly::variable(ch.vars(), 1);
  KForm dxy = exterior_d(ch, xy);
  KForm expected = KForm::covector(ch, {MultiPoly::variable(ch.vars(), 1),
                                        MultiPoly::variable(ch.vars(), 0),
                                        MultiPoly(ch.vars())});
  CHECK(dxy == expected);
}

TEST_CASE("wedge is graded commutative and associative") {
  Chart ch = chart3();
  for (unsigned seed = 1; seed <= 12; ++seed) {
    auto g = ybptest::rng(2300 + seed);
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; p + q <= 3; ++q) {
        KForm s = rand_form(g, ch, p);
        KForm t = rand_form(g, ch, q);
        KForm st = wedge(s, t);
        KForm ts = wedge(t, s);
        CHECK(st == ((p * q) % 2 ? -ts : ts));
        for (int rdeg = 0; p + q + rdeg <= 3; ++rdeg) {
          KForm r = rand_form(g, ch, rdeg);
          CHECK(wedge(wedge(s, t), r) == wedge(s, wedge(t, r)));
        }
      }
  }
  KForm dx = KForm::d_coord(ch, 0);
  CHECK(wedge(dx, dx).is_zero());
}

TEST_CASE("interior product conventions are pinned down") {
  Chart ch = chart3();
  VectorField dX = VectorField::coordinate(ch, 0);
  VectorField dY = VectorField::coordinate(ch, 1);
  KForm dxdy = wedge(KForm::d_coord(ch, 0), KForm::d_coord(ch, 1));

  // single contraction: position sign (-1)^m
  CHECK(interior_product(dX, dxdy) == KForm::d_coord(ch, 1));
  CHECK(interior_product(dY, dxdy) == -KForm::d_coord(ch, 0));

  // bivector contraction: the lower index acts first, i_{X^Y} = i_Y o i_X
  KMultivector dxy(ch, 2);
  dxy.add_term({0, 1}, MultiPoly::constant(ch.vars(), Rat(1)));
  KForm one = interior_product(dxy, dxdy);
  CHECK(one == KForm::from_function(ch, MultiPoly::constant(ch.vars(), Rat(1))));

  KForm vol = wedge(dxdy, KForm::d_coord(ch, 2));
  CHECK(interior_product(dxy, vol) == KForm::d_coord(ch, 2));

  // degree errors are refusals
  KForm f0 = KForm::from_function(ch, MultiPoly::variable(ch.vars(), 0));
  CHECK_THROWS_AS(interior_product(dX, f0), PreconditionError);
  CHECK_THROWS_AS(interior_product(dxy, KForm::d_coord(ch, 0)), PreconditionError);

  // degree-0 multivector acts by scaling
  KMultivector scal(ch, 0);
  scal.add_term({}, MultiPoly::variable(ch.vars(), 2));
  CHECK(interior_product(scal, dxdy) == dxdy.scaled_by(MultiPoly::variable(ch.vars(), 2)));
}

TEST_CASE("interior product is an antiderivation") {
  Chart ch = chart3();
  for (unsigned seed = 1; seed <= 12; ++seed) {
    auto g = ybptest::rng(2400 + seed);
    VectorField x = rand_field(g, ch);
    for (int p = 1; p <= 2; ++p)
      for (int q = 1; p + q <= 3; ++q) {
        KForm s = rand_form(g, ch, p);
        KForm t = rand_form(g, ch, q);
        KForm lhs = interior_product(x, wedge(s, t));
        KForm rhs = wedge(interior_product(x, s), t) +
                    (p % 2 ? -wedge(s, interior_product(x, t))
                           : wedge(s, interior_product(x, t)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("Cartan formula agrees with the Leibniz expansion oracle") {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto g = ybptest::rng(2500 + seed);
    Chart ch = (seed % 2) ? chart3() : chart2();
    VectorField x = rand_field(g, ch);
    for (int p = 0; p <= ch.dim(); ++p) {
      KForm s = rand_form(g, ch, p);
      CHECK(lie_derivative(x, s) == lie_oracle(x, s));
    }
  }
}

TEST_CASE("Lie derivative commutes into brackets: L_[X,Y] = L_X L_Y - L_Y L_X") {
  Chart ch = chart2();
  for (unsigned seed = 1; seed <= 10; ++seed) {
    auto g = ybptest::rng(2600 + seed);
    VectorField x = rand_field(g, ch, 2, 1);
    VectorField y = rand_field(g, ch, 2, 1);
    for (int p = 0; p <= 2; ++p) {
      KForm s = rand_form(g, ch, p);
      KForm lhs = lie_derivative(vf_bracket(x, y), s);
      KForm rhs = lie_derivative(x, lie_derivative(y, s)) -
                  lie_derivative(y, lie_derivative(x, s));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("contraction of a wedge pair chains through derivatives and the bracket") {
  // d(i_{X^Y} s) = i_{[Y,X]} s + i_X L_Y s - i_Y L_X s + i_{X^Y} ds,
  // with the last term dropping for top-degree s.
  Chart ch = chart3();
  for (unsigned seed = 1; seed <= 12; ++seed) {
    auto g = ybptest::rng(2700 + seed);
    VectorField x = rand_field(g, ch, 2, 1);
    VectorField y = rand_field(g, ch, 2, 1);
    KMultivector xy = wedge(KMultivector::from_field(x), KMultivector::from_field(y));
    for (int p = 2; p <= 3; ++p) {
      KForm s = rand_form(g, ch, p);
      KForm lhs = exterior_d(interior_product(xy, s));
      KForm rhs = interior_product(KMultivector::from_field(vf_bracket(y, x)), s) +
                  interior_product(x, lie_derivative(y, s)) -
                  interior_product(y, lie_derivative(x, s)) +
                  interior_product(xy, exterior_d(s));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("form components are alternating and validated") {
  Chart ch = chart3();
  KForm s(ch, 2);
  MultiPoly f = MultiPoly::variable(ch.vars(), 0);
  s.add_term({1, 0}, f);  // unsorted insert lands with a sign
  CHECK(s.comp({0, 1}) == -f);
  CHECK(s.comp({1, 0}) == f);
  s.add_term({0, 1}, f);  // cancels
  CHECK(s.is_zero());
  s.add_term({2, 2}, f);  // repeated index contributes nothing
  CHECK(s.is_zero());
  CHECK_THROWS_AS(s.add_term({0, 3}, f), PreconditionError);
  CHECK_THROWS_AS(s.add_term({0}, f), PreconditionError);
}

TEST_CASE("rendering of fields and forms is stable") {
  Chart ch = chart3();
  CHECK(KForm::d_coord(ch, 0).str() == "(1)*dx");
  CHECK(wedge(KForm::d_coord(ch, 0), KForm::d_coord(ch, 1)).str() == "(1)*dx^dy");
  CHECK(KForm(ch, 1).str() == "0");
  VectorField v(ch, {MultiPoly::variable(ch.vars(), 1), MultiPoly(ch.vars()),
                     MultiPoly::constant(ch.vars(), Rat(2))});
  CHECK(v.str() == "(y)*d/dx + (2)*d/dz");
  KForm cov = KForm::covector(ch, {MultiPoly::variable(ch.vars(), 0),
                                   MultiPoly::constant(ch.vars(), Rat(-1)),
                                   MultiPoly(ch.vars())});
  CHECK(cov.str() == "(x)*dx + (-1)*dy");
}

TEST_CASE("co-metric validation, inner products and Killing residuals") {
  Chart ch = chart2();
  auto c = [&](long v) { return MultiPoly::constant(ch.vars(), Rat(v)); };
  MultiPoly x = MultiPoly::variable(ch.vars(), 0);
  MultiPoly y = MultiPoly::variable(ch.vars(), 1);

  CHECK_THROWS_AS(CoMetric(ch, {{c(1), x}, {y, c(1)}}), PreconditionError);
  CHECK_THROWS_AS(CoMetric(ch, {{c(1), c(0)}}), PreconditionError);

  CoMetric id(ch, {{c(1), c(0)}, {c(0), c(1)}});
  KForm a = KForm::covector(ch, {x, c(2)});
  KForm b = KForm::covector(ch, {c(1), y});
  CHECK(id.inner(a, b) == x + Rat(2) * y);
  CHECK(id.det_at({Rat(0), Rat(0)}) == Rat(1));

  CoMetric curved(ch, {{x * x, c(0)}, {c(0), c(1)}});
  CHECK(curved.det_at({Rat(2), Rat(0)}) == Rat(4));
  CHECK(curved.det_at({Rat(0), Rat(1)}).is_zero());

  // dilation along x stretches the identity co-metric: residual -2 on (x,x)
  VectorField dil = VectorField::coordinate(ch, 0).scaled_by(x);
  auto res = lie_derivative_cometric(dil, id);
  CHECK(res[0][0] == c(-2));
  CHECK(res[0][1].is_zero());
  CHECK(res[1][1].is_zero());

  // rotations preserve it exactly
  VectorField rot(ch, {-y, x});
  auto rres = lie_derivative_cometric(rot, id);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(rres[i][j].is_zero());

  // scaling fields preserve the matching quadratic co-metric
  CoMetric quad(ch, {{x * x, c(0)}, {c(0), y * y}});
  VectorField sx = VectorField::coordinate(ch, 0).scaled_by(x);
  auto qres = lie_derivative_cometric(sx, quad);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(qres[i][j].is_zero());
}

TEST_CASE("pairing of 1-forms with fields") {
  Chart ch = chart2();
  MultiPoly x = MultiPoly::variable(ch.vars(), 0);
  MultiPoly y = MultiPoly::variable(ch.vars(), 1);
  KForm a = KForm::covector(ch, {y, x});
  VectorField v(ch, {x, MultiPoly::constant(ch.vars(), Rat(3))});
  CHECK(pairing(a, v) == x * y + Rat(3) * x);
  CHECK(pairing(KForm(ch, 1), v).is_zero());
}

TEST_CASE("charts reject empty or duplicated coordinate lists") {
  CHECK_THROWS_AS(Chart({}), InputError);
  CHECK_THROWS_AS(Chart({"x", "x"}), InputError);
  Chart a({"x", "y"});
  Chart b({"x", "y"});
  CHECK(a == b);
  CHECK(a.coord_index("y") == 1);
  CHECK(a.coord_index("q") == -1);
}
