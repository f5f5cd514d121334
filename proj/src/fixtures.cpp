#include "nlsmooth/fixtures.hpp"

#include "nlsmooth/error.hpp"

namespace nlsmooth {

namespace {

Piece piece(const std::string& text, const SymbolTable& sym) { return Piece{parse_expr(text, sym), {}, {}}; }

Fixture example1(double d) {
  const SymbolTable sym{{"d", d}};
  Fixture fx;
  fx.id = "ex1";
  fx.description = "u = exp(x) for x >= 0, 0 otherwise";
  fx.domain = {-8.0, 8.0};
  fx.spec = make_kernel(KernelFamily::QuarticPolynomial, d);
  fx.jumps = {0.0};
  fx.f = PiecewiseSmoothFunction(
      {-d, 0.0, d},
      {piece("0", sym),
       piece("-105/d^7*(24 - 24*exp(x+d) + 24*x + 12*x^2 + 4*x^3 + x^4 + 24*d + 24*x*d + 12*x^2*d"
             " + 4*x^3*d + 12*d^2 + 12*x*d^2 + 6*x^2*d^2 + 4*d^3 + 4*x*d^3 + d^4)",
             sym),
       piece("-21/d^7*(120 - 120*exp(x+d) + 120*x + 60*x^2 + 20*x^3 + 5*x^4 - 120*d + 240*d*exp(x)"
             " - 120*d*x - 60*x^2*d - 20*x^3*d + 60*d^2 + 60*x*d^2 + 30*x^2*d^2 - 20*d^3"
             " + 40*d^3*exp(x) - 20*x*d^3 + 5*d^4 + 2*d^5*exp(x))",
             sym),
       piece("42/d^7*exp(x-d)*(-60 + 60*exp(2*d) - 120*d*exp(d) - 20*d^3*exp(d) - d^5*exp(d))", sym)});
  fx.u_exact = PiecewiseSmoothFunction({0.0}, {piece("0", sym), piece("exp(x)", sym)});
  fx.b = fx.u_exact;
  return fx;
}

Fixture example2(double d) {
  require(d < 3.0, ErrorKind::InvalidArgument, "example 2 requires delta < 3");
  const SymbolTable sym{{"d", d}};
  Fixture fx;
  fx.id = "ex2";
  fx.description = "u = sin(x+2) for x <= -2, 0 on (-2,4), exp(x-4) for x >= 4";
  fx.domain = {-8.0, 8.0};
  fx.spec = make_kernel(KernelFamily::QuarticPolynomial, d);
  fx.jumps = {-2.0, 4.0};
  fx.f = PiecewiseSmoothFunction(
      {-2.0 - d, -2.0, -2.0 + d, 4.0 - d, 4.0, 4.0 + d},
      {piece("-42/d^7*(-60*cos(2+x-d) + 60*cos(2+x+d) + 120*d*sin(2+x) - 20*d^3*sin(2+x)"
             " + d^5*sin(2+x))",
             sym),
       piece("-21/d^7*(-40 - 80*x + 60*x^2 + 40*x^3 + 5*x^4 - 80*d + 120*d*x + 120*d*x^2"
             " + 20*d*x^3 + 60*d^2 + 120*d^2*x + 30*d^2*x^2 + 40*d^3 + 20*d^3*x + 5*d^4"
             " - 120*cos(2+x-d) + 240*d*sin(2+x) - 40*d^3*sin(2+x) + 2*d^5*sin(2+x))",
             sym),
       piece("-105/d^7*(-8 - 16*x + 12*x^2 + 8*x^3 + x^4 + 16*d - 24*x*d - 24*x^2*d - 4*x^3*d"
             " + 12*d^2 + 24*x*d^2 + 6*x^2*d^2 - 8*d^3 - 4*x*d^3 + d^4 - 24*cos(2+x-d))",
             sym),
       piece("0", sym),
       piece("-105/(e^4*d^7)*(120*e^4 - 24*exp(x+d) - 136*e^4*x + 60*e^4*x^2 - 12*e^4*x^3"
             " + e^4*x^4 - 136*e^4*d + 120*e^4*x*d - 36*e^4*x^2*d + 4*e^4*x^3*d + 60*e^4*d^2"
             " - 36*e^4*x*d^2 + 6*e^4*x^2*d^2 - 12*e^4*d^3 + 4*e^4*x*d^3 + e^4*d^4)",
             sym),
       piece("-21/(e^4*d^7)*(600*e^4 - 120*exp(x+d) - 680*e^4*x + 300*e^4*x^2 - 60*e^4*x^3"
             " + 5*e^4*x^4 + 680*e^4*d + 240*exp(x)*d - 600*e^4*x*d + 180*e^4*x^2*d"
             " - 20*e^4*x^3*d + 300*e^4*d^2 - 180*e^4*x*d^2 + 30*e^4*x^2*d^2 + 60*e^4*d^3"
             " + 40*exp(x)*d^3 - 20*e^4*x*d^3 + 5*e^4*d^4 + 2*exp(x)*d^5)",
             sym),
       piece("42/d^7*exp(x-d-4)*(-60 + 60*exp(2*d) - 120*d*exp(d) - 20*d^3*exp(d) - d^5*exp(d))", sym)});
  fx.u_exact = PiecewiseSmoothFunction({-2.0, 4.0},
                                       {piece("sin(x+2)", sym), piece("0", sym), piece("exp(x-4)", sym)});
  fx.b = fx.u_exact;
  return fx;
}

Fixture example3(double d) {
  const SymbolTable sym{{"d", d}};
  Fixture fx;
  fx.id = "ex3";
  fx.description = "f = 10/(6x^2+0.8) for x >= 0, tanh(3x)+1 otherwise; compatible constraint";
  fx.domain = {-2.0, 2.0};
  fx.spec = make_kernel(KernelFamily::QuarticPolynomial, d);
  fx.jumps = {0.0};
  fx.f = PiecewiseSmoothFunction({0.0}, {piece("tanh(3*x) + 1", sym), piece("10/(6*x^2 + 0.8)", sym)});
  return fx;
}

}  // namespace

std::vector<std::string> fixture_ids() { return {"ex1", "ex2", "ex3"}; }

Fixture fixture(const std::string& id, std::optional<double> delta) {
  if (id == "ex1" || id == "1") return example1(delta.value_or(1.6));
  if (id == "ex2" || id == "2") return example2(delta.value_or(1.6));
  if (id == "ex3" || id == "3") return example3(delta.value_or(0.4));
  fail(ErrorKind::UnknownFixture, "unknown fixture '" + id + "' (expected ex1, ex2 or ex3)");
}

}  // namespace nlsmooth
