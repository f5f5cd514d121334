#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nlsmooth {

inline constexpr int kMaxTaylorOrder = 15;

// Truncated Taylor series in t: c[i] = g^(i)(t0) / i!, i = 0..order.
struct Taylor {
  int order = 0;
  std::array<double, kMaxTaylorOrder + 1> c{};

  static Taylor constant(double v, int order);
  // Series of the identity map around x0: x0 + t.
  static Taylor variable(double x0, int order);

  double derivative(int k) const;
};

Taylor operator+(const Taylor& a, const Taylor& b);
Taylor operator-(const Taylor& a, const Taylor& b);
Taylor operator*(const Taylor& a, const Taylor& b);
Taylor operator/(const Taylor& a, const Taylor& b);
Taylor operator*(double s, const Taylor& a);

// g(a(t)) given the derivatives g^(i)(a0), i = 0..order.
Taylor compose_derivatives(const std::vector<double>& derivs, const Taylor& a);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  virtual ~Expr() = default;
  virtual Taylor eval(const Taylor& x) const = 0;
  // Infix text in the variable named var. Throws NotSerializable for numeric atoms.
  virtual std::string format(const std::string& var) const = 0;
  virtual std::optional<double> constant_value() const { return std::nullopt; }

  double value(double x) const { return derivative(x, 0); }
  // k-th derivative at x.
  virtual double derivative(double x, int k) const;
};

enum class Func { Exp, Log, Sin, Cos, Tanh, Erf, Sqrt };

ExprPtr constant(double v);
ExprPtr variable();
ExprPtr linear(std::vector<std::pair<double, ExprPtr>> terms, double offset = 0.0);
ExprPtr product(ExprPtr a, ExprPtr b);
ExprPtr quotient(ExprPtr a, ExprPtr b);
ExprPtr power(ExprPtr base, double exponent);
ExprPtr int_power(ExprPtr base, int n);
ExprPtr apply(Func f, ExprPtr arg);
// inner(scale * x + shift)
ExprPtr substitute(ExprPtr inner, double scale, double shift);
// (x - p)^k / k!, with derivatives computed in the same way as values.
ExprPtr shifted_monomial(int k, double p);
// x -> integral of integrand over [anchor, x], value by adaptive quadrature.
ExprPtr integral(ExprPtr integrand, double anchor);
// Local polynomial interpolation of uniform samples x0 + i*h (nearest-node stencil).
ExprPtr nodal(double x0, double h, std::vector<double> values, int degree);

ExprPtr operator+(ExprPtr a, ExprPtr b);
ExprPtr operator-(ExprPtr a, ExprPtr b);
ExprPtr operator*(ExprPtr a, ExprPtr b);
ExprPtr operator/(ExprPtr a, ExprPtr b);
ExprPtr operator-(ExprPtr a);
ExprPtr operator*(double s, ExprPtr a);
ExprPtr operator+(ExprPtr a, double s);

// Polynomial sum_i coeffs[i] * x^i.
ExprPtr polynomial(const std::vector<double>& coeffs);

using SymbolTable = std::map<std::string, double>;

// Parses infix text over the variable x. Knows pi, e, exp, log, sin, cos, tanh, erf, sqrt,
// plus any named constants in symbols.
ExprPtr parse_expr(const std::string& text, const SymbolTable& symbols = {});

std::string format_number(double v);

}  // namespace nlsmooth
