#include "nlsmooth/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "nlsmooth/error.hpp"
#include "nlsmooth/quadrature.hpp"
#include "nlsmooth/stencil.hpp"

namespace nlsmooth {

Taylor Taylor::constant(double v, int order) {
  Taylor t;
  t.order = order;
  t.c[0] = v;
  return t;
}

Taylor Taylor::variable(double x0, int order) {
  Taylor t;
  t.order = order;
  t.c[0] = x0;
  if (order >= 1) t.c[1] = 1.0;
  return t;
}

double Taylor::derivative(int k) const {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return c[k] * f;
}

Taylor operator+(const Taylor& a, const Taylor& b) {
  Taylor r;
  r.order = std::min(a.order, b.order);
  for (int i = 0; i <= r.order; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Taylor operator-(const Taylor& a, const Taylor& b) {
  Taylor r;
  r.order = std::min(a.order, b.order);
  for (int i = 0; i <= r.order; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  Taylor r;
  r.order = std::min(a.order, b.order);
  for (int k = 0; k <= r.order; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a.c[i] * b.c[k - i];
    r.c[k] = s;
  }
  return r;
}

Taylor operator/(const Taylor& a, const Taylor& b) {
  Taylor r;
  r.order = std::min(a.order, b.order);
  for (int k = 0; k <= r.order; ++k) {
    double s = a.c[k];
    for (int i = 1; i <= k; ++i) s -= b.c[i] * r.c[k - i];
    r.c[k] = s / b.c[0];
  }
  return r;
}

Taylor operator*(double s, const Taylor& a) {
  Taylor r = a;
  for (int i = 0; i <= r.order; ++i) r.c[i] *= s;
  return r;
}

Taylor compose_derivatives(const std::vector<double>& derivs, const Taylor& a) {
  Taylor r = Taylor::constant(derivs.empty() ? 0.0 : derivs[0], a.order);
  Taylor d = a;
  d.c[0] = 0.0;
  Taylor p = Taylor::constant(1.0, a.order);
  double fact = 1.0;
  const int top = std::min<int>(a.order, static_cast<int>(derivs.size()) - 1);
  for (int i = 1; i <= top; ++i) {
    p = p * d;
    fact *= i;
    const double coef = derivs[i] / fact;
    if (coef != 0.0)
      for (int k = i; k <= a.order; ++k) r.c[k] += coef * p.c[k];
  }
  return r;
}

double Expr::derivative(double x, int k) const {
  if (k > kMaxTaylorOrder) fail(ErrorKind::OrderExceeded, "derivative order above series capacity");
  if (k == 0) return eval(Taylor::constant(x, 0)).c[0];
  return eval(Taylor::variable(x, k)).derivative(k);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (v < 0 || s[0] == '-') return "(" + s + ")";
  return s;
}

namespace {

// y' = g'(a) a' with g' given as a series h: y_k = (1/k) sum_j j a_j h_{k-j}.
void integrate_chain(Taylor& y, const Taylor& a, const Taylor& h, int k) {
  double s = 0.0;
  for (int j = 1; j <= k; ++j) s += j * a.c[j] * h.c[k - j];
  y.c[k] = s / k;
}

Taylor series_exp(const Taylor& a) {
  Taylor y;
  y.order = a.order;
  y.c[0] = std::exp(a.c[0]);
  for (int k = 1; k <= a.order; ++k) integrate_chain(y, a, y, k);
  return y;
}

Taylor series_log(const Taylor& a) {
  Taylor y;
  y.order = a.order;
  y.c[0] = std::log(a.c[0]);
  for (int k = 1; k <= a.order; ++k) {
    double s = a.c[k];
    for (int j = 1; j < k; ++j) s -= static_cast<double>(j) / k * y.c[j] * a.c[k - j];
    y.c[k] = s / a.c[0];
  }
  return y;
}

void series_sincos(const Taylor& a, Taylor& s, Taylor& c) {
  s.order = c.order = a.order;
  s.c[0] = std::sin(a.c[0]);
  c.c[0] = std::cos(a.c[0]);
  for (int k = 1; k <= a.order; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a.c[j] * c.c[k - j];
      cc -= j * a.c[j] * s.c[k - j];
    }
    s.c[k] = ss / k;
    c.c[k] = cc / k;
  }
}

Taylor series_tanh(const Taylor& a) {
  Taylor y;
  Taylor d;  // 1 - y^2
  y.order = d.order = a.order;
  y.c[0] = std::tanh(a.c[0]);
  d.c[0] = 1.0 - y.c[0] * y.c[0];
  for (int k = 1; k <= a.order; ++k) {
    integrate_chain(y, a, d, k);
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += y.c[i] * y.c[k - i];
    d.c[k] = -s;
  }
  return y;
}

Taylor series_erf(const Taylor& a) {
  Taylor g = series_exp(-1.0 * (a * a));
  g = (2.0 / std::sqrt(std::numbers::pi)) * g;
  Taylor y;
  y.order = a.order;
  y.c[0] = std::erf(a.c[0]);
  for (int k = 1; k <= a.order; ++k) integrate_chain(y, a, g, k);
  return y;
}

Taylor series_pow(const Taylor& a, double p) {
  Taylor y;
  y.order = a.order;
  if (a.c[0] == 0.0) {
    // Leading behaviour a1^p t^p: orders below p vanish, orders above p blow up.
    y.c[0] = p > 0 ? 0.0 : std::numeric_limits<double>::infinity();
    for (int k = 1; k <= a.order; ++k)
      y.c[k] = k < p ? 0.0 : std::numeric_limits<double>::infinity();
    return y;
  }
  y.c[0] = std::pow(a.c[0], p);
  for (int k = 1; k <= a.order; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * a.c[j] * y.c[k - j];
    y.c[k] = s / (k * a.c[0]);
  }
  return y;
}

Taylor series_int_pow(const Taylor& a, int n) {
  if (n < 0) return Taylor::constant(1.0, a.order) / series_int_pow(a, -n);
  Taylor result = Taylor::constant(1.0, a.order);
  Taylor base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tanh: return "tanh";
    case Func::Erf: return "erf";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

double func_value(Func f, double v) {
  switch (f) {
    case Func::Exp: return std::exp(v);
    case Func::Log: return std::log(v);
    case Func::Sin: return std::sin(v);
    case Func::Cos: return std::cos(v);
    case Func::Tanh: return std::tanh(v);
    case Func::Erf: return std::erf(v);
    case Func::Sqrt: return std::sqrt(v);
  }
  return 0.0;
}

class ConstNode final : public Expr {
 public:
  explicit ConstNode(double v) : v_(v) {}
  Taylor eval(const Taylor& x) const override { return Taylor::constant(v_, x.order); }
  std::string format(const std::string&) const override { return format_number(v_); }
  std::optional<double> constant_value() const override { return v_; }

 private:
  double v_;
};

class VarNode final : public Expr {
 public:
  Taylor eval(const Taylor& x) const override { return x; }
  std::string format(const std::string& var) const override { return var; }
};

class LinearNode final : public Expr {
 public:
  LinearNode(std::vector<std::pair<double, ExprPtr>> terms, double offset)
      : terms_(std::move(terms)), offset_(offset) {}
  Taylor eval(const Taylor& x) const override {
    Taylor r = Taylor::constant(offset_, x.order);
    for (const auto& [c, e] : terms_) {
      const Taylor t = e->eval(x);
      for (int i = 0; i <= x.order; ++i) r.c[i] += c * t.c[i];
    }
    return r;
  }
  std::string format(const std::string& var) const override {
    std::string s = "(";
    bool first = true;
    for (const auto& [c, e] : terms_) {
      if (!first) s += " + ";
      first = false;
      if (c == 1.0)
        s += e->format(var);
      else
        s += format_number(c) + "*" + e->format(var);
    }
    if (offset_ != 0.0 || first) s += (first ? "" : " + ") + format_number(offset_);
    return s + ")";
  }
  const std::vector<std::pair<double, ExprPtr>>& terms() const { return terms_; }
  double offset() const { return offset_; }

 private:
  std::vector<std::pair<double, ExprPtr>> terms_;
  double offset_;
};

class ProductNode final : public Expr {
 public:
  ProductNode(ExprPtr a, ExprPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  Taylor eval(const Taylor& x) const override { return a_->eval(x) * b_->eval(x); }
  std::string format(const std::string& var) const override {
    return "(" + a_->format(var) + "*" + b_->format(var) + ")";
  }

 private:
  ExprPtr a_, b_;
};

class QuotientNode final : public Expr {
 public:
  QuotientNode(ExprPtr a, ExprPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  Taylor eval(const Taylor& x) const override { return a_->eval(x) / b_->eval(x); }
  std::string format(const std::string& var) const override {
    return "(" + a_->format(var) + "/" + b_->format(var) + ")";
  }

 private:
  ExprPtr a_, b_;
};

class PowerNode final : public Expr {
 public:
  PowerNode(ExprPtr base, double p) : base_(std::move(base)), p_(p) {}
  Taylor eval(const Taylor& x) const override { return series_pow(base_->eval(x), p_); }
  std::string format(const std::string& var) const override {
    return "(" + base_->format(var) + "^" + format_number(p_) + ")";
  }

 private:
  ExprPtr base_;
  double p_;
};

class IntPowerNode final : public Expr {
 public:
  IntPowerNode(ExprPtr base, int n) : base_(std::move(base)), n_(n) {}
  Taylor eval(const Taylor& x) const override { return series_int_pow(base_->eval(x), n_); }
  std::string format(const std::string& var) const override {
    return "(" + base_->format(var) + "^" + (n_ < 0 ? "(" + std::to_string(n_) + ")" : std::to_string(n_)) + ")";
  }

 private:
  ExprPtr base_;
  int n_;
};

class FuncNode final : public Expr {
 public:
  FuncNode(Func f, ExprPtr arg) : f_(f), arg_(std::move(arg)) {}
  Taylor eval(const Taylor& x) const override {
    const Taylor a = arg_->eval(x);
    switch (f_) {
      case Func::Exp: return series_exp(a);
      case Func::Log: return series_log(a);
      case Func::Sin: {
        Taylor s, c;
        series_sincos(a, s, c);
        return s;
      }
      case Func::Cos: {
        Taylor s, c;
        series_sincos(a, s, c);
        return c;
      }
      case Func::Tanh: return series_tanh(a);
      case Func::Erf: return series_erf(a);
      case Func::Sqrt: return series_pow(a, 0.5);
    }
    return a;
  }
  std::string format(const std::string& var) const override {
    return std::string(func_name(f_)) + "(" + arg_->format(var) + ")";
  }

 private:
  Func f_;
  ExprPtr arg_;
};

class SubstNode final : public Expr {
 public:
  SubstNode(ExprPtr inner, double scale, double shift)
      : inner_(std::move(inner)), scale_(scale), shift_(shift) {}
  Taylor eval(const Taylor& x) const override {
    Taylor y = scale_ * x;
    y.c[0] += shift_;
    return inner_->eval(y);
  }
  std::string format(const std::string& var) const override {
    return inner_->format("(" + format_number(scale_) + "*" + var + " + " + format_number(shift_) + ")");
  }
  const ExprPtr& inner() const { return inner_; }
  double scale() const { return scale_; }
  double shift() const { return shift_; }

 private:
  ExprPtr inner_;
  double scale_, shift_;
};

class IntegralNode final : public Expr {
 public:
  IntegralNode(ExprPtr integrand, double anchor) : f_(std::move(integrand)), anchor_(anchor) {}
  Taylor eval(const Taylor& x) const override {
    Taylor y;
    y.order = x.order;
    const ExprPtr& f = f_;
    y.c[0] = integrate([&f](double z) { return f->value(z); }, anchor_, x.c[0],
                       QuadratureTolerance{1e-15, 1e-14});
    if (x.order > 0) {
      const Taylor g = f_->eval(x);
      for (int k = 1; k <= x.order; ++k) integrate_chain(y, x, g, k);
    }
    return y;
  }
  std::string format(const std::string&) const override {
    fail(ErrorKind::NotSerializable, "quadrature-defined expression has no text form");
  }

 private:
  ExprPtr f_;
  double anchor_;
};

class NodalNode final : public Expr {
 public:
  NodalNode(double x0, double h, std::vector<double> values, int degree)
      : x0_(x0), h_(h), v_(std::move(values)), degree_(degree) {}
  Taylor eval(const Taylor& x) const override {
    const int n = static_cast<int>(v_.size());
    const double s = (x.c[0] - x0_) / h_;
    if (s < -1e-9 || s > (n - 1) + 1e-9)
      fail(ErrorKind::InvalidArgument, "nodal function evaluated outside its sample range");
    const int count = std::min(degree_ + 1, n);
    int first = static_cast<int>(std::lround(s)) - count / 2;
    first = std::clamp(first, 0, n - count);
    const int top = std::min(x.order, count - 1);
    const auto w = fd_weights_offsets(s, first, count, top);
    std::vector<double> d(top + 1, 0.0);
    double scale = 1.0;
    for (int m = 0; m <= top; ++m) {
      double acc = 0.0;
      for (int j = 0; j < count; ++j) acc += w[m][j] * v_[first + j];
      d[m] = acc / scale;
      scale *= h_;
    }
    return compose_derivatives(d, x);
  }
  std::string format(const std::string&) const override {
    fail(ErrorKind::NotSerializable, "grid-sampled expression has no text form");
  }

 private:
  double x0_, h_;
  std::vector<double> v_;
  int degree_;
};

double scaled_power(double t, int m) {
  double r = 1.0;
  for (int i = 1; i <= m; ++i) r = r * t / i;
  return r;
}

class MonomialNode final : public Expr {
 public:
  MonomialNode(int k, double p) : k_(k), p_(p) {}
  Taylor eval(const Taylor& x) const override {
    Taylor d = x;
    d.c[0] -= p_;
    Taylor r = Taylor::constant(1.0, x.order);
    for (int i = 1; i <= k_; ++i) r = (1.0 / i) * (r * d);
    return r;
  }
  double derivative(double x, int k) const override {
    return k > k_ ? 0.0 : scaled_power(x - p_, k_ - k);
  }
  std::string format(const std::string& var) const override {
    const std::string base = p_ == 0.0 ? var : "(" + var + " - " + format_number(p_) + ")";
    double f = 1.0;
    for (int i = 2; i <= k_; ++i) f *= i;
    if (k_ == 0) return "1";
    return "(" + base + "^" + std::to_string(k_) + "/" + format_number(f) + ")";
  }

 private:
  int k_;
  double p_;
};

const std::shared_ptr<const Expr> kVar = std::make_shared<VarNode>();

}  // namespace

ExprPtr constant(double v) { return std::make_shared<ConstNode>(v); }

ExprPtr variable() { return kVar; }

ExprPtr linear(std::vector<std::pair<double, ExprPtr>> terms, double offset) {
  std::vector<std::pair<double, ExprPtr>> flat;
  for (auto& [c, e] : terms) {
    if (c == 0.0) continue;
    if (auto v = e->constant_value()) {
      offset += c * *v;
    } else if (auto* lin = dynamic_cast<const LinearNode*>(e.get())) {
      offset += c * lin->offset();
      for (const auto& [c2, e2] : lin->terms()) flat.emplace_back(c * c2, e2);
    } else {
      flat.emplace_back(c, e);
    }
  }
  // Merge repeated children.
  std::vector<std::pair<double, ExprPtr>> merged;
  for (auto& t : flat) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const auto& m) { return m.second == t.second; });
    if (it != merged.end())
      it->first += t.first;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const auto& t) { return t.first == 0.0; });
  if (merged.empty()) return constant(offset);
  if (merged.size() == 1 && merged[0].first == 1.0 && offset == 0.0) return merged[0].second;
  return std::make_shared<LinearNode>(std::move(merged), offset);
}

ExprPtr product(ExprPtr a, ExprPtr b) {
  const auto va = a->constant_value();
  const auto vb = b->constant_value();
  if (va && vb) return constant(*va * *vb);
  if (va) return linear({{*va, b}});
  if (vb) return linear({{*vb, a}});
  return std::make_shared<ProductNode>(std::move(a), std::move(b));
}

ExprPtr quotient(ExprPtr a, ExprPtr b) {
  const auto va = a->constant_value();
  const auto vb = b->constant_value();
  if (va && vb) return constant(*va / *vb);
  if (vb) return linear({{1.0 / *vb, a}});
  if (va && *va == 0.0) return constant(0.0);
  return std::make_shared<QuotientNode>(std::move(a), std::move(b));
}

ExprPtr power(ExprPtr base, double exponent) {
  if (auto v = base->constant_value()) return constant(std::pow(*v, exponent));
  if (exponent == std::round(exponent) && std::abs(exponent) < 64)
    return int_power(std::move(base), static_cast<int>(exponent));
  return std::make_shared<PowerNode>(std::move(base), exponent);
}

ExprPtr int_power(ExprPtr base, int n) {
  if (n == 0) return constant(1.0);
  if (n == 1) return base;
  if (auto v = base->constant_value()) return constant(std::pow(*v, n));
  return std::make_shared<IntPowerNode>(std::move(base), n);
}

ExprPtr apply(Func f, ExprPtr arg) {
  if (auto v = arg->constant_value()) return constant(func_value(f, *v));
  return std::make_shared<FuncNode>(f, std::move(arg));
}

ExprPtr substitute(ExprPtr inner, double scale, double shift) {
  if (inner->constant_value()) return inner;
  if (scale == 1.0 && shift == 0.0) return inner;
  if (inner == kVar) return linear({{scale, kVar}}, shift);
  if (auto* s = dynamic_cast<const SubstNode*>(inner.get()))
    return substitute(s->inner(), s->scale() * scale, s->scale() * shift + s->shift());
  return std::make_shared<SubstNode>(std::move(inner), scale, shift);
}

ExprPtr shifted_monomial(int k, double p) {
  if (k == 0) return constant(1.0);
  return std::make_shared<MonomialNode>(k, p);
}

ExprPtr integral(ExprPtr integrand, double anchor) {
  return std::make_shared<IntegralNode>(std::move(integrand), anchor);
}

ExprPtr nodal(double x0, double h, std::vector<double> values, int degree) {
  require(h > 0 && !values.empty() && degree >= 0, ErrorKind::InvalidArgument,
          "nodal: bad sample layout");
  return std::make_shared<NodalNode>(x0, h, std::move(values), degree);
}

ExprPtr operator+(ExprPtr a, ExprPtr b) { return linear({{1.0, std::move(a)}, {1.0, std::move(b)}}); }
ExprPtr operator-(ExprPtr a, ExprPtr b) { return linear({{1.0, std::move(a)}, {-1.0, std::move(b)}}); }
ExprPtr operator*(ExprPtr a, ExprPtr b) { return product(std::move(a), std::move(b)); }
ExprPtr operator/(ExprPtr a, ExprPtr b) { return quotient(std::move(a), std::move(b)); }
ExprPtr operator-(ExprPtr a) { return linear({{-1.0, std::move(a)}}); }
ExprPtr operator*(double s, ExprPtr a) { return linear({{s, std::move(a)}}); }
ExprPtr operator+(ExprPtr a, double s) { return linear({{1.0, std::move(a)}}, s); }

ExprPtr polynomial(const std::vector<double>& coeffs) {
  std::vector<std::pair<double, ExprPtr>> terms;
  double offset = coeffs.empty() ? 0.0 : coeffs[0];
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    if (coeffs[i] != 0.0) terms.emplace_back(coeffs[i], int_power(kVar, static_cast<int>(i)));
  return linear(std::move(terms), offset);
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const SymbolTable& symbols) : s_(text), symbols_(symbols) {}

  ExprPtr parse() {
    ExprPtr e = expression();
    skip_space();
    if (pos_ != s_.size()) error("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expression() {
    ExprPtr e = term();
    for (;;) {
      if (accept('+'))
        e = e + term();
      else if (accept('-'))
        e = e - term();
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (accept('*'))
        e = e * unary();
      else if (accept('/'))
        e = e / unary();
      else
        return e;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power_expr();
  }

  ExprPtr power_expr() {
    ExprPtr base = primary();
    if (accept('^')) {
      ExprPtr ex = unary();
      if (auto v = ex->constant_value()) return power(base, *v);
      return apply(Func::Exp, ex * apply(Func::Log, base));
    }
    return base;
  }

  ExprPtr primary() {
    skip_space();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      ExprPtr e = expression();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    error(std::string("unexpected character '") + c + "'");
  }

  ExprPtr number() {
    std::size_t end = pos_;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.')) ++end;
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        end = k;
        while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + end, v);
    if (ec != std::errc() || ptr != s_.data() + end) error("malformed number");
    pos_ = end;
    return constant(v);
  }

  ExprPtr identifier() {
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    const std::string name = s_.substr(pos_, end - pos_);
    pos_ = end;
    static const std::map<std::string, Func> funcs{
        {"exp", Func::Exp},   {"log", Func::Log}, {"sin", Func::Sin},   {"cos", Func::Cos},
        {"tanh", Func::Tanh}, {"erf", Func::Erf}, {"sqrt", Func::Sqrt}};
    if (auto f = funcs.find(name); f != funcs.end()) {
      if (!accept('(')) error("expected '(' after " + name);
      ExprPtr arg = expression();
      if (!accept(')')) error("expected ')'");
      return apply(f->second, arg);
    }
    if (name == "x") return variable();
    if (auto it = symbols_.find(name); it != symbols_.end()) return constant(it->second);
    if (name == "pi") return constant(std::numbers::pi);
    if (name == "e") return constant(std::numbers::e);
    error("unknown identifier '" + name + "'");
  }

  const std::string& s_;
  const SymbolTable& symbols_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text, const SymbolTable& symbols) {
  return Parser(text, symbols).parse();
}

}  // namespace nlsmooth
