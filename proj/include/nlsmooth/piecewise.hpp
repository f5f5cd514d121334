#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlsmooth/expr.hpp"

namespace nlsmooth {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// One closed-form piece. A singular order s at an end means derivatives of order >= s
// are unbounded when approaching that end from inside the piece.
struct Piece {
  ExprPtr expr;
  std::optional<int> left_singular;
  std::optional<int> right_singular;
};

struct Jump {
  double location = 0.0;
  int order = 0;
  double magnitude = 0.0;
};

class PiecewiseSmoothFunction {
 public:
  PiecewiseSmoothFunction(std::vector<double> breakpoints, std::vector<Piece> pieces,
                          int max_order = kMaxTaylorOrder);

  static PiecewiseSmoothFunction zero();
  static PiecewiseSmoothFunction smooth(ExprPtr e, int max_order = kMaxTaylorOrder);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  int max_order() const { return max_order_; }
  const std::optional<Interval>& support() const { return support_; }

  // Index of the piece used at x (right-limit convention at breakpoints).
  std::size_t piece_index(double x) const;
  bool is_breakpoint(double x) const;

  double operator()(double x) const { return eval(0, x); }
  double eval(int k, double x) const;
  // One-sided limit of the k-th derivative at p; right == true for the limit from above.
  double limit(double p, int k, bool right) const;

  // Same function, declared zero outside [support.lo, support.hi).
  PiecewiseSmoothFunction with_support(Interval support) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Piece> pieces_;
  int max_order_;
  std::optional<Interval> support_;
};

double eval(const PiecewiseSmoothFunction& fn, int k, double x);
Jump jump_at(const PiecewiseSmoothFunction& fn, double p, int k);
PiecewiseSmoothFunction linear_combine(
    const std::vector<std::pair<double, PiecewiseSmoothFunction>>& terms);
// (x - p)^k / k! for x >= p, zero below.
PiecewiseSmoothFunction phi(int k, double p);
// x -> fn(x - p)
PiecewiseSmoothFunction shifted(const PiecewiseSmoothFunction& fn, double p);

std::vector<double> sample(const PiecewiseSmoothFunction& fn, const std::vector<double>& xs);

// Plain-text form: "max_order:", "breakpoints:", one "piece:" line per piece, optional
// "support:" and "singular: <piece> <left|right> <order>" lines, '#' comments.
std::string serialize(const PiecewiseSmoothFunction& fn);
PiecewiseSmoothFunction deserialize(const std::string& text, const SymbolTable& symbols = {});

}  // namespace nlsmooth
