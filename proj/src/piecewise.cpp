#include "nlsmooth/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlsmooth/error.hpp"

namespace nlsmooth {

namespace {

std::optional<int> min_opt(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto e = parse_expr(item);
    const auto v = e->constant_value();
    require(v.has_value(), ErrorKind::Parse, "expected a number, got '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

}  // namespace

PiecewiseSmoothFunction::PiecewiseSmoothFunction(std::vector<double> breakpoints,
                                                 std::vector<Piece> pieces, int max_order)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), max_order_(max_order) {
  require(pieces_.size() == breakpoints_.size() + 1, ErrorKind::InvalidArgument,
          "piecewise function needs one more piece than breakpoints");
  require(max_order_ >= 0 && max_order_ <= kMaxTaylorOrder, ErrorKind::InvalidArgument,
          "max_order out of range");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    require(std::isfinite(breakpoints_[i]), ErrorKind::InvalidArgument, "non-finite breakpoint");
    if (i > 0)
      require(breakpoints_[i] > breakpoints_[i - 1], ErrorKind::InvalidArgument,
              "breakpoints must be strictly increasing");
  }
  for (const auto& p : pieces_)
    require(p.expr != nullptr, ErrorKind::InvalidArgument, "missing piece expression");
}

PiecewiseSmoothFunction PiecewiseSmoothFunction::zero() {
  return PiecewiseSmoothFunction({}, {Piece{constant(0.0), {}, {}}});
}

PiecewiseSmoothFunction PiecewiseSmoothFunction::smooth(ExprPtr e, int max_order) {
  return PiecewiseSmoothFunction({}, {Piece{std::move(e), {}, {}}}, max_order);
}

std::size_t PiecewiseSmoothFunction::piece_index(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                  breakpoints_.begin());
}

bool PiecewiseSmoothFunction::is_breakpoint(double x) const {
  return std::binary_search(breakpoints_.begin(), breakpoints_.end(), x);
}

double PiecewiseSmoothFunction::eval(int k, double x) const {
  if (k < 0 || k > max_order_)
    fail(ErrorKind::OrderExceeded, "derivative order " + std::to_string(k) + " above max_order " +
                                       std::to_string(max_order_));
  const std::size_t i = piece_index(x);
  const Piece& piece = pieces_[i];
  if (i > 0 && breakpoints_[i - 1] == x && piece.left_singular && k >= *piece.left_singular) {
    std::ostringstream os;
    os << "order " << k << " derivative is singular at " << x;
    fail(ErrorKind::SingularPoint, os.str());
  }
  return piece.expr->derivative(x, k);
}

double PiecewiseSmoothFunction::limit(double p, int k, bool right) const {
  if (k < 0 || k > max_order_) fail(ErrorKind::OrderExceeded, "derivative order above max_order");
  std::size_t i = piece_index(p);
  const bool at_break = i > 0 && breakpoints_[i - 1] == p;
  std::optional<int> singular;
  if (right) {
    if (at_break) singular = pieces_[i].left_singular;
  } else if (at_break) {
    --i;
    singular = pieces_[i].right_singular;
  }
  std::ostringstream os;
  os << (right ? "right" : "left") << " limit of order " << k << " derivative at " << p;
  if (singular && k >= *singular) fail(ErrorKind::UnboundedLimit, os.str() + " is unbounded");
  const double v = pieces_[i].expr->derivative(p, k);
  if (!std::isfinite(v)) fail(ErrorKind::UnboundedLimit, os.str() + " is not finite");
  return v;
}

PiecewiseSmoothFunction PiecewiseSmoothFunction::with_support(Interval s) const {
  require(s.lo < s.hi, ErrorKind::InvalidArgument, "empty support interval");
  std::vector<double> bps{s.lo};
  for (double b : breakpoints_)
    if (b > s.lo && b < s.hi) bps.push_back(b);
  bps.push_back(s.hi);
  std::vector<Piece> pieces;
  pieces.push_back(Piece{constant(0.0), {}, {}});
  for (std::size_t j = 0; j + 1 < bps.size(); ++j) {
    const std::size_t src = piece_index(0.5 * (bps[j] + bps[j + 1]));
    Piece p = pieces_[src];
    if (j == 0) p.left_singular = is_breakpoint(bps[j]) ? p.left_singular : std::nullopt;
    if (j + 2 == bps.size()) p.right_singular = is_breakpoint(bps[j + 1]) ? p.right_singular : std::nullopt;
    pieces.push_back(p);
  }
  pieces.push_back(Piece{constant(0.0), {}, {}});
  PiecewiseSmoothFunction out(std::move(bps), std::move(pieces), max_order_);
  out.support_ = s;
  return out;
}

double eval(const PiecewiseSmoothFunction& fn, int k, double x) { return fn.eval(k, x); }

Jump jump_at(const PiecewiseSmoothFunction& fn, double p, int k) {
  if (!fn.is_breakpoint(p)) {
    if (k > fn.max_order()) fail(ErrorKind::OrderExceeded, "derivative order above max_order");
    return Jump{p, k, 0.0};
  }
  const double r = fn.limit(p, k, true);
  const double l = fn.limit(p, k, false);
  double m = r - l;
  if (std::abs(m) < 1e-13 * (1.0 + std::abs(r) + std::abs(l))) m = 0.0;
  return Jump{p, k, m};
}

PiecewiseSmoothFunction linear_combine(
    const std::vector<std::pair<double, PiecewiseSmoothFunction>>& terms) {
  if (terms.empty()) return PiecewiseSmoothFunction::zero();
  std::vector<double> bps;
  int max_order = kMaxTaylorOrder;
  bool all_supported = true;
  Interval hull{0.0, 0.0};
  bool first_support = true;
  for (const auto& [c, fn] : terms) {
    bps.insert(bps.end(), fn.breakpoints().begin(), fn.breakpoints().end());
    max_order = std::min(max_order, fn.max_order());
    if (!fn.support()) {
      all_supported = false;
    } else if (first_support) {
      hull = *fn.support();
      first_support = false;
    } else {
      hull.lo = std::min(hull.lo, fn.support()->lo);
      hull.hi = std::max(hull.hi, fn.support()->hi);
    }
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::vector<Piece> pieces;
  for (std::size_t j = 0; j <= bps.size(); ++j) {
    double rep;
    if (bps.empty())
      rep = 0.0;
    else if (j == 0)
      rep = bps.front() - 1.0;
    else if (j == bps.size())
      rep = bps.back() + 1.0;
    else
      rep = 0.5 * (bps[j - 1] + bps[j]);
    std::vector<std::pair<double, ExprPtr>> parts;
    Piece out;
    for (const auto& [c, fn] : terms) {
      if (c == 0.0) continue;
      const Piece& src = fn.pieces()[fn.piece_index(rep)];
      parts.emplace_back(c, src.expr);
      if (j > 0 && fn.is_breakpoint(bps[j - 1])) out.left_singular = min_opt(out.left_singular, src.left_singular);
      if (j < bps.size() && fn.is_breakpoint(bps[j]))
        out.right_singular = min_opt(out.right_singular, src.right_singular);
    }
    out.expr = linear(std::move(parts));
    pieces.push_back(std::move(out));
  }
  PiecewiseSmoothFunction result(std::move(bps), std::move(pieces), max_order);
  if (all_supported) return result.with_support(hull);
  return result;
}

PiecewiseSmoothFunction phi(int k, double p) {
  require(k >= 0, ErrorKind::InvalidArgument, "phi order must be non-negative");
  ExprPtr right = shifted_monomial(k, p);
  return PiecewiseSmoothFunction({p}, {Piece{constant(0.0), {}, {}}, Piece{right, {}, {}}});
}

PiecewiseSmoothFunction shifted(const PiecewiseSmoothFunction& fn, double p) {
  std::vector<double> bps = fn.breakpoints();
  for (double& b : bps) b += p;
  std::vector<Piece> pieces = fn.pieces();
  for (auto& piece : pieces) piece.expr = substitute(piece.expr, 1.0, -p);
  PiecewiseSmoothFunction out(std::move(bps), std::move(pieces), fn.max_order());
  if (fn.support()) return out.with_support(Interval{fn.support()->lo + p, fn.support()->hi + p});
  return out;
}

std::vector<double> sample(const PiecewiseSmoothFunction& fn, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = fn(xs[i]);
  return out;
}

std::string serialize(const PiecewiseSmoothFunction& fn) {
  std::ostringstream os;
  os << "max_order: " << fn.max_order() << "\n";
  os << "breakpoints:";
  for (std::size_t i = 0; i < fn.breakpoints().size(); ++i)
    os << (i ? ", " : " ") << format_number(fn.breakpoints()[i]);
  os << "\n";
  if (fn.support())
    os << "support: " << format_number(fn.support()->lo) << ", " << format_number(fn.support()->hi) << "\n";
  for (const auto& p : fn.pieces()) os << "piece: " << p.expr->format("x") << "\n";
  for (std::size_t i = 0; i < fn.pieces().size(); ++i) {
    const auto& p = fn.pieces()[i];
    if (p.left_singular) os << "singular: " << i << " left " << *p.left_singular << "\n";
    if (p.right_singular) os << "singular: " << i << " right " << *p.right_singular << "\n";
  }
  return os.str();
}

PiecewiseSmoothFunction deserialize(const std::string& text, const SymbolTable& symbols) {
  std::istringstream is(text);
  std::string line;
  int max_order = kMaxTaylorOrder;
  std::vector<double> bps;
  std::vector<Piece> pieces;
  std::optional<Interval> support;
  std::vector<std::tuple<std::size_t, bool, int>> singular;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    require(colon != std::string::npos, ErrorKind::Parse,
            "line " + std::to_string(lineno) + ": expected 'key: value'");
    const std::string key = trim(line.substr(0, colon));
    const std::string val = trim(line.substr(colon + 1));
    if (key == "max_order") {
      max_order = std::stoi(val);
    } else if (key == "breakpoints") {
      bps = parse_list(val);
    } else if (key == "piece") {
      pieces.push_back(Piece{parse_expr(val, symbols), {}, {}});
    } else if (key == "support") {
      const auto v = parse_list(val);
      require(v.size() == 2, ErrorKind::Parse, "support needs two numbers");
      support = Interval{v[0], v[1]};
    } else if (key == "singular") {
      std::istringstream ss(val);
      std::size_t idx = 0;
      std::string side;
      int order = 0;
      require(static_cast<bool>(ss >> idx >> side >> order) && (side == "left" || side == "right"),
              ErrorKind::Parse, "singular: expected '<piece> <left|right> <order>'");
      singular.emplace_back(idx, side == "left", order);
    } else {
      fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  for (const auto& [idx, left, order] : singular) {
    require(idx < pieces.size(), ErrorKind::Parse, "singular: piece index out of range");
    (left ? pieces[idx].left_singular : pieces[idx].right_singular) = order;
  }
  PiecewiseSmoothFunction fn(std::move(bps), std::move(pieces), max_order);
  if (support) return fn.with_support(*support);
  return fn;
}

}  // namespace nlsmooth
