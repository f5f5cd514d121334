#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsmooth/kernel.hpp"
#include "nlsmooth/piecewise.hpp"

namespace nlsmooth {

struct Fixture {
  std::string id;
  std::string description;
  Interval domain;
  KernelSpec spec;
  PiecewiseSmoothFunction f = PiecewiseSmoothFunction::zero();
  std::optional<PiecewiseSmoothFunction> u_exact;
  // Empty: the constraint has to be constructed (compatible constraint).
  std::optional<PiecewiseSmoothFunction> b;
  std::vector<double> jumps;
};

// "ex1", "ex2", "ex3" (or "1", "2", "3"). The horizon defaults to the published value.
Fixture fixture(const std::string& id, std::optional<double> delta = std::nullopt);
std::vector<std::string> fixture_ids();

}  // namespace nlsmooth
