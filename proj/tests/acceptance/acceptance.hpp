// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ccres/report.hpp"

namespace ccres::acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  /// Wall-clock limit in seconds (0 = none); exceeding it fails the criterion.
  double time_limit = 0.0;
  std::function<Outcome()> run;
};

std::vector<Criterion> special_criteria();
std::vector<Criterion> model_criteria();
std::vector<Criterion> scan_wave_criteria();

/// Compact number for detail lines.
inline std::string num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

}  // namespace ccres::acceptance
