// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ptree.hpp>

namespace ccres::runner {

/// Typed access to a resolved config. Bad values append a diagnostic and
/// yield NaN / 0 / "" so validation can keep going.
class Reader {
 public:
  Reader(const boost::property_tree::ptree& tree, std::vector<std::string>& diags) : tree_(tree), diags_(&diags) {}

  std::string str(const std::string& key) const { return tree_.get<std::string>(key, ""); }

  double number(const std::string& key) const {
    double v = 0.0;
    if (!parse(str(key), v) || !std::isfinite(v)) {
      diags_->push_back(key + ": expected a finite number, got '" + str(key) + "'");
      return std::numeric_limits<double>::quiet_NaN();
    }
    return v;
  }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (std::isfinite(v) && v <= 0.0) diags_->push_back(key + ": must be > 0");
    return v;
  }

  long integer(const std::string& key, long lo, long hi) const {
    long v = 0;
    const auto s = str(key);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      diags_->push_back(key + ": expected an integer, got '" + s + "'");
      return 0;
    }
    if (v < lo || v > hi)
      diags_->push_back(key + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  bool boolean(const std::string& key) const {
    const auto s = boost::to_lower_copy(str(key));
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    diags_->push_back(key + ": expected true or false, got '" + str(key) + "'");
    return false;
  }

  std::string choice(const std::string& key, const std::vector<std::string>& allowed) const {
    const auto s = str(key);
    for (const auto& a : allowed)
      if (s == a) return s;
    diags_->push_back(key + ": must be one of " + boost::join(allowed, ", ") + ", got '" + s + "'");
    return "";
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : items(key)) {
      double v = 0.0;
      if (!parse(item, v) || !std::isfinite(v)) {
        diags_->push_back(key + ": expected comma-separated numbers, got '" + str(key) + "'");
        return {};
      }
      out.push_back(v);
    }
    if (out.empty()) diags_->push_back(key + ": must not be empty");
    return out;
  }

  std::vector<long> int_list(const std::string& key) const {
    std::vector<long> out;
    for (const auto& item : items(key)) {
      long v = 0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
      if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
        diags_->push_back(key + ": expected comma-separated integers, got '" + str(key) + "'");
        return {};
      }
      out.push_back(v);
    }
    if (out.empty()) diags_->push_back(key + ": must not be empty");
    return out;
  }

 private:
  static bool parse(const std::string& s, double& v) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size();
  }

  std::vector<std::string> items(const std::string& key) const {
    std::vector<std::string> parts;
    const auto s = str(key);
    if (s.empty()) return parts;
    boost::split(parts, s, boost::is_any_of(","));
    for (auto& p : parts) boost::trim(p);
    return parts;
  }

  const boost::property_tree::ptree& tree_;
  std::vector<std::string>* diags_;
};

}  // namespace ccres::runner
