// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <chrono>
#include <exception>
#include <iostream>

#include "acceptance.hpp"

using namespace ccres::acceptance;

// Usage: ccres_acceptance [criterion-id ...]; no ids runs everything.
int main(int argc, char** argv) {
  std::vector<Criterion> all;
  for (auto group : {special_criteria, model_criteria, scan_wave_criteria})
    for (auto& c : group()) all.push_back(std::move(c));

  std::vector<std::string> wanted(argv + 1, argv + argc);
  if (!wanted.empty() && wanted[0] == "--list") {
    for (const auto& c : all) std::cout << c.id << "\n";
    return 0;
  }
  int failures = 0, ran = 0;
  for (const auto& c : all) {
    bool selected = wanted.empty();
    for (const auto& w : wanted) selected = selected || w == c.id;
    if (!selected) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += "; runtime " + num(secs) + " s over limit " + num(c.time_limit) + " s";
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << " [" << num(secs) << " s] " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::cerr << "no criterion matched\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
