// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <array>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "ccres/errors.hpp"
#include "json.hpp"
#include "runner.hpp"

namespace ccres::runner {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string RunManifest::json() const {
  nlohmann::ordered_json j;
  j["tool"] = "ccres";
  j["tool_version"] = tool_version;
  j["kind"] = config.kind();
  j["name"] = config.name();
  j["seed"] = config.seed();
  auto& cfg = j["config"] = nlohmann::ordered_json::object();
  for (const auto& [section, keys] : config.tree)
    for (const auto& [key, value] : keys) cfg[section][key] = value.data();
  auto& files = j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : artifacts) files.push_back({{"file", a.file}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  auto& t = j["timings_seconds"] = nlohmann::ordered_json::object();
  for (const auto& [step, s] : timings) t[step] = s;
  auto& checks_j = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) checks_j.push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
  j["partial"] = partial;
  j["all_pass"] = all_pass();
  return j.dump(2) + "\n";
}

}  // namespace ccres::runner
