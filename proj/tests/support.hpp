#pragma once

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <string>

#include "awn/parser.hpp"
#include "awn/printer.hpp"
#include "awn/scenario.hpp"
#include "awn/toy.hpp"

namespace test {

inline std::string corpus(const std::string& rel) { return std::string(AWN_CORPUS_DIR) + "/" + rel; }

/// Every model file under corpus/.
inline std::vector<std::string> corpus_models() {
  std::vector<std::string> v;
  for (const auto& e : std::filesystem::recursive_directory_iterator(AWN_CORPUS_DIR))
    if (e.path().extension() == ".awn") v.push_back(e.path().string());
  std::sort(v.begin(), v.end());
  return v;
}

inline std::mt19937& rng() {
  static std::mt19937 g(20240611u);
  return g;
}

inline std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng()); }

inline awn::Domains small_domains(std::uint32_t data_max = 2, std::vector<awn::Address> addrs = {1, 2}) {
  return awn::make_domains(data_max, std::move(addrs));
}

}  // namespace test
