// Compares two calibration fixture files constant by constant.
// Usage: compare_fixtures <expected.json> <actual.json> [rel_tol]

#include "mixnorm/calibration.hpp"
#include "mixnorm/report.hpp"

#include <cmath>
#include <iostream>

using namespace mixnorm;

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: compare_fixtures <expected.json> <actual.json> [rel_tol]\n";
    return 2;
  }
  const double tol = argc > 3 ? parse_double(argv[3]) : 1e-9;
  const auto want = load_fixtures(argv[1]);
  const auto got = load_fixtures(argv[2]);
  int bad = 0;
  for (const auto& e : want.entries) {
    const auto& g = got.at(e.id);
    if (g.params != e.params) {
      std::cout << e.id << ": parameters differ\n";
      ++bad;
    }
    for (const auto& [k, v] : e.constants) {
      const auto it = g.constants.find(k);
      if (it == g.constants.end()) {
        std::cout << e.id << "." << k << ": missing\n";
        ++bad;
        continue;
      }
      const double err = std::abs(it->second - v) / std::max(std::abs(v), 1e-300);
      if (!(err <= tol) && !(v == 0.0 && std::abs(it->second) <= tol)) {
        std::cout << e.id << "." << k << ": expected " << format_double(v) << " got " << format_double(it->second)
                  << '\n';
        ++bad;
      }
    }
  }
  std::cout << (bad ? "MISMATCH" : "MATCH") << " (" << bad << " differences)\n";
  return bad ? 1 : 0;
}
