#pragma once

#include <fstream>
#include <random>
#include <set>
#include <string>

#include "qalogic/ising.hpp"

namespace testutil {

// Coefficients are multiples of 1/64 in [-2, 2]. For n <= 12 every partial
// sum in an energy evaluation stays a dyadic rational well inside double
// precision, so identities that hold algebraically hold bit-exactly.
inline qalogic::IsingProblem random_dyadic_problem(std::mt19937_64& gen, int n,
                                                   double density = 0.7) {
  auto coeff = [&gen]() {
    return static_cast<double>(static_cast<int>(gen() % 257) - 128) / 64.0;
  };
  auto u01 = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  qalogic::IsingProblem p(n);
  for (int i = 0; i < n; ++i) p.h[static_cast<std::size_t>(i)] = coeff();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u01() < density) p.set_coupling(i, j, coeff());
  p.offset = coeff();
  return p;
}

inline std::set<std::string> ground_strings(const qalogic::IsingProblem& p) {
  std::set<std::string> out;
  for (qalogic::StateBits b : qalogic::ground_set(p)) out.insert(qalogic::bits_to_string(b, p.n));
  return out;
}

// Path of the CLI binary, written at configure time next to the test binary.
inline std::string cli_path() {
  if (const char* env = std::getenv("QALOGIC_CLI")) return env;
  std::ifstream in("qalogic_cli_path.txt");
  std::string path;
  std::getline(in, path);
  return path;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

}  // namespace testutil
