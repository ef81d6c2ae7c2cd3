#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "milnor/gauss.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(MILNOR_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing data file: " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline milnor::BasedDiagram diagram(const std::string& name) {
  return milnor::parse_gauss_code(slurp(name));
}

// Hand fixtures used across the suites (the small corpus).
inline const char* kCorpus[] = {"trivial.gauss",  "trivial3.gauss", "kink.gauss",
                                "hopf.gauss",     "borromean.gauss", "clasp2.gauss"};

}  // namespace fixtures
