#pragma once

// Worked pushdown examples and bundled data files shared by the test binaries.

#include <fstream>
#include <sstream>
#include <string>

#include "lvl3/lvl3.hpp"

namespace fixture {

using namespace lvl3;

inline SystemFile load(const std::string& name) {
  std::ifstream in(std::string(LVL3_DATA_DIR) + "/" + name + ".l3");
  if (!in) throw std::runtime_error("missing data file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system_file(ss.str());
}

// Γ_i = {A_i, B_i, C_i, D_i}, 𝒰_i = {Omega_i, Omega'_i}, plus two ungraded letters A and B.
inline GradedAlphabet gamma3() {
  std::vector<Word> levels;
  for (int i = 1; i <= 3; ++i) {
    const std::string s = "_" + std::to_string(i);
    levels.push_back(Word{"A" + s, "B" + s, "C" + s, "D" + s});
  }
  return GradedAlphabet(std::move(levels));
}

inline GradedAlphabet undeterminates3() {
  std::vector<Word> levels;
  for (int i = 1; i <= 3; ++i) levels.push_back(Word{"Omega_" + std::to_string(i), "Omega'_" + std::to_string(i)});
  return GradedAlphabet(std::move(levels));
}

inline const Alphabet& letters() {
  static const Alphabet a = [] {
    Alphabet out{"A", "B"};
    for (const auto& g : {gamma3(), undeterminates3()})
      for (const auto& lv : g.levels())
        for (const auto& s : lv) out.add(s);
    return out;
  }();
  return a;
}

inline Store parse(const std::string& text, int level = 3) { return parse_store(text, level, &letters()); }

inline const char* const kOmega = "A_1[A_2[A_3C_3]B_2[D_3C_3]]B_1[B_2[B_3D_3]]";

}  // namespace fixture
