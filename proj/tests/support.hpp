// Shared fixtures for the unit tests.

#pragma once

#include <atlas/ags.hpp>
#include <atlas/io.hpp>
#include <atlas/transformers.hpp>

#include <string>

namespace atlas::testing {

inline Domain a1_domain() { return {Template::top(), Template{Kind::LenEq}, Template{Kind::LenNeq}}; }

inline Domain a2_domain() {
  auto d = a1_domain();
  d.insert(Template{Kind::CharAtEq});
  d.insert(Template{Kind::CharAtNeq});
  return d;
}

/// Abstractions learned once per test binary.
inline const Abstraction& a1() {
  static const Abstraction abs = [] {
    Abstraction a;
    a.domain = a1_domain();
    a.table = learn_transformers(a.domain, LearnConfig{});
    return a;
  }();
  return abs;
}

inline const Abstraction& a2() {
  static const Abstraction abs = [] {
    Abstraction a;
    a.domain = a2_domain();
    a.table = learn_transformers(a.domain, LearnConfig{});
    return a;
  }();
  return abs;
}

inline SynthesisTask e1() { return load_task(std::string(ATLAS_CORPUS_DIR) + "/train/e1.json"); }
inline SynthesisTask e2() { return load_task(std::string(ATLAS_CORPUS_DIR) + "/train/e2.json"); }
inline SynthesisTask e3() { return load_task(std::string(ATLAS_CORPUS_DIR) + "/train/e3.json"); }

inline Text repeat(char32_t c, std::int64_t n) { return Text(static_cast<std::size_t>(n), c); }

}  // namespace atlas::testing
