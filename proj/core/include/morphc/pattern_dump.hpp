#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "morphc/runtime.hpp"

namespace morphc {

inline constexpr int kPatternDumpVersion = 1;

struct PatternDumpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Versioned JSON text of the compiled patterns. Identical descriptions give
/// identical bytes.
std::string dump_patterns(const CompiledDescription& c);

/// Reads a dump made from a description with the same fingerprint as `c`
/// and rebuilds the derived fields and indexes. Throws PatternDumpError on a
/// malformed dump, a version mismatch or a fingerprint mismatch.
PatternSet load_patterns(std::string_view text, const CompiledDescription& c);

}  // namespace morphc
