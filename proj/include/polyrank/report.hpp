#pragma once

#include <string>
#include <vector>

namespace polyrank {

inline constexpr const char* kToolVersion = "1.0.0";

// Reproduction bundle: classification table with type tags and H1, the link
// spectrum table, the rings table for every preset complex, and the
// mesoscopic lower-bound table for the requested k values.  Deterministic
// plain text.
std::string report_tables(const std::vector<int>& mesoKs = {8, 10, 12, 14});

}  // namespace polyrank
