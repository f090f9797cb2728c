#pragma once

namespace qtel {

// The two summand families under verification.
enum class Family { P, Q };

inline const char* to_string(Family f) { return f == Family::P ? "P" : "Q"; }

} // namespace qtel
