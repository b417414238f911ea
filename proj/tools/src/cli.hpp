#pragma once

#include <ostream>

namespace noon_ent::cli {

inline constexpr int kExitEntangled = 0;
inline constexpr int kExitInconclusive = 1;
inline constexpr int kExitError = 2;

// Entry point of the noon-ent tool. Subcommands that reach a verdict
// (analyze, witness, quasiprob) return kExitEntangled or kExitInconclusive;
// the others return 0 on success. Any failure returns kExitError with a
// message on err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace noon_ent::cli
