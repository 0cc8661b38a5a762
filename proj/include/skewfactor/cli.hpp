#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewfactor/core_types.hpp"

namespace skewfactor {

/// Maps a CLI algorithm name such as "blk-wimmer" to its variant.
std::optional<Variant> parse_algo(const std::string& name);

/// Runs the driver for v. cfg is ignored by the unblocked drivers.
Factorization factor_with(Variant v, const DenseSkewMatrix& X, const BlockConfig& cfg,
                          KernelContext* ctx = nullptr);

/// Entry point of the command-line tool; args excludes the program name.
/// Exit codes: 0 ok, 2 usage, 3 zero pivot, 4 I/O or parse, 5 residual too large.
int cli_main(const std::vector<std::string>& args);

}  // namespace skewfactor
