#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "selberg/coefficients.hpp"

namespace selberg {

class SpecFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the key-value spec format:
///
///   # comment
///   name = "delta"
///   family = "delta"          # zeta | dirichlet_char | delta | sato_tate | custom
///   degree = 2
///   theta = 0.5               # optional, defaults to degree / 4
///   kappa = 1.0               # optional
///   epsilon = 0.001           # optional
///   gamma_shifts = [5.5, 6.5] # optional; complex entries as "1+2i"
///   profile = "gsp4_spinor"   # optional validation profile
///
/// Family keys: `modulus` or `discriminant` (dirichlet_char), `seed`
/// (sato_tate), `local.<p> = [c0, c1, ...]` and `local.default` (custom).
/// Values may be quoted; unknown keys are errors.
LFunctionSpec parse_spec(std::string_view text);

LFunctionSpec load_spec(const std::filesystem::path& path);

}  // namespace selberg
