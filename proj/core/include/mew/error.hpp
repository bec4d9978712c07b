#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mew {

/// Failure categories raised by the library. The CLI maps these onto exit
/// codes, so new values must be classified in `is_resource_error`.
enum class Errc {
  cycle_detected,
  unknown_candidate,
  overlap_violation,
  too_large,
  invalid_k,
  invalid_rule,
  invalid_parameter,
  rank_out_of_range,
  zero_posterior,
  cover_width_exceeded,
  unsupported,
  parse_error,
  validation_error,
  empty_input,
};

std::string_view to_string(Errc code) noexcept;

/// True for errors caused by a configured size cap rather than bad input.
bool is_resource_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Error(Errc code, const std::string& message, std::size_t voter_index);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> voter_index() const noexcept { return voter_; }

  /// Copy of this error annotated with the index of the offending voter.
  Error with_voter(std::size_t voter_index) const;

 private:
  Errc code_;
  std::optional<std::size_t> voter_;
  std::string bare_message_;
};

}  // namespace mew
