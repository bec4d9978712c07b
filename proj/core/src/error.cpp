#include "mew/error.hpp"

namespace mew {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::unknown_candidate: return "UnknownCandidate";
    case Errc::overlap_violation: return "OverlapViolation";
    case Errc::too_large: return "TooLarge";
    case Errc::invalid_k: return "InvalidK";
    case Errc::invalid_rule: return "InvalidRule";
    case Errc::invalid_parameter: return "InvalidParameter";
    case Errc::rank_out_of_range: return "RankOutOfRange";
    case Errc::zero_posterior: return "ZeroPosterior";
    case Errc::cover_width_exceeded: return "CoverWidthExceeded";
    case Errc::unsupported: return "Unsupported";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::empty_input: return "EmptyInput";
  }
  return "Unknown";
}

bool is_resource_error(Errc code) noexcept {
  return code == Errc::too_large || code == Errc::cover_width_exceeded;
}

namespace {

std::string decorate(Errc code, const std::string& message,
                     std::optional<std::size_t> voter) {
  std::string out(to_string(code));
  if (voter) {
    out += " (voter ";
    out += std::to_string(*voter);
    out += ")";
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(decorate(code, message, std::nullopt)),
      code_(code),
      bare_message_(message) {}

Error::Error(Errc code, const std::string& message, std::size_t voter_index)
    : std::runtime_error(decorate(code, message, voter_index)),
      code_(code),
      voter_(voter_index),
      bare_message_(message) {}

Error Error::with_voter(std::size_t voter_index) const {
  return Error(code_, bare_message_, voter_index);
}

}  // namespace mew
