#pragma once

// Profile documents (JSON, "format": 1) and ratings ingestion.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mew/engine.hpp"

namespace mew {

/// Throws parse_error for malformed text or fields of the wrong shape, and
/// validation_error (or a more specific code) when the content violates a
/// structure's invariants. Voter-level failures carry the voter index.
Profile parse_profile(std::string_view text);

/// Stable key order; parse_profile(serialize_profile(p)) == p.
std::string serialize_profile(const Profile& profile, int indent = 2);

Profile load_profile(const std::string& path);
void save_profile(const Profile& profile, const std::string& path);

struct RatingRow {
  std::string voter;
  std::string item;
  double rating = 0.0;
};

enum class RatingsMode { full, partial };

/// Keeps the top_m most frequently rated items (ties broken by name). Each
/// voter's kept ratings become buckets, one per distinct rating, best first.
/// Partial mode lists unrated kept items as missing; full mode keeps only
/// voters who rated every kept item. Voters without kept ratings are
/// dropped. Throws empty_input when no voter remains.
Profile ratings_to_partitions(const std::vector<RatingRow>& rows, std::size_t top_m,
                              RatingsMode mode);

/// `voter,item,rating` lines; a first line that does not parse as a rating
/// is taken as a header.
std::vector<RatingRow> parse_ratings_csv(std::string_view text);

}  // namespace mew
