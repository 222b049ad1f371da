#pragma once

#include <utility>

#include "tac/corpus/types.hpp"

namespace tac::corpus {

// Reserved token indices carrying the region of a tweet in geo-aware
// encodings: one latitude-band token and one longitude-band token.
inline constexpr int kLatTokenBase = 81112;
inline constexpr int kLonTokenBase = 91112;

// Maps an in-box coordinate onto the 3x3 grid. The upper edges belong to
// band 2. Throws DataError naming the offending coordinate when outside.
RegionId assign_region(double lat, double lon, const BoundingBox& box);

struct GeoTokens {
  int lat_token;
  int lon_token;
  friend bool operator==(const GeoTokens&, const GeoTokens&) = default;
};

GeoTokens geo_tokens(const RegionId& region);
RegionId region_from_geo_tokens(const GeoTokens& tokens);  // throws std::out_of_range

bool is_lat_token(int index);
bool is_lon_token(int index);
inline bool is_geo_token(int index) { return is_lat_token(index) || is_lon_token(index); }

// The sub-box covered by a region; the pieces tile `box`.
BoundingBox region_bounds(const RegionId& region, const BoundingBox& box);

}  // namespace tac::corpus
