#include "tac/corpus/region.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tac/common/errors.hpp"

namespace tac::corpus {

const char* to_string(MediaKind kind) { return kind == MediaKind::video ? "video" : "image"; }

MediaKind media_kind_from_string(const std::string& text) {
  if (text == "image") return MediaKind::image;
  if (text == "video") return MediaKind::video;
  throw DataError("unknown media kind '" + text + "'");
}

RegionId::RegionId(int lat_band, int lon_band) : lat_band_(lat_band), lon_band_(lon_band) {
  if (lat_band < 0 || lat_band > 2 || lon_band < 0 || lon_band > 2) {
    throw std::out_of_range("region band outside 0..2");
  }
}

RegionId RegionId::from_index(int index) {
  if (index < 1 || index > 9) throw std::out_of_range("region index outside 1..9");
  return RegionId((index - 1) / 3, (index - 1) % 3);
}

void BoundingBox::validate() const {
  if (!(lat_max > lat_min) || !(lon_max > lon_min)) {
    throw ConfigError("bounding box requires lat_max > lat_min and lon_max > lon_min");
  }
}

namespace {

int band_of(double value, double lo, double hi) {
  const int band = static_cast<int>(std::floor(3.0 * (value - lo) / (hi - lo)));
  return band > 2 ? 2 : band;
}

}  // namespace

RegionId assign_region(double lat, double lon, const BoundingBox& box) {
  if (!(lat >= box.lat_min && lat <= box.lat_max)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "latitude " << lat << " outside [" << box.lat_min << ", " << box.lat_max << "]";
    throw DataError(msg.str());
  }
  if (!(lon >= box.lon_min && lon <= box.lon_max)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "longitude " << lon << " outside [" << box.lon_min << ", " << box.lon_max << "]";
    throw DataError(msg.str());
  }
  return RegionId(band_of(lat, box.lat_min, box.lat_max), band_of(lon, box.lon_min, box.lon_max));
}

GeoTokens geo_tokens(const RegionId& region) {
  return {kLatTokenBase + region.lat_band(), kLonTokenBase + region.lon_band()};
}

bool is_lat_token(int index) { return index >= kLatTokenBase && index <= kLatTokenBase + 2; }
bool is_lon_token(int index) { return index >= kLonTokenBase && index <= kLonTokenBase + 2; }

RegionId region_from_geo_tokens(const GeoTokens& tokens) {
  if (!is_lat_token(tokens.lat_token) || !is_lon_token(tokens.lon_token)) {
    throw std::out_of_range("not a geo token pair");
  }
  return RegionId(tokens.lat_token - kLatTokenBase, tokens.lon_token - kLonTokenBase);
}

BoundingBox region_bounds(const RegionId& region, const BoundingBox& box) {
  const double lat_step = (box.lat_max - box.lat_min) / 3.0;
  const double lon_step = (box.lon_max - box.lon_min) / 3.0;
  BoundingBox out;
  out.lat_min = box.lat_min + lat_step * region.lat_band();
  out.lat_max = region.lat_band() == 2 ? box.lat_max : box.lat_min + lat_step * (region.lat_band() + 1);
  out.lon_min = box.lon_min + lon_step * region.lon_band();
  out.lon_max = region.lon_band() == 2 ? box.lon_max : box.lon_min + lon_step * (region.lon_band() + 1);
  return out;
}

}  // namespace tac::corpus
