#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tac::corpus {

enum class MediaKind { image, video };

const char* to_string(MediaKind kind);
MediaKind media_kind_from_string(const std::string& text);  // throws DataError

struct MediaRef {
  std::string url;
  MediaKind kind = MediaKind::image;
  std::uint64_t size_bytes = 0;

  friend bool operator==(const MediaRef&, const MediaRef&) = default;
};

struct RawTweet {
  std::string id;
  std::string text;
  std::int64_t timestamp = 0;
  double lat = 0.0;
  double lon = 0.0;
  std::vector<MediaRef> media;
};

// One of the nine cells of a 3x3 latitude/longitude grid. Band 0 is the
// southernmost (latitude) or westernmost (longitude) third.
class RegionId {
 public:
  RegionId() = default;
  RegionId(int lat_band, int lon_band);  // throws std::out_of_range

  static RegionId from_index(int index);  // index in 1..9

  int lat_band() const { return lat_band_; }
  int lon_band() const { return lon_band_; }
  int index() const { return 3 * lat_band_ + lon_band_ + 1; }

  friend bool operator==(const RegionId&, const RegionId&) = default;

 private:
  int lat_band_ = 0;
  int lon_band_ = 0;
};

struct BoundingBox {
  double lat_max = 51.7136401;
  double lat_min = 51.3679144;
  double lon_max = 0.285472;
  double lon_min = -0.4488468;

  void validate() const;  // throws ConfigError
  bool contains(double lat, double lon) const {
    return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
  }
};

// A cleaned, region-tagged record.
struct Tweet {
  std::string id;
  std::vector<std::string> tokens;
  std::int64_t timestamp = 0;
  RegionId region;
  std::vector<MediaRef> media;
  // Raw coordinates are kept so cleaned corpora stay re-ingestable.
  double lat = 0.0;
  double lon = 0.0;
  std::string text;
};

}  // namespace tac::corpus
