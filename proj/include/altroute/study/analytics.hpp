#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "altroute/geo.hpp"

namespace altroute::study {

/// One participant response. Scores are keyed by approach id ("external",
/// "plateaus", "dissimilarity", "penalty") after un-blinding.
struct RatingRecord {
  std::string response_id;
  std::string city;
  GeoPoint source;
  GeoPoint target;
  double fastest_time = 0.0;  // seconds
  bool resident = false;
  std::map<std::string, int> scores;
  std::int64_t timestamp = 0;  // unix seconds

  friend bool operator==(const RatingRecord&, const RatingRecord&) = default;
};

enum class LengthCategory { Small, Medium, Long };

std::string_view to_string(LengthCategory c);
std::optional<LengthCategory> parse_length_category(std::string_view s);

/// Right-closed minute intervals (0, b0], (b0, b1], (b1, b2].
struct LengthBoundaries {
  std::array<double, 3> upper_minutes = {10.0, 25.0, 80.0};

  bool valid() const noexcept;
};

/// nullopt when the time falls outside (0, upper_minutes[2]].
std::optional<LengthCategory> categorize(double fastest_time_s,
                                         const LengthBoundaries& boundaries = {});

struct CohortFilter {
  std::optional<std::string> city;
  std::optional<bool> resident;
  std::optional<LengthCategory> category;
  LengthBoundaries boundaries;

  bool matches(const RatingRecord& r) const;
  std::string describe() const;
};

struct ApproachStats {
  std::string approach;
  double mean = 0.0;
  double sd = 0.0;        // sample (n-1) standard deviation
  std::size_t n = 0;
  bool sd_defined = true;  // false when n == 1 (sd reported as 0)
};

struct AggregateRow {
  std::string cohort;
  std::vector<ApproachStats> approaches;
  std::size_t count = 0;
};

/// Display order for approaches: external, plateaus, dissimilarity, penalty,
/// then anything else alphabetically.
std::vector<std::string> ordered_approaches(std::span<const RatingRecord> records);

/// Per-approach mean and sample sd over the records passing the filter.
/// Throws Error(EmptyCohort) if none pass.
AggregateRow aggregate(std::span<const RatingRecord> records, const CohortFilter& filter = {});

struct AnovaResult {
  double f = 0.0;
  int df_between = 0;
  int df_error = 0;
  double p = 1.0;
  bool infinite_f = false;
  double ss_conditions = 0.0;
  double ss_subjects = 0.0;
  double ss_error = 0.0;
};

/// One-way repeated-measures ANOVA with records as subjects and approaches as
/// conditions. Every record must score every approach (Error(IncompleteScores)).
/// SS_error == 0 gives F = 0, p = 1 when SS_conditions is also 0, otherwise an
/// infinite F with p = 0.
AnovaResult rm_anova(std::span<const RatingRecord> records);

}  // namespace altroute::study
