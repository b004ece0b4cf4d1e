#include "altroute/study/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "altroute/error.hpp"
#include "altroute/study/f_distribution.hpp"

namespace altroute::study {

std::string_view to_string(LengthCategory c) {
  switch (c) {
    case LengthCategory::Small: return "small";
    case LengthCategory::Medium: return "medium";
    case LengthCategory::Long: return "long";
  }
  return "unknown";
}

std::optional<LengthCategory> parse_length_category(std::string_view s) {
  if (s == "small") return LengthCategory::Small;
  if (s == "medium") return LengthCategory::Medium;
  if (s == "long") return LengthCategory::Long;
  return std::nullopt;
}

bool LengthBoundaries::valid() const noexcept {
  return upper_minutes[0] > 0.0 && upper_minutes[0] < upper_minutes[1] &&
         upper_minutes[1] < upper_minutes[2];
}

std::optional<LengthCategory> categorize(double fastest_time_s, const LengthBoundaries& boundaries) {
  if (!boundaries.valid()) throw Error(ErrorCode::InvalidInput, "length boundaries must increase");
  const double minutes = fastest_time_s / 60.0;
  if (!(minutes > 0.0)) return std::nullopt;
  if (minutes <= boundaries.upper_minutes[0]) return LengthCategory::Small;
  if (minutes <= boundaries.upper_minutes[1]) return LengthCategory::Medium;
  if (minutes <= boundaries.upper_minutes[2]) return LengthCategory::Long;
  return std::nullopt;
}

bool CohortFilter::matches(const RatingRecord& r) const {
  if (city && r.city != *city) return false;
  if (resident && r.resident != *resident) return false;
  if (category && categorize(r.fastest_time, boundaries) != category) return false;
  return true;
}

std::string CohortFilter::describe() const {
  std::string out = city ? *city : "all cities";
  if (resident) out += *resident ? ", residents" : ", non-residents";
  if (category) out += ", " + std::string(to_string(*category)) + " routes";
  return out;
}

namespace {

int rank_of(const std::string& approach) {
  static constexpr std::array<std::string_view, 4> kOrder = {"external", "plateaus",
                                                            "dissimilarity", "penalty"};
  auto it = std::find(kOrder.begin(), kOrder.end(), approach);
  return it == kOrder.end() ? static_cast<int>(kOrder.size()) : static_cast<int>(it - kOrder.begin());
}

void check_score(int score) {
  if (score < 1 || score > 5) {
    throw Error(ErrorCode::InvalidInput, "score " + std::to_string(score) + " outside 1..5");
  }
}

}  // namespace

std::vector<std::string> ordered_approaches(std::span<const RatingRecord> records) {
  std::set<std::string> all;
  for (const auto& r : records) {
    for (const auto& [a, s] : r.scores) all.insert(a);
  }
  std::vector<std::string> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const std::string& a, const std::string& b) { return rank_of(a) < rank_of(b); });
  return out;
}

AggregateRow aggregate(std::span<const RatingRecord> records, const CohortFilter& filter) {
  std::vector<RatingRecord> kept;
  for (const auto& r : records) {
    if (filter.matches(r)) kept.push_back(r);
  }
  if (kept.empty()) throw Error(ErrorCode::EmptyCohort, "no responses match " + filter.describe());

  AggregateRow row;
  row.cohort = filter.describe();
  row.count = kept.size();
  for (const auto& approach : ordered_approaches(kept)) {
    ApproachStats st;
    st.approach = approach;
    double sum = 0.0;
    for (const auto& r : kept) {
      auto it = r.scores.find(approach);
      if (it == r.scores.end()) continue;
      check_score(it->second);
      sum += it->second;
      ++st.n;
    }
    st.mean = sum / static_cast<double>(st.n);
    if (st.n < 2) {
      st.sd = 0.0;
      st.sd_defined = false;
    } else {
      double ss = 0.0;
      for (const auto& r : kept) {
        auto it = r.scores.find(approach);
        if (it == r.scores.end()) continue;
        ss += (it->second - st.mean) * (it->second - st.mean);
      }
      st.sd = std::sqrt(ss / static_cast<double>(st.n - 1));
    }
    row.approaches.push_back(st);
  }
  return row;
}

AnovaResult rm_anova(std::span<const RatingRecord> records) {
  if (records.size() < 2) throw Error(ErrorCode::InvalidInput, "ANOVA needs at least two responses");
  const auto approaches = ordered_approaches(records);
  if (approaches.size() < 2) throw Error(ErrorCode::InvalidInput, "ANOVA needs at least two approaches");

  const std::size_t n = records.size();
  const std::size_t k = approaches.size();
  std::vector<double> x(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      auto it = records[i].scores.find(approaches[j]);
      if (it == records[i].scores.end()) {
        throw Error(ErrorCode::IncompleteScores,
                    "response '" + records[i].response_id + "' has no score for " + approaches[j]);
      }
      check_score(it->second);
      x[i * k + j] = it->second;
    }
  }

  std::vector<double> subject_mean(n, 0.0);
  std::vector<double> condition_mean(k, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      subject_mean[i] += x[i * k + j];
      condition_mean[j] += x[i * k + j];
      grand += x[i * k + j];
    }
  }
  for (auto& m : subject_mean) m /= static_cast<double>(k);
  for (auto& m : condition_mean) m /= static_cast<double>(n);
  grand /= static_cast<double>(n * k);

  AnovaResult res;
  double ss_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res.ss_subjects += static_cast<double>(k) * (subject_mean[i] - grand) * (subject_mean[i] - grand);
    for (std::size_t j = 0; j < k; ++j) {
      const double v = x[i * k + j];
      ss_total += (v - grand) * (v - grand);
      // interaction residual; its square sum is SS_within - SS_conditions
      const double resid = v - subject_mean[i] - condition_mean[j] + grand;
      res.ss_error += resid * resid;
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    res.ss_conditions +=
        static_cast<double>(n) * (condition_mean[j] - grand) * (condition_mean[j] - grand);
  }
  res.df_between = static_cast<int>(k - 1);
  res.df_error = static_cast<int>((k - 1) * (n - 1));

  const double tiny = 1e-12 * std::max(ss_total, std::numeric_limits<double>::min());
  if (res.ss_error <= tiny) {
    if (res.ss_conditions <= tiny) {
      res.f = 0.0;
      res.p = 1.0;
    } else {
      res.f = std::numeric_limits<double>::infinity();
      res.infinite_f = true;
      res.p = 0.0;
    }
    return res;
  }
  res.f = (res.ss_conditions / res.df_between) / (res.ss_error / res.df_error);
  res.p = f_upper_tail(res.f, res.df_between, res.df_error);
  return res;
}

}  // namespace altroute::study
