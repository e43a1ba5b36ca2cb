#pragma once

#include <cstddef>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "geonet/date.hpp"
#include "geonet/geo.hpp"

namespace geonet {

/// One region's identity, location and first-report date.
struct InfectionRecord {
  std::string region_id;
  std::string state;
  GeoPoint location;
  Date first_report;
  std::size_t row = 0;  // 1-based data row in the source file (0 if synthesized in memory)
};

/// Column layout of the input CSV. The header must match exactly.
inline constexpr const char* kRecordHeader = "region_id,state,latitude,longitude,first_report_date";

/// Parses the record CSV. `#` comment lines and blank lines are skipped.
/// Errors name the data row number and field; duplicate ids name both rows.
std::vector<InfectionRecord> parse_records(std::istream& source);
std::vector<InfectionRecord> parse_records_file(const std::string& path);

/// Reads an exclusion list: one state name per line, `#` comments and blanks ignored.
std::set<std::string> parse_state_list(std::istream& source);
std::set<std::string> parse_state_list_file(const std::string& path);

/// Drops records whose state is excluded, keeping relative order.
std::vector<InfectionRecord> apply_exclusion(const std::vector<InfectionRecord>& records,
                                             const std::set<std::string>& excluded_states);

/// Excluded states that match no record (callers report these as warnings).
std::vector<std::string> unmatched_states(const std::vector<InfectionRecord>& records,
                                          const std::set<std::string>& excluded_states);

/// Daily cumulative vertex sets over a closed date window.
///
/// Vertices are ordered by (effective first-report day, region_id), so each day's
/// list is a prefix of the next day's and `regions[0..size(k))` is V(day k).
struct VertexTimeline {
  std::vector<Date> dates;
  std::vector<InfectionRecord> regions;   // every region that appears in the window, in vertex order
  std::vector<std::size_t> cumulative;    // |V(t)| per date

  std::size_t size_on(std::size_t day) const { return cumulative.at(day); }
  std::size_t new_on(std::size_t day) const {
    return day == 0 ? cumulative.at(0) : cumulative.at(day) - cumulative.at(day - 1);
  }
  std::vector<std::string> vertices_on(std::size_t day) const;
};

/// Records before `start` are carried into day 0; records after `end` are dropped.
/// Throws ValidationError if start > end.
VertexTimeline build_timeline(const std::vector<InfectionRecord>& records, Date start, Date end);

}  // namespace geonet
