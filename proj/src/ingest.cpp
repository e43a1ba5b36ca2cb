#include "geonet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "geonet/errors.hpp"

namespace geonet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(pos)));
      return out;
    }
    out.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
}

bool skippable(std::string_view line) {
  auto t = trim(line);
  return t.empty() || t.front() == '#';
}

[[noreturn]] void row_error(std::size_t row, std::string_view field, const std::string& msg) {
  throw ValidationError("row " + std::to_string(row) + ", field " + std::string(field) + ": " + msg);
}

double parse_coordinate(std::string_view text, std::size_t row, std::string_view field) {
  if (text.empty()) row_error(row, field, "missing value");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    row_error(row, field, "not a decimal number: '" + std::string(text) + "'");
  }
  return v;
}

const char* const kColumns[] = {"region_id", "state", "latitude", "longitude", "first_report_date"};

}  // namespace

std::vector<InfectionRecord> parse_records(std::istream& source) {
  std::vector<InfectionRecord> records;
  std::map<std::string, std::size_t> seen;  // region_id -> row
  std::string line;
  std::size_t row = 0;
  bool have_header = false;

  while (std::getline(source, line)) {
    ++row;
    if (skippable(line)) continue;
    if (!have_header) {
      if (trim(line) != kRecordHeader) {
        throw ValidationError("row " + std::to_string(row) + ": expected header '" + kRecordHeader + "'");
      }
      have_header = true;
      continue;
    }

    auto fields = split_commas(line);
    if (fields.size() < 5) row_error(row, kColumns[fields.size()], "missing field");
    if (fields.size() > 5) throw ValidationError("row " + std::to_string(row) + ": too many fields");
    for (std::size_t i = 0; i < 2; ++i) {
      if (fields[i].empty()) row_error(row, kColumns[i], "missing value");
    }

    const double lat = parse_coordinate(fields[2], row, "latitude");
    const double lon = parse_coordinate(fields[3], row, "longitude");
    if (lat < -90.0 || lat > 90.0) row_error(row, "latitude", "lat " + std::string(fields[2]) + " outside [-90, 90]");
    if (lon < -180.0 || lon > 180.0) row_error(row, "longitude", "lon " + std::string(fields[3]) + " outside [-180, 180]");

    if (fields[4].empty()) row_error(row, "first_report_date", "missing value");
    Date date;
    try {
      date = Date::parse(fields[4]);
    } catch (const ValidationError& e) {
      row_error(row, "first_report_date", e.what());
    }

    std::string id(fields[0]);
    if (auto it = seen.find(id); it != seen.end()) {
      throw ValidationError("duplicate region_id '" + id + "' at rows " + std::to_string(it->second) + " and " +
                            std::to_string(row));
    }
    seen.emplace(id, row);
    records.push_back(InfectionRecord{std::move(id), std::string(fields[1]), GeoPoint(lat, lon), date, row});
  }
  if (!have_header) throw ValidationError("missing header '" + std::string(kRecordHeader) + "'");
  return records;
}

std::vector<InfectionRecord> parse_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open records file '" + path + "'");
  return parse_records(in);
}

std::set<std::string> parse_state_list(std::istream& source) {
  std::set<std::string> states;
  std::string line;
  while (std::getline(source, line)) {
    if (skippable(line)) continue;
    states.emplace(trim(line));
  }
  return states;
}

std::set<std::string> parse_state_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open exclusion list '" + path + "'");
  return parse_state_list(in);
}

std::vector<InfectionRecord> apply_exclusion(const std::vector<InfectionRecord>& records,
                                             const std::set<std::string>& excluded_states) {
  std::vector<InfectionRecord> kept;
  kept.reserve(records.size());
  std::copy_if(records.begin(), records.end(), std::back_inserter(kept),
               [&](const InfectionRecord& r) { return !excluded_states.contains(r.state); });
  return kept;
}

std::vector<std::string> unmatched_states(const std::vector<InfectionRecord>& records,
                                          const std::set<std::string>& excluded_states) {
  std::set<std::string> present;
  for (const auto& r : records) present.insert(r.state);
  std::vector<std::string> out;
  for (const auto& s : excluded_states) {
    if (!present.contains(s)) out.push_back(s);
  }
  return out;
}

std::vector<std::string> VertexTimeline::vertices_on(std::size_t day) const {
  std::vector<std::string> ids;
  const std::size_t n = size_on(day);
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(regions[i].region_id);
  return ids;
}

VertexTimeline build_timeline(const std::vector<InfectionRecord>& records, Date start, Date end) {
  if (start > end) throw ValidationError("timeline start " + start.to_string() + " is after end " + end.to_string());

  VertexTimeline tl;
  const int days = end - start + 1;
  for (int k = 0; k < days; ++k) tl.dates.push_back(start + k);

  auto effective = [&](const InfectionRecord& r) { return std::max(r.first_report, start); };
  for (const auto& r : records) {
    if (r.first_report <= end) tl.regions.push_back(r);
  }
  std::sort(tl.regions.begin(), tl.regions.end(), [&](const InfectionRecord& a, const InfectionRecord& b) {
    auto da = effective(a), db = effective(b);
    if (da != db) return da < db;
    return a.region_id < b.region_id;
  });

  tl.cumulative.assign(static_cast<std::size_t>(days), 0);
  std::size_t i = 0;
  for (int k = 0; k < days; ++k) {
    while (i < tl.regions.size() && effective(tl.regions[i]) <= tl.dates[static_cast<std::size_t>(k)]) ++i;
    tl.cumulative[static_cast<std::size_t>(k)] = i;
  }
  return tl;
}

}  // namespace geonet
