#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "geonet/errors.hpp"
#include "geonet/ingest.hpp"

using namespace geonet;

namespace {

std::vector<InfectionRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_records(in);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

InfectionRecord rec(std::string id, std::string state, const char* date) {
  return InfectionRecord{std::move(id), std::move(state), GeoPoint(20, 78), Date::parse(date), 0};
}

const std::string kHeader = "region_id,state,latitude,longitude,first_report_date\n";

}  // namespace

TEST_CASE("parse well-formed rows") {
  auto r = parse("# comment\n" + kHeader +
                 "D1,Kerala,10.5,76.2,2020-01-30\n"
                 "\n"
                 "D2,Delhi,28.7,77.1,2020-03-02\n"
                 "# trailing comment\n"
                 "D3,Maharashtra,19.07,72.88,2020-03-09\r\n");
  REQUIRE(r.size() == 3);
  CHECK(r[0].region_id == "D1");
  CHECK(r[0].state == "Kerala");
  CHECK(r[1].location.lat() == doctest::Approx(28.7));
  CHECK(r[2].first_report == Date(2020, 3, 9));
  CHECK(r[2].row == 7);
}

TEST_CASE("header only gives no records") { CHECK(parse(kHeader).empty()); }

TEST_CASE("row errors name the row and field") {
  auto msg = error_of(kHeader + "D1,Kerala,95,76.2,2020-01-30\n");
  CHECK(msg.find("row 2") != std::string::npos);
  CHECK(msg.find("lat") != std::string::npos);

  msg = error_of(kHeader + "D1,Kerala,10,76.2,2020-02-30\n");
  CHECK(msg.find("first_report_date") != std::string::npos);

  msg = error_of(kHeader + "D1,Kerala,10,76.2\n");
  CHECK(msg.find("first_report_date") != std::string::npos);

  msg = error_of(kHeader + "D1,Kerala,10,abc,2020-01-30\n");
  CHECK(msg.find("longitude") != std::string::npos);

  msg = error_of(kHeader + ",Kerala,10,70,2020-01-30\n");
  CHECK(msg.find("region_id") != std::string::npos);

  CHECK(!error_of("id,state\n").empty());
  CHECK(!error_of("").empty());
}

TEST_CASE("duplicate ids name both rows") {
  auto msg = error_of(kHeader + "D1,A,10,70,2020-03-01\nD2,A,11,70,2020-03-01\nD1,A,12,70,2020-03-01\n");
  CHECK(msg.find("D1") != std::string::npos);
  CHECK(msg.find("rows 2 and 4") != std::string::npos);
}

TEST_CASE("exclusion filters by state and keeps order") {
  std::vector<InfectionRecord> rs{rec("a", "X", "2020-03-01"), rec("b", "Assam", "2020-03-01"),
                                  rec("c", "Y", "2020-03-02"), rec("d", "Manipur", "2020-03-02"),
                                  rec("e", "Z", "2020-03-03")};
  const std::set<std::string> ne{"Assam", "Manipur", "Sikkim"};
  auto kept = apply_exclusion(rs, ne);
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].region_id == "a");
  CHECK(kept[1].region_id == "c");
  CHECK(kept[2].region_id == "e");
  CHECK(apply_exclusion(rs, {}).size() == 5);
  CHECK(apply_exclusion(rs, {"X", "Y", "Z", "Assam", "Manipur"}).empty());
  CHECK(unmatched_states(rs, ne) == std::vector<std::string>{"Sikkim"});

  auto twice = apply_exclusion(kept, ne);
  REQUIRE(twice.size() == kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) CHECK(twice[i].region_id == kept[i].region_id);
}

TEST_CASE("state list parsing") {
  std::istringstream in("# north-east\nAssam\n  Manipur \n\nSikkim\n");
  CHECK(parse_state_list(in) == std::set<std::string>{"Assam", "Manipur", "Sikkim"});
}

TEST_CASE("timeline counts cumulatively") {
  std::vector<InfectionRecord> rs{rec("a", "X", "2020-03-01"), rec("b", "X", "2020-03-01"), rec("c", "X", "2020-03-03")};
  auto tl = build_timeline(rs, Date(2020, 3, 1), Date(2020, 3, 3));
  CHECK(tl.cumulative == std::vector<std::size_t>{2, 2, 3});
  CHECK(tl.new_on(0) == 2);
  CHECK(tl.new_on(1) == 0);
  CHECK(tl.new_on(2) == 1);
  CHECK(tl.vertices_on(2) == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("pre-window records carry into day 0; post-window records drop") {
  std::vector<InfectionRecord> rs{rec("kerala", "Kerala", "2020-01-30"), rec("late", "X", "2020-05-01")};
  auto tl = build_timeline(rs, Date(2020, 3, 1), Date(2020, 3, 4));
  CHECK(tl.cumulative == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(tl.regions.size() == 1);
}

TEST_CASE("no records gives empty days") {
  auto tl = build_timeline({}, Date(2020, 3, 1), Date(2020, 3, 2));
  CHECK(tl.cumulative == std::vector<std::size_t>{0, 0});
}

TEST_CASE("start after end is rejected") {
  CHECK_THROWS_AS(build_timeline({}, Date(2020, 3, 2), Date(2020, 3, 1)), ValidationError);
}

TEST_CASE("timeline is monotone and independent of record order") {
  std::mt19937_64 rng(5);
  std::vector<InfectionRecord> rs;
  for (int i = 0; i < 60; ++i) {
    rs.push_back(rec("r" + std::to_string(i), "X", Date(2020, 2, 20 + static_cast<unsigned>(rng() % 9)).to_string().c_str()));
    rs.back().first_report = Date(2020, 2, 20) + static_cast<int>(rng() % 40);
  }
  auto base = build_timeline(rs, Date(2020, 3, 1), Date(2020, 3, 20));
  for (std::size_t k = 1; k < base.cumulative.size(); ++k) CHECK(base.cumulative[k] >= base.cumulative[k - 1]);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(rs.begin(), rs.end(), rng);
    auto again = build_timeline(rs, Date(2020, 3, 1), Date(2020, 3, 20));
    CHECK(again.cumulative == base.cumulative);
    for (std::size_t k = 0; k < base.dates.size(); ++k) CHECK(again.vertices_on(k) == base.vertices_on(k));
  }
}

TEST_CASE("dates parse strictly") {
  CHECK(Date::parse("2020-02-29").to_string() == "2020-02-29");
  CHECK_THROWS_AS(Date::parse("2019-02-29"), ValidationError);
  CHECK_THROWS_AS(Date::parse("2020-3-01"), ValidationError);
  CHECK_THROWS_AS(Date::parse("2020/03/01"), ValidationError);
  CHECK(Date(2020, 4, 12) - Date(2020, 3, 1) == 42);
}
