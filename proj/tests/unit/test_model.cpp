#include <doctest.h>

#include "model/codebook.hpp"
#include "support/tmpdir.hpp"
#include "util/csv.hpp"
#include "util/errors.hpp"

using namespace codesat;

namespace {
model::InitialCode code(const std::string& n) { return {n, "description of " + n, "q-" + n}; }
}  // namespace

TEST_CASE("append_unique grows by one and preserves prior entries") {
  model::UniqueCumulativeCodebook ucc;
  ucc.append_unique(code("C1"), {"iv01", 1});
  REQUIRE(ucc.entries().size() == 1);

  for (int i = 2; i <= 18; ++i) ucc.append_unique(code("C" + std::to_string(i)), {"iv02", 2});
  auto before = ucc.entries();
  ucc.append_unique(code("novel"), {"iv03", 3});
  CHECK(ucc.entries().size() == 19);
  for (size_t i = 0; i < before.size(); ++i) CHECK(ucc.entries()[i] == before[i]);
}

TEST_CASE("record_duplicate keeps entries untouched and validates the index") {
  model::UniqueCumulativeCodebook ucc;
  ucc.append_unique(code("A"), {"iv01", 1});
  ucc.append_unique(code("B"), {"iv01", 1});

  ucc.record_duplicate(code("A'"), size_t{0}, 2, "looks the same");
  ucc.record_duplicate(code("B'"), size_t{1}, 2, std::nullopt);
  REQUIRE(ucc.duplicates().size() == 2);
  CHECK(ucc.duplicates()[0].matched_unique_index == size_t{0});
  CHECK(ucc.duplicates()[1].matched_unique_index == size_t{1});
  CHECK(ucc.entries().size() == 2);

  CHECK_THROWS_AS(ucc.record_duplicate(code("X"), size_t{5}, 3, std::nullopt), InputError);
}

TEST_CASE("validate_code enforces hard invariants and soft targets") {
  std::vector<std::string> warnings;
  CHECK_THROWS_AS(model::validate_code({"  ", "desc", "q"}, nullptr), InputError);
  CHECK_THROWS_AS(model::validate_code({"name", "", "q"}, nullptr), InputError);

  model::validate_code({"one two three four five six", "d", ""}, &warnings);
  REQUIRE(warnings.size() == 2);  // long name + empty quote
  CHECK(warnings[0].find("exceeds") != std::string::npos);
  CHECK(warnings[1].find("empty quote") != std::string::npos);
}

TEST_CASE("code identity ignores quotes and whitespace/case differences") {
  model::InitialCode a{"Fear of change", "Worries about new processes", "said A"};
  model::InitialCode b{"  fear OF  change", "worries about new processes ", "said B"};
  CHECK(model::code_key(a) == model::code_key(b));
  CHECK(model::code_pair_text(a) == "Fear of change. Worries about new processes");
}

TEST_CASE("total cumulative codebook concatenates in order with running counts") {
  std::vector<model::InterviewCodeSet> sets{
      {"iv01", 1, {code("a"), code("b"), code("c")}},
      {"iv02", 2, {code("d"), code("e")}},
  };
  auto tcc = model::TotalCumulativeCodebook::from_code_sets(sets);
  REQUIRE(tcc.entries.size() == 5);
  CHECK(tcc.entries[3].source.interview_id == "iv02");
  REQUIRE(tcc.cumulative_total_at.size() == 2);
  CHECK(tcc.cumulative_total_at[0].cumulative_total == 3);
  CHECK(tcc.cumulative_total_at[1].cumulative_total == 5);
}

TEST_CASE("codes csv round trip") {
  testing::TmpDir tmp("model");
  model::InterviewCodeSet set{"iv07", 7, {{"A, with comma", "desc \"quoted\"", "multi\nline"}}};
  std::string path = tmp.str("codes.csv");
  model::write_codes_csv(path, set);
  auto loaded = model::read_codes_csv(path);
  CHECK(loaded.interview_id == set.interview_id);
  CHECK(loaded.position == set.position);
  REQUIRE(loaded.codes.size() == 1);
  CHECK(loaded.codes[0] == set.codes[0]);
}

TEST_CASE("duplicates csv cites the surviving code by name and index") {
  testing::TmpDir tmp("model");
  model::UniqueCumulativeCodebook ucc;
  ucc.append_unique(code("Kept"), {"iv01", 1});
  ucc.record_duplicate(code("Dropped"), size_t{0}, 2, "same meaning");
  ucc.record_duplicate(code("ListDrop"), std::nullopt, 3, std::nullopt);

  std::string path = tmp.str("dups.csv");
  model::write_duplicates_csv(path, ucc);
  auto rows = util::csv_read_with_header(path, model::kDuplicatesCsvHeader);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][3] == "Kept");
  CHECK(rows[0][4] == "0");
  CHECK(rows[0][5] == "same meaning");
  CHECK(rows[1][3] == "");  // whole-list judge cannot name the match
  CHECK(rows[1][4] == "");
}

TEST_CASE("counts csv round trip") {
  testing::TmpDir tmp("model");
  std::vector<model::PositionCount> counts{{1, 15, 15}, {2, 31, 25}, {3, 45, 33}};
  std::string path = tmp.str("counts.csv");
  model::write_counts_csv(path, counts);
  CHECK(model::read_counts_csv(path) == counts);
}
