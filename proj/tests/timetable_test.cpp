#include "bmp/timetable.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "test_support.hpp"

namespace bmp {
namespace {

using testing::assignment_fixture;
using testing::read_fixture;
using testing::table1;
using testing::table8;

bool has_violation(const std::vector<Violation>& vs, Rule rule, Team t, Slot s) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.rule == rule && v.team == t && v.slot == s; });
}

TEST(ParseTimetable, Table1) {
  const auto tt = table1();
  EXPECT_EQ(tt.num_teams(), 4);
  EXPECT_EQ(tt.num_slots(), 3);
  EXPECT_EQ(tt.opponent(0, 0), 1);  // opponent(1,1) = 2
  EXPECT_EQ(tt.opponent(2, 1), 0);  // opponent(3,2) = 1
}

TEST(ParseTimetable, Table8) {
  const auto tt = table8();
  EXPECT_EQ(tt.num_teams(), 8);
  EXPECT_EQ(tt.num_slots(), 7);
  EXPECT_EQ(tt.opponent(2, 4), 6);  // opponent(3,5) = 7
}

TEST(ParseTimetable, InvolutionViolationNamesTheCell) {
  const std::string text =
      "Slot,1,2,3\n"
      "1,2,3,4\n"
      "2,3,4,1\n"
      "3,4,1,2\n"
      "4,3,2,1\n";
  try {
    parse_timetable(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(has_violation(e.violations(), Rule::kNotInvolution, 1, 0));
  }
}

TEST(ParseTimetable, MalformedText) {
  EXPECT_THROW(parse_timetable(""), ParseError);
  EXPECT_THROW(parse_timetable("Team,1,2,3\n1,2,3,4\n"), ParseError);
  EXPECT_THROW(parse_timetable("Slot,1,2,3\n1,2,x,4\n"), ParseError);
  EXPECT_THROW(parse_timetable("Slot,1,2,3\n1,2,3\n"), ParseError);
  EXPECT_THROW(parse_timetable("Slot,1,2,3\n2,1,4,3\n"), ParseError);
  EXPECT_THROW(parse_timetable("Slot,1,3,2\n1,2,3,4\n"), ParseError);
}

TEST(ParseTimetable, OddOrWrongSizedGridIsAValidationError) {
  EXPECT_THROW(parse_timetable("Slot,1,2\n1,2,3\n2,1,3\n3,1,2\n"), ValidationError);
  EXPECT_THROW(parse_timetable("Slot,1,2\n1,2,3\n2,1,4\n3,4,1\n4,3,2\n"), ValidationError);
}

TEST(ParseTimetable, TrailingBlankLinesAndSpaces) {
  const auto tt = parse_timetable("Slot, 1, 2, 3\r\n1, 2, 3, 4\n2,1,4,3\n3,4,1,2\n4,3,2,1\n\n\n");
  EXPECT_EQ(tt, table1());
}

TEST(Validate, ReferenceTimetablesAreValid) {
  EXPECT_TRUE(validate(table1()).empty());
  EXPECT_TRUE(validate(table8()).empty());
}

TEST(Validate, DuplicateOpponentReportsPermutationViolation) {
  const auto bad = Timetable::from_rows({{2, 3, 3}, {1, 4, 3}, {4, 1, 2}, {3, 2, 1}});
  const auto vs = validate(bad);
  EXPECT_TRUE(has_violation(vs, Rule::kNotPermutation, 0, 2));
  // every violation is listed, not just the first
  EXPECT_GT(vs.size(), 1u);
}

TEST(Validate, SelfMatchAndOutOfRange) {
  const auto bad = Timetable::from_rows({{1, 3, 9}, {1, 4, 3}, {4, 1, 2}, {3, 2, 1}});
  const auto vs = validate(bad);
  EXPECT_TRUE(has_violation(vs, Rule::kSelfMatch, 0, 0));
  EXPECT_TRUE(has_violation(vs, Rule::kOutOfRange, 0, 2));
}

TEST(GenerateCircle, SmallIsValid) { EXPECT_TRUE(is_valid(generate_circle(4))); }

TEST(GenerateCircle, SeededIsDeterministic) { EXPECT_EQ(generate_circle(8, 7), generate_circle(8, 7)); }

TEST(GenerateCircle, RejectsOddOrTiny) {
  EXPECT_THROW(generate_circle(5), std::invalid_argument);
  EXPECT_THROW(generate_circle(2), std::invalid_argument);
}

TEST(GenerateCircle, ValidForAllSizesAndSeeds) {
  for (int teams = 4; teams <= 16; teams += 2) {
    ASSERT_TRUE(is_valid(generate_circle(teams))) << teams;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      ASSERT_TRUE(is_valid(generate_circle(teams, seed))) << teams << " seed " << seed;
    }
  }
}

TEST(GenerateRandom, ValidAndDeterministic) {
  for (int teams = 4; teams <= 16; teams += 2) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto tt = generate_random(teams, seed);
      ASSERT_TRUE(is_valid(tt)) << teams << " seed " << seed;
      ASSERT_EQ(tt, generate_random(teams, seed));
    }
  }
}

TEST(MatchSlot, ReferenceExamples) {
  EXPECT_EQ(match_slot(table1(), 0, 3), 2);  // s({1,4}) = 3
  EXPECT_EQ(match_slot(table8(), 2, 6), 4);  // s({3,7}) = 5
  EXPECT_THROW(match_slot(table1(), 2, 2), std::invalid_argument);
}

TEST(MatchSlot, IsSymmetricAndAgreesWithOpponent) {
  const auto tt = table8();
  for (Team a = 0; a < 8; ++a) {
    for (Team b = 0; b < 8; ++b) {
      if (a == b) continue;
      const Slot s = match_slot(tt, a, b);
      EXPECT_EQ(s, match_slot(tt, b, a));
      EXPECT_EQ(tt.opponent(a, s), b);
    }
  }
}

TEST(CountBreaks, Table2) {
  const auto r = count_breaks(assignment_fixture("table2.csv"));
  EXPECT_EQ(r.total, 2);
  const std::vector<std::pair<Team, Slot>> expected{{1, 1}, {2, 1}};  // (2,2), (3,2)
  EXPECT_EQ(r.positions, expected);
}

TEST(CountBreaks, Table11) { EXPECT_EQ(count_breaks(assignment_fixture("table11.csv")).total, 8); }

TEST(CountBreaks, AlternatingRowsHaveNone) {
  const auto z = HaAssignment::from_rows({"HAH", "AHA", "HAH", "AHA"});
  EXPECT_EQ(count_breaks(z).total, 0);
}

TEST(CountBreaks, RejectsPartial) {
  EXPECT_THROW(count_breaks(assignment_fixture("table3.csv")), std::invalid_argument);
}

TEST(IsConsistent, ReferenceExamples) {
  EXPECT_TRUE(is_consistent(assignment_fixture("table2.csv"), table1()));
  EXPECT_TRUE(is_consistent(assignment_fixture("table3.csv"), table1()));
  EXPECT_TRUE(is_consistent(HaAssignment(4, 3), table1()));

  const auto conflicts = find_conflicts(assignment_fixture("table7.csv"), table1());
  ASSERT_EQ(conflicts.size(), 1u);
  EXPECT_EQ(conflicts[0].first, 0);
  EXPECT_EQ(conflicts[0].second, 2);
  EXPECT_EQ(conflicts[0].slot, 1);
  EXPECT_EQ(conflicts[0].venue, Venue::kHome);
}

TEST(Complete, ForcedCellsOfTable3GiveTable2) {
  EXPECT_EQ(complete(assignment_fixture("table3.csv"), table1()), assignment_fixture("table2.csv"));
}

TEST(Complete, OpenMatchesGiveHomeToSmallerTeam) {
  const auto tt = table1();
  const auto z = complete(HaAssignment(4, 3), tt);
  for (Slot s = 0; s < 3; ++s) {
    for (Team t = 0; t < 4; ++t) {
      EXPECT_EQ(z.at(t, s), t < tt.opponent(t, s) ? Venue::kHome : Venue::kAway);
    }
  }
}

TEST(Complete, FullInputUnchanged) {
  const auto z = assignment_fixture("table2.csv");
  EXPECT_EQ(complete(z, table1()), z);
}

TEST(Complete, RejectsInconsistentInput) {
  EXPECT_THROW(complete(assignment_fixture("table7.csv"), table1()), std::invalid_argument);
}

// Random partial assignments derived from random full consistent ones.
TEST(Complete, PropertiesOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    const int teams = 4 + 2 * static_cast<int>(rng() % 5);
    const auto tt = testing::random_timetable(teams, rng());
    HaAssignment full(teams, teams - 1);
    for (Slot s = 0; s < tt.num_slots(); ++s) {
      for (Team t = 0; t < teams; ++t) {
        const Team o = tt.opponent(t, s);
        if (t > o) continue;
        const bool home = rng() & 1;
        full.set(t, s, home ? Venue::kHome : Venue::kAway);
        full.set(o, s, home ? Venue::kAway : Venue::kHome);
      }
    }
    ASSERT_TRUE(is_consistent(full, tt));
    // every slot has n home and n away teams
    for (Slot s = 0; s < tt.num_slots(); ++s) {
      int home = 0;
      for (Team t = 0; t < teams; ++t) home += full.at(t, s) == Venue::kHome;
      ASSERT_EQ(home, teams / 2);
    }
    auto partial = full;
    for (Team t = 0; t < teams; ++t) {
      for (Slot s = 0; s < tt.num_slots(); ++s) {
        if (rng() % 3 == 0) partial.set(t, s, Venue::kOpen);
      }
    }
    const auto done = complete(partial, tt);
    ASSERT_TRUE(done.is_full());
    ASSERT_TRUE(is_consistent(done, tt));
    ASSERT_EQ(complete(done, tt), done);
    for (Team t = 0; t < teams; ++t) {
      for (Slot s = 0; s < tt.num_slots(); ++s) {
        if (partial.at(t, s) != Venue::kOpen) {
          ASSERT_EQ(done.at(t, s), partial.at(t, s));
        }
      }
    }
    for (auto [t, s] : count_breaks(done).positions) ASSERT_GE(s, 1);
  }
}

TEST(Csv, WriteThenParse) {
  std::ostringstream os;
  write_timetable(os, table8());
  EXPECT_EQ(os.str(), read_fixture("table8.csv"));
  std::ostringstream ha;
  write_assignment(ha, assignment_fixture("table3.csv"));
  EXPECT_EQ(ha.str(), read_fixture("table3.csv"));
}

TEST(Csv, BadVenueSymbol) { EXPECT_THROW(parse_assignment("Slot,1\n1,X\n"), ParseError); }

}  // namespace
}  // namespace bmp
