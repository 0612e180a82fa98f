#pragma once

// Single round-robin timetables and (partial) home/away assignments.
//
// Teams and slots are dense 0-based indices everywhere in the library. The
// CSV readers and writers translate to and from the 1-based labels used in
// printed schedules.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bmp {

using Team = int;
using Slot = int;

/// Thrown for text that cannot be read as a timetable/assignment grid.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Opponent matrix of a single round robin: 2n teams, 2n-1 slots.
class Timetable {
 public:
  Timetable() = default;

  /// `opponents` is row-major, team by slot, 0-based team ids. Not validated
  /// here; see validate().
  Timetable(int num_teams, std::vector<Team> opponents)
      : num_teams_(num_teams), opponents_(std::move(opponents)) {
    if (num_teams_ < 2 || opponents_.size() != static_cast<std::size_t>(num_teams_) * num_slots()) {
      throw std::invalid_argument("timetable dimensions must be 2n x (2n-1)");
    }
  }

  /// Builds from rows of 1-based opponent labels, as printed in tables.
  static Timetable from_rows(const std::vector<std::vector<int>>& rows) {
    const int teams = static_cast<int>(rows.size());
    std::vector<Team> flat;
    flat.reserve(rows.size() * (rows.empty() ? 0 : rows.size() - 1));
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != teams - 1) {
        throw std::invalid_argument("timetable row length must be num_teams - 1");
      }
      for (int label : row) flat.push_back(label - 1);
    }
    return Timetable(teams, std::move(flat));
  }

  int num_teams() const { return num_teams_; }
  int num_slots() const { return num_teams_ - 1; }
  /// n, half the number of teams.
  int half() const { return num_teams_ / 2; }

  Team opponent(Team t, Slot s) const { return opponents_[index(t, s)]; }

  friend bool operator==(const Timetable&, const Timetable&) = default;

 private:
  std::size_t index(Team t, Slot s) const {
    return static_cast<std::size_t>(t) * num_slots() + s;
  }

  int num_teams_ = 0;
  std::vector<Team> opponents_;
};

enum class Venue : char { kHome = 'H', kAway = 'A', kOpen = '*' };

inline Venue opposite(Venue v) {
  switch (v) {
    case Venue::kHome: return Venue::kAway;
    case Venue::kAway: return Venue::kHome;
    default: return Venue::kOpen;
  }
}

/// Team x slot matrix over {H, A, *}. A full assignment has no '*'.
class HaAssignment {
 public:
  HaAssignment() = default;
  HaAssignment(int num_teams, int num_slots, Venue fill = Venue::kOpen)
      : num_teams_(num_teams),
        num_slots_(num_slots),
        cells_(static_cast<std::size_t>(num_teams) * num_slots, fill) {}

  /// Rows of characters 'H', 'A', '*', one string per team.
  static HaAssignment from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) return {};
    HaAssignment z(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int t = 0; t < z.num_teams(); ++t) {
      if (static_cast<int>(rows[t].size()) != z.num_slots()) {
        throw std::invalid_argument("ragged assignment rows");
      }
      for (int s = 0; s < z.num_slots(); ++s) z.set(t, s, venue_from_char(rows[t][s]));
    }
    return z;
  }

  static Venue venue_from_char(char c) {
    switch (c) {
      case 'H': return Venue::kHome;
      case 'A': return Venue::kAway;
      case '*': return Venue::kOpen;
      default: throw ParseError(std::string("invalid venue symbol '") + c + "'");
    }
  }

  int num_teams() const { return num_teams_; }
  int num_slots() const { return num_slots_; }

  Venue at(Team t, Slot s) const { return cells_[index(t, s)]; }
  void set(Team t, Slot s, Venue v) { cells_[index(t, s)] = v; }

  bool is_full() const {
    return std::none_of(cells_.begin(), cells_.end(), [](Venue v) { return v == Venue::kOpen; });
  }

  friend bool operator==(const HaAssignment&, const HaAssignment&) = default;

 private:
  std::size_t index(Team t, Slot s) const { return static_cast<std::size_t>(t) * num_slots_ + s; }

  int num_teams_ = 0;
  int num_slots_ = 0;
  std::vector<Venue> cells_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Rule {
  kDimensions,      // not 2n x (2n-1) with 2n even and >= 4
  kOutOfRange,      // opponent id outside the team range
  kSelfMatch,       // team scheduled against itself
  kNotPermutation,  // repeated opponent within a team's row
  kNotInvolution,   // opponent(opponent(t,s),s) != t
  kPairNotUnique,   // a pair of teams meets zero or several times
};

inline std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::kDimensions: return "dimensions";
    case Rule::kOutOfRange: return "out-of-range";
    case Rule::kSelfMatch: return "self-match";
    case Rule::kNotPermutation: return "not-permutation";
    case Rule::kNotInvolution: return "not-involution";
    case Rule::kPairNotUnique: return "pair-not-unique";
  }
  return "unknown";
}

struct Violation {
  Rule rule;
  Team team = -1;  // -1 when the violation is not tied to a cell
  Slot slot = -1;
  std::string message;
};

inline std::ostream& operator<<(std::ostream& os, const Violation& v) {
  os << rule_name(v.rule);
  if (v.team >= 0) os << " at (" << v.team + 1 << "," << v.slot + 1 << ")";
  return os << ": " << v.message;
}

/// Every violated timetable rule, in row-major cell order per rule family.
/// Empty means the timetable is valid.
inline std::vector<Violation> validate(const Timetable& tt) {
  std::vector<Violation> out;
  const int teams = tt.num_teams();
  if (teams < 4 || teams % 2 != 0) {
    out.push_back({Rule::kDimensions, -1, -1,
                   "team count " + std::to_string(teams) + " must be even and at least 4"});
    if (teams < 2) return out;
  }
  const int slots = tt.num_slots();
  auto in_range = [&](Team t) { return t >= 0 && t < teams; };

  for (Team t = 0; t < teams; ++t) {
    std::vector<int> seen(teams, -1);
    for (Slot s = 0; s < slots; ++s) {
      const Team o = tt.opponent(t, s);
      if (!in_range(o)) {
        out.push_back({Rule::kOutOfRange, t, s, "opponent " + std::to_string(o + 1) + " is not a team"});
        continue;
      }
      if (o == t) {
        out.push_back({Rule::kSelfMatch, t, s, "team plays itself"});
        continue;
      }
      if (seen[o] >= 0) {
        out.push_back({Rule::kNotPermutation, t, s,
                       "opponent " + std::to_string(o + 1) + " already met in slot " +
                           std::to_string(seen[o] + 1)});
      } else {
        seen[o] = s;
      }
    }
  }

  for (Team t = 0; t < teams; ++t) {
    for (Slot s = 0; s < slots; ++s) {
      const Team o = tt.opponent(t, s);
      if (in_range(o) && o != t && tt.opponent(o, s) != t) {
        out.push_back({Rule::kNotInvolution, o, s,
                       "team " + std::to_string(t + 1) + " lists " + std::to_string(o + 1) +
                           " but " + std::to_string(o + 1) + " lists " +
                           std::to_string(tt.opponent(o, s) + 1)});
      }
    }
  }

  for (Team a = 0; a < teams; ++a) {
    for (Team b = a + 1; b < teams; ++b) {
      int meetings = 0;
      for (Slot s = 0; s < slots; ++s) meetings += tt.opponent(a, s) == b;
      if (meetings != 1) {
        out.push_back({Rule::kPairNotUnique, -1, -1,
                       "teams " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " meet " +
                           std::to_string(meetings) + " times"});
      }
    }
  }
  return out;
}

inline bool is_valid(const Timetable& tt) { return validate(tt).empty(); }

/// Thrown when a timetable fails validation; carries every violation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : std::runtime_error(summary(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summary(const std::vector<Violation>& vs) {
    std::ostringstream os;
    os << "invalid timetable (" << vs.size() << " violation" << (vs.size() == 1 ? "" : "s") << ")";
    if (!vs.empty()) os << ": " << vs.front();
    return os.str();
  }

  std::vector<Violation> violations_;
};

inline void require_valid(const Timetable& tt) {
  if (auto vs = validate(tt); !vs.empty()) throw ValidationError(std::move(vs));
}

// ---------------------------------------------------------------------------
// CSV grids
//
// Header `Slot,1,2,...,m`; then one row per team `t,c1,...,cm` with t running
// 1..rows in order. Blank lines are ignored; cells are trimmed.

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline int parse_int(const std::string& cell, int line_no) {
  int value = 0;
  std::size_t used = 0;
  try {
    value = std::stoi(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (cell.empty() || used != cell.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + cell + "'");
  }
  return value;
}

/// Reads the labelled grid, returning the body cells (row label stripped).
inline std::vector<std::vector<std::string>> read_grid(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) header = split_csv_line(line);
  }
  if (header.empty()) throw ParseError("empty input");
  if (header.front() != "Slot") {
    throw ParseError("line " + std::to_string(line_no) + ": header must start with 'Slot'");
  }
  const int cols = static_cast<int>(header.size()) - 1;
  if (cols < 1) throw ParseError("line " + std::to_string(line_no) + ": header lists no slots");
  for (int c = 1; c <= cols; ++c) {
    if (parse_int(header[c], line_no) != c) {
      throw ParseError("line " + std::to_string(line_no) + ": slot header must read 1.." +
                       std::to_string(cols));
    }
  }

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != cols + 1) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols + 1) +
                       " cells, got " + std::to_string(cells.size()));
    }
    const int label = parse_int(cells.front(), line_no);
    if (label != static_cast<int>(rows.size()) + 1) {
      throw ParseError("line " + std::to_string(line_no) + ": expected row label " +
                       std::to_string(rows.size() + 1) + ", got " + cells.front());
    }
    cells.erase(cells.begin());
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline void write_header(std::ostream& os, int cols) {
  os << "Slot";
  for (int c = 1; c <= cols; ++c) os << ',' << c;
  os << '\n';
}

}  // namespace detail

/// Parses and validates a timetable grid. Throws ParseError on malformed
/// text and ValidationError when the grid is not a round robin.
inline Timetable parse_timetable(std::istream& in) {
  const auto rows = detail::read_grid(in);
  const int teams = static_cast<int>(rows.size());
  std::vector<Team> flat;
  flat.reserve(rows.size() * rows.front().size());
  for (int t = 0; t < teams; ++t) {
    for (const auto& cell : rows[t]) flat.push_back(detail::parse_int(cell, t + 2) - 1);
  }
  if (teams % 2 != 0 || teams < 4) {
    throw ValidationError({{Rule::kDimensions, -1, -1,
                            "team count " + std::to_string(teams) + " must be even and at least 4"}});
  }
  if (static_cast<int>(rows.front().size()) != teams - 1) {
    throw ValidationError({{Rule::kDimensions, -1, -1,
                            std::to_string(teams) + " teams need " + std::to_string(teams - 1) +
                                " slots, got " + std::to_string(rows.front().size())}});
  }
  Timetable tt(teams, std::move(flat));
  require_valid(tt);
  return tt;
}

inline Timetable parse_timetable(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_timetable(is);
}

inline void write_timetable(std::ostream& os, const Timetable& tt) {
  detail::write_header(os, tt.num_slots());
  for (Team t = 0; t < tt.num_teams(); ++t) {
    os << t + 1;
    for (Slot s = 0; s < tt.num_slots(); ++s) os << ',' << tt.opponent(t, s) + 1;
    os << '\n';
  }
}

inline HaAssignment parse_assignment(std::istream& in) {
  const auto rows = detail::read_grid(in);
  HaAssignment z(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int t = 0; t < z.num_teams(); ++t) {
    for (int s = 0; s < z.num_slots(); ++s) {
      const auto& cell = rows[t][s];
      if (cell.size() != 1) throw ParseError("line " + std::to_string(t + 2) + ": bad venue '" + cell + "'");
      z.set(t, s, HaAssignment::venue_from_char(cell.front()));
    }
  }
  return z;
}

inline HaAssignment parse_assignment(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_assignment(is);
}

inline void write_assignment(std::ostream& os, const HaAssignment& z) {
  detail::write_header(os, z.num_slots());
  for (Team t = 0; t < z.num_teams(); ++t) {
    os << t + 1;
    for (Slot s = 0; s < z.num_slots(); ++s) os << ',' << static_cast<char>(z.at(t, s));
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Generators

/// Canonical circle-method schedule: team 2n-1 (0-based) is fixed, the rest
/// rotate. With a seed, team labels and slot order are permuted.
inline Timetable generate_circle(int num_teams, std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
  if (num_teams < 4 || num_teams % 2 != 0) {
    throw std::invalid_argument("generate_circle: team count must be even and at least 4, got " +
                                std::to_string(num_teams));
  }
  const int slots = num_teams - 1;
  const int ring = num_teams - 1;
  std::vector<Team> opp(static_cast<std::size_t>(num_teams) * slots);
  auto put = [&](Team a, Team b, Slot s) {
    opp[static_cast<std::size_t>(a) * slots + s] = b;
    opp[static_cast<std::size_t>(b) * slots + s] = a;
  };
  for (Slot s = 0; s < slots; ++s) {
    put(s, ring, s);
    for (int k = 1; k < num_teams / 2; ++k) put((s + k) % ring, (s - k + ring) % ring, s);
  }
  if (!shuffle_seed) return Timetable(num_teams, std::move(opp));

  std::mt19937_64 rng(*shuffle_seed);
  std::vector<Team> relabel(num_teams);
  std::iota(relabel.begin(), relabel.end(), 0);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::vector<Slot> order(slots);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Team> out(opp.size());
  for (Team t = 0; t < num_teams; ++t) {
    for (Slot s = 0; s < slots; ++s) {
      out[static_cast<std::size_t>(relabel[t]) * slots + order[s]] =
          relabel[opp[static_cast<std::size_t>(t) * slots + s]];
    }
  }
  return Timetable(num_teams, std::move(out));
}

/// Random 1-factorization by randomized backtracking: slot after slot, a
/// random perfect matching on the pairs not yet played. Unlike
/// generate_circle this reaches non-isomorphic schedules for 2n >= 8.
inline Timetable generate_random(int num_teams, std::uint64_t seed) {
  if (num_teams < 4 || num_teams % 2 != 0) {
    throw std::invalid_argument("generate_random: team count must be even and at least 4");
  }
  const int slots = num_teams - 1;
  std::mt19937_64 rng(seed);
  std::vector<char> played(static_cast<std::size_t>(num_teams) * num_teams, 0);
  std::vector<Team> opp(static_cast<std::size_t>(num_teams) * slots, -1);
  auto cell = [&](Team t, Slot s) -> Team& { return opp[static_cast<std::size_t>(t) * slots + s]; };
  auto met = [&](Team a, Team b) -> char& { return played[static_cast<std::size_t>(a) * num_teams + b]; };

  // Bounded restarts keep pathological dead ends from stalling generation.
  std::uint64_t budget = 0;
  auto fill = [&](auto&& self, Slot s) -> bool {
    if (s == slots) return true;
    Team first = -1;
    for (Team t = 0; t < num_teams; ++t) {
      if (cell(t, s) < 0) {
        first = t;
        break;
      }
    }
    if (first < 0) return self(self, s + 1);
    if (++budget > 200000) return false;
    std::vector<Team> cand;
    for (Team o = 0; o < num_teams; ++o) {
      if (o != first && cell(o, s) < 0 && !met(first, o)) cand.push_back(o);
    }
    std::shuffle(cand.begin(), cand.end(), rng);
    for (Team o : cand) {
      cell(first, s) = o;
      cell(o, s) = first;
      met(first, o) = met(o, first) = 1;
      if (self(self, s)) return true;
      cell(first, s) = cell(o, s) = -1;
      met(first, o) = met(o, first) = 0;
    }
    return false;
  };
  for (;;) {
    if (fill(fill, 0)) return Timetable(num_teams, std::move(opp));
    budget = 0;
    std::fill(played.begin(), played.end(), 0);
    std::fill(opp.begin(), opp.end(), -1);
  }
}

// ---------------------------------------------------------------------------
// Queries on valid timetables

/// The unique slot in which t1 meets t2.
inline Slot match_slot(const Timetable& tt, Team t1, Team t2) {
  if (t1 == t2) throw std::invalid_argument("match_slot: a team does not play itself");
  for (Slot s = 0; s < tt.num_slots(); ++s) {
    if (tt.opponent(t1, s) == t2) return s;
  }
  throw std::invalid_argument("match_slot: teams " + std::to_string(t1 + 1) + " and " +
                              std::to_string(t2 + 1) + " never meet");
}

struct BreakReport {
  int total = 0;
  /// (team, slot) with slot >= 1 (0-based), where z(t,s-1) == z(t,s).
  std::vector<std::pair<Team, Slot>> positions;
};

inline BreakReport count_breaks(const HaAssignment& z) {
  if (!z.is_full()) throw std::invalid_argument("count_breaks: assignment has open '*' cells");
  BreakReport r;
  for (Team t = 0; t < z.num_teams(); ++t) {
    for (Slot s = 1; s < z.num_slots(); ++s) {
      if (z.at(t, s - 1) == z.at(t, s)) r.positions.emplace_back(t, s);
    }
  }
  r.total = static_cast<int>(r.positions.size());
  return r;
}

/// A match whose two fixed venues coincide.
struct Conflict {
  Team first;  // smaller team id
  Team second;
  Slot slot;
  Venue venue;
};

inline std::vector<Conflict> find_conflicts(const HaAssignment& z, const Timetable& tt) {
  if (z.num_teams() != tt.num_teams() || z.num_slots() != tt.num_slots()) {
    throw std::invalid_argument("assignment and timetable dimensions differ");
  }
  std::vector<Conflict> out;
  for (Slot s = 0; s < tt.num_slots(); ++s) {
    for (Team t = 0; t < tt.num_teams(); ++t) {
      const Team o = tt.opponent(t, s);
      if (t < o && z.at(t, s) != Venue::kOpen && z.at(t, s) == z.at(o, s)) {
        out.push_back({t, o, s, z.at(t, s)});
      }
    }
  }
  return out;
}

/// True iff no match has (H,H) or (A,A) endpoints; '*' is compatible with anything.
inline bool is_consistent(const HaAssignment& z, const Timetable& tt) {
  return find_conflicts(z, tt).empty();
}

/// Fills '*' cells: forced by the opponent where it is fixed, otherwise the
/// smaller team id plays at home.
inline HaAssignment complete(const HaAssignment& z, const Timetable& tt) {
  if (!is_consistent(z, tt)) throw std::invalid_argument("complete: assignment is inconsistent");
  HaAssignment out = z;
  for (Slot s = 0; s < tt.num_slots(); ++s) {
    for (Team t = 0; t < tt.num_teams(); ++t) {
      const Team o = tt.opponent(t, s);
      if (t > o) continue;
      const Venue a = z.at(t, s);
      const Venue b = z.at(o, s);
      if (a == Venue::kOpen && b == Venue::kOpen) {
        out.set(t, s, Venue::kHome);
        out.set(o, s, Venue::kAway);
      } else if (a == Venue::kOpen) {
        out.set(t, s, opposite(b));
      } else if (b == Venue::kOpen) {
        out.set(o, s, opposite(a));
      }
    }
  }
  return out;
}

}  // namespace bmp
