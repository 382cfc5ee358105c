#include "envs/scenario.hpp"

#include <stdexcept>

#include "core/random.hpp"
#include "envs/factories.hpp"

namespace llf {

using nlohmann::json;

const std::vector<std::string>& builtin_wordle_dictionary() {
  static const std::vector<std::string> words = {
      "apple", "totem", "token", "crane", "slate", "bread", "gloom", "pride",
      "shard", "quilt", "mirth", "vapor", "lemon", "gravy", "frost", "plume",
      "sworn", "tidal", "ochre", "brisk", "cloud", "dwell", "ember", "flick",
      "grasp", "hinge", "ivory", "jolly", "knack", "lurch", "mango", "noble",
      "orbit", "piety", "quart", "ridge", "scamp", "troll", "usher", "vixen",
      "whale", "xenon", "yearn", "zesty", "amble", "blunt", "cider", "dregs",
      "epoch", "fjord", "gnome", "hyena", "inlet", "joust", "kayak", "llama",
      "moose", "nymph", "otter", "perch", "quail", "raven", "stoic", "thyme"};
  return words;
}

namespace {

std::vector<ShipPlacement> parse_ships(const json& arr) {
  std::vector<ShipPlacement> out;
  for (const auto& s : arr) {
    out.push_back({s.at("row").get<int>(), s.at("col").get<int>(),
                   s.at("length").get<int>(), s.at("horizontal").get<bool>()});
  }
  return out;
}

std::vector<ShipPlacement> random_layout(int rows, int cols, Rng& rng) {
  // rejection placement, largest ship first
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<ShipPlacement> layout;
    std::vector<bool> used(static_cast<std::size_t>(rows) * cols, false);
    bool ok = true;
    for (int len : {5, 4, 3}) {
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed; ++tries) {
        ShipPlacement p;
        p.length = len;
        p.horizontal = rng.below(2) == 0;
        p.row = static_cast<int>(rng.below(p.horizontal ? rows : rows - len + 1));
        p.col = static_cast<int>(rng.below(p.horizontal ? cols - len + 1 : cols));
        bool clash = false;
        for (int k = 0; k < len; ++k) {
          const int r = p.row + (p.horizontal ? 0 : k);
          const int c = p.col + (p.horizontal ? k : 0);
          if (used[r * cols + c]) clash = true;
        }
        if (clash) continue;
        for (int k = 0; k < len; ++k) {
          const int r = p.row + (p.horizontal ? 0 : k);
          const int c = p.col + (p.horizontal ? k : 0);
          used[r * cols + c] = true;
        }
        layout.push_back(p);
        placed = true;
      }
      if (!placed) {
        ok = false;
        break;
      }
    }
    if (ok) return layout;
  }
  throw std::runtime_error("could not place ships on this board");
}

}  // namespace

EnvironmentModel make_environment(const json& scenario) {
  const std::string kind = scenario.at("kind").get<std::string>();
  if (kind == "bitwise") {
    return make_bitwise(scenario.at("length").get<int>(),
                        scenario.at("target").get<std::string>(),
                        scenario.value("flip_prob", 0.0));
  }
  if (kind == "reasoning") {
    return make_reasoning(scenario.at("length").get<int>(),
                          scenario.at("steps").get<int>(),
                          scenario.at("target").get<std::vector<int>>(),
                          reasoning_feedback_from_string(
                              scenario.at("feedback").get<std::string>()));
  }
  if (kind == "wordle") {
    std::vector<std::string> dict = builtin_wordle_dictionary();
    if (scenario.contains("dictionary"))
      dict = scenario.at("dictionary").get<std::vector<std::string>>();
    return make_wordle(dict, scenario.at("target").get<std::string>(),
                       scenario.value("max_turns", 10));
  }
  if (kind == "battleship") {
    return make_battleship(scenario.at("rows").get<int>(), scenario.at("cols").get<int>(),
                           parse_ships(scenario.at("ships")),
                           scenario.value("max_turns", 20),
                           scenario.value("hypothesis_cap", std::size_t{10000}),
                           scenario.value("hypothesis_seed", std::uint64_t{0}));
  }
  if (kind == "minesweeper") {
    std::set<std::pair<int, int>> mines;
    for (const auto& m : scenario.at("mines"))
      mines.insert({m.at(0).get<int>(), m.at(1).get<int>()});
    return make_minesweeper(scenario.at("rows").get<int>(), scenario.at("cols").get<int>(),
                            mines, scenario.value("max_turns", 20),
                            scenario.value("hypothesis_cap", std::size_t{10000}),
                            scenario.value("hypothesis_seed", std::uint64_t{0}));
  }
  throw std::invalid_argument("unknown environment kind: " + kind);
}

json random_scenario(const std::string& kind, std::uint64_t seed, const json& params) {
  Rng rng(seed);
  json s;
  s["kind"] = kind;
  if (kind == "bitwise") {
    const int L = params.value("length", 3);
    std::string target;
    for (int i = 0; i < L; ++i) target += rng.below(2) ? '1' : '0';
    s["length"] = L;
    s["target"] = target;
    if (params.contains("flip_prob")) s["flip_prob"] = params["flip_prob"];
    return s;
  }
  if (kind == "reasoning") {
    const int L = params.value("length", 2);
    const int S = params.value("steps", 2);
    std::vector<int> target(L);
    for (int i = 0; i < L; ++i) target[i] = static_cast<int>(rng.below(S));
    s["length"] = L;
    s["steps"] = S;
    s["target"] = target;
    s["feedback"] = params.value("feedback", std::string("demonstration"));
    return s;
  }
  if (kind == "wordle") {
    std::vector<std::string> dict = builtin_wordle_dictionary();
    if (params.contains("dictionary"))
      dict = params.at("dictionary").get<std::vector<std::string>>();
    s["target"] = dict[rng.below(dict.size())];
    s["max_turns"] = params.value("max_turns", 10);
    return s;
  }
  if (kind == "battleship") {
    const int rows = params.value("rows", 6), cols = params.value("cols", 6);
    json ships = json::array();
    for (const auto& p : random_layout(rows, cols, rng)) {
      ships.push_back({{"row", p.row},
                       {"col", p.col},
                       {"length", p.length},
                       {"horizontal", p.horizontal}});
    }
    s["rows"] = rows;
    s["cols"] = cols;
    s["ships"] = ships;
    s["max_turns"] = params.value("max_turns", 20);
    if (params.contains("hypothesis_cap")) s["hypothesis_cap"] = params["hypothesis_cap"];
    s["hypothesis_seed"] = seed;
    return s;
  }
  if (kind == "minesweeper") {
    const int rows = params.value("rows", 5), cols = params.value("cols", 5);
    const int count = params.value("mines", 3);
    if (count >= rows * cols) throw std::invalid_argument("too many mines");
    std::vector<int> cells(static_cast<std::size_t>(rows) * cols);
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
    json mines = json::array();
    for (int i = 0; i < count; ++i) {
      const std::size_t j = i + rng.below(cells.size() - i);
      std::swap(cells[i], cells[j]);
      mines.push_back({cells[i] / cols, cells[i] % cols});
    }
    s["rows"] = rows;
    s["cols"] = cols;
    s["mines"] = mines;
    s["max_turns"] = params.value("max_turns", 20);
    if (params.contains("hypothesis_cap")) s["hypothesis_cap"] = params["hypothesis_cap"];
    s["hypothesis_seed"] = seed;
    return s;
  }
  throw std::invalid_argument("unknown environment kind: " + kind);
}

}  // namespace llf
