#include <algorithm>
#include <memory>
#include <stdexcept>

#include "envs/factories.hpp"

namespace llf {
namespace {

constexpr int kShipLengths[3] = {5, 4, 3};

struct CellSummary {
  enum Kind { Miss, Hit, Invalid } kind = Miss;
  int ship_length = 0;  // for hits
};

std::vector<ActionId> ship_cells(const ShipPlacement& s, int cols) {
  std::vector<ActionId> cells;
  for (int k = 0; k < s.length; ++k) {
    const int r = s.row + (s.horizontal ? 0 : k);
    const int c = s.col + (s.horizontal ? k : 0);
    cells.push_back(static_cast<ActionId>(r) * cols + c);
  }
  return cells;
}

bool placement_ok(const ShipPlacement& s, int rows, int cols) {
  if (s.row < 0 || s.col < 0) return false;
  const int er = s.row + (s.horizontal ? 0 : s.length - 1);
  const int ec = s.col + (s.horizontal ? s.length - 1 : 0);
  return er < rows && ec < cols;
}

void validate_layout(const std::vector<ShipPlacement>& layout, int rows, int cols) {
  if (layout.size() != 3) throw std::invalid_argument("invalid layout: need exactly 3 ships");
  std::vector<int> lens;
  for (const auto& s : layout) lens.push_back(s.length);
  std::sort(lens.rbegin(), lens.rend());
  if (lens != std::vector<int>{5, 4, 3})
    throw std::invalid_argument("invalid layout: ship lengths must be {5,4,3}");
  std::vector<bool> used(static_cast<std::size_t>(rows) * cols, false);
  for (const auto& s : layout) {
    if (!placement_ok(s, rows, cols)) throw std::invalid_argument("invalid layout: out of bounds");
    for (ActionId c : ship_cells(s, cols)) {
      if (used[c]) throw std::invalid_argument("invalid layout: overlapping ships");
      used[c] = true;
    }
  }
}

std::string layout_text(const std::vector<ShipPlacement>& layout) {
  std::vector<ShipPlacement> sorted = layout;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.length > b.length;
  });
  std::string out;
  for (const auto& s : sorted) {
    if (!out.empty()) out += ' ';
    out += std::to_string(s.length) + "@" + cell_name(s.row, s.col) + (s.horizontal ? "h" : "v");
  }
  return out;
}

// per-cell ship length (0 = water), the quantity the verifier checks against
std::vector<std::uint8_t> layout_grid(const std::vector<ShipPlacement>& layout,
                                      int rows, int cols) {
  std::vector<std::uint8_t> g(static_cast<std::size_t>(rows) * cols, 0);
  for (const auto& s : layout)
    for (ActionId c : ship_cells(s, cols)) g[c] = static_cast<std::uint8_t>(s.length);
  return g;
}

CellSummary parse_summary(const std::string& obs) {
  CellSummary s;
  if (obs.rfind("Invalid move", 0) == 0) {
    s.kind = CellSummary::Invalid;
  } else if (obs.rfind("Miss at ", 0) == 0) {
    s.kind = CellSummary::Miss;
  } else if (obs.rfind("Hit at ", 0) == 0) {
    s.kind = CellSummary::Hit;
    const auto marker = obs.find("occupies ");
    s.ship_length = std::stoi(obs.substr(marker + 9));
  } else {
    throw std::invalid_argument("unrecognized battleship feedback");
  }
  return s;
}

struct BattleshipState : EpisodeState {
  std::vector<char> marks;      // '.', 'M', 'X'
  std::vector<int> hits_per_ship;  // index into layout
};

}  // namespace

std::vector<std::vector<ShipPlacement>> enumerate_battleship_layouts(
    int rows, int cols, std::size_t cap, std::uint64_t seed,
    const std::vector<ShipPlacement>* must_include) {
  std::vector<std::vector<ShipPlacement>> all;
  std::vector<ShipPlacement> candidates[3];
  for (int i = 0; i < 3; ++i) {
    const int len = kShipLengths[i];
    for (int hor = 0; hor < 2; ++hor)
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          ShipPlacement p{r, c, len, hor == 1};
          if (placement_ok(p, rows, cols)) candidates[i].push_back(p);
        }
  }
  auto overlaps = [cols](const ShipPlacement& a, const ShipPlacement& b) {
    auto ca = ship_cells(a, cols);
    auto cb = ship_cells(b, cols);
    for (ActionId x : ca)
      for (ActionId y : cb)
        if (x == y) return true;
    return false;
  };
  for (const auto& s5 : candidates[0])
    for (const auto& s4 : candidates[1]) {
      if (overlaps(s5, s4)) continue;
      for (const auto& s3 : candidates[2]) {
        if (overlaps(s5, s3) || overlaps(s4, s3)) continue;
        all.push_back({s5, s4, s3});
      }
    }
  if (all.size() <= cap) return all;

  // uniform without replacement via seeded partial shuffle; the true layout,
  // when given, always survives the cut
  Rng rng(seed);
  std::size_t keep = cap;
  std::vector<std::size_t> idx(all.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < keep; ++i) {
    const std::size_t j = i + rng.below(idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::vector<ShipPlacement>> out;
  out.reserve(keep);
  bool truth_in = false;
  std::string truth_text = must_include ? layout_text(*must_include) : "";
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back(all[idx[i]]);
    if (must_include && layout_text(out.back()) == truth_text) truth_in = true;
  }
  if (must_include && !truth_in) out[0] = *must_include;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return layout_text(a) < layout_text(b);
  });
  return out;
}

EnvironmentModel make_battleship(int rows, int cols,
                                 const std::vector<ShipPlacement>& layout,
                                 int max_turns, std::size_t hypothesis_cap,
                                 std::uint64_t hypothesis_seed) {
  if (rows < 1 || cols < 1 || rows > 26)
    throw std::invalid_argument("invalid layout: board size unsupported");
  validate_layout(layout, rows, cols);
  if (max_turns < 1) throw std::invalid_argument("max_turns must be positive");

  const int n_cells = rows * cols;
  EnvironmentModel env;
  env.name = "battleship";
  std::vector<std::string> cell_texts;
  cell_texts.reserve(n_cells);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) cell_texts.push_back(cell_name(r, c));
  env.actions = ActionSpace(cell_texts);
  env.max_turns = max_turns;

  auto layouts = enumerate_battleship_layouts(rows, cols, hypothesis_cap,
                                              hypothesis_seed, &layout);
  std::vector<std::vector<std::uint8_t>> grids;
  grids.reserve(layouts.size());
  std::size_t truth = layouts.size();
  const std::string truth_text = layout_text(layout);
  for (std::size_t i = 0; i < layouts.size(); ++i) {
    const std::string t = layout_text(layouts[i]);
    env.hypotheses.items.push_back({t, t});
    grids.push_back(layout_grid(layouts[i], rows, cols));
    if (t == truth_text) truth = i;
  }
  if (truth == layouts.size()) throw std::logic_error("true layout missing from hypothesis space");
  env.hypotheses.truth_index = truth;

  env.reward = [grids](HypId h, ActionId a) { return grids[h][a] > 0 ? 0.5 : 0.0; };

  auto loss_one = [grids](ActionId a, const CellSummary& s, HypId h) -> double {
    if (s.kind == CellSummary::Invalid) return 0.0;
    if (s.kind == CellSummary::Miss) return grids[h][a] == 0 ? 0.0 : 1.0;
    return grids[h][a] == s.ship_length ? 0.0 : 1.0;
  };
  env.loss = [loss_one](ActionId a, const std::string& obs, HypId h) {
    return loss_one(a, parse_summary(obs), h);
  };
  const std::size_t n_hyp = env.hypotheses.size();
  env.loss_row = [loss_one, n_hyp](ActionId a, const std::string& obs) {
    const CellSummary s = parse_summary(obs);
    std::vector<double> row(n_hyp);
    for (HypId h = 0; h < n_hyp; ++h) row[h] = loss_one(a, s, h);
    return row;
  };

  auto board_text = [rows, cols](const std::vector<char>& marks) {
    return render_grid(rows, cols, [&](int r, int c) { return marks[r * cols + c]; });
  };
  auto feedback_text = [board_text](const std::string& summary,
                                    const std::vector<char>& marks) {
    return summary + "\nHere is how the board looks now:\n" + board_text(marks);
  };

  // stateless projection: the first shot of an episode under layout h
  env.feedback = [grids, n_hyp, n_cells, rows, cols, feedback_text](HypId h) {
    FeedbackDistribution fd(n_cells);
    for (ActionId a = 0; a < static_cast<ActionId>(n_cells); ++a) {
      std::vector<char> marks(n_cells, '.');
      std::string summary;
      if (grids[h][a] == 0) {
        marks[a] = 'M';
        summary = "Miss at " + cell_name(a / cols, a % cols) + ".";
      } else {
        marks[a] = 'X';
        summary = "Hit at " + cell_name(a / cols, a % cols) +
                  "! You have hit a ship, which occupies " +
                  std::to_string(grids[h][a]) + " cells in the grid.";
      }
      fd.set(a, {{feedback_text(summary, marks), 1.0}});
    }
    return fd;
  };

  const std::vector<ShipPlacement> truth_layout = layout;
  const std::vector<std::uint8_t> truth_grid = layout_grid(layout, rows, cols);
  env.make_state = [n_cells](std::uint64_t seed) {
    auto s = std::make_unique<BattleshipState>();
    s->rng = Rng(seed);
    s->marks.assign(n_cells, '.');
    s->hits_per_ship.assign(3, 0);
    return std::unique_ptr<EpisodeState>(std::move(s));
  };
  env.apply = [truth_layout, truth_grid, cols, feedback_text](EpisodeState& base,
                                                              ActionId a) {
    auto& st = static_cast<BattleshipState&>(base);
    StepOutcome out;
    const std::string cell = cell_name(static_cast<int>(a) / cols,
                                       static_cast<int>(a) % cols);
    if (st.marks[a] != '.') {
      out.hidden_reward = 0.0;
      out.observation = feedback_text(
          "Invalid move: cell " + cell + " was already targeted.", st.marks);
      return out;
    }
    if (truth_grid[a] == 0) {
      st.marks[a] = 'M';
      out.hidden_reward = 0.0;
      out.observation = feedback_text("Miss at " + cell + ".", st.marks);
      return out;
    }
    st.marks[a] = 'X';
    int ship_idx = 0;
    for (int i = 0; i < 3; ++i) {
      for (ActionId c : ship_cells(truth_layout[i], cols))
        if (c == a) ship_idx = i;
    }
    st.hits_per_ship[ship_idx] += 1;
    const int len = truth_layout[ship_idx].length;
    const bool sunk = st.hits_per_ship[ship_idx] == len;
    out.hidden_reward = sunk ? 1.0 : 0.5;
    out.observation = feedback_text(
        "Hit at " + cell + "! You have " + (sunk ? "sunk the ship that occupies " : "hit a ship, which occupies ") +
            std::to_string(len) + " cells in the grid.",
        st.marks);
    int total_hits = 0;
    for (int h : st.hits_per_ship) total_hits += h;
    out.terminal = total_hits == 12;
    return out;
  };
  env.best_step_reward = [truth_layout, cols](const EpisodeState& base) {
    const auto& st = static_cast<const BattleshipState&>(base);
    if (st.done) return 0.0;
    double best = 0.0;
    for (const auto& ship : truth_layout) {
      int remaining = 0;
      for (ActionId c : ship_cells(ship, cols))
        if (st.marks[c] == '.') ++remaining;
      if (remaining == 1) return 1.0;
      if (remaining > 1) best = std::max(best, 0.5);
    }
    return best;
  };
  env.extract_reward = [](ActionId, const std::string& obs) {
    const CellSummary s = parse_summary(obs);
    if (s.kind != CellSummary::Hit) return 0.0;
    return obs.find("sunk the ship") != std::string::npos ? 1.0 : 0.5;
  };
  return env;
}

}  // namespace llf
