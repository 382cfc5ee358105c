#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "envs/factories.hpp"

namespace llf {
namespace {

struct MinesweeperState : EpisodeState {
  std::vector<bool> revealed;
  bool exploded = false;
  ActionId mine_cell = 0;
};

struct ParsedBoard {
  // -1 unrevealed, 0..8 revealed count, 9 exploded mine
  std::vector<int> cells;
  bool invalid_move = false;
  bool mine_hit = false;
  ActionId mine_cell = 0;
};

std::vector<std::uint8_t> count_grid(const std::vector<bool>& mine, int rows, int cols) {
  std::vector<std::uint8_t> g(static_cast<std::size_t>(rows) * cols, 0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int n = 0;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          if (!dr && !dc) continue;
          const int rr = r + dr, cc = c + dc;
          if (rr >= 0 && rr < rows && cc >= 0 && cc < cols && mine[rr * cols + cc]) ++n;
        }
      g[r * cols + c] = static_cast<std::uint8_t>(n);
    }
  return g;
}

// connected zero-component of `from` plus its boundary
void flood_reveal(std::vector<bool>& revealed, const std::vector<std::uint8_t>& counts,
                  const std::vector<bool>& mine, int rows, int cols, ActionId from) {
  std::vector<ActionId> stack{from};
  revealed[from] = true;
  while (!stack.empty()) {
    const ActionId cur = stack.back();
    stack.pop_back();
    if (counts[cur] != 0) continue;
    const int r = static_cast<int>(cur) / cols, c = static_cast<int>(cur) % cols;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        if (!dr && !dc) continue;
        const int rr = r + dr, cc = c + dc;
        if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
        const ActionId nb = static_cast<ActionId>(rr) * cols + cc;
        if (!mine[nb] && !revealed[nb]) {
          revealed[nb] = true;
          stack.push_back(nb);
        }
      }
  }
}

ParsedBoard parse_board(const std::string& obs, int rows, int cols) {
  ParsedBoard p;
  p.cells.assign(static_cast<std::size_t>(rows) * cols, -1);
  p.invalid_move = obs.rfind("Invalid move", 0) == 0;
  p.mine_hit = obs.rfind("You hit a mine", 0) == 0;
  std::istringstream in(obs);
  std::string line;
  bool in_board = false;
  int row = -1;
  while (std::getline(in, line)) {
    if (line.rfind("Here is how the board looks now:", 0) == 0) {
      in_board = true;
      std::getline(in, line);  // header row of column indices
      row = 0;
      continue;
    }
    if (!in_board || row >= rows) continue;
    std::istringstream cells(line);
    std::string tok;
    cells >> tok;  // row letter
    for (int c = 0; c < cols && (cells >> tok); ++c) {
      const ActionId id = static_cast<ActionId>(row) * cols + c;
      if (tok == ".") {
        p.cells[id] = -1;
      } else if (tok == "X") {
        p.cells[id] = 9;
        p.mine_cell = id;
      } else {
        p.cells[id] = std::stoi(tok);
      }
    }
    ++row;
  }
  return p;
}

}  // namespace

EnvironmentModel make_minesweeper(int rows, int cols,
                                  const std::set<std::pair<int, int>>& mines,
                                  int max_turns, std::size_t hypothesis_cap,
                                  std::uint64_t hypothesis_seed) {
  if (rows < 1 || cols < 1 || rows > 26) throw std::invalid_argument("invalid geometry");
  const int n_cells = rows * cols;
  if (mines.empty()) throw std::invalid_argument("invalid geometry: no mines");
  if (static_cast<int>(mines.size()) >= n_cells)
    throw std::invalid_argument("invalid geometry: no safe cell");
  for (const auto& [r, c] : mines)
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::invalid_argument("invalid geometry: mine out of bounds");
  if (max_turns < 1) throw std::invalid_argument("max_turns must be positive");

  std::vector<bool> truth_mine(n_cells, false);
  for (const auto& [r, c] : mines) truth_mine[r * cols + c] = true;
  const std::size_t m = mines.size();

  auto layout_key = [n_cells](const std::vector<bool>& mine) {
    std::string key = "mines:";
    for (int i = 0; i < n_cells; ++i)
      if (mine[i]) key += " " + std::to_string(i);
    return key;
  };
  auto layout_text = [rows, cols, n_cells](const std::vector<bool>& mine) {
    std::string t = "mines:";
    for (int i = 0; i < n_cells; ++i)
      if (mine[i]) t += " " + cell_name(i / cols, i % cols);
    return t;
  };

  // hypothesis space: all |mines|-subsets when small, else a seeded uniform
  // sample that always contains the true layout
  std::vector<std::vector<bool>> layouts;
  double total = 1.0;
  for (std::size_t i = 0; i < m; ++i)
    total = total * static_cast<double>(n_cells - i) / static_cast<double>(i + 1);
  if (total <= static_cast<double>(hypothesis_cap)) {
    std::vector<int> comb(m);
    for (std::size_t i = 0; i < m; ++i) comb[i] = static_cast<int>(i);
    while (true) {
      std::vector<bool> mine(n_cells, false);
      for (int idx : comb) mine[idx] = true;
      layouts.push_back(std::move(mine));
      int i = static_cast<int>(m) - 1;
      while (i >= 0 && comb[i] == n_cells - static_cast<int>(m) + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (std::size_t j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
    }
  } else {
    Rng rng(hypothesis_seed);
    std::unordered_set<std::string> seen;
    layouts.push_back(truth_mine);
    seen.insert(layout_key(truth_mine));
    std::vector<int> cells(n_cells);
    for (int i = 0; i < n_cells; ++i) cells[i] = i;
    while (layouts.size() < hypothesis_cap) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + rng.below(cells.size() - i);
        std::swap(cells[i], cells[j]);
      }
      std::vector<bool> mine(n_cells, false);
      for (std::size_t i = 0; i < m; ++i) mine[cells[i]] = true;
      if (seen.insert(layout_key(mine)).second) layouts.push_back(std::move(mine));
    }
    std::sort(layouts.begin(), layouts.end(),
              [&](const auto& a, const auto& b) { return layout_key(a) < layout_key(b); });
  }

  EnvironmentModel env;
  env.name = "minesweeper";
  std::vector<std::string> cell_texts;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) cell_texts.push_back(cell_name(r, c));
  env.actions = ActionSpace(cell_texts);
  env.max_turns = max_turns;

  std::vector<std::vector<std::uint8_t>> counts;
  counts.reserve(layouts.size());
  std::size_t truth = layouts.size();
  const std::string truth_key = layout_key(truth_mine);
  for (std::size_t i = 0; i < layouts.size(); ++i) {
    const std::string t = layout_text(layouts[i]);
    env.hypotheses.items.push_back({t, t});
    counts.push_back(count_grid(layouts[i], rows, cols));
    if (layout_key(layouts[i]) == truth_key) truth = i;
  }
  if (truth == layouts.size()) throw std::logic_error("true layout missing from hypothesis space");
  env.hypotheses.truth_index = truth;

  const auto layouts_copy = layouts;  // shared by the lambdas below
  const std::size_t n_hyp = layouts.size();

  // stateless reward proxy: what the first reveal of an episode would earn
  auto first_reveal_reward = [rows, cols, n_cells](const std::vector<bool>& mine,
                                                   const std::vector<std::uint8_t>& cnt,
                                                   ActionId a) {
    if (mine[a]) return 0.0;
    std::vector<bool> revealed(n_cells, false);
    flood_reveal(revealed, cnt, mine, rows, cols, a);
    for (int i = 0; i < n_cells; ++i)
      if (!mine[i] && !revealed[i]) return 0.2;
    return 1.0;
  };
  env.reward = [layouts_copy, counts, first_reveal_reward](HypId h, ActionId a) {
    return first_reveal_reward(layouts_copy[h], counts[h], a);
  };

  auto loss_one = [layouts_copy, counts](const ParsedBoard& p, HypId h) -> double {
    if (p.invalid_move) return 0.0;
    if (p.mine_hit && !layouts_copy[h][p.mine_cell]) return 1.0;
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
      if (p.cells[i] >= 0 && p.cells[i] <= 8) {
        if (layouts_copy[h][i]) return 1.0;           // revealed cell can't be a mine
        if (counts[h][i] != p.cells[i]) return 1.0;   // adjacency count must match
      }
    }
    return 0.0;
  };
  env.loss = [loss_one, rows, cols](ActionId, const std::string& obs, HypId h) {
    return loss_one(parse_board(obs, rows, cols), h);
  };
  env.loss_row = [loss_one, rows, cols, n_hyp](ActionId, const std::string& obs) {
    const ParsedBoard p = parse_board(obs, rows, cols);
    std::vector<double> row(n_hyp);
    for (HypId h = 0; h < n_hyp; ++h) row[h] = loss_one(p, h);
    return row;
  };

  auto board_text = [rows, cols](const std::vector<bool>& revealed,
                                 const std::vector<std::uint8_t>& cnt,
                                 bool exploded, ActionId mine_cell) {
    return render_grid(rows, cols, [&](int r, int c) -> char {
      const ActionId id = static_cast<ActionId>(r) * cols + c;
      if (exploded && id == mine_cell) return 'X';
      if (!revealed[id]) return '.';
      return static_cast<char>('0' + cnt[id]);
    });
  };
  auto feedback_text = [board_text](const std::string& summary,
                                    const std::vector<bool>& revealed,
                                    const std::vector<std::uint8_t>& cnt,
                                    bool exploded, ActionId mine_cell) {
    return summary + "\nHere is how the board looks now:\n" +
           board_text(revealed, cnt, exploded, mine_cell);
  };

  env.feedback = [layouts_copy, counts, n_cells, rows, cols,
                  feedback_text](HypId h) {
    FeedbackDistribution fd(n_cells);
    for (ActionId a = 0; a < static_cast<ActionId>(n_cells); ++a) {
      const auto& mine = layouts_copy[h];
      std::string obs;
      if (mine[a]) {
        std::vector<bool> revealed(n_cells, false);
        obs = feedback_text("You hit a mine at " + cell_name(a / cols, a % cols) + "!",
                            revealed, counts[h], true, a);
      } else {
        std::vector<bool> revealed(n_cells, false);
        flood_reveal(revealed, counts[h], mine, rows, cols, a);
        obs = feedback_text("Revealed " + cell_name(a / cols, a % cols) + ".",
                            revealed, counts[h], false, 0);
      }
      fd.set(a, {{obs, 1.0}});
    }
    return fd;
  };

  const std::vector<bool> truth_layout = truth_mine;
  const std::vector<std::uint8_t> truth_counts = count_grid(truth_mine, rows, cols);
  env.make_state = [n_cells](std::uint64_t seed) {
    auto s = std::make_unique<MinesweeperState>();
    s->rng = Rng(seed);
    s->revealed.assign(n_cells, false);
    return std::unique_ptr<EpisodeState>(std::move(s));
  };
  env.apply = [truth_layout, truth_counts, rows, cols, n_cells,
               feedback_text](EpisodeState& base, ActionId a) {
    auto& st = static_cast<MinesweeperState&>(base);
    StepOutcome out;
    const std::string cell = cell_name(static_cast<int>(a) / cols,
                                       static_cast<int>(a) % cols);
    if (st.revealed[a]) {
      out.hidden_reward = -0.2;
      out.observation = feedback_text("Invalid move: cell " + cell + " was already revealed.",
                                      st.revealed, truth_counts, false, 0);
      return out;
    }
    if (truth_layout[a]) {
      st.exploded = true;
      st.mine_cell = a;
      out.hidden_reward = 0.0;
      out.terminal = true;
      out.observation = feedback_text("You hit a mine at " + cell + "!", st.revealed,
                                      truth_counts, true, a);
      return out;
    }
    flood_reveal(st.revealed, truth_counts, truth_layout, rows, cols, a);
    bool solved = true;
    for (int i = 0; i < n_cells; ++i)
      if (!truth_layout[i] && !st.revealed[i]) solved = false;
    out.hidden_reward = solved ? 1.0 : 0.2;
    out.terminal = solved;
    out.observation = feedback_text("Revealed " + cell + ".", st.revealed, truth_counts,
                                    false, 0);
    return out;
  };
  env.best_step_reward = [truth_layout, truth_counts, rows, cols,
                          n_cells](const EpisodeState& base) {
    const auto& st = static_cast<const MinesweeperState&>(base);
    if (st.done) return 0.0;
    double best = 0.0;
    for (int a = 0; a < n_cells; ++a) {
      if (st.revealed[a] || truth_layout[a]) continue;
      std::vector<bool> revealed = st.revealed;
      flood_reveal(revealed, truth_counts, truth_layout, rows, cols,
                   static_cast<ActionId>(a));
      bool solved = true;
      for (int i = 0; i < n_cells; ++i)
        if (!truth_layout[i] && !revealed[i]) solved = false;
      best = std::max(best, solved ? 1.0 : 0.2);
      if (best == 1.0) break;
    }
    return best;
  };
  // hidden rewards include the -0.2 penalty, outside [0,1]; not extractable
  env.extract_reward = nullptr;
  return env;
}

}  // namespace llf
