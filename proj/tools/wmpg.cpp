#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wmpg/wmpg.hpp"

using namespace wmpg;

namespace {

enum Exit { kOk = 0, kInvalid = 2, kUnsupported = 3, kRefuted = 4, kBudget = 5 };

json names(const Game& g, const VertexSet& s) {
  json a = json::array();
  for (VertexId v : s.members()) a.push_back(g.name(v));
  return a;
}

std::string brace(const Game& g, const VertexSet& s) {
  std::string out = "{";
  for (VertexId v : s.members()) out += (out.size() > 1 ? ", " : "") + g.name(v);
  return out + "}";
}

VertexSet parse_set(const Game& g, const std::string& csv) {
  VertexSet s(g.size());
  std::stringstream in(csv);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) s.insert(g.id(item));
  return s;
}

bool to_stdout(const std::string& out) { return out.empty() || out == "-"; }

/// The summary goes to stdout unless stdout already carries the JSON report.
std::ostream& summary(const std::string& out) { return to_stdout(out) ? std::cerr : std::cout; }

void emit(const json& report, const std::string& out) {
  if (to_stdout(out)) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::invalid_argument("cannot write '" + out + "'");
  f << report.dump(2) << "\n";
}

Player parse_player(int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("--player must be 1 or 2");
  return p == 1 ? Player::P1 : Player::P2;
}

/// Loads and validates a game, warning when ell exceeds |V|^2.
GameFile load(const std::string& path, std::optional<std::size_t> ell = std::nullopt) {
  GameFile f = read_game_file(path);
  require_valid(f.game);
  if (ell) {
    check_window_length(*ell);
    const std::size_t n = f.game.size();
    if (*ell > n * n)
      std::cerr << "warning: window length " << *ell << " exceeds |V|^2 = " << n * n
                << "; l is meant to be given in unary\n";
  }
  return f;
}

MealyStrategy load_strategy(const std::string& path, const Game& g) {
  MealyStrategy m = strategy_from_json(read_json_file(path), g);
  require_strategy(m, g);
  return m;
}

json layer_json(const Game& g, const VertexSet& subgame, const VertexSet& winning, const VertexSet& attractor) {
  return {{"subgame", names(g, subgame)}, {"winning", names(g, winning)}, {"attractor", names(g, attractor)}};
}

struct SolveOptions {
  std::string game, objective = "fwmp", mode = "almostsure", threshold, out;
  std::size_t window = 0;
  int player = 1;
  bool quantitative = false;
};

int run_solve(const SolveOptions& o) {
  if (o.quantitative)
    throw Unsupported("quantitative values are not computed; qualitative only (positive / almost-sure)");
  const bool bounded = o.objective == "bwmp";
  if (!bounded && o.objective != "fwmp") throw std::invalid_argument("--objective must be fwmp or bwmp");
  if (!bounded && o.window == 0) throw std::invalid_argument("--window is required for fwmp");
  const auto start = std::chrono::steady_clock::now();
  GameFile f = load(o.game, bounded ? std::nullopt : std::optional<std::size_t>(o.window));
  const Rational threshold = o.threshold.empty() ? f.threshold : parse_rational(o.threshold);
  const NormalizedGame ng = normalize(f.game, threshold);
  const Game& g = ng.game;
  const Player player = parse_player(o.player);
  const WindowObjective obj = bounded ? WindowObjective::bounded(threshold) : WindowObjective::fixed(o.window, threshold);
  const auto solver = make_oracle(obj);

  json layers = json::array();
  VertexSet region(g.size());
  if (o.mode == "nonstochastic") {
    require_non_stochastic(g, g.all());
    if (bounded) {
      region = solver->winning_region(ng, g.all());
    } else {
      const LayeredRegions r = fwmp(ng, o.window);
      region = r.region;
      for (const Layer& l : r.layers) layers.push_back(layer_json(g, l.subgame, l.winning, l.attractor));
    }
    if (player == Player::P2) region = g.all() - region;
  } else if (o.mode == "positive" || o.mode == "almostsure") {
    const bool positive = o.mode == "positive";
    // Player 2's positive region is the complement of Player 1's almost-sure one and vice versa.
    const QualitativeResult r = (player == Player::P1) == positive ? pos_win(ng, *solver) : as_win(ng, *solver);
    region = player == Player::P1 ? r.region : g.all() - r.region;
    for (const auto& l : r.layers) layers.push_back(layer_json(g, l.subgame, l.winning, l.attractor));
    for (const auto& l : r.aswin_trace) {
      json j = layer_json(g, l.subgame, l.winning, l.attractor);
      j["trace"] = "aswin";
      layers.push_back(std::move(j));
    }
  } else {
    throw std::invalid_argument("--mode must be nonstochastic, positive or almostsure");
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json report = {{"game", g.title()},
                 {"objective", o.objective},
                 {"window", bounded ? json(nullptr) : json(o.window)},
                 {"threshold", format_rational(threshold)},
                 {"mode", o.mode},
                 {"player", o.player},
                 {"region", names(g, region)},
                 {"layers", layers},
                 {"timing_ms", ms}};
  emit(report, o.out);
  summary(o.out) << "player " << o.player << " " << o.mode << " region: " << brace(g, region) << "\n";
  return kOk;
}

struct SynthOptions {
  std::string game, mode = "nonstochastic", out;
  std::size_t window = 0;
  int player = 1;
};

int run_synthesize(const SynthOptions& o) {
  GameFile f = load(o.game, o.window);
  const NormalizedGame ng = normalize(f.game, f.threshold);
  const Game& g = ng.game;
  const Player player = parse_player(o.player);
  MealyStrategy m;
  if (o.mode == "nonstochastic") {
    require_non_stochastic(g, g.all());
    m = player == Player::P1 ? synthesize_p1_fwmp(g, fwmp(ng, o.window), o.window)
                             : synthesize_p2_fwmp(g, p2_layers(ng, o.window), o.window);
  } else if (o.mode == "positive") {
    m = player == Player::P1 ? synthesize_p1_positive(ng, o.window) : synthesize_p2_positive(ng, o.window);
  } else if (o.mode == "almostsure") {
    m = player == Player::P1 ? synthesize_p1_almost_sure(ng, o.window) : synthesize_p2_almost_sure(ng, o.window);
  } else {
    throw std::invalid_argument("--mode must be nonstochastic, positive or almostsure");
  }
  emit(strategy_to_json(m, g), o.out);
  summary(o.out) << "synthesized " << m.memory_size() << "-state machine for player " << o.player << "\n";
  return kOk;
}

/// Region the machine's owner is supposed to win under `mode`.
VertexSet certified_region(const NormalizedGame& ng, Player owner, std::size_t ell, const std::string& mode) {
  const Game& g = ng.game;
  if (mode == "nonstochastic") {
    const VertexSet p1 = fwmp(ng, ell).region;
    return owner == Player::P1 ? p1 : g.all() - p1;
  }
  const FwmpOracle s(ell);
  if (mode == "positive") return owner == Player::P1 ? pos_win(ng, s).region : pos_win_p2(ng, s);
  if (mode == "almostsure") return owner == Player::P1 ? as_win(ng, s).region : as_win_p2(ng, s);
  throw std::invalid_argument("--mode must be nonstochastic, positive or almostsure");
}

struct VerifyOptions {
  std::string game, strategy, against, mode, region, out;
  std::size_t window = 0;
};

int run_verify(const VerifyOptions& o) {
  GameFile f = load(o.game, o.window);
  const NormalizedGame ng = normalize(f.game, f.threshold);
  const Game& g = ng.game;
  const MealyStrategy m = load_strategy(o.strategy, g);
  if (!o.against.empty()) {
    const MealyStrategy other = load_strategy(o.against, g);
    if (other.owner == m.owner) throw std::invalid_argument("--against must belong to the other player");
    const auto& s1 = m.owner == Player::P1 ? m : other;
    const auto& s2 = m.owner == Player::P1 ? other : m;
    const ChainAnalysis c = chain_analysis(ng, s1, s2, o.window);
    json probs = json::object();
    for (VertexId v = 0; v < g.size(); ++v) probs[g.name(v)] = format_rational(c.satisfied(v));
    json bottoms = json::array();
    for (std::size_t i = 0; i < c.bsccs.size(); ++i) {
      json states = json::array(), witness = nullptr;
      for (std::size_t st : c.bsccs[i]) {
        const ProductState& ps = c.chain.states[st];
        const std::string label = g.name(ps.v) + "/" + s1.state_names[ps.q1] + "/" + s2.state_names[ps.q2];
        states.push_back(label);
        if (c.chain.flag[st] && witness.is_null()) witness = label;
      }
      bottoms.push_back({{"states", states}, {"bad", static_cast<bool>(c.bscc_bad[i])}, {"flagged_state", witness}});
    }
    emit({{"fwmp_probability", probs}, {"chain_states", c.chain.size()}, {"bsccs", bottoms}}, o.out);
    summary(o.out) << "exact FWMP(" << o.window << ") probabilities over " << c.chain.size() << " chain states\n";
    return kOk;
  }
  const std::string mode = !o.mode.empty() ? o.mode : g.is_stochastic() ? "almostsure" : "nonstochastic";
  const VertexSet claim = o.region.empty() ? certified_region(ng, m.owner, o.window, mode) : parse_set(g, o.region);
  const BestResponseResult br = best_response(ng, m, o.window, g.all());
  const VertexSet& wins = mode == "positive" ? br.positive : br.almost_sure;
  json report = {{"owner", to_string(m.owner)},
                 {"mode", mode},
                 {"claimed", names(g, claim)},
                 {"wins", names(g, wins)},
                 {"positive", names(g, br.positive)},
                 {"product_states", br.product_states}};
  const VertexSet lost = claim - wins;
  if (!lost.empty()) {
    const VertexId v = lost.members().front();
    report["refuted_at"] = g.name(v);
    if (auto it = br.witness.find(v); it != br.witness.end()) report["witness"] = it->second.str(g);
    emit(report, o.out);
    summary(o.out) << "refuted: the machine does not win from " << brace(g, lost);
    if (report.contains("witness")) summary(o.out) << "; witness play " << report["witness"].get<std::string>();
    summary(o.out) << "\n";
    return kRefuted;
  }
  emit(report, o.out);
  summary(o.out) << "wins from " << brace(g, wins) << "\n";
  return kOk;
}

struct SimulateOptions {
  std::string game, p1, p2, start, out;
  std::size_t window = 0, steps = 100;
  std::uint64_t seed = 0;
};

int run_simulate(const SimulateOptions& o) {
  GameFile f = load(o.game, o.window);
  const NormalizedGame ng = normalize(f.game, f.threshold);
  const Game& g = ng.game;
  const MealyPlayer p1(o.p1.empty() ? memoryless(g, Player::P1) : load_strategy(o.p1, g));
  const MealyPlayer p2(o.p2.empty() ? memoryless(g, Player::P2) : load_strategy(o.p2, g));
  if (p1.owner() != Player::P1 || p2.owner() != Player::P2)
    throw std::invalid_argument("--p1 and --p2 must be machines of the respective players");
  const VertexId start = o.start.empty() ? 0 : g.id(o.start);
  const PlayRecord r = simulate(ng, p1, p2, start, o.steps, o.seed, o.window);
  json play = json::array(), open = json::array();
  for (VertexId v : r.play) play.push_back(g.name(v));
  for (const auto& w : r.windows)
    if (w.open_at_ell) open.push_back(w.position);
  emit({{"seed", o.seed}, {"play", play}, {"open_windows", r.open_windows}, {"open_positions", open}}, o.out);
  summary(o.out) << o.steps << " steps, " << r.open_windows << " windows open for " << o.window << " steps\n";
  return kOk;
}

struct GenerateOptions {
  std::string family, fraction = "0", out;
  std::size_t k = 0, ell = 0, n = 8;
  std::uint64_t seed = 0;
};

int run_generate(const GenerateOptions& o) {
  if (o.family == "fig10" || o.family == "fig11") {
    const Game g = gen::fig9();
    const MealyStrategy m = gen::fig10_machine(g);
    emit(strategy_to_json(o.family == "fig10" ? m : reset_transform(m, g), g), o.out);
    return kOk;
  }
  Game g;
  if (o.family == "random") {
    gen::RandomGameParams p;
    p.seed = o.seed;
    p.n = o.n;
    p.random_fraction = parse_rational(o.fraction);
    g = gen::random_game(p);
  } else {
    g = gen::build(o.family, o.k, o.ell, o.seed, o.n);
  }
  require_valid(g);
  const std::string text = game_to_string(g);
  if (to_stdout(o.out)) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot write '" + o.out + "'");
    f << text;
  }
  return kOk;
}

struct OracleOptions {
  std::string game;
  std::size_t window = 0, random = 0, max_n = 8;
  std::uint64_t seed = 0;
};

int run_oracle(const OracleOptions& o) {
  if (!o.game.empty()) {
    if (o.window == 0) throw std::invalid_argument("--window is required with --game");
    GameFile f = load(o.game, o.window);
    const NormalizedGame ng = normalize(f.game, f.threshold);
    const VertexSet a = fwmp(ng, o.window).region, b = cobuchi_oracle(ng, o.window);
    if (a != b) {
      std::cout << "regions differ: solver " << brace(ng.game, a) << ", oracle " << brace(ng.game, b) << "\n";
      return kRefuted;
    }
    std::cout << "identical regions " << brace(ng.game, a) << "\n";
    return kOk;
  }
  if (o.random == 0) throw std::invalid_argument("give --game or --random N");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < o.random; ++i) {
    const std::uint64_t seed = o.seed + i;
    const std::size_t ell = o.window ? o.window : 1 + i % 4;
    const NormalizedGame ng = normalize(gen::random_game(seed, 1 + i % o.max_n, 3, 2), 0);
    if (fwmp(ng, ell).region == cobuchi_oracle(ng, ell)) ++agree;
    else std::cout << "mismatch: seed " << seed << " window " << ell << "\n";
  }
  std::cout << (agree == o.random ? "identical regions, " : "regions differ, ") << agree << "/" << o.random << "\n";
  return agree == o.random ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Window mean-payoff games: solve, synthesize, verify, simulate, generate"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Winning region with layer certificates");
  solve->add_option("--game", so.game, "game JSON file")->required();
  solve->add_option("--objective", so.objective, "fwmp or bwmp");
  solve->add_option("--window", so.window, "window length l (unary in spirit)");
  solve->add_option("--threshold", so.threshold, "mean-payoff threshold (default: from the game file)");
  solve->add_option("--mode", so.mode, "nonstochastic, positive or almostsure");
  solve->add_option("--player", so.player, "1 or 2");
  solve->add_option("--out", so.out, "report path (default stdout)");
  solve->add_flag("--quantitative", so.quantitative, "request values (rejected: qualitative only)");

  SynthOptions sy;
  auto* synth = app.add_subcommand("synthesize", "Finite-memory winning strategy");
  synth->add_option("--game", sy.game)->required();
  synth->add_option("--window", sy.window)->required();
  synth->add_option("--player", sy.player);
  synth->add_option("--mode", sy.mode, "nonstochastic, positive or almostsure");
  synth->add_option("--out", sy.out, "strategy path (default stdout)");

  VerifyOptions ve;
  auto* verify = app.add_subcommand("verify", "Check a strategy by best response or exact chain analysis");
  verify->add_option("--game", ve.game)->required();
  verify->add_option("--strategy", ve.strategy)->required();
  verify->add_option("--window", ve.window)->required();
  verify->add_option("--against", ve.against, "opponent machine: report exact probabilities");
  verify->add_option("--mode", ve.mode, "nonstochastic, positive or almostsure");
  verify->add_option("--region", ve.region, "claimed region, comma separated (default: solver region)");
  verify->add_option("--out", ve.out);

  SimulateOptions si;
  auto* sim = app.add_subcommand("simulate", "Sample a play and annotate its windows");
  sim->add_option("--game", si.game)->required();
  sim->add_option("--window", si.window)->required();
  sim->add_option("--p1", si.p1, "Player 1 machine (default: memoryless, first successor)");
  sim->add_option("--p2", si.p2, "Player 2 machine (default: memoryless, first successor)");
  sim->add_option("--start", si.start);
  sim->add_option("--steps", si.steps);
  sim->add_option("--seed", si.seed);
  sim->add_option("--out", si.out);

  GenerateOptions ge;
  auto* generate = app.add_subcommand("generate", "Emit a figure, family or random game");
  generate->add_option("--family", ge.family,
                       "fig1 fig2a fig2b fig3_buchi fig4_fragment fig7 fig8 fig9_reset gl gkl random fig10 fig11")
      ->required();
  generate->add_option("--k", ge.k);
  generate->add_option("--l", ge.ell);
  generate->add_option("--seed", ge.seed);
  generate->add_option("--n", ge.n);
  generate->add_option("--fraction", ge.fraction, "share of chance vertices for random games");
  generate->add_option("--out", ge.out);

  OracleOptions orc;
  auto* oracle = app.add_subcommand("oracle", "Compare the solver with the co-Buchi product oracle");
  oracle->add_option("--game", orc.game);
  oracle->add_option("--window", orc.window);
  oracle->add_option("--random", orc.random, "number of seeded random games");
  oracle->add_option("--seed", orc.seed);
  oracle->add_option("--max-n", orc.max_n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*solve) return run_solve(so);
    if (*synth) return run_synthesize(sy);
    if (*verify) return run_verify(ve);
    if (*sim) return run_simulate(si);
    if (*generate) return run_generate(ge);
    if (*oracle) return run_oracle(orc);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const InvalidGame& e) {
    std::cerr << "invalid game: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}
