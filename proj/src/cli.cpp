#include "wlr/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <concepts>
#include <ctime>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "wlr/binarize.hpp"
#include "wlr/closure.hpp"
#include "wlr/error.hpp"
#include "wlr/layered.hpp"
#include "wlr/layered_play.hpp"
#include "wlr/partition_algebra.hpp"
#include "wlr/pebble_game.hpp"
#include "wlr/refinement.hpp"
#include "wlr/set_family.hpp"
#include "wlr/translate.hpp"

namespace wlr::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw IoError("failed writing '" + path + "'");
}

RelationalStructure load_structure(const std::string& path) {
  return parse_structure_string(read_file(path));
}

XorSystem load_system(const std::string& path) { return parse_xor_system_string(read_file(path)); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row(header); }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) text_ += (i ? "," : "") + csv_field(fields[i]);
    text_ += "\r\n";
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::string str(bool b) { return b ? "true" : "false"; }
template <std::integral T>
  requires(!std::same_as<T, bool>)
std::string str(T v) {
  return std::to_string(v);
}
std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw InputError("'" + s + "' is not a rational number like 3/2");
  }
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Shared output handling: the artifact goes to --out (or stdout); the provenance sidecar
// goes to --provenance, or next to --out as <out>.json.
struct Sink {
  std::string out_path;
  std::string provenance_path;
  std::string command;
  json config = json::object();

  void add(CLI::App* app) {
    app->add_option("--out", out_path, "Write the artifact to this file instead of stdout");
    app->add_option("--provenance", provenance_path,
                    "Write the JSON provenance sidecar to this file (default: <out>.json)");
  }

  void emit(std::ostream& out, const std::string& artifact, const json& results) const {
    if (out_path.empty())
      out << artifact;
    else
      write_file(out_path, artifact);
    std::string prov = provenance_path;
    if (prov.empty() && !out_path.empty()) prov = out_path + ".json";
    if (prov.empty()) return;
    json j;
    j["tool"] = "wlr";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config;
    j["results"] = results;
    j["generated_at"] = utc_now();
    write_file(prov, j.dump(2) + "\n");
  }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
};

void check_round_bound(const RefinementTrace& t) {
  if (!t.r_infinity) return;
  if (*t.r_infinity > trivial_round_bound(t.n, t.k) ||
      (t.k >= 2 && *t.r_infinity > upper_round_bound(t.n, t.k)))
    throw BoundViolation("round bound violated");
}

// ---- wl ----

void add_wl(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* wl = app.add_subcommand("wl", "Weisfeiler-Leman refinement");
  wl->require_subcommand(1);

  {
    auto* c = wl->add_subcommand("stabilize", "Run k-WL on one structure until it is stable");
    auto k = std::make_shared<int>(2);
    auto input = std::make_shared<std::string>();
    auto max_rounds = std::make_shared<std::optional<std::size_t>>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--k", *k, "Dimension")->required()->check(CLI::Range(1, 16));
    c->add_option("--input", *input, "Structure file")->required();
    c->add_option("--max-rounds", *max_rounds, "Round cap (default n^k)");
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto s = load_structure(*input);
        RefinementTrace t = stabilize(s, *k, {*max_rounds, false});
        check_round_bound(t);
        Csv csv({"structure", "n", "k", "r_infinity", "stabilized", "classes",
                 "trivial_bound", "upper_bound", "within_bounds"});
        bool within = !t.r_infinity || (*t.r_infinity <= trivial_round_bound(t.n, *k) &&
                                         (*k < 2 || *t.r_infinity <= upper_round_bound(t.n, *k)));
        csv.row({s.name(), str(t.n), str(std::uint64_t(*k)), opt_str(t.r_infinity),
                 str(t.stabilized()), str(t.class_counts.back()),
                 str(trivial_round_bound(t.n, *k)),
                 *k >= 2 ? str(upper_round_bound(t.n, *k)) : "", str(within)});
        sink->command = "wl stabilize";
        sink->config = {{"k", *k}, {"input", *input}};
        if (*max_rounds) sink->config["max_rounds"] = **max_rounds;
        sink->emit(ctx.out, csv.text(),
                   {{"r_infinity", t.r_infinity ? json(*t.r_infinity) : json(nullptr)},
                    {"class_counts", t.class_counts}});
      };
    });
  }
  {
    auto* c = wl->add_subcommand("distinguish", "Run k-WL on two structures with shared colors");
    auto k = std::make_shared<int>(2);
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto max_rounds = std::make_shared<std::optional<std::size_t>>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--k", *k, "Dimension")->required()->check(CLI::Range(1, 16));
    c->add_option("--a", *a, "First structure file")->required();
    c->add_option("--b", *b, "Second structure file")->required();
    c->add_option("--max-rounds", *max_rounds, "Round cap (default n^k)");
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto sa = load_structure(*a);
        auto sb = load_structure(*b);
        auto res = joint_distinguish(sa, sb, *k, {*max_rounds, false});
        check_round_bound(res.trace_a);
        check_round_bound(res.trace_b);
        Csv csv({"a", "b", "k", "distinguished", "round", "complete", "r_infinity_a",
                 "r_infinity_b"});
        csv.row({sa.name(), sb.name(), str(std::uint64_t(*k)), str(res.round.has_value()),
                 opt_str(res.round), str(res.complete), opt_str(res.trace_a.r_infinity),
                 opt_str(res.trace_b.r_infinity)});
        sink->command = "wl distinguish";
        sink->config = {{"k", *k}, {"a", *a}, {"b", *b}};
        sink->emit(ctx.out, csv.text(),
                   {{"round", res.round ? json(*res.round) : json(nullptr)},
                    {"complete", res.complete}});
      };
    });
  }
}

// ---- xor ----

void add_xor(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* x = app.add_subcommand("xor", "XOR constraint systems");
  x->require_subcommand(1);
  {
    auto* c = x->add_subcommand("translate", "Emit the two structures of an XOR system");
    auto input = std::make_shared<std::string>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--input", *input, "XOR system file")->required();
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto [a, b] = to_structures(load_system(*input));
        sink->command = "xor translate";
        sink->config = {{"input", *input}};
        sink->emit(ctx.out, structure_to_string(a) + structure_to_string(b),
                   {{"universe", a.universe_size()}});
      };
    });
  }
  {
    auto* c = x->add_subcommand("closure", "k-closure (or r attractor steps) of a system");
    auto input = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(3);
    auto rounds = std::make_shared<std::optional<std::size_t>>();
    auto budget = std::make_shared<std::size_t>(10'000'000);
    auto sink = std::make_shared<Sink>();
    c->add_option("--input", *input, "XOR system file")->required();
    c->add_option("--k", *k, "Support size bound")->required();
    c->add_option("--rounds", *rounds, "Number of attractor steps (default: to fixpoint)");
    c->add_option("--budget", *budget, "Maximum number of constraints");
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto s = load_system(*input);
        XorSystem cl;
        json results;
        if (*rounds) {
          cl = closure_bounded(s, *k, **rounds, *budget);
        } else {
          auto r = closure(s, *k, *budget);
          cl = r.system;
          results["steps"] = r.steps;
        }
        results["constraints"] = cl.size();
        sink->command = "xor closure";
        sink->config = {{"input", *input}, {"k", *k}};
        if (*rounds) sink->config["rounds"] = **rounds;
        sink->emit(ctx.out, xor_system_to_string(cl), results);
      };
    });
  }
  {
    auto* c = x->add_subcommand("sat", "Decide satisfiability by GF(2) elimination");
    auto input = std::make_shared<std::string>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--input", *input, "XOR system file")->required();
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto s = load_system(*input);
        auto sol = gauss_satisfiable(s);
        std::string text = sol ? "SAT\n" : "UNSAT\n";
        if (sol) {
          for (std::size_t i = 0; i < s.num_vars(); ++i)
            text += s.name(static_cast<Var>(i)) + "=" + std::to_string((*sol)[i]) + "\n";
        }
        sink->command = "xor sat";
        sink->config = {{"input", *input}};
        sink->emit(ctx.out, text, {{"satisfiable", sol.has_value()}});
      };
    });
  }
}

// ---- game ----

PartialAssignment parse_assignment(const std::string& text, const XorSystem& s) {
  PartialAssignment beta;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("assignment items look like x1=0");
    auto x = s.find(item.substr(0, eq));
    if (!x) throw InputError("unknown variable '" + item.substr(0, eq) + "'");
    std::string bit = item.substr(eq + 1);
    if (bit != "0" && bit != "1") throw InputError("assignment bits must be 0 or 1");
    beta.set(*x, bit == "1");
  }
  return beta;
}

void add_game(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* g = app.add_subcommand("game", "Existential k-pebble game on XOR systems");
  g->require_subcommand(1);
  {
    auto* c = g->add_subcommand("solve", "Exact Falsifier winning round");
    auto input = std::make_shared<std::string>();
    auto pebbles = std::make_shared<int>(3);
    auto rounds = std::make_shared<std::size_t>(PebbleGame::kNever - 1);
    auto budget = std::make_shared<std::uint64_t>(10'000'000);
    auto start = std::make_shared<std::string>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--input", *input, "XOR system file")->required();
    c->add_option("--pebbles", *pebbles, "Number of pebbles k")->required()->check(CLI::Range(1, 64));
    c->add_option("--rounds", *rounds, "Round budget r (default: until fixpoint)");
    c->add_option("--budget", *budget, "Maximum number of game positions");
    c->add_option("--start", *start, "Initial position, e.g. x1=1,x2=0 (default empty)");
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto s = load_system(*input);
        auto beta = parse_assignment(*start, s);
        PebbleGame game(s, *pebbles, *budget);
        game.solve(*rounds, &beta);
        auto w = game.win_round(beta);
        Csv csv({"pebbles", "rounds", "positions", "falsifier_wins", "min_rounds"});
        csv.row({str(std::uint64_t(*pebbles)), str(game.rounds_computed()),
                 str(game.num_positions()), str(w.has_value()), opt_str(w)});
        sink->command = "game solve";
        sink->config = {{"input", *input}, {"pebbles", *pebbles}, {"rounds", *rounds},
                        {"budget", *budget}, {"start", *start}};
        sink->emit(ctx.out, csv.text(), {{"min_rounds", w ? json(*w) : json(nullptr)}});
      };
    });
  }
  {
    auto* c = g->add_subcommand("certify", "Closure certificate for Verifier survival");
    auto input = std::make_shared<std::string>();
    auto k = std::make_shared<int>(3);
    auto rounds = std::make_shared<std::size_t>(1);
    auto start = std::make_shared<std::string>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--input", *input, "XOR system file")->required();
    c->add_option("--k", *k, "Number of pebbles")->required()->check(CLI::Range(1, 64));
    c->add_option("--rounds", *rounds, "Rounds r")->required();
    c->add_option("--start", *start, "Position, e.g. x1=1 (default empty)");
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto s = load_system(*input);
        auto beta = parse_assignment(*start, s);
        bool ok = verifier_survival_certificate(s, beta, *k, *rounds);
        Csv csv({"k", "rounds", "certificate"});
        csv.row({str(std::uint64_t(*k)), str(*rounds), str(ok)});
        sink->command = "game certify";
        sink->config = {{"input", *input}, {"k", *k}, {"rounds", *rounds}, {"start", *start}};
        sink->emit(ctx.out, csv.text(), {{"certificate", ok}});
      };
    });
  }
  {
    auto* c = g->add_subcommand("play", "Descent strategy on a generated hard instance");
    auto d = std::make_shared<std::uint32_t>(2);
    auto ell = std::make_shared<std::uint32_t>(2);
    auto m = std::make_shared<std::uint32_t>(8);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto verifier = std::make_shared<std::string>("delay");
    auto budget = std::make_shared<std::uint64_t>(10'000'000);
    auto sink = std::make_shared<Sink>();
    c->add_option("--d", *d, "Right degree of the layer graph");
    c->add_option("--ell", *ell, "Number of layers");
    c->add_option("--m", *m, "Layer width");
    c->add_option("--seed", *seed, "Generator seed");
    c->add_option("--verifier", *verifier, "Verifier: delay (exact solver), zero, one, random")
        ->check(CLI::IsMember({"delay", "zero", "one", "random"}));
    c->add_option("--budget", *budget, "Maximum game positions for the delaying Verifier");
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        HardInstanceOptions ho;
        ho.max_attempts = 1;
        auto inst = hard_instance(*d, *ell, *m, *seed, ho);
        const int k = static_cast<int>(inst.layered.graph.max_right_degree());
        std::unique_ptr<PebbleGame> game;
        VerifierStrategy strat;
        if (*verifier == "delay") {
          game = std::make_unique<PebbleGame>(inst.system, k, *budget);
          game->solve();
          strat = delaying_verifier(*game);
        } else if (*verifier == "zero") {
          strat = constant_verifier(0);
        } else if (*verifier == "one") {
          strat = constant_verifier(1);
        } else {
          strat = random_verifier(*seed);
        }
        auto t = layered_falsifier_play(inst.layered, inst.x_ell, k, strat, true);
        if (auto bad = check_transcript(t)) throw std::logic_error(*bad);
        sink->command = "game play";
        sink->config = {{"d", *d}, {"ell", *ell}, {"m", *m}, {"seed", *seed},
                        {"verifier", *verifier}};
        sink->emit(ctx.out, transcript_to_json(t) + "\n",
                   {{"moves", t.moves.size()}, {"falsifier_won", t.falsifier_won()}});
      };
    });
  }
}

// ---- gen ----

json verdict_json(const ExpansionVerdict& v) {
  return {{"plain", v.plain},          {"single_neighbor", v.single},
          {"vacuous", v.vacuous},      {"exhaustive", v.exhaustive},
          {"max_set_size", v.max_set_size}, {"sets_checked", v.sets_checked}};
}

std::string graph_text(const BipartiteGraph& g) {
  std::string s = "bipartite " + std::to_string(g.left_size()) + " " +
                  std::to_string(g.right_size()) + "\n";
  for (std::uint32_t w = 0; w < g.right_size(); ++w) {
    s += "w" + std::to_string(w) + ":";
    for (auto v : g.neighbors(w)) s += " " + std::to_string(v);
    s += "\n";
  }
  return s;
}

void add_gen(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* g = app.add_subcommand("gen", "Instance generators");
  g->require_subcommand(1);

  struct ExpansionArgs {
    std::string alpha = "3/2";
    std::string gamma = "1/6";
    std::string mode = "exhaustive";
    std::uint64_t budget = 10'000'000;
    std::uint64_t samples = 100'000;
  };
  auto add_expansion = [](CLI::App* c, std::shared_ptr<ExpansionArgs> e) {
    c->add_option("--alpha", e->alpha, "Expansion factor alpha (rational, e.g. 3/2)");
    c->add_option("--gamma", e->gamma, "Set size fraction gamma (rational, e.g. 1/6)");
    c->add_option("--mode", e->mode, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    c->add_option("--check-budget", e->budget, "Maximum subsets in exhaustive mode");
    c->add_option("--samples", e->samples, "Number of sampled subsets");
  };
  auto options_of = [](const ExpansionArgs& e, std::uint64_t seed) {
    ExpansionOptions o;
    o.mode = e.mode == "sampled" ? ExpansionMode::sampled : ExpansionMode::exhaustive;
    o.max_subsets = e.budget;
    o.samples = e.samples;
    o.seed = seed;
    return o;
  };

  {
    auto* c = g->add_subcommand("expander", "Random right-regular bipartite graph");
    auto n = std::make_shared<std::uint32_t>(12);
    auto r = std::make_shared<std::uint32_t>(3);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto e = std::make_shared<ExpansionArgs>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--n", *n, "Side size")->required();
    c->add_option("--r", *r, "Right degree")->required();
    c->add_option("--seed", *seed, "Generator seed")->required();
    add_expansion(c, e);
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto graph = random_right_regular(*n, *r, *seed);
        auto v = check_expansion(graph, parse_rational(e->alpha), parse_rational(e->gamma),
                                 options_of(*e, *seed));
        sink->command = "gen expander";
        sink->config = {{"n", *n}, {"r", *r}, {"seed", *seed}, {"alpha", e->alpha},
                        {"gamma", e->gamma}, {"mode", e->mode}};
        sink->emit(ctx.out, graph_text(graph), {{"expansion", verdict_json(v)}});
      };
    });
  }
  {
    auto* c = g->add_subcommand("layered", "Layered graph and its parity-0 constraints");
    auto d = std::make_shared<std::uint32_t>(3);
    auto ell = std::make_shared<std::uint32_t>(2);
    auto m = std::make_shared<std::uint32_t>(12);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto e = std::make_shared<ExpansionArgs>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--d", *d, "Right degree of each layer graph")->required();
    c->add_option("--ell", *ell, "Number of layers")->required();
    c->add_option("--m", *m, "Layer width")->required();
    c->add_option("--seed", *seed, "Generator seed")->required();
    add_expansion(c, e);
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto l = build_layered(random_right_regular(*m, *d, *seed), *ell);
        if (auto bad = check_layered(l)) throw std::logic_error(*bad);
        auto o = options_of(*e, *seed);
        o.reference_size = *m;
        auto v = check_expansion(l.graph, parse_rational(e->alpha), parse_rational(e->gamma), o);
        sink->command = "gen layered";
        sink->config = {{"d", *d}, {"ell", *ell}, {"m", *m}, {"seed", *seed},
                        {"alpha", e->alpha}, {"gamma", e->gamma}, {"mode", e->mode}};
        sink->emit(ctx.out, xor_system_to_string(constraints_from_layered(l)),
                   {{"expansion", verdict_json(v)}});
      };
    });
  }
  {
    auto* c = g->add_subcommand("hard", "Unsatisfiable layered XOR instance");
    auto d = std::make_shared<std::uint32_t>(3);
    auto ell = std::make_shared<std::uint32_t>(4);
    auto m = std::make_shared<std::uint32_t>(12);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto attempts = std::make_shared<std::uint32_t>(100);
    auto pad = std::make_shared<std::size_t>(0);
    auto e = std::make_shared<ExpansionArgs>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--d", *d, "Right degree of each layer graph")->required();
    c->add_option("--ell", *ell, "Number of layers")->required();
    c->add_option("--m", *m, "Layer width (at least 4d)")->required();
    c->add_option("--seed", *seed, "Generator seed")->required();
    c->add_option("--attempts", *attempts, "Maximum generation attempts");
    c->add_option("--pad", *pad, "Pad with unconstrained variables up to this many");
    add_expansion(c, e);
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        HardInstanceOptions ho;
        ho.alpha = parse_rational(e->alpha);
        ho.gamma = parse_rational(e->gamma);
        ho.max_attempts = *attempts;
        ho.expansion = options_of(*e, *seed);
        auto inst = hard_instance(*d, *ell, *m, *seed, ho);
        XorSystem s = *pad > inst.system.num_vars() ? dummy_pad(inst.system, *pad) : inst.system;
        sink->command = "gen hard";
        sink->config = {{"d", *d}, {"ell", *ell}, {"m", *m}, {"seed", *seed},
                        {"alpha", e->alpha}, {"gamma", e->gamma}, {"mode", e->mode},
                        {"attempts", *attempts}, {"pad", *pad}};
        sink->emit(ctx.out, xor_system_to_string(s),
                   {{"expansion", verdict_json(inst.verdict)},
                    {"expansion_verified", inst.verified},
                    {"attempts", inst.attempts},
                    {"graph_seed", inst.graph_seed},
                    {"x_ell", s.name(inst.x_ell)}});
        if (!inst.verified) ctx.err << "warning: unverified expansion\n";
      };
    });
  }

  struct FamilyArgs {
    std::uint32_t q = 5;
    std::uint32_t k = 3;
    std::optional<std::uint32_t> universe;
    bool greedy = false;
  };
  auto add_family = [](CLI::App* c, std::shared_ptr<FamilyArgs> f) {
    c->add_option("--q", f->q, "Prime field size");
    c->add_option("--k", f->k, "Set size")->required();
    c->add_option("--universe", f->universe, "Universe size (at least k*q; greedy: exact)");
    c->add_flag("--greedy", f->greedy, "Greedy family over --universe points instead");
  };
  auto family_of = [](const FamilyArgs& f) {
    if (f.greedy) {
      if (!f.universe) throw InputError("--greedy needs --universe");
      return greedy_set_family(*f.universe, f.k);
    }
    return polynomial_set_family(f.q, f.k, f.universe);
  };

  {
    auto* c = g->add_subcommand("family", "k-uniform family with small pairwise intersections");
    auto f = std::make_shared<FamilyArgs>();
    auto sink = std::make_shared<Sink>();
    add_family(c, f);
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        SetFamily fam = family_of(*f);
        std::string text;
        for (const auto& e : fam.members) {
          for (std::size_t i = 0; i < e.size(); ++i) text += (i ? " " : "") + std::to_string(e[i]);
          text += "\n";
        }
        sink->command = "gen family";
        sink->config = {{"q", f->q}, {"k", f->k}, {"greedy", f->greedy}};
        if (f->universe) sink->config["universe"] = *f->universe;
        sink->emit(ctx.out, text,
                   {{"universe", fam.universe},
                    {"size", fam.size()},
                    {"uniform", fam.is_uniform(f->k)},
                    {"max_intersection", fam.max_pairwise_intersection()}});
      };
    });
  }
  {
    auto* c = g->add_subcommand("chain", "Chain of k-stable colorings from a set family");
    auto f = std::make_shared<FamilyArgs>();
    auto sink = std::make_shared<Sink>();
    add_family(c, f);
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        SetFamily fam = family_of(*f);
        const int k = static_cast<int>(f->k);
        auto chain = stable_chain(fam, k);
        Csv csv({"t", "classes", "k_stable", "shufflable", "equality_compatible",
                 "strictly_refines_previous"});
        bool all = true;
        for (std::size_t t = 0; t < chain.size(); ++t) {
          bool st = is_k_stable(chain[t]);
          bool sh = is_shufflable(chain[t]);
          bool eq = is_equality_compatible(chain[t]);
          bool strict = t == 0 || strictly_refines(chain[t], chain[t - 1]);
          all = all && st && sh && eq && strict;
          csv.row({str(t), str(std::uint64_t(chain[t].num_colors)), str(st), str(sh), str(eq),
                   t == 0 ? "" : str(strict)});
        }
        sink->command = "gen chain";
        sink->config = {{"q", f->q}, {"k", f->k}, {"greedy", f->greedy}};
        if (f->universe) sink->config["universe"] = *f->universe;
        sink->emit(ctx.out, csv.text(), {{"length", fam.size()}, {"all_checks_pass", all}});
      };
    });
  }
}

// ---- algebra ----

void add_algebra(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* a = app.add_subcommand("algebra", "Partition algebras along WL rounds");
  a->require_subcommand(1);
  auto* c = a->add_subcommand("chain", "Algebra dimension of each k-WL round");
  auto k = std::make_shared<int>(2);
  auto input = std::make_shared<std::string>();
  auto budget = std::make_shared<std::size_t>(2'000'000);
  auto sink = std::make_shared<Sink>();
  c->add_option("--k", *k, "Dimension (at least 2)")->required()->check(CLI::Range(2, 8));
  c->add_option("--input", *input, "Structure file")->required();
  c->add_option("--budget", *budget, "Maximum tensor products per round");
  sink->add(c);
  c->callback([=, &ctx, &action] {
    action = [=, &ctx] {
      auto s = load_structure(*input);
      auto chain = wl_algebra_chain(s, *k, *budget);
      if (!chain.saturated) throw BudgetExceeded("algebra closure ran out of product budget");
      Csv csv({"round", "classes", "dim", "strict"});
      for (const auto& r : chain.rows)
        csv.row({str(r.round), str(r.classes), str(r.dimension), str(r.strict)});
      sink->command = "algebra chain";
      sink->config = {{"k", *k}, {"input", *input}, {"budget", *budget}};
      sink->emit(ctx.out, csv.text(),
                 {{"strict_increases", chain.strict_increases},
                  {"weakly_increasing", chain.weakly_increasing},
                  {"within_bound", chain.within_bound},
                  {"windows_ok", chain.windows_ok}});
    };
  });
}

// ---- bin ----

void add_bin(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* b = app.add_subcommand("bin", "Binary structures over ell-tuples");
  b->require_subcommand(1);
  {
    auto* c = b->add_subcommand("build", "Emit the binary structure");
    auto ell = std::make_shared<int>(2);
    auto input = std::make_shared<std::string>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--ell", *ell, "Tuple length")->required()->check(CLI::Range(1, 8));
    c->add_option("--input", *input, "Structure file")->required();
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        auto bin = bin_structure(load_structure(*input), *ell);
        sink->command = "bin build";
        sink->config = {{"ell", *ell}, {"input", *input}};
        sink->emit(ctx.out, structure_to_string(bin.structure),
                   {{"universe", bin.structure.universe_size()},
                    {"relations", bin.structure.vocabulary().size()}});
      };
    });
  }
  {
    auto* c = b->add_subcommand("tradeoff", "Compare k-WL with 2-WL on the binary structures");
    auto k = std::make_shared<int>(3);
    auto a = std::make_shared<std::string>();
    auto bb = std::make_shared<std::string>();
    auto sink = std::make_shared<Sink>();
    c->add_option("--k", *k, "Odd dimension k = 2 ell - 1")->required()->check(CLI::Range(3, 15));
    c->add_option("--a", *a, "First structure file")->required();
    c->add_option("--b", *bb, "Second structure file")->required();
    sink->add(c);
    c->callback([=, &ctx, &action] {
      action = [=, &ctx] {
        if (*k % 2 == 0) throw InputError("k must be odd");
        auto sa = load_structure(*a);
        auto sb = load_structure(*bb);
        auto direct = joint_distinguish(sa, sb, *k, {std::nullopt, false});
        auto [ba, bbin] = bin_structures(sa, sb, (*k + 1) / 2);
        auto binary = joint_distinguish(ba.structure, bbin.structure, 2, {std::nullopt, false});
        for (const auto* t : {&direct.trace_a, &direct.trace_b, &binary.trace_a, &binary.trace_b})
          check_round_bound(*t);
        const std::uint64_t nb = ba.structure.universe_size();
        Csv csv({"k", "kwl_round", "bin_universe", "bin_2wl_round", "bin_upper_bound",
                 "consistent"});
        bool consistent = !direct.round || binary.round.has_value();
        csv.row({str(std::uint64_t(*k)), opt_str(direct.round), str(nb), opt_str(binary.round),
                 str(upper_round_bound(nb, 2)), str(consistent)});
        sink->command = "bin tradeoff";
        sink->config = {{"k", *k}, {"a", *a}, {"b", *bb}};
        sink->emit(ctx.out, csv.text(), {{"consistent", consistent}});
      };
    });
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weisfeiler-Leman refinement, pebble games and related constructions"};
  app.name("wlr");
  app.set_version_flag("--version", std::string("wlr ") + kVersion);
  app.require_subcommand(1);
  Context ctx{out, err};
  std::function<void()> action;
  add_wl(app, ctx, action);
  add_xor(app, ctx, action);
  add_game(app, ctx, action);
  add_gen(app, ctx, action);
  add_algebra(app, ctx, action);
  add_bin(app, ctx, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  try {
    if (action) action();
    return kOk;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace wlr::cli
