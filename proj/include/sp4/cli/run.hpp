#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sp4/cat/modular.hpp"
#include "sp4/clasp/clasp.hpp"
#include "sp4/faithful/certificate.hpp"
#include "sp4/faithful/torus.hpp"
#include "sp4/io/hash.hpp"
#include "sp4/io/json.hpp"
#include "sp4/tqft/spine.hpp"
#include "sp4/tqft/torus.hpp"

namespace sp4::cli {

using io::Json;

/// Options shared by every subcommand.
struct RunConfig {
  long budget = 1'000'000;
  std::string cache_dir;
  bool no_cache = false;
  std::string format = "json";
  int precision = 6;
};

/// A finished result in both renderings; nothing is printed until the
/// command has completed.
struct Output {
  Json json;
  std::string text;
};

namespace detail {

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + " is not valid JSON: " + e.what());
  }
}

inline std::vector<int> parse_ints(const std::string& s, std::size_t count, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput(what + " must be " + std::to_string(count) + " comma-separated integers, got '" + s + "'");
    }
  }
  if (out.size() != count)
    throw InvalidInput(what + " must be " + std::to_string(count) + " comma-separated integers, got '" + s + "'");
  return out;
}

inline cat::Weight parse_weight(const std::string& s, const std::string& what) {
  const auto v = parse_ints(s, 2, what);
  return {v[0], v[1]};
}

inline Json weight_json(const cat::Weight& w) { return Json::array({w.a, w.b}); }

inline Json weights_json(const std::vector<cat::Weight>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(weight_json(w));
  return a;
}

/// Numeric value at q = exp(2 pi i / N), for display only.
inline std::string complex_str(const CycNumber& c, int precision) {
  long double re = 0, im = 0;
  const auto& co = c.coefficients();
  for (std::size_t i = 0; i < co.size(); ++i) {
    const long double x = co[i].get_d();
    const long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(i) / c.order();
    re += x * std::cos(angle);
    im += x * std::sin(angle);
  }
  const long double eps = std::pow(10.0L, -precision) / 2;
  if (std::fabs(re) < eps) re = 0;
  if (std::fabs(im) < eps) im = 0;
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << static_cast<double>(re) << (im < 0 ? "-" : "+")
     << static_cast<double>(std::fabs(im)) << "i";
  return os.str();
}

inline Json matrix_json(const cat::CycMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(io::to_json(x));
    rows.push_back(row);
  }
  return rows;
}

inline std::string matrix_text(const cat::CycMatrix& m, int precision) {
  std::ostringstream os;
  for (const auto& r : m) {
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "  " : "") << complex_str(r[j], precision);
    os << "\n";
  }
  return os.str();
}

inline Output scalar_output(const RationalFunction& f) { return {Json{{"scalar", io::to_json(f)}}, f.str() + "\n"}; }

inline std::string rational_str(const Rational& r) { return r.get_den() == 1 ? r.get_num().get_str() : r.get_str(); }

// ---------------------------------------------------------------------------
// Commands

inline Output web_eval(const std::string& path) {
  const Json j = read_json(path);
  if (j.value("schema", std::string()) == io::kWebSumSchema) return scalar_output(eval_closed(io::websum_from_json(j)));
  return scalar_output(eval_closed(io::web_from_json(j)));
}

inline Output web_rules() {
  const auto& t = RuleTable::standard();
  Json rules = Json::array();
  for (const auto& r : t.rules) {
    Json rhs = Json::array();
    for (const auto& [c, w] : r.rhs) rhs.push_back({{"coef", io::to_json(c)}, {"web", io::to_json(w)}});
    rules.push_back({{"name", r.name}, {"pattern", r.pattern}, {"lhs", io::to_json(r.lhs)}, {"rhs", rhs}});
  }
  Json j{{"schema", "sp4.rules/1"},
         {"hash", io::rule_table_hash()},
         {"crossing_scalar_exponent", kCrossingScalarExponent},
         {"loop_single", io::to_json(t.loop_single)},
         {"loop_double", io::to_json(t.loop_double)},
         {"rules", rules}};
  return {j, "hash " + io::rule_table_hash() + "\n" + t.serialize()};
}

inline Output clasp_expand_cmd(int n, const std::string& type) {
  if (type != "single" && type != "double") throw InvalidInput("clasp type must be single or double");
  const WebSum s = clasp::clasp_expand(n, type == "single" ? EdgeType::single : EdgeType::twin);
  std::ostringstream text;
  text << "P_" << n << " (" << type << "): " << s.size() << " terms\n";
  return {io::to_json(s), text.str()};
}

inline Output clasp_trace_cmd(const std::string& label) {
  const auto w = parse_weight(label, "--label");
  return scalar_output(clasp::clasp_trace({w.a, w.b}));
}

inline Output clasp_theta_cmd(const std::string& labels) {
  const auto v = parse_ints(labels, 3, "--labels");
  return scalar_output(clasp::theta_net(v[0], v[1], v[2]));
}

inline Output cat_simples(int k) {
  const auto s = cat::simples(k);
  std::ostringstream text;
  for (std::size_t i = 0; i < s.size(); ++i) text << (i ? " " : "") << s[i].str();
  text << "\n";
  return {Json{{"schema", "sp4.simples/1"}, {"level", k}, {"simples", weights_json(s)}}, text.str()};
}

inline Output cat_fusion(const std::string& x, const std::string& y, std::optional<int> k) {
  const auto wx = parse_weight(x, "--x"), wy = parse_weight(y, "--y");
  Json products = Json::array();
  std::ostringstream text;
  text << wx.str() << " x " << wy.str() << " =";
  bool first = true;
  for (const auto& [w, c] : cat::fusion(wx, wy, k)) {
    products.push_back({{"weight", weight_json(w)}, {"multiplicity", c}});
    text << (first ? " " : " + ") << (c == 1 ? "" : std::to_string(c) + " ") << w.str();
    first = false;
  }
  text << "\n";
  Json j{{"schema", "sp4.fusion/1"}, {"x", weight_json(wx)}, {"y", weight_json(wy)}, {"products", products}};
  j["level"] = k ? Json(*k) : Json(nullptr);
  return {j, text.str()};
}

inline Output cat_matrix(int k, bool s, int precision) {
  const auto& md = cat::modular_data(k);
  const cat::CycMatrix m = s ? md.s_tilde : md.t_matrix();
  Json j{{"schema", "sp4.matrix/1"},
         {"kind", s ? "s_tilde" : "t"},
         {"level", k},
         {"order", md.order()},
         {"basis", weights_json(md.level.simples)},
         {"rows", matrix_json(m)}};
  std::string text = matrix_text(m, precision);
  if (s) {
    j["d_squared"] = io::to_json(md.d_squared);
    text += "D^2 = " + complex_str(md.d_squared, precision) + "\n";
  }
  return {j, text};
}

inline Output tqft_dim(const std::string& spine_path, int k) {
  const tqft::Spine sp = tqft::spine_from_json(read_json(spine_path));
  const long d = tqft::statespace_dim(sp, k);
  Json j{{"schema", "sp4.dim/1"}, {"genus", sp.genus()}, {"level", k}, {"dim", d}};
  std::string text = "genus " + std::to_string(sp.genus()) + ", level " + std::to_string(k) + ": dim " + std::to_string(d);
  if (k >= 1) {
    const long v = tqft::verlinde_dim(sp.genus(), k);
    j["verlinde"] = v;
    text += " (Verlinde " + std::to_string(v) + ")";
  }
  return {j, text + "\n"};
}

inline Output tqft_torus(int k, int precision) {
  const tqft::TorusRep r = tqft::torus_rep(k);
  const auto& md = cat::modular_data(k);
  const cat::CycMatrix cm = tqft::curve_meridian(k), cl = tqft::curve_longitude(k);
  Json j{{"schema", "sp4.torus/1"},
         {"level", k},
         {"order", r.order},
         {"basis", weights_json(md.level.simples)},
         {"s", matrix_json(r.s)},
         {"t", matrix_json(r.t)},
         {"d_squared", io::to_json(md.d_squared)},
         {"central_charge", io::rational_to_json(r.central_charge)},
         {"phase_turns", io::rational_to_json(r.phase_turns)},
         {"curve_meridian", matrix_json(cm)},
         {"curve_longitude", matrix_json(cl)}};
  std::ostringstream text;
  text << "rho(s) = S~\n" << matrix_text(r.s, precision) << "rho(t) = T\n" << matrix_text(r.t, precision);
  text << "central charge " << rational_str(r.central_charge) << ", framing phase " << rational_str(r.phase_turns)
       << " turns\n";
  text << "C(meridian)\n" << matrix_text(cm, precision) << "C(longitude)\n" << matrix_text(cl, precision);
  return {j, text.str()};
}

inline Output faithful_certify(const std::string& spine_path, const std::string& walk_path, int k, bool numeric) {
  const tqft::Spine sp = tqft::spine_from_json(read_json(spine_path));
  const faithful::CurveWalk w = faithful::walk_from_json(read_json(walk_path));
  const faithful::Certificate c = faithful::certify_detection(sp, w, k, numeric);
  std::ostringstream text;
  for (const auto& s : c.steps) text << "- " << s << "\n";
  text << c.conclusion << "\n";
  return {faithful::to_json(c), text.str()};
}

inline Output faithful_torus(long max_n) {
  const Json j = faithful::torus_table(max_n);
  std::ostringstream text;
  for (const auto& r : j["rows"]) text << "n=" << r["n"].get<long>() << " k0=" << r["min_level"].get<int>() << "\n";
  return {j, text.str()};
}

/// Random graph geodesics certified at their minimal level and the next
/// `extra` levels.
inline Output faithful_sweep(std::uint64_t seed, int count, int max_m, int max_genus, int extra) {
  if (count < 1 || max_m < 2 || max_genus < 2 || extra < 0) throw InvalidInput("sweep parameters out of range");
  std::mt19937_64 rng(seed);
  int certified = 0, largest = 0;
  long attempts = 0;
  while (certified < count) {
    if (++attempts > 1000L * count) throw InvalidInput("sweep could not find enough walks with m <= " + std::to_string(max_m));
    const int g = 2 + static_cast<int>(attempts % (max_genus - 1));
    const tqft::Spine sp = faithful::random_spine(g, rng);
    const auto w = faithful::random_walk(sp, rng, 1, 4 * max_m);
    if (!w) continue;
    const auto c = faithful::complexity(sp, *w);
    if (c.m > max_m) continue;
    const int k0 = faithful::min_level(c);
    for (int k = k0; k <= k0 + extra; ++k) faithful::certify_detection(sp, *w, k);
    ++certified;
    largest = std::max(largest, c.m);
  }
  Json j{{"schema", "sp4.sweep/1"}, {"seed", seed},         {"count", count},   {"max_m", max_m},
         {"max_genus", max_genus},  {"certified", certified}, {"largest_m", largest}};
  return {j, "certified " + std::to_string(certified) + " walks (largest m " + std::to_string(largest) + ", seed " +
                 std::to_string(seed) + ")\n"};
}

inline Output cache_gc(const RunConfig& cfg) {
  std::optional<std::filesystem::path> dir;
  if (!cfg.cache_dir.empty())
    dir = cfg.cache_dir;
  else
    dir = clasp::DiskCache::default_dir();
  const long removed = dir ? clasp::DiskCache::gc(*dir) : 0;
  return {Json{{"removed", removed}}, "removed " + std::to_string(removed) + "\n"};
}

}  // namespace detail

/// Parses argv, runs one subcommand and writes its result to `out`. Exit
/// status: 0 on success, 2 on usage errors, 1 on domain errors, which are
/// reported on `err` as {"error": name, "message": text}.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact computations for the Sp(4) spider and its quantum representations", "sp4"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--budget", cfg.budget, "Rewrite step budget of the web engine")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "Clasp cache directory (default: $SP4_CACHE_DIR)");
  app.add_flag("--no-cache", cfg.no_cache, "Do not read or write the clasp cache");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--precision", cfg.precision, "Digits in numeric display (text format)")->check(CLI::Range(0, 30));

  std::function<Output()> action;
  std::string path, path2, label, type = "single", x, y;
  int n = 0, level = 1;
  std::optional<int> opt_level;
  long max_n = 50;
  bool numeric = false;
  std::uint64_t seed = 2024;
  int count = 200, max_m = 12, max_genus = 3, extra = 3;

  auto* web = app.add_subcommand("web", "Web evaluation and the relation table");
  web->require_subcommand(1);
  auto* web_eval = web->add_subcommand("eval", "Evaluate a closed web or web sum");
  web_eval->add_option("--web", path, "Web JSON file")->required();
  web_eval->callback([&] { action = [&] { return detail::web_eval(path); }; });
  web->add_subcommand("rules", "Print the relation table with its hash")->callback([&] {
    action = [] { return detail::web_rules(); };
  });

  auto* cl = app.add_subcommand("clasp", "Clasps, traces and theta networks");
  cl->require_subcommand(1);
  auto* expand = cl->add_subcommand("expand", "Expand the clasp on n strands");
  expand->add_option("--n", n, "Number of strands")->required()->check(CLI::NonNegativeNumber);
  expand->add_option("--type", type, "single or double");
  expand->callback([&] { action = [&] { return detail::clasp_expand_cmd(n, type); }; });
  auto* tr = cl->add_subcommand("trace", "Closure of a clasp");
  tr->add_option("--label", label, "a,b")->required();
  tr->callback([&] { action = [&] { return detail::clasp_trace_cmd(label); }; });
  auto* th = cl->add_subcommand("theta", "Theta network of three single clasps");
  th->add_option("--labels", label, "a,b,c")->required();
  th->callback([&] { action = [&] { return detail::clasp_theta_cmd(label); }; });

  auto* ca = app.add_subcommand("cat", "Simples, fusion and modular data of Sp(4)_k");
  ca->require_subcommand(1);
  auto* si = ca->add_subcommand("simples", "Simple objects at level k");
  si->add_option("--level", level, "Level k")->required();
  si->callback([&] { action = [&] { return detail::cat_simples(level); }; });
  auto* fu = ca->add_subcommand("fusion", "Fusion of two weights, generic or at a level");
  fu->add_option("--x", x, "a,b")->required();
  fu->add_option("--y", y, "a,b")->required();
  fu->add_option("--level", opt_level, "Level k (omit for generic q)");
  fu->callback([&] { action = [&] { return detail::cat_fusion(x, y, opt_level); }; });
  auto* sm = ca->add_subcommand("smatrix", "Unnormalized S matrix");
  sm->add_option("--level", level, "Level k")->required();
  sm->callback([&] { action = [&] { return detail::cat_matrix(level, true, cfg.precision); }; });
  auto* tm = ca->add_subcommand("tmatrix", "T matrix of twists");
  tm->add_option("--level", level, "Level k")->required();
  tm->callback([&] { action = [&] { return detail::cat_matrix(level, false, cfg.precision); }; });

  auto* tq = app.add_subcommand("tqft", "State spaces and the torus representation");
  tq->require_subcommand(1);
  auto* dim = tq->add_subcommand("dim", "State space dimension from a spine");
  dim->add_option("--spine", path, "Spine JSON file")->required();
  dim->add_option("--level", level, "Level k")->required();
  dim->callback([&] { action = [&] { return detail::tqft_dim(path, level); }; });
  auto* to = tq->add_subcommand("torus", "S, T and curve operators on the torus");
  to->add_option("--level", level, "Level k")->required();
  to->callback([&] { action = [&] { return detail::tqft_torus(level, cfg.precision); }; });

  auto* fa = app.add_subcommand("faithful", "Detection certificates");
  fa->require_subcommand(1);
  auto* ce = fa->add_subcommand("certify", "Certify detection of h from the walk of h(alpha)");
  ce->add_option("--spine", path, "Spine JSON file")->required();
  ce->add_option("--walk", path2, "Walk JSON file")->required();
  ce->add_option("--level", level, "Level k")->required();
  ce->add_flag("--numeric", numeric, "Also evaluate theta networks for vertex sums <= 6");
  ce->callback([&] { action = [&] { return detail::faithful_certify(path, path2, level, numeric); }; });
  auto* ft = fa->add_subcommand("torus", "First detecting level of twist powers");
  ft->add_option("--max-n", max_n, "Largest twist power");
  ft->callback([&] { action = [&] { return detail::faithful_torus(max_n); }; });
  auto* sw = fa->add_subcommand("sweep", "Certify random graph geodesics at their minimal levels");
  sw->add_option("--seed", seed, "Random seed");
  sw->add_option("--count", count, "Number of walks");
  sw->add_option("--max-m", max_m, "Largest complexity");
  sw->add_option("--max-genus", max_genus, "Largest genus");
  sw->add_option("--extra-levels", extra, "Levels checked above the minimal one");
  sw->callback([&] { action = [&] { return detail::faithful_sweep(seed, count, max_m, max_genus, extra); }; });

  auto* ch = app.add_subcommand("cache", "Clasp cache maintenance");
  ch->require_subcommand(1);
  ch->add_subcommand("gc", "Remove entries written under another relation table")->callback([&] {
    action = [&] { return detail::cache_gc(cfg); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  default_budget() = cfg.budget;
  auto& store = clasp::ClaspStore::instance();
  store.set_budget(cfg.budget);
  if (cfg.no_cache)
    store.set_cache_dir(std::nullopt);
  else if (!cfg.cache_dir.empty())
    store.set_cache_dir(std::filesystem::path(cfg.cache_dir));

  try {
    const Output o = action();
    if (cfg.format == "text")
      out << o.text;
    else
      out << o.json.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    err << Json{{"error", e.name()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << Json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace sp4::cli
