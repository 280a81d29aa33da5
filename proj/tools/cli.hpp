#pragma once

// Command-line front end. run() is separate from main() so the test suite
// can drive it with captured streams.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tame/tame.hpp"

namespace tame::cli {

enum class Format { Json, Table };

struct GroupOptions {
  std::string spec_file;
  std::string catalog_name;
  unsigned n = 2;
  long long q = 3;
  unsigned f = 1;
  bool ramified = false;
};

struct Config {
  Format format = Format::Table;
  GroupOptions group;
  long long level = 0;
  std::string word;
  std::string mu;
  std::string cls;
  std::string lambda;
  unsigned r = 0;
  std::vector<unsigned> q_fields;
  unsigned k_max = 3;
  std::uint64_t seed = 1;
  std::size_t pairs = 16;
};

/// Column-aligned plain text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width(header_.size(), 0);
    for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < width.size(); ++i) {
        const std::string& cell = i < r.size() ? r[i] : std::string();
        out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(i + 1 == width.size() ? 0 : width[i])) << cell;
      }
      out << '\n';
    };
    line(header_);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& r : rows_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline IntVector parse_int_csv(const std::string& text) {
  IntVector v;
  for (const auto& s : split_csv(text)) {
    Rational r = parse_rational(s);
    if (!is_integer(r)) fail(ErrorKind::BadParams, "'" + s + "' is not an integer");
    v.push_back(numerator(r));
  }
  return v;
}

inline RationalVector parse_rational_csv(const std::string& text) {
  RationalVector v;
  for (const auto& s : split_csv(text)) v.push_back(parse_rational(s));
  return v;
}

inline TameGroupSpec resolve_group(const GroupOptions& g) {
  if (!g.spec_file.empty() && !g.catalog_name.empty()) fail(ErrorKind::BadParams, "use either --spec or --catalog");
  if (!g.spec_file.empty()) {
    TameGroupSpec s = load_spec(g.spec_file);
    validate(s);
    return s;
  }
  if (g.catalog_name.empty()) fail(ErrorKind::BadParams, "a group is required: --spec FILE or --catalog NAME");
  return catalog(g.catalog_name, {g.n, Int(g.q), g.f, g.ramified});
}

inline void add_group_options(CLI::App* app, GroupOptions& g) {
  app->add_option("--spec", g.spec_file, "Group spec JSON file");
  app->add_option("--catalog", g.catalog_name, "Catalog group: gl, sl, sp4, u, res-gl, res-sl");
  app->add_option("--n", g.n, "Rank parameter");
  app->add_option("--q", g.q, "Residue field size");
  app->add_option("--f", g.f, "Degree of the unramified extension (res-* groups)");
  app->add_option("--ramified", g.ramified, "Ramified unitary group (true/false)");
}

inline std::string cell(const IntVector& v) { return to_string(v); }

inline std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "; " : "") + items[i];
  return s;
}

inline void emit(std::ostream& out, const Config& cfg, const Json& j, const Table& table) {
  if (cfg.format == Format::Json)
    out << j.dump(2) << '\n';
  else
    table.print(out);
}

inline int cmd_group_list(const Config& cfg, std::ostream& out) {
  Json j = Json::array();
  Table t({"name", "parameters"});
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"gl", "--n N --q Q"},       {"sl", "--n N --q Q"},
      {"sp4", "--q Q"},            {"u", "--n N --q Q [--ramified true]"},
      {"res-gl", "--n N --f F --q Q"}, {"res-sl", "--n N --f F --q Q"}};
  for (const auto& [name, params] : rows) {
    Json e;
    e["name"] = name;
    e["parameters"] = params;
    j.push_back(e);
    t.add({name, params});
  }
  emit(out, cfg, j, t);
  return 0;
}

inline int cmd_group_show(const Config& cfg, std::ostream& out) {
  const TameGroupSpec s = resolve_group(cfg.group);
  if (cfg.format == Format::Json) {
    out << to_json(s).dump(2) << '\n';
    return 0;
  }
  const InertialFrame fr = make_frame(s);
  Table t({"field", "value"});
  t.add({"name", s.name});
  t.add({"rank", std::to_string(s.rank())});
  t.add({"roots", std::to_string(s.datum.roots.size())});
  t.add({"simple roots", join([&] {
           std::vector<std::string> v;
           for (std::size_t i = 0; i < s.datum.semisimple_rank(); ++i) v.push_back(cell(s.datum.simple_root(i)));
           return v;
         }())});
  t.add({"frobenius", s.frobenius.matrix.str()});
  t.add({"inertia", s.inertia.matrix.str()});
  t.add({"p, q, e", s.p.str() + ", " + s.q.str() + ", " + std::to_string(s.e)});
  t.add({"|Omega|, |Omega^theta|", std::to_string(fr.omega.order()) + ", " + std::to_string(fr.omega_theta.order())});
  t.add({"coinvariant rank", std::to_string(fr.tf_rank())});
  t.print(out);
  return 0;
}

inline int cmd_group_validate(const Config& cfg, std::ostream& out) {
  const TameGroupSpec s = resolve_group(cfg.group);
  Json j;
  j["name"] = s.name;
  j["valid"] = true;
  Table t({"name", "valid"});
  t.add({s.name, "yes"});
  emit(out, cfg, j, t);
  return 0;
}

inline Int checked_level(const InertialFrame& fr, long long level) {
  if (level < 1) fail(ErrorKind::BadParams, "--level must be positive");
  if (gcd(Int(level), fr.p()) != 1)
    fail(ErrorKind::LevelNotCoprime, "level " + std::to_string(level) + " is not prime to p = " + fr.p().str());
  return Int(level);
}

inline int cmd_tame_types(const Config& cfg, std::ostream& out) {
  const InertialFrame fr = make_frame(resolve_group(cfg.group));
  const Int m = checked_level(fr, cfg.level);
  const auto types = enumerate_tame_types(fr, m);
  Json j;
  j["group"] = fr.spec.name;
  j["level"] = cfg.level;
  j["count"] = types.size();
  j["types"] = Json::array();
  Table t({"rep", "level", "witnesses"});
  for (const auto& ty : types) {
    j["types"].push_back(to_json(fr, ty));
    std::vector<std::string> w;
    for (auto i : ty.rational_witnesses) w.push_back(word_string(fr.omega_theta.word(i)));
    t.add({ty.cls.rep.str(), ty.cls.level.str(), join(w)});
  }
  if (cfg.format == Format::Table) out << fr.spec.name << ": " << types.size() << " tame inertial types of level dividing " << cfg.level << "\n";
  emit(out, cfg, j, t);
  return 0;
}

inline int cmd_dl_forward(const Config& cfg, std::ostream& out) {
  const InertialFrame fr = make_frame(resolve_group(cfg.group));
  const HerzigPresentation hp{weyl_index(fr, parse_word(cfg.word)), parse_int_csv(cfg.mu)};
  const TwistedClass c = dl_forward(fr, hp);
  Json j;
  j["presentation"] = to_json(fr, hp);
  j["class"] = to_json(c);
  j["niveau"] = niveau(fr, hp);
  Table t({"w", "mu", "class", "level", "niveau"});
  t.add({word_string(fr.omega_theta.word(hp.w)), cell(hp.mu), c.rep.str(), c.level.str(), std::to_string(niveau(fr, hp))});
  emit(out, cfg, j, t);
  return 0;
}

inline TameInertialType parse_type(const InertialFrame& fr, const std::string& csv) {
  const TorsionVector v(parse_rational_csv(csv), fr.p());
  return make_tame_type(fr, canonicalize_tf(fr, v));
}

inline int cmd_dl_inverse(const Config& cfg, std::ostream& out) {
  const InertialFrame fr = make_frame(resolve_group(cfg.group));
  const DLPacket packet = dl_inverse(fr, parse_type(fr, cfg.cls));
  Table t({"w", "mu", "niveau"});
  for (const auto& hp : packet.presentations)
    t.add({word_string(fr.omega_theta.word(hp.w)), cell(hp.mu), std::to_string(niveau(fr, hp))});
  emit(out, cfg, to_json(fr, packet), t);
  return 0;
}

inline int emit_weights(const Config& cfg, std::ostream& out, const std::vector<SerreWeight>& ws, const SerreContext& c) {
  Json j = Json::array();
  Table t({"lambda", "pairings", "regular"});
  for (const auto& w : ws) {
    j.push_back(to_json(w));
    t.add({cell(w.lambda), cell(c.pairings(w.lambda)), w.regular ? "yes" : "no"});
  }
  emit(out, cfg, j, t);
  return 0;
}

inline int cmd_serre_box(const Config& cfg, std::ostream& out, bool regular_only) {
  const SerreContext c = make_serre_context(resolve_group(cfg.group));
  const unsigned r = cfg.r ? cfg.r : c.r_default;
  if (regular_only && r != 1) fail(ErrorKind::BadParams, "regular weights are defined for r = 1");
  return emit_weights(cfg, out, regular_only ? regular_box(c) : restricted_box(c, r), c);
}

inline int cmd_serre_reflect(const Config& cfg, std::ostream& out) {
  const SerreContext c = make_serre_context(resolve_group(cfg.group));
  const SerreWeight in = restricted_representative(c, parse_int_csv(cfg.lambda), 1);
  const SerreWeight img = herzig_R(c, in);
  Json j;
  j["input"] = to_json(in);
  j["image"] = to_json(img);
  Table t({"lambda", "R(lambda)"});
  t.add({cell(in.lambda), cell(img.lambda)});
  emit(out, cfg, j, t);
  return 0;
}

inline int cmd_serre_recipe(const Config& cfg, std::ostream& out) {
  const SerreContext c = make_serre_context(resolve_group(cfg.group));
  const RecipeExpression expr = serre_recipe(c, parse_type(c.frame, cfg.cls));
  Table t({"field", "value"});
  std::vector<std::string> pres;
  for (const auto& hp : expr.dl_part.presentations)
    pres.push_back("(" + word_string(c.frame.omega_theta.word(hp.w)) + ", " + cell(hp.mu) + ")");
  t.add({"dl_part", join(pres)});
  t.add({"twist_weight", cell(expr.twist_weight)});
  t.add({"jh_hook", expr.jh_hook});
  t.add({"tags", join(expr.tags)});
  emit(out, cfg, to_json(c.frame, expr), t);
  return 0;
}

inline int cmd_verify(const Config& cfg, std::ostream& out, const std::string& which) {
  Stopwatch clock;
  Report rep;
  rep.config["suite"] = which;
  const bool all = which == "all";
  if (all || which == "twisted") {
    const auto qs = cfg.q_fields.empty() ? std::vector<unsigned>{3, 4, 9} : cfg.q_fields;
    rep.merge(verify_twisted(qs), "twisted");
  }
  if (all || which == "tori") rep.merge(verify_tori(), "tori");
  if (all || which == "metacyclic") {
    const auto qs = cfg.q_fields.empty() ? std::vector<unsigned>{3, 4} : cfg.q_fields;
    Report m = verify_metacyclic(qs, cfg.pairs, cfg.k_max, cfg.seed);
    rep.config["metacyclic"] = m.config;
    rep.merge(m, "metacyclic");
  }
  rep.elapsed_ms = clock.elapsed_ms();
  if (cfg.format == Format::Json) {
    out << rep.to_json().dump(2) << '\n';
  } else {
    Table t({"suite", "checks", "mismatches"});
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& r : rep.results) ++counts[r["suite"].get<std::string>()].first;
    for (const auto& r : rep.mismatches) ++counts[r["suite"].get<std::string>()].second;
    for (const auto& [suite, c] : counts) t.add({suite, std::to_string(c.first), std::to_string(c.second)});
    t.print(out);
    out << (rep.ok() ? "all checks agree" : "MISMATCH") << " (" << static_cast<long long>(rep.elapsed_ms) << " ms)\n";
  }
  return rep.ok() ? 0 : 2;
}

/// Exit codes: 0 success, 1 usage or validation error, 2 verification mismatch.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorics of tame inertial parameters and Serre weights", "tame-params"};
  app.require_subcommand(1);
  Config cfg;
  std::string format = "table";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

  int code = 0;
  std::function<int()> action;

  auto* group = app.add_subcommand("group", "Catalog and spec files");
  group->require_subcommand(1);
  group->add_subcommand("list", "List catalog groups")->callback([&] { action = [&] { return cmd_group_list(cfg, out); }; });
  auto* show = group->add_subcommand("show", "Print a group spec");
  add_group_options(show, cfg.group);
  show->callback([&] { action = [&] { return cmd_group_show(cfg, out); }; });
  auto* val = group->add_subcommand("validate", "Check a group spec");
  add_group_options(val, cfg.group);
  val->callback([&] { action = [&] { return cmd_group_validate(cfg, out); }; });

  auto* types = app.add_subcommand("tame-types", "Enumerate tame inertial types of bounded level");
  add_group_options(types, cfg.group);
  types->add_option("--level", cfg.level, "Level m, prime to p")->required();
  types->callback([&] { action = [&] { return cmd_tame_types(cfg, out); }; });

  auto* dl = app.add_subcommand("dl", "Deligne-Lusztig correspondence");
  dl->require_subcommand(1);
  auto* fwd = dl->add_subcommand("forward", "Presentation (w, mu) to tame inertial type");
  add_group_options(fwd, cfg.group);
  fwd->add_option("--w", cfg.word, "Weyl element as a word, e.g. \"s1 s2\" or e")->required();
  fwd->add_option("--mu", cfg.mu, "mu as comma-separated integers")->required();
  fwd->callback([&] { action = [&] { return cmd_dl_forward(cfg, out); }; });
  auto* inv = dl->add_subcommand("inverse", "Tame inertial type to its packet of presentations");
  add_group_options(inv, cfg.group);
  inv->add_option("--class", cfg.cls, "Class representative as comma-separated fractions")->required();
  inv->callback([&] { action = [&] { return cmd_dl_inverse(cfg, out); }; });

  auto* serre = app.add_subcommand("serre", "Serre weights of the reductive quotient");
  serre->require_subcommand(1);
  auto* box = serre->add_subcommand("box", "Restricted weights modulo (p^r - pi) X^0");
  add_group_options(box, cfg.group);
  box->add_option("--r", cfg.r, "Restriction exponent (default: log_p q)");
  box->callback([&] { action = [&] { return cmd_serre_box(cfg, out, false); }; });
  auto* reg = serre->add_subcommand("regular", "Regular restricted weights");
  add_group_options(reg, cfg.group);
  reg->callback([&] { action = [&] { return cmd_serre_box(cfg, out, true); }; });
  auto* refl = serre->add_subcommand("reflect", "Apply the reflection operator R");
  add_group_options(refl, cfg.group);
  refl->add_option("--lambda", cfg.lambda, "Weight as comma-separated integers")->required();
  refl->callback([&] { action = [&] { return cmd_serre_reflect(cfg, out); }; });
  auto* rec = serre->add_subcommand("recipe", "Symbolic weight recipe of a tame inertial type");
  add_group_options(rec, cfg.group);
  rec->add_option("--class", cfg.cls, "Class representative as comma-separated fractions")->required();
  rec->callback([&] { action = [&] { return cmd_serre_recipe(cfg, out); }; });

  auto* verify = app.add_subcommand("verify", "Compare parametrizations against brute-force oracles");
  verify->require_subcommand(1);
  for (const char* name : {"all", "twisted", "tori", "metacyclic"}) {
    auto* sub = verify->add_subcommand(name, std::string("Run the ") + name + " suite");
    sub->add_option("--qfield", cfg.q_fields, "Field sizes (repeatable)");
    sub->add_option("--kmax", cfg.k_max, "Largest extension degree for the torus search");
    sub->add_option("--seed", cfg.seed, "Seed for sampled pairs");
    sub->add_option("--pairs", cfg.pairs, "Sampled pairs per field");
    const std::string which = name;
    sub->callback([&, which] { action = [&, which] { return cmd_verify(cfg, out, which); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }
  cfg.format = format == "json" ? Format::Json : Format::Table;
  try {
    code = action ? action() : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}

}  // namespace tame::cli
