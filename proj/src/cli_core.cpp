#include "valfield/cli_core.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "valfield/cli_core.hpp"
#include "valfield/decomp.hpp"
#include "valfield/parse.hpp"
#include "valfield/ultra.hpp"

namespace valfield {

using Json = nlohmann::ordered_json;

namespace {

int code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::UndecidableValue:
    case ErrorCode::PrecisionCollapse:
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::DepthInsufficient:
      return 3;
    default:
      return 2;
  }
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Split on sep outside bracket pairs; Hahn headers carry a ';' of their own.
std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

Rational parse_rational(const std::string& text) {
  std::string t = trim(text);
  size_t slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(t));
    return Rational(std::stoll(t.substr(0, slash)),
                    std::stoll(t.substr(slash + 1)));
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad rational: " + text);
  }
}

std::string elem_str(const LaurentSeries& x) { return print_series(x); }
std::string elem_str(const HahnSeries& x) { return print_hahn(x); }

struct Ctx {
  std::int64_t prime = 2;
  std::int64_t prec = 32;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string manifest_path;

  Json result = Json::object();
  Json witnesses = Json::array();
  Json inputs = Json::object();
  std::string command;
  std::vector<std::string> text_lines;
  int exit_code = 0;

  void line(const std::string& s) { text_lines.push_back(s); }

  std::string render() const {
    if (format == "json") {
      Json j;
      j["schema"] = 1;
      j["command"] = command;
      j["inputs"] = inputs;
      j["result"] = result;
      j["witnesses"] = witnesses;
      j["provenance"] = {{"seed", seed}, {"prec", prec}};
      return j.dump(2) + "\n";
    }
    std::string out;
    for (const auto& l : text_lines) out += l + "\n";
    return out;
  }
};

ConstructionParams params_for(const Ctx& ctx) {
  if (ctx.manifest_path.empty())
    fail(ErrorCode::BadArgument, "this subcommand needs --manifest <path>");
  return load_manifest(ctx.manifest_path);
}

void cmd_decompose(Ctx& ctx, const std::string& expr, const std::string& mode,
                   int level) {
  LaurentSeries x = parse_series(expr);
  ctx.inputs["expr"] = print_series(x);
  ctx.inputs["mode"] = mode;
  ctx.inputs["level"] = level;
  if (mode == "frobenius") {
    auto parts = frobenius_parts(x);
    LaurentSeries re = LaurentSeries::zero(x.prime());
    for (size_t i = 0; i < parts.size(); ++i)
      re = re + LaurentSeries::monomial(x.prime(), 1,
                                        static_cast<std::int64_t>(i)) *
                    parts[i].frobenius(1);
    Json arr = Json::array();
    for (size_t i = 0; i < parts.size(); ++i) {
      arr.push_back(print_series(parts[i]));
      ctx.line("x_" + std::to_string(i) + " = " + print_series(parts[i]));
    }
    ctx.result["parts"] = arr;
    ctx.result["reexpansion"] = print_series(re);
    return;
  }
  ASDecomposition d = mode == "henselian"
                          ? as_decompose_henselian(x, level, ctx.prec)
                          : as_decompose(x, level);
  ctx.result["y"] = print_series(d.y);
  ctx.line("y = " + print_series(d.y));
  if (d.henselian) {
    ctx.result["j"] = d.j;
    ctx.line("j = " + std::to_string(d.j));
  }
  Json arr = Json::array();
  for (size_t i = 0; i < d.parts.size(); ++i) {
    arr.push_back(print_series(d.parts[i]));
    ctx.line("x_" + std::to_string(i) + " = " + print_series(d.parts[i]));
  }
  ctx.result["parts"] = arr;
  ctx.result["iterations"] = d.iterations;
  ctx.result["reexpansion"] = print_series(d.reexpand());
  ctx.line("iterations = " + std::to_string(d.iterations));
}

void cmd_wp_solve(Ctx& ctx, const std::string& expr, int level) {
  LaurentSeries m = parse_series(expr);
  ctx.inputs["expr"] = print_series(m);
  ctx.inputs["level"] = level;
  LaurentSeries u = wp_solve(m, level, ctx.prec);
  ctx.result["u"] = print_series(u);
  ctx.line("u = " + print_series(u));
}

void cmd_pd(Ctx& ctx, const std::string& spec_text, bool wp_twist, int level,
            int samples, bool both_readings) {
  if (both_readings) {
    PdBothReadings both =
        pd_both_readings(ctx.prime, level, samples, ctx.seed, ctx.prec);
    auto name = [](const PdSumVerdict& v) {
      return v.kind == PdSumVerdict::Kind::HoldsOnSamples ? "HoldsOnSamples"
                                                          : "FailureWitness";
    };
    ctx.result["as_written"] = name(both.as_written);
    ctx.result["level_n"] = name(both.level_n);
    ctx.result["note"] = both.note;
    ctx.line(std::string("as written (level 1): ") + name(both.as_written));
    ctx.line(std::string("level-n analogue:     ") + name(both.level_n));
    ctx.line(both.note);
    if (both.as_written.kind != PdSumVerdict::Kind::HoldsOnSamples ||
        both.level_n.kind != PdSumVerdict::Kind::HoldsOnSamples)
      ctx.exit_code = 1;
    return;
  }
  PolygroupSpec spec =
      wp_twist ? PolygroupSpec::wp_twist(ctx.prime, level)
               : parse_polygroup(spec_text, ctx.prime, level);
  ctx.inputs["spec"] = wp_twist ? "wp-twist" : spec_text;
  ctx.inputs["samples"] = samples;
  PdSumVerdict v = pd_sum_check(spec, samples, ctx.seed, ctx.prec);
  bool holds = v.kind == PdSumVerdict::Kind::HoldsOnSamples;
  ctx.result["verdict"] = holds ? "HoldsOnSamples" : "FailureWitness";
  ctx.result["samples_run"] = v.samples_run;
  ctx.result["degenerate"] = v.degenerate;
  if (!v.note.empty()) ctx.result["note"] = v.note;
  ctx.line(std::string("verdict = ") +
           (holds ? "HoldsOnSamples" : "FailureWitness"));
  if (!holds) {
    for (const auto& x : v.failure_x) {
      ctx.witnesses.push_back(print_series(x));
      ctx.line("witness x: " + print_series(x));
    }
    ctx.exit_code = 1;
  }
}

void cmd_independent(Ctx& ctx, const std::string& coeffs_text,
                     const std::string& mode, int level, int samples) {
  std::vector<LaurentSeries> c;
  for (const auto& piece : split(coeffs_text, ';'))
    if (!trim(piece).empty())
      c.push_back(parse_series("GF(" + std::to_string(ctx.prime) +
                               ")[[t]]: " + trim(piece)));
  ctx.inputs["coeffs"] = coeffs_text;
  ctx.inputs["mode"] = mode;
  IndependenceVerdict v = valuation_independent(
      c,
      mode == "sampled" ? IndependenceMode::Sampled
                        : IndependenceMode::ExactCosets,
      level, samples, ctx.seed);
  switch (v.kind) {
    case IndependenceVerdict::Kind::IndependentProven:
      ctx.result["verdict"] = "Independent";
      ctx.result["proof"] = "coset-criterion";
      break;
    case IndependenceVerdict::Kind::IndependentSampled:
      ctx.result["verdict"] = "Independent";
      ctx.result["proof"] = "sampled-evidence-only";
      break;
    case IndependenceVerdict::Kind::Dependent:
      ctx.result["verdict"] = "DependentWitness";
      ctx.exit_code = 1;
      break;
  }
  ctx.result["note"] = v.note;
  ctx.line("verdict = " + ctx.result["verdict"].get<std::string>() + " (" +
           v.note + ")");
  for (const auto& d : v.witness) {
    ctx.witnesses.push_back(print_series(d));
    ctx.line("witness d: " + print_series(d));
  }
}

void cmd_approx(Ctx& ctx, const std::string& spec_text, bool wp_twist,
                const std::string& expr, std::int64_t budget) {
  PolygroupSpec spec = wp_twist ? PolygroupSpec::wp_twist(ctx.prime, 1)
                                : parse_polygroup(spec_text, ctx.prime, 1);
  LaurentSeries z = parse_series(expr);
  ctx.inputs["spec"] = wp_twist ? "wp-twist" : spec_text;
  ctx.inputs["expr"] = print_series(z);
  ApproxResult r = optimal_approx(z, spec, budget);
  ctx.result["y"] = print_series(r.y);
  ctx.result["distance"] = r.distance.str();
  ctx.result["certificate"] = r.certificate;
  Json parts = Json::array();
  for (const auto& x : r.parts) parts.push_back(print_series(x));
  ctx.result["parts"] = parts;
  ctx.line("y = " + print_series(r.y));
  ctx.line("distance = " + r.distance.str());
  ctx.line(r.certificate);
  if (r.distance.is_unknown()) ctx.exit_code = 3;
}

void cmd_preimage(Ctx& ctx, const std::string& poly_text,
                  const std::string& center_text,
                  const std::string& radius_text) {
  GeneralPoly<LaurentSeries> f = parse_poly(poly_text, ctx.prime);
  LaurentSeries center = parse_series(center_text);
  Value radius = radius_text == "inf"
                     ? Value::infinity()
                     : Value::finite(parse_rational(radius_text));
  ctx.inputs["poly"] = print_poly(f);
  ctx.inputs["center"] = print_series(center);
  ctx.inputs["radius"] = radius.str();
  PreimageResult r =
      poly_preimage_ball(f, Ball<LaurentSeries>{center, radius}, ctx.prec);
  Json balls = Json::array();
  for (const auto& gb : r.balls) {
    Json b;
    b["center"] = print_series(gb.outer().center);
    b["radius"] = gb.outer().radius.str();
    balls.push_back(b);
    ctx.line("ball: center " + print_series(gb.outer().center) + ", radius " +
             gb.outer().radius.str());
  }
  ctx.result["balls"] = balls;
  ctx.result["count"] = r.balls.size();
  for (const auto& root : r.roots) ctx.witnesses.push_back(print_series(root));
  if (r.balls.empty()) ctx.line("empty preimage");
}

void cmd_pcseq(Ctx& ctx, const std::string& terms_text,
               const std::string& limit_text, const std::string& poly_text) {
  std::vector<std::string> pieces;
  for (const auto& piece : split(terms_text, ';'))
    if (!trim(piece).empty()) pieces.push_back(trim(piece));
  if (pieces.empty()) fail(ErrorCode::BadArgument, "no terms given");
  bool hahn = pieces.front().find("[[s^Q") != std::string::npos;
  ctx.inputs["terms"] = terms_text;

  auto run = [&](auto parse_one, auto print_one, auto poly_parse) {
    using F = decltype(parse_one(pieces.front()));
    std::vector<F> prefix;
    for (const auto& s : pieces) prefix.push_back(parse_one(s));
    std::vector<Value> g = pcseq_gammas(prefix);
    Json arr = Json::array();
    std::string gl = "gamma:";
    for (const auto& v : g) {
      arr.push_back(v.str());
      gl += " " + v.str();
    }
    ctx.result["gamma"] = arr;
    ctx.line(gl);
    if (!limit_text.empty()) {
      F b = parse_one(limit_text);
      ctx.inputs["limit_candidate"] = print_one(b);
      bool isl = pcseq_is_limit(b, prefix);
      ctx.result["is_limit"] = isl;
      ctx.line(std::string("is_limit = ") + (isl ? "true" : "false"));
      NonLimitWitness w = pcseq_non_limit_witness(b, prefix);
      if (w.is_limit_so_far) {
        ctx.result["witness"] = "IsLimitSoFar";
        ctx.line("witness: is a limit of the whole prefix");
      } else {
        ctx.result["witness"] =
            Json{{"nu0", w.nu0},
                 {"gamma_ref", w.gamma_ref},
                 {"inequality_holds", w.inequality_holds}};
        ctx.line("witness: nu0 = " + std::to_string(w.nu0) +
                 ", bound inequality " +
                 (w.inequality_holds ? "holds" : "fails"));
      }
    }
    if (!poly_text.empty()) {
      auto f = poly_parse(poly_text);
      auto rep = value_fixing_report(f, prefix);
      ctx.result["value_fixing"] =
          Json{{"fixed", rep.fixed},
               {"value", rep.fixed ? rep.value.str() : ""},
               {"from_index", rep.from_index},
               {"prefix_len", rep.prefix_len}};
      Json obs = Json::array();
      std::string ol = "values:";
      for (const auto& v : rep.observed) {
        obs.push_back(v.str());
        ol += " " + v.str();
      }
      ctx.result["value_fixing"]["observed"] = obs;
      ctx.line(ol);
      ctx.line(rep.fixed ? "value fixing: Fixed(" + rep.value.str() +
                               ", from " + std::to_string(rep.from_index) + ")"
                         : "value fixing: NotFixed (observational, prefix " +
                               std::to_string(rep.prefix_len) + ")");
    }
  };

  if (hahn) {
    run([](const std::string& s) { return parse_hahn(s); },
        [](const HahnSeries& x) { return print_hahn(x); },
        [&](const std::string&) -> GeneralPoly<HahnSeries> {
          fail(ErrorCode::BadArgument,
               "value-fixing polynomials over Hahn input are built from the "
               "construct subcommand");
        });
  } else {
    run([](const std::string& s) { return parse_series(s); },
        [](const LaurentSeries& x) { return print_series(x); },
        [&](const std::string& s) { return parse_poly(s, ctx.prime); });
  }
}

void cmd_telescope(Ctx& ctx, int k, int depth) {
  ConstructionParams params = params_for(ctx);
  XiTower tower = build_xi_tower(params);
  ctx.inputs["k"] = k;
  Value v = telescope_check(tower, k,
                            depth > 0 ? std::optional<int>(depth) : std::nullopt);
  Rational expect(-1);
  for (int e = 0; e < k; ++e) expect = expect / Rational(params.p);
  bool holds = v == Value::finite(expect);
  ctx.result["value"] = v.str();
  ctx.result["expected"] = expect.str();
  ctx.result["holds"] = holds;
  ctx.line("w(a_k^p - a_k - (x - t x1^p)) = " + v.str());
  ctx.line("expected -1/p^k = " + expect.str() +
           (holds ? " (holds)" : " (MISMATCH)"));
  if (!holds) ctx.exit_code = 1;
}

void cmd_construct(Ctx& ctx, const std::string& candidate_text, int k_lo,
                   int k_hi) {
  ConstructionParams params = params_for(ctx);
  Construction c = build_construction(params);
  Json towers = Json::array();
  for (size_t g = 0; g < c.towers.size(); ++g) {
    const XiTower& tower = c.towers[g];
    Json tj;
    Json xi = Json::array();
    for (int j = 1; j <= tower.params.J; ++j) {
      xi.push_back(print_hahn(tower.xi_at(j)));
      if (c.towers.size() == 1)
        ctx.line("xi_" + std::to_string(j) + " = " +
                 print_hahn(tower.xi_at(j)));
    }
    tj["xi"] = xi;
    Json sup = Json::array();
    for (auto s : tower.support_sizes()) sup.push_back(s);
    tj["support_sizes"] = sup;
    bool rec = true;
    for (int j = 1; j < tower.params.J; ++j)
      rec = rec && tower_recursion_holds(tower, j);
    tj["recursion_exact"] = rec;
    Json flags = Json::array();
    for (const auto& fl : tower.params.growth_flags()) flags.push_back(fl);
    // observed closed form |support(xi_j)| = 1 + (j-1) m; deviations flagged
    auto sizes = tower.support_sizes();
    for (size_t j = 0; j < sizes.size(); ++j)
      if (sizes[j] != 1 + static_cast<std::int64_t>(j) * tower.params.m)
        flags.push_back("support of xi_" + std::to_string(j + 1) + " has " +
                        std::to_string(sizes[j]) +
                        " terms, off the 1 + (j-1)m closed form");
    tj["growth_flags"] = flags;
    towers.push_back(tj);
    if (c.towers.size() > 1)
      ctx.line("generator " + std::to_string(g) + ": tower depth " +
               std::to_string(tower.params.J) + ", recursion " +
               (rec ? "exact" : "BROKEN"));
    else
      ctx.line(std::string("recursion: ") + (rec ? "exact" : "BROKEN"));
  }
  ctx.result["towers"] = towers;

  if (!candidate_text.empty()) {
    if (c.towers.size() != 1)
      fail(ErrorCode::BadArgument, "candidate checks run on a single tower");
    // candidate syntax: y=<hahn>; x0=<hahn>; x1=<hahn>; ...
    TwistCandidate cand{
        HahnSeries::zero(params.p, params.M, params.denom_cap()),
        std::vector<HahnSeries>(
            static_cast<size_t>(params.m) + 1,
            HahnSeries::zero(params.p, params.M, params.denom_cap()))};
    for (const auto& piece : split(candidate_text, ';')) {
      std::string t = trim(piece);
      if (t.empty()) continue;
      size_t eq = t.find('=');
      if (eq == std::string::npos)
        fail(ErrorCode::ParseError, "candidate parts look like y=<literal>");
      std::string key = trim(t.substr(0, eq));
      HahnSeries val = parse_hahn(trim(t.substr(eq + 1)), params.denom_cap());
      if (key == "y")
        cand.y = val;
      else if (key.size() >= 2 && key[0] == 'x')
        cand.xs.at(std::stoul(key.substr(1))) = val;
      else
        fail(ErrorCode::ParseError, "unknown candidate key: " + key);
    }
    TwistReport rep = twist_obstruction_check(c.towers[0], cand, k_lo, k_hi);
    Json steps = Json::array();
    for (const auto& s : rep.steps) {
      steps.push_back(Json{{"name", s.name},
                           {"detail", s.detail},
                           {"fired", s.fired}});
      ctx.line((s.fired ? "[x] " : "[ ] ") + s.name + ": " + s.detail);
    }
    ctx.result["candidate_steps"] = steps;
    ctx.result["candidate_verdict"] = rep.verdict_name();
    ctx.line("verdict: " + rep.verdict_name());
    if (rep.verdict != TwistReport::Verdict::UnrefutedAtDepth)
      ctx.exit_code = 1;
  }
}

void cmd_report(Ctx& ctx, const std::string& identity_model, int residue_pdeg,
                const std::string& stage_text, int level_j, int progression,
                const std::vector<std::string>& queries) {
  if (!identity_model.empty()) {
    FieldModelDesc desc;
    desc.p = ctx.prime;
    if (identity_model == "laurent") {
      desc.kind = FieldModelDesc::Kind::Laurent;
    } else if (identity_model == "hahn") {
      desc.kind = FieldModelDesc::Kind::Hahn;
      desc.residue_pdeg = residue_pdeg;
    } else {
      fail(ErrorCode::BadArgument, "identity model is laurent or hahn");
    }
    FundamentalIdentityReport r = fundamental_identity_report(desc);
    ctx.result["p_degree"] = r.p_degree;
    ctx.result["ramification_count"] = r.ramification_count;
    ctx.result["residue_p_degree"] = r.residue_p_degree;
    ctx.result["holds"] = r.holds;
    ctx.line("[K : K^p] = " + std::to_string(r.p_degree) +
             ", (vK : pvK) = " + std::to_string(r.ramification_count) +
             ", [Kv : (Kv)^p] = " + std::to_string(r.residue_p_degree) +
             (r.holds ? "  (identity holds)" : "  (identity FAILS)"));
    return;
  }
  if (stage_text.empty())
    fail(ErrorCode::BadArgument, "report needs --identity or --stage");
  ConstructionParams params = params_for(ctx);
  ValueGroup::Stage stage;
  if (stage_text == "L1")
    stage = ValueGroup::Stage::L1;
  else if (stage_text == "tower")
    stage = ValueGroup::Stage::TowerLevel;
  else if (stage_text == "L2")
    stage = ValueGroup::Stage::L2Limit;
  else if (stage_text == "roots")
    stage = ValueGroup::Stage::AdjoinedRoots;
  else
    fail(ErrorCode::BadArgument, "stage is L1, tower, L2 or roots");
  ValueGroup g = value_group_report(params, stage, level_j, progression);
  ctx.result["stage"] = stage_text;
  ctx.result["description"] = g.description();
  ctx.line(g.description());
  Json mem = Json::array();
  for (const auto& qtext : queries) {
    Rational r = parse_rational(qtext);
    bool in = g.contains(r);
    mem.push_back(Json{{"query", r.str()}, {"member", in}});
    ctx.line(r.str() + (in ? " is a member" : " is not a member"));
  }
  ctx.result["membership"] = mem;
}

}  // namespace

ConstructionParams manifest_from_string(const std::string& text) {
  ConstructionParams params;
  params.q.clear();
  std::string qspec = "auto";
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string lined = raw;
    size_t hash = lined.find('#');
    if (hash != std::string::npos) lined = lined.substr(0, hash);
    lined = trim(lined);
    if (lined.empty()) continue;
    size_t eq = lined.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ParseError, "manifest lines look like key = value");
    std::string key = trim(lined.substr(0, eq));
    std::string val = trim(lined.substr(eq + 1));
    try {
      if (key == "p")
        params.p = std::stoll(val);
      else if (key == "n")
        params.n = std::stoi(val);
      else if (key == "m")
        params.m = std::stoi(val);
      else if (key == "J")
        params.J = std::stoi(val);
      else if (key == "M")
        params.M = std::stoi(val);
      else if (key == "generators")
        params.generators = std::stoi(val);
      else if (key == "q")
        qspec = val;
      else if (key == "sprec")
        params.sprec = val == "exact" ? std::optional<Rational>()
                                      : std::optional<Rational>(
                                            parse_rational(val));
      else if (key == "modification") {
        if (val == "base")
          params.modification = ConstructionParams::Modification::Base;
        else if (val == "mod1")
          params.modification = ConstructionParams::Modification::Mod1;
        else if (val == "mod2")
          params.modification = ConstructionParams::Modification::Mod2;
        else if (val == "mod3")
          params.modification = ConstructionParams::Modification::Mod3;
        else
          fail(ErrorCode::ParseError, "unknown modification: " + val);
      } else {
        fail(ErrorCode::ParseError, "unknown manifest key: " + key);
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad value for " + key + ": " + val);
    }
  }
  int rows = params.m *
             (params.modification == ConstructionParams::Modification::Mod3
                  ? params.generators
                  : 1);
  if (qspec == "auto") {
    params.q = prime_sequence(params.p, params.n, rows, params.J);
  } else {
    for (const auto& row : split(qspec, '|')) {
      std::vector<std::int64_t> primes;
      for (const auto& v : split(row, ','))
        if (!trim(v).empty()) primes.push_back(std::stoll(trim(v)));
      params.q.push_back(primes);
    }
  }
  params.validate();
  return params;
}

ConstructionParams load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadArgument, "cannot open manifest: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return manifest_from_string(buf.str());
}

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact kernel for valued fields of characteristic p"};
  app.require_subcommand(1);
  // global flags may follow the subcommand name
  app.fallthrough();

  Ctx ctx;
  app.add_option("--prime", ctx.prime, "field characteristic");
  app.add_option("--prec", ctx.prec, "working precision")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", ctx.seed, "sampling seed");
  app.add_option("--format", ctx.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--manifest", ctx.manifest_path, "construction manifest");

  std::string expr, mode = "as", spec_text, coeffs_text, poly_text;
  std::string center_text, radius_text = "1", terms_text, limit_text;
  std::string vf_poly_text, candidate_text, identity_model, stage_text;
  std::vector<std::string> queries;
  int level = 1, samples = 100, k = 1, depth = 0, k_lo = 1, k_hi = 1;
  int residue_pdeg = 2, level_j = 1, progression = 0;
  std::int64_t budget = 32;
  bool wp_twist = false, both_readings = false;

  auto* dec = app.add_subcommand("decompose", "Frobenius / corrective-summand "
                                              "decompositions");
  dec->add_option("expr", expr, "series literal")->required();
  dec->add_option("--mode", mode, "frobenius, as or henselian")
      ->check(CLI::IsMember({"frobenius", "as", "henselian"}));
  dec->add_option("--level", level, "Frobenius level n");

  auto* wps = app.add_subcommand("wp-solve", "solve u^P - u = m for v(m) > 0");
  wps->add_option("expr", expr, "series literal")->required();
  wps->add_option("--level", level, "Frobenius level n");

  auto* pd = app.add_subcommand("pd", "pseudo-directness sampling verdict");
  pd->add_option("--spec", spec_text, "semicolon-separated additive polys");
  pd->add_flag("--wp-twist", wp_twist, "use (wp(X), t X^P, ...)");
  pd->add_option("--level", level, "Frobenius level n");
  pd->add_option("--samples", samples, "sample count");
  pd->add_flag("--both-readings", both_readings,
               "report the level-1 and level-n verdicts side by side");

  auto* ind = app.add_subcommand("independent", "valuation independence");
  ind->add_option("--coeffs", coeffs_text, "semicolon-separated series bodies")
      ->required();
  ind->add_option("--mode", mode, "exact or sampled");
  ind->add_option("--level", level, "power P = p^level");
  ind->add_option("--samples", samples, "sample count");

  auto* ap = app.add_subcommand("approx", "optimal approximation in a "
                                          "polygroup");
  ap->add_option("expr", expr, "series literal")->required();
  ap->add_option("--spec", spec_text, "semicolon-separated additive polys");
  ap->add_flag("--wp-twist", wp_twist, "use (wp(X), t X^p, ...)");
  ap->add_option("--budget", budget, "depth budget");

  auto* pre = app.add_subcommand("preimage", "polynomial preimage of a ball");
  pre->add_option("--poly", poly_text, "polynomial literal")->required();
  pre->add_option("--center", center_text, "ball center literal")->required();
  pre->add_option("--radius", radius_text, "rational radius or inf");

  auto* pc = app.add_subcommand("pcseq", "pseudo-convergent prefix tools");
  pc->add_option("--terms", terms_text, "semicolon-separated literals")
      ->required();
  pc->add_option("--limit", limit_text, "limit candidate literal");
  pc->add_option("--value-poly", vf_poly_text, "value-fixing polynomial");

  auto* tel = app.add_subcommand("telescope", "the -1/p^k valuation identity");
  tel->add_option("--k", k, "tower index")->required();
  tel->add_option("--depth", depth, "partial-sum depth K (default J)");

  auto* con = app.add_subcommand("construct", "build the tower and report");
  con->add_option("--candidate", candidate_text,
                  "y=<lit>; x0=<lit>; x1=<lit>; ... to refute");
  con->add_option("--k-lo", k_lo, "deviation scan start");
  con->add_option("--k-hi", k_hi, "deviation scan end");

  auto* rep = app.add_subcommand("report", "p-degree identity / value groups");
  rep->add_option("--identity", identity_model, "laurent or hahn");
  rep->add_option("--residue-pdeg", residue_pdeg, "Hahn residue p-degree");
  rep->add_option("--stage", stage_text, "L1, tower, L2 or roots");
  rep->add_option("--level-j", level_j, "tower level j");
  rep->add_option("--progression", progression, "prime progression index");
  rep->add_option("--query", queries, "rational membership queries");

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> cargs;
    cargs.push_back("valfield");
    for (const auto& a : argv) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    if (e.get_exit_code() == 0) {
      // --help and friends
      os << app.help();
      return {0, os.str()};
    }
    os << "usage error: " << e.what() << "\n";
    return {2, os.str()};
  }

  try {
    if (dec->parsed()) {
      ctx.command = "decompose";
      cmd_decompose(ctx, expr, mode, level);
    } else if (wps->parsed()) {
      ctx.command = "wp-solve";
      cmd_wp_solve(ctx, expr, level);
    } else if (pd->parsed()) {
      ctx.command = "pd";
      if (spec_text.empty()) wp_twist = true;
      cmd_pd(ctx, spec_text, wp_twist, level, samples, both_readings);
    } else if (ind->parsed()) {
      ctx.command = "independent";
      cmd_independent(ctx, coeffs_text, mode == "as" ? "exact" : mode, level,
                      samples);
    } else if (ap->parsed()) {
      ctx.command = "approx";
      if (spec_text.empty()) wp_twist = true;
      cmd_approx(ctx, spec_text, wp_twist, expr, budget);
    } else if (pre->parsed()) {
      ctx.command = "preimage";
      cmd_preimage(ctx, poly_text, center_text, radius_text);
    } else if (pc->parsed()) {
      ctx.command = "pcseq";
      cmd_pcseq(ctx, terms_text, limit_text, vf_poly_text);
    } else if (tel->parsed()) {
      ctx.command = "telescope";
      cmd_telescope(ctx, k, depth);
    } else if (con->parsed()) {
      ctx.command = "construct";
      cmd_construct(ctx, candidate_text, k_lo, k_hi);
    } else if (rep->parsed()) {
      ctx.command = "report";
      cmd_report(ctx, identity_model, residue_pdeg, stage_text, level_j,
                 progression, queries);
    }
  } catch (const Error& e) {
    Json j;
    j["schema"] = 1;
    j["command"] = ctx.command;
    j["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    std::string out =
        ctx.format == "json"
            ? j.dump(2) + "\n"
            : std::string("error [") + error_code_name(e.code()) + "]: " +
                  e.what() + "\n";
    return {code_for(e.code()), out};
  }

  return {ctx.exit_code, ctx.render()};
}

}  // namespace valfield
