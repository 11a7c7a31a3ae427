#include "eisenprod/eliminate.hpp"

#include <algorithm>
#include <cstdio>

#include "eisenprod/cache.hpp"

#include "eisenprod/errors.hpp"
#include "eisenprod/resultant.hpp"

namespace eisenprod {

// ---- trace -----------------------------------------------------------

void EliminationTrace::add(TraceStep step) {
  std::function<void(const TraceStep&)> fn;
  {
    std::lock_guard lock(mu_);
    steps_.push_back(step);
    fn = listener_;
  }
  if (fn) fn(step);
}

std::vector<TraceStep> EliminationTrace::steps() const {
  std::lock_guard lock(mu_);
  return steps_;
}

void EliminationTrace::set_listener(std::function<void(const TraceStep&)> fn) {
  std::lock_guard lock(mu_);
  listener_ = std::move(fn);
}

EliminationTrace::EliminationTrace(const EliminationTrace& o) {
  std::lock_guard lock(o.mu_);
  steps_ = o.steps_;
  listener_ = o.listener_;
}

EliminationTrace::EliminationTrace(EliminationTrace&& o) noexcept {
  std::lock_guard lock(o.mu_);
  steps_ = std::move(o.steps_);
  listener_ = std::move(o.listener_);
}

EliminationTrace& EliminationTrace::operator=(const EliminationTrace& o) {
  if (this == &o) return *this;
  std::scoped_lock lock(mu_, o.mu_);
  steps_ = o.steps_;
  listener_ = o.listener_;
  return *this;
}

EliminationTrace& EliminationTrace::operator=(EliminationTrace&& o) noexcept {
  if (this == &o) return *this;
  std::scoped_lock lock(mu_, o.mu_);
  steps_ = std::move(o.steps_);
  listener_ = std::move(o.listener_);
  return *this;
}

nlohmann::json to_json(const TraceStep& s) {
  nlohmann::json j{{"kind", s.kind}, {"label", s.label}, {"inputs", s.inputs}, {"output", s.output}};
  if (!s.variable.empty()) j["variable"] = s.variable;
  if (s.degree_before != kDegreeNegInf) j["degree_before"] = s.degree_before;
  if (s.degree_after != kDegreeNegInf) j["degree_after"] = s.degree_after;
  j["terms"] = s.terms;
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

TraceStep trace_step_from_json(const nlohmann::json& j) {
  TraceStep s;
  s.kind = j.at("kind").get<std::string>();
  s.label = j.at("label").get<std::string>();
  s.inputs = j.at("inputs").get<std::vector<std::string>>();
  s.output = j.at("output").get<std::string>();
  s.variable = j.value("variable", std::string());
  s.degree_before = j.value("degree_before", kDegreeNegInf);
  s.degree_after = j.value("degree_after", kDegreeNegInf);
  s.terms = j.at("terms").get<std::size_t>();
  s.note = j.value("note", std::string());
  return s;
}

nlohmann::json EliminationTrace::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : steps()) arr.push_back(eisenprod::to_json(s));
  return arr;
}

std::string EliminationTrace::digest() const {
  // FNV-1a over the JSON text.
  const std::string text = to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void record(EliminationTrace* trace, TraceStep step) {
  if (trace) trace->add(std::move(step));
}

// ---- numerator clearing -------------------------------------------------

Poly strip_content(const Poly& p) {
  if (p.is_zero()) return p;
  const Rational c = content(p);
  if (c == 1) return p;
  return p * Rational(1 / c);
}

Poly strip_factors(Poly p, const std::vector<Poly>& factors) {
  for (const auto& f : factors) {
    while (!p.is_zero()) {
      auto q = try_exact_div(p, f);
      if (!q) break;
      p = std::move(*q);
    }
  }
  return strip_content(p);
}

// Splits a nonzero pivot into the known factor list, appending whatever
// is left over as a new factor.
void learn_factors(const Poly& pivot, std::vector<Poly>& factors) {
  Poly rest = strip_factors(pivot, factors);
  if (!rest.is_constant()) factors.push_back(rest);
}

// sum_i c_i (-rest)^i pivot^(d-i) for e = sum_i c_i v^i.
Poly substitute_fraction(const Poly& e, VarId v, const Poly& pivot, const Poly& rest) {
  auto coeffs = coefficients_in(e, v);
  const std::size_t d = coeffs.size() - 1;
  if (d == 0) return e;
  const RegistryPtr& reg = e.registry();
  std::vector<Poly> piv_pow(d + 1);
  piv_pow[0] = Poly::constant(reg, 1);
  for (std::size_t i = 1; i <= d; ++i) piv_pow[i] = piv_pow[i - 1] * pivot;
  const Poly neg_rest = -rest;
  Poly acc(reg), rest_pow = Poly::constant(reg, 1);
  for (std::size_t i = 0; i <= d; ++i) {
    if (!coeffs[i].is_zero()) acc += coeffs[i] * rest_pow * piv_pow[d - i];
    if (i < d) rest_pow = rest_pow * neg_rest;
  }
  return acc;
}

bool mentions_b(const Poly& p, const std::vector<unsigned>& vars, const SystemInstance& sys) {
  for (unsigned n : vars) {
    if (p.depends_on(sys.b_var(n))) return true;
  }
  return false;
}

LinearStage linear_eliminate_uncached(SystemInstance& sys, EliminationTrace* trace) {
  LinearStage st;
  st.mode = sys.mode();
  st.k = sys.k();
  st.registry = sys.registry();
  std::map<unsigned, Poly> eqs;
  for (const auto& [n, e] : sys.equations()) {
    Poly cleared = strip_content(e);
    if (cleared != e) {
      record(trace, {"clear", "E" + std::to_string(n), {digest(e)}, digest(cleared), "", kDegreeNegInf, kDegreeNegInf,
                     cleared.size(), "content " + to_string(content(e))});
    }
    eqs.emplace(n, std::move(cleared));
  }
  for (const auto& [p, n] : kLinearPairs) {
    if (n > sys.max_index()) continue;
    const VarId v = sys.b_var(p);
    auto it = eqs.find(n);
    const Poly e = it->second;
    eqs.erase(it);
    const int deg = degree_in(e, v);
    const std::string pair = "(" + b_name(p) + ", E" + std::to_string(n) + ")";
    if (deg != 1) {
      throw PivotVanishes("equation E" + std::to_string(n) + " has degree " +
                          (deg == kDegreeNegInf ? std::string("-inf") : std::to_string(deg)) + " in " + b_name(p) +
                          " at pair " + pair);
    }
    LinearSolve s{p, n, coeff_of(e, v, 1), coeff_of(e, v, 0)};
    if (s.pivot.is_zero() || mentions_b(s.pivot, sys.variables(), sys)) {
      throw PivotVanishes("pivot of " + pair + " is " + (s.pivot.is_zero() ? "zero" : "not free of b-variables"));
    }
    if (sys.mode() == Mode::kNumeric) {
      // Normalize to b_p = -rest with an integral right side when possible.
      const Rational c = s.pivot.constant_value();
      s.rest *= Rational(1 / c);
      s.pivot = Poly::constant(sys.registry(), 1);
    } else {
      learn_factors(s.pivot, st.factors);
    }
    record(trace, {"linear-solve", pair, {digest(e)}, digest(s.rest), b_name(p), 1, 0, s.rest.size(),
                   "pivot " + to_string(s.pivot)});
    for (auto& [m, other] : eqs) {
      const int d = degree_in(other, v);
      if (d <= 0) continue;
      Poly sub = substitute_fraction(other, v, s.pivot, s.rest);
      sub = sys.mode() == Mode::kNumeric ? strip_content(sub) : strip_factors(sub, st.factors);
      if (sub.is_zero()) throw VanishingTower("E" + std::to_string(m) + " vanished after eliminating " + b_name(p));
      other = std::move(sub);
    }
    st.solves.push_back(std::move(s));
  }
  st.remaining = std::move(eqs);
  return st;
}

std::string fnv_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string mode_tag(const SystemInstance& sys) {
  std::string tag = sys.mode() == Mode::kNumeric ? "numeric-k" + std::to_string(sys.k()) : std::string("symbolic");
  return tag + "-max" + std::to_string(sys.max_index());
}

}  // namespace

nlohmann::json to_json(const LinearStage& st) {
  nlohmann::json solves = nlohmann::json::array();
  for (const auto& s : st.solves) {
    solves.push_back({{"variable", s.variable}, {"equation", s.equation}, {"pivot", to_string(s.pivot)},
                      {"rest", to_string(s.rest)}});
  }
  nlohmann::json remaining = nlohmann::json::object();
  for (const auto& [n, e] : st.remaining) remaining[std::to_string(n)] = to_string(e);
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : st.factors) factors.push_back(to_string(f));
  return {{"mode", st.mode == Mode::kNumeric ? "numeric" : "symbolic"},
          {"k", st.k},
          {"solves", std::move(solves)},
          {"remaining", std::move(remaining)},
          {"factors", std::move(factors)}};
}

LinearStage linear_stage_from_json(const nlohmann::json& j, const RegistryPtr& reg) {
  try {
    LinearStage st;
    st.mode = j.at("mode").get<std::string>() == "numeric" ? Mode::kNumeric : Mode::kSymbolic;
    st.k = j.at("k").get<unsigned>();
    st.registry = reg;
    for (const auto& s : j.at("solves")) {
      st.solves.push_back({s.at("variable").get<unsigned>(), s.at("equation").get<unsigned>(),
                           parse_poly(reg, s.at("pivot").get<std::string>()),
                           parse_poly(reg, s.at("rest").get<std::string>())});
    }
    for (const auto& [n, e] : j.at("remaining").items()) {
      st.remaining.emplace(static_cast<unsigned>(std::stoul(n)), parse_poly(reg, e.get<std::string>()));
    }
    for (const auto& f : j.at("factors")) st.factors.push_back(parse_poly(reg, f.get<std::string>()));
    return st;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("linear stage JSON: ") + e.what());
  }
}

LinearStage linear_eliminate(SystemInstance& sys, EliminationTrace* trace, Cache* cache) {
  if (!cache) return linear_eliminate_uncached(sys, trace);
  const std::string key = Cache::key(mode_tag(sys), "linear", fnv_hex(sys.to_json().dump()));
  if (auto text = cache->load_text(key)) {
    try {
      const auto j = nlohmann::json::parse(*text);
      LinearStage st = linear_stage_from_json(j.at("stage"), sys.registry());
      for (const auto& s : j.at("trace")) record(trace, trace_step_from_json(s));
      return st;
    } catch (const std::exception&) {
      // Unreadable entry: recompute and overwrite.
    }
  }
  EliminationTrace local;
  if (trace) local.set_listener([trace](const TraceStep& s) { trace->add(s); });
  LinearStage st = linear_eliminate_uncached(sys, &local);
  cache->store_text(key, nlohmann::json{{"stage", to_json(st)}, {"trace", local.to_json()}}.dump());
  return st;
}

std::optional<std::map<unsigned, Rational>> replay_linear(const LinearStage& stage,
                                                          std::map<unsigned, Rational> values) {
  const RegistryPtr& reg = stage.registry;
  for (auto it = stage.solves.rbegin(); it != stage.solves.rend(); ++it) {
    std::map<VarId, Rational> assign;
    for (const auto& [n, val] : values) assign[reg->id(b_name(n))] = val;
    const Poly piv = substitute(it->pivot, assign);
    const Poly rest = substitute(it->rest, assign);
    if (!piv.is_constant() || !rest.is_constant()) throw DomainError("replay_linear: free values are incomplete");
    if (piv.is_zero()) return std::nullopt;
    values[it->variable] = -rest.constant_value() / piv.constant_value();
  }
  return values;
}

// ---- resultant towers ------------------------------------------------

namespace {

Poly normalize(const Poly& p) { return p.is_zero() ? p : primitive_part(p); }

std::string degree_note(const Poly& p, const RegistryPtr& reg, std::initializer_list<const char*> vars) {
  std::string note;
  for (const char* v : vars) {
    if (!reg->find(v)) continue;
    if (!note.empty()) note += " ";
    const int d = degree_in(p, reg->id(v));
    note += std::string("deg_") + v + "=" + (d == kDegreeNegInf ? std::string("-inf") : std::to_string(d));
  }
  return note;
}

// Resultant with optional caching; the result is normalized to its
// primitive part and must be nonzero.
Poly tower_resultant(const std::string& label, const Poly& p, const Poly& q, const std::string& var,
                     EliminationTrace* trace, Cache* cache, const std::string& tag) {
  const RegistryPtr& reg = p.registry();
  const VarId v = reg->id(var);
  const std::string dp = digest(p), dq = digest(q);
  std::optional<Poly> out;
  std::string key;
  if (cache) {
    key = Cache::key(tag, label, fnv_hex(dp + dq + var));
    out = cache->load(key, reg);
  }
  if (!out) {
    out = normalize(resultant(p, q, v));
    if (cache) cache->store(key, *out);
  }
  if (out->is_zero()) throw VanishingTower(label + " = Res_" + var + " vanished identically");
  record(trace, {"resultant", label, {dp, dq}, digest(*out), var, std::max(degree_in(p, v), degree_in(q, v)),
                 degree_in(*out, v), out->size(), degree_note(*out, reg, {"b2", "b3", "b4", "b7"})});
  return *out;
}

std::string stage_tag(const LinearStage& st, const std::string& user_tag) {
  if (!user_tag.empty()) return user_tag;
  return st.mode == Mode::kNumeric ? "numeric-k" + std::to_string(st.k) : std::string("symbolic");
}

const Poly& remaining(const LinearStage& st, unsigned n) {
  auto it = st.remaining.find(n);
  if (it == st.remaining.end()) throw DomainError("equation E" + std::to_string(n) + " is not in the reduced system");
  return it->second;
}

std::pair<Poly, Poly> split_linear(const Poly& e22, VarId b7) {
  if (degree_in(e22, b7) != 1) throw VanishingTower("E22 is not linear in b7");
  return {coeff_of(e22, b7, 1), coeff_of(e22, b7, 0)};
}

}  // namespace

Sys1Tower resultant_tower_sys1(const LinearStage& stage, EliminationTrace* trace, const TowerOptions& opts) {
  const RegistryPtr& reg = stage.registry;
  const std::string tag = stage_tag(stage, opts.cache_tag);
  Sys1Tower t;
  const Poly& e22 = remaining(stage, 22);
  std::tie(t.P22, t.Q22) = split_linear(e22, reg->id("b7"));
  record(trace, {"split", "E22 = P22*b7 + Q22", {digest(e22)}, digest(t.P22), "b7", 1, 0, t.P22.size(),
                 "Q22 " + digest(t.Q22)});
  for (unsigned n : {35u, 36u, 39u, 40u}) {
    if (!stage.remaining.count(n)) continue;
    t.F[n] = tower_resultant("F" + std::to_string(n), e22, remaining(stage, n), "b7", trace, opts.cache, tag);
  }
  if (!opts.compute_G) return t;
  const Poly& f35 = t.F.at(35);
  const Poly p2 = t.P22 * t.P22;
  for (unsigned n : {36u, 39u, 40u}) {
    if (!t.F.count(n)) continue;
    const Poly g = tower_resultant("G" + std::to_string(n), f35, t.F.at(n), "b4", trace, opts.cache, tag);
    auto q = try_exact_div(g, p2);
    if (!q) throw DivisionNotExact("P22^2 does not divide G" + std::to_string(n));
    Poly red = normalize(*q);
    record(trace, {"exact-div", "G" + std::to_string(n) + "/P22^2", {digest(g), digest(p2)}, digest(red), "",
                   kDegreeNegInf, kDegreeNegInf, red.size(), degree_note(red, reg, {"b2", "b3"})});
    t.G[n] = g;
    t.Gred[n] = std::move(red);
  }
  if (!opts.compute_H) return t;
  const Poly& g39 = t.Gred.at(39);
  t.H36 = tower_resultant("H36", g39, t.Gred.at(36), "b3", trace, opts.cache, tag);
  t.H40 = tower_resultant("H40", g39, t.Gred.at(40), "b3", trace, opts.cache, tag);
  return t;
}

Sys2Tower resultant_tower_sys2(const LinearStage& stage, EliminationTrace* trace, const Sys2Options& opts) {
  const RegistryPtr& reg = stage.registry;
  const std::string tag = stage_tag(stage, opts.cache_tag);
  Sys2Tower t;
  std::tie(t.P22, t.Q22) = split_linear(remaining(stage, 22), reg->id("b7"));
  t.R[22] = tower_resultant("R22", t.P22, t.Q22, "b3", trace, opts.cache, tag);
  for (unsigned n : {35u, 36u, 39u}) {
    if (!stage.remaining.count(n)) continue;
    t.R[n] = tower_resultant("R" + std::to_string(n), t.P22, remaining(stage, n), "b3", trace, opts.cache, tag);
  }
  if (!opts.compute_T) return t;
  for (unsigned n : {36u, 39u}) {
    if (!t.R.count(n)) continue;
    t.T[n] = tower_resultant("T" + std::to_string(n), t.R.at(35), t.R.at(n), "b7", trace, opts.cache, tag);
  }
  if (!opts.compute_U) return t;
  for (const auto& [n, tn] : t.T) {
    t.U[n] = tower_resultant("U" + std::to_string(n), t.R.at(22), tn, "b4", trace, opts.cache, tag);
  }
  return t;
}

std::vector<RationalRoot> solve_sys1(const Poly& H36, const Poly& H40, EliminationTrace* trace) {
  const Poly g = univariate_gcd(H36, H40);
  record(trace, {"gcd", "gcd(H36, H40)", {digest(H36), digest(H40)}, digest(g), "b2", kDegreeNegInf,
                 g.total_degree(), g.size(), ""});
  if (g.is_constant()) return {};
  return rational_roots(g);
}

// ---- back-substitution --------------------------------------------------

namespace {

using Values = std::map<unsigned, Rational>;

Poly at_values(const Poly& p, const Values& vals) {
  std::map<VarId, Rational> assign;
  for (const auto& [n, v] : vals) {
    if (p.registry()->find(b_name(n))) assign[p.registry()->id(b_name(n))] = v;
  }
  return substitute(p, assign);
}

// Rational roots shared by all nonzero specializations; nullopt when
// every specialization vanishes (the level gives no information).
std::optional<std::vector<Rational>> common_roots(const std::vector<Poly>& polys, const Values& vals,
                                                  EliminationTrace* trace, const std::string& label) {
  Poly g;
  bool any = false;
  std::vector<std::string> inputs;
  for (const auto& p : polys) {
    Poly s = at_values(p, vals);
    inputs.push_back(digest(s));
    if (s.is_zero()) continue;
    g = any ? univariate_gcd(g, s) : normalize(s);
    any = true;
  }
  if (!any) return std::nullopt;
  record(trace, {"gcd", label, inputs, digest(g), "", kDegreeNegInf, g.total_degree(), g.size(), ""});
  std::vector<Rational> out;
  if (g.is_constant()) return out;
  for (const auto& r : rational_roots(g)) out.push_back(r.value);
  return out;
}

std::string values_label(const Values& v) {
  std::string s;
  for (const auto& [n, x] : v) {
    if (!s.empty()) s += ", ";
    s += b_name(n) + "=" + to_string(x);
  }
  return s;
}

// Replays the linear stage and checks every reduced equation.
std::optional<SolutionRecord> finish_branch(unsigned k, const LinearStage& stage, Values free_vals,
                                            std::vector<std::string> flags, const std::string& origin,
                                            EliminationTrace* trace) {
  auto all = replay_linear(stage, free_vals);
  if (!all) {
    record(trace, {"split", "branch " + values_label(free_vals), {}, "", "", kDegreeNegInf, kDegreeNegInf, 0,
                   "a linear pivot vanishes; branch dropped"});
    return std::nullopt;
  }
  for (const auto& [n, e] : stage.remaining) {
    if (!at_values(e, *all).is_zero()) {
      record(trace, {"split", "branch " + values_label(free_vals), {}, "", "", kDegreeNegInf, kDegreeNegInf, 0,
                     "E" + std::to_string(n) + " does not vanish; branch dropped"});
      return std::nullopt;
    }
  }
  unsigned top = 0;
  for (const auto& [n, v] : *all) top = std::max(top, n);
  SolutionRecord rec;
  rec.k = k;
  rec.origin = origin;
  rec.flags = std::move(flags);
  rec.b.assign(top + 1, Rational(0));
  rec.b[1] = 1;
  for (unsigned n = 2; n <= top; ++n) {
    if (is_prime_power(n)) {
      auto it = all->find(n);
      if (it == all->end()) throw DomainError("replay did not determine " + b_name(n));
      rec.b[n] = it->second;
    } else {
      auto [x, y] = canonical_split(n);
      rec.b[n] = rec.b[x] * rec.b[y];
    }
  }
  return rec;
}

}  // namespace

std::vector<SolutionRecord> back_substitute(unsigned k, const Rational& b2, const LinearStage& stage,
                                            const Sys1Tower& tower, EliminationTrace* trace) {
  std::vector<SolutionRecord> out;
  Values base{{2, b2}};
  std::vector<Poly> gred;
  for (const auto& [n, g] : tower.Gred) gred.push_back(g);
  auto b3s = common_roots(gred, base, trace, "b3 | b2=" + to_string(b2));
  if (!b3s) throw AmbiguousBranch("every G/P22^2 vanishes at b2=" + to_string(b2));
  for (const auto& b3 : *b3s) {
    Values v3 = base;
    v3[3] = b3;
    std::vector<Poly> fs;
    for (const auto& [n, f] : tower.F) fs.push_back(f);
    auto b4s = common_roots(fs, v3, trace, "b4 | " + values_label(v3));
    if (!b4s) throw AmbiguousBranch("every F vanishes at " + values_label(v3));
    for (const auto& b4 : *b4s) {
      Values v4 = v3;
      v4[4] = b4;
      std::vector<std::string> flags;
      const Poly P = at_values(tower.P22, v4), Q = at_values(tower.Q22, v4);
      std::vector<Rational> b7s;
      if (!P.is_zero()) {
        b7s.push_back(-Q.constant_value() / P.constant_value());
      } else {
        flags.push_back("P22 vanishes");
        std::vector<Poly> es;
        for (const auto& [n, e] : stage.remaining) es.push_back(e);
        auto r = common_roots(es, v4, trace, "b7 | " + values_label(v4));
        if (!r) throw AmbiguousBranch("b7 is free at " + values_label(v4));
        b7s = *r;
      }
      for (const auto& b7 : b7s) {
        Values v7 = v4;
        v7[7] = b7;
        if (auto rec = finish_branch(k, stage, v7, flags, "sys1", trace)) out.push_back(std::move(*rec));
      }
    }
  }
  return out;
}

std::vector<SolutionRecord> solve_sys2(const LinearStage& stage, const Sys2Tower& tower, EliminationTrace* trace) {
  std::vector<SolutionRecord> out;
  if (tower.U.empty()) return out;
  Poly g;
  bool any = false;
  std::vector<std::string> inputs;
  for (const auto& [n, u] : tower.U) {
    inputs.push_back(digest(u));
    g = any ? univariate_gcd(g, u) : normalize(u);
    any = true;
  }
  record(trace, {"gcd", "gcd(U36, U39)", inputs, digest(g), "b2", kDegreeNegInf, g.total_degree(), g.size(), ""});
  if (g.is_constant()) return out;
  std::vector<Poly> rs, ts;
  for (const auto& [n, r] : tower.R) {
    if (n != 22) rs.push_back(r);
  }
  ts.push_back(tower.R.at(22));
  for (const auto& [n, t] : tower.T) ts.push_back(t);
  std::vector<Poly> last{tower.P22, tower.Q22};
  for (const auto& [n, e] : stage.remaining) last.push_back(e);
  for (const auto& root : rational_roots(g)) {
    Values v2{{2, root.value}};
    auto b4s = common_roots(ts, v2, trace, "b4 | " + values_label(v2));
    if (!b4s) throw AmbiguousBranch("b4 is free at " + values_label(v2));
    for (const auto& b4 : *b4s) {
      Values v4 = v2;
      v4[4] = b4;
      auto b7s = common_roots(rs, v4, trace, "b7 | " + values_label(v4));
      if (!b7s) throw AmbiguousBranch("b7 is free at " + values_label(v4));
      for (const auto& b7 : *b7s) {
        Values v7 = v4;
        v7[7] = b7;
        auto b3s = common_roots(last, v7, trace, "b3 | " + values_label(v7));
        if (!b3s) throw AmbiguousBranch("b3 is free at " + values_label(v7));
        for (const auto& b3 : *b3s) {
          Values v = v7;
          v[3] = b3;
          if (auto rec = finish_branch(stage.k, stage, v, {}, "sys2", trace)) out.push_back(std::move(*rec));
        }
      }
    }
  }
  return out;
}

// ---- pipeline ----------------------------------------------------------

namespace {

nlohmann::json record_json(const SolutionRecord& r) {
  nlohmann::json j = nlohmann::json::object();
  for (unsigned n : {2u, 3u, 4u, 5u, 7u, 8u}) {
    if (n < r.b.size()) j[b_name(n)] = to_string(r.b[n]);
  }
  j["label"] = r.label;
  j["product_label"] = r.product_label;
  j["status"] = to_string(r.status);
  j["certified_to"] = r.certified_to;
  j["origin"] = r.origin;
  if (r.failing_pair) j["failing_pair"] = {r.failing_pair->first, r.failing_pair->second};
  if (!r.flags.empty()) j["flags"] = r.flags;
  return j;
}

bool same_values(const SolutionRecord& a, const SolutionRecord& b) { return a.b == b.b; }

}  // namespace

nlohmann::json PipelineResult::to_json() const {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& r : sys1_roots) {
    roots.push_back(r.multiplicity == 1 ? nlohmann::json(to_string(r.value))
                                        : nlohmann::json{{"value", to_string(r.value)}, {"multiplicity", r.multiplicity}});
  }
  nlohmann::json sols = nlohmann::json::array(), rej = nlohmann::json::array();
  for (const auto& s : solutions) sols.push_back(record_json(s));
  for (const auto& s : rejected) rej.push_back(record_json(s));
  nlohmann::json sys2_json;
  if (sys2_empty) {
    sys2_json = "empty";
  } else {
    sys2_json = nlohmann::json::array();
    for (const auto& s : solutions) {
      if (s.origin == "sys2") sys2_json.push_back(record_json(s));
    }
  }
  auto deg = [](int d) { return d == kDegreeNegInf ? nlohmann::json(nullptr) : nlohmann::json(d); };
  return {{"k", k},
          {"sys1_roots", std::move(roots)},
          {"solutions", std::move(sols)},
          {"rejected", std::move(rej)},
          {"sys2", std::move(sys2_json)},
          {"degrees", {{"H36", deg(H36_degree)}, {"H40", deg(H40_degree)}, {"U36", deg(U36_degree)}, {"U39", deg(U39_degree)}}},
          {"sys1_gcd_degree", deg(sys1_gcd.is_zero() ? kDegreeNegInf : static_cast<int>(sys1_gcd.total_degree()))},
          {"sys2_gcd_degree", deg(sys2_gcd.is_zero() ? kDegreeNegInf : static_cast<int>(sys2_gcd.total_degree()))},
          {"trace_digest", trace.digest()}};
}

PipelineResult run_pipeline(unsigned k, const PipelineOptions& opts) {
  PipelineResult res;
  res.k = k;
  if (opts.progress) res.trace.set_listener(opts.progress);
  SystemInstance sys = SystemInstance::numeric(k, opts.max_index);
  const LinearStage stage = linear_eliminate(sys, &res.trace, opts.cache);
  const RegistryPtr& reg = stage.registry;
  const VarId b2 = reg->id("b2");

  TowerOptions topts;
  topts.cache = opts.cache;
  const Sys1Tower t1 = resultant_tower_sys1(stage, &res.trace, topts);
  res.H36_degree = degree_in(t1.H36, b2);
  res.H40_degree = degree_in(t1.H40, b2);
  res.sys1_gcd = univariate_gcd(t1.H36, t1.H40);
  res.sys1_roots = solve_sys1(t1.H36, t1.H40, &res.trace);

  std::vector<SolutionRecord> candidates;
  for (const auto& root : res.sys1_roots) {
    for (auto& rec : back_substitute(k, root.value, stage, t1, &res.trace)) candidates.push_back(std::move(rec));
  }
  if (opts.run_sys2) {
    Sys2Options sopts;
    sopts.cache = opts.cache;
    const Sys2Tower t2 = resultant_tower_sys2(stage, &res.trace, sopts);
    if (t2.U.count(36)) res.U36_degree = degree_in(t2.U.at(36), b2);
    if (t2.U.count(39)) res.U39_degree = degree_in(t2.U.at(39), b2);
    if (!t2.U.empty()) {
      Poly g;
      bool any = false;
      for (const auto& [n, u] : t2.U) {
        g = any ? univariate_gcd(g, u) : normalize(u);
        any = true;
      }
      res.sys2_gcd = g;
    }
    for (auto& rec : solve_sys2(stage, t2, &res.trace)) candidates.push_back(std::move(rec));
  }
  for (auto& rec : candidates) {
    SolutionRecord full = certify(extend_solution(std::move(rec), opts.terms), opts.terms);
    auto& bucket = full.status == CertStatus::kBoth ? res.solutions : res.rejected;
    const bool dup = std::any_of(bucket.begin(), bucket.end(), [&](const SolutionRecord& s) { return same_values(s, full); });
    if (!dup) bucket.push_back(std::move(full));
  }
  res.sys2_empty = std::none_of(res.solutions.begin(), res.solutions.end(),
                                [](const SolutionRecord& s) { return s.origin == "sys2"; });
  return res;
}

}  // namespace eisenprod
