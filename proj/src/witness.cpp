#include "eisenprod/witness.hpp"

#include <algorithm>

#include "eisenprod/errors.hpp"

namespace eisenprod {

std::vector<GenericTerm> check_F35_terms() {
  return {{{0, 0, 3}, "a"}, {{3, 0, 2}, "b"}, {{1, 1, 2}, "c"}, {{5, 0, 1}, "d"}, {{3, 1, 1}, "e"}, {{2, 2, 1}, "f"},
          {{0, 3, 1}, "g"}, {{7, 0, 0}, "h"}, {{5, 1, 0}, "i"}, {{4, 2, 0}, "j"}, {{2, 3, 0}, "k"}, {{0, 4, 0}, "o"}};
}

std::vector<GenericTerm> check_F36_terms() {
  return {{{1, 0, 3}, "a'"}, {{3, 0, 2}, "b'"}, {{1, 1, 2}, "c'"}, {{0, 2, 2}, "p'"}, {{5, 0, 1}, "d'"},
          {{3, 1, 1}, "e'"}, {{2, 2, 1}, "f'"}, {{0, 3, 1}, "g'"}, {{7, 0, 0}, "h'"}, {{5, 1, 0}, "i'"},
          {{4, 2, 0}, "j'"}, {{2, 3, 0}, "k'"}, {{0, 4, 0}, "o'"}};
}

std::vector<GenericTerm> check_R35_terms() {
  return {{{6, 0, 0}, "a"}, {{4, 1, 0}, "b"}, {{3, 0, 1}, "c"}, {{0, 2, 0}, "d"}, {{0, 1, 1}, "e"}, {{0, 0, 0}, "f"}};
}

std::vector<GenericTerm> check_R36_terms() {
  return {{{6, 0, 0}, "a'"}, {{4, 1, 0}, "b'"}, {{3, 0, 1}, "c'"},
          {{2, 2, 0}, "d'"}, {{1, 1, 1}, "e'"}, {{0, 0, 0}, "f'"}};
}

std::vector<GenericTerm> check_R22_terms() {
  return {{{5, 0}, "a"}, {{3, 1}, "b"}, {{0, 2}, "c"}, {{0, 0}, "d"}};
}

std::vector<GenericTerm> check_T_terms() {
  return {{{9, 0}, "a'"}, {{7, 1}, "b'"}, {{4, 2}, "c'"}, {{2, 3}, "d'"}, {{0, 0}, "e'"}};
}

namespace {

bool all_vanish(const SymbolicStructure& st, const std::string& prefix, const std::vector<std::string>& targets) {
  bool seen = false;
  for (const auto& c : st.combinations) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    if (!targets.empty() &&
        std::none_of(targets.begin(), targets.end(), [&](const std::string& t) { return c.name.find(t) != std::string::npos; })) {
      continue;
    }
    seen = true;
    if (!c.vanishes) return false;
  }
  return seen;
}

bool all_present(const SymbolicStructure& st, const std::vector<std::string>& keys) {
  for (const auto& k : keys) {
    auto it = st.monomial_present.find(k);
    if (it == st.monomial_present.end() || !it->second) return false;
  }
  return true;
}

void replace_pair(PairList& l, const std::vector<unsigned>& from, const std::vector<unsigned>& to) {
  std::replace(l.begin(), l.end(), from, to);
  std::sort(l.begin(), l.end(), std::greater<>());
}

ConvexPolygon hull_of(const PairList& l, bool with_origin) {
  std::vector<LatticePoint> pts;
  for (const auto& e : l) pts.emplace_back(e.at(0), e.at(1));
  if (with_origin) pts.emplace_back(0, 0);
  return ConvexPolygon::hull(std::move(pts));
}

nlohmann::json pairs_json(const PairList& l) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : l) j.push_back(e);
  return j;
}

}  // namespace

Sys1Prediction predict_sys1(const SymbolicStructure& st) {
  Sys1Prediction out;
  const CheckResultant r = generic_check_resultant(check_F35_terms(), check_F36_terms(), 2);
  out.check_extremes = r.extremes;
  auto v = [&](const char* n) { return r.var(n); };
  const Poly expected = v("a'") * (v("f") * v("a'") - v("b") * v("p'")) *
                       (v("j") * v("j") * v("p'") - v("f") * v("j") * v("f'") + v("f") * v("f") * v("j'"));
  out.check_coefficient_matches = r.coefficient({12, 8}) == -expected;
  out.check_x11y8_nonzero = !r.coefficient({11, 8}).is_zero();

  out.combination_vanishes = all_vanish(st, "F35/", {});
  out.b2_11_b3_8_present = all_present(st, {"G36:b2^11*b3^8", "G39:b2^11*b3^8", "G40:b2^11*b3^8"});
  out.G_extremes = out.check_extremes;
  if (out.combination_vanishes && out.b2_11_b3_8_present) replace_pair(out.G_extremes, {12, 8}, {11, 8});

  out.G = hull_of(out.G_extremes, true);
  out.P22 = st.polygons.at("P22");
  out.Gred = minkowski_difference(out.G, minkowski_sum(out.P22, out.P22));
  out.Gred_double = minkowski_sum(out.Gred, out.Gred);
  out.area_Gred = area(out.Gred);
  out.area_double = area(out.Gred_double);
  out.bound = bernstein_bound(out.Gred, out.Gred);
  out.observed_Gred_agrees = true;
  for (const char* key : {"Gred36", "Gred39", "Gred40"}) {
    auto it = st.polygons.find(key);
    out.observed_Gred_agrees = out.observed_Gred_agrees && it != st.polygons.end() && it->second == out.Gred;
  }
  return out;
}

Sys2Prediction predict_sys2(const SymbolicStructure& st) {
  Sys2Prediction out;
  const CheckResultant r = generic_check_resultant(check_R35_terms(), check_R36_terms(), 2);
  out.check_extremes = r.extremes;
  out.check_coefficient_matches = r.coefficient({5, 2}) == r.var("c") * r.var("d'") - r.var("b") * r.var("e'");
  out.combination_vanishes = all_vanish(st, "R35/", {"c'(b2^2*b4^2)"});
  out.b2_4_b4_2_present = all_present(st, {"T36:b2^4*b4^2", "T39:b2^4*b4^2"});
  out.T_extremes = out.check_extremes;
  if (out.combination_vanishes && out.b2_4_b4_2_present) replace_pair(out.T_extremes, {5, 2}, {4, 2});
  out.observed_T_agrees = true;
  for (const char* key : {"T36", "T39"}) {
    auto it = st.extremes.find(key);
    out.observed_T_agrees = out.observed_T_agrees && it != st.extremes.end() && it->second == out.T_extremes;
  }
  const CheckResultant u = generic_check_resultant(check_R22_terms(), check_T_terms(), 1);
  out.U_degree = u.degree("x");
  return out;
}

nlohmann::json Sys1Prediction::to_json() const {
  return {{"check_F_extremes", pairs_json(check_extremes)},
          {"check_x12y8_coefficient_matches", check_coefficient_matches},
          {"check_x11y8_nonzero", check_x11y8_nonzero},
          {"combination_vanishes", combination_vanishes},
          {"b2^11*b3^8_present", b2_11_b3_8_present},
          {"G_extremes", pairs_json(G_extremes)},
          {"P22_polygon", eisenprod::to_json(P22)},
          {"Gred_polygon", eisenprod::to_json(Gred)},
          {"Gred_double_polygon", eisenprod::to_json(Gred_double)},
          {"area_Gred", to_string(area_Gred)},
          {"area_Gred_double", to_string(area_double)},
          {"predicted_H_degree", to_string(bound)},
          {"observed_Gred_agrees", observed_Gred_agrees}};
}

nlohmann::json Sys2Prediction::to_json() const {
  return {{"check_R_extremes", pairs_json(check_extremes)},
          {"check_x5y2_coefficient_matches", check_coefficient_matches},
          {"combination_vanishes", combination_vanishes},
          {"b2^4*b4^2_present", b2_4_b4_2_present},
          {"T_extremes", pairs_json(T_extremes)},
          {"observed_T_agrees", observed_T_agrees},
          {"predicted_U_degree", U_degree}};
}

nlohmann::json DegreeWitness::to_json() const {
  nlohmann::json d = nlohmann::json::object();
  for (const auto& [name, deg] : degrees) d[name] = deg;
  return {{"subsystem", subsystem}, {"k", k},          {"predicted_degree", predicted}, {"degrees", d},
          {"gcd_degree", gcd_degree}, {"degree_drops", degree_drops}, {"witnessed", witnessed},
          {"verdict", verdict}};
}

namespace {

void judge(DegreeWitness& w, const Poly& a, const Poly& b, const std::string& target) {
  const Poly g = univariate_gcd(a, b);
  w.gcd_degree = static_cast<int>(g.total_degree());
  for (const auto& [name, deg] : w.degrees) {
    if (deg != w.predicted) {
      w.degree_drops.push_back("DegreeDrop: deg_b2 " + name + " = " + std::to_string(deg) + " at k=" +
                               std::to_string(w.k) + ", predicted " + std::to_string(w.predicted));
    }
  }
  w.witnessed = w.degree_drops.empty() && w.gcd_degree == 0;
  if (w.witnessed) {
    w.verdict = target + " ≠ 0 witnessed";
  } else if (!w.degree_drops.empty()) {
    w.verdict = w.degree_drops.front();
  } else {
    w.verdict = target + " not witnessed: gcd has degree " + std::to_string(w.gcd_degree);
  }
}

}  // namespace

DegreeWitness witness_sys1(unsigned k, int predicted, Cache* cache, std::function<void(const TraceStep&)> progress) {
  EliminationTrace trace;
  if (progress) trace.set_listener(std::move(progress));
  SystemInstance sys = SystemInstance::numeric(k);
  const LinearStage stage = linear_eliminate(sys, &trace, cache);
  TowerOptions opts;
  opts.cache = cache;
  const Sys1Tower t = resultant_tower_sys1(stage, &trace, opts);
  const VarId b2 = stage.registry->id("b2");
  DegreeWitness w;
  w.k = k;
  w.subsystem = "sys1";
  w.predicted = predicted;
  w.degrees = {{"H36", degree_in(t.H36, b2)}, {"H40", degree_in(t.H40, b2)}};
  judge(w, t.H36, t.H40, "I₄₀");
  return w;
}

DegreeWitness witness_sys2(unsigned k, int predicted, Cache* cache, std::function<void(const TraceStep&)> progress) {
  EliminationTrace trace;
  if (progress) trace.set_listener(std::move(progress));
  SystemInstance sys = SystemInstance::numeric(k);
  const LinearStage stage = linear_eliminate(sys, &trace, cache);
  Sys2Options opts;
  opts.cache = cache;
  const Sys2Tower t = resultant_tower_sys2(stage, &trace, opts);
  const VarId b2 = stage.registry->id("b2");
  DegreeWitness w;
  w.k = k;
  w.subsystem = "sys2";
  w.predicted = predicted;
  w.degrees = {{"U36", degree_in(t.U.at(36), b2)}, {"U39", degree_in(t.U.at(39), b2)}};
  judge(w, t.U.at(36), t.U.at(39), "V₃₉");
  return w;
}

}  // namespace eisenprod
