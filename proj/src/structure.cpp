#include "eisenprod/structure.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "eisenprod/errors.hpp"
#include "eisenprod/resultant.hpp"

namespace eisenprod {

ExponentList maximal_elements(const ExponentList& pts) {
  ExponentList out;
  for (const auto& a : pts) {
    bool dominated = false;
    for (const auto& b : pts) {
      if (a == b) continue;
      bool ge = true;
      for (std::size_t i = 0; i < a.size() && ge; ++i) ge = b[i] >= a[i];
      if (ge) {
        dominated = true;
        break;
      }
    }
    if (!dominated && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace {

using Support = std::set<std::vector<unsigned>>;

std::vector<VarId> ids(const RegistryPtr& reg, const std::vector<std::string>& names) {
  std::vector<VarId> out;
  for (const auto& n : names) out.push_back(reg->id(n));
  return out;
}

void add_support(Support& s, const Poly& p, const std::vector<VarId>& vars) {
  for (const auto& t : p.terms()) {
    std::vector<unsigned> e;
    for (VarId v : vars) e.push_back(t.mono[v]);
    s.insert(std::move(e));
  }
}

Rational coef(const Poly& p, const std::vector<VarId>& vars, const std::vector<unsigned>& exps) {
  const Poly c = coeff_of_monomial(p, vars, exps);
  if (!c.is_constant()) throw DomainError("coefficient is not a constant after specialization");
  return c.is_zero() ? Rational(0) : c.constant_value();
}

struct Combination {
  std::string name;
  std::vector<bool> zero;
};

}  // namespace

SymbolicStructure symbolic_structure(const LinearStage& st, const StructureOptions& opts, EliminationTrace* trace) {
  if (st.mode != Mode::kSymbolic) throw DomainError("symbolic_structure needs a symbolic linear stage");
  const RegistryPtr& reg = st.registry;
  SymbolicStructure out;
  out.trials = opts.trials;
  out.bits = opts.bits;
  out.abc = auxiliary_ABC(reg);
  const Poly x0 = Poly::var(reg, reg->id("x0"));
  const auto& [A, B, C] = out.abc;
  const std::map<unsigned, Poly> expected{{8, A * x0 * x0}, {16, A * B * pow(x0, 3)}, {31, A * B * C * pow(x0, 4)}};
  for (const auto& s : st.solves) {
    auto it = expected.find(s.variable);
    if (it == expected.end()) continue;
    PivotCheck pc;
    pc.pair = "(" + b_name(s.variable) + ", E" + std::to_string(s.equation) + ")";
    pc.pivot = s.pivot;
    pc.expected = it->second;
    pc.equal = s.pivot == it->second;
    out.pivots.push_back(std::move(pc));
  }

  const VarId b2 = reg->id("b2"), b3 = reg->id("b3"), b4 = reg->id("b4"), b7 = reg->id("b7");
  const std::vector<std::string> v23{"b2", "b3"}, v234{"b2", "b3", "b4"}, v24{"b2", "b4"}, v247{"b2", "b4", "b7"};
  const auto i23 = ids(reg, v23), i234 = ids(reg, v234), i24 = ids(reg, v24), i247 = ids(reg, v247);

  const Poly& e22 = st.remaining.at(22);
  const Poly P22 = coeff_of(e22, b7, 1);
  out.extremes["P22"] = extreme_monomials(P22, i23);
  out.extreme_vars["P22"] = v23;
  out.polygons["P22"] = newton_polygon(P22, b2, b3);

  std::vector<VarId> xs;
  for (VarId v = 0; v < reg->size(); ++v) {
    if (reg->name(v)[0] == 'x') xs.push_back(v);
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << (opts.bits - 1),
                                                   (std::uint64_t{1} << opts.bits) - 1);
  std::map<std::string, Support> supports;
  std::map<std::string, std::vector<bool>> combos, present;
  const std::vector<unsigned> fn{36, 39, 40}, rn{36, 39};

  for (unsigned trial = 0; trial < opts.trials; ++trial) {
    std::map<VarId, Rational> point;
    for (VarId v : xs) point[v] = Rational(Integer(static_cast<unsigned long>(dist(rng))));
    std::map<unsigned, Poly> E;
    for (const auto& [n, e] : st.remaining) E[n] = substitute(e, point);
    const Poly p22 = coeff_of(E.at(22), b7, 1), q22 = coeff_of(E.at(22), b7, 0);

    // sys1 side.
    std::map<unsigned, Poly> F;
    for (unsigned n : {35u, 36u, 39u, 40u}) {
      F[n] = resultant(E.at(22), E.at(n), b7);
      add_support(supports["F" + std::to_string(n)], F[n], i234);
    }
    for (unsigned n : fn) {
      const Rational f = coef(F[35], i234, {2, 2, 1}), b = coef(F[35], i234, {3, 0, 2});
      const Rational a1 = coef(F[n], i234, {1, 0, 3}), p1 = coef(F[n], i234, {0, 2, 2});
      combos["F35/F" + std::to_string(n) + ": c(b2^2*b3^2*b4)c'(b2*b4^3) - c(b2^3*b4^2)c'(b3^2*b4^2)"].push_back(
          f * a1 - b * p1 == 0);
    }
    if (opts.tower_G) {
      const Poly p2 = p22 * p22;
      for (unsigned n : fn) {
        const std::string gn = "G" + std::to_string(n);
        const Poly G = resultant(F[35], F[n], b4);
        add_support(supports[gn], G, i23);
        auto red = try_exact_div(G, p2);
        if (!red) throw DivisionNotExact("P22^2 does not divide " + gn + " at a sample point");
        add_support(supports["Gred" + std::to_string(n)], *red, i23);
        present[gn + ":b2^12*b3^8"].push_back(coef(G, i23, {12, 8}) != 0);
        present[gn + ":b2^11*b3^8"].push_back(coef(G, i23, {11, 8}) != 0);
      }
    }

    // sys2 side.
    std::map<unsigned, Poly> R;
    R[22] = resultant(p22, q22, b3);
    add_support(supports["R22"], R[22], i24);
    for (unsigned n : {35u, 36u, 39u}) {
      R[n] = resultant(p22, E.at(n), b3);
      add_support(supports["R" + std::to_string(n)], R[n], i247);
    }
    for (unsigned n : rn) {
      const Poly T = resultant(R[35], R[n], b7);
      add_support(supports["T" + std::to_string(n)], T, i24);
      const Rational c = coef(R[35], i247, {3, 0, 1}), b = coef(R[35], i247, {4, 1, 0});
      const Rational d_x2y2 = coef(R[n], i247, {2, 2, 0}), d_y2z2 = coef(R[n], i247, {0, 2, 2});
      const Rational e1 = coef(R[n], i247, {1, 1, 1});
      const std::string rn_s = "R" + std::to_string(n);
      combos["R35/" + rn_s + ": c(b2^3*b7)c'(b2^2*b4^2) - c(b2^4*b4)c'(b2*b4*b7)"].push_back(c * d_x2y2 - b * e1 == 0);
      combos["R35/" + rn_s + ": c(b2^3*b7)c'(b4^2*b7^2) - c(b2^4*b4)c'(b2*b4*b7)"].push_back(c * d_y2z2 - b * e1 == 0);
      present["T" + std::to_string(n) + ":b2^5*b4^2"].push_back(coef(T, i24, {5, 2}) != 0);
      present["T" + std::to_string(n) + ":b2^4*b4^2"].push_back(coef(T, i24, {4, 2}) != 0);
    }
    if (trace) {
      trace->add({"split", "sample point " + std::to_string(trial + 1), {}, "", "", kDegreeNegInf, kDegreeNegInf, 0,
                  "tower evaluated at a random x-point"});
    }
  }

  auto vars_for = [&](const std::string& key) -> const std::vector<std::string>& {
    if (key[0] == 'F') return v234;
    if (key[0] == 'G' || key == "R22" || key[0] == 'T') return key[0] == 'G' ? v23 : v24;
    return v247;
  };
  for (const auto& [key, sup] : supports) {
    out.extremes[key] = maximal_elements(ExponentList(sup.begin(), sup.end()));
    out.extreme_vars[key] = vars_for(key);
    if (vars_for(key).size() == 2) {
      std::vector<LatticePoint> pts;
      for (const auto& e : sup) pts.emplace_back(e[0], e[1]);
      out.polygons[key] = ConvexPolygon::hull(std::move(pts));
    }
  }
  for (const auto& [name, zs] : combos) {
    CombinationCheck cc;
    cc.name = name;
    cc.vanishes = std::all_of(zs.begin(), zs.end(), [](bool z) { return z; });
    cc.certainly_nonzero = !cc.vanishes;
    out.combinations.push_back(std::move(cc));
  }
  for (const auto& [name, ps] : present) out.monomial_present[name] = std::any_of(ps.begin(), ps.end(), [](bool p) { return p; });
  return out;
}

nlohmann::json SymbolicStructure::to_json() const {
  nlohmann::json j;
  j["A"] = to_string(abc.A);
  j["B"] = to_string(abc.B);
  j["C"] = to_string(abc.C);
  nlohmann::json piv = nlohmann::json::array();
  for (const auto& p : pivots) piv.push_back({{"pair", p.pair}, {"pivot_terms", p.pivot.size()}, {"matches", p.equal}});
  j["pivots"] = std::move(piv);
  nlohmann::json ex = nlohmann::json::object();
  for (const auto& [k, v] : extremes) ex[k] = {{"vars", extreme_vars.at(k)}, {"extremes", v}};
  j["extremes"] = std::move(ex);
  nlohmann::json pg = nlohmann::json::object();
  for (const auto& [k, v] : polygons) pg[k] = eisenprod::to_json(v);
  j["polygons"] = std::move(pg);
  nlohmann::json cb = nlohmann::json::array();
  for (const auto& c : combinations) cb.push_back({{"combination", c.name}, {"vanishes", c.vanishes}});
  j["combinations"] = std::move(cb);
  j["monomials"] = monomial_present;
  j["sample_points"] = trials;
  j["sample_bits"] = bits;
  return j;
}

}  // namespace eisenprod
