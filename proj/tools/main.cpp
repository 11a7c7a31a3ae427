// eisenprod command-line front end.

#include <sys/resource.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eisenprod/cache.hpp"
#include "eisenprod/eliminate.hpp"
#include "eisenprod/errors.hpp"
#include "eisenprod/newton.hpp"
#include "eisenprod/qseries.hpp"
#include "eisenprod/structure.hpp"
#include "eisenprod/sysbuild.hpp"
#include "eisenprod/witness.hpp"

namespace ep = eisenprod;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCertFailure = 2, kTripwire = 3, kResourceAbort = 4 };

struct Global {
  std::string cache_dir;
  bool no_cache = false;
  bool json_out = false;
  std::string out_path;
  bool quiet = false;
  std::size_t memory_limit_mb = 0;
};

long max_rss_mb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss / 1024;
}

class Telemetry {
 public:
  explicit Telemetry(bool on) : on_(on), t0_(std::chrono::steady_clock::now()) {}

  void note(const std::string& what) const {
    if (!on_) return;
    std::fprintf(stderr, "[telemetry] %8.1fs rss=%ldMB %s\n", elapsed(), max_rss_mb(), what.c_str());
  }

  std::function<void(const ep::TraceStep&)> listener() const {
    if (!on_) return {};
    return [this](const ep::TraceStep& s) {
      std::ostringstream os;
      os << s.kind << " " << s.label;
      if (!s.variable.empty()) os << " [" << s.variable << "]";
      if (s.degree_after != ep::kDegreeNegInf) os << " deg=" << s.degree_after;
      os << " terms=" << s.terms;
      note(os.str());
    };
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }
  bool on_;
  std::chrono::steady_clock::time_point t0_;
};

std::optional<ep::Cache> open_cache(const Global& g) {
  if (g.no_cache) return std::nullopt;
  return ep::Cache(g.cache_dir.empty() ? ep::Cache::default_dir() : std::filesystem::path(g.cache_dir));
}

void emit_json(const Global& g, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (!g.out_path.empty()) {
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f) throw ep::DomainError("cannot write " + g.out_path);
    f << text;
  }
  if (g.json_out || g.out_path.empty()) std::cout << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ep::DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---- table printing --------------------------------------------------

void print_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size());
  auto width = [](const std::string& s) {
    // Display width of UTF-8 text.
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  };
  for (std::size_t i = 0; i < header.size(); ++i) w[i] = width(header[i]);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], width(r[i]));
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::size_t pad = w[i] - width(r[i]);
      if (i == 0) {
        std::cout << r[i] << std::string(pad, ' ');
      } else {
        std::cout << "  " << std::string(pad, ' ') << r[i];
      }
    }
    std::cout << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

// ---- build -------------------------------------------------------------

int cmd_build(const Global& g, unsigned k, unsigned max_index, bool symbolic, bool linear) {
  if (!symbolic && k < 2) throw ep::DomainError("build needs --k >= 2 or --symbolic");
  ep::SystemInstance sys = symbolic ? ep::SystemInstance::symbolic(max_index) : ep::SystemInstance::numeric(k, max_index);
  json j = sys.to_json();
  if (linear) {
    auto cache = open_cache(g);
    Telemetry tel(!g.quiet && symbolic);
    ep::EliminationTrace trace;
    trace.set_listener(tel.listener());
    const ep::LinearStage st = ep::linear_eliminate(sys, &trace, cache ? &*cache : nullptr);
    tel.note("linear stage done");
    j["linear_stage"] = ep::to_json(st);
  }
  emit_json(g, j);
  return kOk;
}

// ---- solve -------------------------------------------------------------

int cmd_solve(const Global& g, unsigned k, std::size_t terms, unsigned max_index) {
  if (k < 2) throw ep::DomainError("solve needs k >= 2");
  auto cache = open_cache(g);
  ep::PipelineOptions opts;
  opts.terms = terms;
  opts.max_index = max_index;
  opts.cache = cache ? &*cache : nullptr;
  const ep::PipelineResult res = ep::run_pipeline(k, opts);
  if (g.json_out || !g.out_path.empty()) {
    emit_json(g, res.to_json());
    if (g.json_out) return kOk;
  }
  std::cout << "k = " << k << ", E" << 2 * k << "\n";
  if (res.solutions.empty()) {
    std::cout << "no solutions\n";
  } else {
    // Rows in catalog order of the closed form of g.
    const auto catalog = ep::closed_form_catalog(8);
    auto rank = [&](const ep::SolutionRecord& s) {
      for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (catalog[i].first == s.label) return i;
      }
      return catalog.size();
    };
    std::vector<ep::SolutionRecord> sols = res.solutions;
    std::stable_sort(sols.begin(), sols.end(), [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < sols.size(); ++i) {
      const auto& s = sols[i];
      rows.push_back({"g" + std::to_string(i + 1), s.at(2).get_str(), s.at(3).get_str(), s.at(5).get_str(),
                      s.at(7).get_str(), s.at(8).get_str(), s.label, s.product_label,
                      std::to_string(s.certified_to)});
    }
    print_table({"", "b2", "b3", "b5", "b7", "b8", "g", "E" + std::to_string(2 * k) + "*g", "certified to"}, rows);
  }
  if (!res.rejected.empty()) std::cout << res.rejected.size() << " branch(es) failed certification\n";
  std::cout << "sys2: " << (res.sys2_empty ? "empty" : "nonempty") << "\n";
  return kOk;
}

// ---- verify ------------------------------------------------------------

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := '-' unary | postfix
// postfix:= primary ['(' 'q' '^' INT ')']
// primary:= NUMBER ['/' NUMBER] | 'q' | E<w> | D<w> | phi8 | theta '(' expr ')' | '(' expr ')'
class IdentityParser {
 public:
  IdentityParser(std::string_view text, std::size_t N) : s_(text), N_(N) {}

  ep::QSeries parse_side() {
    ep::QSeries v = expr();
    skip();
    return v;
  }
  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool done() {
    skip();
    return pos_ == s_.size();
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ep::ParseError("identity: " + msg + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  ep::QSeries constant(const ep::Rational& c) const {
    std::vector<ep::Rational> v(N_ + 1, ep::Rational(0));
    v[0] = c;
    return ep::QSeries(std::move(v));
  }
  unsigned integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }
  std::string word() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  ep::QSeries expr() {
    ep::QSeries v = term();
    for (;;) {
      if (at('+')) {
        ++pos_;
        v = v + term();
      } else if (at('-')) {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }
  ep::QSeries term() {
    ep::QSeries v = unary();
    while (at('*')) {
      ++pos_;
      v = v * unary();
    }
    return v;
  }
  ep::QSeries unary() {
    if (at('-')) {
      ++pos_;
      return ep::Rational(-1) * unary();
    }
    return postfix();
  }
  ep::QSeries postfix() {
    ep::QSeries v = primary();
    const std::size_t save = pos_;
    if (at('(')) {
      ++pos_;
      if (at('q')) {
        ++pos_;
        expect('^');
        const unsigned m = integer();
        expect(')');
        return ep::rescale_q(v, m);
      }
      pos_ = save;
    }
    return v;
  }
  ep::QSeries primary() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ep::QSeries v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ep::Rational r{ep::Integer(integer())};
      if (at('/')) {
        ++pos_;
        r /= ep::Integer(integer());
      }
      return constant(r);
    }
    const std::string w = word();
    if (w == "q") {
      std::vector<ep::Rational> v(N_ + 1, ep::Rational(0));
      if (N_ >= 1) v[1] = 1;
      return ep::QSeries(std::move(v));
    }
    if (w == "phi") {
      if (integer() != 8) fail("only phi8 is known");
      return ep::eta_product({{1, 8}, {2, 8}}, N_);
    }
    if (w == "theta") {
      expect('(');
      ep::QSeries v = expr();
      expect(')');
      return ep::q_derivative(v);
    }
    if (w == "E") {
      const unsigned wt = integer();
      if (wt < 4 || wt % 2) fail("E<w> needs an even weight >= 4");
      return ep::eisenstein(wt / 2, N_);
    }
    if (w == "D" || w == "Delta") return ep::delta_form(integer(), N_);
    fail("unknown name '" + w + "'");
  }

  std::string_view s_;
  std::size_t N_;
  std::size_t pos_ = 0;
};

int cmd_verify(const Global& g, const std::string& identity, std::size_t terms) {
  IdentityParser p(identity, terms);
  const ep::QSeries lhs = p.parse_side();
  p.expect('=');
  const ep::QSeries rhs = p.parse_side();
  if (!p.done()) throw ep::ParseError("identity: trailing input");
  const auto diff = first_difference(lhs.truncate(terms), rhs.truncate(terms));
  json j{{"identity", identity}, {"terms", terms}, {"pass", !diff.has_value()}};
  if (diff) {
    j["first_difference"] = *diff;
    j["lhs_coefficient"] = lhs[*diff].get_str();
    j["rhs_coefficient"] = rhs[*diff].get_str();
  }
  if (g.json_out || !g.out_path.empty()) emit_json(g, j);
  if (!g.json_out) {
    if (diff) {
      std::cout << "FAIL " << identity << ": first difference at q^" << *diff << " (" << lhs[*diff].get_str()
                << " vs " << rhs[*diff].get_str() << ")\n";
    } else {
      std::cout << "PASS " << identity << " to O(q^" << terms + 1 << ")\n";
    }
  }
  return diff ? kCertFailure : kOk;
}

// ---- symbolic ----------------------------------------------------------

std::string pairs_text(const ep::ExponentList& l) {
  std::string s;
  for (const auto& e : l) {
    s += s.empty() ? "(" : " (";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    s += ")";
  }
  return s;
}

int cmd_symbolic(const Global& g, const std::string& subsystem, const std::string& tier, std::optional<unsigned> test_k) {
  const bool sys1 = subsystem == "sys1";
  const bool long_tier = tier == "long";
  auto cache = open_cache(g);
  ep::Cache* cp = cache ? &*cache : nullptr;
  Telemetry tel(!g.quiet);

  ep::SystemInstance sys = ep::SystemInstance::symbolic(40);
  ep::EliminationTrace trace;
  trace.set_listener(tel.listener());
  tel.note("symbolic linear stage");
  const ep::LinearStage stage = ep::linear_eliminate(sys, &trace, cp);
  tel.note("structure at sample points");
  ep::StructureOptions sopts;
  sopts.tower_G = sys1;
  const ep::SymbolicStructure st = ep::symbolic_structure(stage, sopts);

  json j{{"subsystem", subsystem}, {"tier", tier}};
  json sj = st.to_json();
  std::vector<std::string> keep = sys1 ? std::vector<std::string>{"P22", "F35", "F36", "F39", "F40", "G36", "G39", "G40",
                                                                   "Gred36", "Gred39", "Gred40"}
                                       : std::vector<std::string>{"P22", "R22", "R35", "R36", "R39", "T36", "T39"};
  json ex = json::object();
  for (const auto& k : keep) {
    if (sj["extremes"].contains(k)) ex[k] = sj["extremes"][k];
  }
  sj["extremes"] = ex;
  j["structure"] = sj;

  int code = kOk;
  std::string verdict;
  std::optional<ep::DegreeWitness> witness;
  int predicted = 0;
  bool prediction_ok = true;
  tel.note("check resultants");
  if (sys1) {
    const ep::Sys1Prediction p = ep::predict_sys1(st);
    j["prediction"] = p.to_json();
    if (p.bound.get_den() != 1) throw ep::DomainError("Bernstein bound is not an integer");
    predicted = static_cast<int>(p.bound.get_num().get_si());
    prediction_ok = p.check_coefficient_matches && p.combination_vanishes && p.b2_11_b3_8_present &&
                    p.observed_Gred_agrees;
    if (long_tier) {
      tel.note("H witness at k=" + std::to_string(test_k.value_or(6)));
      witness = ep::witness_sys1(test_k.value_or(6), predicted, cp, tel.listener());
    }
  } else {
    const ep::Sys2Prediction p = ep::predict_sys2(st);
    j["prediction"] = p.to_json();
    predicted = p.U_degree;
    prediction_ok = p.check_coefficient_matches && p.combination_vanishes && p.b2_4_b4_2_present && p.observed_T_agrees;
    tel.note("U witness at k=" + std::to_string(test_k.value_or(2)));
    witness = ep::witness_sys2(test_k.value_or(2), predicted, cp, tel.listener());
  }
  if (witness) {
    j["witness"] = witness->to_json();
    verdict = witness->verdict;
    if (!witness->witnessed) code = kCertFailure;
  } else {
    j["witness"] = nullptr;
    verdict = "prediction only: bound " + std::to_string(predicted) + " (witness needs --tier long)";
  }
  if (!prediction_ok) {
    verdict = "structure deviates from the generic prediction; " + verdict;
    code = kCertFailure;
  }
  j["verdict"] = verdict;
  tel.note("done");

  if (g.json_out || !g.out_path.empty()) emit_json(g, j);
  if (!g.json_out) {
    std::cout << "subsystem " << subsystem << ", tier " << tier << "\n";
    if (sys1) {
      for (const auto& pv : st.pivots) {
        std::cout << "pivot " << pv.pair << ": " << (pv.equal ? "matches" : "DIFFERS") << "\n";
      }
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& k : keep) {
      auto it = st.extremes.find(k);
      if (it == st.extremes.end()) continue;
      std::string vars;
      for (const auto& v : st.extreme_vars.at(k)) vars += (vars.empty() ? "" : ",") + v;
      rows.push_back({k, vars, pairs_text(it->second)});
    }
    print_table({"polynomial", "vars", "extreme exponents"}, rows);
    for (const auto& c : st.combinations) {
      if (c.name[0] != (sys1 ? 'F' : 'R')) continue;
      std::cout << (c.vanishes ? "vanishes   " : "nonzero    ") << c.name << "\n";
    }
    const json& pj = j["prediction"];
    if (sys1) {
      std::cout << "area N(Gred) = " << pj["area_Gred"].get<std::string>()
                << ", area 2N(Gred) = " << pj["area_Gred_double"].get<std::string>() << ", bound " << predicted << "\n";
    } else {
      std::cout << "predicted deg U = " << predicted << "\n";
    }
    if (witness) {
      for (const auto& [name, deg] : witness->degrees) {
        std::cout << "deg_b2 " << name << " at k=" << witness->k << ": " << deg << "\n";
      }
      std::cout << "gcd degree: " << witness->gcd_degree << "\n";
    }
    std::cout << verdict << "\n";
  }
  return code;
}

// ---- newton ------------------------------------------------------------

ep::ConvexPolygon load_polygon(const std::string& path, const std::string& v, const std::string& w) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return ep::polygon_from_json(json::parse(text));
  auto reg = std::make_shared<ep::VarRegistry>();
  const ep::VarId vi = reg->intern(v), wi = reg->intern(w);
  return ep::newton_polygon(ep::parse_poly(reg, text), vi, wi);
}

int cmd_newton(const Global& g, const std::vector<std::string>& files, const std::string& vars, const std::string& op) {
  const auto comma = vars.find(',');
  if (comma == std::string::npos) throw ep::DomainError("--vars expects v,w");
  const std::string v = vars.substr(0, comma), w = vars.substr(comma + 1);
  std::vector<ep::ConvexPolygon> polys;
  for (const auto& f : files) polys.push_back(load_polygon(f, v, w));
  const bool binary = op == "minkowski" || op == "bound";
  if (binary && polys.size() == 1) polys.push_back(polys.front());
  if (polys.size() != (binary ? 2u : 1u)) throw ep::DomainError("--op " + op + " takes " + (binary ? "one or two" : "one") + " --poly");
  json j;
  if (op == "hull") {
    j = ep::to_json(polys[0]);
  } else if (op == "area") {
    j = {{"area", ep::area(polys[0]).get_str()}};
  } else if (op == "minkowski") {
    j = ep::to_json(ep::minkowski_sum(polys[0], polys[1]));
  } else {
    const ep::ConvexPolygon sum = ep::minkowski_sum(polys[0], polys[1]);
    j = {{"areas", {ep::area(polys[0]).get_str(), ep::area(polys[1]).get_str()}},
         {"area_sum", ep::area(sum).get_str()},
         {"bound", ep::bernstein_bound(polys[0], polys[1]).get_str()}};
  }
  emit_json(g, j);
  return kOk;
}

// ---- cache -------------------------------------------------------------

int cmd_cache_gc(const Global& g, std::optional<unsigned> max_age_hours) {
  auto cache = open_cache(g);
  if (!cache) throw ep::DomainError("cache gc with --no-cache");
  std::optional<std::chrono::hours> age;
  if (max_age_hours) age = std::chrono::hours(*max_age_hours);
  const auto r = cache->gc(age);
  std::cout << json{{"dir", cache->dir().string()}, {"removed", r.removed}, {"bytes_freed", r.bytes_freed}, {"kept", r.kept}}.dump()
            << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact elimination for Eisenstein-series products that stay multiplicative"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--cache-dir", g.cache_dir, "Cache directory (default: $EISENPROD_CACHE)");
  app.add_flag("--no-cache", g.no_cache, "Do not read or write the cache");
  app.add_flag("--json", g.json_out, "Print JSON instead of a text report");
  app.add_option("--out", g.out_path, "Also write the JSON result to this file");
  app.add_flag("--quiet", g.quiet, "No telemetry on stderr");
  app.add_option("--memory-limit-mb", g.memory_limit_mb, "Abort with exit code 4 above this address-space size");

  unsigned k = 0, max_index = 40;
  std::size_t terms = 100;
  bool symbolic = false, linear = false;
  auto* build = app.add_subcommand("build", "Build the polynomial system E_n = 0");
  build->add_option("--k", k, "Weight parameter (E_{2k})");
  build->add_option("--max", max_index, "Largest index n")->check(CLI::Range(8u, 40u));
  build->add_flag("--symbolic", symbolic, "Keep lambda as the variable x0 and sigma values as x-variables");
  build->add_flag("--linear", linear, "Also run the linear elimination stage");

  auto* solve = app.add_subcommand("solve", "Run the full numeric pipeline for one k");
  solve->add_option("--k", k, "Weight parameter (E_{2k})")->required();
  solve->add_option("--terms", terms, "Truncation order for extension and certification")->check(CLI::Range(8, 100000));
  solve->add_option("--max", max_index, "Largest index n")->check(CLI::Range(40u, 40u));

  std::string identity;
  auto* verify = app.add_subcommand("verify", "Check a q-series identity coefficientwise");
  verify->add_option("identity", identity, "e.g. \"E4*phi8=D12+256*D12(q^2)\"")->required();
  verify->add_option("--terms", terms, "Compare through q^N")->check(CLI::Range(1, 100000));

  std::string subsystem, tier = "fast";
  std::optional<unsigned> test_k;
  auto* sym = app.add_subcommand("symbolic", "Generic structure, degree prediction and specialization witness");
  sym->add_option("--subsystem", subsystem)->required()->check(CLI::IsMember({"sys1", "sys2"}));
  sym->add_option("--tier", tier)->check(CLI::IsMember({"fast", "long"}));
  sym->add_option("--test-k", test_k, "k for the specialization witness (default 6 for sys1, 2 for sys2)");

  std::vector<std::string> poly_files;
  std::string vars, op;
  auto* newton = app.add_subcommand("newton", "Newton polygons, areas and the Bernstein bound");
  newton->add_option("--poly", poly_files, "Polynomial text file or polygon JSON (repeatable)")->required();
  newton->add_option("--vars", vars, "Variable pair v,w")->required();
  newton->add_option("--op", op)->required()->check(CLI::IsMember({"hull", "area", "minkowski", "bound"}));

  std::optional<unsigned> max_age;
  auto* cache = app.add_subcommand("cache", "Manage the on-disk cache");
  cache->require_subcommand(1);
  auto* gc = cache->add_subcommand("gc", "Remove stale and foreign cache entries");
  gc->add_option("--max-age-hours", max_age, "Also remove entries older than this");

  CLI11_PARSE(app, argc, argv);

  if (g.memory_limit_mb) {
    rlimit rl{};
    rl.rlim_cur = rl.rlim_max = static_cast<rlim_t>(g.memory_limit_mb) << 20;
    setrlimit(RLIMIT_AS, &rl);
  }
  try {
    if (*build) return cmd_build(g, k, max_index, symbolic, linear);
    if (*solve) return cmd_solve(g, k, terms, max_index);
    if (*verify) return cmd_verify(g, identity, terms);
    if (*sym) {
      if (tier != "long" && subsystem == "sys1" && test_k) {
        std::cerr << "note: --test-k is used only with --tier long for sys1\n";
      }
      return cmd_symbolic(g, subsystem, tier, test_k);
    }
    if (*newton) return cmd_newton(g, poly_files, vars, op);
    if (*gc) return cmd_cache_gc(g, max_age);
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kResourceAbort;
  } catch (const ep::DivisionNotExact& e) {
    std::cerr << "tripwire DivisionNotExact: " << e.what() << "\n";
    return kTripwire;
  } catch (const ep::PivotVanishes& e) {
    std::cerr << "tripwire PivotVanishes: " << e.what() << "\n";
    return kTripwire;
  } catch (const ep::VanishingTower& e) {
    std::cerr << "tripwire VanishingTower: " << e.what() << "\n";
    return kTripwire;
  } catch (const ep::SingularExtension& e) {
    std::cerr << "tripwire SingularExtension: " << e.what() << "\n";
    return kTripwire;
  } catch (const ep::AmbiguousBranch& e) {
    std::cerr << "tripwire AmbiguousBranch: " << e.what() << "\n";
    return kTripwire;
  } catch (const ep::DegreeDrop& e) {
    std::cerr << "DegreeDrop: " << e.what() << "\n";
    return kCertFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
