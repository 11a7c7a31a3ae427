#pragma once

// The elimination cascade: linear solves, the two resultant towers,
// root extraction, back-substitution, extension and certification.

#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eisenprod/poly.hpp"
#include "eisenprod/qseries.hpp"
#include "eisenprod/sysbuild.hpp"
#include "eisenprod/univariate.hpp"

namespace eisenprod {

class Cache;

// ---- trace -----------------------------------------------------------

struct TraceStep {
  std::string kind;  ///< linear-solve | resultant | exact-div | gcd | split | clear
  std::string label;
  std::vector<std::string> inputs;  ///< digests
  std::string output;               ///< digest
  std::string variable;
  int degree_before = kDegreeNegInf;
  int degree_after = kDegreeNegInf;
  std::size_t terms = 0;
  std::string note;
};

nlohmann::json to_json(const TraceStep& s);
TraceStep trace_step_from_json(const nlohmann::json& j);

/// Append-only and safe to share between the parallel legs of a tower.
class EliminationTrace {
 public:
  void add(TraceStep step);
  std::vector<TraceStep> steps() const;
  nlohmann::json to_json() const;
  /// Digest over every step, in order.
  std::string digest() const;
  /// Called for every step as it is added (progress telemetry).
  void set_listener(std::function<void(const TraceStep&)> fn);

  EliminationTrace() = default;
  EliminationTrace(const EliminationTrace& o);
  EliminationTrace(EliminationTrace&& o) noexcept;
  EliminationTrace& operator=(const EliminationTrace& o);
  EliminationTrace& operator=(EliminationTrace&& o) noexcept;

 private:
  mutable std::mutex mu_;
  std::vector<TraceStep> steps_;
  std::function<void(const TraceStep&)> listener_;
};

// ---- linear stage ----------------------------------------------------

/// (variable index p, equation index n) in the order they are solved.
inline constexpr std::array<std::pair<unsigned, unsigned>, 15> kLinearPairs{{
    {5, 6}, {9, 10}, {11, 12}, {13, 14}, {8, 15}, {17, 18}, {19, 20}, {16, 21},
    {23, 24}, {25, 26}, {27, 28}, {29, 30}, {32, 33}, {31, 34}, {37, 38},
}};

/// b_p = -rest / pivot, where pivot and rest are free of b_p and of every
/// variable solved before it.
struct LinearSolve {
  unsigned variable = 0;
  unsigned equation = 0;
  Poly pivot;
  Poly rest;
};

struct LinearStage {
  Mode mode = Mode::kNumeric;
  unsigned k = 0;
  RegistryPtr registry;
  std::vector<LinearSolve> solves;
  /// Equations left after all solves, as cleared numerators.
  std::map<unsigned, Poly> remaining;
  /// Irreducible factors that were divided out of numerators (symbolic).
  std::vector<Poly> factors;
};

/// Step 2: solves each pair of kLinearPairs inside the window, in order,
/// substituting into every other equation and clearing denominators.
/// Throws PivotVanishes when a pivot is zero or depends on a b-variable.
/// With a cache, a stored stage for the same system is reused and its
/// trace steps are replayed into `trace`.
LinearStage linear_eliminate(SystemInstance& sys, EliminationTrace* trace = nullptr, Cache* cache = nullptr);

nlohmann::json to_json(const LinearStage& st);
LinearStage linear_stage_from_json(const nlohmann::json& j, const RegistryPtr& reg);

/// Values of every solved variable given values for the free ones,
/// obtained by replaying the solves backwards. Returns nullopt when a
/// pivot vanishes at the point.
std::optional<std::map<unsigned, Rational>> replay_linear(const LinearStage& stage,
                                                          std::map<unsigned, Rational> free_values);

// ---- resultant towers ------------------------------------------------

struct Sys1Tower {
  Poly P22, Q22;
  std::map<unsigned, Poly> F;     ///< 35, 36, 39, 40
  std::map<unsigned, Poly> G;     ///< 36, 39, 40
  std::map<unsigned, Poly> Gred;  ///< G / P22^2
  Poly H36, H40;
};

struct TowerOptions {
  bool compute_G = true;
  bool compute_H = true;
  Cache* cache = nullptr;
  /// Cache key prefix, e.g. "numeric-k2".
  std::string cache_tag;
};

/// Throws DivisionNotExact if P22^2 fails to divide some G and
/// VanishingTower if an F, G or H is zero.
Sys1Tower resultant_tower_sys1(const LinearStage& stage, EliminationTrace* trace = nullptr,
                               const TowerOptions& opts = {});

struct Sys2Tower {
  Poly P22, Q22;
  std::map<unsigned, Poly> R;  ///< 22, 35, 36, 39
  std::map<unsigned, Poly> T;  ///< 36, 39
  std::map<unsigned, Poly> U;  ///< 36, 39
};

struct Sys2Options {
  bool compute_T = true;
  bool compute_U = true;
  Cache* cache = nullptr;
  std::string cache_tag;
};

Sys2Tower resultant_tower_sys2(const LinearStage& stage, EliminationTrace* trace = nullptr,
                               const Sys2Options& opts = {});

/// Rational roots of gcd(H36, H40), or empty when the gcd is constant.
std::vector<RationalRoot> solve_sys1(const Poly& H36, const Poly& H40, EliminationTrace* trace = nullptr);

// ---- solutions -------------------------------------------------------

enum class CertStatus { kUncertified, kNone, kMultiplicativeG, kMultiplicativeProduct, kBoth };
std::string to_string(CertStatus s);

struct SolutionRecord {
  unsigned k = 0;
  /// b_1 .. b_N (index 0 unused).
  std::vector<Rational> b;
  CertStatus status = CertStatus::kUncertified;
  /// Closed form of g, and of E_{2k} g.
  std::string label = "unmatched";
  std::string product_label = "unmatched";
  std::size_t certified_to = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> failing_pair;
  /// Denominators cleared along this branch that vanish at the point.
  std::vector<std::string> flags;
  /// Which subsystem produced it.
  std::string origin = "sys1";

  const Rational& at(unsigned n) const { return b.at(n); }
  QSeries series() const;
};

/// Partial solutions (b2, b3, b4, b7 and the linear replay) for a sys1
/// root. All rational branches are returned; certify() filters them.
std::vector<SolutionRecord> back_substitute(unsigned k, const Rational& b2, const LinearStage& stage,
                                            const Sys1Tower& tower, EliminationTrace* trace = nullptr);

/// Partial solutions from the sys2 branch (P22 = Q22 = 0).
std::vector<SolutionRecord> solve_sys2(const LinearStage& stage, const Sys2Tower& tower,
                                       EliminationTrace* trace = nullptr);

/// Extends b_1..b_8 to b_1..b_N by the inductive coefficient procedure.
/// Values already present beyond b_8 are recomputed; a disagreement is
/// recorded in flags. Throws SingularExtension when a case-3 matrix is
/// singular.
SolutionRecord extend_solution(SolutionRecord rec, std::size_t N);

/// E_{k,n} evaluated at the coefficients b (index 0 unused, b[1] = 1).
/// Indices that are not prime powers are read through their split, so
/// only prime-power entries of b need to be meaningful.
Rational evaluate_E(unsigned k, unsigned n, const std::vector<Rational>& b);

/// The case-3 coefficient matrix for l (rows: unknowns b_l, b_{l+1}
/// [, b_{l+3}]; columns: the equations used), with entries
/// sigma_{2k-1}(i) in closed form.
std::vector<std::vector<Rational>> extension_matrix(unsigned k, unsigned l);

/// Closed forms the certifier tries, in order: "Δ12", "Δ16", "Δ18",
/// "Δ20", "Δ22", "Δ26", "φ8", "qE4'/240", then "qE8'/480" and
/// "Δ12+256Δ12(q^2)" (only ever matched by a product E_{2k} g).
std::vector<std::pair<std::string, QSeries>> closed_form_catalog(std::size_t N);

/// Runs the multiplicativity checks on g and E_{2k} g up to N and
/// attaches a closed-form label. Requires b to be known through N.
SolutionRecord certify(SolutionRecord rec, std::size_t N);

// ---- whole pipeline --------------------------------------------------

struct PipelineOptions {
  std::size_t terms = 100;
  unsigned max_index = 40;
  Cache* cache = nullptr;
  bool run_sys2 = true;
  std::function<void(const TraceStep&)> progress;
};

struct PipelineResult {
  unsigned k = 0;
  std::vector<RationalRoot> sys1_roots;
  int H36_degree = kDegreeNegInf, H40_degree = kDegreeNegInf;
  int U36_degree = kDegreeNegInf, U39_degree = kDegreeNegInf;
  Poly sys1_gcd, sys2_gcd;
  std::vector<SolutionRecord> solutions;   ///< certified ones
  std::vector<SolutionRecord> rejected;    ///< branches that failed certification
  bool sys2_empty = true;
  EliminationTrace trace;

  nlohmann::json to_json() const;
};

PipelineResult run_pipeline(unsigned k, const PipelineOptions& opts = {});

}  // namespace eisenprod
