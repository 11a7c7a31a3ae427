#pragma once

// Generic degree predictions for H36, H40 and U36, U39 and their
// specialization witnesses at a test k.
//
// The resultants I40 = Res_b2(H36, H40) and V39 = Res_b2(U36, U39) are too
// large to form. They are certified nonzero by predicting the generic
// degrees from Newton polygons, then checking at one k that both
// specialized polynomials attain that degree and are coprime.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eisenprod/eliminate.hpp"
#include "eisenprod/newton.hpp"
#include "eisenprod/structure.hpp"

namespace eisenprod {

class Cache;

// Dummy polynomials with the extreme supports of the tower polynomials.
// Slots are (b2, b3, b4) for F, (b2, b4, b7) for R35/R36 and (b2, b4) for
// R22 and T.
std::vector<GenericTerm> check_F35_terms();
std::vector<GenericTerm> check_F36_terms();
std::vector<GenericTerm> check_R35_terms();
/// d' sits on b2^2 b4^2, the point of the R36 extreme list.
std::vector<GenericTerm> check_R36_terms();
std::vector<GenericTerm> check_R22_terms();
/// c' sits on b2^4 b4^2, the point of the T extreme list.
std::vector<GenericTerm> check_T_terms();

using PairList = std::vector<std::vector<unsigned>>;

struct Sys1Prediction {
  /// Extreme pairs of Res_z(check_F35, check_F36).
  PairList check_extremes;
  /// The coefficient of x^12 y^8 is -a'(fa'-bp')(j^2p'-fjf'+f^2j').
  bool check_coefficient_matches = false;
  bool check_x11y8_nonzero = false;
  /// From the structure pass: the fa'-bp' analogue vanishes for every n
  /// and b2^11 b3^8 occurs in every G_n.
  bool combination_vanishes = false;
  bool b2_11_b3_8_present = false;
  PairList G_extremes;
  ConvexPolygon G, P22, Gred, Gred_double;
  Rational area_Gred, area_double;
  Rational bound;
  /// Observed Gred polygons at the sample points agree with Gred.
  bool observed_Gred_agrees = false;

  nlohmann::json to_json() const;
};

Sys1Prediction predict_sys1(const SymbolicStructure& st);

struct Sys2Prediction {
  /// Extreme pairs of Res_z(check_R35, check_R36).
  PairList check_extremes;
  /// The coefficient of x^5 y^2 is cd' - be'.
  bool check_coefficient_matches = false;
  bool combination_vanishes = false;
  bool b2_4_b4_2_present = false;
  PairList T_extremes;
  bool observed_T_agrees = false;
  /// deg_x Res_y(check_R22, check_T).
  int U_degree = kDegreeNegInf;

  nlohmann::json to_json() const;
};

Sys2Prediction predict_sys2(const SymbolicStructure& st);

struct DegreeWitness {
  unsigned k = 0;
  std::string subsystem;  ///< sys1 | sys2
  int predicted = kDegreeNegInf;
  /// H36, H40 or U36, U39.
  std::vector<std::pair<std::string, int>> degrees;
  int gcd_degree = kDegreeNegInf;
  /// One line per polynomial whose degree is below the prediction.
  std::vector<std::string> degree_drops;
  bool witnessed = false;
  std::string verdict;

  nlohmann::json to_json() const;
};

/// Runs the numeric tower at k up to H (sys1) or U (sys2).
DegreeWitness witness_sys1(unsigned k, int predicted, Cache* cache = nullptr,
                           std::function<void(const TraceStep&)> progress = {});
DegreeWitness witness_sys2(unsigned k, int predicted, Cache* cache = nullptr,
                           std::function<void(const TraceStep&)> progress = {});

}  // namespace eisenprod
