#include "eisenprod/newton.hpp"

#include <algorithm>
#include <cstdlib>

#include "eisenprod/errors.hpp"
#include "eisenprod/resultant.hpp"

namespace eisenprod {

namespace {

using P = LatticePoint;

// Exact for the exponent ranges that occur (|coordinates| well below 2^31).
std::int64_t cross(const P& o, const P& a, const P& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

std::int64_t cross(const P& d, const P& e) { return d.first * e.second - d.second * e.first; }

// 0 for directions in (-90, 90] degrees, 1 for (90, 270].
int half(const P& d) { return (d.first > 0 || (d.first == 0 && d.second > 0)) ? 0 : 1; }

bool angle_less(const P& d, const P& e) {
  const int hd = half(d), he = half(e);
  if (hd != he) return hd < he;
  return cross(d, e) > 0;
}

std::vector<P> edges(const std::vector<P>& v) {
  std::vector<P> out;
  if (v.size() < 2) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const P& a = v[i];
    const P& b = v[(i + 1) % v.size()];
    out.push_back({b.first - a.first, b.second - a.second});
  }
  return out;
}

}  // namespace

ConvexPolygon ConvexPolygon::hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  ConvexPolygon out;
  if (pts.size() <= 2) {
    out.v_ = pts;
    return out;
  }
  std::vector<P> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  out.v_ = std::move(h);
  return out;
}

ConvexPolygon newton_polygon(const Poly& p, VarId v, VarId w) {
  if (p.is_zero()) throw DomainError("newton_polygon of the zero polynomial");
  std::vector<P> pts;
  pts.reserve(p.size());
  for (const auto& t : p.terms()) pts.emplace_back(t.mono[v], t.mono[w]);
  return ConvexPolygon::hull(std::move(pts));
}

ConvexPolygon minkowski_sum(const ConvexPolygon& A, const ConvexPolygon& B) {
  if (A.empty() || B.empty()) return {};
  const auto& a = A.vertices();
  const auto& b = B.vertices();
  const auto ea = edges(a), eb = edges(b);
  std::vector<P> pts{{a[0].first + b[0].first, a[0].second + b[0].second}};
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    P step;
    if (j == eb.size() || (i < ea.size() && angle_less(ea[i], eb[j]))) {
      step = ea[i++];
    } else if (i == ea.size() || angle_less(eb[j], ea[i])) {
      step = eb[j++];
    } else {
      step = {ea[i].first + eb[j].first, ea[i].second + eb[j].second};
      ++i;
      ++j;
    }
    pts.push_back({pts.back().first + step.first, pts.back().second + step.second});
  }
  // The merge walks the boundary once; hull() drops the closing point and
  // any collinear vertices.
  return ConvexPolygon::hull(std::move(pts));
}

ConvexPolygon minkowski_difference(const ConvexPolygon& A, const ConvexPolygon& C) {
  if (A.empty() || C.empty()) throw DomainError("minkowski_difference of an empty polygon");
  auto ea = edges(A.vertices());
  for (const P& e : edges(C.vertices())) {
    bool found = false;
    for (P& f : ea) {
      if (cross(f, e) != 0 || f.first * e.first + f.second * e.second <= 0) continue;
      if (std::abs(f.first) < std::abs(e.first) || std::abs(f.second) < std::abs(e.second)) break;
      f = {f.first - e.first, f.second - e.second};
      found = true;
      break;
    }
    if (!found) throw DomainError("minkowski_difference: not a Minkowski summand");
  }
  const P& a0 = A.vertices().front();
  const P& c0 = C.vertices().front();
  std::vector<P> pts{{a0.first - c0.first, a0.second - c0.second}};
  for (const P& f : ea) pts.push_back({pts.back().first + f.first, pts.back().second + f.second});
  ConvexPolygon B = ConvexPolygon::hull(pts);
  if (!(minkowski_sum(B, C) == A)) throw DomainError("minkowski_difference: not a Minkowski summand");
  return B;
}

Rational area(const ConvexPolygon& Pg) {
  const auto& v = Pg.vertices();
  if (v.size() < 3) return 0;
  Integer twice = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const P& p = v[i];
    const P& q = v[(i + 1) % v.size()];
    twice += Integer(static_cast<long>(p.first * q.second - q.first * p.second));
  }
  return abs(Rational(twice) / 2);
}

Rational bernstein_bound(const ConvexPolygon& A, const ConvexPolygon& B) {
  return area(minkowski_sum(A, B)) - area(A) - area(B);
}

nlohmann::json to_json(const ConvexPolygon& Pg) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& [x, y] : Pg.vertices()) v.push_back({x, y});
  return {{"vertices", std::move(v)}};
}

ConvexPolygon polygon_from_json(const nlohmann::json& j) {
  try {
    std::vector<P> pts;
    for (const auto& p : j.at("vertices")) pts.emplace_back(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>());
    return ConvexPolygon::hull(std::move(pts));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("polygon JSON: ") + e.what());
  }
}

// ---- generic check resultants -------------------------------------------

namespace {

const char* const kSlotNames[] = {"x", "y", "z", "w", "u", "v"};

}  // namespace

std::vector<GenericTerm> generic_terms(const std::vector<std::vector<unsigned>>& support, const std::string& suffix) {
  std::vector<GenericTerm> out;
  char c = 'a';
  for (const auto& e : support) {
    while (c == 'l' || c == 'm' || c == 'n' || (c >= 'u' && c <= 'z')) ++c;
    if (c > 't') throw DomainError("generic_terms: too many terms for single-letter names");
    out.push_back({e, std::string(1, c) + suffix});
    ++c;
  }
  return out;
}

CheckResultant generic_check_resultant(const std::vector<GenericTerm>& a, const std::vector<GenericTerm>& b,
                                       std::size_t eliminated) {
  if (a.empty() || b.empty()) throw DomainError("generic_check_resultant: empty support");
  const std::size_t slots = a.front().exps.size();
  if (slots > std::size(kSlotNames)) throw DomainError("generic_check_resultant: too many slots");
  if (eliminated >= slots) throw DomainError("generic_check_resultant: eliminated slot out of range");
  CheckResultant out;
  out.registry = std::make_shared<VarRegistry>();
  // Slot variables first, so they lead the monomial order.
  for (std::size_t s = 0; s < slots; ++s) out.slots.push_back(kSlotNames[s]);
  for (const auto& s : out.slots) out.registry->intern(s);
  auto build = [&](const std::vector<GenericTerm>& terms) {
    PolyBuilder pb(out.registry);
    bool uses_slot = false;
    for (const auto& t : terms) {
      if (t.exps.size() != slots) throw DomainError("generic_check_resultant: inconsistent slot count");
      Monomial m = Monomial::var(out.registry->intern(t.coeff));
      for (std::size_t s = 0; s < slots; ++s) m = m * Monomial::var(static_cast<VarId>(s), t.exps[s]);
      uses_slot = uses_slot || t.exps[eliminated] > 0;
      pb.add(m, Rational(1));
    }
    return std::make_pair(std::move(pb).build(), uses_slot);
  };
  auto [pa, ua] = build(a);
  auto [pb, ub] = build(b);
  if (!ua && !ub) throw DomainError("generic_check_resultant: neither polynomial involves the eliminated slot");
  out.eliminated = eliminated;
  out.A = std::move(pa);
  out.B = std::move(pb);
  out.resultant = resultant(out.A, out.B, static_cast<VarId>(eliminated), ResultantMethod::kBareiss);
  std::vector<VarId> keep;
  for (std::size_t s = 0; s < slots; ++s) {
    if (s != eliminated) keep.push_back(static_cast<VarId>(s));
  }
  if (!out.resultant.is_zero()) out.extremes = extreme_monomials(out.resultant, keep);
  return out;
}

Poly CheckResultant::coefficient(const std::vector<unsigned>& exps) const {
  std::vector<VarId> keep;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (s != eliminated) keep.push_back(static_cast<VarId>(s));
  }
  if (exps.size() != keep.size()) throw DomainError("CheckResultant::coefficient: wrong number of exponents");
  return coeff_of_monomial(resultant, keep, exps);
}

int CheckResultant::degree(const std::string& slot) const { return degree_in(resultant, registry->id(slot)); }

Poly CheckResultant::var(const std::string& name) const { return Poly::var(registry, registry->id(name)); }

}  // namespace eisenprod
