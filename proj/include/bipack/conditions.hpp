#pragma once

// Decision predicates for the classical degree-sequence packing theorems and
// for the dense-host / star-forest embedding theorem.  Every verdict is
// decided from integers and rationals exactly; only thresholds involving
// log n go through 100-digit floating point.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bipack/graph.hpp"
#include "bipack/numeric.hpp"
#include "bipack/sequences.hpp"

namespace bipack {

enum class Verdict { Applies, DoesNotApply, PreconditionUnmet };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Applies: return "applies";
    case Verdict::DoesNotApply: return "does-not-apply";
    case Verdict::PreconditionUnmet: return "precondition-unmet";
  }
  return "?";
}

using Term = std::variant<std::int64_t, double>;

struct ConditionReport {
  std::string theorem;
  Verdict verdict = Verdict::DoesNotApply;
  std::map<std::string, Term> terms;
  std::vector<std::string> notes;

  [[nodiscard]] bool applies() const noexcept { return verdict == Verdict::Applies; }

  [[nodiscard]] bool flag(const std::string& key) const {
    const auto it = terms.find(key);
    return it != terms.end() && std::holds_alternative<std::int64_t>(it->second) &&
           std::get<std::int64_t>(it->second) != 0;
  }

  friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

namespace detail {

inline Verdict verdict_of(bool holds) { return holds ? Verdict::Applies : Verdict::DoesNotApply; }
inline std::int64_t as_flag(bool b) { return b ? 1 : 0; }

inline void require_eps(const Rational& eps) {
  if (!(eps > Rational(0) && eps < Rational(1, 2))) throw std::invalid_argument("eps must lie in (0, 1/2)");
}

// d > (1/2 + q) * n, decided exactly.
inline bool exceeds_half_plus(std::int64_t d, const Rational& q, std::int64_t n) {
  return Wide{2} * q.den() * d > (Wide{q.den()} + Wide{2} * q.num()) * n;
}

}  // namespace detail

// Delta1 * Delta2 < n / 2.
inline ConditionReport sauer_spencer(std::int64_t delta1, std::int64_t delta2, std::int64_t n) {
  if (delta1 < 0 || delta2 < 0 || n < 0) throw std::invalid_argument("negative argument");
  ConditionReport r;
  r.theorem = "sauer-spencer";
  const Wide lhs = Wide{2} * delta1 * delta2;
  r.verdict = detail::verdict_of(lhs < n);
  r.terms = {{"delta1", delta1}, {"delta2", delta2}, {"n", n},
             {"lhs", static_cast<std::int64_t>(Wide{delta1} * delta2)}, {"rhs", static_cast<double>(n) / 2.0}};
  return r;
}

// Fixed-order packing of graphic sequences: with Delta, delta taken over the
// positional sum, Delta <= sqrt(2 delta n) - (delta - 1), strict when delta = 1.
// Squared form: L = Delta + delta - 1, L < 0 or L^2 <= 2 delta n.
inline ConditionReport busch(const GraphicSequence& sum_sequence) {
  if (sum_sequence.empty()) throw std::invalid_argument("empty sum sequence");
  ConditionReport r;
  r.theorem = "busch";
  const std::int64_t big = *std::max_element(sum_sequence.begin(), sum_sequence.end());
  const std::int64_t small = *std::min_element(sum_sequence.begin(), sum_sequence.end());
  const auto n = static_cast<std::int64_t>(sum_sequence.size());
  const std::int64_t lhs = big + small - 1;
  const Wide bound = Wide{2} * small * n;
  const bool strict = small == 1;
  bool holds;
  if (lhs < 0)
    holds = true;
  else
    holds = strict ? Wide{lhs} * lhs < bound : Wide{lhs} * lhs <= bound;
  r.verdict = detail::verdict_of(holds);
  r.terms = {{"Delta", big},
             {"delta", small},
             {"n", n},
             {"lhsSquared", static_cast<std::int64_t>(Wide{lhs} * lhs)},
             {"twoDeltaN", static_cast<std::int64_t>(bound)},
             {"strict", detail::as_flag(strict)}};
  if (strict) r.notes.push_back("delta = 1: strict inequality required");
  return r;
}

inline ConditionReport diemunsch_graphic(std::int64_t delta1_max, std::int64_t delta2_max, std::int64_t delta1_min,
                                         std::int64_t n) {
  ConditionReport r;
  r.theorem = "diemunsch-graphic";
  r.terms = {{"Delta1", delta1_max}, {"Delta2", delta2_max}, {"delta1", delta1_min}, {"n", n}};
  if (delta2_max < delta1_max || delta1_min < 1) {
    r.verdict = Verdict::PreconditionUnmet;
    r.notes.push_back(delta1_min < 1 ? "requires delta1 >= 1" : "requires Delta2 >= Delta1");
    return r;
  }
  const Wide rhs = Wide{delta1_min} * n + 1;
  if (delta2_max + 2 >= delta1_max + delta1_min) {
    const Wide lhs = Wide{delta2_max + 1} * (delta1_max + delta1_min);
    r.terms["case"] = std::int64_t{1};
    r.terms["lhs"] = static_cast<std::int64_t>(lhs);
    r.terms["rhs"] = static_cast<std::int64_t>(rhs);
    r.verdict = detail::verdict_of(lhs <= rhs);
  } else {
    const Wide s = Wide{delta2_max} + 1 + delta1_max + delta1_min;
    r.terms["case"] = std::int64_t{2};
    r.terms["lhs"] = static_cast<double>(s * s) / 4.0;
    r.terms["rhs"] = static_cast<std::int64_t>(rhs);
    r.verdict = detail::verdict_of(s * s <= 4 * rhs);
  }
  return r;
}

// 4 Delta1 Delta2 <= r + s.
inline ConditionReport diemunsch_bigraphic(std::int64_t delta1_max, std::int64_t delta2_max, std::int64_t delta1_min,
                                           std::int64_t r_size, std::int64_t s_size) {
  ConditionReport r;
  r.theorem = "diemunsch-bigraphic";
  r.terms = {{"Delta1", delta1_max}, {"Delta2", delta2_max}, {"delta1", delta1_min}, {"r", r_size}, {"s", s_size}};
  if (delta1_max > delta2_max || delta1_min < 1) {
    r.verdict = Verdict::PreconditionUnmet;
    r.notes.push_back(delta1_min < 1 ? "requires delta1 >= 1" : "requires Delta1 <= Delta2");
    return r;
  }
  const Wide lhs = Wide{4} * delta1_max * delta2_max;
  r.terms["lhs"] = static_cast<std::int64_t>(lhs);
  r.terms["rhs"] = r_size + s_size;
  r.verdict = detail::verdict_of(lhs <= r_size + s_size);
  return r;
}

// eps^4 n / (100 log n).
inline Real theorem1_degree_cap(std::int64_t n, const Rational& eps, const LogBase& base = std::nullopt) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  return pow(eps.to_real(), 4) * Real(n) / (Real(100) * log_of(n, base));
}

// Sequence-level form: host degrees on both sides, target degrees on S and T.
inline ConditionReport theorem1_sequence_conditions(const BigraphicSequence& host, const BigraphicSequence& target,
                                                    const Rational& eps, const LogBase& base = std::nullopt) {
  detail::require_eps(eps);
  const std::int64_t n = host.m();
  if (host.n() != n || target.m() != n || target.n() != n)
    throw DimensionMismatch("host and target must both be n x n with the same n");
  if (n < 2) throw std::invalid_argument("n must be at least 2");

  const std::int64_t host_min = host.min_degree();
  const bool c1 = detail::exceeds_half_plus(host_min, eps, n);

  const Real cap = theorem1_degree_cap(n, eps, base);
  const std::int64_t s_max = target.a_degrees.empty() ? 0 : *std::max_element(target.a_degrees.begin(), target.a_degrees.end());
  const bool c2 = Real(s_max) < cap;

  const bool c3 = std::all_of(target.b_degrees.begin(), target.b_degrees.end(), [](int d) { return d == 1; });

  ConditionReport r;
  r.theorem = "theorem1";
  r.verdict = detail::verdict_of(c1 && c2 && c3);
  r.terms = {{"n", n},
             {"eps", eps.to_double()},
             {"hostMinDegree", host_min},
             {"condition1Threshold", static_cast<double>((0.5L + eps.to_long_double()) * n)},
             {"condition1", detail::as_flag(c1)},
             {"targetMaxSDegree", s_max},
             {"condition2Threshold", cap.convert_to<double>()},
             {"condition2", detail::as_flag(c2)},
             {"condition3", detail::as_flag(c3)}};
  r.notes.push_back("the guarantee holds only for n > n0(eps); n0 is not specified, only Conditions 1-3 are checked");
  if (base) r.notes.push_back("log base " + base->str());
  return r;
}

inline ConditionReport theorem1_conditions(const BipartiteGraph& host, const BipartiteGraph& target, const Rational& eps,
                                           const LogBase& base = std::nullopt) {
  return theorem1_sequence_conditions(degree_sequence_of(host), degree_sequence_of(target), eps, base);
}

// Premises of the per-pair embedding lemma: host and target share classes
// Z (A-side, size z) and W (B-side, size n).
inline ConditionReport lemma5_conditions(const BipartiteGraph& host, const BipartiteGraph& target, const Rational& eps,
                                         std::int64_t big_m, const Rational& delta) {
  if (host.m() != target.m() || host.n() != target.n()) throw DimensionMismatch("host and target classes differ");
  const std::int64_t z = host.m();
  const std::int64_t n = host.n();

  bool z_degrees = true;
  for (int x = 0; x < z; ++x) z_degrees = z_degrees && detail::exceeds_half_plus(host.a_degree(x), eps, n);
  bool w_degrees = true;
  const Rational half_eps = eps / 2;
  for (int y = 0; y < n; ++y) w_degrees = w_degrees && detail::exceeds_half_plus(host.b_degree(y), half_eps, z);

  // M <= d <= M (1 + delta)
  bool band = true;
  for (int x = 0; x < z; ++x) {
    const std::int64_t d = target.a_degree(x);
    band = band && d >= big_m && Wide{d} * delta.den() <= Wide{big_m} * (Wide{delta.den()} + delta.num());
  }
  bool leaves = true;
  for (int y = 0; y < n; ++y) leaves = leaves && target.b_degree(y) == 1;

  const bool z_large = Wide{z} * eps.num() > Wide{2} * eps.den() && z > 3;
  const bool delta_small = Wide{10} * delta.num() * eps.den() <= Wide{eps.num()} * delta.den();

  ConditionReport r;
  r.theorem = "lemma5";
  r.verdict = detail::verdict_of(z_degrees && w_degrees && band && leaves && z_large && delta_small);
  r.terms = {{"z", z},
             {"n", n},
             {"M", big_m},
             {"eps", eps.to_double()},
             {"delta", delta.to_double()},
             {"zDegrees", detail::as_flag(z_degrees)},
             {"wDegrees", detail::as_flag(w_degrees)},
             {"targetBand", detail::as_flag(band)},
             {"targetLeaves", detail::as_flag(leaves)},
             {"zLarge", detail::as_flag(z_large)},
             {"deltaSmall", detail::as_flag(delta_small)}};
  if (z == 1) r.notes.push_back("z = 1: a single hub adjacent to all of W embeds trivially");
  if (!z_large) r.notes.push_back("requires z > max(2/eps, 3)");
  return r;
}

// Runs every checker on parameters derived from two sequences.  seq2 is the
// sequence being packed against, i.e. the complement of the host; the
// dense-host theorem sees host degrees as (class size - seq2 degree).
inline std::vector<ConditionReport> compare_theorems(const BigraphicSequence& seq1, const BigraphicSequence& seq2,
                                                     const Rational& eps, const LogBase& base = std::nullopt) {
  if (seq1.m() != seq2.m() || seq1.n() != seq2.n()) throw DimensionMismatch("sequences differ in shape");
  const std::int64_t m = seq1.m();
  const std::int64_t n = seq1.n();
  const std::int64_t order = m == n ? n : m + n;

  std::int64_t d1 = seq1.max_degree(), d2 = seq2.max_degree();
  std::int64_t low1 = seq1.min_degree(), low2 = seq2.min_degree();
  const bool swapped = d1 > d2;
  if (swapped) {
    std::swap(d1, d2);
    std::swap(low1, low2);
  }

  std::vector<ConditionReport> out;
  out.push_back(sauer_spencer(d1, d2, order));

  GraphicSequence sum;
  for (int i = 0; i < m; ++i) sum.push_back(seq1.a_degrees[i] + seq2.a_degrees[i]);
  for (int j = 0; j < n; ++j) sum.push_back(seq1.b_degrees[j] + seq2.b_degrees[j]);
  if (!sum.empty()) {
    out.push_back(busch(sum));
    out.back().notes.push_back("fixed-order packing of the positional sum");
  }

  out.push_back(diemunsch_graphic(d1, d2, low1, order));
  out.push_back(diemunsch_bigraphic(d1, d2, low1, m, n));
  if (swapped)
    for (auto& r : out) r.notes.push_back("sequences relabelled so that Delta1 <= Delta2");

  if (m == n && n >= 2 && eps > Rational(0) && eps < Rational(1, 2)) {
    BigraphicSequence host;
    for (int d : seq2.a_degrees) host.a_degrees.push_back(static_cast<int>(n) - d);
    for (int d : seq2.b_degrees) host.b_degrees.push_back(static_cast<int>(m) - d);
    out.push_back(theorem1_sequence_conditions(host, seq1, eps, base));
  }
  return out;
}

}  // namespace bipack
