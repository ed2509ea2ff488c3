#pragma once

// Certified bounds on stable commutator length.
//
// Lower bounds come from the elementary half of Bavard duality,
//     scl(g) >= |phi(g)| / (2 D(phi)),
// applied to explicit homogeneous quasimorphisms. Upper bounds come from
// explicit commutator expressions: g^n = [b_1,c_1]...[b_k,c_k] gives
// scl(g) <= k/n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sclqm/amalgam.hpp"
#include "sclqm/brooks.hpp"
#include "sclqm/error.hpp"
#include "sclqm/freewords.hpp"
#include "sclqm/rational.hpp"

namespace sclqm {

struct CommutatorExpression {
  FreeWord target;
  std::int64_t exponent = 1;
  std::vector<std::pair<FreeWord, FreeWord>> pairs;
};

inline bool verify_expression(const CommutatorExpression& e) {
  if (e.exponent < 1) return false;
  FreeWord product;
  for (const auto& [b, c] : e.pairs) product = multiply(product, commutator(b, c));
  return product == power(e.target, e.exponent);
}

// Expressions for g^n and g^m combine into one for g^(n+m).
inline CommutatorExpression concatenate(const CommutatorExpression& e, const CommutatorExpression& f) {
  if (e.target != f.target) throw InvalidInput("cannot concatenate expressions for different targets");
  CommutatorExpression out{e.target, e.exponent + f.exponent, e.pairs};
  out.pairs.insert(out.pairs.end(), f.pairs.begin(), f.pairs.end());
  return out;
}

// Shortest y (shortlex among equals) with y u y^-1 == v, if u ~ v.
inline std::optional<FreeWord> shortest_conjugator(const FreeWord& u, const FreeWord& v) {
  if (u.empty() || v.empty()) {
    if (u.empty() && v.empty()) return FreeWord{};
    return std::nullopt;
  }
  const auto [cu, pu] = cyclic_reduce(u);
  const auto [cv, pv] = cyclic_reduce(v);
  const FreeWord& ru = cu.representative();
  const FreeWord& rv = cv.representative();
  if (ru.size() != rv.size()) return std::nullopt;

  // ru = s t and rv = t s give rv = s^-1 ru s, so y = pv s^-1 pu^-1.
  std::optional<FreeWord> base;
  for (std::size_t k = 0; k < ru.size() && !base; ++k) {
    if (rotate(ru, k) == rv) {
      const FreeWord s = FreeWord::reduce(ru.letters().first(k));
      base = multiply(multiply(pv, invert(s)), invert(pu));
    }
  }
  if (!base) return std::nullopt;

  // Every conjugator is base * root(u)^j.
  const FreeWord root = primitive_root(u).root;
  const auto span = static_cast<std::int64_t>(base->size() + 2);
  FreeWord best = *base;
  for (std::int64_t j = -span; j <= span; ++j) {
    FreeWord candidate = multiply(*base, power(root, j));
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

// Finds g = [x, y] with |x|, |y| <= radius, scanning x over the ball in
// shortlex order. For fixed x, g = x y x^-1 y^-1 iff y x^-1 y^-1 = x^-1 g,
// so y is a conjugator and the shortest one decides membership.
inline std::optional<CommutatorExpression> genus1_search(const FreeWord& g, const Alphabet& alphabet,
                                                         std::size_t radius,
                                                         std::size_t cap = default_ball_cap) {
  for (const auto& x : enumerate_ball(alphabet, radius, cap)) {
    const FreeWord x_inv = invert(x);
    const auto y = shortest_conjugator(x_inv, multiply(x_inv, g));
    if (!y || y->size() > radius) continue;
    CommutatorExpression e{g, 1, {{x, *y}}};
    if (!verify_expression(e)) throw InternalError("genus-one candidate failed verification");
    return e;
  }
  return std::nullopt;
}

inline Rational bavard_lower(const Rational& value_at_g, const Rational& defect_upper) {
  if (defect_upper <= Rational(0)) throw InvalidInput("defect bound must be positive");
  return abs(value_at_g) / (defect_upper * Rational(2));
}

struct SclOptions {
  std::size_t genus_radius = 4;
  std::size_t max_pattern_length = 6;
  std::size_t ball_cap = default_ball_cap;
  std::int64_t mirror_power = 4;
  std::int64_t n_max = 16;
};

struct LowerBound {
  Rational value;
  std::string source;  // "brooks", "gap", "amalgam", "mirror"
  std::optional<QmDescriptor> descriptor;
  std::optional<AmalgamCertificate> amalgam;
};

struct UpperBound {
  Rational value;
  std::optional<CommutatorExpression> expression;
  std::string source;  // "genus1", "mirror"
};

struct SclReport {
  std::string element;
  std::string group;
  bool infinite = false;
  bool mirror_flag = false;
  std::optional<MirrorWitness> mirror_witness;
  std::vector<LowerBound> lower_bounds;
  std::vector<UpperBound> upper_bounds;
  std::size_t patterns_tried = 0;
  std::string note;

  std::optional<Rational> best_lower() const {
    std::optional<Rational> best;
    for (const auto& b : lower_bounds) {
      if (!best || b.value > *best) best = b.value;
    }
    return best;
  }

  std::optional<Rational> best_upper() const {
    std::optional<Rational> best;
    for (const auto& b : upper_bounds) {
      if (!best || b.value < *best) best = b.value;
    }
    return best;
  }

  void check_consistency() const {
    const auto lo = best_lower();
    const auto hi = best_upper();
    if (lo && hi && *lo > *hi) {
      throw InternalError("inconsistent bounds for \"" + element + "\": lower " + to_string(*lo) +
                          " exceeds upper " + to_string(*hi));
    }
  }
};

// Cyclic subwords of the core of length 2..min(|core|, max_len), deduplicated.
inline std::vector<FreeWord> candidate_patterns(const FreeWord& core, std::size_t max_len) {
  std::set<FreeWord> seen;
  const std::size_t n = core.size();
  std::vector<Letter> doubled(core.letters().begin(), core.letters().end());
  doubled.insert(doubled.end(), core.letters().begin(), core.letters().end());
  for (std::size_t len = 2; len <= std::min(n, max_len); ++len) {
    for (std::size_t start = 0; start < n; ++start) {
      seen.insert(FreeWord::reduce(std::span<const Letter>(doubled).subspan(start, len)));
    }
  }
  return {seen.begin(), seen.end()};
}

inline FreeWord least_rotation(const FreeWord& core, std::size_t& shift) {
  FreeWord best = core;
  shift = 0;
  for (std::size_t k = 1; k < core.size(); ++k) {
    FreeWord r = rotate(core, k);
    if (r < best) {
      best = std::move(r);
      shift = k;
    }
  }
  return best;
}

inline SclReport scl_report(const FreeWord& g, const Alphabet& alphabet, const SclOptions& options = {}) {
  if (g.empty()) throw InvalidInput("scl report needs a nontrivial element");
  SclReport report;
  report.element = to_string(g);
  report.group = "free:" + std::to_string(alphabet.rank());

  const auto sums = exponent_sums(g, alphabet);
  if (std::any_of(sums.begin(), sums.end(), [](std::int64_t s) { return s != 0; })) {
    report.infinite = true;
    report.note = "nonzero image in the abelianization; no power lies in the commutator subgroup";
    return report;
  }

  report.mirror_flag = mirror_check(g);
  if (report.mirror_flag) {
    report.lower_bounds.push_back({Rational(0), "mirror", std::nullopt, std::nullopt});
    report.upper_bounds.push_back({Rational(0), std::nullopt, "mirror"});
    return report;
  }

  const auto [cyclic_core, conjugator] = cyclic_reduce(g);
  const FreeWord& core = cyclic_core.representative();

  QmDescriptor gap = gap_qm(g);
  report.lower_bounds.push_back({bavard_lower(gap.value(g), gap.defect_upper), "gap", gap, std::nullopt});

  // Best single pattern; ties go to the lexicographically least pattern text.
  std::optional<std::pair<Rational, FreeWord>> best;
  const auto candidates = candidate_patterns(core, options.max_pattern_length);
  report.patterns_tried = candidates.size();
  for (const auto& w : candidates) {
    const BrooksPattern p(w);
    const Rational v = abs(homogeneous_value(p, core));
    if (v == Rational(0)) continue;
    if (!best || v > best->first || (v == best->first && to_string(w) < to_string(best->second))) {
      best = {v, w};
    }
  }
  if (best) {
    const BrooksPattern p(best->second);
    const Rational signed_value = homogeneous_value(p, core);
    QmDescriptor d{p,
                   Rational(1) / signed_value,
                   abs(Rational(1) / signed_value) * homogenized_defect_upper(p),
                   abs(Rational(1) / signed_value) * certified_defect_upper(p) * conservative_homogenization_factor,
                   g,
                   {},
                   1};
    report.lower_bounds.push_back(
        {bavard_lower(best->first, homogenized_defect_upper(p)), "brooks", std::move(d), std::nullopt});
  }

  // Search the least rotation so conjugate inputs scan identical targets.
  std::size_t shift = 0;
  const FreeWord canonical = least_rotation(core, shift);
  if (auto found = genus1_search(canonical, alphabet, options.genus_radius, options.ball_cap)) {
    // core = s t, canonical = t s = s^-1 core s, g = conjugator core conjugator^-1.
    const FreeWord outer = multiply(conjugator, FreeWord::reduce(core.letters().first(shift)));
    CommutatorExpression e{g, 1, {}};
    for (const auto& [x, y] : found->pairs) e.pairs.emplace_back(conjugate(outer, x), conjugate(outer, y));
    if (!verify_expression(e)) throw InternalError("conjugated commutator expression failed verification");
    report.upper_bounds.push_back({Rational(1), std::move(e), "genus1"});
  }

  report.check_consistency();
  return report;
}

inline SclReport scl_report(const Amalgam& group, const AmalgamWord& g, const SclOptions& options = {}) {
  const AmalgamWord reduced = group.reduce(g);
  if (reduced.empty()) throw InvalidInput("scl report needs a nontrivial element");
  SclReport report;
  report.element = to_string(g);
  report.group = "amalgam";

  // H_1 of an amalgam of finite groups is finite, so scl is always finite.
  if (auto mirror = group.mirror_check(reduced, options.mirror_power)) {
    report.mirror_flag = true;
    report.mirror_witness = mirror;
    report.lower_bounds.push_back({Rational(0), "mirror", std::nullopt, std::nullopt});
    report.upper_bounds.push_back({Rational(0), std::nullopt, "mirror"});
    report.note = "some power is conjugate to its inverse, so scl = 0";
    return report;
  }

  const AmalgamWord core = group.cyclically_reduce(reduced).core;
  const DoubleCosetResult dc = group.double_coset_condition(core);
  if (!dc.holds) {
    report.note = "double coset condition fails; no certificate";
    return report;
  }
  AmalgamCertificate cert = certify_scl_lower(group, core, 8, options.n_max);
  report.lower_bounds.push_back({cert.scl_lower, "amalgam", std::nullopt, std::move(cert)});
  report.check_consistency();
  return report;
}

}  // namespace sclqm
