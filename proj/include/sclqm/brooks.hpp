#pragma once

// Counting quasimorphisms on free groups.
//
// For a reduced pattern w the counting function c_w(g) is the number of
// disjoint oriented copies of w along a realizing path from 1 to g, and
// h_w = c_w - c_{w^-1}. Only the weight W = 1 is supported.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sclqm/error.hpp"
#include "sclqm/freewords.hpp"
#include "sclqm/rational.hpp"

namespace sclqm {

// Certified defect of the inhomogeneous h_w on a free group.
//
// Tripod argument. For x, y let m be the centre of the tripod spanned by
// 1, x and xy in the tree, with legs P = [1,m], Q = [m,x], R = [m,xy]. The
// three geodesics are the reduced concatenations
//     [1,x] = P.Q,   [x,xy] = Q^-1.R,   [1,xy] = P.R.
// For a reduced concatenation u.v, count(u.v) - count(u) - count(v) lies in
// [0, 1], since at most one of a family of disjoint copies can contain the
// seam. Counting w along Q^-1 is counting w^-1 along Q, so the Q terms
// cancel between h(x) and h(y), and the P and R terms cancel against h(xy).
// What survives is six seam errors e_k in [0, 1]:
//     h(x) + h(y) - h(xy) = (e1 - e2) + (e3 - e4) - (e5 - e6),
// three sides times two counting functions. Bounding each seam term by 1 in
// absolute value gives 6. The signed sum is in fact within [-3, 3]; the
// looser constant is the one certificates are issued against.
inline constexpr std::int64_t tripod_defect_bound = 6;

// D(homogenization of phi) <= 2 D(phi).
inline constexpr std::int64_t homogenization_factor = 2;
// The looser factor some constructions use; reported alongside.
inline constexpr std::int64_t conservative_homogenization_factor = 4;

inline constexpr std::size_t default_ball_cap = 20000;

class BrooksPattern {
 public:
  explicit BrooksPattern(FreeWord w, std::int64_t weight = 1)
      : word_(std::move(w)), inverse_(invert(word_)), weight_(weight) {
    if (weight_ != 1) throw InvalidInput("only the weight W = 1 is supported");
    if (word_.size() < 2) {
      throw InvalidInput("pattern \"" + to_string(word_) + "\" must have length at least 2");
    }
  }

  const FreeWord& word() const noexcept { return word_; }
  const FreeWord& inverse_word() const noexcept { return inverse_; }
  std::int64_t weight() const noexcept { return weight_; }

  // Realizing paths are (K, eps)-quasigeodesics with these constants.
  Rational multiplicative_constant() const {
    const auto len = static_cast<std::int64_t>(word_.size());
    return Rational(len, len - weight_);
  }
  Rational additive_constant() const {
    const auto len = static_cast<std::int64_t>(word_.size());
    return Rational(2 * weight_ * len, len - weight_);
  }

 private:
  FreeWord word_;
  FreeWord inverse_;
  std::int64_t weight_;
};

// c_w(g) for W = 1.
//
// The geodesic realizes the path infimum. Let a path alpha from 1 to g be
// unreduced, with a cancelling pair x x^-1 at positions i, i+1. A copy of w is
// reduced, so it cannot contain both positions; at most two chosen copies
// touch the pair. Deleting the pair shortens alpha by 2 and loses at most 2
// copies, so |alpha| - |alpha|_w does not increase. Repeating until alpha is
// reduced lands on the unique geodesic, whose cost is therefore minimal.
inline std::int64_t counting_value(const BrooksPattern& p, const FreeWord& g) {
  return count_copies(g, p.word());
}

inline std::int64_t small_qm(const BrooksPattern& p, std::span<const Letter> g) {
  return count_copies(g, p.word().letters()) - count_copies(g, p.inverse_word().letters());
}

inline std::int64_t small_qm(const BrooksPattern& p, const FreeWord& g) {
  return small_qm(p, g.letters());
}

// lim h_w(g^n)/n, exactly. Depends only on the conjugacy class of g.
inline Rational homogeneous_value(const BrooksPattern& p, const FreeWord& g) {
  if (g.empty()) return Rational(0);
  const CyclicWord core = cyclic_reduce(g).core;
  return cyclic_copy_density(core, p.word()) - cyclic_copy_density(core, p.inverse_word());
}

inline Rational certified_defect_upper(const BrooksPattern&) {
  return Rational(tripod_defect_bound);
}

inline Rational homogenized_defect_upper(const BrooksPattern& p) {
  return certified_defect_upper(p) * homogenization_factor;
}

// Largest defect 12L + 6W + 48 delta quoted for general hyperbolic graphs.
// Kept only as a consistency reference against the tree constant.
inline Rational hyperbolic_reference_bound(const Rational& stability_constant,
                                           std::int64_t weight, const Rational& delta) {
  return stability_constant * Rational(12) + Rational(6 * weight) + delta * Rational(48);
}

// max |h(x) + h(y) - h(xy)| over the ball of the given radius: a certified
// lower bound on the defect of h_w. Rows of the pair table are split across
// threads; the maximum is order independent.
inline std::int64_t defect_lower_bound(const BrooksPattern& p, const Alphabet& alphabet,
                                       std::size_t radius, std::size_t cap = default_ball_cap) {
  const std::vector<FreeWord> ball = enumerate_ball(alphabet, radius, cap);
  std::vector<std::int64_t> values;
  values.reserve(ball.size());
  for (const auto& u : ball) values.push_back(small_qm(p, u));

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::int64_t> partial(workers, 0);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        std::vector<Letter> product;
        std::int64_t best = 0;
        for (std::size_t i = t; i < ball.size(); i += workers) {
          const auto x = ball[i].letters();
          for (std::size_t j = 0; j < ball.size(); ++j) {
            const auto y = ball[j].letters();
            std::size_t cancel = 0;
            while (cancel < x.size() && cancel < y.size() &&
                   x[x.size() - 1 - cancel] == inverse_letter(y[cancel])) {
              ++cancel;
            }
            product.assign(x.begin(), x.end() - static_cast<std::ptrdiff_t>(cancel));
            product.insert(product.end(), y.begin() + static_cast<std::ptrdiff_t>(cancel), y.end());
            const std::int64_t d = values[i] + values[j] - small_qm(p, product);
            best = std::max(best, d < 0 ? -d : d);
          }
        }
        partial[t] = best;
      });
    }
  }
  return *std::max_element(partial.begin(), partial.end());
}

// A homogeneous quasimorphism scale * hbar_w with a certified defect bound.
struct QmDescriptor {
  BrooksPattern pattern;
  Rational scale;
  Rational defect_upper;               // scale * 2 * tripod bound
  Rational defect_upper_conservative;  // scale * 4 * tripod bound
  std::optional<FreeWord> base_element;
  std::vector<FreeWord> excluded;
  std::int64_t pattern_power = 1;  // pattern == core(base)^pattern_power

  Rational value(const FreeWord& g) const { return scale * homogeneous_value(pattern, g); }
};

inline QmDescriptor normalized_descriptor(BrooksPattern pattern, const FreeWord& base,
                                          std::int64_t pattern_power) {
  const Rational at_base = homogeneous_value(pattern, base);
  if (at_base <= Rational(0)) {
    throw InternalError("pattern \"" + to_string(pattern.word()) + "\" has value " +
                        to_string(at_base) + " at its own base element");
  }
  const Rational scale = Rational(1) / at_base;
  const Rational d = certified_defect_upper(pattern);
  return QmDescriptor{
      std::move(pattern),
      scale,
      scale * d * homogenization_factor,
      scale * d * conservative_homogenization_factor,
      base,
      {},
      pattern_power,
  };
}

// Quasimorphism with value exactly 1 at a, built from the pattern
// core(a)^N, N >= 2.
inline QmDescriptor gap_qm(const FreeWord& a) {
  if (a.empty()) throw InvalidInput("gap quasimorphism needs a nontrivial element");
  if (mirror_check(a)) {
    throw HypothesisViolation("\"" + to_string(a) + "\" is conjugate to its inverse");
  }
  const FreeWord core = cyclic_reduce(a).core.representative();
  const auto len = static_cast<std::int64_t>(core.size());
  const std::int64_t power_n = std::max<std::int64_t>(2, (2 + len - 1) / len);
  BrooksPattern pattern(power(core, power_n));

  // Any copy of the inverse pattern on the axis of a already shows up
  // inside three consecutive periods of the pattern.
  const FreeWord window = power(core, 3 * power_n);
  if (count_copies(window, pattern.inverse_word()) != 0) {
    throw InternalError("reverse copy of \"" + to_string(pattern.word()) + "\" found on the axis of \"" +
                        to_string(a) + "\"");
  }
  return normalized_descriptor(std::move(pattern), a, power_n);
}

// Whether some nonzero powers of a and b are conjugate.
inline bool commensurability_check(const FreeWord& a, const FreeWord& b) {
  if (a.empty() || b.empty()) throw InvalidInput("commensurability needs nontrivial elements");
  const FreeWord ra = primitive_root(cyclic_reduce(a).core.representative()).root;
  const FreeWord rb = primitive_root(cyclic_reduce(b).core.representative()).root;
  return is_rotation(ra, rb) || is_rotation(ra, invert(rb));
}

// Quasimorphism equal to 1 at a and 0 at every element of others.
inline QmDescriptor separating_qm(const FreeWord& a, const std::vector<FreeWord>& others) {
  if (a.empty()) throw InvalidInput("separating quasimorphism needs a nontrivial element");
  for (const auto& other : others) {
    if (other.empty()) throw InvalidInput("excluded elements must be nontrivial");
    if (commensurability_check(a, other)) {
      const FreeWord ra = primitive_root(cyclic_reduce(a).core.representative()).root;
      const FreeWord rb = primitive_root(cyclic_reduce(other).core.representative()).root;
      throw HypothesisViolation("\"" + to_string(a) + "\" and \"" + to_string(other) +
                                "\" are commensurable: primitive roots \"" + to_string(ra) +
                                "\" and \"" + to_string(rb) + "\" have conjugate powers");
    }
  }

  const FreeWord core = cyclic_reduce(a).core.representative();
  const auto len = static_cast<std::int64_t>(core.size());
  std::int64_t longest = 0;
  std::vector<CyclicWord> other_cores;
  for (const auto& other : others) {
    other_cores.push_back(cyclic_reduce(other).core);
    longest = std::max(longest, static_cast<std::int64_t>(other_cores.back().period()));
  }
  // Past this power a copy on the axis of some other element would carry two
  // periods long enough to force a common root (Fine-Wilf).
  const std::int64_t cap = std::max<std::int64_t>(2, (longest + len - 1) / len + 2);

  for (std::int64_t n = 2; n <= cap; ++n) {
    BrooksPattern pattern(power(core, n));
    const bool vanishes = std::all_of(other_cores.begin(), other_cores.end(), [&](const CyclicWord& c) {
      return cyclic_copy_density(c, pattern.word()) == Rational(0) &&
             cyclic_copy_density(c, pattern.inverse_word()) == Rational(0);
    });
    if (!vanishes) continue;
    QmDescriptor d = normalized_descriptor(std::move(pattern), a, n);
    d.excluded = others;
    for (const auto& other : others) {
      if (d.value(other) != Rational(0)) throw InternalError("separating quasimorphism does not vanish");
    }
    return d;
  }
  throw InternalError("no separating pattern power up to " + std::to_string(cap));
}

}  // namespace sclqm
