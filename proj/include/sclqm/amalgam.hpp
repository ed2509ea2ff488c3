#pragma once

// Amalgamated free products A *_C B of finite groups.
//
// Elements are words of syllables, each syllable an element of A or of B.
// A word is reduced when its syllables alternate between the factors and
// none lies in the image of C (a single nontrivial syllable is also
// reduced). Reduced words are exactly the geodesics of the Cayley graph
// with generating set A u B.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sclqm/error.hpp"
#include "sclqm/finite_group.hpp"
#include "sclqm/rational.hpp"

namespace sclqm {

enum class Side : std::uint8_t { A, B };

constexpr Side other_side(Side s) noexcept { return s == Side::A ? Side::B : Side::A; }
constexpr char side_name(Side s) noexcept { return s == Side::A ? 'A' : 'B'; }

struct Syllable {
  Side side;
  int element;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

using AmalgamWord = std::vector<Syllable>;

inline std::string to_string(const Syllable& s) {
  return std::string(1, side_name(s.side)) + ":" + std::to_string(s.element);
}

inline std::string to_string(const AmalgamWord& w) {
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out.push_back(' ');
    out += to_string(s);
  }
  return out;
}

// Normal form t_1 ... t_k * tail: each t_i is the canonical representative
// of a nontrivial left coset t_i C in its factor, sides alternate, and tail
// is an element of C (by index in the C table). Two words define the same
// group element iff their normal forms are identical.
struct NormalForm {
  std::vector<Syllable> syllables;
  int tail = 0;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  friend auto operator<=>(const NormalForm&, const NormalForm&) = default;
};

struct AmalgamSpec {
  FiniteGroupTable a;
  FiniteGroupTable b;
  FiniteGroupTable c;
  std::vector<int> embed_a;  // C index -> A index
  std::vector<int> embed_b;  // C index -> B index
};

struct DoubleCosetWitness {
  int left;   // c, as a C index
  int right;  // c'
  std::size_t rotation;
  AmalgamWord conjugate_of_inverse;  // v, with c * w * c' == v
};

struct DoubleCosetResult {
  bool holds = true;
  std::size_t comparisons = 0;
  std::optional<DoubleCosetWitness> witness;
};

struct MirrorWitness {
  std::int64_t power;
  AmalgamWord conjugator;  // b with b w^n b^-1 == w^-n
};

struct AmalgamCyclicReduction {
  AmalgamWord core;
  AmalgamWord conjugator;  // w == conjugator * core * conjugator^-1
};

inline constexpr std::int64_t amalgam_defect_bound = 78;
inline constexpr std::int64_t amalgam_homogenization_factor = 4;
inline constexpr std::int64_t amalgam_homogenized_defect_bound =
    amalgam_defect_bound * amalgam_homogenization_factor;

// Extra copies the seam between two reduced blocks can add:
// c(uv) - c(u) - c(v) is in [0, amalgam_seam_bound].
inline constexpr std::int64_t amalgam_seam_bound = 2;

class Amalgam {
 public:
  // Validates the tables and embeddings and fixes the coset transversals.
  static Amalgam validate(AmalgamSpec spec) {
    Amalgam g(std::move(spec));
    g.check_embedding(Side::A);
    g.check_embedding(Side::B);
    g.build_transversal(Side::A);
    g.build_transversal(Side::B);
    return g;
  }

  const FiniteGroupTable& factor(Side s) const noexcept { return s == Side::A ? spec_.a : spec_.b; }
  const FiniteGroupTable& subgroup() const noexcept { return spec_.c; }
  const AmalgamSpec& spec() const noexcept { return spec_; }

  int embed(Side s, int c) const {
    return (s == Side::A ? spec_.embed_a : spec_.embed_b)[static_cast<std::size_t>(c)];
  }

  // C index of x if x lies in the image of C.
  std::optional<int> subgroup_index(Side s, int x) const {
    const int c = side_data(s).preimage[static_cast<std::size_t>(x)];
    return c < 0 ? std::nullopt : std::optional<int>(c);
  }

  int coset_representative(Side s, int x) const { return side_data(s).representative[static_cast<std::size_t>(x)]; }
  std::size_t nontrivial_coset_count(Side s) const { return side_data(s).nontrivial_representatives.size(); }

  void check_word(const AmalgamWord& w) const {
    for (const auto& s : w) {
      if (!factor(s.side).contains(s.element)) {
        throw InvalidInput("syllable " + to_string(s) + " is out of range for a factor of order " +
                           std::to_string(factor(s.side).order()));
      }
    }
  }

  NormalForm normal_form(const AmalgamWord& w) const {
    check_word(w);
    NormalForm nf{{}, spec_.c.identity()};
    for (const auto& s : w) append(nf, s);
    return nf;
  }

  bool equal(const AmalgamWord& u, const AmalgamWord& v) const { return normal_form(u) == normal_form(v); }

  NormalForm multiply(const AmalgamWord& u, const AmalgamWord& v) const {
    NormalForm nf = normal_form(u);
    check_word(v);
    for (const auto& s : v) append(nf, s);
    return nf;
  }

  NormalForm invert(const AmalgamWord& u) const { return normal_form(inverse_word(u)); }

  // Syllable-wise inverse in reverse order; reduced words stay reduced.
  AmalgamWord inverse_word(const AmalgamWord& u) const {
    AmalgamWord out;
    out.reserve(u.size());
    for (auto it = u.rbegin(); it != u.rend(); ++it) out.push_back({it->side, factor(it->side).inverse(it->element)});
    return out;
  }

  // The reduced spelling t_1 ... (t_k * tail) of a normal form.
  AmalgamWord to_word(const NormalForm& nf) const {
    AmalgamWord out = nf.syllables;
    if (out.empty()) {
      if (nf.tail != spec_.c.identity()) out.push_back({Side::A, embed(Side::A, nf.tail)});
      return out;
    }
    Syllable& last = out.back();
    last.element = factor(last.side).mul(last.element, embed(last.side, nf.tail));
    return out;
  }

  AmalgamWord reduce(const AmalgamWord& w) const { return to_word(normal_form(w)); }

  bool is_reduced(const AmalgamWord& w) const {
    check_word(w);
    if (w.size() == 1) return w[0].element != factor(w[0].side).identity();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (subgroup_index(w[i].side, w[i].element)) return false;
      if (i > 0 && w[i].side == w[i - 1].side) return false;
    }
    return true;
  }

  // Cyclically reduced: reduced, and for length >= 2 the end syllables lie
  // in different factors.
  bool is_cyclically_reduced(const AmalgamWord& w) const {
    return is_reduced(w) && (w.size() < 2 || w.front().side != w.back().side);
  }

  AmalgamCyclicReduction cyclically_reduce(const AmalgamWord& w) const {
    AmalgamWord core = reduce(w);
    AmalgamWord conjugator;
    while (core.size() >= 2 && core.front().side == core.back().side) {
      const Syllable last = core.back();
      // core == last^-1 * (last * core * last^-1) * last
      AmalgamWord shifted{last};
      shifted.insert(shifted.end(), core.begin(), core.end());
      shifted.push_back({last.side, factor(last.side).inverse(last.element)});
      core = reduce(shifted);
      conjugator.push_back({last.side, factor(last.side).inverse(last.element)});
    }
    return {core, reduce(conjugator)};
  }

  // For w reduced, cyclically reduced, |w| > 1: checks that no c w c' with
  // c, c' in C equals a cyclic conjugate of w^-1.
  DoubleCosetResult double_coset_condition(const AmalgamWord& w) const {
    require_cyclic_input(w, "double coset condition");
    const AmalgamWord inverse = inverse_word(w);
    const auto& c = spec_.c;
    DoubleCosetResult result;
    for (std::size_t k = 0; k < inverse.size(); ++k) {
      AmalgamWord v(inverse.begin() + static_cast<std::ptrdiff_t>(k), inverse.end());
      v.insert(v.end(), inverse.begin(), inverse.begin() + static_cast<std::ptrdiff_t>(k));
      const NormalForm target = normal_form(v);
      for (int left = 0; left < c.order(); ++left) {
        for (int right = 0; right < c.order(); ++right) {
          ++result.comparisons;
          AmalgamWord twisted{{Side::A, embed(Side::A, left)}};
          twisted.insert(twisted.end(), w.begin(), w.end());
          twisted.push_back({Side::A, embed(Side::A, right)});
          if (normal_form(twisted) == target) {
            result.holds = false;
            result.witness = DoubleCosetWitness{left, right, k, v};
            return result;
          }
        }
      }
    }
    return result;
  }

  // Maximum, over all reduced spellings of g, of the number of disjoint
  // blocks of consecutive syllables whose labels equal w exactly.
  //
  // The reduced spellings of s_1 ... s_m are the twists
  //   s_i -> c_{i-1}^-1 s_i c_i,   c_0 = c_m = 1,
  // so a left-to-right pass over (twist c_i, progress into a copy) finds the
  // best choice in O(m |C|^2 |w|).
  std::int64_t counting_value(const AmalgamWord& w, const AmalgamWord& g) const {
    check_word(w);
    if (w.size() < 2) throw InvalidInput("amalgam counting pattern must have at least 2 syllables");
    const AmalgamWord spelling = reduce(g);
    if (spelling.empty()) return 0;

    constexpr std::int64_t dead = std::numeric_limits<std::int64_t>::min();
    const auto& c = spec_.c;
    const std::size_t order = static_cast<std::size_t>(c.order());
    const std::size_t len = w.size();
    auto idx = [len](std::size_t twist, std::size_t progress) { return twist * len + progress; };

    std::vector<std::int64_t> current(order * len, dead);
    std::vector<std::int64_t> next(order * len, dead);
    current[idx(static_cast<std::size_t>(c.identity()), 0)] = 0;

    for (std::size_t i = 0; i < spelling.size(); ++i) {
      const bool last = i + 1 == spelling.size();
      const Syllable& s = spelling[i];
      const auto& group = factor(s.side);
      std::fill(next.begin(), next.end(), dead);
      for (std::size_t prev = 0; prev < order; ++prev) {
        const int left = group.mul(embed(s.side, c.inverse(static_cast<int>(prev))), s.element);
        for (std::size_t twist = 0; twist < order; ++twist) {
          if (last && static_cast<int>(twist) != c.identity()) continue;
          const Syllable label{s.side, group.mul(left, embed(s.side, static_cast<int>(twist)))};
          for (std::size_t progress = 0; progress < len; ++progress) {
            const std::int64_t value = current[idx(prev, progress)];
            if (value == dead) continue;
            auto relax = [&](std::size_t p, std::int64_t v) {
              std::int64_t& cell = next[idx(twist, p)];
              cell = std::max(cell, v);
            };
            if (progress == 0) relax(0, value);
            if (label == w[progress]) {
              if (progress + 1 == len) {
                relax(0, value + 1);
              } else {
                relax(progress + 1, value);
              }
            }
          }
        }
      }
      std::swap(current, next);
    }
    const std::int64_t result = current[idx(static_cast<std::size_t>(c.identity()), 0)];
    if (result == dead) throw InternalError("counting pass lost every state");
    return result;
  }

  // h = c_w - c_{w^-1}.
  std::int64_t quasimorphism(const AmalgamWord& w, const AmalgamWord& g) const {
    return counting_value(w, g) - counting_value(inverse_word(w), g);
  }

  // Bracket for lim h(g^n)/n from n = n_max. Both counting functions are
  // superadditive on powers of a cyclically reduced core and exceed
  // additivity by at most the seam bound, so each limit lies in
  // [c(g^n)/n, (c(g^n) + seam)/n]. Elements with a core of length <= 1
  // have finite order and homogenize to 0.
  RationalInterval homogeneous_interval(const AmalgamWord& w, const AmalgamWord& g,
                                        std::int64_t n_max) const {
    if (n_max < 8) throw InvalidInput("n_max must be at least 8");
    const AmalgamWord core = cyclically_reduce(g).core;
    if (core.size() <= 1) return {Rational(0), Rational(0)};
    const AmalgamWord powered = repeat(core, n_max);
    const std::int64_t forward = counting_value(w, powered);
    const std::int64_t backward = counting_value(inverse_word(w), powered);
    return {Rational(forward - backward - amalgam_seam_bound, n_max),
            Rational(forward - backward + amalgam_seam_bound, n_max)};
  }

  AmalgamWord repeat(const AmalgamWord& w, std::int64_t n) const {
    AmalgamWord out;
    out.reserve(w.size() * static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    for (std::int64_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
  }

  std::size_t ball_size(std::size_t radius) const {
    std::size_t sequences = 1;
    for (std::size_t k = 1; k <= radius; ++k) {
      for (Side start : {Side::A, Side::B}) {
        std::size_t count = 1;
        Side s = start;
        for (std::size_t i = 0; i < k; ++i, s = other_side(s)) count *= nontrivial_coset_count(s);
        sequences += count;
      }
    }
    return sequences * static_cast<std::size_t>(spec_.c.order());
  }

  // Every element whose normal form has at most radius coset syllables, with
  // any tail in C, in a fixed order.
  std::vector<NormalForm> ball_enumerate(std::size_t radius, std::size_t cap) const {
    const std::size_t size = ball_size(radius);
    if (size > cap) {
      throw LimitExceeded("amalgam ball of radius " + std::to_string(radius) + " has " +
                          std::to_string(size) + " elements, above the cap of " + std::to_string(cap));
    }
    std::vector<std::vector<Syllable>> prefixes{{}};
    std::size_t layer_begin = 0;
    for (std::size_t k = 1; k <= radius; ++k) {
      const std::size_t layer_end = prefixes.size();
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        for (Side s : {Side::A, Side::B}) {
          if (!prefixes[i].empty() && prefixes[i].back().side == s) continue;
          for (int rep : side_data(s).nontrivial_representatives) {
            auto extended = prefixes[i];
            extended.push_back({s, rep});
            prefixes.push_back(std::move(extended));
          }
        }
      }
      layer_begin = layer_end;
    }
    std::vector<NormalForm> ball;
    ball.reserve(size);
    for (const auto& p : prefixes) {
      for (int t = 0; t < spec_.c.order(); ++t) ball.push_back({p, t});
    }
    return ball;
  }

  std::int64_t defect_lower_bound(const AmalgamWord& w, std::size_t radius, std::size_t cap) const {
    const auto ball = ball_enumerate(radius, cap);
    std::vector<AmalgamWord> words;
    std::vector<std::int64_t> values;
    words.reserve(ball.size());
    values.reserve(ball.size());
    for (const auto& nf : ball) {
      words.push_back(to_word(nf));
      values.push_back(quasimorphism(w, words.back()));
    }
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    std::vector<std::int64_t> partial(workers, 0);
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          std::int64_t best = 0;
          for (std::size_t i = t; i < words.size(); i += workers) {
            for (std::size_t j = 0; j < words.size(); ++j) {
              const AmalgamWord product = to_word(multiply(words[i], words[j]));
              const std::int64_t d = values[i] + values[j] - quasimorphism(w, product);
              best = std::max(best, d < 0 ? -d : d);
            }
          }
          partial[t] = best;
        });
      }
    }
    return *std::max_element(partial.begin(), partial.end());
  }

  // Searches n = 1..max_power for b with b w^n b^-1 == w^-n. For a core of
  // length >= 2 this is exhaustive at each n: conjugate cyclically reduced
  // elements differ by a cyclic permutation followed by conjugation by C.
  std::optional<MirrorWitness> mirror_check(const AmalgamWord& w, std::int64_t max_power) const {
    const auto [core, outer] = cyclically_reduce(w);
    if (core.empty()) throw InvalidInput("mirror check needs a nontrivial element");
    auto lift = [&](const AmalgamWord& b) {
      AmalgamWord full = outer;
      full.insert(full.end(), b.begin(), b.end());
      const AmalgamWord outer_inv = inverse_word(outer);
      full.insert(full.end(), outer_inv.begin(), outer_inv.end());
      return reduce(full);
    };
    if (core.size() == 1) {
      // Finite order: w^n == 1 == w^-n at n = order.
      const Syllable s = core.front();
      return MirrorWitness{factor(s.side).element_order(s.element), {}};
    }
    const auto& c = spec_.c;
    for (std::int64_t n = 1; n <= max_power; ++n) {
      const AmalgamWord forward = repeat(core, n);
      const AmalgamWord backward = inverse_word(forward);
      for (std::size_t k = 0; k < core.size(); ++k) {
        const AmalgamWord prefix(backward.begin(), backward.begin() + static_cast<std::ptrdiff_t>(k));
        AmalgamWord rotated(backward.begin() + static_cast<std::ptrdiff_t>(k), backward.end());
        rotated.insert(rotated.end(), prefix.begin(), prefix.end());
        const NormalForm target = normal_form(rotated);
        for (int x = 0; x < c.order(); ++x) {
          const Syllable cx{Side::A, embed(Side::A, x)};
          const Syllable cx_inv{Side::A, embed(Side::A, c.inverse(x))};
          AmalgamWord conj{cx};
          conj.insert(conj.end(), forward.begin(), forward.end());
          conj.push_back(cx_inv);
          if (normal_form(conj) != target) continue;
          AmalgamWord b = prefix;
          b.push_back(cx);
          MirrorWitness witness{n, lift(reduce(b))};
          if (!verify_mirror(w, witness)) throw InternalError("mirror witness failed verification");
          return witness;
        }
      }
    }
    return std::nullopt;
  }

  bool verify_mirror(const AmalgamWord& w, const MirrorWitness& m) const {
    AmalgamWord lhs = m.conjugator;
    const AmalgamWord wn = repeat(w, m.power);
    lhs.insert(lhs.end(), wn.begin(), wn.end());
    const AmalgamWord b_inv = inverse_word(m.conjugator);
    lhs.insert(lhs.end(), b_inv.begin(), b_inv.end());
    return normal_form(lhs) == normal_form(inverse_word(wn));
  }

  void require_cyclic_input(const AmalgamWord& w, const std::string& what) const {
    if (!is_reduced(w)) throw InvalidInput(what + ": \"" + to_string(w) + "\" is not a reduced word");
    if (w.size() <= 1) {
      throw HypothesisViolation(what + ": \"" + to_string(w) + "\" must have more than one syllable");
    }
    if (!is_cyclically_reduced(w)) {
      throw HypothesisViolation(what + ": \"" + to_string(w) + "\" is not cyclically reduced");
    }
  }

 private:
  struct SideData {
    std::vector<int> preimage;        // factor element -> C index, or -1
    std::vector<int> representative;  // factor element -> canonical coset rep
    std::vector<int> remainder;       // x == representative[x] * embed(remainder[x])
    std::vector<int> nontrivial_representatives;
  };

  explicit Amalgam(AmalgamSpec spec) : spec_(std::move(spec)) {}

  const SideData& side_data(Side s) const noexcept { return s == Side::A ? a_data_ : b_data_; }
  SideData& side_data(Side s) noexcept { return s == Side::A ? a_data_ : b_data_; }

  void check_embedding(Side s) const {
    const std::string name = std::string("embed ") + side_name(s);
    const auto& map = s == Side::A ? spec_.embed_a : spec_.embed_b;
    const auto& g = factor(s);
    const auto& c = spec_.c;
    if (map.size() != static_cast<std::size_t>(c.order())) {
      throw InvalidInput(name + ": expected " + std::to_string(c.order()) + " images, got " +
                         std::to_string(map.size()));
    }
    for (int x : map) {
      if (!g.contains(x)) throw InvalidInput(name + ": image " + std::to_string(x) + " out of range");
    }
    std::vector<bool> hit(static_cast<std::size_t>(g.order()), false);
    for (int x : map) {
      if (hit[static_cast<std::size_t>(x)]) throw InvalidInput(name + ": not injective (element " + std::to_string(x) + " hit twice)");
      hit[static_cast<std::size_t>(x)] = true;
    }
    for (int x = 0; x < c.order(); ++x) {
      for (int y = 0; y < c.order(); ++y) {
        if (map[static_cast<std::size_t>(c.mul(x, y))] !=
            g.mul(map[static_cast<std::size_t>(x)], map[static_cast<std::size_t>(y)])) {
          throw InvalidInput(name + ": not a homomorphism at (" + std::to_string(x) + ", " +
                             std::to_string(y) + ")");
        }
      }
    }
    if (c.order() >= g.order()) {
      throw InvalidInput(name + ": C must be a proper subgroup of " + std::string(1, side_name(s)));
    }
  }

  void build_transversal(Side s) {
    const auto& g = factor(s);
    const auto& c = spec_.c;
    SideData& d = side_data(s);
    const auto n = static_cast<std::size_t>(g.order());
    d.preimage.assign(n, -1);
    for (int x = 0; x < c.order(); ++x) d.preimage[static_cast<std::size_t>(embed(s, x))] = x;
    d.representative.assign(n, -1);
    d.remainder.assign(n, -1);
    for (int x = 0; x < g.order(); ++x) {
      int rep = x;
      for (int k = 0; k < c.order(); ++k) rep = std::min(rep, g.mul(x, embed(s, k)));
      d.representative[static_cast<std::size_t>(x)] = rep;
      d.remainder[static_cast<std::size_t>(x)] =
          d.preimage[static_cast<std::size_t>(g.mul(g.inverse(rep), x))];
      if (rep == x && d.preimage[static_cast<std::size_t>(x)] < 0) {
        d.nontrivial_representatives.push_back(x);
      }
    }
  }

  // nf := nf * s
  void append(NormalForm& nf, const Syllable& s) const {
    const auto& g = factor(s.side);
    int y = g.mul(embed(s.side, nf.tail), s.element);
    if (!nf.syllables.empty() && nf.syllables.back().side == s.side) {
      y = g.mul(nf.syllables.back().element, y);
      nf.syllables.pop_back();
    }
    const SideData& d = side_data(s.side);
    if (const int c = d.preimage[static_cast<std::size_t>(y)]; c >= 0) {
      nf.tail = c;
      return;
    }
    nf.syllables.push_back({s.side, d.representative[static_cast<std::size_t>(y)]});
    nf.tail = d.remainder[static_cast<std::size_t>(y)];
  }

  AmalgamSpec spec_;
  SideData a_data_;
  SideData b_data_;
};

// Certificate that scl(w) >= 1/624 in A *_C B.
struct AmalgamCertificate {
  AmalgamWord word;
  DoubleCosetResult double_coset;
  std::vector<std::int64_t> power_values;  // h(w^n) for n = 1..power_values.size()
  RationalInterval homogeneous;            // bracket for hbar(w) at n_max
  std::int64_t n_max;
  std::int64_t defect_bound = amalgam_defect_bound;
  std::int64_t homogenized_defect_bound = amalgam_homogenized_defect_bound;
  Rational normalized_value{1};  // hbar scaled so its value at w is 1
  Rational scl_lower;
};

// h(w^n) >= n with no reverse counting gives hbar(w) >= 1. Scaling hbar down
// to value 1 at w only shrinks the defect bound 4 * 78, so
// scl(w) >= 1 / (2 * 312).
inline AmalgamCertificate certify_scl_lower(const Amalgam& g, const AmalgamWord& w,
                                                std::int64_t growth_checks = 8,
                                                std::int64_t n_max = 16) {
  g.require_cyclic_input(w, "certificate");
  DoubleCosetResult dc = g.double_coset_condition(w);
  if (!dc.holds) {
    const auto& wit = *dc.witness;
    throw HypothesisViolation("double coset condition fails for \"" + to_string(w) + "\": c=" +
                              std::to_string(wit.left) + ", c'=" + std::to_string(wit.right) +
                              " give c w c' = \"" + to_string(wit.conjugate_of_inverse) +
                              "\", a cyclic conjugate of the inverse");
  }
  AmalgamCertificate cert{w, dc, {}, {}, n_max, amalgam_defect_bound, amalgam_homogenized_defect_bound, Rational(1), Rational(0)};
  for (std::int64_t n = 1; n <= growth_checks; ++n) {
    const AmalgamWord wn = g.repeat(w, n);
    const std::int64_t h = g.quasimorphism(w, wn);
    if (h < n) {
      throw InternalError("h(w^" + std::to_string(n) + ") = " + std::to_string(h) +
                          " despite the double coset condition");
    }
    cert.power_values.push_back(h);
  }
  cert.homogeneous = g.homogeneous_interval(w, w, n_max);
  if (cert.homogeneous.upper < Rational(1)) throw InternalError("homogeneous bracket excludes values >= 1");
  cert.scl_lower = cert.normalized_value / (2 * cert.homogenized_defect_bound);
  return cert;
}

}  // namespace sclqm
