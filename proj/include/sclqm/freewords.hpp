#pragma once

// Exact word algebra in a finitely generated free group.
//
// Letters are nonzero signed integers: +i is the i-th free generator and -i
// its inverse. In text form generator i is the i-th lowercase letter and its
// inverse the matching uppercase letter, so "abAB" is the commutator [a,b]
// and the empty string is the identity.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sclqm/error.hpp"
#include "sclqm/mean_cycle.hpp"
#include "sclqm/rational.hpp"

namespace sclqm {

using Letter = std::int32_t;

constexpr Letter inverse_letter(Letter x) noexcept { return -x; }

class Alphabet {
 public:
  explicit Alphabet(int rank) : rank_(rank) {
    if (rank < 1) throw InvalidInput("alphabet rank must be at least 1");
    if (rank > 26) throw InvalidInput("alphabet rank must be at most 26 (letters a..z)");
  }

  int rank() const noexcept { return rank_; }

  bool contains(Letter x) const noexcept { return x != 0 && x >= -rank_ && x <= rank_; }

  // a, A, b, B, ... ; the enumeration order used for balls and searches.
  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    out.reserve(2 * static_cast<std::size_t>(rank_));
    for (Letter i = 1; i <= rank_; ++i) {
      out.push_back(i);
      out.push_back(-i);
    }
    return out;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int rank_;
};

// A freely reduced word. Every constructor path reduces, so a FreeWord is
// always a geodesic in the Cayley tree and size() is its word length.
class FreeWord {
 public:
  FreeWord() = default;

  // Free reduction by the usual stack scan. Does not range-check letters.
  static FreeWord reduce(std::span<const Letter> raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (Letter x : raw) {
      if (x == 0) throw InvalidInput("letter 0 is not a valid generator");
      if (!out.empty() && out.back() == inverse_letter(x)) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return FreeWord(std::move(out));
  }

  static FreeWord reduce(std::initializer_list<Letter> raw) {
    return reduce(std::span<const Letter>(raw.begin(), raw.size()));
  }

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  bool is_cyclically_reduced() const noexcept {
    return letters_.size() < 2 || letters_.front() != inverse_letter(letters_.back());
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

  // Shortlex, with letters ordered a < A < b < B < ...
  friend std::strong_ordering operator<=>(const FreeWord& u, const FreeWord& v) {
    if (u.size() != v.size()) return u.size() <=> v.size();
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] != v[i]) return letter_rank(u[i]) <=> letter_rank(v[i]);
    }
    return std::strong_ordering::equal;
  }

 private:
  explicit FreeWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static int letter_rank(Letter x) noexcept { return x > 0 ? 2 * x : 2 * (-x) + 1; }

  std::vector<Letter> letters_;
};

// Reduction with range checking against an alphabet.
inline FreeWord reduce(const Alphabet& alphabet, std::span<const Letter> raw) {
  for (Letter x : raw) {
    if (!alphabet.contains(x)) {
      throw InvalidInput("letter " + std::to_string(x) + " is outside an alphabet of rank " +
                         std::to_string(alphabet.rank()));
    }
  }
  return FreeWord::reduce(raw);
}

inline FreeWord parse_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> raw;
  raw.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    Letter x = 0;
    if (ch >= 'a' && ch <= 'z') {
      x = ch - 'a' + 1;
    } else if (ch >= 'A' && ch <= 'Z') {
      x = -(ch - 'A' + 1);
    } else {
      throw InvalidInput("malformed word \"" + std::string(text) + "\": unexpected character '" +
                         std::string(1, ch) + "' at offset " + std::to_string(i));
    }
    if (!alphabet.contains(x)) {
      throw InvalidInput("malformed word \"" + std::string(text) + "\": letter '" +
                         std::string(1, ch) + "' exceeds rank " +
                         std::to_string(alphabet.rank()));
    }
    raw.push_back(x);
  }
  return FreeWord::reduce(raw);
}

inline std::string to_string(std::span<const Letter> letters) {
  std::string out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    const Letter g = x > 0 ? x : -x;
    if (g > 26) throw InvalidInput("generator index " + std::to_string(g) + " has no text form");
    out.push_back(static_cast<char>((x > 0 ? 'a' : 'A') + g - 1));
  }
  return out;
}

inline std::string to_string(const FreeWord& w) { return to_string(w.letters()); }

inline FreeWord multiply(const FreeWord& u, const FreeWord& v) {
  std::vector<Letter> raw(u.letters().begin(), u.letters().end());
  raw.insert(raw.end(), v.letters().begin(), v.letters().end());
  return FreeWord::reduce(raw);
}

inline FreeWord invert(const FreeWord& u) {
  std::vector<Letter> raw(u.letters().rbegin(), u.letters().rend());
  for (Letter& x : raw) x = inverse_letter(x);
  return FreeWord::reduce(raw);
}

inline FreeWord power(const FreeWord& u, std::int64_t n) {
  if (n < 0) return power(invert(u), -n);
  std::vector<Letter> raw;
  raw.reserve(u.size() * static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) raw.insert(raw.end(), u.letters().begin(), u.letters().end());
  return FreeWord::reduce(raw);
}

inline FreeWord conjugate(const FreeWord& by, const FreeWord& u) {
  return multiply(multiply(by, u), invert(by));
}

inline FreeWord commutator(const FreeWord& x, const FreeWord& y) {
  return multiply(multiply(x, y), multiply(invert(x), invert(y)));
}

// Left rotation by k letters. Only meaningful on cyclically reduced words,
// where every rotation is again reduced.
inline FreeWord rotate(const FreeWord& u, std::size_t k) {
  if (u.empty()) return u;
  std::vector<Letter> raw(u.letters().begin(), u.letters().end());
  std::rotate(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(k % raw.size()), raw.end());
  return FreeWord::reduce(raw);
}

inline bool is_rotation(const FreeWord& u, const FreeWord& v) {
  if (u.size() != v.size()) return false;
  if (u.empty()) return true;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (std::equal(v.letters().begin(), v.letters().end() - static_cast<std::ptrdiff_t>(k),
                   u.letters().begin() + static_cast<std::ptrdiff_t>(k)) &&
        std::equal(v.letters().end() - static_cast<std::ptrdiff_t>(k), v.letters().end(),
                   u.letters().begin())) {
      return true;
    }
  }
  return false;
}

// A conjugacy class of nontrivial elements, held as a cyclically reduced
// representative. Equality is equality up to rotation.
class CyclicWord {
 public:
  explicit CyclicWord(FreeWord representative) : representative_(std::move(representative)) {
    if (representative_.empty()) throw InvalidInput("a cyclic word must be nontrivial");
    if (!representative_.is_cyclically_reduced()) {
      throw InvalidInput("cyclic word representative \"" + to_string(representative_) +
                         "\" is not cyclically reduced");
    }
  }

  const FreeWord& representative() const noexcept { return representative_; }
  std::size_t period() const noexcept { return representative_.size(); }

  friend bool operator==(const CyclicWord& u, const CyclicWord& v) {
    return is_rotation(u.representative_, v.representative_);
  }

 private:
  FreeWord representative_;
};

struct CyclicReduction {
  CyclicWord core;
  FreeWord conjugator;  // u == conjugator * core * conjugator^-1
};

inline CyclicReduction cyclic_reduce(const FreeWord& u) {
  if (u.empty()) throw InvalidInput("the identity has no cyclic core");
  std::size_t strip = 0;
  const std::size_t n = u.size();
  while (2 * strip + 1 < n && u[strip] == inverse_letter(u[n - 1 - strip])) ++strip;
  auto letters = u.letters();
  return CyclicReduction{
      CyclicWord(FreeWord::reduce(letters.subspan(strip, n - 2 * strip))),
      FreeWord::reduce(letters.first(strip)),
  };
}

inline bool are_conjugate(const FreeWord& u, const FreeWord& v) {
  if (u.empty() || v.empty()) return u.empty() && v.empty();
  return cyclic_reduce(u).core == cyclic_reduce(v).core;
}

// Stable length of u acting on the Cayley tree: the length of its cyclic core.
inline std::size_t translation_length(const FreeWord& u) {
  return u.empty() ? 0 : cyclic_reduce(u).core.period();
}

// Whether some power u^n (n > 0) is conjugate to u^-n. Roots in a free group
// are unique, so this reduces to u ~ u^-1, which never holds for u != 1.
inline bool mirror_check(const FreeWord& u) {
  if (u.empty()) throw InvalidInput("mirror check needs a nontrivial element");
  return are_conjugate(u, invert(u));
}

struct PrimitiveRoot {
  FreeWord root;
  std::int64_t exponent;
};

// u == root^exponent with exponent maximal. u need not be cyclically
// reduced: the conjugator is peeled off and restored around the root.
inline PrimitiveRoot primitive_root(const FreeWord& u) {
  if (u.empty()) throw InvalidInput("the identity has no primitive root");
  const auto [core, conjugator] = cyclic_reduce(u);
  const FreeWord& c = core.representative();
  const std::size_t n = c.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = c[i] == c[i - d];
    if (periodic) {
      FreeWord root = FreeWord::reduce(c.letters().first(d));
      return PrimitiveRoot{conjugate(conjugator, root), static_cast<std::int64_t>(n / d)};
    }
  }
  throw InternalError("primitive root scan fell through");
}

inline bool occurs_at(std::span<const Letter> host, std::size_t pos, std::span<const Letter> pattern) {
  if (pos + pattern.size() > host.size()) return false;
  return std::equal(pattern.begin(), pattern.end(), host.begin() + static_cast<std::ptrdiff_t>(pos));
}

// Maximum number of pairwise disjoint occurrences of pattern as a block of
// consecutive letters in host. All occurrences have the same length, so the
// leftmost-greedy scan is an optimal interval schedule.
inline std::int64_t count_copies(std::span<const Letter> host, std::span<const Letter> pattern) {
  if (pattern.empty()) throw InvalidInput("cannot count copies of the empty word");
  std::int64_t count = 0;
  std::size_t pos = 0;
  while (pos + pattern.size() <= host.size()) {
    if (occurs_at(host, pos, pattern)) {
      ++count;
      pos += pattern.size();
    } else {
      ++pos;
    }
  }
  return count;
}

inline std::int64_t count_copies(const FreeWord& host, const FreeWord& pattern) {
  return count_copies(host.letters(), pattern.letters());
}

// Exact limit of count_copies(core^n, pattern) / n.
//
// Nodes are (i, j): i is the position mod the period of the next letter to
// read and j the number of letters of a copy already consumed (0 = not inside
// a copy). Every edge consumes one letter; finishing a copy earns 1. A copy
// may only start at i if the whole pattern matches the periodic word there.
// The best long-run reward per letter is the maximum mean cycle, and one
// period holds core.period() letters.
inline Rational cyclic_copy_density(const CyclicWord& core, const FreeWord& pattern) {
  if (pattern.empty()) throw InvalidInput("cannot count copies of the empty word");
  const FreeWord& c = core.representative();
  const std::size_t period = c.size();
  const std::size_t m = pattern.size();

  std::vector<bool> starts(period, false);
  for (std::size_t i = 0; i < period; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < m && match; ++j) match = c[(i + j) % period] == pattern[j];
    starts[i] = match;
  }

  auto node = [m](std::size_t i, std::size_t j) { return i * m + j; };
  std::vector<WeightedEdge> edges;
  edges.reserve(period * (m + 1));
  for (std::size_t i = 0; i < period; ++i) {
    const std::size_t next = (i + 1) % period;
    edges.push_back({node(i, 0), node(next, 0), 0});
    if (starts[i]) {
      if (m == 1) {
        edges.push_back({node(i, 0), node(next, 0), 1});
      } else {
        edges.push_back({node(i, 0), node(next, 1), 0});
      }
    }
    for (std::size_t j = 1; j < m; ++j) {
      if (j + 1 == m) {
        edges.push_back({node(i, j), node(next, 0), 1});
      } else {
        edges.push_back({node(i, j), node(next, j + 1), 0});
      }
    }
  }

  const auto mean = max_mean_cycle(period * m, edges);
  if (!mean) throw InternalError("occurrence graph has no cycle");
  return *mean * static_cast<std::int64_t>(period);
}

// Exponent sum of each generator; the image in the abelianization Z^rank.
inline std::vector<std::int64_t> exponent_sums(const FreeWord& u, const Alphabet& alphabet) {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(alphabet.rank()), 0);
  for (Letter x : u.letters()) {
    if (!alphabet.contains(x)) throw InvalidInput("letter outside alphabet");
    sums[static_cast<std::size_t>((x > 0 ? x : -x) - 1)] += x > 0 ? 1 : -1;
  }
  return sums;
}

// All reduced words of length <= radius in shortlex order.
inline std::vector<FreeWord> enumerate_ball(const Alphabet& alphabet, std::size_t radius,
                                            std::size_t cap) {
  const auto letters = alphabet.letters();
  std::size_t size = 1;
  std::size_t sphere = 1;
  for (std::size_t r = 1; r <= radius; ++r) {
    sphere = (r == 1) ? letters.size() : sphere * (letters.size() - 1);
    size += sphere;
    if (size > cap) {
      throw LimitExceeded("ball of radius " + std::to_string(radius) + " exceeds the cap of " +
                          std::to_string(cap) + " elements");
    }
  }

  std::vector<FreeWord> ball;
  ball.reserve(size);
  ball.emplace_back();
  std::size_t layer_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t layer_end = ball.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Letter x : letters) {
        const FreeWord& u = ball[i];
        if (!u.empty() && u.back() == inverse_letter(x)) continue;
        std::vector<Letter> raw(u.letters().begin(), u.letters().end());
        raw.push_back(x);
        ball.push_back(FreeWord::reduce(raw));
      }
    }
    layer_begin = layer_end;
  }
  return ball;
}

}  // namespace sclqm
