#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sclqm/error.hpp"

namespace sclqm {

// A finite group given by its full multiplication table over 0..order-1.
class FiniteGroupTable {
 public:
  // Checks closure, associativity, identity and inverses. Throws InvalidInput.
  static FiniteGroupTable from_rows(const std::vector<std::vector<int>>& rows,
                                    const std::string& name = "group") {
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidInput(name + ": a group table needs at least one row");
    FiniteGroupTable g;
    g.order_ = static_cast<int>(n);
    g.product_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        throw InvalidInput(name + ": row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
      }
      for (int v : rows[i]) {
        if (v < 0 || v >= g.order_) {
          throw InvalidInput(name + ": entry " + std::to_string(v) + " in row " + std::to_string(i) +
                             " is out of range");
        }
        g.product_.push_back(v);
      }
    }

    g.identity_ = -1;
    for (int e = 0; e < g.order_ && g.identity_ < 0; ++e) {
      bool ok = true;
      for (int x = 0; x < g.order_ && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
      if (ok) g.identity_ = e;
    }
    if (g.identity_ < 0) throw InvalidInput(name + ": no identity element");

    g.inverse_.assign(n, -1);
    for (int x = 0; x < g.order_; ++x) {
      for (int y = 0; y < g.order_; ++y) {
        if (g.mul(x, y) == g.identity_ && g.mul(y, x) == g.identity_) {
          g.inverse_[static_cast<std::size_t>(x)] = y;
          break;
        }
      }
      if (g.inverse(x) < 0) throw InvalidInput(name + ": element " + std::to_string(x) + " has no inverse");
    }

    for (int x = 0; x < g.order_; ++x) {
      for (int y = 0; y < g.order_; ++y) {
        for (int z = 0; z < g.order_; ++z) {
          if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))) {
            throw InvalidInput(name + ": not associative at (" + std::to_string(x) + ", " +
                               std::to_string(y) + ", " + std::to_string(z) + ")");
          }
        }
      }
    }
    return g;
  }

  // Z/n with element k standing for k mod n.
  static FiniteGroupTable cyclic(int n) {
    if (n < 1) throw InvalidInput("cyclic group order must be positive");
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    }
    return from_rows(rows, "Z/" + std::to_string(n));
  }

  int order() const noexcept { return order_; }
  int identity() const noexcept { return identity_; }
  int inverse(int x) const { return inverse_[static_cast<std::size_t>(x)]; }
  int mul(int x, int y) const {
    return product_[static_cast<std::size_t>(x) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(y)];
  }
  bool contains(int x) const noexcept { return x >= 0 && x < order_; }

  int element_order(int x) const {
    int k = 1;
    for (int y = x; y != identity_; y = mul(y, x)) ++k;
    return k;
  }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(order_));
    for (int i = 0; i < order_; ++i) {
      for (int j = 0; j < order_; ++j) out[static_cast<std::size_t>(i)].push_back(mul(i, j));
    }
    return out;
  }

 private:
  FiniteGroupTable() = default;

  int order_ = 0;
  int identity_ = 0;
  std::vector<int> product_;
  std::vector<int> inverse_;
};

}  // namespace sclqm
