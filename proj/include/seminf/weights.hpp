#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "seminf/rational.hpp"

namespace seminf {

/// A weight, stored as rational coordinates in the basis of simple roots.
/// The root lattice Y is the subset with integer coordinates; the weight
/// lattice X additionally contains fractional points (e.g. for sl2, X is
/// identified with Z via m <-> (m/2) * alpha).
struct Weight {
  std::vector<Rat> c;

  Weight() = default;
  explicit Weight(int rank) : c(rank) {}
  explicit Weight(std::vector<Rat> coords) : c(std::move(coords)) {}

  int rank() const { return (int)c.size(); }

  static Weight zero(int rank) { return Weight(rank); }

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }
  bool is_integral() const {  // lies in the root lattice Y
    for (const auto& x : c)
      if (x.get_den() != 1) return false;
    return true;
  }
  bool is_nonneg() const {
    for (const auto& x : c)
      if (x < 0) return false;
    return true;
  }

  /// Sum of root coordinates ("height" when integral and nonnegative).
  Rat height() const {
    Rat h(0);
    for (const auto& x : c) h += x;
    return h;
  }

  Weight operator+(const Weight& o) const {
    check_rank(o);
    Weight r = *this;
    for (int i = 0; i < rank(); ++i) r.c[i] += o.c[i];
    return r;
  }
  Weight operator-(const Weight& o) const {
    check_rank(o);
    Weight r = *this;
    for (int i = 0; i < rank(); ++i) r.c[i] -= o.c[i];
    return r;
  }
  Weight operator-() const {
    Weight r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  Weight operator*(const Rat& s) const {
    Weight r = *this;
    for (auto& x : r.c) x *= s;
    return r;
  }
  Weight& operator+=(const Weight& o) { return *this = *this + o; }
  Weight& operator-=(const Weight& o) { return *this = *this - o; }

  bool operator==(const Weight& o) const { return c == o.c; }
  bool operator!=(const Weight& o) const { return !(c == o.c); }
  bool operator<(const Weight& o) const {  // lexicographic; total order for maps
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (size_t i = 0; i < c.size(); ++i) {
      int s = cmp(c[i], o.c[i]);
      if (s != 0) return s < 0;
    }
    return false;
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < rank(); ++i) {
      if (i) s += ",";
      s += rat_to_string(c[i]);
    }
    return s + ")";
  }

 private:
  void check_rank(const Weight& o) const {
    if (c.size() != o.c.size()) throw std::invalid_argument("Weight: rank mismatch");
  }
};

/// Simple root alpha_i as a weight (unit vector in root coordinates).
inline Weight simple_root(int rank, int i) {
  Weight w(rank);
  w.c[i] = 1;
  return w;
}

}  // namespace seminf
