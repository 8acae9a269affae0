#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seminf/rational.hpp"

namespace seminf {

/// Element of the cyclotomic field Q(zeta_p), p an odd prime, represented by
/// its coordinates in the power basis 1, z, ..., z^{p-2} where z = zeta_p.
/// Products are reduced with z^{p-1} = -(1 + z + ... + z^{p-2}).
class Cyclo {
 public:
  Cyclo() : p_(0) {}  // uninitialized zero over "no field"; usable as zero
  explicit Cyclo(int p) : p_(p), c_(degree(p)) { check_prime(p); }
  Cyclo(int p, const Rat& r) : p_(p), c_(degree(p)) {
    check_prime(p);
    c_[0] = r;
  }

  static int degree(int p) { return p - 1; }

  static void check_prime(int p) {
    if (p < 3) throw std::invalid_argument("Cyclo: p must be an odd prime >= 3");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("Cyclo: p must be prime");
  }

  /// zeta_p^k for any integer k.
  static Cyclo zeta_pow(int p, long k) {
    Cyclo z(p);
    long e = ((k % p) + p) % p;
    if (e < p - 1) {
      z.c_[e] = 1;
    } else {  // z^{p-1} = -(1 + z + ... + z^{p-2})
      for (int i = 0; i < p - 1; ++i) z.c_[i] = -1;
    }
    return z;
  }

  static Cyclo zero(int p) { return Cyclo(p); }
  static Cyclo one(int p) { return Cyclo(p, Rat(1)); }

  int p() const { return p_; }
  const Rat& coord(int i) const { return c_[i]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Rat rational_part() const { return c_.empty() ? Rat(0) : c_[0]; }

  bool operator==(const Cyclo& o) const {
    if (is_zero() && o.is_zero()) return true;
    return p_ == o.p_ && c_ == o.c_;
  }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Cyclo& operator+=(const Cyclo& o) {
    if (promote_for(o)) return *this;
    for (int i = 0; i < p_ - 1; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) { return *this += -o; }

  Cyclo operator+(const Cyclo& o) const {
    Cyclo r = *this;
    r += o;
    return r;
  }
  Cyclo operator-(const Cyclo& o) const {
    Cyclo r = *this;
    r -= o;
    return r;
  }

  Cyclo operator*(const Cyclo& o) const {
    if (p_ == 0) return *this;
    if (o.p_ == 0) return o;
    require_same_field(o);
    int n = p_ - 1;
    std::vector<Rat> raw(2 * n - 1);
    for (int i = 0; i < n; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (o.c_[j] == 0) continue;
        raw[i + j] += c_[i] * o.c_[j];
      }
    }
    // Fold z^k for k >= p-1: z^{p-1} = -(1+...+z^{p-2}); z^p = 1, so higher
    // powers reduce via z^k = z^{k mod p} first.
    Cyclo r(p_);
    for (int k = 2 * n - 2; k >= 0; --k) {
      if (raw[k] == 0) continue;
      int e = k % p_;
      if (e < n) {
        r.c_[e] += raw[k];
      } else {
        for (int i = 0; i < n; ++i) r.c_[i] -= raw[k];
      }
    }
    return r;
  }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  Cyclo operator*(const Rat& s) const {
    Cyclo r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Multiplicative inverse, via solving (this) * x = 1 as a linear system
  /// over the power basis. Throws on zero.
  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("Cyclo::inverse: zero");
    int n = p_ - 1;
    // Columns: coordinates of (*this) * z^j.
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (int j = 0; j < n; ++j) {
      Cyclo col = *this * zeta_pow(p_, j);
      for (int i = 0; i < n; ++i) m[i][j] = col.c_[i];
    }
    m[0][n] = 1;  // rhs = 1
    // Gaussian elimination.
    for (int col = 0, row = 0; col < n && row < n; ++col) {
      int piv = -1;
      for (int r2 = row; r2 < n; ++r2)
        if (m[r2][col] != 0) {
          piv = r2;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[piv], m[row]);
      Rat d = m[row][col];
      for (int k = col; k <= n; ++k) m[row][k] /= d;
      for (int r2 = 0; r2 < n; ++r2) {
        if (r2 == row || m[r2][col] == 0) continue;
        Rat f = m[r2][col];
        for (int k = col; k <= n; ++k) m[r2][k] -= f * m[row][k];
      }
      ++row;
    }
    Cyclo x(p_);
    for (int i = 0; i < n; ++i) x.c_[i] = m[i][n];
    if ((*this * x) != one(p_)) throw std::domain_error("Cyclo::inverse: not invertible");
    return x;
  }

  Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }

  Cyclo pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo r = one(p_ ? p_ : 3);
    if (p_ == 0) throw std::domain_error("Cyclo::pow on uninitialized zero");
    r = one(p_);
    Cyclo b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  /// Field automorphism z -> z^k, gcd(k, p) = 1.
  Cyclo galois(long k) const {
    if (p_ == 0) return *this;
    Cyclo r(p_);
    for (int i = 0; i < p_ - 1; ++i) {
      if (c_[i] == 0) continue;
      r += zeta_pow(p_, (long)i * k) * c_[i];
    }
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = 0; i < p_ - 1; ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += rat_to_string(c_[i]);
      if (i >= 1) s += "*z^" + std::to_string(i);
    }
    return s;
  }

  size_t hash() const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](size_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix((size_t)p_);
    for (const auto& x : c_) {
      mix(std::hash<std::string>{}(x.get_num().get_str()));
      mix(std::hash<std::string>{}(x.get_den().get_str()));
    }
    return h;
  }

 private:
  void require_same_field(const Cyclo& o) const {
    if (p_ != o.p_) throw std::invalid_argument("Cyclo: mixed fields");
  }
  // Zero values with p_ == 0 coerce to the other operand's field.
  bool promote_for(const Cyclo& o) {
    if (p_ == 0) {
      *this = o;
      return true;
    }
    if (o.p_ == 0) return true;
    require_same_field(o);
    return false;
  }

  int p_;
  std::vector<Rat> c_;
};

inline Cyclo operator*(const Rat& s, const Cyclo& c) { return c * s; }

/// Quantum integer [m]_d = (z^{dm} - z^{-dm}) / (z^d - z^{-d}) in Q(zeta_p).
inline Cyclo quantum_int(int p, long m, long d = 1) {
  Cyclo num = Cyclo::zeta_pow(p, d * m) - Cyclo::zeta_pow(p, -d * m);
  Cyclo den = Cyclo::zeta_pow(p, d) - Cyclo::zeta_pow(p, -d);
  return num / den;
}

/// Quantum factorial [m]_d!
inline Cyclo quantum_factorial(int p, long m, long d = 1) {
  Cyclo r = Cyclo::one(p);
  for (long i = 2; i <= m; ++i) r *= quantum_int(p, i, d);
  return r;
}

/// Quantum binomial [m choose k]_d, defined by the product formula
/// prod_{i=1..k} [m - k + i]_d / [i]_d (valid whenever no [i]_d vanishes,
/// i.e. k < p when d is prime to p).
inline Cyclo quantum_binomial(int p, long m, long k, long d = 1) {
  if (k < 0) throw std::invalid_argument("quantum_binomial: k < 0");
  Cyclo r = Cyclo::one(p);
  for (long i = 1; i <= k; ++i) r *= quantum_int(p, m - k + i, d) / quantum_int(p, i, d);
  return r;
}

}  // namespace seminf
