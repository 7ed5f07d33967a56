#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cubemedian {

/// Exact rational on int64, always normalized (gcd 1, positive denominator).
/// Desk-scale matrices keep entries tiny; arithmetic goes through __int128
/// before normalization so intermediate products cannot wrap.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d);

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  Rat operator-() const { return Rat(-num, den); }
  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);

  std::string str() const;
  /// Parses "p", "-p", or "p/q".
  static Rat parse(const std::string& s);
};

/// Dense rational matrix, row major. Sized for ranks <= 8 or so.
struct MatQ {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  MatQ() = default;
  MatQ(int r, int c) : rows(r), cols(c), a(r * c) {}
  Rat& at(int r, int c) { return a[r * cols + c]; }
  const Rat& at(int r, int c) const { return a[r * cols + c]; }

  static MatQ identity(int n);
  friend MatQ operator*(const MatQ& x, const MatQ& y);
  friend bool operator==(const MatQ& x, const MatQ& y);

  bool is_integer() const;
  bool is_identity() const;
  /// Exactly one nonzero entry per row and column, each +-1.
  bool is_signed_permutation() const;

  Rat det() const;
  MatQ inverse() const;  // throws InputError on singular
  /// det(A) * A^{-1}; integer whenever A is integer.
  MatQ adjugate() const;
};

using VecQ = std::vector<Rat>;

VecQ mat_vec(const MatQ& m, const VecQ& v);

/// Clears denominators and divides by the gcd; sign-normalizes so the first
/// nonzero entry is positive. Throws InputError on the zero vector.
std::vector<long long> primitive_integer_vector(const VecQ& v);

/// Affine map x -> A x + t with A a signed permutation (checked by builders).
struct AffineMap {
  MatQ linear;
  VecQ translation;

  static AffineMap identity(int n);
  friend AffineMap operator*(const AffineMap& f, const AffineMap& g);  // f after g
  AffineMap inverse() const;
  bool is_identity() const;
  friend bool operator==(const AffineMap& f, const AffineMap& g) {
    return f.linear == g.linear && f.translation == g.translation;
  }
};

}  // namespace cubemedian
