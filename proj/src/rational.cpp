#include "cubemedian/rational.hpp"

#include <numeric>
#include <sstream>

#include "cubemedian/errors.hpp"

namespace cubemedian {

namespace {

using Big = __int128;

Rat make(Big n, Big d) {
  if (d == 0) throw InputError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Big g = std::gcd((long long)(n < 0 ? -n : n), (long long)d);
  if (g == 0) g = 1;
  n /= g;
  d /= g;
  long long lo = -9223372036854775807LL;
  long long hi = 9223372036854775807LL;
  if (n < lo || n > hi || d > hi)
    throw InputError("rational overflow");
  Rat r;
  r.num = (long long)n;
  r.den = (long long)d;
  return r;
}

}  // namespace

Rat::Rat(long long n, long long d) { *this = make(n, d); }

Rat operator+(const Rat& a, const Rat& b) {
  return make(Big(a.num) * b.den + Big(b.num) * a.den, Big(a.den) * b.den);
}
Rat operator-(const Rat& a, const Rat& b) {
  return make(Big(a.num) * b.den - Big(b.num) * a.den, Big(a.den) * b.den);
}
Rat operator*(const Rat& a, const Rat& b) {
  return make(Big(a.num) * b.num, Big(a.den) * b.den);
}
Rat operator/(const Rat& a, const Rat& b) {
  if (b.num == 0) throw InputError("division by zero rational");
  return make(Big(a.num) * b.den, Big(a.den) * b.num);
}
bool operator<(const Rat& a, const Rat& b) {
  return Big(a.num) * b.den < Big(b.num) * a.den;
}

std::string Rat::str() const {
  std::ostringstream os;
  os << num;
  if (den != 1) os << "/" << den;
  return os.str();
}

Rat Rat::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw InputError("bad rational literal: " + s);
  }
}

MatQ MatQ::identity(int n) {
  MatQ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

MatQ operator*(const MatQ& x, const MatQ& y) {
  if (x.cols != y.rows) throw InputError("matrix shape mismatch");
  MatQ r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
    }
  return r;
}

bool operator==(const MatQ& x, const MatQ& y) {
  return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

bool MatQ::is_integer() const {
  for (const auto& v : a)
    if (!v.is_integer()) return false;
  return true;
}

bool MatQ::is_identity() const { return *this == identity(rows); }

bool MatQ::is_signed_permutation() const {
  if (rows != cols) return false;
  std::vector<int> col_used(cols, 0);
  for (int i = 0; i < rows; ++i) {
    int nz = 0;
    for (int j = 0; j < cols; ++j) {
      const Rat& v = at(i, j);
      if (v.is_zero()) continue;
      if (!(v == Rat(1) || v == Rat(-1))) return false;
      ++nz;
      ++col_used[j];
    }
    if (nz != 1) return false;
  }
  for (int j = 0; j < cols; ++j)
    if (col_used[j] != 1) return false;
  return true;
}

Rat MatQ::det() const {
  if (rows != cols) throw InputError("determinant of non-square matrix");
  MatQ m = *this;
  Rat d(1);
  for (int c = 0; c < cols; ++c) {
    int piv = -1;
    for (int r = c; r < rows; ++r)
      if (!m.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      for (int j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = -d;
    }
    d = d * m.at(c, c);
    for (int r = c + 1; r < rows; ++r) {
      if (m.at(r, c).is_zero()) continue;
      Rat f = m.at(r, c) / m.at(c, c);
      for (int j = c; j < cols; ++j)
        m.at(r, j) = m.at(r, j) - f * m.at(c, j);
    }
  }
  return d;
}

MatQ MatQ::inverse() const {
  if (rows != cols) throw InputError("inverse of non-square matrix");
  int n = rows;
  MatQ m = *this;
  MatQ inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw InputError("singular matrix");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    Rat p = m.at(c, c);
    for (int j = 0; j < n; ++j) {
      m.at(c, j) = m.at(c, j) / p;
      inv.at(c, j) = inv.at(c, j) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m.at(r, c).is_zero()) continue;
      Rat f = m.at(r, c);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) = m.at(r, j) - f * m.at(c, j);
        inv.at(r, j) = inv.at(r, j) - f * inv.at(c, j);
      }
    }
  }
  return inv;
}

MatQ MatQ::adjugate() const {
  Rat d = det();
  if (d.is_zero()) throw InputError("adjugate of singular matrix unsupported");
  MatQ inv = inverse();
  MatQ r(rows, cols);
  for (int i = 0; i < rows * cols; ++i) r.a[i] = inv.a[i] * d;
  return r;
}

VecQ mat_vec(const MatQ& m, const VecQ& v) {
  if ((int)v.size() != m.cols) throw InputError("matrix/vector shape mismatch");
  VecQ r(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] = r[i] + m.at(i, j) * v[j];
  return r;
}

std::vector<long long> primitive_integer_vector(const VecQ& v) {
  long long l = 1;
  for (const auto& x : v) l = std::lcm(l, x.den);
  std::vector<long long> w(v.size());
  long long g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = v[i].num * (l / v[i].den);
    g = std::gcd(g, w[i] < 0 ? -w[i] : w[i]);
  }
  if (g == 0) throw InputError("primitive form of the zero vector");
  long long sign = 0;
  for (auto& x : w) {
    x /= g;
    if (sign == 0 && x != 0) sign = x > 0 ? 1 : -1;
  }
  if (sign < 0)
    for (auto& x : w) x = -x;
  return w;
}

AffineMap AffineMap::identity(int n) {
  return AffineMap{MatQ::identity(n), VecQ(n)};
}

AffineMap operator*(const AffineMap& f, const AffineMap& g) {
  AffineMap r;
  r.linear = f.linear * g.linear;
  r.translation = mat_vec(f.linear, g.translation);
  for (std::size_t i = 0; i < r.translation.size(); ++i)
    r.translation[i] = r.translation[i] + f.translation[i];
  return r;
}

AffineMap AffineMap::inverse() const {
  AffineMap r;
  r.linear = linear.inverse();
  VecQ t = mat_vec(r.linear, translation);
  r.translation.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) r.translation[i] = -t[i];
  return r;
}

bool AffineMap::is_identity() const {
  if (!linear.is_identity()) return false;
  for (const auto& t : translation)
    if (!t.is_zero()) return false;
  return true;
}

}  // namespace cubemedian
