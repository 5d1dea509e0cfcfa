#include "mbs/smith.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace mbs {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntegerMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

bool IntegerMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
  IntegerMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << '\n';
  }
  return os.str();
}

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(diagonal.rows(), diagonal.cols());
  for (std::size_t i = 0; i < n && diagonal(i, i) != 0; ++i) out.push_back(diagonal(i, i));
  return out;
}

namespace {

class Reducer {
 public:
  explicit Reducer(const IntegerMatrix& m)
      : s_(m), u_(IntegerMatrix::identity(m.rows())), v_(IntegerMatrix::identity(m.cols())) {}

  SmithDecomposition run() {
    diagonalize();
    const std::size_t n = std::min(s_.rows(), s_.cols());
    for (std::size_t t = 0; t < n; ++t) {
      if (!move_smallest_to(t)) break;
      reduce_at(t);
      if (s_(t, t) < 0) negate_row(t);
    }
    return {std::move(s_), std::move(u_), std::move(v_)};
  }

 private:
  // Alternating row and column Hermite forms until no off-diagonal entry is
  // left. Reducing above each pivot keeps the entries bounded by the pivots,
  // which plain elimination does not.
  void diagonalize() {
    if (s_.is_zero()) return;
    for (;;) {
      hermite_rows();
      if (monomial()) break;
      hermite_cols();
      if (monomial()) break;
    }
    // Each row and column now holds at most one nonzero; move them onto the
    // diagonal.
    for (std::size_t t = 0; t < std::min(s_.rows(), s_.cols()); ++t) {
      bool placed = false;
      for (std::size_t i = t; i < s_.rows() && !placed; ++i)
        for (std::size_t j = t; j < s_.cols(); ++j)
          if (s_(i, j) != 0) {
            swap_rows(t, i);
            swap_cols(t, j);
            placed = true;
            break;
          }
      if (!placed) break;
    }
  }

  bool monomial() const {
    for (std::size_t i = 0; i < s_.rows(); ++i) {
      int count = 0;
      for (std::size_t j = 0; j < s_.cols(); ++j) count += s_(i, j) != 0;
      if (count > 1) return false;
    }
    for (std::size_t j = 0; j < s_.cols(); ++j) {
      int count = 0;
      for (std::size_t i = 0; i < s_.rows(); ++i) count += s_(i, j) != 0;
      if (count > 1) return false;
    }
    return true;
  }

  static Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  static Integer nearest_div(const Integer& a, const Integer& b) {
    Integer q = floor_div(a, b);
    if (2 * abs(a - q * b) > abs(b)) ++q;
    return q;
  }

  // Euclid over the rows below r: keep the smallest entry of column c at the
  // pivot and reduce the others by the nearest quotient until they vanish.
  void clear_below(std::size_t r, std::size_t c) {
    for (;;) {
      std::size_t best = r;
      bool others = false;
      for (std::size_t i = r + 1; i < s_.rows(); ++i) {
        if (s_(i, c) == 0) continue;
        others = true;
        if (abs(s_(i, c)) < abs(s_(best, c))) best = i;
      }
      if (!others) return;
      swap_rows(r, best);
      for (std::size_t i = r + 1; i < s_.rows(); ++i)
        if (s_(i, c) != 0) add_row(i, r, -nearest_div(s_(i, c), s_(r, c)));
    }
  }

  void clear_right(std::size_t r, std::size_t c) {
    for (;;) {
      std::size_t best = c;
      bool others = false;
      for (std::size_t j = c + 1; j < s_.cols(); ++j) {
        if (s_(r, j) == 0) continue;
        others = true;
        if (abs(s_(r, j)) < abs(s_(r, best))) best = j;
      }
      if (!others) return;
      swap_cols(c, best);
      for (std::size_t j = c + 1; j < s_.cols(); ++j)
        if (s_(r, j) != 0) add_col(j, c, -nearest_div(s_(r, j), s_(r, c)));
    }
  }

  void hermite_rows() {
    std::size_t r = 0;
    for (std::size_t c = 0; c < s_.cols() && r < s_.rows(); ++c) {
      std::size_t first = r;
      while (first < s_.rows() && s_(first, c) == 0) ++first;
      if (first == s_.rows()) continue;
      swap_rows(r, first);
      clear_below(r, c);
      if (s_(r, c) < 0) negate_row(r);
      for (std::size_t k = 0; k < r; ++k)
        if (s_(k, c) != 0) add_row(k, r, -floor_div(s_(k, c), s_(r, c)));
      ++r;
    }
  }

  void hermite_cols() {
    std::size_t c = 0;
    for (std::size_t r = 0; r < s_.rows() && c < s_.cols(); ++r) {
      std::size_t first = c;
      while (first < s_.cols() && s_(r, first) == 0) ++first;
      if (first == s_.cols()) continue;
      swap_cols(c, first);
      clear_right(r, c);
      if (s_(r, c) < 0) negate_col(c);
      for (std::size_t k = 0; k < c; ++k)
        if (s_(r, k) != 0) add_col(k, c, -floor_div(s_(r, k), s_(r, c)));
      ++c;
    }
  }

  bool move_smallest_to(std::size_t t) {
    bool found = false;
    std::size_t bi = t, bj = t;
    Integer best;
    for (std::size_t i = t; i < s_.rows(); ++i)
      for (std::size_t j = t; j < s_.cols(); ++j) {
        const Integer& x = s_(i, j);
        if (x == 0) continue;
        Integer mag = abs(x);
        if (!found || mag < best) {
          found = true;
          best = std::move(mag);
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  // Clears row t and column t outside the pivot with 2x2 unimodular
  // combinations built from the extended gcd, so the pivot becomes the gcd
  // of the row or column in one pass and entries stay small.
  void reduce_at(std::size_t t) {
    for (;;) {
      for (std::size_t i = t + 1; i < s_.rows(); ++i)
        if (s_(i, t) != 0) combine_rows(t, i, t);
      for (std::size_t j = t + 1; j < s_.cols(); ++j)
        if (s_(t, j) != 0) combine_cols(t, j, t);
      if (!cross_clear(t)) continue;

      // Pivot must divide the remaining block; fold an offending row in.
      bool folded = false;
      for (std::size_t i = t + 1; i < s_.rows() && !folded; ++i)
        for (std::size_t j = t + 1; j < s_.cols(); ++j)
          if (s_(i, j) % s_(t, t) != 0) {
            add_row(t, i, 1);
            folded = true;
            break;
          }
      if (!folded) return;
    }
  }

  struct Bezout {
    Integer g, x, y;  // x*a + y*b == g
  };

  static Bezout bezout(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
      const Integer q = old_r / r;
      old_r = std::exchange(r, old_r - q * r);
      old_x = std::exchange(x, old_x - q * x);
      old_y = std::exchange(y, old_y - q * y);
    }
    return {old_r, old_x, old_y};
  }

  // Rows p and i become x*p + y*i and (-b/g)*p + (a/g)*i where a, b are the
  // entries in column c. The 2x2 transform has determinant 1.
  void combine_rows(std::size_t p, std::size_t i, std::size_t c) {
    const Integer a = s_(p, c), b = s_(i, c);
    if (a != 0 && b % a == 0) {
      add_row(i, p, -(b / a));
      return;
    }
    const auto [g, x, y] = bezout(a, b);
    const Integer na = a / g, nb = b / g;
    auto mix = [&](IntegerMatrix& m) {
      for (std::size_t k = 0; k < m.cols(); ++k) {
        Integer top = x * m(p, k) + y * m(i, k);
        m(i, k) = -nb * m(p, k) + na * m(i, k);
        m(p, k) = std::move(top);
      }
    };
    mix(s_);
    mix(u_);
  }

  void combine_cols(std::size_t p, std::size_t j, std::size_t r) {
    const Integer a = s_(r, p), b = s_(r, j);
    if (a != 0 && b % a == 0) {
      add_col(j, p, -(b / a));
      return;
    }
    const auto [g, x, y] = bezout(a, b);
    const Integer na = a / g, nb = b / g;
    auto mix = [&](IntegerMatrix& m) {
      for (std::size_t k = 0; k < m.rows(); ++k) {
        Integer left = x * m(k, p) + y * m(k, j);
        m(k, j) = -nb * m(k, p) + na * m(k, j);
        m(k, p) = std::move(left);
      }
    };
    mix(s_);
    mix(v_);
  }

  bool cross_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < s_.rows(); ++i)
      if (s_(i, t) != 0) return false;
    for (std::size_t j = t + 1; j < s_.cols(); ++j)
      if (s_(t, j) != 0) return false;
    return true;
  }

  // row[dst] += factor * row[src], mirrored on U.
  void add_row(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t c = 0; c < s_.cols(); ++c) s_(dst, c) += factor * s_(src, c);
    for (std::size_t c = 0; c < u_.cols(); ++c) u_(dst, c) += factor * u_(src, c);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t r = 0; r < s_.rows(); ++r) s_(r, dst) += factor * s_(r, src);
    for (std::size_t r = 0; r < v_.rows(); ++r) v_(r, dst) += factor * v_(r, src);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < s_.cols(); ++c) std::swap(s_(a, c), s_(b, c));
    for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_(a, c), u_(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < s_.rows(); ++r) std::swap(s_(r, a), s_(r, b));
    for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, a), v_(r, b));
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < s_.cols(); ++c) s_(r, c) = -s_(r, c);
    for (std::size_t c = 0; c < u_.cols(); ++c) u_(r, c) = -u_(r, c);
  }

  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < s_.rows(); ++r) s_(r, c) = -s_(r, c);
    for (std::size_t r = 0; r < v_.rows(); ++r) v_(r, c) = -v_(r, c);
  }

  IntegerMatrix s_;
  IntegerMatrix u_;
  IntegerMatrix v_;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& m) { return Reducer(m).run(); }

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace mbs
