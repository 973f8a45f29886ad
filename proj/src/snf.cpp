#include "gradedlc/snf.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gradedlc {
namespace {

struct Overflow {};

using i64 = std::int64_t;

// ---- arithmetic, overloaded for checked int64 and GMP ----

inline i64 mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline i64 add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline i64 sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline i64 neg(i64 a) { return sub(0, a); }
inline i64 magnitude(i64 a) { return a < 0 ? neg(a) : a; }
inline bool divides(i64 a, i64 b) { return a == -1 || b % a == 0; }
inline i64 exact_quotient(i64 b, i64 a) {
  if (a == -1) return neg(b);
  return b / a;
}
inline i64 trunc_quotient(i64 b, i64 a) {
  if (a == -1) return neg(b);
  return b / a;
}
inline void gcdext(i64 a, i64 b, i64& g, i64& s, i64& t) {
  i64 old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    if (old_r == std::numeric_limits<i64>::min()) throw Overflow{};
    i64 q = old_r / r;
    i64 tmp = sub(old_r, mul(q, r));
    old_r = r;
    r = tmp;
    tmp = sub(old_s, mul(q, cur_s));
    old_s = cur_s;
    cur_s = tmp;
    tmp = sub(old_t, mul(q, cur_t));
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = neg(old_r);
    old_s = neg(old_s);
    old_t = neg(old_t);
  }
  g = old_r;
  s = old_s;
  t = old_t;
}
inline i64 from_integer(const Integer& x, i64*) {
  if (!x.fits_slong_p()) throw Overflow{};
  return x.get_si();
}
inline Integer to_integer(i64 x) { return Integer(static_cast<long>(x)); }

inline Integer mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer add(const Integer& a, const Integer& b) { return a + b; }
inline Integer sub(const Integer& a, const Integer& b) { return a - b; }
inline Integer neg(const Integer& a) { return -a; }
inline Integer magnitude(const Integer& a) { return abs(a); }
inline bool divides(const Integer& a, const Integer& b) { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }
inline Integer exact_quotient(const Integer& b, const Integer& a) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
  return q;
}
inline Integer trunc_quotient(const Integer& b, const Integer& a) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
  return q;
}
inline void gcdext(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline Integer from_integer(const Integer& x, Integer*) { return x; }
inline Integer to_integer(const Integer& x) { return x; }

// ---- the elimination engine ----

template <class T>
class Engine {
 public:
  Engine(const IntMatrix& a, bool left, bool right)
      : m_(a.rows()), n_(a.cols()), left_(left), right_(right), a_(m_ * n_) {
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t c = 0; c < n_; ++c) a_[r * n_ + c] = from_integer(a(r, c), static_cast<T*>(nullptr));
    if (left_) {
      u_ = identity(m_);
      ui_ = identity(m_);
    }
    if (right_) {
      v_ = identity(n_);
      vi_ = identity(n_);
    }
  }

  std::size_t run() {
    std::size_t t = 0;
    const std::size_t limit = std::min(m_, n_);
    while (t < limit) {
      std::size_t pr = 0, pc = 0;
      if (!find_pivot(t, pr, pc)) break;
      if (pr != t) swap_rows(t, pr);
      if (pc != t) swap_cols(t, pc);
      clear_cross(t);
      if (A(t, t) < 0) negate_row(t);
      ++t;
    }
    fix_divisibility(t);
    return t;
  }

  IntMatrix diagonal() const { return export_matrix(a_, m_, n_); }
  IntMatrix left() const { return left_ ? export_matrix(u_, m_, m_) : IntMatrix(); }
  IntMatrix left_inverse() const { return left_ ? export_matrix(ui_, m_, m_) : IntMatrix(); }
  IntMatrix right() const { return right_ ? export_matrix(v_, n_, n_) : IntMatrix(); }
  IntMatrix right_inverse() const { return right_ ? export_matrix(vi_, n_, n_) : IntMatrix(); }

 private:
  T& A(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }

  static std::vector<T> identity(std::size_t k) {
    std::vector<T> id(k * k);
    for (std::size_t i = 0; i < k; ++i) id[i * k + i] = T(1);
    return id;
  }

  static IntMatrix export_matrix(const std::vector<T>& data, std::size_t rows, std::size_t cols) {
    IntMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r, c) = to_integer(data[r * cols + c]);
    return out;
  }

  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    T best{};
    for (std::size_t r = t; r < m_; ++r)
      for (std::size_t c = t; c < n_; ++c) {
        const T& x = A(r, c);
        if (x == 0) continue;
        T mag = magnitude(x);
        if (!found || mag < best) {
          found = true;
          best = mag;
          pr = r;
          pc = c;
          if (best == 1) return true;
        }
      }
    return found;
  }

  // Clears row t and column t outside the pivot. Euclid style: subtract the
  // truncated quotient, and a nonzero remainder becomes the new, smaller pivot.
  void clear_cross(std::size_t t) {
    for (;;) {
      bool moved = false;
      for (std::size_t i = t + 1; i < m_ && !moved; ++i) {
        if (A(i, t) == 0) continue;
        row_axpy(i, t, neg(trunc_quotient(A(i, t), A(t, t))), t);
        if (A(i, t) != 0) {
          swap_rows(t, i);
          moved = true;
        }
      }
      if (moved) continue;
      for (std::size_t j = t + 1; j < n_ && !moved; ++j) {
        if (A(t, j) == 0) continue;
        col_axpy(j, t, neg(trunc_quotient(A(t, j), A(t, t))), t);
        if (A(t, j) != 0) {
          swap_cols(t, j);
          moved = true;
        }
      }
      if (!moved) return;
    }
  }

  // Turns the diagonal d_0..d_{r-1} into a divisibility chain using
  // (a, b) -> (gcd, lcm) on pairs.
  void fix_divisibility(std::size_t r) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        T di = A(i, i), dj = A(j, j);
        if (divides(di, dj)) continue;
        row_axpy(i, j, T(1), 0);
        T g, s, u;
        gcdext(di, dj, g, s, u);
        col_combine(i, j, s, u, neg(exact_quotient(dj, g)), exact_quotient(di, g), 0);
        row_axpy(j, i, neg(exact_quotient(mul(u, dj), g)), 0);
      }
  }

  // row_dst += q * row_src (columns < from are known to be zero in both rows)
  void row_axpy(std::size_t dst, std::size_t src, const T& q, std::size_t from) {
    for (std::size_t c = from; c < n_; ++c)
      if (A(src, c) != 0) A(dst, c) = add(A(dst, c), mul(q, A(src, c)));
    if (left_) {
      for (std::size_t c = 0; c < m_; ++c)
        if (u_[src * m_ + c] != 0) u_[dst * m_ + c] = add(u_[dst * m_ + c], mul(q, u_[src * m_ + c]));
      for (std::size_t r = 0; r < m_; ++r)
        if (ui_[r * m_ + dst] != 0) ui_[r * m_ + src] = sub(ui_[r * m_ + src], mul(q, ui_[r * m_ + dst]));
    }
  }

  // col_dst += q * col_src
  void col_axpy(std::size_t dst, std::size_t src, const T& q, std::size_t from) {
    for (std::size_t r = from; r < m_; ++r)
      if (A(r, src) != 0) A(r, dst) = add(A(r, dst), mul(q, A(r, src)));
    if (right_) {
      for (std::size_t r = 0; r < n_; ++r)
        if (v_[r * n_ + src] != 0) v_[r * n_ + dst] = add(v_[r * n_ + dst], mul(q, v_[r * n_ + src]));
      for (std::size_t c = 0; c < n_; ++c)
        if (vi_[dst * n_ + c] != 0) vi_[src * n_ + c] = sub(vi_[src * n_ + c], mul(q, vi_[dst * n_ + c]));
    }
  }

  // (col_i, col_j) <- (s col_i + u col_j, x col_i + y col_j), s y - u x = 1
  void col_combine(std::size_t i, std::size_t j, const T& s, const T& u, const T& x, const T& y, std::size_t from) {
    auto mix = [&](std::vector<T>& data, std::size_t rows, std::size_t width, std::size_t lo) {
      for (std::size_t r = lo; r < rows; ++r) {
        T a = data[r * width + i], b = data[r * width + j];
        if (a == 0 && b == 0) continue;
        data[r * width + i] = add(mul(s, a), mul(u, b));
        data[r * width + j] = add(mul(x, a), mul(y, b));
      }
    };
    mix(a_, m_, n_, from);
    if (right_) {
      mix(v_, n_, n_, 0);
      for (std::size_t c = 0; c < n_; ++c) {
        T a = vi_[i * n_ + c], b = vi_[j * n_ + c];
        if (a == 0 && b == 0) continue;
        vi_[i * n_ + c] = sub(mul(y, a), mul(x, b));
        vi_[j * n_ + c] = sub(mul(s, b), mul(u, a));
      }
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n_; ++c) std::swap(A(i, c), A(j, c));
    if (left_) {
      for (std::size_t c = 0; c < m_; ++c) std::swap(u_[i * m_ + c], u_[j * m_ + c]);
      for (std::size_t r = 0; r < m_; ++r) std::swap(ui_[r * m_ + i], ui_[r * m_ + j]);
    }
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m_; ++r) std::swap(A(r, i), A(r, j));
    if (right_) {
      for (std::size_t r = 0; r < n_; ++r) std::swap(v_[r * n_ + i], v_[r * n_ + j]);
      for (std::size_t c = 0; c < n_; ++c) std::swap(vi_[i * n_ + c], vi_[j * n_ + c]);
    }
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < n_; ++c) A(i, c) = neg(A(i, c));
    if (left_) {
      for (std::size_t c = 0; c < m_; ++c) u_[i * m_ + c] = neg(u_[i * m_ + c]);
      for (std::size_t r = 0; r < m_; ++r) ui_[r * m_ + i] = neg(ui_[r * m_ + i]);
    }
  }

  std::size_t m_, n_;
  bool left_, right_;
  std::vector<T> a_, u_, ui_, v_, vi_;
};

template <class T>
SnfDecomposition run_engine(const IntMatrix& a, Transforms track) {
  Engine<T> engine(a, tracks_left(track), tracks_right(track));
  SnfDecomposition out;
  out.rank = engine.run();
  out.source = a;
  out.diagonal = engine.diagonal();
  out.left = engine.left();
  out.left_inverse = engine.left_inverse();
  out.right = engine.right();
  out.right_inverse = engine.right_inverse();
  return out;
}

}  // namespace

IntVector SnfDecomposition::invariants() const {
  IntVector d(rank);
  for (std::size_t i = 0; i < rank; ++i) d[i] = diagonal(i, i);
  return d;
}

SnfDecomposition snf(const IntMatrix& a, Transforms track, SnfArithmetic arithmetic) {
  if (arithmetic == SnfArithmetic::automatic) {
    try {
      return run_engine<i64>(a, track);
    } catch (const Overflow&) {
    }
  }
  SnfDecomposition out = run_engine<Integer>(a, track);
  out.used_bigint = true;
  return out;
}

}  // namespace gradedlc
