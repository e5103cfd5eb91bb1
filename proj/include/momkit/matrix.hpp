#pragma once

#include <functional>
#include <vector>

#include "momkit/intpoly.hpp"

namespace momkit {

// Dense square matrix over an exact commutative ring.
template <typename T>
class Matrix {
 public:
  Matrix() : n_(0) {}
  explicit Matrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, T(0)) {}
  Matrix(int n, std::vector<T> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(n) * n) throw std::invalid_argument("matrix size mismatch");
  }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  int size() const { return n_; }
  T& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const T& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    check_same(o);
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const T& aik = at(i, k);
        if (aik == T(0)) continue;
        for (int j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
      }
    return r;
  }

  Matrix scaled(const T& c) const {
    Matrix r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }

  Matrix transpose() const {
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  T trace() const {
    T t(0);
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!(x == T(0))) return false;
    return true;
  }

  Matrix pow(unsigned long e) const {
    Matrix result = identity(n_);
    Matrix base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  // Kronecker product
  Matrix kron(const Matrix& o) const {
    Matrix r(n_ * o.n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < o.n_; ++k)
          for (int l = 0; l < o.n_; ++l)
            r.at(i * o.n_ + k, j * o.n_ + l) = at(i, j) * o.at(k, l);
    return r;
  }

  // block diagonal [this, other]
  Matrix dsum(const Matrix& o) const {
    Matrix r(n_ + o.n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.n_; ++i)
      for (int j = 0; j < o.n_; ++j) r.at(n_ + i, n_ + j) = o.at(i, j);
    return r;
  }

 private:
  void check_same(const Matrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
  }
  int n_;
  std::vector<T> a_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using GaussMatrix = Matrix<GaussQ>;

// phi(X) = tr(X), tr(X*M) or v^t X w
struct LinearFunctional {
  enum class Kind { Trace, TraceForm, Bilinear };
  Kind kind = Kind::Trace;
  RatMatrix form;                 // TraceForm
  std::vector<Rational> v, w;     // Bilinear

  static LinearFunctional trace() { return LinearFunctional{}; }
  static LinearFunctional trace_form(RatMatrix m) {
    LinearFunctional f;
    f.kind = Kind::TraceForm;
    f.form = std::move(m);
    return f;
  }
  static LinearFunctional bilinear(std::vector<Rational> v, std::vector<Rational> w) {
    LinearFunctional f;
    f.kind = Kind::Bilinear;
    f.v = std::move(v);
    f.w = std::move(w);
    return f;
  }

  Rational apply(const RatMatrix& x) const;
  void check_dimension(int s) const;
};

struct CharPolyResult {
  IntPoly poly;    // characteristic polynomial of scale*A (integer matrix), monic
  Integer scale;   // positive least common denominator
};

// Exact n-th generalized moment phi(A^n); A^n by repeated squaring.
Rational moment(const RatMatrix& a, const LinearFunctional& phi, unsigned long n);

// Characteristic polynomial via the Faddeev–LeVerrier recurrence on the
// integer-scaled matrix.
CharPolyResult char_poly(const RatMatrix& a);
// Monic characteristic polynomial of A itself, over Q (low degree first).
std::vector<Rational> char_poly_rational(const RatMatrix& a);

bool verify_cayley_hamilton(const RatMatrix& a);

Integer least_common_denominator(const RatMatrix& a);
IntMatrix scale_to_integer(const RatMatrix& a, const Integer& scale);
RatMatrix to_rational(const IntMatrix& a);

// Gaussian-rational support (unitary instances)
GaussMatrix conj_transpose(const GaussMatrix& u);
bool is_unitary(const GaussMatrix& u);
bool is_orthogonal(const RatMatrix& a);
// Lemma-style block embedding U = A + iB -> [[A, -B], [B, A]]
RatMatrix psi_embed(const GaussMatrix& u);
// characteristic polynomial of a Gaussian matrix over Q[i], monic, low first
std::vector<GaussQ> char_poly_gauss(const GaussMatrix& u);
GaussQ gauss_trace_power(const GaussMatrix& u, unsigned long n);

// Bareiss fraction-free determinant.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

}  // namespace momkit
