// Dense exact rational matrices and the p-local (Z localized at p) normal
// forms used for lattice bookkeeping: canonical column HNF and Smith normal
// form with valuation-minimal pivoting.

#pragma once

#include <gmpxx.h>

#include <vector>

namespace weilrep {

using VecQ = std::vector<mpq_class>;

class MatQ {
  public:
    MatQ() = default;
    MatQ(long rows, long cols) : r_(rows), c_(cols), a_(rows * cols, mpq_class(0)) {}
    static MatQ identity(long n);
    static MatQ diagonal(const VecQ& d);

    long rows() const { return r_; }
    long cols() const { return c_; }
    mpq_class& at(long i, long j) { return a_[i * c_ + j]; }
    const mpq_class& at(long i, long j) const { return a_[i * c_ + j]; }

    MatQ operator*(const MatQ& o) const;
    VecQ operator*(const VecQ& v) const;
    MatQ operator+(const MatQ& o) const;
    MatQ operator-(const MatQ& o) const;
    MatQ operator-() const;
    MatQ scaled(const mpq_class& c) const;
    MatQ transpose() const;
    MatQ inverse() const; // throws std::invalid_argument if singular
    mpq_class det() const;
    bool operator==(const MatQ& o) const = default;

    bool is_symmetric() const;
    bool is_zero() const;

  private:
    long r_ = 0, c_ = 0;
    VecQ a_;
};

VecQ vec_add(const VecQ& a, const VecQ& b);
VecQ vec_sub(const VecQ& a, const VecQ& b);
VecQ vec_neg(const VecQ& a);
VecQ vec_scaled(const VecQ& a, const mpq_class& c);
mpq_class dot(const VecQ& a, const VecQ& b);

// Smallest valuation among all entries; VAL_INF if zero matrix.
long min_valuation(const MatQ& m, long p);

// All entries have v_p >= 0.
bool p_integral(const MatQ& m, long p);

// Canonical basis of the Z_(p)-column span of m (full row rank required):
// lower triangular, diagonal entries p^{a_i}, entries left of the diagonal
// integers in [0, p^{a_i}).
MatQ plocal_hnf(const MatQ& m, long p);

// Smith normal form over Z_(p): a = U * diag(p^e) * V with U, V invertible
// over Z_(p).  Zero diagonal entries are reported as exponent VAL_INF.
struct SmithResult {
    MatQ U, V, Uinv, Vinv;
    std::vector<long> exponents; // ascending
};
SmithResult plocal_smith(const MatQ& a, long p);

} // namespace weilrep
